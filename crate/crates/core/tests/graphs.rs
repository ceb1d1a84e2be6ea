use std::collections::BTreeMap;

use hybridwc_core::algebra::parse::parse_ratfunc;
use hybridwc_core::algebra::{MPoly, RatFunc};
use hybridwc_core::graphs::{
    aut_order, aut_order_brute_force, canonical_form, contr_edge, contr_flag, contr_unstable_vertex, edge_factor,
    enumerate_trees, evaluate_fully_unstable_tree, recursion_coeff, tree_to_dot, tree_to_json, unstable_val1_factor,
    DecoratedTree, Edge, Mark, Vertex, VertexKind,
};
use hybridwc_core::jfun::unstable_coeff_eq_factored;
use hybridwc_core::state::{eta, subst_ratfunc};
use hybridwc_core::{Epsilon, Error, ModelParams, Multiplicity};

fn rf(p: &ModelParams, s: &str) -> RatFunc {
    parse_ratfunc(s, p.nvars()).unwrap()
}

fn two_vertex(p: &ModelParams, mark_on: usize) -> DecoratedTree {
    let m = p.mult(2);
    let mut flags = BTreeMap::new();
    flags.insert((0, 0), m);
    flags.insert((1, 0), m);
    DecoratedTree {
        vertices: vec![Vertex { j: 1, beta: 0 }, Vertex { j: 2, beta: 0 }],
        edges: vec![Edge { ends: (0, 1), beta: 1 }],
        flags,
        marks: vec![Mark { vertex: mark_on, mult: p.mult(1) }],
    }
}

fn star(p: &ModelParams) -> DecoratedTree {
    let m = p.mult(2);
    let mut flags = BTreeMap::new();
    for e in 0..2 {
        flags.insert((0, e), m);
        flags.insert((e + 1, e), m);
    }
    DecoratedTree {
        vertices: vec![Vertex { j: 1, beta: 0 }, Vertex { j: 2, beta: 0 }, Vertex { j: 2, beta: 0 }],
        edges: vec![Edge { ends: (0, 1), beta: 1 }, Edge { ends: (0, 2), beta: 1 }],
        flags,
        marks: vec![Mark { vertex: 0, mult: p.mult(0) }],
    }
}

#[test]
fn enumeration_examples() {
    let q = ModelParams::quintic();
    let t = enumerate_trees(1, 3, &q, 4);
    assert_eq!(t.len(), 1);
    assert_eq!(t[0].vertices, vec![Vertex { j: 1, beta: 3 }]);
    assert_eq!(t[0].kinds(&q).unwrap(), vec![VertexKind::UnstableVal1]);

    let c = ModelParams::cubic_pair();
    let all = enumerate_trees(1, 1, &c, 3);
    let single: Vec<_> = all.iter().filter(|t| t.vertices.len() == 1).collect();
    assert_eq!(single.len(), 2);
    assert!(single.iter().all(|t| t.vertices[0].beta == 1 && t.kind(0, &c).unwrap() == VertexKind::UnstableVal1));
    let pairs: Vec<_> = all.iter().filter(|t| t.vertices.len() == 2).collect();
    assert_eq!(pairs.len(), 2);
    for t in pairs {
        assert_eq!(t.edges[0].beta, 1);
        assert!(t.flags.values().all(|m| *m == c.mult(2)));
    }
    assert_eq!(all.len(), 4);
}

#[test]
fn enumerated_trees_are_valid() {
    for (p, n, beta) in [
        (ModelParams::cubic_pair(), 1, 3),
        (ModelParams::cubic_pair(), 2, 2),
        (ModelParams::weighted_quartic_pair(), 1, 3),
        (ModelParams::quadric_quadruple(), 1, 2),
        (ModelParams::cubic_pair().with_epsilon("1/2".parse().unwrap()), 2, 3),
    ] {
        let trees = enumerate_trees(n, beta, &p, 5);
        assert!(!trees.is_empty());
        let mut seen = std::collections::BTreeSet::new();
        for t in &trees {
            t.validate(&p).unwrap();
            assert_eq!(t.degree(), beta);
            assert_eq!(t.marks.len(), n);
            assert!(seen.insert(canonical_form(t)));
            assert_eq!(aut_order(t), aut_order_brute_force(t));
        }
    }
}

#[test]
fn automorphisms() {
    let c = ModelParams::cubic_pair();
    let s = star(&c);
    s.validate(&c).unwrap();
    assert_eq!(aut_order(&s), 2);
    assert_eq!(aut_order_brute_force(&s), 2);
    assert_eq!(aut_order(&two_vertex(&c, 0)), 1);
    // relabeling vertices does not change the canonical form
    let mut r = s.clone();
    r.vertices.swap(0, 2);
    r.edges = vec![Edge { ends: (2, 1), beta: 1 }, Edge { ends: (2, 0), beta: 1 }];
    r.flags = s.flags.iter().map(|(&(v, e), m)| (([2, 1, 0][v], e), *m)).collect();
    r.marks[0].vertex = 2;
    assert_eq!(canonical_form(&r), canonical_form(&s));
}

#[test]
fn edge_examples() {
    let c = ModelParams::cubic_pair();
    let t = two_vertex(&c, 0);
    let expect = rf(&c, "-1/(3*(a1 - a2)^2)");
    assert_eq!(contr_edge(0, &t, &c).unwrap().to_ratfunc(), expect);
    let mut swapped = t.clone();
    swapped.edges[0].ends = (1, 0);
    assert_eq!(contr_edge(0, &swapped, &c).unwrap().to_ratfunc(), expect);

    let mut bad = t.clone();
    bad.vertices[1].j = 1;
    assert!(matches!(contr_edge(0, &bad, &c), Err(Error::InvalidEdge(_))));
}

#[test]
fn edge_factor_is_symmetric() {
    for p in [ModelParams::cubic_pair(), ModelParams::weighted_quartic_pair(), ModelParams::quadric_quadruple()] {
        for m in p.multiplicities() {
            for m2 in p.multiplicities() {
                for be in 1..=4 {
                    if (be as i64 - m.a() as i64 - m2.a() as i64).rem_euclid(p.d as i64) != 0 {
                        continue;
                    }
                    for tw in [true, false] {
                        let x = edge_factor(&p, 1, 2, be, m, tw).unwrap();
                        let y = edge_factor(&p, 2, 1, be, m2, tw).unwrap();
                        assert_eq!(x, y, "{} m={m} m'={m2} be={be} twisted={tw}", p.label());
                    }
                }
            }
        }
    }
}

#[test]
fn flag_examples() {
    let c = ModelParams::cubic_pair();
    let mut t = two_vertex(&c, 0);
    t.flags.insert((0, 0), c.mult(1));
    assert_eq!(contr_flag(0, 0, &t, &c).to_ratfunc(), rf(&c, "3*(a1 - a2)"));
    t.flags.insert((0, 0), c.mult(0));
    assert_eq!(contr_flag(0, 0, &t, &c).to_ratfunc(), rf(&c, "3*(a1 - a2)*729/a1^6"));

    let q = ModelParams::quintic();
    assert_eq!(eta(1, q.mult(2), &q).inv().unwrap().to_ratfunc(), rf(&q, "5"));
}

#[test]
fn recursion_coeff_examples() {
    let c = ModelParams::cubic_pair();
    let m = c.mult(2);
    assert_eq!(recursion_coeff(m, m, 1, 2, 1, &c).unwrap().to_ratfunc(), rf(&c, "1/(a1 - a2)"));
    assert!(matches!(recursion_coeff(m, m, 1, 2, 2, &c), Err(Error::InvalidDegree(_))));
    let q = ModelParams::quintic();
    assert!(matches!(recursion_coeff(q.mult(0), q.mult(1), 1, 1, 1, &q), Err(Error::InvalidEdge(_))));
}

#[test]
fn unstable_vertex_examples() {
    let c = ModelParams::cubic_pair();
    // valence one, degree zero
    let t = two_vertex(&c, 0);
    let v1 = contr_unstable_vertex(1, &t, &[], &c).unwrap();
    let expect = eta(2, c.mult(2), &c).to_ratfunc().mul(&rf(&c, "a2 - a1"));
    assert_eq!(v1.to_ratfunc(), expect);

    // valence one, β_v = 1, β_e = 1
    let tau = &c.a(1) - &c.a(2);
    let f = unstable_val1_factor(&c, 1, &tau, 1, c.mult(1)).unwrap();
    assert_eq!(f.to_ratfunc(), rf(&c, "1/(6*(a1 - a2)^2)"));

    // valence-two node
    let mut flags = BTreeMap::new();
    for (k, v) in [((0, 0), 1), ((1, 0), 1), ((1, 1), 2), ((2, 1), 1)] {
        flags.insert(k, c.mult(v));
    }
    let node = DecoratedTree {
        vertices: vec![Vertex { j: 2, beta: 0 }, Vertex { j: 1, beta: 0 }, Vertex { j: 2, beta: 0 }],
        edges: vec![Edge { ends: (0, 1), beta: 1 }, Edge { ends: (1, 2), beta: 1 }],
        flags,
        marks: vec![Mark { vertex: 0, mult: c.mult(0) }],
    };
    assert_eq!(node.kind(1, &c).unwrap(), VertexKind::UnstableVal2Node);
    let f = contr_unstable_vertex(1, &node, &[], &c).unwrap();
    let expect = eta(1, c.mult(1), &c).to_ratfunc().mul(&rf(&c, "1/(2*a1 - 2*a2)"));
    assert_eq!(f.to_ratfunc(), expect);
}

#[test]
fn two_vertex_tree_value() {
    let c = ModelParams::cubic_pair();
    let t = two_vertex(&c, 0);
    t.validate(&c).unwrap();
    assert_eq!(evaluate_fully_unstable_tree(&t, &[], &c).unwrap(), rf(&c, "1/(3*a1 - 3*a2)"));
    let s = star(&c);
    assert!(matches!(evaluate_fully_unstable_tree(&s, &[], &c), Err(Error::ContainsStableVertex)));
}

#[test]
fn single_vertex_matches_j_coefficient() {
    for p in [ModelParams::quintic(), ModelParams::cubic_pair(), ModelParams::weighted_quartic_pair()] {
        for beta in 0..=5 {
            for t in enumerate_trees(1, beta, &p, 1) {
                let j = t.vertices[0].j;
                let (m, f) = unstable_coeff_eq_factored(beta, j, &p);
                assert_eq!(t.marks[0].mult, m.neg());
                let lhs = evaluate_fully_unstable_tree(&t, &[], &p).unwrap();
                assert_eq!(lhs, eta(j, m, &p).mul(&f).to_ratfunc());
            }
        }
    }
}

#[test]
fn relabeling_invariance() {
    let p = ModelParams::cubic_pair();
    let n = p.nvars();
    let swap: Vec<Option<MPoly>> = vec![None, Some(MPoly::var(n, 2)), Some(MPoly::var(n, 1))];
    for beta in 1..=3 {
        for t in enumerate_trees(1, beta, &p, 4) {
            let Ok(v) = evaluate_fully_unstable_tree(&t, &[], &p) else { continue };
            let mut u = t.clone();
            for x in &mut u.vertices {
                x.j = 3 - x.j;
            }
            let w = evaluate_fully_unstable_tree(&u, &[], &p).unwrap();
            assert_eq!(subst_ratfunc(&v, &swap, n).unwrap(), w);
        }
    }
}

#[test]
fn finite_epsilon_changes_kinds() {
    let p = ModelParams::cubic_pair().with_epsilon(Epsilon::Finite(hybridwc_core::algebra::rat(1, 2)));
    let trees = enumerate_trees(1, 3, &p, 1);
    assert!(trees.iter().all(|t| t.kind(0, &p).unwrap() == VertexKind::Stable));
    let json = tree_to_json(&trees[0], &p);
    assert_eq!(json["contribution"], "symbolic-stable");
    assert_eq!(json["kind_tags"][0], "stable");
}

#[test]
fn exports() {
    let c = ModelParams::cubic_pair();
    let t = two_vertex(&c, 0);
    let json = tree_to_json(&t, &c);
    assert_eq!(json["aut_order"], 1);
    assert_eq!(json["contribution"], "1/(3*a1 - 3*a2)");
    assert_eq!(json["kind_tags"], serde_json::json!(["unstable-val2-mark", "unstable-val1"]));
    let dot = tree_to_dot(&t, &c);
    assert!(dot.starts_with("graph tree {"));
    assert!(dot.contains("v0 -- v1"));
    let _ = Multiplicity::new(0, 3);
}
