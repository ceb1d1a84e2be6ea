//! Exhaustive enumeration of decorated trees up to isomorphism.

use std::collections::BTreeMap;

use super::{canonical_form, DecoratedTree, Edge, Mark, Vertex};
use crate::model::{ModelParams, Multiplicity};

/// Labeled trees on `n` vertices as edge lists, via Prüfer sequences.
fn labeled_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    match n {
        0 => return vec![],
        1 => return vec![vec![]],
        2 => return vec![vec![(0, 1)]],
        _ => {}
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        let mut seq = Vec::with_capacity(len);
        let mut c = code;
        for _ in 0..len {
            seq.push(c % n);
            c /= n;
        }
        let mut degree = vec![1usize; n];
        for &x in &seq {
            degree[x] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &x in &seq {
            let leaf = (0..n).find(|&i| degree[i] == 1).unwrap();
            edges.push((leaf.min(x), leaf.max(x)));
            degree[leaf] -= 1;
            degree[x] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&i| degree[i] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(edges);
    }
    out
}

/// All ways to write `total` as `slots` non-negative parts, each at least `min[i]`.
fn compositions(total: u32, min: &[u32]) -> Vec<Vec<u32>> {
    let floor: u32 = min.iter().sum();
    if floor > total {
        return vec![];
    }
    let mut out = Vec::new();
    let mut cur = min.to_vec();
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, min: &[u32], out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = min[i] + left;
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur[i] = min[i] + x;
            rec(i + 1, left - x, cur, min, out);
        }
    }
    if cur.is_empty() {
        if total == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(0, total - floor, &mut cur, min, &mut out);
    out
}

fn for_each_tuple(len: usize, base: usize, mut f: impl FnMut(&[usize])) {
    let mut t = vec![0usize; len];
    loop {
        f(&t);
        let mut i = 0;
        loop {
            if i == len {
                return;
            }
            t[i] += 1;
            if t[i] < base {
                break;
            }
            t[i] = 0;
            i += 1;
        }
    }
}

/// Fill in flag multiplicities from mark data; `None` when the selection
/// rule fails at the root.
fn solve_flags(
    vertices: &[Vertex],
    edges: &[Edge],
    marks: &[Mark],
    d: i64,
) -> Option<BTreeMap<(usize, usize), Multiplicity>> {
    let nv = vertices.len();
    let root = marks[0].vertex;
    let mut adj: Vec<Vec<usize>> = vec![vec![]; nv];
    for (i, e) in edges.iter().enumerate() {
        adj[e.ends.0].push(i);
        adj[e.ends.1].push(i);
    }
    let mut order = Vec::with_capacity(nv);
    let mut parent_edge = vec![usize::MAX; nv];
    let mut seen = vec![false; nv];
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &e in &adj[v] {
            let u = edges[e].other(v);
            if !seen[u] {
                seen[u] = true;
                parent_edge[u] = e;
                stack.push(u);
            }
        }
    }
    let mut mark_sum = vec![0i64; nv];
    for m in marks {
        mark_sum[m.vertex] += m.mult.a() as i64;
    }
    let mut flag: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for &v in order.iter().rev() {
        let val = (adj[v].len() + marks.iter().filter(|m| m.vertex == v).count()) as i64;
        let mut s = -(vertices[v].beta as i64) + val - 2 - mark_sum[v];
        for &e in &adj[v] {
            if e == parent_edge[v] {
                continue;
            }
            let u = edges[e].other(v);
            let child = flag[&(u, e)];
            let here = (edges[e].beta as i64 - child).rem_euclid(d);
            flag.insert((v, e), here);
            s -= here;
        }
        if v == root {
            if s.rem_euclid(d) != 0 {
                return None;
            }
        } else {
            flag.insert((v, parent_edge[v]), s.rem_euclid(d));
        }
    }
    Some(flag.into_iter().map(|(k, a)| (k, Multiplicity::new(a, d as u32))).collect())
}

/// Every isomorphism class of decorated trees with `n` marks, total degree
/// `beta` and at most `max_vertices` vertices, ordered by canonical form.
pub fn enumerate_trees(n: usize, beta: u32, p: &ModelParams, max_vertices: usize) -> Vec<DecoratedTree> {
    let mut found: BTreeMap<String, DecoratedTree> = BTreeMap::new();
    if n == 0 {
        return vec![];
    }
    let d = p.d as i64;
    let nfix = p.n();
    for nv in 1..=max_vertices {
        if nv > 1 && (nfix < 2 || (nv - 1) as u32 > beta) {
            break;
        }
        for shape in labeled_trees(nv) {
            let edges_shape = shape;
            let mut js: Vec<Vec<usize>> = Vec::new();
            for_each_tuple(nv, nfix, |t| {
                if edges_shape.iter().all(|&(a, b)| t[a] != t[b]) {
                    js.push(t.iter().map(|x| x + 1).collect());
                }
            });
            let mins: Vec<u32> = (0..nv).map(|_| 0).chain(edges_shape.iter().map(|_| 1)).collect();
            let degs = compositions(beta, &mins);
            for j in &js {
                for deg in &degs {
                    let vertices: Vec<Vertex> = (0..nv).map(|v| Vertex { j: j[v], beta: deg[v] }).collect();
                    let edges: Vec<Edge> = edges_shape
                        .iter()
                        .enumerate()
                        .map(|(i, &ends)| Edge { ends, beta: deg[nv + i] })
                        .collect();
                    for_each_tuple(n, nv, |place| {
                        for_each_tuple(n - 1, d as usize, |free| {
                            let mut mults: Vec<i64> = free.iter().map(|&x| x as i64).collect();
                            let last = (-(beta as i64) + n as i64 - 2 - mults.iter().sum::<i64>()).rem_euclid(d);
                            mults.push(last);
                            let marks: Vec<Mark> = (0..n)
                                .map(|k| Mark { vertex: place[k], mult: Multiplicity::new(mults[k], p.d) })
                                .collect();
                            let Some(flags) = solve_flags(&vertices, &edges, &marks, d) else { return };
                            let tree = DecoratedTree { vertices: vertices.clone(), edges: edges.clone(), flags, marks };
                            if tree.kinds(p).is_err() {
                                return;
                            }
                            found.entry(canonical_form(&tree)).or_insert(tree);
                        });
                    });
                }
            }
        }
    }
    found.into_values().collect()
}
