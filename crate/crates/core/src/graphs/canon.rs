//! Canonical forms and automorphism counts of decorated trees.

use std::collections::BTreeMap;

use super::DecoratedTree;

/// Rooted encoding of the subtree at `v` reached from `parent`, together
/// with its automorphism count.
fn encode(t: &DecoratedTree, v: usize, parent: Option<usize>) -> (String, u64) {
    let vx = t.vertices[v];
    let mut marks: Vec<String> = t.marks_at(v).iter().map(|&k| format!("{}:{}", k + 1, t.marks[k].mult.a())).collect();
    marks.sort();
    let mut children: Vec<(String, u64)> = Vec::new();
    for e in t.edges_at(v) {
        let u = t.edges[e].other(v);
        if Some(u) == parent {
            continue;
        }
        let (sub, aut) = encode(t, u, Some(v));
        let label = format!("<{}|{}|{}|{}>", t.edges[e].beta, t.flag(v, e).a(), t.flag(u, e).a(), sub);
        children.push((label, aut));
    }
    children.sort();
    let mut aut: u64 = children.iter().map(|(_, a)| *a).product();
    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
    for (c, _) in &children {
        *counts.entry(c.as_str()).or_insert(0) += 1;
    }
    for k in counts.values() {
        aut *= (1..=*k).product::<u64>();
    }
    let body: Vec<&str> = children.iter().map(|(c, _)| c.as_str()).collect();
    (format!("({},{}[{}]{})", vx.j, vx.beta, marks.join(","), body.join("")), aut)
}

fn root(t: &DecoratedTree) -> usize {
    t.marks.first().map(|m| m.vertex).unwrap_or(0)
}

/// Canonical string; two trees are isomorphic iff their strings agree.
pub fn canonical_form(t: &DecoratedTree) -> String {
    encode(t, root(t), None).0
}

/// Order of the automorphism group fixing decorations and marks.
pub fn aut_order(t: &DecoratedTree) -> u64 {
    if t.marks.is_empty() {
        return aut_order_brute_force(t);
    }
    encode(t, root(t), None).1
}

/// Count automorphisms by checking every vertex permutation.
pub fn aut_order_brute_force(t: &DecoratedTree) -> u64 {
    let n = t.vertices.len();
    let mut edge_at: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (i, e) in t.edges.iter().enumerate() {
        edge_at.insert((e.ends.0, e.ends.1), i);
        edge_at.insert((e.ends.1, e.ends.0), i);
    }
    let mut count = 0;
    let mut perm: Vec<usize> = (0..n).collect();
    let ok = |perm: &[usize]| {
        if (0..n).any(|v| t.vertices[v] != t.vertices[perm[v]]) {
            return false;
        }
        for mk in &t.marks {
            if perm[mk.vertex] != mk.vertex {
                return false;
            }
        }
        for (i, e) in t.edges.iter().enumerate() {
            let (a, b) = (perm[e.ends.0], perm[e.ends.1]);
            let Some(&j) = edge_at.get(&(a, b)) else { return false };
            if t.edges[j].beta != e.beta
                || t.flag(a, j) != t.flag(e.ends.0, i)
                || t.flag(b, j) != t.flag(e.ends.1, i)
            {
                return false;
            }
        }
        true
    };
    permute(&mut perm, 0, &mut |p| {
        if ok(p) {
            count += 1;
        }
    });
    count
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}
