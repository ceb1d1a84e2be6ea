//! Decorated localization trees and their contributions.

mod canon;
mod contrib;
mod enumerate;
mod export;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{ModelParams, Multiplicity};

pub use canon::{aut_order, aut_order_brute_force, canonical_form};
pub use contrib::{
    contr_edge, contr_flag, contr_unstable_vertex, edge_factor, evaluate_fully_unstable_tree,
    evaluate_fully_unstable_tree_factored, in_degree_set, recursion_coeff, unstable_edge_display,
    unstable_val1_factor, Insertion, PsiInsertion,
};
pub use enumerate::enumerate_trees;
pub use export::{tree_to_dot, tree_to_json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Vertex {
    /// Fixed point `j_v ∈ 1..=N`.
    pub j: usize,
    pub beta: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub ends: (usize, usize),
    pub beta: u32,
}

impl Edge {
    pub fn other(&self, v: usize) -> usize {
        if self.ends.0 == v {
            self.ends.1
        } else {
            self.ends.0
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.ends.0 == v || self.ends.1 == v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mark {
    pub vertex: usize,
    pub mult: Multiplicity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedTree {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    /// `(vertex, edge) -> m_{(v,e)}`.
    pub flags: BTreeMap<(usize, usize), Multiplicity>,
    /// Mark `k + 1` sits at `marks[k].vertex`.
    pub marks: Vec<Mark>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexKind {
    Stable,
    UnstableVal1,
    UnstableVal2Node,
    UnstableVal2Mark,
}

impl VertexKind {
    pub fn tag(&self) -> &'static str {
        match self {
            VertexKind::Stable => "stable",
            VertexKind::UnstableVal1 => "unstable-val1",
            VertexKind::UnstableVal2Node => "unstable-val2-node",
            VertexKind::UnstableVal2Mark => "unstable-val2-mark",
        }
    }
}

impl DecoratedTree {
    pub fn degree(&self) -> u32 {
        self.vertices.iter().map(|v| v.beta).sum::<u32>() + self.edges.iter().map(|e| e.beta).sum::<u32>()
    }

    pub fn edges_at(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].touches(v)).collect()
    }

    pub fn marks_at(&self, v: usize) -> Vec<usize> {
        (0..self.marks.len()).filter(|&k| self.marks[k].vertex == v).collect()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.edges_at(v).len() + self.marks_at(v).len()
    }

    pub fn flag(&self, v: usize, e: usize) -> Multiplicity {
        self.flags[&(v, e)]
    }

    pub fn kind(&self, v: usize, p: &ModelParams) -> Result<VertexKind> {
        let val = self.valence(v);
        let beta = self.vertices[v].beta;
        let edges = self.edges_at(v).len();
        match val {
            0 => Err(Error::InternalInvariantViolation(format!("vertex {v} has valence 0"))),
            1 => Ok(if p.epsilon.is_unstable(beta) { VertexKind::UnstableVal1 } else { VertexKind::Stable }),
            2 if beta >= 1 => Ok(VertexKind::Stable),
            2 => match edges {
                2 => Ok(VertexKind::UnstableVal2Node),
                1 => Ok(VertexKind::UnstableVal2Mark),
                _ => Err(Error::InternalInvariantViolation(format!(
                    "vertex {v} carries two marks, no edges and degree zero"
                ))),
            },
            _ => Ok(VertexKind::Stable),
        }
    }

    pub fn kinds(&self, p: &ModelParams) -> Result<Vec<VertexKind>> {
        (0..self.vertices.len()).map(|v| self.kind(v, p)).collect()
    }

    pub fn is_fully_unstable(&self, p: &ModelParams) -> bool {
        self.kinds(p).is_ok_and(|k| k.iter().all(|k| *k != VertexKind::Stable))
    }

    /// Check connectivity, acyclicity, decorations and both selection rules.
    pub fn validate(&self, p: &ModelParams) -> Result<()> {
        let nv = self.vertices.len();
        let bad = |msg: String| Err(Error::InternalInvariantViolation(msg));
        if nv == 0 {
            return bad("empty tree".into());
        }
        if self.edges.len() + 1 != nv {
            return bad("edge count is not |V| - 1".into());
        }
        // connectivity by union-find
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.ends.0), find(&mut parent, e.ends.1));
            if a == b {
                return bad("cycle".into());
            }
            parent[a] = b;
        }
        for v in &self.vertices {
            if v.j == 0 || v.j > p.n() {
                return bad(format!("fixed point {} out of range", v.j));
            }
        }
        for (k, mk) in self.marks.iter().enumerate() {
            if mk.vertex >= nv {
                return bad(format!("mark {} on missing vertex", k + 1));
            }
        }
        let d = p.d as i64;
        for (ei, e) in self.edges.iter().enumerate() {
            let (v, w) = e.ends;
            if self.vertices[v].j == self.vertices[w].j {
                return Err(Error::InvalidEdge(format!("edge {ei} joins two vertices at fixed point {}", self.vertices[v].j)));
            }
            if e.beta == 0 {
                return bad(format!("edge {ei} has degree 0"));
            }
            let (Some(m1), Some(m2)) = (self.flags.get(&(v, ei)), self.flags.get(&(w, ei))) else {
                return bad(format!("edge {ei} lacks flag data"));
            };
            if (e.beta as i64 - m1.a() as i64 - m2.a() as i64).rem_euclid(d) != 0 {
                return bad(format!("edge {ei} violates the degree rule"));
            }
        }
        for v in 0..nv {
            let val = self.valence(v) as i64;
            let mut s = -(self.vertices[v].beta as i64) + val - 2;
            for e in self.edges_at(v) {
                s -= self.flag(v, e).a() as i64;
            }
            for k in self.marks_at(v) {
                s -= self.marks[k].mult.a() as i64;
            }
            if s.rem_euclid(d) != 0 {
                return bad(format!("vertex {v} violates the selection rule"));
            }
            self.kind(v, p)?;
        }
        Ok(())
    }
}
