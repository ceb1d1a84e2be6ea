use serde_json::{json, Value};

use super::{aut_order, evaluate_fully_unstable_tree, DecoratedTree, VertexKind};
use crate::error::Error;
use crate::model::ModelParams;

/// JSON record for one tree.  Trees with a stable vertex get the
/// placeholder `"symbolic-stable"` instead of a value.
pub fn tree_to_json(tree: &DecoratedTree, p: &ModelParams) -> Value {
    let kinds = tree.kinds(p).unwrap_or_default();
    let contribution = match evaluate_fully_unstable_tree(tree, &[], p) {
        Ok(r) => Value::String(r.to_string()),
        Err(Error::ContainsStableVertex) => Value::String("symbolic-stable".into()),
        Err(e) => Value::String(format!("error: {e}")),
    };
    json!({
        "vertices": tree.vertices.iter().map(|v| json!({"j": v.j, "beta": v.beta})).collect::<Vec<_>>(),
        "edges": tree.edges.iter().map(|e| json!({"ends": [e.ends.0, e.ends.1], "beta": e.beta})).collect::<Vec<_>>(),
        "flags": tree.flags.iter().map(|(&(v, e), m)| json!({"vertex": v, "edge": e, "mult": m.to_string()})).collect::<Vec<_>>(),
        "marks": tree.marks.iter().enumerate().map(|(k, m)| json!({"mark": k + 1, "vertex": m.vertex, "mult": m.mult.to_string()})).collect::<Vec<_>>(),
        "aut_order": aut_order(tree),
        "kind_tags": kinds.iter().map(VertexKind::tag).collect::<Vec<_>>(),
        "contribution": contribution,
    })
}

pub fn tree_to_dot(tree: &DecoratedTree, p: &ModelParams) -> String {
    let kinds = tree.kinds(p).unwrap_or_default();
    let mut s = String::from("graph tree {\n  node [shape=circle];\n");
    for (v, vx) in tree.vertices.iter().enumerate() {
        let shape = match kinds.get(v) {
            Some(VertexKind::Stable) => "doublecircle",
            _ => "circle",
        };
        s.push_str(&format!("  v{v} [label=\"j={} β={}\", shape={shape}];\n", vx.j, vx.beta));
    }
    for (k, m) in tree.marks.iter().enumerate() {
        s.push_str(&format!("  s{} [label=\"{} ({})\", shape=plaintext];\n", k + 1, k + 1, m.mult));
        s.push_str(&format!("  v{} -- s{};\n", m.vertex, k + 1));
    }
    for (i, e) in tree.edges.iter().enumerate() {
        let (a, b) = e.ends;
        s.push_str(&format!(
            "  v{a} -- v{b} [label=\"{}\", taillabel=\"{}\", headlabel=\"{}\"];\n",
            e.beta,
            tree.flag(a, i),
            tree.flag(b, i)
        ));
    }
    s.push_str("}\n");
    s
}
