//! Whole-group drawings. Interval, module and twist drawings live with their types.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::coxeter::{GroupTable, Subset};

/// Hasse diagram of the left weak order on the whole group, each right
/// descent class `D_I` filled with its own color and grouped in a cluster.
pub fn descent_classes_dot(g: &GroupTable) -> String {
    let classes: Vec<Subset> = Subset::all(g.rank()).collect();
    let k = classes.len().max(1);
    let mut out = String::new();
    writeln!(out, "digraph descent_classes {{").unwrap();
    writeln!(out, "  rankdir=TB;").unwrap();
    writeln!(out, "  node [shape=box, style=filled];").unwrap();
    for (c, &i) in classes.iter().enumerate() {
        let hue = c as f64 / k as f64;
        writeln!(out, "  subgraph cluster_{c} {{").unwrap();
        writeln!(out, "    label=\"D{i}\";").unwrap();
        for w in g.descent_class(i) {
            writeln!(out, "    \"{}\" [fillcolor=\"{hue:.3} 0.35 0.95\"];", g.label(w)).unwrap();
        }
        writeln!(out, "  }}").unwrap();
    }
    for w in 0..g.size() {
        for s in 0..g.rank() {
            if !g.left_descents(w).contains(s) {
                writeln!(out, "  \"{}\" -> \"{}\" [label=\"pi_{}\"];", g.label(w), g.label(g.left_mul(s, w)), s + 1).unwrap();
            }
        }
    }
    writeln!(out, "}}").unwrap();
    out
}

/// `[{I, size, members}]` over all `I ⊆ S`.
pub fn descent_classes_json(g: &GroupTable) -> Value {
    Value::Array(
        Subset::all(g.rank())
            .map(|i| {
                let members = g.descent_class(i);
                json!({
                    "I": i.to_one_based(),
                    "size": members.len(),
                    "members": members.iter().map(|&w| g.label(w)).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::GroupModel;

    #[test]
    fn a3_classes_partition_the_group() {
        let g = GroupTable::build(GroupModel::A(3)).unwrap();
        let v = descent_classes_json(&g);
        let sizes: Vec<u64> = v.as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap()).collect();
        assert_eq!(sizes.iter().sum::<u64>(), 24);
        assert_eq!(sizes.len(), 8);
        let dot = descent_classes_dot(&g);
        assert_eq!(dot.matches("subgraph cluster_").count(), 8);
        assert_eq!(dot.matches("fillcolor").count(), 24);
    }
}
