use crate::diag::Loc;
use crate::model::{ActivityGraph, EdgeGuard, NodeKind};

/// Structural problems of an activity graph that make its traversal
/// ill-defined, each with the location of the offending node.
pub fn check_guard_coverage(g: &ActivityGraph) -> Vec<(Loc, String)> {
    let mut out = Vec::new();
    for n in &g.nodes {
        match &n.kind {
            NodeKind::Decision => {
                let guarded = n
                    .edges
                    .iter()
                    .filter(|e| matches!(e.guard, EdgeGuard::When(_)))
                    .count();
                let elses = n
                    .edges
                    .iter()
                    .filter(|e| matches!(e.guard, EdgeGuard::Else))
                    .count();
                if guarded == 0 {
                    out.push((
                        n.loc,
                        format!("decision node '{}' requires at least one guarded edge", n.name),
                    ));
                }
                if elses == 0 {
                    out.push((n.loc, format!("decision node '{}' requires an else edge", n.name)));
                } else if elses > 1 {
                    out.push((
                        n.loc,
                        format!("decision node '{}' has more than one else edge", n.name),
                    ));
                }
                if guarded + elses < n.edges.len() {
                    out.push((
                        n.loc,
                        format!("decision node '{}' has an unguarded edge", n.name),
                    ));
                }
            }
            NodeKind::Action(_) => {
                if n.edges.len() != 1 {
                    out.push((
                        n.loc,
                        format!(
                            "action node '{}' must have exactly one edge, found {}",
                            n.name,
                            n.edges.len()
                        ),
                    ));
                } else if !matches!(n.edges[0].guard, EdgeGuard::Always) {
                    out.push((
                        n.loc,
                        format!("the edge leaving action node '{}' must be unguarded", n.name),
                    ));
                }
            }
        }
    }
    out
}
