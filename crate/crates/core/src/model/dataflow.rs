use std::collections::{BTreeMap, BTreeSet};

use super::component::{ComponentType, Direction};
use super::arch::Architecture;

/// Instant data dependencies between the direct subcomponents of one
/// composed component.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DataflowGraph {
    pub nodes: BTreeSet<String>,
    pub edges: BTreeSet<(String, String)>,
}

impl DataflowGraph {
    pub fn successors<'a>(&'a self, node: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.edges
            .iter()
            .filter(move |(a, _)| a == node)
            .map(|(_, b)| b.as_str())
    }

    /// Lexicographically least topological order, or `None` if cyclic.
    pub fn least_topological_order(&self) -> Option<Vec<String>> {
        let mut indegree: BTreeMap<&str, usize> =
            self.nodes.iter().map(|n| (n.as_str(), 0)).collect();
        for (_, b) in &self.edges {
            *indegree.get_mut(b.as_str())? += 1;
        }
        let mut ready: BTreeSet<&str> = indegree
            .iter()
            .filter(|(_, d)| **d == 0)
            .map(|(n, _)| *n)
            .collect();
        let mut order = Vec::with_capacity(self.nodes.len());
        while let Some(n) = ready.pop_first() {
            order.push(n.to_string());
            for s in self.successors(n) {
                let d = indegree.get_mut(s)?;
                *d -= 1;
                if *d == 0 {
                    ready.insert(s);
                }
            }
        }
        (order.len() == self.nodes.len()).then_some(order)
    }

    /// Some cycle as a node sequence, rotated to start at its least node.
    pub fn find_cycle(&self) -> Option<Vec<String>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            White,
            Grey,
            Black,
        }
        fn visit<'a>(
            g: &'a DataflowGraph,
            n: &'a str,
            marks: &mut BTreeMap<&'a str, Mark>,
            stack: &mut Vec<&'a str>,
        ) -> Option<Vec<String>> {
            marks.insert(n, Mark::Grey);
            stack.push(n);
            for s in g.successors(n) {
                match marks.get(s).copied().unwrap_or(Mark::White) {
                    Mark::Grey => {
                        let start = stack.iter().position(|x| *x == s)?;
                        let mut cycle: Vec<String> =
                            stack[start..].iter().map(|x| x.to_string()).collect();
                        let min = cycle
                            .iter()
                            .enumerate()
                            .min_by(|a, b| a.1.cmp(b.1))
                            .map(|(i, _)| i)?;
                        cycle.rotate_left(min);
                        return Some(cycle);
                    }
                    Mark::White => {
                        if let Some(c) = visit(g, s, marks, stack) {
                            return Some(c);
                        }
                    }
                    Mark::Black => {}
                }
            }
            stack.pop();
            marks.insert(n, Mark::Black);
            None
        }
        let mut marks = BTreeMap::new();
        for n in &self.nodes {
            if marks.get(n.as_str()).copied().unwrap_or(Mark::White) == Mark::White {
                let mut stack = Vec::new();
                if let Some(c) = visit(self, n, &mut marks, &mut stack) {
                    return Some(c);
                }
            }
        }
        None
    }

    /// First edge `(a, b)` that `order` violates by placing `b` before `a`.
    pub fn first_violation(&self, order: &[String]) -> Option<(String, String)> {
        let pos: BTreeMap<&str, usize> = order
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        self.edges
            .iter()
            .filter(|(a, b)| matches!((pos.get(a.as_str()), pos.get(b.as_str())), (Some(x), Some(y)) if x > y))
            .min_by_key(|(a, b)| (pos[b.as_str()], pos[a.as_str()]))
            .cloned()
    }
}

/// Edge `a -> b` iff an instant connector runs from an out-port of
/// subcomponent `a` to an in-port of subcomponent `b`. Boundary ports and
/// delayed connectors contribute no edges; unresolvable references are
/// skipped.
pub fn dataflow_graph(arch: &Architecture, owner: &ComponentType) -> DataflowGraph {
    let mut g = DataflowGraph {
        nodes: owner.subcomponents.iter().map(|s| s.name.clone()).collect(),
        edges: BTreeSet::new(),
    };
    let port_dir = |instance: &str, port: &str| -> Option<Direction> {
        let sub = owner.subcomponent(instance)?;
        let ty = arch.component(&sub.ty.name)?;
        Some(ty.port(port)?.direction)
    };
    for c in owner.connectors.iter().filter(|c| !c.delayed) {
        let Some(src) = &c.source.instance else {
            continue;
        };
        if port_dir(src, &c.source.port) != Some(Direction::Out) {
            continue;
        }
        for t in &c.targets {
            let Some(dst) = &t.instance else { continue };
            if port_dir(dst, &t.port) == Some(Direction::In) {
                g.edges.insert((src.clone(), dst.clone()));
            }
        }
    }
    g
}
