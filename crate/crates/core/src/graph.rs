//! Breadth-first explicit-state exploration shared by the SFC and BIP
//! interpreters, with shortest counterexample paths.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_states: usize,
    pub max_edges: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: 200_000,
            max_edges: 2_000_000,
        }
    }
}

impl Limits {
    pub fn states(max_states: usize) -> Self {
        Limits {
            max_states,
            ..Limits::default()
        }
    }
}

/// Edge target. All range violations lead to one shared terminal defect node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dest {
    Node(usize),
    Defect,
}

#[derive(Debug, Clone)]
pub struct Edge<L> {
    pub label: L,
    pub to: Dest,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LimitHit {
    /// `"states"` or `"edges"`.
    pub kind: &'static str,
    /// Discovered but unexpanded nodes when exploration stopped.
    pub frontier: usize,
}

impl fmt::Display for LimitHit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} limit exceeded with {} unexplored nodes",
            self.kind, self.frontier
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("graph is partial ({0}); refusing to certify an invariant")]
pub struct PartialGraph(pub LimitHit);

/// Reachability graph. Node 0 is the initial node.
#[derive(Debug, Clone)]
pub struct Graph<N, L> {
    pub nodes: Vec<N>,
    pub edges: Vec<Vec<Edge<L>>>,
    /// BFS tree: (parent node, edge index in parent's list).
    pub parent: Vec<Option<(usize, usize)>>,
    /// Defect edges as (source node, message).
    pub defects: Vec<(usize, String)>,
    pub limit: Option<LimitHit>,
    index: HashMap<N, usize>,
}

/// Either a certificate or the shortest path (from the initial node) to a
/// violating node, given as node indices with the labels taken between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Counterexample(Vec<usize>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

impl<N: Clone + Eq + Hash, L> Graph<N, L> {
    pub fn node_count(&self) -> usize {
        self.nodes.len() + usize::from(!self.defects.is_empty())
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn is_complete(&self) -> bool {
        self.limit.is_none()
    }

    pub fn has_defect(&self) -> bool {
        !self.defects.is_empty()
    }

    pub fn id(&self, n: &N) -> Option<usize> {
        self.index.get(n).copied()
    }

    /// Node path from the initial node to `target` along BFS parents.
    pub fn path_to(&self, target: usize) -> Vec<usize> {
        let mut path = vec![target];
        let mut cur = target;
        while let Some((p, _)) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Label of the tree edge entering `node`.
    pub fn parent_label(&self, node: usize) -> Option<&L> {
        self.parent[node].map(|(p, e)| &self.edges[p][e].label)
    }

    /// Checks `pred` at every non-defect node. Nodes are visited in BFS order,
    /// so the first violation found has a shortest path.
    pub fn check(&self, mut pred: impl FnMut(&N) -> bool) -> Result<Verdict, PartialGraph> {
        if let Some(l) = &self.limit {
            return Err(PartialGraph(l.clone()));
        }
        Ok(match self.nodes.iter().position(|n| !pred(n)) {
            None => Verdict::Holds,
            Some(i) => Verdict::Counterexample(self.path_to(i)),
        })
    }
}

/// Explores from `init`. `succ` must list successors deterministically; an
/// `Err` successor is a defect edge carrying the error message.
pub fn explore<N, L, E>(
    init: N,
    limits: Limits,
    mut succ: impl FnMut(&N) -> Vec<(L, Result<N, E>)>,
) -> Graph<N, L>
where
    N: Clone + Eq + Hash,
    E: fmt::Display,
{
    let mut g = Graph {
        nodes: vec![init.clone()],
        edges: vec![Vec::new()],
        parent: vec![None],
        defects: Vec::new(),
        limit: None,
        index: HashMap::from([(init, 0)]),
    };
    let mut queue = VecDeque::from([0usize]);
    let mut edge_total = 0usize;
    while let Some(cur) = queue.pop_front() {
        let node = g.nodes[cur].clone();
        for (label, next) in succ(&node) {
            let to = match next {
                Err(e) => {
                    g.defects.push((cur, e.to_string()));
                    Dest::Defect
                }
                Ok(n) => match g.index.get(&n) {
                    Some(&i) => Dest::Node(i),
                    None => {
                        if g.nodes.len() >= limits.max_states {
                            g.limit = Some(LimitHit {
                                kind: "states",
                                frontier: queue.len() + 1,
                            });
                            log::debug!("exploration stopped at {} states", g.nodes.len());
                            return g;
                        }
                        let i = g.nodes.len();
                        g.nodes.push(n.clone());
                        g.edges.push(Vec::new());
                        g.parent.push(Some((cur, g.edges[cur].len())));
                        g.index.insert(n, i);
                        queue.push_back(i);
                        Dest::Node(i)
                    }
                },
            };
            g.edges[cur].push(Edge { label, to });
            edge_total += 1;
            if edge_total > limits.max_edges {
                g.limit = Some(LimitHit {
                    kind: "edges",
                    frontier: queue.len() + 1,
                });
                log::debug!("exploration stopped at {edge_total} edges");
                return g;
            }
        }
    }
    log::debug!("explored {} states, {edge_total} edges", g.nodes.len());
    g
}
