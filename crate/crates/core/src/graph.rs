//! Task graphs: DAGs with non-negative rational edge costs, a source node
//! and a target node holding the reward.

use crate::rational::{Cost, Rational};
use std::collections::HashMap;
use std::fmt;

/// Index of a node, in declaration order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NodeId(pub usize);

/// Index of an edge, in insertion order. Insertion order is the canonical
/// tie-break order, and parallel edges are disambiguated by it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub usize);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub tail: NodeId,
    pub head: NodeId,
    pub cost: Rational,
}

/// Everything that can be wrong with a graph. `validate` reports all
/// violations at once rather than stopping at the first.
#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum GraphIssue {
    #[error("duplicate node id `{0}`")]
    DuplicateNode(String),
    #[error("unknown node `{0}` referenced by an edge")]
    UnknownNode(String),
    #[error("edge {index} ({tail} -> {head}) has negative cost {cost}")]
    NegativeCost {
        index: usize,
        tail: String,
        head: String,
        cost: Rational,
    },
    #[error("graph contains a cycle")]
    Cycle,
    #[error("target is not reachable from source")]
    UnreachableTarget,
    #[error("missing source node")]
    MissingSource,
    #[error("missing target node")]
    MissingTarget,
    #[error("graph has no nodes")]
    Empty,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TaskGraph {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    edges: Vec<Edge>,
    outgoing: Vec<Vec<EdgeId>>,
    source: NodeId,
    target: NodeId,
    topo: Vec<NodeId>,
}

impl TaskGraph {
    /// Build and validate. On failure every violated invariant is listed.
    pub fn new(
        node_names: Vec<String>,
        edge_specs: Vec<(String, String, Rational)>,
        source: &str,
        target: &str,
    ) -> Result<TaskGraph, Vec<GraphIssue>> {
        let mut issues = Vec::new();
        let mut index = HashMap::new();
        for (i, name) in node_names.iter().enumerate() {
            if index.insert(name.clone(), NodeId(i)).is_some() {
                issues.push(GraphIssue::DuplicateNode(name.clone()));
            }
        }
        if node_names.is_empty() {
            issues.push(GraphIssue::Empty);
        }
        let mut edges = Vec::with_capacity(edge_specs.len());
        let mut outgoing = vec![Vec::new(); node_names.len()];
        for (i, (tail, head, cost)) in edge_specs.into_iter().enumerate() {
            let t = index.get(&tail).copied();
            let h = index.get(&head).copied();
            if t.is_none() {
                issues.push(GraphIssue::UnknownNode(tail.clone()));
            }
            if h.is_none() {
                issues.push(GraphIssue::UnknownNode(head.clone()));
            }
            if cost.is_negative() {
                issues.push(GraphIssue::NegativeCost {
                    index: i,
                    tail: tail.clone(),
                    head: head.clone(),
                    cost: cost.clone(),
                });
            }
            if let (Some(t), Some(h)) = (t, h) {
                outgoing[t.0].push(EdgeId(edges.len()));
                edges.push(Edge {
                    tail: t,
                    head: h,
                    cost,
                });
            }
        }
        let source = match index.get(source) {
            Some(&s) => s,
            None => {
                issues.push(GraphIssue::MissingSource);
                NodeId(0)
            }
        };
        let target = match index.get(target) {
            Some(&t) => t,
            None => {
                issues.push(GraphIssue::MissingTarget);
                NodeId(0)
            }
        };
        let topo = match kahn_order(node_names.len(), &edges) {
            Some(order) => order,
            None => {
                issues.push(GraphIssue::Cycle);
                Vec::new()
            }
        };
        let graph = TaskGraph {
            names: node_names,
            index,
            edges,
            outgoing,
            source,
            target,
            topo,
        };
        if issues.is_empty() && !graph.reaches_target(graph.source) {
            issues.push(GraphIssue::UnreachableTarget);
        }
        if issues.is_empty() {
            Ok(graph)
        } else {
            Err(issues)
        }
    }

    /// Re-check every structural invariant of an already-built graph.
    pub fn validate(&self) -> Result<(), Vec<GraphIssue>> {
        TaskGraph::new(
            self.names.clone(),
            self.edges
                .iter()
                .map(|e| {
                    (
                        self.names[e.tail.0].clone(),
                        self.names[e.head.0].clone(),
                        e.cost.clone(),
                    )
                })
                .collect(),
            self.name(self.source),
            self.name(self.target),
        )
        .map(|_| ())
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.names.len()).map(NodeId)
    }

    pub fn name(&self, node: NodeId) -> &str {
        &self.names[node.0]
    }

    pub fn node_by_name(&self, name: &str) -> Option<NodeId> {
        self.index.get(name).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.0]
    }

    pub fn out_edges(&self, node: NodeId) -> impl Iterator<Item = (EdgeId, &Edge)> + '_ {
        self.outgoing[node.0].iter().map(|&id| (id, &self.edges[id.0]))
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn target(&self) -> NodeId {
        self.target
    }

    /// Nodes in a topological order, deterministic with respect to node
    /// declaration order. Every edge goes forward in the returned order.
    pub fn topological_order(&self) -> &[NodeId] {
        &self.topo
    }

    /// Position of each node in the topological order.
    pub fn topological_index(&self) -> Vec<usize> {
        let mut pos = vec![0; self.names.len()];
        for (i, &n) in self.topo.iter().enumerate() {
            pos[n.0] = i;
        }
        pos
    }

    /// Exact cheapest cost from each node to the target, by backward dynamic
    /// programming over the topological order. Nodes that cannot reach the
    /// target map to `Cost::Infinite`.
    pub fn shortest_path_costs(&self) -> Vec<Cost> {
        let mut dist = vec![Cost::Infinite; self.names.len()];
        dist[self.target.0] = Cost::zero();
        for &u in self.topo.iter().rev() {
            if u == self.target {
                continue;
            }
            let mut best = Cost::Infinite;
            for (_, e) in self.out_edges(u) {
                let via = dist[e.head.0].plus(&e.cost);
                if via < best {
                    best = via;
                }
            }
            dist[u.0] = best;
        }
        dist
    }

    /// Optimal traversal cost from the source (`C_o`), if the target is
    /// reachable -- which validation guarantees.
    pub fn optimal_cost(&self) -> Rational {
        self.shortest_path_costs()[self.source.0]
            .expect_finite()
            .clone()
    }

    /// Sum of all edge costs.
    pub fn total_edge_cost(&self) -> Rational {
        self.edges.iter().map(|e| &e.cost).sum()
    }

    fn reaches_target(&self, from: NodeId) -> bool {
        let mut seen = vec![false; self.names.len()];
        let mut stack = vec![from];
        seen[from.0] = true;
        while let Some(u) = stack.pop() {
            if u == self.target {
                return true;
            }
            for (_, e) in self.out_edges(u) {
                if !seen[e.head.0] {
                    seen[e.head.0] = true;
                    stack.push(e.head);
                }
            }
        }
        false
    }

    /// For every node, the set of exact sunk costs realizable by some path
    /// from the source. Unreachable nodes get an empty set. Can be
    /// exponential in pathological graphs; callers bound graph size.
    pub fn reachable_sunk_costs(&self) -> Vec<Vec<Rational>> {
        let mut sets: Vec<Vec<Rational>> = vec![Vec::new(); self.names.len()];
        sets[self.source.0].push(Rational::zero());
        for &u in &self.topo {
            if sets[u.0].is_empty() {
                continue;
            }
            for (_, e) in self.out_edges(u) {
                for sunk in sets[u.0].clone() {
                    let next = sunk + &e.cost;
                    let set = &mut sets[e.head.0];
                    if let Err(pos) = set.binary_search(&next) {
                        set.insert(pos, next);
                    }
                }
            }
        }
        sets
    }

    /// For every node, the set of exact total costs of paths from that node
    /// to the target.
    pub fn path_costs_to_target(&self) -> Vec<Vec<Rational>> {
        let mut sets: Vec<Vec<Rational>> = vec![Vec::new(); self.names.len()];
        sets[self.target.0].push(Rational::zero());
        for &u in self.topo.iter().rev() {
            if u == self.target {
                continue;
            }
            let mut acc: Vec<Rational> = Vec::new();
            for (_, e) in self.out_edges(u) {
                for rest in &sets[e.head.0] {
                    let c = rest + &e.cost;
                    if let Err(pos) = acc.binary_search(&c) {
                        acc.insert(pos, c);
                    }
                }
            }
            sets[u.0] = acc;
        }
        sets
    }
}

fn kahn_order(n: usize, edges: &[Edge]) -> Option<Vec<NodeId>> {
    let mut indegree = vec![0usize; n];
    for e in edges {
        indegree[e.head.0] += 1;
    }
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in edges.iter().enumerate() {
        out[e.tail.0].push(i);
    }
    // ready set kept sorted by node declaration index for determinism
    let mut ready: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(&u) = ready.first() {
        ready.remove(0);
        order.push(NodeId(u));
        for &ei in &out[u] {
            let h = edges[ei].head.0;
            indegree[h] -= 1;
            if indegree[h] == 0 {
                if let Err(pos) = ready.binary_search(&h) {
                    ready.insert(pos, h);
                }
            }
        }
    }
    if order.len() == n {
        Some(order)
    } else {
        None
    }
}

/// Present-bias and sunk-cost-bias parameters of an agent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AgentParams {
    bias: Rational,
    sunk_factor: Rational,
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum ParamError {
    #[error("present bias must be at least 1, got {0}")]
    BiasTooSmall(Rational),
    #[error("sunk-cost factor must be non-negative, got {0}")]
    NegativeSunkFactor(Rational),
    #[error("reward must be non-negative, got {0}")]
    NegativeReward(Rational),
}

impl AgentParams {
    pub fn new(bias: Rational, sunk_factor: Rational) -> Result<AgentParams, ParamError> {
        if bias < Rational::one() {
            return Err(ParamError::BiasTooSmall(bias));
        }
        if sunk_factor.is_negative() {
            return Err(ParamError::NegativeSunkFactor(sunk_factor));
        }
        Ok(AgentParams { bias, sunk_factor })
    }

    pub fn unbiased() -> AgentParams {
        AgentParams {
            bias: Rational::one(),
            sunk_factor: Rational::zero(),
        }
    }

    pub fn bias(&self) -> &Rational {
        &self.bias
    }

    pub fn sunk_factor(&self) -> &Rational {
        &self.sunk_factor
    }
}

/// A task graph bundled with its reward and default agent parameters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Instance {
    pub graph: TaskGraph,
    pub reward: Rational,
    pub params: AgentParams,
    pub label: String,
}

impl Instance {
    pub fn new(
        graph: TaskGraph,
        reward: Rational,
        params: AgentParams,
        label: impl Into<String>,
    ) -> Result<Instance, ParamError> {
        if reward.is_negative() {
            return Err(ParamError::NegativeReward(reward));
        }
        Ok(Instance {
            graph,
            reward,
            params,
            label: label.into(),
        })
    }

    pub fn with_reward(&self, reward: Rational) -> Instance {
        Instance {
            reward,
            ..self.clone()
        }
    }

    pub fn with_params(&self, params: AgentParams) -> Instance {
        Instance {
            params,
            ..self.clone()
        }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} nodes, {} edges, R={}, b={}, lambda={})",
            if self.label.is_empty() {
                "instance"
            } else {
                &self.label
            },
            self.graph.node_count(),
            self.graph.edges().len(),
            self.reward,
            self.params.bias(),
            self.params.sunk_factor(),
        )
    }
}

/// Convenience constructor used by generators and tests.
pub fn build_graph(
    nodes: &[&str],
    edges: &[(&str, &str, Rational)],
    source: &str,
    target: &str,
) -> Result<TaskGraph, Vec<GraphIssue>> {
    TaskGraph::new(
        nodes.iter().map(|s| s.to_string()).collect(),
        edges
            .iter()
            .map(|(t, h, c)| (t.to_string(), h.to_string(), c.clone()))
            .collect(),
        source,
        target,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn gym() -> TaskGraph {
        build_graph(
            &["s", "v", "w", "t"],
            &[
                ("s", "v", rat(1, 1)),
                ("v", "t", rat(12, 1)),
                ("s", "w", rat(4, 1)),
                ("w", "t", rat(10, 1)),
            ],
            "s",
            "t",
        )
        .unwrap()
    }

    #[test]
    fn gym_shortest_paths() {
        let g = gym();
        let d = g.shortest_path_costs();
        let at = |n: &str| d[g.node_by_name(n).unwrap().0].clone();
        assert_eq!(at("s"), Cost::Finite(rat(13, 1)));
        assert_eq!(at("v"), Cost::Finite(rat(12, 1)));
        assert_eq!(at("w"), Cost::Finite(rat(10, 1)));
        assert_eq!(at("t"), Cost::zero());
        assert_eq!(g.optimal_cost(), rat(13, 1));
    }

    #[test]
    fn topological_order_is_forward_and_stable() {
        let g = gym();
        let pos = g.topological_index();
        for e in g.edges() {
            assert!(pos[e.tail.0] < pos[e.head.0]);
        }
        // s before v and w; v, w before t
        let p = |n: &str| pos[g.node_by_name(n).unwrap().0];
        assert!(p("s") < p("v") && p("s") < p("w"));
        assert!(p("v") < p("t") && p("w") < p("t"));
    }

    #[test]
    fn single_node_graph() {
        let g = build_graph(&["s"], &[], "s", "s").unwrap();
        assert_eq!(g.topological_order(), &[NodeId(0)]);
        assert_eq!(g.optimal_cost(), Rational::zero());
    }

    #[test]
    fn chain_topological_order() {
        let g = build_graph(
            &["s", "a", "t"],
            &[("s", "a", rat(1, 1)), ("a", "t", rat(1, 1))],
            "s",
            "t",
        )
        .unwrap();
        let names: Vec<&str> = g.topological_order().iter().map(|&n| g.name(n)).collect();
        assert_eq!(names, vec!["s", "a", "t"]);
    }

    #[test]
    fn cycle_is_rejected() {
        let err = build_graph(
            &["s", "v", "w", "t"],
            &[
                ("s", "v", rat(1, 1)),
                ("v", "t", rat(12, 1)),
                ("t", "s", rat(1, 1)),
            ],
            "s",
            "t",
        )
        .unwrap_err();
        assert!(err.contains(&GraphIssue::Cycle));
    }

    #[test]
    fn unreachable_target_is_rejected() {
        let err = build_graph(
            &["s", "v", "t"],
            &[("s", "v", rat(1, 1))],
            "s",
            "t",
        )
        .unwrap_err();
        assert!(err.contains(&GraphIssue::UnreachableTarget));
    }

    #[test]
    fn negative_cost_is_rejected() {
        let err = build_graph(
            &["s", "t"],
            &[("s", "t", rat(-1, 1))],
            "s",
            "t",
        )
        .unwrap_err();
        assert!(matches!(err[0], GraphIssue::NegativeCost { .. }));
    }

    #[test]
    fn multiple_issues_reported_together() {
        let err = build_graph(
            &["s", "s", "t"],
            &[("s", "t", rat(-2, 1)), ("x", "t", rat(1, 1))],
            "s",
            "t",
        )
        .unwrap_err();
        assert!(err.len() >= 3);
    }

    #[test]
    fn unreachable_node_costs_infinity() {
        let g = build_graph(
            &["s", "dead", "t"],
            &[("s", "t", rat(3, 1)), ("s", "dead", rat(1, 1))],
            "s",
            "t",
        )
        .unwrap();
        let d = g.shortest_path_costs();
        assert_eq!(d[g.node_by_name("dead").unwrap().0], Cost::Infinite);
    }

    #[test]
    fn bellman_optimality_holds() {
        let g = gym();
        let d = g.shortest_path_costs();
        for u in g.nodes() {
            if u == g.target() || !d[u.0].is_finite() {
                continue;
            }
            let best = g
                .out_edges(u)
                .map(|(_, e)| d[e.head.0].plus(&e.cost))
                .min()
                .unwrap();
            assert_eq!(d[u.0], best);
        }
    }

    #[test]
    fn parallel_edges_are_permitted() {
        let g = build_graph(
            &["s", "t"],
            &[("s", "t", rat(2, 1)), ("s", "t", rat(1, 1))],
            "s",
            "t",
        )
        .unwrap();
        assert_eq!(g.optimal_cost(), rat(1, 1));
        assert_eq!(g.out_edges(g.source()).count(), 2);
    }

    #[test]
    fn sunk_cost_sets() {
        let g = gym();
        let sets = g.reachable_sunk_costs();
        let at = |n: &str| sets[g.node_by_name(n).unwrap().0].clone();
        assert_eq!(at("s"), vec![rat(0, 1)]);
        assert_eq!(at("v"), vec![rat(1, 1)]);
        assert_eq!(at("t"), vec![rat(13, 1), rat(14, 1)]);
        let back = g.path_costs_to_target();
        assert_eq!(back[g.source().0], vec![rat(13, 1), rat(14, 1)]);
    }
}
