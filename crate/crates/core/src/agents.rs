//! Step-by-step simulation of biased agents on task graphs.
//!
//! An agent at node `u` with sunk cost `sigma` perceives the reward as
//! `R + lambda * sigma` and the cost of a path starting with edge `(u,v)`
//! as `b * c(u,v)` plus the believed actual cost of the rest. It continues
//! whenever the best perceived cost is at most the perceived reward (ties
//! continue). What "believed actual cost" means depends on the kind of
//! agent; that is the whole story of this module.

use crate::doubly;
use crate::graph::{AgentParams, EdgeId, Instance, NodeId, TaskGraph};
use crate::rational::{Cost, Rational};
use crate::trace::{payoff_of, Decision, Outcome, Step, TraversalTrace};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum AgentKind {
    /// Ignores both biases; commits to the cheapest path at the source.
    Optimal,
    /// Present bias only, believes future selves plan optimally.
    NaivePresentBiased,
    /// Present bias only, correctly predicts future behavior.
    SophisticatedPresentBiased,
    /// Both biases, believes future selves plan optimally.
    DoublyNaive,
    /// Sophisticated about present bias, naive about sunk-cost bias.
    SinglySophisticated,
    /// Sophisticated about both biases; planned by the `doubly` module.
    DoublySophisticated,
    /// Naive about present bias, sophisticated about sunk-cost bias.
    /// Behaviorally identical to `DoublyNaive`; kept as an independent
    /// code path so that equivalence is a checkable fact.
    NaivePresentSophSunk,
}

pub const ALL_KINDS: [AgentKind; 7] = [
    AgentKind::Optimal,
    AgentKind::NaivePresentBiased,
    AgentKind::SophisticatedPresentBiased,
    AgentKind::DoublyNaive,
    AgentKind::SinglySophisticated,
    AgentKind::DoublySophisticated,
    AgentKind::NaivePresentSophSunk,
];

impl AgentKind {
    pub fn name(self) -> &'static str {
        match self {
            AgentKind::Optimal => "optimal",
            AgentKind::NaivePresentBiased => "naive-present-biased",
            AgentKind::SophisticatedPresentBiased => "sophisticated-present-biased",
            AgentKind::DoublyNaive => "doubly-naive",
            AgentKind::SinglySophisticated => "singly-sophisticated",
            AgentKind::DoublySophisticated => "doubly-sophisticated",
            AgentKind::NaivePresentSophSunk => "naive-present-soph-sunk",
        }
    }

    pub fn from_name(s: &str) -> Option<AgentKind> {
        ALL_KINDS.iter().copied().find(|k| k.name() == s)
    }

    /// The sunk-cost factor this kind actually applies. The two
    /// present-bias-only kinds and the optimal agent ignore `lambda`.
    pub fn effective_sunk_factor(self, params: &AgentParams) -> Rational {
        match self {
            AgentKind::Optimal
            | AgentKind::NaivePresentBiased
            | AgentKind::SophisticatedPresentBiased => Rational::zero(),
            _ => params.sunk_factor().clone(),
        }
    }
}

impl std::fmt::Display for AgentKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Reward as perceived after incurring `sunk`: `R + lambda * sunk`.
pub fn perceived_reward(reward: &Rational, lambda: &Rational, sunk: &Rational) -> Rational {
    reward + lambda * sunk
}

/// Among `options` (edge, perceived cost), pick the minimizer. Ties prefer
/// the smaller immediate edge cost, then the earlier edge in insertion
/// order. Infinite options never win; `None` means nothing is viable.
pub(crate) fn select_min_perceived(
    graph: &TaskGraph,
    options: impl IntoIterator<Item = (EdgeId, Cost)>,
) -> Option<(EdgeId, Rational)> {
    let mut best: Option<(EdgeId, Rational)> = None;
    for (edge, perceived) in options {
        let Cost::Finite(perceived) = perceived else {
            continue;
        };
        let better = match &best {
            None => true,
            Some((best_edge, best_perceived)) => {
                match perceived.cmp(best_perceived) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Greater => false,
                    std::cmp::Ordering::Equal => {
                        let ec = &graph.edge(edge).cost;
                        let bc = &graph.edge(*best_edge).cost;
                        match ec.cmp(bc) {
                            std::cmp::Ordering::Less => true,
                            std::cmp::Ordering::Greater => false,
                            std::cmp::Ordering::Equal => edge < *best_edge,
                        }
                    }
                }
            }
        };
        if better {
            best = Some((edge, perceived));
        }
    }
    best
}

/// What a sophisticated present-biased agent would do at every node, for a
/// fixed perceived reward `rho`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlanTable {
    choices: Vec<Option<EdgeId>>,
    continuations: Vec<Cost>,
    target: NodeId,
    pub rho: Rational,
    pub bias: Rational,
}

impl PlanTable {
    /// True when the agent, standing at `node`, would stop.
    pub fn is_abandon(&self, node: NodeId) -> bool {
        !self.continuations[node.0].is_finite()
    }

    pub fn choice(&self, node: NodeId) -> Option<EdgeId> {
        self.choices[node.0]
    }

    /// Actual (unbiased) cost of the planned continuation from `node`.
    pub fn continuation(&self, node: NodeId) -> &Cost {
        &self.continuations[node.0]
    }

    /// The planned path from `node` to the target, or `None` at an
    /// abandoned node.
    pub fn path_from(&self, graph: &TaskGraph, node: NodeId) -> Option<Vec<NodeId>> {
        if self.is_abandon(node) {
            return None;
        }
        let mut path = vec![node];
        let mut u = node;
        while let Some(e) = self.choices[u.0] {
            u = graph.edge(e).head;
            path.push(u);
        }
        debug_assert_eq!(u, self.target);
        Some(path)
    }
}

/// Compute the plan of a sophisticated `(b, 0)`-agent for perceived reward
/// `rho`, in reverse topological order. At each node the agent selects,
/// among edges whose head is not abandoned, the edge minimizing
/// `b * c(u,v) + continuation(v)`; the node is abandoned when the minimum
/// exceeds `rho` or no viable edge exists.
pub fn sophisticated_plan(graph: &TaskGraph, bias: &Rational, rho: &Rational) -> PlanTable {
    let n = graph.node_count();
    let mut choices: Vec<Option<EdgeId>> = vec![None; n];
    let mut continuations: Vec<Cost> = vec![Cost::Infinite; n];
    for &u in graph.topological_order().iter().rev() {
        if u == graph.target() {
            continuations[u.0] = Cost::zero();
            continue;
        }
        let options = graph
            .out_edges(u)
            .map(|(id, e)| (id, continuations[e.head.0].plus(&(bias * &e.cost))));
        if let Some((edge, perceived)) = select_min_perceived(graph, options) {
            if perceived <= *rho {
                let e = graph.edge(edge);
                continuations[u.0] = continuations[e.head.0].plus(&e.cost);
                choices[u.0] = Some(edge);
            }
        }
    }
    PlanTable {
        choices,
        continuations,
        target: graph.target(),
        rho: rho.clone(),
        bias: bias.clone(),
    }
}

struct TraceBuilder<'a> {
    instance: &'a Instance,
    lambda: Rational,
    steps: Vec<Step>,
    sunk: Rational,
}

impl<'a> TraceBuilder<'a> {
    fn new(instance: &'a Instance, kind: AgentKind) -> TraceBuilder<'a> {
        TraceBuilder {
            instance,
            lambda: kind.effective_sunk_factor(&instance.params),
            steps: Vec::new(),
            sunk: Rational::zero(),
        }
    }

    fn rho(&self) -> Rational {
        perceived_reward(&self.instance.reward, &self.lambda, &self.sunk)
    }

    fn take(&mut self, node: NodeId, edge: EdgeId, planned: Vec<NodeId>) -> NodeId {
        let rho = self.rho();
        self.steps.push(Step {
            node,
            sunk_cost: self.sunk.clone(),
            perceived_reward: rho,
            planned_path: planned,
            decision: Decision::Take(edge),
        });
        let e = self.instance.graph.edge(edge);
        self.sunk += &e.cost;
        e.head
    }

    fn finish(mut self, node: NodeId) -> TraversalTrace {
        let rho = self.rho();
        self.steps.push(Step {
            node,
            sunk_cost: self.sunk.clone(),
            perceived_reward: rho,
            planned_path: vec![node],
            decision: Decision::Finish,
        });
        self.done(Outcome::Reached)
    }

    fn abandon(mut self, node: NodeId) -> TraversalTrace {
        let rho = self.rho();
        let never_started = node == self.instance.graph.source() && self.sunk.is_zero();
        self.steps.push(Step {
            node,
            sunk_cost: self.sunk.clone(),
            perceived_reward: rho,
            planned_path: Vec::new(),
            decision: Decision::Abandon,
        });
        self.done(if never_started {
            Outcome::NeverStarted
        } else {
            Outcome::AbandonedAt(node)
        })
    }

    fn done(self, outcome: Outcome) -> TraversalTrace {
        let total_cost = if outcome == Outcome::NeverStarted {
            Rational::zero()
        } else {
            self.sunk
        };
        let mut trace = TraversalTrace {
            steps: self.steps,
            outcome,
            total_cost,
            payoff: Rational::zero(),
        };
        trace.payoff = payoff_of(&trace, &self.instance.reward);
        trace
    }
}

/// Simulate one agent on an instance. Abandonment is an outcome, not an
/// error; the trace records every step.
pub fn simulate(instance: &Instance, kind: AgentKind) -> TraversalTrace {
    match kind {
        AgentKind::Optimal => simulate_optimal(instance),
        AgentKind::SophisticatedPresentBiased => simulate_fixed_plan(instance),
        AgentKind::SinglySophisticated => simulate_singly_sophisticated(instance),
        AgentKind::NaivePresentBiased | AgentKind::DoublyNaive | AgentKind::NaivePresentSophSunk => {
            simulate_naive(instance, kind)
        }
        AgentKind::DoublySophisticated => doubly::recursive_states(instance).trace,
    }
}

fn simulate_optimal(instance: &Instance) -> TraversalTrace {
    let graph = &instance.graph;
    let dist = graph.shortest_path_costs();
    let mut builder = TraceBuilder::new(instance, AgentKind::Optimal);
    let start = dist[graph.source().0].expect_finite();
    if *start > instance.reward {
        return builder.abandon(graph.source());
    }
    let (edges, path) = cheapest_path(graph, &dist, graph.source());
    let mut u = graph.source();
    for (i, &edge) in edges.iter().enumerate() {
        u = builder.take(u, edge, path[i..].to_vec());
    }
    builder.finish(u)
}

/// The cheapest path from `from` to the target under the canonical
/// tie-break (smaller immediate cost, then edge order), as the edges
/// taken and the nodes visited.
fn cheapest_path(graph: &TaskGraph, dist: &[Cost], from: NodeId) -> (Vec<EdgeId>, Vec<NodeId>) {
    let mut edges = Vec::new();
    let mut path = vec![from];
    let mut u = from;
    while u != graph.target() {
        let (edge, _) = select_min_perceived(
            graph,
            graph
                .out_edges(u)
                .map(|(id, e)| (id, dist[e.head.0].plus(&e.cost))),
        )
        .expect("path exists by finiteness");
        edges.push(edge);
        u = graph.edge(edge).head;
        path.push(u);
    }
    (edges, path)
}

fn simulate_fixed_plan(instance: &Instance) -> TraversalTrace {
    let graph = &instance.graph;
    let plan = sophisticated_plan(graph, instance.params.bias(), &instance.reward);
    let mut builder = TraceBuilder::new(instance, AgentKind::SophisticatedPresentBiased);
    let mut u = graph.source();
    if plan.is_abandon(u) {
        return builder.abandon(u);
    }
    while u != graph.target() {
        let planned = plan.path_from(graph, u).expect("on-plan nodes are viable");
        let edge = plan.choice(u).expect("non-target viable node has a choice");
        u = builder.take(u, edge, planned);
    }
    builder.finish(u)
}

fn simulate_singly_sophisticated(instance: &Instance) -> TraversalTrace {
    let graph = &instance.graph;
    let mut builder = TraceBuilder::new(instance, AgentKind::SinglySophisticated);
    let mut u = graph.source();
    loop {
        if u == graph.target() {
            return builder.finish(u);
        }
        // The believed plan is recomputed at every node because the
        // perceived reward grows with the sunk cost.
        let plan = sophisticated_plan(graph, instance.params.bias(), &builder.rho());
        if plan.is_abandon(u) {
            return builder.abandon(u);
        }
        let planned = plan.path_from(graph, u).unwrap();
        let edge = plan.choice(u).unwrap();
        u = builder.take(u, edge, planned);
    }
}

fn simulate_naive(instance: &Instance, kind: AgentKind) -> TraversalTrace {
    let graph = &instance.graph;
    let bias = instance.params.bias();
    let dist = graph.shortest_path_costs();
    let mut builder = TraceBuilder::new(instance, kind);
    let mut u = graph.source();
    loop {
        if u == graph.target() {
            return builder.finish(u);
        }
        let rho = builder.rho();
        let options: Vec<(EdgeId, Cost)> = graph
            .out_edges(u)
            .map(|(id, e)| {
                let believed = believed_continuation(instance, kind, &dist, &builder.sunk, e);
                (id, believed.plus(&(bias * &e.cost)))
            })
            .collect();
        match select_min_perceived(graph, options) {
            Some((edge, perceived)) if perceived <= rho => {
                let head = graph.edge(edge).head;
                let mut planned = vec![u];
                planned.extend(cheapest_path(graph, &dist, head).1);
                u = builder.take(u, edge, planned);
            }
            _ => return builder.abandon(u),
        }
    }
}

/// What a naive agent believes the rest of the traversal will cost after
/// crossing `e`.
fn believed_continuation(
    instance: &Instance,
    kind: AgentKind,
    dist: &[Cost],
    sunk: &Rational,
    e: &crate::graph::Edge,
) -> Cost {
    let shortest = dist[e.head.0].clone();
    match kind {
        // Believes its future self plans optimally and completes the
        // shortest path unconditionally.
        AgentKind::NaivePresentBiased | AgentKind::DoublyNaive => shortest,
        // Believes its future self is a (1, lambda)-agent sophisticated
        // about its sunk-cost bias. Such a self, standing at the head with
        // sunk cost `sunk + c`, walks the shortest path if its cost fits
        // within the reward it will perceive there, and abandons otherwise.
        AgentKind::NaivePresentSophSunk => match shortest {
            Cost::Finite(d) => {
                let future_sunk = sunk + &e.cost;
                let future_rho = perceived_reward(
                    &instance.reward,
                    instance.params.sunk_factor(),
                    &future_sunk,
                );
                if d <= future_rho {
                    Cost::Finite(d)
                } else {
                    Cost::Infinite
                }
            }
            Cost::Infinite => Cost::Infinite,
        },
        _ => unreachable!("only naive kinds use believed_continuation"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::rational::rat;
    use crate::trace::count_switches;

    fn gym() -> Instance {
        crate::generators::gym_fixture()
    }

    #[test]
    fn perceived_reward_examples() {
        assert_eq!(
            perceived_reward(&rat(19, 1), &rat(1, 2), &rat(1, 1)),
            rat(39, 2)
        );
        assert_eq!(
            perceived_reward(&rat(123, 7), &rat(0, 1), &rat(55, 3)),
            rat(123, 7)
        );
        assert_eq!(
            perceived_reward(&rat(35, 2), &rat(3, 4), &rat(4, 1)),
            rat(41, 2)
        );
    }

    #[test]
    fn gym_sophisticated_plan_abandons_everywhere() {
        let inst = gym();
        let plan = sophisticated_plan(&inst.graph, &rat(2, 1), &rat(19, 1));
        for name in ["s", "v", "w"] {
            assert!(plan.is_abandon(inst.graph.node_by_name(name).unwrap()));
        }
        assert!(!plan.is_abandon(inst.graph.target()));
    }

    #[test]
    fn unbiased_plan_is_the_shortest_path() {
        let inst = gym();
        let plan = sophisticated_plan(&inst.graph, &Rational::one(), &rat(19, 1));
        let dist = inst.graph.shortest_path_costs();
        for u in inst.graph.nodes() {
            if let Cost::Finite(d) = &dist[u.0] {
                if *d <= rat(19, 1) {
                    assert_eq!(plan.continuation(u), &Cost::Finite(d.clone()));
                }
            }
        }
    }

    #[test]
    fn gym_doubly_naive_buys_basic_and_quits() {
        let inst = gym();
        let trace = simulate(&inst, AgentKind::DoublyNaive);
        let v = inst.graph.node_by_name("v").unwrap();
        assert_eq!(trace.outcome, Outcome::AbandonedAt(v));
        assert_eq!(trace.total_cost, rat(1, 1));
        assert_eq!(trace.payoff, rat(-1, 1));
    }

    #[test]
    fn gym_sophisticated_never_starts() {
        let inst = gym();
        let trace = simulate(&inst, AgentKind::SophisticatedPresentBiased);
        assert_eq!(trace.outcome, Outcome::NeverStarted);
        assert_eq!(trace.payoff, rat(0, 1));
    }

    #[test]
    fn gym_optimal_takes_the_basic_membership() {
        let inst = gym();
        let trace = simulate(&inst, AgentKind::Optimal);
        assert_eq!(trace.outcome, Outcome::Reached);
        assert_eq!(trace.total_cost, rat(13, 1));
        assert_eq!(trace.payoff, rat(6, 1));
        let names: Vec<&str> = trace.visited().iter().map(|&n| inst.graph.name(n)).collect();
        assert_eq!(names, vec!["s", "v", "t"]);
    }

    #[test]
    fn gym_with_low_reward_never_starts() {
        let inst = gym().with_reward(rat(10, 1));
        let trace = simulate(&inst, AgentKind::Optimal);
        assert_eq!(trace.outcome, Outcome::NeverStarted);
        assert_eq!(trace.payoff, rat(0, 1));
    }

    #[test]
    fn zero_cost_edge_reaches_for_every_kind() {
        let g = build_graph(&["s", "t"], &[("s", "t", rat(0, 1))], "s", "t").unwrap();
        let inst = Instance::new(
            g,
            rat(7, 2),
            AgentParams::new(rat(3, 1), rat(1, 1)).unwrap(),
            "zero",
        )
        .unwrap();
        for kind in ALL_KINDS {
            let trace = simulate(&inst, kind);
            assert_eq!(trace.outcome, Outcome::Reached, "{kind}");
            assert_eq!(trace.payoff, rat(7, 2), "{kind}");
        }
    }

    #[test]
    fn source_equals_target_reaches_immediately() {
        let g = build_graph(&["s"], &[], "s", "s").unwrap();
        let inst = Instance::new(g, rat(5, 1), AgentParams::unbiased(), "point").unwrap();
        for kind in ALL_KINDS {
            let trace = simulate(&inst, kind);
            assert_eq!(trace.outcome, Outcome::Reached, "{kind}");
            assert_eq!(trace.total_cost, rat(0, 1));
            assert_eq!(trace.payoff, rat(5, 1));
        }
    }

    #[test]
    fn sophisticated_traces_never_switch_plans() {
        let inst = crate::generators::deadline_fixture();
        let trace = simulate(&inst, AgentKind::SophisticatedPresentBiased);
        assert_eq!(count_switches(&trace, &inst.graph).count(), 0);
        let trace = simulate(&inst, AgentKind::Optimal);
        assert_eq!(count_switches(&trace, &inst.graph).count(), 0);
    }

    #[test]
    fn sing_abandons_fixture_behaves_as_narrated() {
        let inst = crate::generators::sing_abandons_fixture();
        let g = &inst.graph;
        let u = g.node_by_name("u").unwrap();

        // at the source the believed plan with rho = 11 goes s->u->v->t
        let plan = sophisticated_plan(g, inst.params.bias(), &inst.reward);
        let path = plan.path_from(g, g.source()).unwrap();
        let names: Vec<&str> = path.iter().map(|&n| g.name(n)).collect();
        assert_eq!(names, vec!["s", "u", "v", "t"]);

        let trace = simulate(&inst, AgentKind::SinglySophisticated);
        assert_eq!(trace.outcome, Outcome::AbandonedAt(u));
        assert_eq!(trace.total_cost, rat(2, 1));

        let soph = simulate(&inst, AgentKind::SophisticatedPresentBiased);
        assert_eq!(soph.outcome, Outcome::Reached);
        assert_eq!(soph.total_cost, rat(9, 1));
        assert_eq!(soph.payoff, rat(2, 1));

        let opt = simulate(&inst, AgentKind::Optimal);
        assert_eq!(opt.payoff, rat(2, 1));
    }

    #[test]
    fn naive_present_soph_sunk_matches_doubly_naive_on_gym() {
        let inst = gym();
        assert_eq!(
            simulate(&inst, AgentKind::NaivePresentSophSunk),
            simulate(&inst, AgentKind::DoublyNaive)
        );
    }

    #[test]
    fn traces_are_deterministic() {
        let inst = crate::generators::deadline_fixture();
        for kind in ALL_KINDS {
            assert_eq!(simulate(&inst, kind), simulate(&inst, kind), "{kind}");
        }
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in ALL_KINDS {
            assert_eq!(AgentKind::from_name(kind.name()), Some(kind));
        }
        assert_eq!(AgentKind::from_name("nonsense"), None);
    }
}
