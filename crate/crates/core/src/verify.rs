//! Named verification suites behind the CLI `verify` subcommand: fixture
//! narrations, planner equivalence sweeps, quantitative bounds, and the
//! Subset Sum reduction equivalence. Each failed check carries a
//! serialized replay instance.

use crate::agents::{simulate, AgentKind, ALL_KINDS};
use crate::analysis::{
    fan_cost_closed_form, gap_report, singly_gap_bound, subset_sum_oracle,
};
use crate::doubly::{brute_force, dp_integer, min_reward, recursive_states};
use crate::format::serialize_graph;
use crate::generators::{
    deadline_fixture, doubly_vs_soph_fixture, fan_instance, gadget_length_bound,
    gadget_sequence, gym_fixture, random_instance, reduction_instance,
    sing_abandons_fixture, sing_better_fixture, singly_exponential_alpha,
    singly_exponential_instance, SubsetSumInstance,
};
use crate::graph::{AgentParams, Instance};
use crate::rational::{rat, Rational};
use crate::trace::{count_switches, Outcome};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Fixtures,
    Equivalence,
    Bounds,
    Reduction,
    All,
}

impl Suite {
    pub fn from_name(s: &str) -> Option<Suite> {
        match s {
            "fixtures" => Some(Suite::Fixtures),
            "equivalence" => Some(Suite::Equivalence),
            "bounds" => Some(Suite::Bounds),
            "reduction" => Some(Suite::Reduction),
            "all" => Some(Suite::All),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub details: String,
    /// Serialized instance reproducing the failure, when one exists.
    pub replay: Option<String>,
}

pub fn run_suite(suite: Suite, trials: usize, seed: u64) -> Vec<Check> {
    match suite {
        Suite::Fixtures => fixtures_suite(),
        Suite::Equivalence => equivalence_suite(trials, seed),
        Suite::Bounds => bounds_suite(trials, seed),
        Suite::Reduction => reduction_suite(trials, seed),
        Suite::All => {
            let mut checks = fixtures_suite();
            checks.extend(equivalence_suite(trials, seed));
            checks.extend(bounds_suite(trials, seed));
            checks.extend(reduction_suite(trials, seed));
            checks
        }
    }
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn new() -> Recorder {
        Recorder { checks: Vec::new() }
    }

    fn check(&mut self, name: &str, passed: bool, details: String, replay: Option<&Instance>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            details,
            replay: if passed {
                None
            } else {
                replay.map(serialize_graph)
            },
        });
    }

    fn expect_outcome(
        &mut self,
        name: &str,
        instance: &Instance,
        kind: AgentKind,
        outcome_at: Option<&str>, // None = reached, Some("") = never started
        total_cost: Option<Rational>,
        payoff: Option<Rational>,
    ) {
        let trace = simulate(instance, kind);
        let outcome_ok = match outcome_at {
            None => trace.outcome == Outcome::Reached,
            Some("") => trace.outcome == Outcome::NeverStarted,
            Some(node) => {
                trace.outcome
                    == Outcome::AbandonedAt(instance.graph.node_by_name(node).expect("known node"))
            }
        };
        let cost_ok = total_cost.as_ref().is_none_or(|c| trace.total_cost == *c);
        let payoff_ok = payoff.as_ref().is_none_or(|p| trace.payoff == *p);
        self.check(
            name,
            outcome_ok && cost_ok && payoff_ok,
            format!(
                "{kind}: outcome {:?}, cost {}, payoff {}",
                trace.outcome, trace.total_cost, trace.payoff
            ),
            Some(instance),
        );
    }
}

fn fixtures_suite() -> Vec<Check> {
    let mut r = Recorder::new();

    let gym = gym_fixture();
    r.expect_outcome("gym optimal", &gym, AgentKind::Optimal, None, Some(rat(13, 1)), Some(rat(6, 1)));
    r.expect_outcome("gym doubly-naive", &gym, AgentKind::DoublyNaive, Some("v"), Some(rat(1, 1)), Some(rat(-1, 1)));
    r.expect_outcome("gym naive-present-biased", &gym, AgentKind::NaivePresentBiased, Some("v"), Some(rat(1, 1)), Some(rat(-1, 1)));
    r.expect_outcome("gym doubly-sophisticated", &gym, AgentKind::DoublySophisticated, None, Some(rat(14, 1)), Some(rat(5, 1)));
    r.expect_outcome("gym sophisticated", &gym, AgentKind::SophisticatedPresentBiased, Some(""), Some(rat(0, 1)), Some(rat(0, 1)));
    r.expect_outcome("gym singly-sophisticated", &gym, AgentKind::SinglySophisticated, Some(""), Some(rat(0, 1)), Some(rat(0, 1)));
    {
        let ds = simulate(&gym, AgentKind::DoublySophisticated);
        let names: Vec<&str> = ds.visited().iter().map(|&n| gym.graph.name(n)).collect();
        r.check("gym doubly-sophisticated path", names == ["s", "w", "t"], format!("path {names:?}"), Some(&gym));
    }

    let deadline = deadline_fixture();
    r.expect_outcome("deadline sophisticated", &deadline, AgentKind::SophisticatedPresentBiased, None, Some(rat(12, 1)), Some(rat(11, 2)));
    r.expect_outcome("deadline doubly-naive", &deadline, AgentKind::DoublyNaive, None, Some(rat(14, 1)), None);
    r.expect_outcome("deadline naive-present-biased", &deadline, AgentKind::NaivePresentBiased, Some("v31"), Some(rat(4, 1)), Some(rat(-4, 1)));
    r.expect_outcome("deadline doubly-sophisticated", &deadline, AgentKind::DoublySophisticated, Some(""), Some(rat(0, 1)), Some(rat(0, 1)));
    r.expect_outcome("deadline singly-sophisticated", &deadline, AgentKind::SinglySophisticated, None, Some(rat(14, 1)), None);
    {
        let trace = simulate(&deadline, AgentKind::SinglySophisticated);
        let switches = count_switches(&trace, &deadline.graph);
        r.check(
            "deadline singly-sophisticated switches once",
            switches.count() == 1,
            format!("{} switches", switches.count()),
            Some(&deadline),
        );
    }

    let sing = sing_abandons_fixture();
    r.expect_outcome("sing-abandons singly-sophisticated", &sing, AgentKind::SinglySophisticated, Some("u"), Some(rat(2, 1)), Some(rat(-2, 1)));
    r.expect_outcome("sing-abandons sophisticated", &sing, AgentKind::SophisticatedPresentBiased, None, Some(rat(9, 1)), Some(rat(2, 1)));

    // tightness fixtures at (b, lambda, eps) = (2, 1/2, 1/100)
    let (b, l, e) = (rat(2, 1), rat(1, 2), rat(1, 100));
    let better = sing_better_fixture(&b, &l, &e).unwrap();
    {
        let ds = simulate(&better, AgentKind::DoublySophisticated);
        let names: Vec<&str> = ds.visited().iter().map(|&n| better.graph.name(n)).collect();
        r.check(
            "sing-better doubly-sophisticated takes the upper path",
            names == ["s", "v1", "t"] && ds.total_cost == &b + &e,
            format!("path {names:?}, cost {}", ds.total_cost),
            Some(&better),
        );
        let soph = simulate(&better, AgentKind::SophisticatedPresentBiased);
        let names: Vec<&str> = soph.visited().iter().map(|&n| better.graph.name(n)).collect();
        let lower_cost = rat(1, 1) + (&b + rat(1, 1)) * &e;
        r.check(
            "sing-better sophisticated takes the lower path",
            names == ["s", "v2", "t"] && soph.total_cost == lower_cost,
            format!("path {names:?}, cost {}", soph.total_cost),
            Some(&better),
        );
        let singly = simulate(&better, AgentKind::SinglySophisticated);
        let names: Vec<&str> = singly.visited().iter().map(|&n| better.graph.name(n)).collect();
        r.check(
            "sing-better singly-sophisticated follows the sophisticated choice",
            names == ["s", "v2", "t"],
            format!("path {names:?}"),
            Some(&better),
        );
    }
    let dvs = doubly_vs_soph_fixture(&b, &l, &e).unwrap();
    {
        let expected_payoff = &b * &b - &l * &e - &b - &e;
        r.expect_outcome("doubly-vs-soph sophisticated never starts", &dvs, AgentKind::SophisticatedPresentBiased, Some(""), Some(rat(0, 1)), Some(rat(0, 1)));
        r.expect_outcome("doubly-vs-soph doubly-sophisticated reaches", &dvs, AgentKind::DoublySophisticated, None, Some(&b + &e), Some(expected_payoff.clone()));
        r.expect_outcome("doubly-vs-soph optimal", &dvs, AgentKind::Optimal, None, Some(&b + &e), Some(expected_payoff));
    }
    r.checks
}

/// Instances for the planner-equivalence sweep: small graphs, small
/// integer costs.
fn sweep_instance(seed: u64) -> Instance {
    let n = 4 + (seed % 7) as usize; // 4..=10 nodes
    random_instance(n, 12, &rat(1, 2), seed)
}

fn equivalence_suite(trials: usize, seed: u64) -> Vec<Check> {
    let mut r = Recorder::new();

    // dp_integer == recursive_states == brute_force
    let mut disagreements = 0usize;
    let mut first_failure: Option<Instance> = None;
    for i in 0..trials {
        let inst = sweep_instance(seed.wrapping_add(i as u64));
        let dp = dp_integer(&inst).expect("sweep instances have integer costs");
        let rec = recursive_states(&inst);
        let oracle = brute_force(&inst);
        let agree = dp.started == rec.started
            && rec.started == oracle.started
            && dp.trace.visited() == rec.trace.visited()
            && rec.trace.visited() == oracle.trace.visited()
            && dp.trace.total_cost == rec.trace.total_cost
            && rec.trace.total_cost == oracle.trace.total_cost;
        let policies_agree = rec
            .policy
            .iter()
            .all(|(node, sunk, entry)| dp.policy.get(node, sunk) == Some(entry));
        if !(agree && policies_agree) {
            disagreements += 1;
            first_failure.get_or_insert(inst);
        }
    }
    r.check(
        "planner equivalence sweep",
        disagreements == 0,
        format!("{disagreements} disagreements in {trials} instances"),
        first_failure.as_ref(),
    );

    // lambda = 0 collapses
    let collapse_trials = trials.min(500);
    let mut failures = 0usize;
    let mut replay = None;
    for i in 0..collapse_trials {
        let raw = sweep_instance(seed.wrapping_add(0x10_0000 + i as u64));
        let inst = raw.with_params(
            AgentParams::new(raw.params.bias().clone(), Rational::zero()).unwrap(),
        );
        let naive_eq = simulate(&inst, AgentKind::DoublyNaive)
            == simulate(&inst, AgentKind::NaivePresentBiased);
        let singly_eq = simulate(&inst, AgentKind::SinglySophisticated)
            == simulate(&inst, AgentKind::SophisticatedPresentBiased);
        let soph = simulate(&inst, AgentKind::SophisticatedPresentBiased);
        let ds = simulate(&inst, AgentKind::DoublySophisticated);
        let ds_eq = ds.outcome == soph.outcome
            && ds.visited() == soph.visited()
            && ds.total_cost == soph.total_cost;
        if !(naive_eq && singly_eq && ds_eq) {
            failures += 1;
            replay.get_or_insert(inst);
        }
    }
    r.check(
        "lambda = 0 collapse",
        failures == 0,
        format!("{failures} failures in {collapse_trials} instances"),
        replay.as_ref(),
    );

    // b = 1 collapses to optimal outcomes and costs
    let mut failures = 0usize;
    let mut replay = None;
    for i in 0..collapse_trials {
        let raw = sweep_instance(seed.wrapping_add(0x20_0000 + i as u64));
        let inst = raw.with_params(
            AgentParams::new(Rational::one(), raw.params.sunk_factor().clone()).unwrap(),
        );
        let optimal = simulate(&inst, AgentKind::Optimal);
        for kind in ALL_KINDS {
            let trace = simulate(&inst, kind);
            if trace.outcome != optimal.outcome || trace.total_cost != optimal.total_cost {
                failures += 1;
                replay.get_or_insert(inst.clone());
            }
        }
    }
    r.check(
        "b = 1 collapse",
        failures == 0,
        format!("{failures} failures in {collapse_trials} instances"),
        replay.as_ref(),
    );

    // naive-present-soph-sunk is indistinguishable from doubly-naive
    let mut failures = 0usize;
    let mut replay = None;
    let fixtures = [gym_fixture(), deadline_fixture(), sing_abandons_fixture()];
    for inst in fixtures.iter() {
        if simulate(inst, AgentKind::NaivePresentSophSunk) != simulate(inst, AgentKind::DoublyNaive) {
            failures += 1;
            replay.get_or_insert(inst.clone());
        }
    }
    for i in 0..collapse_trials {
        let inst = sweep_instance(seed.wrapping_add(0x30_0000 + i as u64));
        if simulate(&inst, AgentKind::NaivePresentSophSunk) != simulate(&inst, AgentKind::DoublyNaive)
        {
            failures += 1;
            replay.get_or_insert(inst);
        }
    }
    r.check(
        "naive-present-soph-sunk equals doubly-naive",
        failures == 0,
        format!("{failures} failures"),
        replay.as_ref(),
    );

    // a sophisticated present-biased agent never abandons mid-path
    let mut failures = 0usize;
    let mut replay = None;
    for i in 0..collapse_trials {
        let inst = sweep_instance(seed.wrapping_add(0x40_0000 + i as u64));
        let trace = simulate(&inst, AgentKind::SophisticatedPresentBiased);
        let ds = simulate(&inst, AgentKind::DoublySophisticated);
        if matches!(trace.outcome, Outcome::AbandonedAt(_))
            || matches!(ds.outcome, Outcome::AbandonedAt(_))
        {
            failures += 1;
            replay.get_or_insert(inst);
        }
    }
    r.check(
        "sophisticated kinds never abandon mid-path",
        failures == 0,
        format!("{failures} failures"),
        replay.as_ref(),
    );

    r.checks
}

fn bounds_suite(trials: usize, seed: u64) -> Vec<Check> {
    let mut r = Recorder::new();

    // the three additive gap bounds, on fixtures and the random sweep
    let mut failures = 0usize;
    let mut replay = None;
    let fixtures = [
        gym_fixture(),
        deadline_fixture(),
        sing_abandons_fixture(),
        sing_better_fixture(&rat(2, 1), &rat(1, 2), &rat(1, 100)).unwrap(),
        doubly_vs_soph_fixture(&rat(2, 1), &rat(1, 2), &rat(1, 100)).unwrap(),
    ];
    for inst in fixtures.iter() {
        if !gap_report(inst).all_hold() {
            failures += 1;
            replay.get_or_insert(inst.clone());
        }
    }
    for i in 0..trials {
        let inst = sweep_instance(seed.wrapping_add(0x50_0000 + i as u64));
        if !gap_report(&inst).all_hold() {
            failures += 1;
            replay.get_or_insert(inst);
        }
    }
    r.check(
        "additive payoff-gap bounds",
        failures == 0,
        format!("{failures} violations across fixtures + {trials} random instances"),
        replay.as_ref(),
    );

    // min_reward <= b * C_o, and the agent starts at R = b * C_o with cost
    // within b * C_o
    let reward_trials = trials.min(300);
    let mut failures = 0usize;
    let mut replay = None;
    for i in 0..reward_trials {
        let inst = sweep_instance(seed.wrapping_add(0x60_0000 + i as u64));
        let bias = inst.params.bias();
        let lambda = inst.params.sunk_factor();
        let cap = bias * &inst.graph.optimal_cost();
        let minimal = min_reward(&inst.graph, bias, lambda, 100);
        let ok_min = minimal <= cap
            && recursive_states(&inst.with_reward(minimal.clone())).started;
        let generous = recursive_states(&inst.with_reward(cap.clone()));
        let ok_generous = generous.started && generous.trace.total_cost <= cap;
        if !(ok_min && ok_generous) {
            failures += 1;
            replay.get_or_insert(inst);
        }
    }
    r.check(
        "minimum reward within b * C_o; generous reward always starts",
        failures == 0,
        format!("{failures} violations in {reward_trials} instances"),
        replay.as_ref(),
    );

    // fan family: doubly-naive cost equals the closed form exactly and
    // outgrows the reward
    let fan_points = [
        (rat(2, 1), rat(1, 2), rat(1, 1)),
        (rat(3, 1), rat(1, 3), rat(2, 1)),
        (rat(5, 2), rat(3, 4), rat(1, 2)),
        (rat(7, 4), rat(2, 5), rat(3, 1)),
    ];
    let mut failures = 0usize;
    let mut replay = None;
    for (b, l, y0) in fan_points.iter() {
        for n in 1..=20usize {
            let inst = fan_instance(n, b, l, y0).unwrap();
            let trace = simulate(&inst, AgentKind::DoublyNaive);
            let expected = fan_cost_closed_form(n, b, l, y0);
            if !trace.reached() || trace.total_cost != expected {
                failures += 1;
                replay.get_or_insert(inst);
            }
        }
    }
    let blowup = {
        let inst = fan_instance(20, &rat(2, 1), &rat(1, 2), &rat(1, 1)).unwrap();
        let trace = simulate(&inst, AgentKind::DoublyNaive);
        trace.total_cost > rat(10, 1) * &inst.reward
    };
    r.check(
        "fan cost matches the closed form and exceeds 10R by n = 20",
        failures == 0 && blowup,
        format!("{failures} closed-form mismatches; blowup = {blowup}"),
        replay.as_ref(),
    );

    // singly-sophisticated exponential family: exact accumulation, n
    // switches, abandonment at v_n
    let (b, l) = (rat(3, 1), rat(1, 2));
    let alpha = singly_exponential_alpha(&b, &l);
    let mut failures = 0usize;
    let mut replay = None;
    for n in 1..=12usize {
        let reward = rat(1, 1);
        let eps = &alpha * &l * &reward / (&b * &b) / rat(2, 1);
        let inst = singly_exponential_instance(n, &b, &l, &reward, &eps).unwrap();
        let trace = simulate(&inst, AgentKind::SinglySophisticated);
        let expected_cost = ((Rational::one() + &alpha * &l).pow(n as u32) - Rational::one())
            / l.clone()
            * &reward;
        let vn = inst.graph.node_by_name(&format!("v{n}")).unwrap();
        let switches = count_switches(&trace, &inst.graph);
        if trace.outcome != Outcome::AbandonedAt(vn)
            || trace.total_cost != expected_cost
            || switches.count() != n
        {
            failures += 1;
            replay.get_or_insert(inst);
        }
    }
    r.check(
        "singly-sophisticated family accumulates ((1+al)^n - 1)/l * R with n switches",
        failures == 0,
        format!("{failures} mismatches for n = 1..=12"),
        replay.as_ref(),
    );

    // segment-cost bounds on singly-sophisticated traces
    let mut failures = 0usize;
    let mut replay = None;
    let mut singly_instances: Vec<Instance> = (0..trials.min(500))
        .map(|i| sweep_instance(seed.wrapping_add(0x70_0000 + i as u64)))
        .collect();
    for n in 1..=8usize {
        let reward = rat(1, 1);
        let eps = &alpha * &l * &reward / (&b * &b) / rat(2, 1);
        singly_instances.push(singly_exponential_instance(n, &b, &l, &reward, &eps).unwrap());
    }
    for inst in singly_instances.iter() {
        let lambda = inst.params.sunk_factor();
        let trace = simulate(inst, AgentKind::SinglySophisticated);
        let switches = count_switches(&trace, &inst.graph);
        let k = switches.count();
        let one_plus = Rational::one() + lambda;
        for (i, segment) in switches.segment_costs.iter().enumerate() {
            if *segment > one_plus.pow(i as u32) * &inst.reward {
                failures += 1;
                replay.get_or_insert(inst.clone());
            }
        }
        if !lambda.is_zero() && k > 0 {
            let before_last: Rational = switches.segment_costs[..k].iter().sum();
            let bound =
                singly_gap_bound(k, lambda, &inst.reward).unwrap() - &inst.reward;
            if before_last > bound {
                failures += 1;
                replay.get_or_insert(inst.clone());
            }
            // abandoning traces keep the payoff gap within the same bound
            let optimal = simulate(inst, AgentKind::Optimal);
            let gap = &optimal.payoff - &trace.payoff;
            if matches!(trace.outcome, Outcome::AbandonedAt(_) | Outcome::NeverStarted)
                && gap > singly_gap_bound(k, lambda, &inst.reward).unwrap()
            {
                failures += 1;
                replay.get_or_insert(inst.clone());
            }
        }
    }
    r.check(
        "singly-sophisticated segment costs within (1+lambda)^i R and summed bound",
        failures == 0,
        format!("{failures} violations"),
        replay.as_ref(),
    );

    r.checks
}

/// The Subset Sum corpus: exhaustive over the small shapes, systematic
/// samples above that, and a batch of larger random instances.
pub fn reduction_corpus(random_per_size: usize, seed: u64) -> Vec<SubsetSumInstance> {
    let mut corpus = Vec::new();
    for x in 1..=15u64 {
        for t in 1..=40u64 {
            corpus.push(SubsetSumInstance::new(vec![x], t).unwrap());
        }
    }
    for a in 1..=15u64 {
        for b in a..=15u64 {
            for t in [1, 2, a, b, a + b, a + b - 1, a + b + 1, 40] {
                if (1..=40).contains(&t) {
                    corpus.push(SubsetSumInstance::new(vec![a, b], t).unwrap());
                }
            }
        }
    }
    for a in 1..=6u64 {
        for b in 1..=6u64 {
            for c in 1..=6u64 {
                for t in 1..=18u64 {
                    corpus.push(SubsetSumInstance::new(vec![a, b, c], t).unwrap());
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 4..=10usize {
        for _ in 0..random_per_size {
            let xs: Vec<u64> = (0..n).map(|_| rng.random_range(1..=15)).collect();
            let t = rng.random_range(1..=40);
            corpus.push(SubsetSumInstance::new(xs, t).unwrap());
        }
    }
    corpus
}

pub fn reduction_random_large(count: usize, seed: u64) -> Vec<SubsetSumInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xdead_beef);
    (0..count)
        .map(|_| {
            let xs: Vec<u64> = (0..12).map(|_| rng.random_range(1..=15)).collect();
            let t = rng.random_range(1..=40);
            SubsetSumInstance::new(xs, t).unwrap()
        })
        .collect()
}

/// started(reduction(ss)) must equal oracle-solvability, and when started
/// the sunk cost at `v_{n+1}` must equal the target exactly.
pub fn reduction_equivalence_check(ss: &SubsetSumInstance, lambda: &Rational) -> Result<(), String> {
    let (inst, _) = reduction_instance(ss, lambda, None).map_err(|e| e.to_string())?;
    let result = recursive_states(&inst);
    let solvable = subset_sum_oracle(ss).is_some();
    if result.started != solvable {
        return Err(format!(
            "started = {} but oracle solvable = {} for xs={:?} T={}",
            result.started,
            solvable,
            ss.xs(),
            ss.target()
        ));
    }
    if result.started {
        let last_v = format!("v{}", ss.xs().len() + 1);
        let node = inst.graph.node_by_name(&last_v).unwrap();
        let step = result
            .trace
            .steps
            .iter()
            .find(|s| s.node == node)
            .ok_or_else(|| format!("trace misses {last_v}"))?;
        let t = Rational::from_int(ss.target() as i64);
        if step.sunk_cost != t {
            return Err(format!(
                "sunk cost at {last_v} is {}, expected {}",
                step.sunk_cost, t
            ));
        }
    }
    Ok(())
}

fn reduction_suite(trials: usize, seed: u64) -> Vec<Check> {
    let mut r = Recorder::new();

    let worked = gadget_sequence(4, &rat(5, 2)).unwrap();
    r.check(
        "gadget worked example x=4, b=5/2",
        worked == vec![rat(1, 5), rat(1, 5), rat(2, 5), rat(4, 5), rat(8, 5), rat(4, 5)],
        format!("{worked:?}"),
        None,
    );

    let mut bound_ok = true;
    for x in 1..=2000u64 {
        if gadget_sequence(x, &rat(5, 2)).unwrap().len() > gadget_length_bound(x) {
            bound_ok = false;
        }
    }
    r.check(
        "gadget lengths within ceil(log2(6x+1)) + 2",
        bound_ok,
        "x = 1..=2000 at b = 5/2".to_string(),
        None,
    );

    let lambda = rat(3, 4);
    let per_size = (trials / 50).clamp(5, 30);
    let corpus = reduction_corpus(per_size, seed);
    let mut failures = 0usize;
    let mut detail = String::new();
    for ss in corpus.iter() {
        if let Err(msg) = reduction_equivalence_check(ss, &lambda) {
            failures += 1;
            if detail.is_empty() {
                detail = msg;
            }
        }
    }
    r.check(
        "reduction equivalence on the systematic corpus",
        failures == 0,
        if failures == 0 {
            format!("{} instances agree with the oracle", corpus.len())
        } else {
            format!("{failures} disagreements; first: {detail}")
        },
        None,
    );

    let large = reduction_random_large(trials.min(200), seed);
    let mut failures = 0usize;
    let mut detail = String::new();
    for ss in large.iter() {
        if let Err(msg) = reduction_equivalence_check(ss, &lambda) {
            failures += 1;
            if detail.is_empty() {
                detail = msg;
            }
        }
    }
    r.check(
        "reduction equivalence at n = 12",
        failures == 0,
        if failures == 0 {
            format!("{} instances agree with the oracle", large.len())
        } else {
            format!("{failures} disagreements; first: {detail}")
        },
        None,
    );

    r.checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_suite_passes() {
        let checks = fixtures_suite();
        for check in &checks {
            assert!(check.passed, "{}: {}", check.name, check.details);
        }
    }

    #[test]
    fn small_sweeps_pass() {
        for check in run_suite(Suite::Equivalence, 40, 1) {
            assert!(check.passed, "{}: {}", check.name, check.details);
        }
    }

    #[test]
    fn failed_checks_carry_replayable_instances() {
        let mut r = Recorder::new();
        let inst = gym_fixture();
        r.check("deliberate failure", false, "forced".into(), Some(&inst));
        let check = &r.checks[0];
        assert!(!check.passed);
        let parsed = crate::format::parse_graph(check.replay.as_ref().unwrap()).unwrap();
        assert_eq!(parsed, inst);
        assert_eq!(
            simulate(&parsed, AgentKind::DoublyNaive),
            simulate(&inst, AgentKind::DoublyNaive)
        );
    }

    #[test]
    fn reduction_spot_checks() {
        let lambda = rat(3, 4);
        let solvable = SubsetSumInstance::new(vec![1, 2, 3], 3).unwrap();
        assert_eq!(reduction_equivalence_check(&solvable, &lambda), Ok(()));
        let unsolvable = SubsetSumInstance::new(vec![2, 4], 3).unwrap();
        assert_eq!(reduction_equivalence_check(&unsolvable, &lambda), Ok(()));
        let (inst, _) = reduction_instance(&solvable, &lambda, None).unwrap();
        assert!(recursive_states(&inst).started);
        let (inst, _) = reduction_instance(&unsolvable, &lambda, None).unwrap();
        assert!(!recursive_states(&inst).started);
    }
}
