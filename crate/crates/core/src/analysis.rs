//! Closed forms, payoff-gap bounds, and the Subset Sum oracle used to
//! cross-check the reduction.

use crate::agents::{simulate, AgentKind};
use crate::graph::Instance;
use crate::rational::Rational;
use std::fmt::Write as _;

/// One `observed <= bound` inequality, with the verdict recorded.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundCheck {
    pub name: &'static str,
    pub observed: Rational,
    pub bound: Rational,
    pub holds: bool,
}

impl BoundCheck {
    fn new(name: &'static str, observed: Rational, bound: Rational) -> BoundCheck {
        let holds = observed <= bound;
        BoundCheck {
            name,
            observed,
            bound,
            holds,
        }
    }
}

/// Payoffs of every agent kind on one instance, with the additive-gap
/// bounds evaluated exactly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GapReport {
    pub label: String,
    pub payoffs: Vec<(AgentKind, Rational)>,
    pub optimal_cost: Rational,
    pub checks: Vec<BoundCheck>,
}

impl GapReport {
    pub fn payoff(&self, kind: AgentKind) -> &Rational {
        &self
            .payoffs
            .iter()
            .find(|(k, _)| *k == kind)
            .expect("all kinds simulated")
            .1
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    /// Aligned text table.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "instance: {}", self.label).unwrap();
        writeln!(out, "optimal cost C_o = {}", self.optimal_cost).unwrap();
        for (kind, payoff) in &self.payoffs {
            writeln!(out, "  payoff {:<30} {}", kind.name(), payoff).unwrap();
        }
        for check in &self.checks {
            writeln!(
                out,
                "  bound  {:<30} {} <= {}  [{}]",
                check.name,
                check.observed,
                check.bound,
                if check.holds { "ok" } else { "VIOLATED" }
            )
            .unwrap();
        }
        out
    }

    /// Machine-readable records, one line per entry.
    pub fn to_record(&self) -> String {
        let mut out = String::new();
        writeln!(out, "label {}", self.label).unwrap();
        writeln!(out, "optimal-cost {}", self.optimal_cost).unwrap();
        for (kind, payoff) in &self.payoffs {
            writeln!(out, "payoff {} {}", kind.name(), payoff).unwrap();
        }
        for check in &self.checks {
            writeln!(
                out,
                "bound {} observed {} limit {} holds {}",
                check.name, check.observed, check.bound, check.holds
            )
            .unwrap();
        }
        out
    }
}

/// payoff(optimal) - payoff(doubly sophisticated) <= (b-1) * C_o.
pub fn gap_doubly_soph_vs_optimal(instance: &Instance) -> BoundCheck {
    let optimal = simulate(instance, AgentKind::Optimal).payoff;
    let doubly = simulate(instance, AgentKind::DoublySophisticated).payoff;
    let c_o = instance.graph.optimal_cost();
    BoundCheck::new(
        "optimal-minus-doubly-soph",
        optimal - doubly,
        (instance.params.bias() - Rational::one()) * c_o,
    )
}

/// |payoff(doubly soph) - payoff(soph present-biased)| <= (b-1) * C_o, and
/// payoff(singly soph) - payoff(doubly soph) <= (b-1) * C_o.
pub fn gap_soph_kinds(instance: &Instance) -> Vec<BoundCheck> {
    let doubly = simulate(instance, AgentKind::DoublySophisticated).payoff;
    let soph = simulate(instance, AgentKind::SophisticatedPresentBiased).payoff;
    let singly = simulate(instance, AgentKind::SinglySophisticated).payoff;
    let c_o = instance.graph.optimal_cost();
    let bound = (instance.params.bias() - Rational::one()) * c_o;
    vec![
        BoundCheck::new(
            "doubly-soph-vs-soph-abs",
            (&doubly - &soph).abs(),
            bound.clone(),
        ),
        BoundCheck::new("singly-minus-doubly-soph", singly - doubly, bound),
    ]
}

/// Full report: every agent kind's payoff plus all three gap bounds.
pub fn gap_report(instance: &Instance) -> GapReport {
    let payoffs: Vec<(AgentKind, Rational)> = crate::agents::ALL_KINDS
        .iter()
        .map(|&kind| (kind, simulate(instance, kind).payoff))
        .collect();
    let mut checks = vec![gap_doubly_soph_vs_optimal(instance)];
    checks.extend(gap_soph_kinds(instance));
    GapReport {
        label: instance.label.clone(),
        payoffs,
        optimal_cost: instance.graph.optimal_cost(),
        checks,
    }
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum AnalysisError {
    #[error("the bound is stated for lambda > 0 only")]
    LambdaZero,
}

/// `((1+lambda)^k - 1)/lambda * R + R`: the additive payoff gap bound
/// between an optimal and a singly sophisticated agent with `k` plan
/// switches. Rejects `lambda = 0` (the bound is stated for positive
/// lambda only).
pub fn singly_gap_bound(
    k: usize,
    lambda: &Rational,
    reward: &Rational,
) -> Result<Rational, AnalysisError> {
    if lambda.is_zero() {
        return Err(AnalysisError::LambdaZero);
    }
    let growth = (Rational::one() + lambda).pow(k as u32);
    Ok((growth - Rational::one()) / lambda.clone() * reward + reward)
}

/// Exact total cost a doubly naive agent incurs on `fan_instance(n, ..)`:
/// `(y0/lambda) * [(b+lambda) * (b(b+lambda)/(b^2+lambda))^n - b]`.
pub fn fan_cost_closed_form(
    n: usize,
    bias: &Rational,
    lambda: &Rational,
    y0: &Rational,
) -> Rational {
    assert!(!lambda.is_zero(), "closed form requires lambda > 0");
    let ratio = bias * (bias + lambda) / (bias * bias + lambda);
    (y0 / lambda) * ((bias + lambda) * ratio.pow(n as u32) - bias)
}

/// Exhaustive Subset Sum search. Returns the witness whose sorted index
/// list is lexicographically greatest -- the subset with the largest
/// minimum index, ties broken by the largest second-smallest index, and so
/// on. (Every `x` is positive, so no solution is a prefix of another and
/// the order is total on solutions.) A target of zero yields the empty
/// subset.
pub fn subset_sum_oracle(ss: &crate::generators::SubsetSumInstance) -> Option<Vec<usize>> {
    subset_sum_search(ss.xs(), ss.target())
}

pub fn subset_sum_search(xs: &[u64], target: u64) -> Option<Vec<usize>> {
    assert!(xs.len() <= 24, "oracle is exhaustive; keep n small");
    fn go(xs: &[u64], lo: usize, remaining: u64, acc: &mut Vec<usize>) -> bool {
        if remaining == 0 {
            return true;
        }
        // prefer the largest usable index as the next (smallest) element
        for i in (lo..xs.len()).rev() {
            if xs[i] <= remaining {
                acc.push(i);
                if go(xs, i + 1, remaining - xs[i], acc) {
                    return true;
                }
                acc.pop();
            }
        }
        false
    }
    let mut acc = Vec::new();
    if go(xs, 0, target, &mut acc) {
        Some(acc)
    } else {
        None
    }
}
