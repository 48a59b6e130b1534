//! Traversal traces: the per-step record of what an agent saw and decided,
//! plus the line-oriented record format and its parser.

use crate::graph::{EdgeId, NodeId, TaskGraph};
use crate::rational::Rational;
use std::fmt::Write as _;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Decision {
    Take(EdgeId),
    Abandon,
    Finish,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Outcome {
    Reached,
    AbandonedAt(NodeId),
    NeverStarted,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Step {
    pub node: NodeId,
    /// Exact sum of edge costs traversed before this step.
    pub sunk_cost: Rational,
    /// Reward as perceived at this step: R + lambda_eff * sunk_cost.
    pub perceived_reward: Rational,
    /// The path (starting at `node`, ending at the target) the agent plans
    /// to follow; empty when abandoning.
    pub planned_path: Vec<NodeId>,
    pub decision: Decision,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TraversalTrace {
    pub steps: Vec<Step>,
    pub outcome: Outcome,
    pub total_cost: Rational,
    pub payoff: Rational,
}

impl TraversalTrace {
    pub fn reached(&self) -> bool {
        self.outcome == Outcome::Reached
    }

    /// The nodes actually visited, in order.
    pub fn visited(&self) -> Vec<NodeId> {
        self.steps.iter().map(|s| s.node).collect()
    }
}

/// Payoff implied by a trace: R minus cost when the target was reached,
/// minus the cost when the traversal was abandoned mid-way, and zero when
/// the agent never started.
pub fn payoff_of(trace: &TraversalTrace, reward: &Rational) -> Rational {
    match trace.outcome {
        Outcome::Reached => reward - &trace.total_cost,
        Outcome::AbandonedAt(_) => -&trace.total_cost,
        Outcome::NeverStarted => Rational::zero(),
    }
}

/// Plan switches of a trace, with the cost accumulated in each segment
/// between consecutive switch points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SwitchReport {
    /// Nodes at which the planned path stopped being a continuation of the
    /// previous step's plan.
    pub switch_nodes: Vec<NodeId>,
    /// Segment costs c_0 .. c_k: cost from the start to the first switch,
    /// between consecutive switches, and after the last switch. Always one
    /// longer than `switch_nodes`.
    pub segment_costs: Vec<Rational>,
}

impl SwitchReport {
    pub fn count(&self) -> usize {
        self.switch_nodes.len()
    }
}

/// A step counts as a switch when its planned path is not the tail of the
/// previous step's planned path. Abandoning after planning to finish is a
/// switch by this rule, since the empty plan never matches a pending tail.
pub fn count_switches(trace: &TraversalTrace, graph: &TaskGraph) -> SwitchReport {
    let mut switch_nodes = Vec::new();
    let mut segment_costs = Vec::new();
    let mut segment = Rational::zero();
    for (k, step) in trace.steps.iter().enumerate() {
        if k > 0 {
            let prev = &trace.steps[k - 1].planned_path;
            let expected = if prev.is_empty() { &prev[..] } else { &prev[1..] };
            if step.planned_path != expected {
                switch_nodes.push(step.node);
                segment_costs.push(std::mem::replace(&mut segment, Rational::zero()));
            }
        }
        if let Decision::Take(e) = step.decision {
            segment += &graph.edge(e).cost;
        }
    }
    segment_costs.push(segment);
    SwitchReport {
        switch_nodes,
        segment_costs,
    }
}

// --- record serialization ---------------------------------------------------

/// The machine-readable record format. One line per field, one line per
/// step; rationals as `p/q`:
///
/// ```text
/// outcome reached | abandoned <node> | never-started
/// total-cost <p/q>
/// payoff <p/q>
/// step <i> node <id> sunk <p/q> perceived <p/q> decision take:<edge>|abandon|finish planned <id,id,...>|-
/// ```
pub fn to_record(trace: &TraversalTrace, graph: &TaskGraph) -> String {
    let mut out = String::new();
    match &trace.outcome {
        Outcome::Reached => writeln!(out, "outcome reached").unwrap(),
        Outcome::AbandonedAt(n) => writeln!(out, "outcome abandoned {}", graph.name(*n)).unwrap(),
        Outcome::NeverStarted => writeln!(out, "outcome never-started").unwrap(),
    }
    writeln!(out, "total-cost {}", trace.total_cost).unwrap();
    writeln!(out, "payoff {}", trace.payoff).unwrap();
    for (i, step) in trace.steps.iter().enumerate() {
        let decision = match step.decision {
            Decision::Take(e) => format!("take:{}", e.0),
            Decision::Abandon => "abandon".to_string(),
            Decision::Finish => "finish".to_string(),
        };
        let planned = if step.planned_path.is_empty() {
            "-".to_string()
        } else {
            step.planned_path
                .iter()
                .map(|&n| graph.name(n))
                .collect::<Vec<_>>()
                .join(",")
        };
        writeln!(
            out,
            "step {} node {} sunk {} perceived {} decision {} planned {}",
            i,
            graph.name(step.node),
            step.sunk_cost,
            step.perceived_reward,
            decision,
            planned
        )
        .unwrap();
    }
    out
}

/// Human-oriented rendering of a trace.
pub fn to_text(trace: &TraversalTrace, graph: &TaskGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{:>4}  {:<10} {:>10} {:>12}  {:<14} plan", "step", "node", "sunk", "perceived", "decision").unwrap();
    for (i, step) in trace.steps.iter().enumerate() {
        let decision = match step.decision {
            Decision::Take(e) => {
                let edge = graph.edge(e);
                format!("take {}->{}", graph.name(edge.tail), graph.name(edge.head))
            }
            Decision::Abandon => "abandon".to_string(),
            Decision::Finish => "finish".to_string(),
        };
        let plan = step
            .planned_path
            .iter()
            .map(|&n| graph.name(n))
            .collect::<Vec<_>>()
            .join(" -> ");
        writeln!(
            out,
            "{:>4}  {:<10} {:>10} {:>12}  {:<14} {}",
            i,
            graph.name(step.node),
            step.sunk_cost.to_string(),
            step.perceived_reward.to_string(),
            decision,
            if plan.is_empty() { "-".to_string() } else { plan }
        )
        .unwrap();
    }
    match &trace.outcome {
        Outcome::Reached => writeln!(out, "outcome: reached the target").unwrap(),
        Outcome::AbandonedAt(n) => writeln!(out, "outcome: abandoned at {}", graph.name(*n)).unwrap(),
        Outcome::NeverStarted => writeln!(out, "outcome: never started").unwrap(),
    }
    writeln!(out, "total cost: {}", trace.total_cost).unwrap();
    writeln!(out, "payoff: {}", trace.payoff).unwrap();
    out
}

// --- record parsing ----------------------------------------------------------

/// String-keyed mirror of `TraversalTrace`, the result of parsing a record.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TraceRecord {
    pub outcome: RecordOutcome,
    pub total_cost: Rational,
    pub payoff: Rational,
    pub steps: Vec<RecordStep>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RecordOutcome {
    Reached,
    Abandoned(String),
    NeverStarted,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RecordStep {
    pub node: String,
    pub sunk: Rational,
    pub perceived: Rational,
    pub decision: RecordDecision,
    pub planned: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RecordDecision {
    Take(usize),
    Abandon,
    Finish,
}

impl TraceRecord {
    pub fn of(trace: &TraversalTrace, graph: &TaskGraph) -> TraceRecord {
        TraceRecord {
            outcome: match &trace.outcome {
                Outcome::Reached => RecordOutcome::Reached,
                Outcome::AbandonedAt(n) => RecordOutcome::Abandoned(graph.name(*n).to_string()),
                Outcome::NeverStarted => RecordOutcome::NeverStarted,
            },
            total_cost: trace.total_cost.clone(),
            payoff: trace.payoff.clone(),
            steps: trace
                .steps
                .iter()
                .map(|s| RecordStep {
                    node: graph.name(s.node).to_string(),
                    sunk: s.sunk_cost.clone(),
                    perceived: s.perceived_reward.clone(),
                    decision: match s.decision {
                        Decision::Take(e) => RecordDecision::Take(e.0),
                        Decision::Abandon => RecordDecision::Abandon,
                        Decision::Finish => RecordDecision::Finish,
                    },
                    planned: s.planned_path.iter().map(|&n| graph.name(n).to_string()).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct RecordParseError {
    pub line: usize,
    pub message: String,
}

pub fn parse_record(text: &str) -> Result<TraceRecord, RecordParseError> {
    let mut outcome = None;
    let mut total_cost = None;
    let mut payoff = None;
    let mut steps = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let err = |message: String| RecordParseError { line, message };
        let mut parts = raw.split_whitespace();
        let Some(keyword) = parts.next() else { continue };
        match keyword {
            "outcome" => {
                outcome = Some(match parts.next() {
                    Some("reached") => RecordOutcome::Reached,
                    Some("never-started") => RecordOutcome::NeverStarted,
                    Some("abandoned") => RecordOutcome::Abandoned(
                        parts
                            .next()
                            .ok_or_else(|| err("abandoned outcome needs a node".into()))?
                            .to_string(),
                    ),
                    other => return Err(err(format!("bad outcome {other:?}"))),
                });
            }
            "total-cost" => {
                let tok = parts.next().ok_or_else(|| err("missing total-cost value".into()))?;
                total_cost = Some(tok.parse().map_err(|e| err(format!("{e}")))?);
            }
            "payoff" => {
                let tok = parts.next().ok_or_else(|| err("missing payoff value".into()))?;
                payoff = Some(tok.parse().map_err(|e| err(format!("{e}")))?);
            }
            "step" => {
                let index: usize = {
                    let tok = parts.next().ok_or_else(|| err("missing step index".into()))?;
                    tok.parse().map_err(|_| err(format!("bad step index `{tok}`")))?
                };
                let mut field = |name: &str| -> Result<String, RecordParseError> {
                    let key = parts
                        .next()
                        .ok_or_else(|| err(format!("missing `{name}` field")))?;
                    if key != name {
                        return Err(err(format!("expected `{name}`, found `{key}`")));
                    }
                    parts
                        .next()
                        .map(str::to_string)
                        .ok_or_else(|| err(format!("missing `{name}` value")))
                };
                if index != steps.len() {
                    return Err(err(format!("step index {index} out of order")));
                }
                let node = field("node")?;
                let sunk: Rational = field("sunk")?.parse().map_err(|e| err(format!("{e}")))?;
                let perceived: Rational =
                    field("perceived")?.parse().map_err(|e| err(format!("{e}")))?;
                let decision = match field("decision")?.as_str() {
                    "abandon" => RecordDecision::Abandon,
                    "finish" => RecordDecision::Finish,
                    d => match d.strip_prefix("take:") {
                        Some(e) => RecordDecision::Take(
                            e.parse().map_err(|_| err(format!("bad edge id `{e}`")))?,
                        ),
                        None => return Err(err(format!("bad decision `{d}`"))),
                    },
                };
                let planned_raw = field("planned")?;
                let planned = if planned_raw == "-" {
                    Vec::new()
                } else {
                    planned_raw.split(',').map(str::to_string).collect()
                };
                steps.push(RecordStep {
                    node,
                    sunk,
                    perceived,
                    decision,
                    planned,
                });
            }
            other => return Err(err(format!("unknown record line `{other}`"))),
        }
    }
    Ok(TraceRecord {
        outcome: outcome.ok_or(RecordParseError {
            line: 0,
            message: "missing outcome".into(),
        })?,
        total_cost: total_cost.ok_or(RecordParseError {
            line: 0,
            message: "missing total-cost".into(),
        })?,
        payoff: payoff.ok_or(RecordParseError {
            line: 0,
            message: "missing payoff".into(),
        })?,
        steps,
    })
}
