//! The task-graph file format.
//!
//! UTF-8, line-oriented, `#` starts a comment, blank lines are ignored:
//!
//! ```text
//! # the health-club example
//! label gym
//! reward 19
//! bias 2
//! sunk 1/2
//! node s
//! node v
//! node w
//! node t
//! source s
//! target t
//! edge s v 1
//! edge v t 12
//! edge s w 4
//! edge w t 10
//! ```
//!
//! Numbers are integers, `p/q` fractions, or finite decimals, converted
//! exactly. `bias` and `sunk` are optional defaults that the CLI can
//! override; `label` is optional. The order of `node` and `edge` lines is
//! preserved and defines the canonical tie-break order.

use crate::graph::{AgentParams, GraphIssue, Instance, ParamError, TaskGraph};
use crate::rational::Rational;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: bad number: {source}")]
    Number {
        line: usize,
        source: crate::rational::NumberParseError,
    },
    #[error("missing reward")]
    MissingReward,
    #[error("missing source")]
    MissingSource,
    #[error("missing target")]
    MissingTarget,
    #[error("invalid graph: {0:?}")]
    Graph(Vec<GraphIssue>),
    #[error("invalid parameters: {0}")]
    Params(#[from] ParamError),
}

/// An `Instance` plus which optional fields the file supplied, so callers
/// can tell file-level defaults apart from fallbacks.
#[derive(Debug, Clone)]
pub struct ParsedInstance {
    pub instance: Instance,
    pub bias_given: bool,
    pub sunk_given: bool,
}

/// Parse the file format into an `Instance`. Absent `bias`/`sunk` lines
/// default to the unbiased agent (b = 1, lambda = 0).
pub fn parse_graph(text: &str) -> Result<Instance, ParseError> {
    parse_graph_with_meta(text).map(|p| p.instance)
}

pub fn parse_graph_with_meta(text: &str) -> Result<ParsedInstance, ParseError> {
    let mut nodes: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String, Rational)> = Vec::new();
    let mut reward: Option<Rational> = None;
    let mut bias: Option<Rational> = None;
    let mut sunk: Option<Rational> = None;
    let mut source: Option<String> = None;
    let mut target: Option<String> = None;
    let mut label = String::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = match raw.split_once('#') {
            Some((before, _)) => before,
            None => raw,
        };
        let mut parts = content.split_whitespace();
        let Some(keyword) = parts.next() else {
            continue;
        };
        let syntax = |message: String| ParseError::Syntax { line, message };
        let number = |tok: &str| -> Result<Rational, ParseError> {
            tok.parse()
                .map_err(|source| ParseError::Number { line, source })
        };
        let ident = |tok: Option<&str>, what: &str| -> Result<String, ParseError> {
            let tok = tok.ok_or_else(|| syntax(format!("expected {what}")))?;
            if tok.contains(',') {
                return Err(syntax(format!("identifier `{tok}` may not contain a comma")));
            }
            Ok(tok.to_string())
        };
        match keyword {
            "label" => {
                label = parts.collect::<Vec<_>>().join(" ");
                continue;
            }
            "reward" => {
                let tok = parts.next().ok_or_else(|| syntax("expected a number after `reward`".into()))?;
                reward = Some(number(tok)?);
            }
            "bias" => {
                let tok = parts.next().ok_or_else(|| syntax("expected a number after `bias`".into()))?;
                bias = Some(number(tok)?);
            }
            "sunk" => {
                let tok = parts.next().ok_or_else(|| syntax("expected a number after `sunk`".into()))?;
                sunk = Some(number(tok)?);
            }
            "node" => nodes.push(ident(parts.next(), "a node id")?),
            "source" => source = Some(ident(parts.next(), "a node id")?),
            "target" => target = Some(ident(parts.next(), "a node id")?),
            "edge" => {
                let tail = ident(parts.next(), "an edge tail")?;
                let head = ident(parts.next(), "an edge head")?;
                let tok = parts
                    .next()
                    .ok_or_else(|| syntax("expected an edge cost".into()))?;
                edges.push((tail, head, number(tok)?));
            }
            other => {
                return Err(syntax(format!("unknown directive `{other}`")));
            }
        }
        if let Some(extra) = parts.next() {
            return Err(syntax(format!("unexpected trailing token `{extra}`")));
        }
    }

    let reward = reward.ok_or(ParseError::MissingReward)?;
    let source = source.ok_or(ParseError::MissingSource)?;
    let target = target.ok_or(ParseError::MissingTarget)?;
    let graph =
        TaskGraph::new(nodes, edges, &source, &target).map_err(ParseError::Graph)?;
    let bias_given = bias.is_some();
    let sunk_given = sunk.is_some();
    let params = AgentParams::new(
        bias.unwrap_or_else(Rational::one),
        sunk.unwrap_or_else(Rational::zero),
    )?;
    let instance = Instance::new(graph, reward, params, label)?;
    Ok(ParsedInstance {
        instance,
        bias_given,
        sunk_given,
    })
}

/// Serialize an instance to the file format. Rationals are emitted as
/// `p/q` (integers without a denominator), never as decimals, so
/// `parse_graph(serialize_graph(x))` reproduces `x` exactly.
pub fn serialize_graph(instance: &Instance) -> String {
    let mut out = String::new();
    if !instance.label.is_empty() {
        writeln!(out, "label {}", instance.label).unwrap();
    }
    writeln!(out, "reward {}", instance.reward).unwrap();
    writeln!(out, "bias {}", instance.params.bias()).unwrap();
    writeln!(out, "sunk {}", instance.params.sunk_factor()).unwrap();
    let g = &instance.graph;
    for n in g.nodes() {
        writeln!(out, "node {}", g.name(n)).unwrap();
    }
    writeln!(out, "source {}", g.name(g.source())).unwrap();
    writeln!(out, "target {}", g.name(g.target())).unwrap();
    for e in g.edges() {
        writeln!(out, "edge {} {} {}", g.name(e.tail), g.name(e.head), e.cost).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    const GYM: &str = "\
# the health-club example
label gym
reward 19
bias 2
sunk 1/2
node s
node v
node w
node t
source s
target t
edge s v 1
edge v t 12
edge s w 4
edge w t 10
";

    #[test]
    fn parses_the_gym_file() {
        let parsed = parse_graph_with_meta(GYM).unwrap();
        let inst = &parsed.instance;
        assert_eq!(inst.label, "gym");
        assert_eq!(inst.reward, rat(19, 1));
        assert_eq!(inst.params.bias(), &rat(2, 1));
        assert_eq!(inst.params.sunk_factor(), &rat(1, 2));
        assert!(parsed.bias_given && parsed.sunk_given);
        assert_eq!(inst.graph.node_count(), 4);
        assert_eq!(inst.graph.edges().len(), 4);
        assert_eq!(inst.graph.optimal_cost(), rat(13, 1));
        assert!(inst.graph.validate().is_ok());
    }

    #[test]
    fn decimals_convert_exactly() {
        let text = "reward 17.5\nnode s\nnode t\nsource s\ntarget t\nedge s t 0.25\n";
        let inst = parse_graph(text).unwrap();
        assert_eq!(inst.reward, rat(35, 2));
        assert_eq!(inst.graph.edges()[0].cost, rat(1, 4));
    }

    #[test]
    fn minimal_degenerate_instance() {
        let text = "reward 0\nnode s\nnode t\nsource s\ntarget t\nedge s t 0\n";
        let inst = parse_graph(text).unwrap();
        assert_eq!(inst.reward, rat(0, 1));
        assert_eq!(inst.graph.optimal_cost(), rat(0, 1));
    }

    #[test]
    fn negative_cost_is_an_error() {
        let text = "reward 1\nnode s\nnode t\nsource s\ntarget t\nedge s t -1\n";
        let err = parse_graph(text).unwrap_err();
        match err {
            ParseError::Graph(issues) => {
                assert!(matches!(issues[0], GraphIssue::NegativeCost { .. }))
            }
            other => panic!("expected graph error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let text = "reward 1\nnode s\nwhat is this\n";
        match parse_graph(text).unwrap_err() {
            ParseError::Syntax { line, .. } => assert_eq!(line, 3),
            other => panic!("expected syntax error, got {other:?}"),
        }
        let text = "reward abc\n";
        match parse_graph(text).unwrap_err() {
            ParseError::Number { line, .. } => assert_eq!(line, 1),
            other => panic!("expected number error, got {other:?}"),
        }
    }

    #[test]
    fn missing_fields_are_reported() {
        assert!(matches!(
            parse_graph("node s\nsource s\ntarget s\n").unwrap_err(),
            ParseError::MissingReward
        ));
        assert!(matches!(
            parse_graph("reward 1\nnode s\ntarget s\n").unwrap_err(),
            ParseError::MissingSource
        ));
        assert!(matches!(
            parse_graph("reward 1\nnode s\nsource s\n").unwrap_err(),
            ParseError::MissingTarget
        ));
    }

    #[test]
    fn duplicate_node_is_an_error() {
        let text = "reward 1\nnode s\nnode s\nnode t\nsource s\ntarget t\nedge s t 1\n";
        match parse_graph(text).unwrap_err() {
            ParseError::Graph(issues) => {
                assert!(issues.contains(&GraphIssue::DuplicateNode("s".into())))
            }
            other => panic!("expected graph error, got {other:?}"),
        }
    }

    #[test]
    fn round_trips_exactly() {
        let parsed = parse_graph(GYM).unwrap();
        let text = serialize_graph(&parsed);
        let again = parse_graph(&text).unwrap();
        assert_eq!(parsed, again);
    }

    #[test]
    fn thirds_stay_fractions() {
        let text = "reward 1\nnode s\nnode t\nsource s\ntarget t\nedge s t 1/3\n";
        let inst = parse_graph(text).unwrap();
        let out = serialize_graph(&inst);
        assert!(out.contains("edge s t 1/3"));
        assert_eq!(parse_graph(&out).unwrap(), inst);
    }
}
