//! Instance generators: the narrative fixtures, the adversarial families
//! with exponential cost growth, the Subset Sum reduction, and seeded
//! random layered DAGs for property sweeps.
//!
//! Parametrized generators assert every inequality their constructions
//! rely on and fail loudly with the violated stage, rather than silently
//! emitting an instance that does not exhibit the intended behavior.

use crate::graph::{AgentParams, Instance, TaskGraph};
use crate::rational::{rat, Rational};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeneratorError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("stage {stage}: required inequality violated: {detail}")]
    StageInequality { stage: usize, detail: String },
}

fn precondition(ok: bool, msg: &str) -> Result<(), GeneratorError> {
    if ok {
        Ok(())
    } else {
        Err(GeneratorError::Precondition(msg.to_string()))
    }
}

fn stage_check(ok: bool, stage: usize, detail: &str) -> Result<(), GeneratorError> {
    if ok {
        Ok(())
    } else {
        Err(GeneratorError::StageInequality {
            stage,
            detail: detail.to_string(),
        })
    }
}

/// The health-club membership example: basic membership (1 up front, 12 to
/// attend) against deluxe (4 up front, 10 to attend), reward 19, with
/// default parameters b = 2, lambda = 1/2.
pub fn gym_fixture() -> Instance {
    let graph = crate::graph::build_graph(
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
    .expect("fixture is valid");
    Instance::new(
        graph,
        rat(19, 1),
        AgentParams::new(rat(2, 1), rat(1, 2)).unwrap(),
        "gym",
    )
    .unwrap()
}

/// Four-week class with three projects: grid nodes `v{week}{done}`, doing
/// 0/1/2 projects in a week costs 0/4/10, reward 17.5, defaults b = 2,
/// lambda = 3/4. The `v10 -> v20` deferral edge is omitted; see
/// `deadline_full_fixture` for the unpruned grid.
pub fn deadline_fixture() -> Instance {
    deadline(false)
}

/// The full defer-anywhere grid, kept for sensitivity checks.
pub fn deadline_full_fixture() -> Instance {
    deadline(true)
}

fn deadline(full: bool) -> Instance {
    let mut nodes = Vec::new();
    for week in 0..=4 {
        for done in 0..=3 {
            nodes.push(format!("v{week}{done}"));
        }
    }
    let costs = [rat(0, 1), rat(4, 1), rat(10, 1)];
    let mut edges = Vec::new();
    for week in 0..4u32 {
        for done in 0..=3u32 {
            for extra in 0..=2u32 {
                if done + extra > 3 {
                    continue;
                }
                if !full && (week, done, extra) == (1, 0, 0) {
                    continue;
                }
                edges.push((
                    format!("v{week}{done}"),
                    format!("v{}{}", week + 1, done + extra),
                    costs[extra as usize].clone(),
                ));
            }
        }
    }
    let graph = TaskGraph::new(nodes, edges, "v00", "v43").expect("fixture is valid");
    Instance::new(
        graph,
        rat(35, 2),
        AgentParams::new(rat(2, 1), rat(3, 4)).unwrap(),
        if full { "deadline-full" } else { "deadline" },
    )
    .unwrap()
}

/// Five-node graph on which a singly sophisticated agent starts out and
/// then abandons: b = 2, lambda = 1/2, R = 11.
pub fn sing_abandons_fixture() -> Instance {
    let graph = crate::graph::build_graph(
        &["s", "u", "v", "w", "t"],
        &[
            ("s", "u", rat(2, 1)),
            ("u", "v", rat(4, 1)),
            ("v", "w", rat(0, 1)),
            ("v", "t", rat(3, 1)),
            ("w", "t", rat(6, 1)),
        ],
        "s",
        "t",
    )
    .expect("fixture is valid");
    Instance::new(
        graph,
        rat(11, 1),
        AgentParams::new(rat(2, 1), rat(1, 2)).unwrap(),
        "sing-abandons",
    )
    .unwrap()
}

/// Two-path graph with R = b^2 - lambda*eps on which sunk-cost awareness
/// hurts: the doubly sophisticated agent takes the expensive upper path
/// (cost b + eps) while agents without that awareness take the cheap lower
/// path (cost 1 + (b+1) eps).
pub fn sing_better_fixture(
    bias: &Rational,
    lambda: &Rational,
    eps: &Rational,
) -> Result<Instance, GeneratorError> {
    precondition(*bias > Rational::one(), "requires b > 1")?;
    precondition(!lambda.is_negative() && !lambda.is_zero(), "requires lambda > 0")?;
    precondition(!eps.is_negative() && !eps.is_zero(), "requires eps > 0")?;
    let reward = bias * bias - lambda * eps;
    // upper path viable at the source: b*eps + b <= R
    stage_check(
        bias * eps + bias <= reward,
        0,
        "upper path must fit the reward: b*eps + b <= b^2 - lambda*eps",
    )?;
    // lower path viable for a present-bias-only agent: b + (b+1)*eps <= R
    // and b*(b+1)*eps <= R
    let lower_tail = (bias + Rational::one()) * eps;
    stage_check(
        bias + &lower_tail <= reward && bias * &lower_tail <= reward,
        0,
        "lower path must fit the reward",
    )?;
    let graph = crate::graph::build_graph(
        &["s", "v1", "v2", "t"],
        &[
            ("s", "v1", eps.clone()),
            ("v1", "t", bias.clone()),
            ("s", "v2", rat(1, 1)),
            ("v2", "t", lower_tail),
        ],
        "s",
        "t",
    )
    .expect("fixture is valid");
    Instance::new(
        graph,
        reward,
        AgentParams::new(bias.clone(), lambda.clone()).unwrap(),
        "sing-better",
    )
    .map_err(|e| GeneratorError::Precondition(e.to_string()))
}

/// Two-edge chain with R = b^2 - lambda*eps on which sunk-cost awareness
/// helps: a sophisticated present-biased agent never starts while the
/// doubly sophisticated agent reaches the target with positive payoff.
pub fn doubly_vs_soph_fixture(
    bias: &Rational,
    lambda: &Rational,
    eps: &Rational,
) -> Result<Instance, GeneratorError> {
    precondition(*bias > Rational::one(), "requires b > 1")?;
    precondition(!lambda.is_negative() && !lambda.is_zero(), "requires lambda > 0")?;
    precondition(!eps.is_negative() && !eps.is_zero(), "requires eps > 0")?;
    let reward = bias * bias - lambda * eps;
    precondition(
        lambda * eps < bias * bias - bias - eps,
        "payoff must be positive: lambda*eps < b^2 - b - eps",
    )?;
    // the doubly sophisticated agent must be willing to start
    stage_check(
        bias * eps + bias <= reward,
        0,
        "starting condition: b*eps + b <= b^2 - lambda*eps",
    )?;
    let graph = crate::graph::build_graph(
        &["s", "v", "t"],
        &[("s", "v", eps.clone()), ("v", "t", bias.clone())],
        "s",
        "t",
    )
    .expect("fixture is valid");
    Instance::new(
        graph,
        reward,
        AgentParams::new(bias.clone(), lambda.clone()).unwrap(),
        "doubly-vs-soph",
    )
    .map_err(|e| GeneratorError::Precondition(e.to_string()))
}

/// Fan graph on which a doubly naive agent rides its growing perceived
/// reward through every spoke, incurring cost exponential in `n`:
/// `x_i = y0 * b(b-1)/(b^2+lambda) * r^(i-1)` and `y_i = y0 * r^i` with
/// `r = b(b+lambda)/(b^2+lambda)`, reward `b * y0`. At every spoke the
/// direct edge ties with continuing and the cheaper immediate edge wins.
pub fn fan_instance(
    n: usize,
    bias: &Rational,
    lambda: &Rational,
    y0: &Rational,
) -> Result<Instance, GeneratorError> {
    precondition(n >= 1, "requires n >= 1")?;
    precondition(*bias > Rational::one(), "requires b > 1")?;
    precondition(!lambda.is_negative() && !lambda.is_zero(), "requires lambda > 0")?;
    precondition(!y0.is_negative() && !y0.is_zero(), "requires y0 > 0")?;
    let denom = bias * bias + lambda;
    let ratio = bias * (bias + lambda) / denom.clone();
    let x_scale = y0 * bias * (bias - Rational::one()) / denom;
    let mut nodes = vec!["s".to_string()];
    for i in 1..=n {
        nodes.push(format!("v{i}"));
    }
    nodes.push("t".to_string());
    let node_name = |i: usize| {
        if i == 0 {
            "s".to_string()
        } else {
            format!("v{i}")
        }
    };
    let mut edges = Vec::new();
    for i in 0..=n {
        if i >= 1 {
            // x_i: v_{i-1} -> v_i
            let x_i = &x_scale * ratio.pow(i as u32 - 1);
            edges.push((node_name(i - 1), node_name(i), x_i));
        }
        // y_i: v_i -> t
        let y_i = y0 * ratio.pow(i as u32);
        edges.push((node_name(i), "t".to_string(), y_i));
    }
    let graph = TaskGraph::new(nodes, edges, "s", "t").expect("fixture is valid");
    Instance::new(
        graph,
        bias * y0,
        AgentParams::new(bias.clone(), lambda.clone()).unwrap(),
        format!("fan-{n}"),
    )
    .map_err(|e| GeneratorError::Precondition(e.to_string()))
}

/// The chained-gadget graph on which a singly sophisticated agent keeps
/// re-planning forward and accumulates cost exponential in the number of
/// switches before abandoning at the last stage.
///
/// With `alpha = min(1/(2 b lambda), (b-1)/(b^2 + 2 lambda))` and
/// `R_i = (1 + alpha*lambda)^i * R`, stage `i` uses
/// `x_i = alpha * R_{i-1}`, `z_i = R_{i-1}/b^2 + eps` and
/// `y_i = R_i/b - R_{i-1}/b^2`.
pub fn singly_exponential_instance(
    n: usize,
    bias: &Rational,
    lambda: &Rational,
    reward: &Rational,
    eps: &Rational,
) -> Result<Instance, GeneratorError> {
    precondition(n >= 1, "requires n >= 1")?;
    precondition(*bias > rat(2, 1), "requires b > 2")?;
    precondition(!lambda.is_negative() && !lambda.is_zero(), "requires lambda > 0")?;
    precondition(!reward.is_negative() && !reward.is_zero(), "requires R > 0")?;
    precondition(!eps.is_negative() && !eps.is_zero(), "requires eps > 0")?;
    let alpha = (Rational::one() / (rat(2, 1) * bias * lambda)).min(
        (bias - Rational::one()) / (bias * bias + rat(2, 1) * lambda),
    );
    let b2 = bias * bias;
    let growth = Rational::one() + &alpha * lambda;
    let mut nodes = vec!["s".to_string()];
    for i in 1..=n {
        for prefix in ["v", "u", "w", "t"] {
            nodes.push(format!("{prefix}{i}"));
        }
    }
    nodes.push("t".to_string());
    let mut edges = Vec::new();
    let mut rho_prev = reward.clone(); // R_{i-1}
    for i in 1..=n {
        let rho_here = &rho_prev * &growth; // R_i
        let x_i = &alpha * &rho_prev;
        let z_i = &rho_prev / &b2 + eps;
        let y_i = &rho_here / bias - &rho_prev / &b2;
        // the believed plan and the realized walk need these to hold
        stage_check(
            bias * &z_i < rho_prev,
            i,
            "direct gadget exit must be believed viable: b*z_i < R_{i-1}",
        )?;
        stage_check(
            bias * &y_i + &z_i < rho_prev,
            i,
            "entering the gadget must be believed viable: b*y_i + z_i < R_{i-1}",
        )?;
        stage_check(
            bias * &x_i + &y_i + &z_i < rho_prev,
            i,
            "advancing a stage must be believed viable: b*x_i + y_i + z_i < R_{i-1}",
        )?;
        stage_check(
            &b2 * &z_i <= rho_here,
            i,
            "the detour must open up after the switch: b^2*z_i <= R_i",
        )?;
        let tail = if i == 1 { "s".to_string() } else { format!("v{}", i - 1) };
        edges.push((tail, format!("v{i}"), x_i));
        edges.push((format!("v{i}"), format!("u{i}"), y_i));
        edges.push((format!("u{i}"), format!("t{i}"), z_i.clone()));
        edges.push((format!("u{i}"), format!("w{i}"), Rational::zero()));
        edges.push((format!("w{i}"), format!("t{i}"), bias * &z_i));
        edges.push((format!("t{i}"), "t".to_string(), Rational::zero()));
        rho_prev = rho_here;
    }
    let graph = TaskGraph::new(nodes, edges, "s", "t").expect("fixture is valid");
    Instance::new(
        graph,
        reward.clone(),
        AgentParams::new(bias.clone(), lambda.clone()).unwrap(),
        format!("singly-exp-{n}"),
    )
    .map_err(|e| GeneratorError::Precondition(e.to_string()))
}

/// The `alpha` used by `singly_exponential_instance`.
pub fn singly_exponential_alpha(bias: &Rational, lambda: &Rational) -> Rational {
    (Rational::one() / (rat(2, 1) * bias * lambda)).min(
        (bias - Rational::one()) / (bias * bias + rat(2, 1) * lambda),
    )
}

// --- Subset Sum reduction ----------------------------------------------------

/// A Subset Sum instance: positive integers and a target.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubsetSumInstance {
    xs: Vec<u64>,
    target: u64,
}

impl SubsetSumInstance {
    /// Every `x_i` must be positive. A zero target is accepted here (the
    /// trivial empty subset solves it); `reduction_instance` additionally
    /// requires `target >= 1`.
    pub fn new(xs: Vec<u64>, target: u64) -> Result<SubsetSumInstance, GeneratorError> {
        if xs.contains(&0) {
            return Err(GeneratorError::Precondition(
                "subset-sum values must be positive".to_string(),
            ));
        }
        Ok(SubsetSumInstance { xs, target })
    }

    pub fn xs(&self) -> &[u64] {
        &self.xs
    }

    pub fn target(&self) -> u64 {
        self.target
    }
}

/// The doubling edge chain of total cost exactly `x`: two edges of cost
/// `1/(2b)`, then each edge doubles the previous one while the running
/// total plus the doubled value stays below `x`, and a final edge carries
/// the exact remainder (positive, at most twice the second-to-last edge).
pub fn gadget_sequence(x: u64, bias: &Rational) -> Result<Vec<Rational>, GeneratorError> {
    precondition(x >= 1, "requires x >= 1")?;
    precondition(*bias > Rational::one(), "requires b > 1")?;
    let x = Rational::from_int(x as i64);
    let half = Rational::one() / (rat(2, 1) * bias);
    let mut seq = vec![half.clone(), half.clone()];
    let mut total = rat(2, 1) * &half;
    let mut last = half;
    loop {
        let next = rat(2, 1) * &last;
        if &total + &next >= x {
            break;
        }
        total += &next;
        seq.push(next.clone());
        last = next;
    }
    seq.push(&x - &total);
    Ok(seq)
}

/// Upper bound on the gadget length for `x`: `ceil(log2(6x+1)) + 2`.
pub fn gadget_length_bound(x: u64) -> usize {
    let mut bound = 0usize;
    let mut pow = 1u128;
    let goal = 6 * x as u128 + 1;
    while pow < goal {
        pow *= 2;
        bound += 1;
    }
    bound + 2
}

/// Sidecar record emitted next to a reduction instance so oracle
/// cross-checks can recover the Subset Sum inputs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReductionSidecar {
    pub xs: Vec<u64>,
    pub target: u64,
    pub bias: Rational,
    pub sunk_factor: Rational,
    pub eps: Rational,
}

impl ReductionSidecar {
    pub fn to_text(&self) -> String {
        format!(
            "xs {}\ntarget {}\nbias {}\nsunk {}\neps {}\n",
            self.xs
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(","),
            self.target,
            self.bias,
            self.sunk_factor,
            self.eps
        )
    }

    pub fn parse(text: &str) -> Result<ReductionSidecar, String> {
        let mut xs = None;
        let mut target = None;
        let mut bias = None;
        let mut sunk = None;
        let mut eps = None;
        for line in text.lines() {
            let mut parts = line.split_whitespace();
            match (parts.next(), parts.next()) {
                (Some("xs"), Some(v)) => {
                    xs = Some(
                        v.split(',')
                            .map(|x| x.parse::<u64>().map_err(|e| e.to_string()))
                            .collect::<Result<Vec<_>, _>>()?,
                    )
                }
                (Some("target"), Some(v)) => target = Some(v.parse().map_err(|_| "bad target")?),
                (Some("bias"), Some(v)) => bias = Some(v.parse().map_err(|_| "bad bias")?),
                (Some("sunk"), Some(v)) => sunk = Some(v.parse().map_err(|_| "bad sunk")?),
                (Some("eps"), Some(v)) => eps = Some(v.parse().map_err(|_| "bad eps")?),
                (None, _) => continue,
                (Some(k), _) => return Err(format!("unknown sidecar line `{k}`")),
            }
        }
        Ok(ReductionSidecar {
            xs: xs.ok_or("missing xs")?,
            target: target.ok_or("missing target")?,
            bias: bias.ok_or("missing bias")?,
            sunk_factor: sunk.ok_or("missing sunk")?,
            eps: eps.ok_or("missing eps")?,
        })
    }
}

/// Encode a Subset Sum instance as a planning instance: the doubly
/// sophisticated agent starts if and only if some subset of `xs` sums to
/// the target. Uses `b = 2 + lambda` and `R = 2T + lambda - eps`; requires
/// `1/2 < lambda < 1` and `0 < eps <= 1/(2b)`. The default `eps` when
/// `None` is `1/(4b)`.
pub fn reduction_instance(
    ss: &SubsetSumInstance,
    lambda: &Rational,
    eps: Option<&Rational>,
) -> Result<(Instance, ReductionSidecar), GeneratorError> {
    precondition(
        *lambda > rat(1, 2) && *lambda < Rational::one(),
        "requires 1/2 < lambda < 1",
    )?;
    precondition(ss.target >= 1, "requires target >= 1")?;
    let bias = rat(2, 1) + lambda;
    let default_eps = Rational::one() / (rat(4, 1) * &bias);
    let eps = eps.cloned().unwrap_or(default_eps);
    precondition(!eps.is_negative() && !eps.is_zero(), "requires eps > 0")?;
    precondition(
        eps <= Rational::one() / (rat(2, 1) * &bias),
        "requires eps <= 1/(2b)",
    )?;
    let t_rat = Rational::from_int(ss.target as i64);
    let reward = rat(2, 1) * &t_rat + lambda - &eps;

    let n = ss.xs.len();
    let mut nodes = vec!["s".to_string()];
    let mut edges: Vec<(String, String, Rational)> = Vec::new();
    for i in 1..=n {
        nodes.push(format!("v{i}"));
        nodes.push(format!("w{i}"));
    }
    nodes.push(format!("v{}", n + 1));
    nodes.push("t".to_string());
    edges.push(("s".to_string(), "v1".to_string(), Rational::zero()));
    for (idx, &x) in ss.xs.iter().enumerate() {
        let i = idx + 1;
        let seq = gadget_sequence(x, &bias)?;
        debug_assert!(seq.len() <= gadget_length_bound(x));
        debug_assert_eq!(seq.iter().sum::<Rational>(), Rational::from_int(x as i64));
        let mut prev = format!("v{i}");
        for (k, cost) in seq.iter().enumerate() {
            let next = if k + 1 == seq.len() {
                format!("v{}", i + 1)
            } else {
                let name = format!("g{i}_{k}");
                nodes.push(name.clone());
                name
            };
            edges.push((prev, next.clone(), cost.clone()));
            prev = next;
        }
        edges.push((format!("v{i}"), format!("w{i}"), Rational::zero()));
        edges.push((format!("w{i}"), format!("v{}", i + 1), Rational::zero()));
    }
    edges.push((format!("v{}", n + 1), "t".to_string(), t_rat));
    let graph = TaskGraph::new(nodes, edges, "s", "t").expect("reduction graph is valid");
    let instance = Instance::new(
        graph,
        reward,
        AgentParams::new(bias.clone(), lambda.clone()).unwrap(),
        format!("reduction-n{n}-T{}", ss.target),
    )
    .map_err(|e| GeneratorError::Precondition(e.to_string()))?;
    let sidecar = ReductionSidecar {
        xs: ss.xs.clone(),
        target: ss.target,
        bias,
        sunk_factor: lambda.clone(),
        eps,
    };
    Ok((instance, sidecar))
}

// --- random layered DAGs -------------------------------------------------------

/// Seeded random layered DAG with integer costs in `[0, max_cost]`. Edges
/// only go to strictly later layers, so the graph is acyclic by
/// construction; a backbone path keeps the target reachable. Parameters
/// are drawn from small rational palettes and the reward from
/// `[0, 2 * b * C_o]`. The same seed always yields the same instance.
pub fn random_instance(
    n: usize,
    max_cost: u64,
    edge_density: &Rational,
    seed: u64,
) -> Instance {
    assert!(n >= 2, "need at least a source and a target");
    assert!(
        !edge_density.is_negative() && *edge_density <= Rational::one(),
        "edge density must be in [0, 1]"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cost = |rng: &mut ChaCha8Rng| Rational::from_int(rng.random_range(0..=max_cost) as i64);

    let mut names = vec!["s".to_string()];
    for i in 1..=n.saturating_sub(2) {
        names.push(format!("m{i}"));
    }
    names.push("t".to_string());
    let middle = n - 2;
    let layer_count = if middle == 0 {
        0
    } else {
        rng.random_range(1..=middle.min(4))
    };
    let mut layers = vec![0usize; n];
    for layer in layers.iter_mut().take(middle + 1).skip(1) {
        *layer = rng.random_range(1..=layer_count);
    }
    layers[n - 1] = layer_count + 1;

    let mut edges: Vec<(String, String, Rational)> = Vec::new();
    // backbone: a strictly layer-increasing path from s to t
    let mut current = 0usize;
    for layer in 1..=layer_count {
        let members: Vec<usize> = (1..=middle).filter(|&i| layers[i] == layer).collect();
        if members.is_empty() || rng.random_bool(0.5) {
            continue;
        }
        let pick = members[rng.random_range(0..members.len())];
        let c = cost(&mut rng);
        edges.push((names[current].clone(), names[pick].clone(), c));
        current = pick;
    }
    edges.push((names[current].clone(), names[n - 1].clone(), cost(&mut rng)));

    // sprinkle density edges between strictly increasing layers
    let density_num = edge_density.numer().try_into().unwrap_or(0u32);
    let density_den = edge_density.denom().try_into().unwrap_or(1u32);
    for u in 0..n {
        for v in 1..n {
            if layers[u] < layers[v] && (density_num == 0 || rng.random_ratio(density_num, density_den)) {
                if density_num == 0 {
                    continue;
                }
                let c = cost(&mut rng);
                edges.push((names[u].clone(), names[v].clone(), c));
            }
        }
    }

    let graph = TaskGraph::new(names, edges, "s", "t").expect("layered graph is valid");
    let bias_palette = [rat(1, 1), rat(3, 2), rat(2, 1), rat(5, 2), rat(3, 1)];
    let sunk_palette = [rat(0, 1), rat(1, 4), rat(1, 2), rat(1, 1), rat(2, 1)];
    let bias = bias_palette[rng.random_range(0..bias_palette.len())].clone();
    let sunk = sunk_palette[rng.random_range(0..sunk_palette.len())].clone();
    let fraction = Rational::new(rng.random_range(0..=16), 8);
    let reward = fraction * &bias * graph.optimal_cost();
    Instance::new(
        graph,
        reward,
        AgentParams::new(bias, sunk).unwrap(),
        format!("random-{seed}"),
    )
    .unwrap()
}
