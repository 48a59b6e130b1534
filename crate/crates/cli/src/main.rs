//! `biasplan`: simulate biased agents on task graphs, generate the built-in
//! instance families, run the Subset Sum reduction, search for minimum
//! rewards, and verify the library's quantitative guarantees.
//!
//! Exit codes: 0 on success, 1 when a `verify` suite reports a violation,
//! 2 on malformed input.

use anyhow::{anyhow, Context, Result};
use biasplan::agents::{simulate, AgentKind, ALL_KINDS};
use biasplan::doubly::{min_reward, recursive_states};
use biasplan::format::{parse_graph_with_meta, serialize_graph};
use biasplan::generators;
use biasplan::graph::{AgentParams, Instance};
use biasplan::rational::{rat, Rational};
use biasplan::trace::{to_record, to_text};
use biasplan::verify::{run_suite, Suite};
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Default seed for all randomized subcommands.
const DEFAULT_SEED: u64 = 20_250_401;

#[derive(Parser)]
#[command(
    name = "biasplan",
    version,
    about = "Simulate present-biased and sunk-cost-biased agents on task graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance file in the task-graph format.
    #[arg(long)]
    graph: PathBuf,
    /// Present bias b >= 1; overrides the file's `bias` line.
    #[arg(long)]
    bias: Option<Rational>,
    /// Sunk-cost factor lambda >= 0; overrides the file's `sunk` line.
    #[arg(long)]
    sunk: Option<Rational>,
    /// Reward at the target; overrides the file's `reward` line.
    #[arg(long)]
    reward: Option<Rational>,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum TraceFormat {
    Text,
    Record,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum CompareFormat {
    Text,
    Record,
}

fn outcome_word(inst: &Instance, outcome: &biasplan::Outcome) -> String {
    match outcome {
        biasplan::Outcome::Reached => "reached".to_string(),
        biasplan::Outcome::AbandonedAt(n) => format!("abandoned@{}", inst.graph.name(*n)),
        biasplan::Outcome::NeverStarted => "never-started".to_string(),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one agent kind and print its traversal trace.
    Simulate {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Agent kind (e.g. optimal, doubly-naive, doubly-sophisticated).
        #[arg(long)]
        agent: String,
        #[arg(long, value_enum, default_value = "text")]
        format: TraceFormat,
        /// Also print the (node, sunk cost) policy table; only meaningful
        /// for the doubly sophisticated agent.
        #[arg(long)]
        dump_policy: bool,
    },
    /// Simulate all seven agent kinds and print a comparison table with
    /// the additive payoff-gap bounds; exits 1 if a bound is violated.
    Compare {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: CompareFormat,
    },
    /// Write one of the built-in instance families to a file.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Encode a Subset Sum instance as a planning instance (plus sidecar).
    Reduce {
        /// Comma-separated positive integers.
        #[arg(long)]
        xs: String,
        /// Subset-sum target.
        #[arg(long)]
        target: u64,
        /// Sunk-cost factor, must satisfy 1/2 < lambda < 1.
        #[arg(long)]
        sunk: Rational,
        /// Reward slack; defaults to 1/(4b) with b = 2 + lambda.
        #[arg(long)]
        eps: Option<Rational>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Smallest reward at which the doubly sophisticated agent starts.
    MinReward {
        /// Instance file in the task-graph format.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        bias: Option<Rational>,
        #[arg(long)]
        sunk: Option<Rational>,
        /// Largest denominator the answer may have.
        #[arg(long, default_value_t = 1_000_000)]
        denom_bound: u64,
    },
    /// Run a verification suite; exits 1 on any violation.
    Verify {
        /// One of: fixtures, equivalence, bounds, reduction, all.
        #[arg(long)]
        suite: String,
        /// Number of random instances per sweep.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Family {
    /// The health-club membership example (R = 19, b = 2, lambda = 1/2).
    Gym {
        #[arg(short, long)]
        output: PathBuf,
    },
    /// The four-week class grid, with the week-2 full-deferral edge pruned.
    Deadline {
        #[arg(short, long)]
        output: PathBuf,
    },
    /// The four-week class grid with deferral allowed everywhere.
    DeadlineFull {
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Five-node graph where a singly sophisticated agent abandons.
    SingAbandons {
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Two-path graph where sunk-cost awareness hurts.
    SingBetter {
        #[arg(long, default_value = "2")]
        bias: Rational,
        #[arg(long, default_value = "1/2")]
        sunk: Rational,
        #[arg(long, default_value = "1/100")]
        eps: Rational,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Two-edge chain where sunk-cost awareness helps.
    DoublyVsSoph {
        #[arg(long, default_value = "2")]
        bias: Rational,
        #[arg(long, default_value = "1/2")]
        sunk: Rational,
        #[arg(long, default_value = "1/100")]
        eps: Rational,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Fan graph with exponential doubly-naive cost.
    Fan {
        #[arg(long, default_value_t = 5)]
        stages: usize,
        #[arg(long, default_value = "2")]
        bias: Rational,
        #[arg(long, default_value = "1/2")]
        sunk: Rational,
        #[arg(long, default_value = "1")]
        y0: Rational,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Chained gadgets with exponential singly-sophisticated cost.
    SinglyExp {
        #[arg(long, default_value_t = 5)]
        stages: usize,
        #[arg(long, default_value = "3")]
        bias: Rational,
        #[arg(long, default_value = "1/2")]
        sunk: Rational,
        #[arg(long, default_value = "1")]
        reward: Rational,
        #[arg(long, default_value = "1/100")]
        eps: Rational,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Seeded random layered DAG with integer costs.
    Random {
        #[arg(long, default_value_t = 8)]
        nodes: usize,
        #[arg(long, default_value_t = 12)]
        max_cost: u64,
        #[arg(long, default_value = "1/2")]
        density: Rational,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn load_instance(path: &Path, args: &InstanceArgs) -> Result<Instance> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let parsed = parse_graph_with_meta(&text)
        .with_context(|| format!("cannot parse {}", path.display()))?;
    let bias = match (&args.bias, parsed.bias_given) {
        (Some(b), _) => b.clone(),
        (None, true) => parsed.instance.params.bias().clone(),
        (None, false) => {
            return Err(anyhow!(
                "no present bias given: the file has no `bias` line and --bias was not passed"
            ))
        }
    };
    let sunk = match (&args.sunk, parsed.sunk_given) {
        (Some(l), _) => l.clone(),
        (None, true) => parsed.instance.params.sunk_factor().clone(),
        (None, false) => {
            return Err(anyhow!(
                "no sunk-cost factor given: the file has no `sunk` line and --sunk was not passed"
            ))
        }
    };
    let reward = args
        .reward
        .clone()
        .unwrap_or_else(|| parsed.instance.reward.clone());
    let params = AgentParams::new(bias, sunk)?;
    Ok(Instance::new(
        parsed.instance.graph,
        reward,
        params,
        parsed.instance.label,
    )?)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn run() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Simulate {
            instance,
            agent,
            format,
            dump_policy,
        } => {
            let kind = AgentKind::from_name(&agent).ok_or_else(|| {
                anyhow!(
                    "unknown agent `{agent}`; expected one of: {}",
                    ALL_KINDS.map(|k| k.name()).join(", ")
                )
            })?;
            let inst = load_instance(&instance.graph, &instance)?;
            let trace = simulate(&inst, kind);
            match format {
                TraceFormat::Text => print!("{}", to_text(&trace, &inst.graph)),
                TraceFormat::Record => print!("{}", to_record(&trace, &inst.graph)),
            }
            if dump_policy {
                let result = recursive_states(&inst);
                print!("{}", result.policy.dump(&inst.graph));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare { instance, format } => {
            let inst = load_instance(&instance.graph, &instance)?;
            let report = biasplan::gap_report(&inst);
            if format == CompareFormat::Record {
                print!("{}", report.to_record());
                for kind in ALL_KINDS {
                    let trace = simulate(&inst, kind);
                    let outcome = outcome_word(&inst, &trace.outcome);
                    println!("outcome {} {}", kind.name(), outcome);
                    println!("total-cost {} {}", kind.name(), trace.total_cost);
                }
                return Ok(if report.all_hold() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                });
            }
            println!("{}", inst);
            println!(
                "{:<30} {:<16} {:>12} {:>12}",
                "agent", "outcome", "total cost", "payoff"
            );
            for kind in ALL_KINDS {
                let trace = simulate(&inst, kind);
                println!(
                    "{:<30} {:<16} {:>12} {:>12}",
                    kind.name(),
                    outcome_word(&inst, &trace.outcome),
                    trace.total_cost.to_string(),
                    trace.payoff.to_string()
                );
            }
            println!("optimal cost C_o = {}", report.optimal_cost);
            for check in &report.checks {
                println!(
                    "bound  {:<30} {} <= {}  [{}]",
                    check.name,
                    check.observed,
                    check.bound,
                    if check.holds { "ok" } else { "VIOLATED" }
                );
            }
            Ok(if report.all_hold() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Generate { family } => {
            let (instance, output) = build_family(family)?;
            write_file(&output, &serialize_graph(&instance))?;
            println!("wrote {} ({})", output.display(), instance);
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce {
            xs,
            target,
            sunk,
            eps,
            output,
        } => {
            let xs: Vec<u64> = xs
                .split(',')
                .map(|x| x.trim().parse::<u64>())
                .collect::<Result<_, _>>()
                .context("--xs must be a comma-separated list of positive integers")?;
            let ss = generators::SubsetSumInstance::new(xs, target)?;
            let (instance, sidecar) = generators::reduction_instance(&ss, &sunk, eps.as_ref())?;
            write_file(&output, &serialize_graph(&instance))?;
            let sidecar_path = output.with_extension("sidecar");
            write_file(&sidecar_path, &sidecar.to_text())?;
            println!(
                "wrote {} and {} ({})",
                output.display(),
                sidecar_path.display(),
                instance
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::MinReward {
            graph,
            bias,
            sunk,
            denom_bound,
        } => {
            let args = InstanceArgs {
                graph: graph.clone(),
                bias,
                sunk,
                reward: Some(rat(0, 1)),
            };
            let inst = load_instance(&graph, &args)?;
            let minimal = min_reward(
                &inst.graph,
                inst.params.bias(),
                inst.params.sunk_factor(),
                denom_bound,
            );
            println!("{minimal}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            trials,
            seed,
        } => {
            let suite = Suite::from_name(&suite).ok_or_else(|| {
                anyhow!("unknown suite `{suite}`; expected fixtures, equivalence, bounds, reduction, or all")
            })?;
            let checks = run_suite(suite, trials, seed);
            let mut all_passed = true;
            for check in &checks {
                println!(
                    "[{}] {} - {}",
                    if check.passed { "PASS" } else { "FAIL" },
                    check.name,
                    check.details
                );
                if !check.passed {
                    all_passed = false;
                    if let Some(replay) = &check.replay {
                        eprintln!("replay instance for `{}`:\n{}", check.name, replay);
                    }
                }
            }
            println!(
                "{}: {} checks, {} failed",
                if all_passed { "ok" } else { "FAILED" },
                checks.len(),
                checks.iter().filter(|c| !c.passed).count()
            );
            Ok(if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn build_family(family: Family) -> Result<(Instance, PathBuf)> {
    Ok(match family {
        Family::Gym { output } => (generators::gym_fixture(), output),
        Family::Deadline { output } => (generators::deadline_fixture(), output),
        Family::DeadlineFull { output } => (generators::deadline_full_fixture(), output),
        Family::SingAbandons { output } => (generators::sing_abandons_fixture(), output),
        Family::SingBetter {
            bias,
            sunk,
            eps,
            output,
        } => (generators::sing_better_fixture(&bias, &sunk, &eps)?, output),
        Family::DoublyVsSoph {
            bias,
            sunk,
            eps,
            output,
        } => (
            generators::doubly_vs_soph_fixture(&bias, &sunk, &eps)?,
            output,
        ),
        Family::Fan {
            stages,
            bias,
            sunk,
            y0,
            output,
        } => (generators::fan_instance(stages, &bias, &sunk, &y0)?, output),
        Family::SinglyExp {
            stages,
            bias,
            sunk,
            reward,
            eps,
            output,
        } => (
            generators::singly_exponential_instance(stages, &bias, &sunk, &reward, &eps)?,
            output,
        ),
        Family::Random {
            nodes,
            max_cost,
            density,
            seed,
            output,
        } => (
            generators::random_instance(nodes, max_cost, &density, seed),
            output,
        ),
    })
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
