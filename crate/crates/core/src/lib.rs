//! Exact-arithmetic simulation of time-inconsistent agents on task graphs.
//!
//! A task graph is a DAG with non-negative rational edge costs, a source,
//! and a target carrying a reward. Agents walk it under two biases: present
//! bias `b` (the next edge's cost looms `b` times larger than it is) and
//! sunk-cost bias `lambda` (the reward looks `lambda * sunk cost` sweeter
//! once money is spent). Agents differ in whether they are aware of each
//! bias, and the seven resulting kinds behave very differently on the same
//! graph.
//!
//! The crate provides:
//!
//! * [`graph`] -- exact rationals, task graphs, validation, shortest paths;
//! * [`format`] -- the line-oriented instance file format;
//! * [`agents`] -- step-by-step simulation of every agent kind with full
//!   decision traces;
//! * [`doubly`] -- the pseudo-polynomial table planner, the memoized
//!   recursive planner, a brute-force oracle, and minimum-reward search for
//!   doubly sophisticated agents;
//! * [`generators`] -- fixtures, exponential-cost families, the Subset Sum
//!   reduction, and seeded random DAGs;
//! * [`analysis`] -- closed forms and additive payoff-gap bounds;
//! * [`verify`] -- the named verification suites run by the CLI.
//!
//! All arithmetic is exact; several constructions turn on perceived cost
//! being exactly equal to perceived reward, and ties always resolve by
//! continuing.

pub mod agents;
pub mod analysis;
pub mod doubly;
pub mod format;
pub mod generators;
pub mod graph;
pub mod rational;
pub mod trace;
pub mod verify;

pub use agents::{perceived_reward, simulate, sophisticated_plan, AgentKind, PlanTable};
pub use analysis::{fan_cost_closed_form, gap_report, singly_gap_bound, subset_sum_oracle};
pub use doubly::{brute_force, dp_integer, min_reward, recursive_states, DoublySophResult};
pub use format::{parse_graph, parse_graph_with_meta, serialize_graph};
pub use graph::{AgentParams, Instance, TaskGraph};
pub use rational::{Cost, Rational};
pub use trace::{count_switches, payoff_of, Outcome, TraversalTrace};
