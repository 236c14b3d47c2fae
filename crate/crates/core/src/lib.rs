//! Stream-based active learning in a contextual multi-armed bandit over
//! metric context/arm spaces.
//!
//! Each time slot a context arrives, the learner picks an arm and decides
//! whether to buy the realized reward from an annotator. A query ships a
//! prior interval for the expected reward together with a significance
//! level, and the annotator charges less for tighter, more confident
//! priors. The learner partitions the unit context and arm cubes into
//! epoch-indexed grids that refine dyadically, runs successive elimination
//! per context cell, and stops querying a cell once the surviving arm
//! cells are statistically indistinguishable.
//!
//! The crate ships four pieces:
//!
//! - [`partition`]: uniform grid partitions of `[0,1]^d` with flat cell ids.
//! - [`env`]: synthetic ground truth — Lipschitz reward models, context
//!   processes, Bernoulli reward realization, the priced annotator, and
//!   brute-force oracles used only by instrumentation.
//! - [`learner`] and [`policy`]: the active-learning bandit itself plus
//!   baseline policies (clairvoyant oracle, always-query, zero-cost).
//! - [`harness`]: the slot-by-slot run engine with regret accounting,
//!   concentration instrumentation, bound verdicts, slope fitting, and
//!   CSV/JSON emission.
//!
//! Everything is deterministic given a seed; independent runs share no
//! state and can execute concurrently.

pub mod env;
pub mod harness;
pub mod learner;
pub mod partition;
pub mod policy;
pub mod rng;

pub use env::{Annotator, ContextProcess, GridTable, PriorInfo, ProcessKind, RewardModel};
pub use harness::{
    run, run_fixed_epoch, ExperimentConfig, RunOptions, RunOutput, RunSummary, SlotRecord,
};
pub use learner::{ActionDecision, Learner, LearnerConfig};
pub use partition::{ClusterId, GridPartition, Point};
pub use policy::{Policy, PolicyKind, PolicySpec};
pub use rng::RunRng;
