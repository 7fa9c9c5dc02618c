//! Seeded, reproducible genetic optimization at desk scale.
//!
//! The crate provides a binary-genome tournament GA and the instrumentation
//! around it: multimodal Gaussian-well landscapes with optional sinusoidal
//! noise and three time-varying regimes, fitness sharing, Pareto
//! multi-objective search with a non-dominated archive, a deterministic
//! compass-search baseline, and block-coordinate system optimization.
//!
//! Everything random derives from a single master seed through
//! [`rng::derive_seed`], so any run is a pure function of its configuration.

pub mod blockopt;
pub mod engine;
pub mod error;
pub mod genome;
pub mod landscape;
pub mod localsearch;
pub mod operators;
pub mod pareto;
pub mod population;
pub mod rng;
pub mod sharing;
pub mod trace;

pub use blockopt::{block_optimize, block_run_seed, BlockOutcome, BlockPartition, BlockStep};
pub use engine::{init_population, run, RunConfig, Runner, StopRule};
pub use error::{Error, Result};
pub use genome::{schema_count, Chromosome, GenomeSpec, ParamKind, ParamSpec, Schema};
pub use landscape::{
    wells_eval, CostFn, Dynamics, Landscape, LandscapeKind, NoiseConfig, NoiseMode, Well,
};
pub use localsearch::{pattern_search, PatternConfig, PatternOutcome};
pub use operators::{
    crossover, eliminate_to_size, mutate, pick_parent, pick_parent_index, CostOrder,
    OperatorConfig, ScalarOrder,
};
pub use pareto::{
    crowding_distances, dominates, nondominated_sort, scalarize, FrontPoint, ParetoArchive,
    ParetoOrder, Scalarized,
};
pub use population::{Individual, Population};
pub use sharing::{niche_counts, niche_report, shared_cost, NicheReport, SharingConfig};
pub use trace::{RunTrace, TraceRow};
