//! Empirical validators for the random-graph results behind the embedding
//! guarantees, plus the parameter calculators those results prescribe.

mod branching;
mod checks;
mod coupling;
mod params;
mod shells;
pub mod stats;
mod typical;

pub use branching::{branching_trace, BranchingTrace};
pub(crate) use checks::csv_err;
pub use checks::{
    branching_survival_run, coupling_run, coupling_trend_run, shell_growth_run,
    shell_intersection_run, survival_probability, typical_distance_run, CheckReport,
    GROWTH_REL_TOL, KS_THRESHOLD, PASS_FRACTION, SURVIVAL_TOL, TYPICAL_RANGE,
};
pub use coupling::{coupling_check, CouplingConfig, CouplingReport, ShellSampler};
pub use params::{max_exponent, params_lb, params_ub, BoundKind, TheoremInputs, TheoremParams};
pub use shells::{
    log_base, shell_intersection, shell_profile, GrowthConfig, GrowthOutcome, GrowthResult,
    IntersectionConfig, ShellGrowthValidator, ShellProfile,
};
pub use typical::{pair_distances, typical_distance_check, uniform_pairs, TypicalDistance};
