//! Pair sampling, distortion metrics, sweeps and timing.

mod distortion;
mod pairs;
mod sweep;
mod theorem;
mod timing;

pub use distortion::{
    run_distortion, DistortionConfig, DistortionMetrics, DistortionOptions, DistortionReport,
    DistortionSample,
};
pub use pairs::sample_pairs;
pub use sweep::{
    family_stem, run_sweep, run_sweep_to_path, GraphSource, SweepCsv, SweepRow, SweepSpec,
    CSV_HEADER,
};
pub use theorem::{theorem_lb_check, theorem_ub_check, TheoremRun, MAX_VIOLATION_RATE};
pub use timing::{time_build, time_queries, timing_bench, TimingRecord};
