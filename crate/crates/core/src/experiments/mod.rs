//! Run configuration, the per-geometry REM pipeline and CSV/SVG output
//! shared by the command-line tool and the browser demo.

mod config;
mod output;
mod run;

pub use config::{
    AnsatzChoice, BackendKind, ConfusionSource, Mitigation, OptimizerChoice, Problem, Reference, Resolved, RunConfig, Source,
    DEVICE_P2,
};
pub use output::{
    dissociation_csv, dissociation_svg, noise_sweep_csv, noise_sweep_svg, render_svg, Chart, Series, CHEMICAL_ACCURACY,
    DISSOCIATION_HEADER, NOISE_SWEEP_HEADER,
};
pub use run::{
    calibrate, default_p2_grid, dissociation, noise_sweep, oracle, run_point, single_point, single_problem, NoiseSweepRow,
    Oracle, PointPlan, PointResult, SinglePointReport,
};
