//! Seeded randomized experiments over lex Gröbner basins.

mod experiments;
mod report;
mod sampler;

pub use experiments::{
    et_closure_case, run_certificates, run_divisibility, run_duality, run_et_closure,
    run_et_closure_covers, run_prop1, run_prop2, run_punc_consistency, run_punc_generic_weights,
    run_refinement, run_single_column_density, run_splitting, run_torus_calibration,
};
pub use report::{CaseResult, ExperimentReport, Failure};
pub use sampler::{
    fresh_rational, origin_substitutions, random_composition, random_nonzero_rational,
    random_rational, random_staircase, sample_axis, sample_basin_ideal, sample_origin,
    sample_points, sample_with_rng, satisfies_support, trial_rng, BasinSampleSpec,
    SupportConstraint, MAX_DENOMINATOR, MAX_NUMERATOR,
};
