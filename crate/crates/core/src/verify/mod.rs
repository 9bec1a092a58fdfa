//! Checkers for the sharp bounds, comparison estimates, distortion
//! bounds, and Jacobian majorization facts, plus batch report assembly.
//!
//! Everything in this module works at `f64` and talks in wire-friendly
//! records: residuals are plain floats, points are `a+bi` strings, and
//! parameters ride along as string maps. A check never asserts; it
//! returns a [`CheckResult`] whose `pass` flag is `worst_residual <=
//! tolerance`, so a failing bound shows up as data, not a panic.

pub mod checks;
pub mod majorization;
pub mod report;

pub use checks::{
    check_boundary_distance, check_comparison, check_distortion, check_norm_bound,
    check_norm_chain, check_norm_comparison, check_norm_value, check_osgood,
    check_pointwise_disk, comparison_lhs, distortion_bounds, distortion_equality,
    pointwise_disk_lhs, CheckResult, ComparisonMode, DistortionBounds, DistortionEquality,
    OsgoodExpectation,
};
pub use majorization::{
    check_majorization, cor4_as_check, cor4_derivative, cor4_derivative_fd,
    jacobian_subordinate, majorization_as_check, majorization_radius, subordinate_map,
    ConvexKind, MajorizationResult,
};
pub use report::{default_config, run_check, run_report, CheckSpec, Report, ReportConfig, Summary};
