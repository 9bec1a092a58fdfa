//! Numerics for sense-preserving planar harmonic mappings `f = h +
//! conj(g)`: pre-Schwarzian derivatives `P_f = (log J_f)_z`, their
//! hyperbolic-metric-weighted norms, Jacobian distortion bounds, and a
//! battery of grid checkers that pin the sharp constants of a catalog
//! of extremal maps.
//!
//! Layout:
//!
//! - [`scalar`]: the [`Real`](scalar::Real) trait gluing `f32`/`f64` to
//!   the generic kernels, plus complex literals.
//! - [`jet`]: second-order jets for exact derivatives of catalog maps
//!   and finite-difference Wirtinger oracles.
//! - [`catalog`]: analytic building blocks, the harmonic map catalog,
//!   families with their orders, and the string ID grammar.
//! - [`domain`]: hyperbolic densities, boundary distances, conformal
//!   charts, and the Osgood product scan.
//! - [`presch`]: pointwise `P_f`, `J_f`, dilatation, and the Koebe /
//!   affine transforms with their composition rules.
//! - [`norm`]: supremum scans with boundary refinement, radial
//!   profiles, and divergence witnesses.
//! - [`verify`]: inequality checkers, the majorization experiment, and
//!   batch reports.
//!
//! Everything numeric is generic over the scalar; the `64`-suffixed
//! aliases at the root fix `f64` for callers that do not care.

pub mod catalog;
pub mod cplx;
pub mod domain;
pub mod error;
pub mod jet;
pub mod norm;
pub mod presch;
pub mod scalar;
pub mod verify;

pub use catalog::{
    analytic_as_harmonic, exterior_counterexample, f_alpha, f_k_family, half_plane_map,
    halfplane_remark3, harmonic_koebe, identity_map, recip_punctured, slit_plane_example,
    AnalyticMap, DerivPair, DirectMap, Family, HarmonicMap,
};
pub use catalog::ids::{
    analytic_from_id, default_domain_id, domain_from_id, family_from_id, map_from_id,
};
pub use cplx::{format_complex, parse_complex};
pub use domain::{exterior_weight, osgood_infimum, DomainModel, OsgoodEstimate, RiemannDomain};
pub use error::EvalError;
pub use jet::{numeric_second_derivative, numeric_wirtinger, Jet2, WirtingerPair};
pub use norm::{
    default_radii, divergence_witness, norm_estimate, norm_estimate_with, profile_to_csv,
    radial_profile, sup_dilatation, sup_scan, weighted_modulus, weighted_modulus_with, GridSpec,
    NormEstimate, ProfileSample, Weight,
};
pub use presch::{
    affine_transform, compose_conformal, dilatation, family_shift, h_plus_eps_g, jacobian,
    koebe_transform, pre_schwarzian, pre_schwarzian_analytic, presch_at, presch_oracle,
    PreschValue,
};
pub use scalar::{clit, Real, C};
pub use verify::{
    check_boundary_distance, check_comparison, check_distortion, check_majorization,
    check_norm_bound, check_norm_chain, check_norm_comparison, check_norm_value, check_osgood,
    check_pointwise_disk, comparison_lhs, cor4_derivative, cor4_derivative_fd, default_config,
    distortion_bounds, distortion_equality, jacobian_subordinate, majorization_radius,
    pointwise_disk_lhs, run_check, run_report, CheckResult, CheckSpec, ComparisonMode,
    ConvexKind, MajorizationResult, OsgoodExpectation, Report, ReportConfig, Summary,
};

/// Complex double, the working point type of the concrete layer.
pub type C64 = num_complex::Complex<f64>;
/// Second-order jet over `f64`.
pub type Jet64 = jet::Jet2<f64>;
/// Harmonic catalog map over `f64`.
pub type Map64 = catalog::HarmonicMap<f64>;
/// Domain model over `f64`.
pub type Domain64 = domain::DomainModel<f64>;
/// Norm estimate over `f64`.
pub type Norm64 = norm::NormEstimate<f64>;
