//! Worked examples: analytic building blocks and harmonic maps.

pub mod analytic;
pub mod harmonic;
pub mod ids;
pub(crate) mod quad;

pub use analytic::AnalyticMap;
pub use harmonic::{
    analytic_as_harmonic, exterior_counterexample, f_alpha, f_k_family, half_plane_map,
    halfplane_remark3, harmonic_koebe, identity_map, recip_punctured, slit_plane_example,
    DerivPair, DirectMap, Family, HarmonicMap,
};
