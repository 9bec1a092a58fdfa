//! Jacobian majorization under subordination: the critical radius
//! `n(alpha)`, closed-form Jacobians of the subordinated extremal maps,
//! the derivative-in-`a` criterion, and the violation search just beyond
//! the critical radius.

use crate::catalog::analytic::AnalyticMap;
use crate::catalog::harmonic::HarmonicMap;
use crate::domain::DomainModel;
use crate::error::EvalError;
use crate::scalar::C;
use crate::verify::checks::CheckResult;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

/// The two extremal families with closed-form subordinated Jacobians.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConvexKind {
    Convex,
    CloseToConvex,
}

impl ConvexKind {
    pub fn label(self) -> &'static str {
        match self {
            ConvexKind::Convex => "convex",
            ConvexKind::CloseToConvex => "close-to-convex",
        }
    }

    /// The order parameter entering `n(alpha)` for this family.
    pub fn alpha(self) -> f64 {
        match self {
            ConvexKind::Convex => 1.5,
            ConvexKind::CloseToConvex => 2.5,
        }
    }
}

/// Critical majorization radius `n(alpha) = 1 + alpha - sqrt(alpha^2 +
/// 2 alpha)`.
pub fn majorization_radius(alpha: f64) -> Result<f64, EvalError> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(EvalError::InvalidParameter(format!(
            "majorization radius needs alpha >= 0, got {alpha}"
        )));
    }
    Ok(1.0 + alpha - (alpha * alpha + 2.0 * alpha).sqrt())
}

/// `J_{f_a}(r)` along the positive radius, where `f_a` is the family's
/// reflected extremal composed with `psi_a(z) = z (a + z) / (1 + a z)`.
/// At `a = 1` the composition is the base map itself.
pub fn jacobian_subordinate(kind: ConvexKind, a: f64, r: f64) -> f64 {
    let num = a + 2.0 * r + a * r * r;
    let den = 1.0 + 2.0 * a * r + r * r;
    match kind {
        ConvexKind::Convex => (1.0 - r * r) * num * num / den.powi(5),
        ConvexKind::CloseToConvex => (1.0 - r * r).powi(3) * num * num / den.powi(7),
    }
}

/// `d/da J_{f_a}(r)` at `a = 1`, in closed form. Its root in `(0, 1)` is
/// exactly `n(alpha)` for the family.
pub fn cor4_derivative(kind: ConvexKind, r: f64) -> Result<f64, EvalError> {
    if !(0.0 < r && r < 1.0) {
        return Err(EvalError::InvalidParameter(format!(
            "derivative radius must lie in (0, 1), got {r}"
        )));
    }
    Ok(match kind {
        ConvexKind::Convex => {
            2.0 * (1.0 - r) * (1.0 - 5.0 * r + r * r) / (1.0 + r).powi(7)
        }
        ConvexKind::CloseToConvex => {
            2.0 * (1.0 - r).powi(3) * (1.0 - 7.0 * r + r * r) / (1.0 + r).powi(9)
        }
    })
}

/// Central difference in `a` of the closed-form Jacobian at `a = 1`,
/// the independent oracle for [`cor4_derivative`].
pub fn cor4_derivative_fd(kind: ConvexKind, r: f64, step: f64) -> f64 {
    (jacobian_subordinate(kind, 1.0 + step, r) - jacobian_subordinate(kind, 1.0 - step, r))
        / (2.0 * step)
}

/// The reflected extremal as analytic parts `(h, g)`.
fn base_parts(kind: ConvexKind) -> (AnalyticMap<f64>, AnalyticMap<f64>) {
    let zero = Complex::new(0.0, 0.0);
    let minus = Complex::new(-1.0, 0.0);
    let neg = AnalyticMap::polynomial(vec![zero, minus], DomainModel::UnitDisk);
    let (h, g) = match kind {
        ConvexKind::Convex => (AnalyticMap::halfplane_h(), AnalyticMap::halfplane_g()),
        ConvexKind::CloseToConvex => (AnalyticMap::koebe_h(), AnalyticMap::koebe_g()),
    };
    (
        h.compose_with(&neg).scale(minus),
        g.compose_with(&neg).scale(minus),
    )
}

/// The subordinated map `F(psi_a(z))` with its analytic parts composed
/// through `psi_a`.
pub fn subordinate_map(kind: ConvexKind, a: f64) -> Result<HarmonicMap<f64>, EvalError> {
    let (h, g) = base_parts(kind);
    let psi = AnalyticMap::subordination_psi(a)?;
    Ok(HarmonicMap::decomposed(
        h.compose_with(&psi),
        g.compose_with(&psi),
    ))
}

/// Jacobian via the analytic parts without the sense-preserving gate:
/// subordinated maps legitimately hit `J = 0` at the critical points of
/// `psi_a`, and those points still satisfy the majorization inequality.
fn jacobian_unsigned(f: &HarmonicMap<f64>, z: C<f64>) -> Result<f64, EvalError> {
    let ((hp, _), (gp, _)) = f.part_derivs(z)?;
    Ok(hp.norm_sqr() - gp.norm_sqr())
}

/// Outcome of the majorization experiment for one family.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MajorizationResult {
    pub alpha: f64,
    pub n_alpha: f64,
    /// True when `J_{f_a} <= J_F` held at every sampled point of the
    /// closed disk of radius `n_alpha`.
    pub inside_pass: bool,
    /// An `(a, r)` with `J_{f_a}(r) > J_F(r)` just beyond `n_alpha`, or
    /// `None` if the search failed to produce one.
    pub violation_point: Option<(f64, f64)>,
    /// Largest `J_{f_a}(z) - J_F(z)` seen inside the critical disk.
    pub worst_inside_residual: f64,
    pub samples: usize,
}

const INSIDE_TOL: f64 = 1e-9;

/// Sweeps `J_{f_a}(z) <= J_F(z)` over the closed disk `|z| <= n(alpha)`
/// for every `a` in `a_samples`, evaluating the actual composed maps on
/// a polar grid, then searches for a violation at radii in
/// `(n, n + 0.05]` with `a` in {0.90, 0.99, 0.999} via the closed forms.
pub fn check_majorization(
    kind: ConvexKind,
    a_samples: &[f64],
    n_radial: usize,
    n_angular: usize,
) -> Result<MajorizationResult, EvalError> {
    let alpha = kind.alpha();
    let n_alpha = majorization_radius(alpha)?;
    let base = subordinate_map(kind, 1.0)?;

    let mut worst = f64::NEG_INFINITY;
    let mut samples = 0usize;
    for &a in a_samples {
        let f_a = subordinate_map(kind, a)?;
        for i in 0..=n_radial {
            let r = n_alpha * i as f64 / n_radial as f64;
            for j in 0..n_angular {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / n_angular as f64;
                let z = Complex::from_polar(r, theta);
                let diff = jacobian_unsigned(&f_a, z)? - jacobian_unsigned(&base, z)?;
                samples += 1;
                if diff > worst {
                    worst = diff;
                }
                if r == 0.0 {
                    break;
                }
            }
        }
    }

    let mut violation = None;
    let mut best_excess = 0.0f64;
    for &a in &[0.90, 0.99, 0.999] {
        let mut k = 1usize;
        loop {
            let r = n_alpha + 1e-3 * k as f64;
            if r > n_alpha + 0.05 {
                break;
            }
            let excess = jacobian_subordinate(kind, a, r) - jacobian_subordinate(kind, 1.0, r);
            samples += 1;
            if excess > best_excess {
                best_excess = excess;
                violation = Some((a, r));
            }
            k += 1;
        }
    }

    Ok(MajorizationResult {
        alpha,
        n_alpha,
        inside_pass: worst <= INSIDE_TOL,
        violation_point: violation,
        worst_inside_residual: worst,
        samples,
    })
}

/// Wraps the majorization experiment as a check record: passing means
/// the inside sweep held and a violation beyond the radius was found.
pub fn majorization_as_check(kind: ConvexKind) -> Result<CheckResult, EvalError> {
    let a_samples: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let result = check_majorization(kind, &a_samples, 40, 24)?;
    let residual = if result.violation_point.is_some() {
        result.worst_inside_residual
    } else {
        1.0
    };
    let mut out = CheckResult::new(
        "majorization",
        "-",
        "disk",
        residual,
        Complex::new(result.n_alpha, 0.0),
        result.samples,
        INSIDE_TOL,
    )
    .with_param("family", kind.label())
    .with_param("alpha", result.alpha)
    .with_param("n_alpha", result.n_alpha);
    match result.violation_point {
        Some((a, r)) => {
            out = out.with_param("violation_a", a).with_param("violation_r", r);
        }
        None => out = out.with_note("no violation found beyond the critical radius"),
    }
    Ok(out)
}

/// Wraps the derivative criterion as a check record: the closed form
/// must vanish at `n(alpha)` (to `root_tol`) and match the central
/// difference oracle (to `fd_tol`) across a radius sweep.
pub fn cor4_as_check(kind: ConvexKind) -> Result<CheckResult, EvalError> {
    let root_tol = 1e-9;
    let fd_tol = 1e-6;
    let n_alpha = majorization_radius(kind.alpha())?;
    let root_gap = cor4_derivative(kind, n_alpha)?.abs();
    let mut worst = root_gap - root_tol;
    let mut worst_at = Complex::new(n_alpha, 0.0);
    let mut samples = 1usize;
    for i in 1..=30 {
        let r = 0.95 * i as f64 / 30.0;
        let gap = (cor4_derivative(kind, r)? - cor4_derivative_fd(kind, r, 1e-5)).abs();
        samples += 1;
        if gap - fd_tol > worst {
            worst = gap - fd_tol;
            worst_at = Complex::new(r, 0.0);
        }
    }
    Ok(CheckResult::new(
        "cor4-derivative",
        "-",
        "disk",
        worst,
        worst_at,
        samples,
        0.0,
    )
    .with_param("family", kind.label())
    .with_param("root_tol", root_tol)
    .with_param("fd_tol", fd_tol))
}
