//! Domain models and hyperbolic geometry.
//!
//! Each [`DomainModel`] knows its membership test, hyperbolic density
//! (normalized to curvature -4, so the disk density is `1/(1-|z|^2)`),
//! and Euclidean boundary distance. Domains without a closed-form density
//! pull the disk metric back through a conformal chart, inverted by Newton
//! iteration from a precomputed seed grid.

use crate::catalog::analytic::AnalyticMap;
use crate::error::EvalError;
use crate::norm::GridSpec;
use crate::scalar::{c64_of, Real, C};
use num_complex::Complex;
use std::sync::Arc;

/// Newton tolerance for inverting a conformal chart.
const INVERSION_TOL: f64 = 1e-12;
/// Newton iteration cap.
const INVERSION_MAX_ITERS: usize = 50;
/// Seed grid resolution (per axis) for chart inversion.
const SEED_GRID: usize = 32;

/// A hyperbolic domain in the plane.
#[derive(Clone, Debug)]
pub enum DomainModel<T: Real> {
    /// `|z| < 1`.
    UnitDisk,
    /// `Re z > 0`.
    RightHalfPlane,
    /// `|z| > 1`.
    ExteriorDisk,
    /// `0 < |z| < 1`.
    PuncturedDisk,
    /// The plane minus the ray `(-inf, 0]`.
    SlitPlane,
    /// Image of the disk under a stored conformal map; the density is the
    /// disk density pushed forward through the map.
    RiemannMapped(RiemannDomain<T>),
}

/// Conformal chart from the disk plus a seed grid for Newton inversion.
#[derive(Clone, Debug)]
pub struct RiemannDomain<T: Real> {
    map: Arc<AnalyticMap<T>>,
    seeds: Arc<Vec<(C<T>, C<T>)>>,
}

impl<T: Real> RiemannDomain<T> {
    /// Builds the chart wrapper and its seed grid. Fails if no seed point
    /// evaluates cleanly.
    pub fn new(map: AnalyticMap<T>) -> Result<Self, EvalError> {
        let mut seeds = Vec::with_capacity(SEED_GRID * SEED_GRID);
        for i in 0..SEED_GRID {
            let r = T::lit((i as f64 + 1.0) / (SEED_GRID as f64 + 1.0));
            for j in 0..SEED_GRID {
                let theta = T::lit(2.0 * std::f64::consts::PI * j as f64 / SEED_GRID as f64);
                let w = Complex::from_polar(r, theta);
                if let Ok(value) = map.eval_value(w) {
                    seeds.push((w, value));
                }
            }
        }
        if seeds.is_empty() {
            return Err(EvalError::InvalidParameter(
                "riemann chart produced no usable seed points".into(),
            ));
        }
        Ok(RiemannDomain {
            map: Arc::new(map),
            seeds: Arc::new(seeds),
        })
    }

    pub fn chart(&self) -> &AnalyticMap<T> {
        &self.map
    }

    /// Finds `w` in the disk with `map(w) = z` by Newton iteration from
    /// the nearest seed.
    pub fn invert(&self, z: C<T>) -> Result<C<T>, EvalError> {
        let mut w = self
            .seeds
            .iter()
            .min_by(|a, b| {
                let da = (a.1 - z).norm();
                let db = (b.1 - z).norm();
                da.partial_cmp(&db).unwrap_or(std::cmp::Ordering::Equal)
            })
            .map(|s| s.0)
            .expect("seed grid is nonempty");
        let tol = T::lit(INVERSION_TOL) * T::one().max(z.norm());
        let cap = T::one() - T::lit(1e-12);
        for _ in 0..INVERSION_MAX_ITERS {
            let jet = self
                .map
                .eval_jet(w)
                .map_err(|_| EvalError::InversionFailed { point: c64_of(z) })?;
            let residual = jet.value - z;
            if residual.norm() <= tol {
                return Ok(w);
            }
            if jet.d1.norm_sqr() == T::zero() {
                return Err(EvalError::InversionFailed { point: c64_of(z) });
            }
            w = w - residual / jet.d1;
            let r = w.norm();
            if r >= cap {
                w = w.scale(cap / r);
            }
        }
        Err(EvalError::InversionFailed { point: c64_of(z) })
    }
}

impl<T: Real> DomainModel<T> {
    /// Wraps a conformal chart from the disk as a domain model.
    pub fn riemann_mapped(map: AnalyticMap<T>) -> Result<Self, EvalError> {
        Ok(DomainModel::RiemannMapped(RiemannDomain::new(map)?))
    }

    /// Short stable name used in errors and reports.
    pub fn label(&self) -> &'static str {
        match self {
            DomainModel::UnitDisk => "disk",
            DomainModel::RightHalfPlane => "half-plane",
            DomainModel::ExteriorDisk => "exterior",
            DomainModel::PuncturedDisk => "punctured-disk",
            DomainModel::SlitPlane => "slit-plane",
            DomainModel::RiemannMapped(_) => "riemann-mapped",
        }
    }

    /// Strict interior membership.
    pub fn contains(&self, z: C<T>) -> bool {
        match self {
            DomainModel::UnitDisk => z.norm() < T::one(),
            DomainModel::RightHalfPlane => z.re > T::zero(),
            DomainModel::ExteriorDisk => z.norm() > T::one(),
            DomainModel::PuncturedDisk => {
                let r = z.norm();
                r > T::zero() && r < T::one()
            }
            DomainModel::SlitPlane => !(z.im == T::zero() && z.re <= T::zero()),
            DomainModel::RiemannMapped(rd) => rd.invert(z).is_ok(),
        }
    }

    /// Hyperbolic density (curvature -4).
    pub fn density(&self, z: C<T>) -> Result<T, EvalError> {
        Ok(T::one() / self.inv_density(z)?)
    }

    /// Reciprocal density, the weight in the pre-Schwarzian norm.
    pub fn inv_density(&self, z: C<T>) -> Result<T, EvalError> {
        let outside = || EvalError::OutsideDomain {
            point: c64_of(z),
            domain: self.label().to_string(),
        };
        match self {
            DomainModel::UnitDisk => {
                let r2 = z.norm_sqr();
                if r2 >= T::one() {
                    return Err(outside());
                }
                Ok(T::one() - r2)
            }
            DomainModel::RightHalfPlane => {
                if z.re <= T::zero() {
                    return Err(outside());
                }
                Ok(z.re + z.re)
            }
            DomainModel::ExteriorDisk => {
                let r2 = z.norm_sqr();
                if r2 <= T::one() {
                    return Err(outside());
                }
                Ok(r2 - T::one())
            }
            DomainModel::PuncturedDisk => {
                let r = z.norm();
                if r <= T::zero() || r >= T::one() {
                    return Err(outside());
                }
                Ok(T::lit(2.0) * r * (T::one() / r).ln())
            }
            DomainModel::SlitPlane => {
                if !self.contains(z) {
                    return Err(outside());
                }
                let s = z.sqrt();
                Ok(T::lit(4.0) * s.norm() * s.re)
            }
            DomainModel::RiemannMapped(rd) => {
                let w = rd.invert(z)?;
                let jet = rd.map.eval_jet(w)?;
                Ok((T::one() - w.norm_sqr()) * jet.d1.norm())
            }
        }
    }

    /// Euclidean distance to the boundary.
    pub fn boundary_distance(&self, z: C<T>) -> Result<T, EvalError> {
        let outside = || EvalError::OutsideDomain {
            point: c64_of(z),
            domain: self.label().to_string(),
        };
        if !self.contains(z) {
            return Err(outside());
        }
        match self {
            DomainModel::UnitDisk => Ok(T::one() - z.norm()),
            DomainModel::RightHalfPlane => Ok(z.re),
            DomainModel::ExteriorDisk => Ok(z.norm() - T::one()),
            DomainModel::PuncturedDisk => {
                let r = z.norm();
                Ok(r.min(T::one() - r))
            }
            DomainModel::SlitPlane => {
                // Nearest boundary point is on the slit: directly above or
                // below for Re z < 0, the tip otherwise.
                if z.re < T::zero() {
                    Ok(z.im.abs())
                } else {
                    Ok(z.norm())
                }
            }
            DomainModel::RiemannMapped(_) => Err(EvalError::UnsupportedDomain {
                op: "boundary_distance",
                domain: self.label().to_string(),
            }),
        }
    }
}

/// The weight `|z|^3 - |z|` used on the exterior disk.
///
/// This is not the reciprocal hyperbolic density (`|z|^2 - 1`); it is the
/// separate weight whose supremum can diverge even when the hyperbolic
/// norm stays finite.
pub fn exterior_weight<T: Real>(z: C<T>) -> Result<T, EvalError> {
    let r = z.norm();
    if r <= T::one() {
        return Err(EvalError::OutsideDomain {
            point: c64_of(z),
            domain: "exterior".into(),
        });
    }
    Ok(r * r * r - r)
}

/// Result of scanning `density * boundary_distance` over a domain.
#[derive(Clone, Debug)]
pub struct OsgoodEstimate<T: Real> {
    /// Smallest product found.
    pub infimum: T,
    /// Location of the smallest product.
    pub attained_at: C<T>,
    /// Running minimum after the base sweep and after each refinement
    /// round (rounds push samples closer to the boundary).
    pub history: Vec<T>,
    /// True when the refinement history keeps dropping at a non-collapsing
    /// rate, i.e. the product is heading to zero at some boundary locus
    /// rather than leveling off at a positive floor.
    pub trending_to_zero: bool,
}

/// Scans `density(z) * d(z, boundary)` for its infimum.
///
/// The base sweep uses the grid spec; each refinement round halves the
/// boundary margin and probes every ray again, so a product that decays at
/// the boundary (for example at the puncture of the punctured disk) keeps
/// lowering the running minimum.
pub fn osgood_infimum<T: Real>(
    domain: &DomainModel<T>,
    spec: &GridSpec,
) -> Result<OsgoodEstimate<T>, EvalError> {
    // Surface unsupported domains before scanning.
    probe_point(domain)?;

    let mut best = T::infinity();
    let mut best_at = Complex::new(T::zero(), T::zero());
    let mut history = Vec::with_capacity(spec.refine_rounds + 1);

    let consider = |z: C<T>, best: &mut T, best_at: &mut C<T>| {
        if let (Ok(density), Ok(dist)) = (domain.density(z), domain.boundary_distance(z)) {
            let product = density * dist;
            if product.is_finite() && product < *best {
                *best = product;
                *best_at = z;
            }
        }
    };

    let margin = T::lit(spec.boundary_margin);
    for i in 0..spec.n_theta {
        let theta = T::lit(2.0 * std::f64::consts::PI * i as f64 / spec.n_theta as f64);
        for j in 0..spec.n_r {
            let frac = T::lit((j as f64 + 1.0) / spec.n_r as f64);
            for z in radial_points(domain, theta, frac, margin) {
                consider(z, &mut best, &mut best_at);
            }
        }
    }
    history.push(best);

    for round in 1..=spec.refine_rounds {
        let m = margin / T::lit((1u64 << round.min(52)) as f64);
        for i in 0..spec.n_theta {
            let theta = T::lit(2.0 * std::f64::consts::PI * i as f64 / spec.n_theta as f64);
            for z in boundary_probes(domain, theta, m) {
                consider(z, &mut best, &mut best_at);
            }
        }
        history.push(best);
    }

    Ok(OsgoodEstimate {
        infimum: best,
        attained_at: best_at,
        trending_to_zero: detect_zero_trend(&history),
        history,
    })
}

/// A representative interior point, used to surface unsupported domains.
fn probe_point<T: Real>(domain: &DomainModel<T>) -> Result<T, EvalError> {
    let z = match domain {
        DomainModel::UnitDisk | DomainModel::PuncturedDisk => Complex::new(T::lit(0.5), T::zero()),
        DomainModel::RightHalfPlane | DomainModel::SlitPlane => {
            Complex::new(T::one(), T::zero())
        }
        DomainModel::ExteriorDisk => Complex::new(T::lit(2.0), T::zero()),
        DomainModel::RiemannMapped(_) => Complex::new(T::zero(), T::zero()),
    };
    domain.boundary_distance(z)
}

/// Base-sweep sample points along one ray, `frac` in `(0, 1]`.
fn radial_points<T: Real>(
    domain: &DomainModel<T>,
    theta: T,
    frac: T,
    margin: T,
) -> Vec<C<T>> {
    let dir = Complex::from_polar(T::one(), theta);
    match domain {
        DomainModel::UnitDisk | DomainModel::RiemannMapped(_) => {
            vec![dir.scale((T::one() - margin) * frac)]
        }
        DomainModel::RightHalfPlane => {
            let w = dir.scale((T::one() - margin) * frac);
            let one = Complex::new(T::one(), T::zero());
            vec![(one + w) / (one - w)]
        }
        DomainModel::SlitPlane => {
            let w = dir.scale((T::one() - margin) * frac);
            let one = Complex::new(T::one(), T::zero());
            let c = (one + w) / (one - w);
            vec![c * c]
        }
        DomainModel::PuncturedDisk => {
            // Geometric spacing reaches toward the puncture.
            let r = margin.powf(T::one() - frac) * (T::one() - margin).powf(frac);
            vec![dir.scale(r)]
        }
        DomainModel::ExteriorDisk => {
            let nine = T::lit(9.0);
            let s = margin.powf(T::one() - frac) * nine.powf(frac);
            vec![dir.scale(T::one() + s)]
        }
    }
}

/// Near-boundary probes for a refinement round with margin `m`.
fn boundary_probes<T: Real>(domain: &DomainModel<T>, theta: T, m: T) -> Vec<C<T>> {
    let dir = Complex::from_polar(T::one(), theta);
    match domain {
        DomainModel::UnitDisk | DomainModel::RiemannMapped(_) => vec![dir.scale(T::one() - m)],
        DomainModel::RightHalfPlane => {
            let w = dir.scale(T::one() - m);
            let one = Complex::new(T::one(), T::zero());
            vec![(one + w) / (one - w)]
        }
        DomainModel::SlitPlane => {
            let w = dir.scale(T::one() - m);
            let one = Complex::new(T::one(), T::zero());
            let c = (one + w) / (one - w);
            vec![c * c]
        }
        DomainModel::PuncturedDisk => vec![dir.scale(m), dir.scale(T::one() - m)],
        DomainModel::ExteriorDisk => {
            // Probe both the circle and the outward direction.
            vec![dir.scale(T::one() + m), dir.scale(T::lit(10.0) / m.sqrt().max(T::lit(1e-6)))]
        }
    }
}

/// Distinguishes "keeps dropping toward zero" from "levels off".
///
/// A sequence converging to a positive floor has decrements that shrink
/// geometrically (ratio about 2 under margin halving); a product heading
/// to zero keeps decrements comparable between rounds.
fn detect_zero_trend<T: Real>(history: &[T]) -> bool {
    if history.len() < 5 {
        return false;
    }
    let decrements: Vec<T> = history
        .windows(2)
        .map(|w| w[0] - w[1])
        .collect();
    let tail = &decrements[decrements.len().saturating_sub(6)..];
    let floor = T::lit(1e-9);
    if tail.iter().any(|&d| d <= floor) {
        return false;
    }
    let mut ratios = Vec::new();
    for w in tail.windows(2) {
        ratios.push(w[0] / w[1]);
    }
    let mean = ratios.iter().fold(T::zero(), |acc, &r| acc + r) / T::lit(ratios.len() as f64);
    mean < T::lit(1.5)
}
