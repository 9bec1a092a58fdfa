//! Harmonic maps `f = h + conj(g)` and the named example maps.
//!
//! Most examples carry an explicit analytic decomposition; the few that
//! live on other domains (exterior disk, half-plane, slit plane) are
//! stored as closed-form Jacobian / pre-Schwarzian pairs instead, checked
//! at construction against a finite-difference derivative of `log J`.

use crate::catalog::analytic::AnalyticMap;
use crate::domain::DomainModel;
use crate::error::EvalError;
use crate::jet::{default_step, numeric_wirtinger};
use crate::scalar::{c64_of, Real, C};
use num_complex::Complex;
use std::fmt;
use std::sync::Arc;

type PointFn<T> = Arc<dyn Fn(C<T>) -> Result<C<T>, EvalError> + Send + Sync>;
type RealFn<T> = Arc<dyn Fn(C<T>) -> Result<T, EvalError> + Send + Sync>;

/// First and second derivative of one analytic part at a point.
pub type DerivPair<T> = (C<T>, C<T>);

/// Relative tolerance for the construction-time check of a closed-form
/// pre-Schwarzian against the derivative of `log J`.
const VALIDATION_TOL: f64 = 1e-6;
/// Minimum number of probe points that must evaluate cleanly.
const VALIDATION_MIN_PROBES: usize = 10;

/// Harmonic map given by closed forms for `J_f` and `P_f` plus a value
/// sampler, with no stored `h + conj(g)` split.
#[derive(Clone)]
pub struct DirectMap<T: Real> {
    label: &'static str,
    domain: DomainModel<T>,
    jacobian: RealFn<T>,
    presch: PointFn<T>,
    sampler: PointFn<T>,
}

impl<T: Real> fmt::Debug for DirectMap<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DirectMap")
            .field("label", &self.label)
            .field("domain", &self.domain.label())
            .finish()
    }
}

impl<T: Real> DirectMap<T> {
    /// Builds a direct map and cross-checks the stored pre-Schwarzian
    /// against a numeric Wirtinger derivative of `log J` at probe points.
    pub fn new(
        label: &'static str,
        domain: DomainModel<T>,
        jacobian: RealFn<T>,
        presch: PointFn<T>,
        sampler: PointFn<T>,
    ) -> Result<Self, EvalError> {
        let map = DirectMap {
            label,
            domain,
            jacobian,
            presch,
            sampler,
        };
        map.validate()?;
        Ok(map)
    }

    fn validate(&self) -> Result<(), EvalError> {
        let mut checked = 0usize;
        for z in probe_points(&self.domain) {
            let j = match self.jacobian_at(z) {
                Ok(j) => j,
                Err(_) => continue,
            };
            if j <= T::zero() || !j.is_finite() {
                return Err(EvalError::NotSensePreserving {
                    point: c64_of(z),
                    jacobian: j.as_f64(),
                });
            }
            let p = self.presch_at(z)?;
            let log_j = |w: C<T>| -> Result<C<T>, EvalError> {
                let jw = self.jacobian_at(w)?;
                Ok(Complex::new(jw.ln(), T::zero()))
            };
            let fd = match numeric_wirtinger(log_j, z, default_step(z)) {
                Ok(pair) => pair.dz,
                Err(_) => continue,
            };
            let err = (p - fd).norm();
            if err > T::lit(VALIDATION_TOL) * T::one().max(p.norm()) {
                return Err(EvalError::InvalidParameter(format!(
                    "direct map {}: pre-Schwarzian {} disagrees with d/dz log J {} at {}",
                    self.label, p, fd, z
                )));
            }
            checked += 1;
        }
        if checked < VALIDATION_MIN_PROBES {
            return Err(EvalError::InvalidParameter(format!(
                "direct map {}: only {} of the probe points evaluated",
                self.label, checked
            )));
        }
        Ok(())
    }

    pub fn label(&self) -> &'static str {
        self.label
    }

    pub fn domain(&self) -> &DomainModel<T> {
        &self.domain
    }

    fn guard(&self, z: C<T>) -> Result<(), EvalError> {
        if self.domain.contains(z) {
            Ok(())
        } else {
            Err(EvalError::OutsideDomain {
                point: c64_of(z),
                domain: self.domain.label().to_string(),
            })
        }
    }

    pub fn jacobian_at(&self, z: C<T>) -> Result<T, EvalError> {
        self.guard(z)?;
        (self.jacobian)(z)
    }

    pub fn presch_at(&self, z: C<T>) -> Result<C<T>, EvalError> {
        self.guard(z)?;
        (self.presch)(z)
    }

    pub fn value_at(&self, z: C<T>) -> Result<C<T>, EvalError> {
        self.guard(z)?;
        (self.sampler)(z)
    }
}

/// A planar harmonic map.
#[derive(Clone, Debug)]
pub enum HarmonicMap<T: Real> {
    /// `f = h + conj(g)` with analytic `h`, `g` on a shared domain.
    Decomposed {
        h: AnalyticMap<T>,
        g: AnalyticMap<T>,
    },
    /// Closed-form Jacobian / pre-Schwarzian / sampler bundle.
    Direct(DirectMap<T>),
}

impl<T: Real> HarmonicMap<T> {
    pub fn decomposed(h: AnalyticMap<T>, g: AnalyticMap<T>) -> Self {
        HarmonicMap::Decomposed { h, g }
    }

    pub fn domain(&self) -> &DomainModel<T> {
        match self {
            HarmonicMap::Decomposed { h, .. } => h.domain(),
            HarmonicMap::Direct(d) => d.domain(),
        }
    }

    /// The analytic parts, when stored.
    pub fn parts(&self) -> Result<(&AnalyticMap<T>, &AnalyticMap<T>), EvalError> {
        match self {
            HarmonicMap::Decomposed { h, g } => Ok((h, g)),
            HarmonicMap::Direct(d) => Err(EvalError::RequiresDecomposition { op: d.label() }),
        }
    }

    pub fn direct(&self) -> Option<&DirectMap<T>> {
        match self {
            HarmonicMap::Direct(d) => Some(d),
            HarmonicMap::Decomposed { .. } => None,
        }
    }

    /// `f(z)` itself.
    pub fn value(&self, z: C<T>) -> Result<C<T>, EvalError> {
        match self {
            HarmonicMap::Decomposed { h, g } => Ok(h.eval_value(z)? + g.eval_value(z)?.conj()),
            HarmonicMap::Direct(d) => d.value_at(z),
        }
    }

    /// First and second derivatives of both parts: `((h', h''), (g', g''))`.
    pub fn part_derivs(&self, z: C<T>) -> Result<(DerivPair<T>, DerivPair<T>), EvalError> {
        let (h, g) = self.parts()?;
        Ok((h.eval_d12(z)?, g.eval_d12(z)?))
    }

    /// The affine image `a*f + b*conj(f) + c`, regrouped into analytic
    /// parts. Needs `|a| > |b|` to stay sense-preserving.
    pub fn affine_image(&self, a: C<T>, b: C<T>, c: C<T>) -> Result<HarmonicMap<T>, EvalError> {
        if a.norm() <= b.norm() {
            return Err(EvalError::OrientationLoss {
                a_mod: a.norm().as_f64(),
                b_mod: b.norm().as_f64(),
            });
        }
        let (h, g) = self.parts()?;
        let new_h = h.scale(a).add(&g.scale(b)).add_const(c);
        let new_g = g.scale(a.conj()).add(&h.scale(b.conj()));
        Ok(HarmonicMap::decomposed(new_h, new_g))
    }
}

/// The harmonic Koebe map `K` on the disk.
pub fn harmonic_koebe<T: Real>() -> HarmonicMap<T> {
    HarmonicMap::decomposed(AnalyticMap::koebe_h(), AnalyticMap::koebe_g())
}

/// The harmonic half-plane map `L` on the disk.
pub fn half_plane_map<T: Real>() -> HarmonicMap<T> {
    HarmonicMap::decomposed(AnalyticMap::halfplane_h(), AnalyticMap::halfplane_g())
}

/// `f = k_alpha + conj(b1 * k_alpha)`, the order-`alpha` extremal with
/// constant dilatation `b1`.
pub fn f_alpha<T: Real>(alpha: T, b1: C<T>) -> Result<HarmonicMap<T>, EvalError> {
    if b1.norm() >= T::one() {
        return Err(EvalError::NotSensePreserving {
            point: Complex::new(0.0, 0.0),
            jacobian: (T::one() - b1.norm_sqr()).as_f64(),
        });
    }
    let h = AnalyticMap::k_alpha(alpha)?;
    let g = h.scale(b1);
    Ok(HarmonicMap::decomposed(h, g))
}

/// The two-parameter disk family with `h' = (1+kz)^a / (1-kz)^(a+1)` and
/// dilatation `kz`.
pub fn f_k_family<T: Real>(k: T, a: T) -> Result<HarmonicMap<T>, EvalError> {
    Ok(HarmonicMap::decomposed(
        AnalyticMap::h_k(k, a)?,
        AnalyticMap::g_k(k, a)?,
    ))
}

/// `f(z) = z` on the disk.
pub fn identity_map<T: Real>() -> HarmonicMap<T> {
    analytic_as_harmonic(AnalyticMap::identity(DomainModel::UnitDisk))
}

/// Wraps an analytic map as a harmonic map with vanishing conjugate part.
pub fn analytic_as_harmonic<T: Real>(h: AnalyticMap<T>) -> HarmonicMap<T> {
    let g = AnalyticMap::constant(Complex::new(T::zero(), T::zero()), h.domain().clone());
    HarmonicMap::decomposed(h, g)
}

/// `F(z) = z - 1/conj(z) + 2 log|z|` on the exterior disk.
///
/// Its Jacobian-weighted pre-Schwarzian stays bounded in the hyperbolic
/// weight but blows up under the weight `|z|^3 - |z|`.
pub fn exterior_counterexample<T: Real>() -> Result<HarmonicMap<T>, EvalError> {
    let jacobian: RealFn<T> = Arc::new(|z: C<T>| {
        let one = Complex::new(T::one(), T::zero());
        let r2 = z.norm_sqr();
        Ok((one + z).norm_sqr() * (r2 - T::one()) / (r2 * r2))
    });
    let presch: PointFn<T> = Arc::new(|z: C<T>| {
        let one = Complex::new(T::one(), T::zero());
        let r2 = z.norm_sqr();
        let num = Complex::new(T::lit(2.0) - r2, T::zero()) + z;
        let den = z * (z + one) * Complex::new(r2 - T::one(), T::zero());
        Ok(num / den)
    });
    let sampler: PointFn<T> = Arc::new(|z: C<T>| {
        let one = Complex::new(T::one(), T::zero());
        Ok(z - one / z.conj() + Complex::new(T::lit(2.0) * z.norm().ln(), T::zero()))
    });
    Ok(HarmonicMap::Direct(DirectMap::new(
        "exterior-log",
        DomainModel::ExteriorDisk,
        jacobian,
        presch,
        sampler,
    )?))
}

/// The slit-plane transplant of the harmonic Koebe map,
/// `K((1 - sqrt(z)) / (1 + sqrt(z)))` on the plane minus `(-inf, 0]`.
pub fn slit_plane_example<T: Real>() -> Result<HarmonicMap<T>, EvalError> {
    let jacobian: RealFn<T> = Arc::new(|z: C<T>| {
        let s = z.sqrt();
        let r = z.norm();
        Ok((s + s.conj()).re / (T::lit(32.0) * r * r * r * r * r))
    });
    let presch: PointFn<T> = Arc::new(|z: C<T>| {
        let r = Complex::new(z.norm(), T::zero());
        let two = Complex::new(T::lit(2.0), T::zero());
        let num = r.scale(T::lit(5.0)) + z.scale(T::lit(4.0));
        let den = two * z * (r + z);
        Ok(-num / den)
    });
    let sampler: PointFn<T> = Arc::new(|z: C<T>| {
        // h, g from composing the Koebe parts through (1-sqrt z)/(1+sqrt z),
        // reduced to explicit powers of z.
        let s = z.sqrt();
        let zi = Complex::new(T::one(), T::zero()) / z;
        let z32 = zi / s;
        let c = T::lit(1.0 / 24.0);
        let h = (z32.scale(T::lit(2.0)) + zi.scale(T::lit(3.0))
            + Complex::new(T::lit(-5.0), T::zero()))
        .scale(c);
        let g = (z32.scale(T::lit(2.0)) - zi.scale(T::lit(3.0))
            + Complex::new(T::one(), T::zero()))
        .scale(c);
        Ok(h + g.conj())
    });
    Ok(HarmonicMap::Direct(DirectMap::new(
        "slit-koebe",
        DomainModel::SlitPlane,
        jacobian,
        presch,
        sampler,
    )?))
}

/// The half-plane transplant of the harmonic Koebe map,
/// `K((1-z)/(1+z))` on `Re z > 0`.
pub fn halfplane_remark3<T: Real>() -> Result<HarmonicMap<T>, EvalError> {
    let jacobian: RealFn<T> = Arc::new(|z: C<T>| {
        let r2 = z.norm_sqr();
        let r8 = r2 * r2 * r2 * r2;
        Ok((z + z.conj()).re / (T::lit(8.0) * r8))
    });
    let presch: PointFn<T> = Arc::new(|z: C<T>| {
        let zb = z.conj();
        let num = z.scale(T::lit(3.0)) + zb.scale(T::lit(4.0));
        Ok(-num / (z * (z + zb)))
    });
    let koebe_h = AnalyticMap::<T>::koebe_h();
    let koebe_g = AnalyticMap::<T>::koebe_g();
    let chart = AnalyticMap::<T>::halfplane_to_disk();
    let sampler: PointFn<T> = Arc::new(move |z: C<T>| {
        let w = chart.eval_value(z)?;
        Ok(koebe_h.eval_value(w)? + koebe_g.eval_value(w)?.conj())
    });
    Ok(HarmonicMap::Direct(DirectMap::new(
        "halfplane-koebe",
        DomainModel::RightHalfPlane,
        jacobian,
        presch,
        sampler,
    )?))
}

/// `f(z) = 1/z` on the punctured disk.
///
/// Kept in closed form so the pre-Schwarzian `-2/z` stays evaluable at
/// radii far below the underflow range of the jet pipeline (the weighted
/// modulus first exceeds 1000 near `|z| = e^-250`).
pub fn recip_punctured<T: Real>() -> Result<HarmonicMap<T>, EvalError> {
    let jacobian: RealFn<T> = Arc::new(|z: C<T>| {
        let r2 = z.norm_sqr();
        Ok(T::one() / (r2 * r2))
    });
    let presch: PointFn<T> =
        Arc::new(|z: C<T>| Ok(Complex::new(T::lit(-2.0), T::zero()) / z));
    let sampler: PointFn<T> =
        Arc::new(|z: C<T>| Ok(Complex::new(T::one(), T::zero()) / z));
    Ok(HarmonicMap::Direct(DirectMap::new(
        "reciprocal",
        DomainModel::PuncturedDisk,
        jacobian,
        presch,
        sampler,
    )?))
}

/// Probe points for construction-time validation, chosen at moderate
/// distance from boundaries and singularities.
fn probe_points<T: Real>(domain: &DomainModel<T>) -> Vec<C<T>> {
    let polar = |radii: &[f64], angles: &[f64]| -> Vec<C<T>> {
        let mut out = Vec::with_capacity(radii.len() * angles.len());
        for &r in radii {
            for &t in angles {
                out.push(Complex::from_polar(T::lit(r), T::lit(t)));
            }
        }
        out
    };
    match domain {
        DomainModel::UnitDisk | DomainModel::RiemannMapped(_) => {
            polar(&[0.15, 0.35, 0.55, 0.75], &[0.3, 1.1, 2.2, 3.9, 5.1])
        }
        DomainModel::PuncturedDisk => {
            polar(&[0.12, 0.3, 0.55, 0.8], &[0.3, 1.1, 2.2, 3.9, 5.1])
        }
        DomainModel::ExteriorDisk => {
            polar(&[1.35, 1.8, 2.5, 4.0], &[0.3, 1.1, 2.2, 3.9, 5.1])
        }
        DomainModel::RightHalfPlane => {
            let mut out = Vec::with_capacity(20);
            for &x in &[0.4, 1.1, 2.3, 4.0] {
                for &y in &[-2.2, -0.6, 0.3, 1.4, 3.1] {
                    out.push(Complex::new(T::lit(x), T::lit(y)));
                }
            }
            out
        }
        DomainModel::SlitPlane => {
            polar(&[0.3, 1.0, 2.7, 5.5], &[-2.2, -1.0, 0.15, 0.9, 2.4])
        }
    }
}

/// An affine and linear invariant family, identified by the constants
/// that drive its sharp bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family<T: Real> {
    /// Convex harmonic maps; specified order 3/2, order 2.
    Convex,
    /// Close-to-convex harmonic maps; specified order 5/2, order 3.
    CloseToConvex,
    /// All sense-preserving univalent harmonic maps. The specified order
    /// is not known; the conjectured value 5/2 is the usual default, so
    /// it is a parameter here and results depending on it are flagged.
    Univalent { alpha0: T },
    /// Affine images of the universal linear invariant family of the
    /// given order; specified order and order coincide.
    OfOrder { alpha: T },
}

impl<T: Real> Family<T> {
    pub fn label(&self) -> &'static str {
        match self {
            Family::Convex => "convex",
            Family::CloseToConvex => "close-to-convex",
            Family::Univalent { .. } => "s-h",
            Family::OfOrder { .. } => "f-alpha",
        }
    }

    /// Specified order: sup of `|h''(0)|/2` over members with `g'(0)=0`.
    pub fn alpha0(&self) -> T {
        match self {
            Family::Convex => T::lit(1.5),
            Family::CloseToConvex => T::lit(2.5),
            Family::Univalent { alpha0 } => *alpha0,
            Family::OfOrder { alpha } => *alpha,
        }
    }

    /// Order: sup of `|h''(0)|/2` over the whole family.
    pub fn alpha(&self) -> T {
        match self {
            Family::Convex => T::lit(2.0),
            Family::CloseToConvex => T::lit(3.0),
            Family::Univalent { alpha0 } => *alpha0 + T::lit(0.5),
            Family::OfOrder { alpha } => *alpha,
        }
    }

    /// True when conclusions hinge on the unproven value of the
    /// specified order.
    pub fn conjectural(&self) -> bool {
        matches!(self, Family::Univalent { .. })
    }

    /// A member attaining the family's sharp bounds, with second
    /// dilatation coefficient `b1`.
    pub fn extremal(&self, b1: C<T>) -> Result<HarmonicMap<T>, EvalError> {
        if b1.norm() >= T::one() {
            return Err(EvalError::NotSensePreserving {
                point: Complex::new(0.0, 0.0),
                jacobian: (T::one() - b1.norm_sqr()).as_f64(),
            });
        }
        let zero = Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        match self {
            Family::Convex => half_plane_map().affine_image(one, b1.conj(), zero),
            Family::CloseToConvex => harmonic_koebe().affine_image(one, b1.conj(), zero),
            Family::Univalent { alpha0 } => f_alpha(*alpha0, b1),
            Family::OfOrder { alpha } => f_alpha(*alpha, b1),
        }
    }
}
