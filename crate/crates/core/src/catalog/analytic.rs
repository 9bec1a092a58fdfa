//! Analytic maps as evaluable expression trees.
//!
//! An [`AnalyticMap`] pairs a closed-form expression with a domain of
//! definition and a list of guarded singular points. Evaluation produces a
//! second-order jet; all derivative propagation is exact (no differencing).

use super::quad::integrate_unit;
use crate::domain::DomainModel;
use crate::error::EvalError;
use crate::jet::{poly_jet, Jet2};
use crate::scalar::{c64_of, clit, Real, C};
use num_complex::Complex;

/// Evaluations closer than this to a declared singular point are rejected.
pub const SINGULARITY_GUARD: f64 = 1e-9;

/// Tolerance for antiderivative values recovered by quadrature.
const QUAD_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub(crate) enum Expr<T: Real> {
    Identity,
    Const(C<T>),
    /// Ratio of polynomials, coefficients ordered low to high.
    Rational { num: Vec<C<T>>, den: Vec<C<T>> },
    /// Principal-branch power of a sub-expression.
    Pow { base: Box<Expr<T>>, alpha: T },
    /// Kernel k_a(z) = (1 - ((1-z)/(1+z))^a) / (2a).
    KAlpha { alpha: T },
    /// Map defined by the derivative (1+kz)^a / (1-kz)^(a+1); with
    /// `with_z` set, the derivative carries an extra factor kz. Values are
    /// recovered by quadrature along the segment from 0.
    HkDeriv { k: T, a: T, with_z: bool },
    /// Jet with the only pole at `z = 1`: value `n0(z) u^-k`, first
    /// derivative `n1(z) u^-(k+1)`, second `n2(z) u^-(k+2)`, `u = 1-z`.
    /// The numerators are supplied in closed form: expanding the pole into
    /// monomials, or differentiating a factored product by the product
    /// rule, both cancel catastrophically (the first near `z = 1`, the
    /// second at interior zeros of the derivatives such as `z = -1`).
    PoleAtOne {
        n0: Vec<C<T>>,
        n1: Vec<C<T>>,
        n2: Vec<C<T>>,
        k: i32,
    },
    Scaled { factor: C<T>, inner: Box<Expr<T>> },
    Sum { lhs: Box<Expr<T>>, rhs: Box<Expr<T>> },
    Compose { outer: Box<Expr<T>>, inner: Box<Expr<T>> },
}

impl<T: Real> Expr<T> {
    /// Evaluates the jet. When `want_value` is false, expressions whose
    /// value needs quadrature leave the value slot at zero; derivative
    /// slots are always filled.
    fn jet(&self, z: C<T>, want_value: bool) -> Result<Jet2<T>, EvalError> {
        let czero = Complex::new(T::zero(), T::zero());
        match self {
            Expr::Identity => Ok(Jet2::variable(z)),
            Expr::Const(c) => Ok(Jet2::constant(*c)),
            Expr::Rational { num, den } => poly_jet(num, z).checked_div(poly_jet(den, z)),
            Expr::Pow { base, alpha } => base.jet(z, true)?.pow(*alpha),
            Expr::KAlpha { alpha } => {
                let one = Complex::new(T::one(), T::zero());
                let u = one - z;
                let v = one + z;
                let uv = u * v;
                if uv.norm_sqr() == T::zero() {
                    return Err(EvalError::DivisionByZero { point: None });
                }
                let q = (u / v).powf(*alpha);
                let two_alpha = Complex::new(*alpha + *alpha, T::zero());
                let alpha_c = Complex::new(*alpha, T::zero());
                let value = (one - q) / two_alpha;
                let d1 = q / uv;
                let d2 = (z - alpha_c) * q / (uv * uv) * Complex::new(T::lit(2.0), T::zero());
                Ok(Jet2::new(value, d1, d2))
            }
            Expr::HkDeriv { k, a, with_z } => {
                let one = Complex::new(T::one(), T::zero());
                let kz = z.scale(*k);
                let plus = one + kz;
                let minus = one - kz;
                if plus.norm_sqr() == T::zero() || minus.norm_sqr() == T::zero() {
                    return Err(EvalError::DivisionByZero { point: None });
                }
                let h1 = plus.powf(*a) * minus.powf(-(*a + T::one()));
                let log_deriv = (Complex::new(*a, T::zero()) / plus
                    + Complex::new(*a + T::one(), T::zero()) / minus)
                    .scale(*k);
                let h2 = h1 * log_deriv;
                let (d1, d2) = if *with_z {
                    (kz * h1, h1.scale(*k) + kz * h2)
                } else {
                    (h1, h2)
                };
                let value = if want_value {
                    let quad_tol = T::lit(QUAD_TOL);
                    let deriv_at = |t: T| -> C<T> {
                        let w = z.scale(t);
                        let kw = w.scale(*k);
                        let base = (one + kw).powf(*a) * (one - kw).powf(-(*a + T::one()));
                        let d = if *with_z { kw * base } else { base };
                        d * z
                    };
                    integrate_unit(&deriv_at, quad_tol)
                } else {
                    czero
                };
                Ok(Jet2::new(value, d1, d2))
            }
            Expr::Scaled { factor, inner } => {
                Ok(inner.jet(z, want_value)?.scale(*factor))
            }
            Expr::Sum { lhs, rhs } => Ok(lhs.jet(z, want_value)? + rhs.jet(z, want_value)?),
            Expr::PoleAtOne { n0, n1, n2, k } => {
                let one = Complex::new(T::one(), T::zero());
                let u = one - z;
                if u.norm_sqr() == T::zero() {
                    return Err(EvalError::DivisionByZero { point: None });
                }
                let inv = one / u;
                let p0 = inv.powi(*k);
                let p1 = p0 * inv;
                let p2 = p1 * inv;
                Ok(Jet2::new(
                    poly_jet(n0, z).value * p0,
                    poly_jet(n1, z).value * p1,
                    poly_jet(n2, z).value * p2,
                ))
            }
            Expr::Compose { outer, inner } => {
                let ij = inner.jet(z, true)?;
                let oj = outer.jet(ij.value, want_value)?;
                Ok(Jet2::compose(oj, ij))
            }
        }
    }
}

/// An analytic function together with its domain of definition and the
/// singular points guarded during evaluation.
#[derive(Clone, Debug)]
pub struct AnalyticMap<T: Real> {
    pub(crate) expr: Expr<T>,
    domain: DomainModel<T>,
    singular: Vec<C<T>>,
}

impl<T: Real> AnalyticMap<T> {
    pub(crate) fn from_parts(expr: Expr<T>, domain: DomainModel<T>, singular: Vec<C<T>>) -> Self {
        AnalyticMap {
            expr,
            domain,
            singular,
        }
    }

    pub fn domain(&self) -> &DomainModel<T> {
        &self.domain
    }

    pub fn singular_points(&self) -> &[C<T>] {
        &self.singular
    }

    fn guard(&self, z: C<T>) -> Result<(), EvalError> {
        if !self.domain.contains(z) {
            return Err(EvalError::OutsideDomain {
                point: c64_of(z),
                domain: self.domain.label().to_string(),
            });
        }
        let guard = T::lit(SINGULARITY_GUARD);
        for &s in &self.singular {
            if (z - s).norm() < guard {
                return Err(EvalError::NearSingularity {
                    point: c64_of(z),
                    singular: c64_of(s),
                    guard: SINGULARITY_GUARD,
                });
            }
        }
        Ok(())
    }

    /// Value and first two derivatives at `z`.
    pub fn eval_jet(&self, z: C<T>) -> Result<Jet2<T>, EvalError> {
        self.guard(z)?;
        self.expr.jet(z, true).map_err(|e| e.at(c64_of(z)))
    }

    /// First two derivatives, skipping any quadrature needed for values.
    pub fn eval_d12(&self, z: C<T>) -> Result<(C<T>, C<T>), EvalError> {
        self.guard(z)?;
        let jet = self.expr.jet(z, false).map_err(|e| e.at(c64_of(z)))?;
        Ok((jet.d1, jet.d2))
    }

    /// Value only.
    pub fn eval_value(&self, z: C<T>) -> Result<C<T>, EvalError> {
        Ok(self.eval_jet(z)?.value)
    }

    // ----- combinators -------------------------------------------------

    /// Composition `self` after `inner`; defined on `inner`'s domain.
    pub fn compose_with(&self, inner: &AnalyticMap<T>) -> AnalyticMap<T> {
        AnalyticMap::from_parts(
            Expr::Compose {
                outer: Box::new(self.expr.clone()),
                inner: Box::new(inner.expr.clone()),
            },
            inner.domain.clone(),
            inner.singular.clone(),
        )
    }

    /// Multiplies by a complex constant.
    pub fn scale(&self, factor: C<T>) -> AnalyticMap<T> {
        AnalyticMap::from_parts(
            Expr::Scaled {
                factor,
                inner: Box::new(self.expr.clone()),
            },
            self.domain.clone(),
            self.singular.clone(),
        )
    }

    /// Pointwise sum; both maps must share a domain.
    pub fn add(&self, other: &AnalyticMap<T>) -> AnalyticMap<T> {
        let mut singular = self.singular.clone();
        for &s in &other.singular {
            if !singular.iter().any(|&t| (t - s).norm() == T::zero()) {
                singular.push(s);
            }
        }
        AnalyticMap::from_parts(
            Expr::Sum {
                lhs: Box::new(self.expr.clone()),
                rhs: Box::new(other.expr.clone()),
            },
            self.domain.clone(),
            singular,
        )
    }

    /// Adds a complex constant.
    pub fn add_const(&self, c: C<T>) -> AnalyticMap<T> {
        AnalyticMap::from_parts(
            Expr::Sum {
                lhs: Box::new(self.expr.clone()),
                rhs: Box::new(Expr::Const(c)),
            },
            self.domain.clone(),
            self.singular.clone(),
        )
    }

    /// Principal-branch power of the map.
    pub fn pow(&self, alpha: T) -> AnalyticMap<T> {
        AnalyticMap::from_parts(
            Expr::Pow {
                base: Box::new(self.expr.clone()),
                alpha,
            },
            self.domain.clone(),
            self.singular.clone(),
        )
    }

    // ----- constructors ------------------------------------------------

    /// The identity on the given domain.
    pub fn identity(domain: DomainModel<T>) -> Self {
        AnalyticMap::from_parts(Expr::Identity, domain, Vec::new())
    }

    /// A constant function.
    pub fn constant(c: C<T>, domain: DomainModel<T>) -> Self {
        AnalyticMap::from_parts(Expr::Const(c), domain, Vec::new())
    }

    /// A polynomial with coefficients ordered low to high.
    pub fn polynomial(coeffs: Vec<C<T>>, domain: DomainModel<T>) -> Self {
        AnalyticMap::from_parts(
            Expr::Rational {
                num: coeffs,
                den: vec![Complex::new(T::one(), T::zero())],
            },
            domain,
            Vec::new(),
        )
    }

    /// Ratio of polynomials; the caller declares the guarded poles.
    pub fn rational(
        num: Vec<C<T>>,
        den: Vec<C<T>>,
        domain: DomainModel<T>,
        singular: Vec<C<T>>,
    ) -> Self {
        AnalyticMap::from_parts(Expr::Rational { num, den }, domain, singular)
    }

    /// Fractional linear map `(az + b) / (cz + d)`.
    pub fn mobius(
        a: C<T>,
        b: C<T>,
        c: C<T>,
        d: C<T>,
        domain: DomainModel<T>,
    ) -> Result<Self, EvalError> {
        if (a * d - b * c).norm_sqr() == T::zero() {
            return Err(EvalError::InvalidParameter(
                "mobius map needs ad - bc != 0".into(),
            ));
        }
        let singular = if c.norm_sqr() == T::zero() {
            Vec::new()
        } else {
            vec![-d / c]
        };
        Ok(AnalyticMap::from_parts(
            Expr::Rational {
                num: vec![b, a],
                den: vec![d, c],
            },
            domain,
            singular,
        ))
    }

    /// Disk automorphism `e^{i theta} (z0 + z) / (1 + conj(z0) z)`.
    pub fn disk_automorphism(z0: C<T>, theta: T) -> Result<Self, EvalError> {
        if z0.norm() >= T::one() {
            return Err(EvalError::InvalidParameter(format!(
                "disk automorphism needs |z0| < 1, got {}",
                c64_of(z0)
            )));
        }
        let rot = Complex::new(theta.cos(), theta.sin());
        let singular = if z0.norm_sqr() == T::zero() {
            Vec::new()
        } else {
            vec![-Complex::new(T::one(), T::zero()) / z0.conj()]
        };
        Ok(AnalyticMap::from_parts(
            Expr::Rational {
                num: vec![rot * z0, rot],
                den: vec![Complex::new(T::one(), T::zero()), z0.conj()],
            },
            DomainModel::UnitDisk,
            singular,
        ))
    }

    /// Subordination factor `psi_a(z) = z (a + z) / (1 + a z)` for `a` in `[0, 1]`.
    pub fn subordination_psi(a: T) -> Result<Self, EvalError> {
        if a < T::zero() || a > T::one() {
            return Err(EvalError::InvalidParameter(format!(
                "subordination parameter must lie in [0, 1], got {a}"
            )));
        }
        let zero = Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        let ac = Complex::new(a, T::zero());
        let singular = if a == T::zero() { Vec::new() } else { vec![-one / ac] };
        Ok(AnalyticMap::from_parts(
            Expr::Rational {
                num: vec![zero, ac, one],
                den: vec![one, ac],
            },
            DomainModel::UnitDisk,
            singular,
        ))
    }

    /// Analytic part of the harmonic Koebe map:
    /// `(z - z^2/2 + z^3/6) / (1-z)^3`, with `h' = (1+z)/(1-z)^4` and
    /// `h'' = (5+3z)/(1-z)^5`.
    pub fn koebe_h() -> Self {
        pole_at_one(
            vec![clit(0.0, 0.0), clit(1.0, 0.0), clit(-0.5, 0.0), clit(1.0 / 6.0, 0.0)],
            vec![clit(1.0, 0.0), clit(1.0, 0.0)],
            vec![clit(5.0, 0.0), clit(3.0, 0.0)],
            3,
        )
    }

    /// Co-analytic part of the harmonic Koebe map:
    /// `(z^2/2 + z^3/6) / (1-z)^3`, with `g' = z(1+z)/(1-z)^4` and
    /// `g'' = (1+5z+2z^2)/(1-z)^5`.
    pub fn koebe_g() -> Self {
        pole_at_one(
            vec![clit(0.0, 0.0), clit(0.0, 0.0), clit(0.5, 0.0), clit(1.0 / 6.0, 0.0)],
            vec![clit(0.0, 0.0), clit(1.0, 0.0), clit(1.0, 0.0)],
            vec![clit(1.0, 0.0), clit(5.0, 0.0), clit(2.0, 0.0)],
            3,
        )
    }

    /// Analytic part of the harmonic half-plane map:
    /// `(z - z^2/2) / (1-z)^2`, with `h' = 1/(1-z)^3`, `h'' = 3/(1-z)^4`.
    pub fn halfplane_h() -> Self {
        pole_at_one(
            vec![clit(0.0, 0.0), clit(1.0, 0.0), clit(-0.5, 0.0)],
            vec![clit(1.0, 0.0)],
            vec![clit(3.0, 0.0)],
            2,
        )
    }

    /// Co-analytic part of the harmonic half-plane map:
    /// `-z^2 / (2 (1-z)^2)`, with `g' = -z/(1-z)^3`,
    /// `g'' = -(1+2z)/(1-z)^4`.
    pub fn halfplane_g() -> Self {
        pole_at_one(
            vec![clit(0.0, 0.0), clit(0.0, 0.0), clit(-0.5, 0.0)],
            vec![clit(0.0, 0.0), clit(-1.0, 0.0)],
            vec![clit(-1.0, 0.0), clit(-2.0, 0.0)],
            2,
        )
    }

    /// Kernel `k_alpha(z) = (1 - ((1-z)/(1+z))^alpha) / (2 alpha)`, `alpha >= 1`.
    pub fn k_alpha(alpha: T) -> Result<Self, EvalError> {
        if alpha < T::one() {
            return Err(EvalError::InvalidParameter(format!(
                "kernel order must satisfy alpha >= 1, got {alpha}"
            )));
        }
        Ok(AnalyticMap::from_parts(
            Expr::KAlpha { alpha },
            DomainModel::UnitDisk,
            vec![clit(1.0, 0.0), clit(-1.0, 0.0)],
        ))
    }

    /// Map with derivative `(1+kz)^a / (1-kz)^(a+1)`; `k` in `(0, 1]`, `a >= 0`.
    pub fn h_k(k: T, a: T) -> Result<Self, EvalError> {
        check_hk_params(k, a)?;
        Ok(AnalyticMap::from_parts(
            Expr::HkDeriv { k, a, with_z: false },
            DomainModel::UnitDisk,
            hk_singular(k),
        ))
    }

    /// Map with derivative `kz (1+kz)^a / (1-kz)^(a+1)`.
    pub fn g_k(k: T, a: T) -> Result<Self, EvalError> {
        check_hk_params(k, a)?;
        Ok(AnalyticMap::from_parts(
            Expr::HkDeriv { k, a, with_z: true },
            DomainModel::UnitDisk,
            hk_singular(k),
        ))
    }

    /// Cayley map `(1+z)/(1-z)` from the disk onto the right half-plane.
    pub fn cayley() -> Self {
        AnalyticMap::mobius(
            clit(1.0, 0.0),
            clit(1.0, 0.0),
            clit(-1.0, 0.0),
            clit(1.0, 0.0),
            DomainModel::UnitDisk,
        )
        .expect("cayley determinant is 2")
    }

    /// Square of the Cayley map, from the disk onto the slit plane.
    pub fn cayley_sq() -> Self {
        AnalyticMap::cayley().pow(T::lit(2.0))
    }

    /// `(1-z)/(1+z)` from the right half-plane onto the disk.
    pub fn halfplane_to_disk() -> Self {
        AnalyticMap::mobius(
            clit(-1.0, 0.0),
            clit(1.0, 0.0),
            clit(1.0, 0.0),
            clit(1.0, 0.0),
            DomainModel::RightHalfPlane,
        )
        .expect("determinant is -2")
    }

    /// `(1 - sqrt(z)) / (1 + sqrt(z))` from the slit plane onto the disk.
    pub fn slit_to_disk() -> Self {
        let sqrt = AnalyticMap::from_parts(
            Expr::Pow {
                base: Box::new(Expr::Identity),
                alpha: T::lit(0.5),
            },
            DomainModel::SlitPlane,
            Vec::new(),
        );
        let mobius = AnalyticMap::mobius(
            clit(-1.0, 0.0),
            clit(1.0, 0.0),
            clit(1.0, 0.0),
            clit(1.0, 0.0),
            DomainModel::SlitPlane,
        )
        .expect("determinant is -2");
        mobius.compose_with(&sqrt)
    }
}

fn pole_at_one<T: Real>(
    n0: Vec<C<T>>,
    n1: Vec<C<T>>,
    n2: Vec<C<T>>,
    k: i32,
) -> AnalyticMap<T> {
    AnalyticMap::from_parts(
        Expr::PoleAtOne { n0, n1, n2, k },
        DomainModel::UnitDisk,
        vec![clit(1.0, 0.0)],
    )
}

fn check_hk_params<T: Real>(k: T, a: T) -> Result<(), EvalError> {
    if k <= T::zero() || k > T::one() {
        return Err(EvalError::InvalidParameter(format!(
            "dilatation slope must satisfy 0 < k <= 1, got {k}"
        )));
    }
    if a < T::zero() {
        return Err(EvalError::InvalidParameter(format!(
            "exponent must satisfy a >= 0, got {a}"
        )));
    }
    Ok(())
}

fn hk_singular<T: Real>(k: T) -> Vec<C<T>> {
    let inv = T::one() / k;
    vec![Complex::new(inv, T::zero()), Complex::new(-inv, T::zero())]
}

#[cfg(test)]
mod tests {
    use super::*;
    fn clit(re: f64, im: f64) -> crate::scalar::C<f64> {
        crate::scalar::clit(re, im)
    }

    type M = AnalyticMap<f64>;
    type C64 = Complex<f64>;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn koebe_h_derivatives_match_closed_forms() {
        // h'(z) = (1+z)/(1-z)^4, h''(z) = (5+3z)/(1-z)^5.
        let h = M::koebe_h();
        for &x in &[0.0, 0.3, -0.5] {
            let z = clit(x, 0.1);
            let (d1, d2) = h.eval_d12(z).unwrap();
            let one = clit(1.0, 0.0);
            let expect1 = (one + z) / (one - z).powf(4.0);
            let expect2 = (clit(5.0, 0.0) + z * 3.0) / (one - z).powf(5.0);
            assert!(close(d1, expect1, 1e-13));
            assert!(close(d2, expect2, 1e-13));
        }
    }

    #[test]
    fn halfplane_parts_and_dilatation() {
        // h' = 1/(1-z)^3 and g' = -z/(1-z)^3, so g'/h' = -z.
        let h = M::halfplane_h();
        let g = M::halfplane_g();
        let z = clit(0.5, 0.0);
        let (h1, _) = h.eval_d12(z).unwrap();
        let (g1, _) = g.eval_d12(z).unwrap();
        assert!(close(g1 / h1, clit(-0.5, 0.0), 1e-14));
        assert!(close(h1, clit(8.0, 0.0), 1e-14));
    }

    #[test]
    fn kernel_values_and_jets() {
        // k_1(z) = z/(1+z); at 0 the jet is (0, 1, -2 alpha).
        let k1 = M::k_alpha(1.0).unwrap();
        let v = k1.eval_value(clit(0.5, 0.0)).unwrap();
        assert!(close(v, clit(1.0 / 3.0, 0.0), 1e-14));
        for &alpha in &[1.0, 1.7, 2.5] {
            let k = M::k_alpha(alpha).unwrap();
            let jet = k.eval_jet(clit(0.0, 0.0)).unwrap();
            assert!(jet.value.norm() < 1e-15);
            assert!(close(jet.d1, clit(1.0, 0.0), 1e-14));
            assert!(close(jet.d2, clit(-2.0 * alpha, 0.0), 1e-13), "alpha {alpha}: {}", jet.d2);
        }
        assert!(M::k_alpha(0.5).is_err());
    }

    #[test]
    fn kernel_derivative_closed_form() {
        // k_alpha'(z) = (1-z)^(alpha-1) / (1+z)^(alpha+1).
        let alpha = 1.8;
        let k = M::k_alpha(alpha).unwrap();
        let z = clit(0.2, -0.4);
        let (d1, _) = k.eval_d12(z).unwrap();
        let one = clit(1.0, 0.0);
        let expect = (one - z).powf(alpha - 1.0) / (one + z).powf(alpha + 1.0);
        assert!(close(d1, expect, 1e-13));
    }

    #[test]
    fn hk_value_matches_log_for_a_zero() {
        // With a = 0 the derivative is 1/(1-kz), so the value is -ln(1-kz)/k.
        let k = 0.8;
        let h = M::h_k(k, 0.0).unwrap();
        let z = clit(0.5, 0.0);
        let v = h.eval_value(z).unwrap();
        let expect = -(clit(1.0, 0.0) - z * k).ln() / k;
        assert!(close(v, expect, 1e-9), "got {v}, want {expect}");
    }

    #[test]
    fn gk_derivative_carries_kz_factor() {
        let (k, a) = (0.7, 1.5);
        let h = M::h_k(k, a).unwrap();
        let g = M::g_k(k, a).unwrap();
        let z = clit(0.3, 0.2);
        let (h1, h2) = h.eval_d12(z).unwrap();
        let (g1, g2) = g.eval_d12(z).unwrap();
        assert!(close(g1, z * k * h1, 1e-13));
        assert!(close(g2, h1 * k + z * k * h2, 1e-13));
        assert!(M::h_k(0.0, 1.0).is_err());
        assert!(M::h_k(0.5, -1.0).is_err());
    }

    #[test]
    fn domain_and_singularity_guards() {
        let h = M::koebe_h();
        assert!(matches!(
            h.eval_jet(clit(1.5, 0.0)),
            Err(EvalError::OutsideDomain { .. })
        ));
        assert!(matches!(
            h.eval_jet(clit(1.0 - 1e-10, 0.0)),
            Err(EvalError::NearSingularity { .. })
        ));
        // 1e-6 from the singularity is still fine.
        assert!(h.eval_jet(clit(1.0 - 1e-6, 0.0)).is_ok());
    }

    #[test]
    fn automorphism_and_psi() {
        let phi = M::disk_automorphism(clit(0.3, 0.1), 0.7).unwrap();
        let jet = phi.eval_jet(clit(0.0, 0.0)).unwrap();
        let rot = Complex::from_polar(1.0, 0.7);
        assert!(close(jet.value, rot * clit(0.3, 0.1), 1e-15));
        // phi'(0) = e^{i theta} (1 - |z0|^2).
        assert!(close(jet.d1, rot * (1.0 - 0.1), 1e-14));
        assert!(M::disk_automorphism(clit(1.2, 0.0), 0.0).is_err());

        let psi1 = M::subordination_psi(1.0).unwrap();
        let z = clit(0.4, -0.2);
        assert!(close(psi1.eval_value(z).unwrap(), z, 1e-14));
        let psi0 = M::subordination_psi(0.0).unwrap();
        assert!(close(psi0.eval_value(z).unwrap(), z * z, 1e-14));
        assert!(M::subordination_psi(1.5).is_err());
    }

    #[test]
    fn chart_maps_compose() {
        // halfplane_to_disk(z) = (1-z)/(1+z) is undone by cayley at -w.
        let to_disk = M::halfplane_to_disk();
        let z = clit(2.0, 1.5);
        let w = to_disk.eval_value(z).unwrap();
        assert!(w.norm() < 1.0);
        let back = M::cayley().eval_value(-w).unwrap();
        assert!(close(back, z, 1e-14));

        // slit_to_disk(z) = (1 - sqrt z)/(1 + sqrt z); its inverse is
        // ((1-w)/(1+w))^2, i.e. cayley_sq at -w.
        let s = M::slit_to_disk();
        let z = clit(3.0, -2.0);
        let w = s.eval_value(z).unwrap();
        assert!(w.norm() < 1.0);
        let back = M::cayley_sq().eval_value(-w).unwrap();
        assert!(close(back, z, 1e-13));
    }
}
