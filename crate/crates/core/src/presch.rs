//! Jacobian, dilatation, and the harmonic pre-Schwarzian derivative
//! `P_f = (log J_f)_z`, together with the chain rule and the
//! renormalizing Koebe / affine transforms.

use crate::catalog::analytic::AnalyticMap;
use crate::catalog::harmonic::HarmonicMap;
use crate::error::EvalError;
use crate::jet::{default_step, numeric_wirtinger};
use crate::scalar::{c64_of, Real, C};
use num_complex::Complex;

/// Pointwise derivative data of a harmonic map.
#[derive(Clone, Copy, Debug)]
pub struct PreschValue<T: Real> {
    /// `P_f(z) = (log J_f)_z`.
    pub p: C<T>,
    /// `J_f(z) = |h'|^2 - |g'|^2`, positive for sense-preserving maps.
    pub jacobian: T,
    /// `g'/h'`, when the map carries its analytic parts.
    pub omega: Option<C<T>>,
}

/// `J_f(z)`, rejecting non-positive values.
pub fn jacobian<T: Real>(f: &HarmonicMap<T>, z: C<T>) -> Result<T, EvalError> {
    let j = match f {
        HarmonicMap::Decomposed { .. } => {
            let ((hp, _), (gp, _)) = f.part_derivs(z)?;
            hp.norm_sqr() - gp.norm_sqr()
        }
        HarmonicMap::Direct(d) => d.jacobian_at(z)?,
    };
    if j > T::zero() {
        Ok(j)
    } else {
        Err(EvalError::NotSensePreserving {
            point: c64_of(z),
            jacobian: j.as_f64(),
        })
    }
}

/// `omega_f(z) = g'(z)/h'(z)`, rejecting moduli at or above 1.
pub fn dilatation<T: Real>(f: &HarmonicMap<T>, z: C<T>) -> Result<C<T>, EvalError> {
    let ((hp, _), (gp, _)) = f.part_derivs(z)?;
    let j = hp.norm_sqr() - gp.norm_sqr();
    if j <= T::zero() {
        return Err(EvalError::NotSensePreserving {
            point: c64_of(z),
            jacobian: j.as_f64(),
        });
    }
    Ok(gp / hp)
}

/// Full pointwise data: `P_f`, `J_f`, and the dilatation if available.
pub fn pre_schwarzian<T: Real>(f: &HarmonicMap<T>, z: C<T>) -> Result<PreschValue<T>, EvalError> {
    match f {
        HarmonicMap::Decomposed { .. } => {
            let ((hp, hpp), (gp, gpp)) = f.part_derivs(z)?;
            let j = hp.norm_sqr() - gp.norm_sqr();
            if j <= T::zero() {
                return Err(EvalError::NotSensePreserving {
                    point: c64_of(z),
                    jacobian: j.as_f64(),
                });
            }
            let omega = gp / hp;
            let omega_d = (gpp - omega * hpp) / hp;
            let denom = T::one() - omega.norm_sqr();
            let p = hpp / hp - omega.conj() * omega_d / Complex::new(denom, T::zero());
            Ok(PreschValue {
                p,
                jacobian: j,
                omega: Some(omega),
            })
        }
        HarmonicMap::Direct(d) => Ok(PreschValue {
            p: d.presch_at(z)?,
            jacobian: d.jacobian_at(z)?,
            omega: None,
        }),
    }
}

/// `P_f(z)` alone.
///
/// For closed-form maps this never touches the Jacobian, which matters
/// when `J` overflows long before `P` does (reciprocal map at radii
/// around 1e-100).
pub fn presch_at<T: Real>(f: &HarmonicMap<T>, z: C<T>) -> Result<C<T>, EvalError> {
    match f {
        HarmonicMap::Decomposed { .. } => Ok(pre_schwarzian(f, z)?.p),
        HarmonicMap::Direct(d) => d.presch_at(z),
    }
}

/// `h''/h'` of an analytic map.
pub fn pre_schwarzian_analytic<T: Real>(
    h: &AnalyticMap<T>,
    z: C<T>,
) -> Result<C<T>, EvalError> {
    let (d1, d2) = h.eval_d12(z)?;
    if d1.norm_sqr() == T::zero() {
        return Err(EvalError::DivisionByZero {
            point: Some(c64_of(z)),
        });
    }
    Ok(d2 / d1)
}

/// Independent oracle for `P_f`: a finite-difference Wirtinger derivative
/// of `log J_f`.
pub fn presch_oracle<T: Real>(f: &HarmonicMap<T>, z: C<T>) -> Result<C<T>, EvalError> {
    let log_j = |w: C<T>| -> Result<C<T>, EvalError> {
        Ok(Complex::new(jacobian(f, w)?.ln(), T::zero()))
    };
    Ok(numeric_wirtinger(log_j, z, default_step(z))?.dz)
}

/// The analytic map `h + eps*g` for `|eps| <= 1`.
pub fn h_plus_eps_g<T: Real>(
    f: &HarmonicMap<T>,
    eps: C<T>,
) -> Result<AnalyticMap<T>, EvalError> {
    if eps.norm() > T::one() + T::lit(1e-12) {
        return Err(EvalError::InvalidParameter(format!(
            "eps must lie in the closed unit disk, got modulus {}",
            eps.norm()
        )));
    }
    let (h, g) = f.parts()?;
    Ok(h.add(&g.scale(eps)))
}

/// `f` composed with a conformal map into its domain; the result lives on
/// the domain of `phi` and obeys `P_{f∘phi} = P_f(phi)·phi' + P_phi`.
pub fn compose_conformal<T: Real>(
    f: &HarmonicMap<T>,
    phi: &AnalyticMap<T>,
) -> Result<HarmonicMap<T>, EvalError> {
    let (h, g) = f.parts()?;
    Ok(HarmonicMap::decomposed(
        h.compose_with(phi),
        g.compose_with(phi),
    ))
}

/// The affine transform `A_eps(f) = (f + eps*conj(f)) / (1 + eps*g'(0))`,
/// which renormalizes `h'(0)` back to 1.
pub fn affine_transform<T: Real>(
    f: &HarmonicMap<T>,
    eps: C<T>,
) -> Result<HarmonicMap<T>, EvalError> {
    if eps.norm() >= T::one() {
        return Err(EvalError::InvalidParameter(format!(
            "eps must lie in the open unit disk, got modulus {}",
            eps.norm()
        )));
    }
    let (_, g) = f.parts()?;
    let origin = Complex::new(T::zero(), T::zero());
    let (gp0, _) = g.eval_d12(origin)?;
    let d = Complex::new(T::one(), T::zero()) + eps * gp0;
    if d.norm() < T::lit(1e-14) {
        return Err(EvalError::DegenerateNormalization {
            op: "affine_transform",
            denom: c64_of(d),
        });
    }
    let one_over = Complex::new(T::one(), T::zero()) / d;
    f.affine_image(one_over, eps / d, origin)
}

/// The Koebe transform `K_phi(f) = (f∘phi - f(phi(0))) / (phi'(0) h'(phi(0)))`
/// for a disk automorphism `phi`; the result fixes 0 with h-part
/// derivative 1 there.
pub fn koebe_transform<T: Real>(
    f: &HarmonicMap<T>,
    phi: &AnalyticMap<T>,
) -> Result<HarmonicMap<T>, EvalError> {
    let (h, g) = f.parts()?;
    let origin = Complex::new(T::zero(), T::zero());
    let phi0 = phi.eval_value(origin)?;
    let (phip0, _) = phi.eval_d12(origin)?;
    let (hp_at, _) = h.eval_d12(phi0)?;
    let delta = phip0 * hp_at;
    if delta.norm() < T::lit(1e-14) {
        return Err(EvalError::DegenerateNormalization {
            op: "koebe_transform",
            denom: c64_of(delta),
        });
    }
    let one = Complex::new(T::one(), T::zero());
    let new_h = h
        .compose_with(phi)
        .add_const(-h.eval_value(phi0)?)
        .scale(one / delta);
    let new_g = g
        .compose_with(phi)
        .add_const(-g.eval_value(phi0)?)
        .scale(one / delta.conj());
    Ok(HarmonicMap::decomposed(new_h, new_g))
}

/// The shift `S(F) = A_{eps0} ∘ K_phi(F)` with `phi(z) = (z0+z)/(1+conj(z0)z)`
/// and `eps0 = -conj(G'(z0))/H'(z0)`, which recenters `F` at `z0` and
/// kills the dilatation at the origin.
pub fn family_shift<T: Real>(
    f: &HarmonicMap<T>,
    z0: C<T>,
) -> Result<HarmonicMap<T>, EvalError> {
    let (h, g) = f.parts()?;
    let phi = AnalyticMap::disk_automorphism(z0, T::zero())?;
    let (hp, _) = h.eval_d12(z0)?;
    let (gp, _) = g.eval_d12(z0)?;
    if hp.norm_sqr() == T::zero() {
        return Err(EvalError::DegenerateNormalization {
            op: "family_shift",
            denom: c64_of(hp),
        });
    }
    let eps0 = -(gp.conj() / hp);
    let shifted = koebe_transform(f, &phi)?;
    affine_transform(&shifted, eps0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::harmonic::{
        f_alpha, f_k_family, half_plane_map, halfplane_remark3, harmonic_koebe, identity_map,
        slit_plane_example,
    };
    fn clit(re: f64, im: f64) -> crate::scalar::C<f64> {
        crate::scalar::clit(re, im)
    }

    type C64 = Complex<f64>;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    fn koebe_presch_closed(z: C64) -> C64 {
        let one = clit(1.0, 0.0);
        (clit(5.0, 0.0) + z * 3.0) / (one - z * z) - z.conj() / clit(1.0 - z.norm_sqr(), 0.0)
    }

    fn halfplane_presch_closed(z: C64) -> C64 {
        let one = clit(1.0, 0.0);
        clit(3.0, 0.0) / (one - z) - z.conj() / clit(1.0 - z.norm_sqr(), 0.0)
    }

    #[test]
    fn origin_values() {
        let l = half_plane_map::<f64>();
        let k = harmonic_koebe::<f64>();
        let id = identity_map::<f64>();
        let z0 = clit(0.0, 0.0);
        assert!(close(pre_schwarzian(&l, z0).unwrap().p, clit(3.0, 0.0), 1e-14));
        assert!(close(pre_schwarzian(&k, z0).unwrap().p, clit(5.0, 0.0), 1e-14));
        let idv = pre_schwarzian(&id, z0).unwrap();
        assert!(idv.p.norm() < 1e-15);
        assert!((idv.jacobian - 1.0).abs() < 1e-15);
        assert_eq!(idv.omega, Some(clit(0.0, 0.0)));
    }

    #[test]
    fn closed_forms_off_origin() {
        let k = harmonic_koebe::<f64>();
        let l = half_plane_map::<f64>();
        for &(x, y) in &[(0.3, 0.4), (-0.5, 0.1), (0.0, -0.7), (0.62, 0.0)] {
            let z = clit(x, y);
            assert!(
                close(presch_at(&k, z).unwrap(), koebe_presch_closed(z), 1e-12),
                "K at {z}"
            );
            assert!(
                close(presch_at(&l, z).unwrap(), halfplane_presch_closed(z), 1e-12),
                "L at {z}"
            );
        }
    }

    #[test]
    fn dilatations() {
        let l = half_plane_map::<f64>();
        assert!(close(dilatation(&l, clit(0.3, 0.0)).unwrap(), clit(-0.3, 0.0), 1e-13));
        let fk = f_k_family(0.7, 1.5).unwrap();
        let z = clit(0.2, -0.4);
        assert!(close(dilatation(&fk, z).unwrap(), z * 0.7, 1e-12));
    }

    #[test]
    fn f_k_presch_matches_display() {
        let (k, a) = (0.7, 1.5);
        let fk = f_k_family(k, a).unwrap();
        for &(x, y) in &[(0.0, 0.0), (0.3, 0.2), (-0.4, 0.5)] {
            let z = clit(x, y);
            let one = clit(1.0, 0.0);
            let expect = (clit(2.0 * a + 1.0, 0.0) + z * k) * k / (one - z * z * (k * k))
                - z.conj() * (k * k) / clit(1.0 - k * k * z.norm_sqr(), 0.0);
            assert!(close(presch_at(&fk, z).unwrap(), expect, 1e-11), "at {z}");
        }
        // P_{h+g}(0) = 2k(a+1) and the gap to P_f(0) is exactly k.
        let hg = h_plus_eps_g(&fk, clit(1.0, 0.0)).unwrap();
        let p_hg = pre_schwarzian_analytic(&hg, clit(0.0, 0.0)).unwrap();
        assert!(close(p_hg, clit(2.0 * k * (a + 1.0), 0.0), 1e-12));
        let p_f = presch_at(&fk, clit(0.0, 0.0)).unwrap();
        assert!(((p_hg - p_f).norm() - k).abs() < 1e-12);
    }

    #[test]
    fn analytic_presch_of_mobius() {
        // phi = (1+z)/(1-z) has P_phi(w) = 2/(1-w).
        let phi = AnalyticMap::<f64>::cayley();
        for &(x, y) in &[(0.0, 0.0), (0.3, -0.2), (-0.6, 0.1)] {
            let w = clit(x, y);
            let expect = clit(2.0, 0.0) / (clit(1.0, 0.0) - w);
            assert!(close(pre_schwarzian_analytic(&phi, w).unwrap(), expect, 1e-12));
        }
    }

    #[test]
    fn chain_rule_reproduces_half_plane_transplant() {
        let k = harmonic_koebe::<f64>();
        let chart = AnalyticMap::<f64>::halfplane_to_disk();
        let composed = compose_conformal(&k, &chart).unwrap();
        let direct = halfplane_remark3::<f64>().unwrap();
        for &(x, y) in &[(0.5, 0.0), (1.2, 0.8), (2.0, -1.5), (0.3, 0.1)] {
            let z = clit(x, y);
            let a = presch_at(&composed, z).unwrap();
            let b = presch_at(&direct, z).unwrap();
            assert!(close(a, b, 1e-10), "at {z}: {a} vs {b}");
            let ja = jacobian(&composed, z).unwrap();
            let jb = jacobian(&direct, z).unwrap();
            assert!((ja - jb).abs() <= 1e-10 * jb.max(1.0), "J at {z}");
        }
    }

    #[test]
    fn chain_rule_reproduces_slit_transplant() {
        let k = harmonic_koebe::<f64>();
        let chart = AnalyticMap::<f64>::slit_to_disk();
        let composed = compose_conformal(&k, &chart).unwrap();
        let direct = slit_plane_example::<f64>().unwrap();
        for &(x, y) in &[(1.0, 0.0), (0.4, 0.3), (3.0, -2.0), (0.1, 0.05)] {
            let z = clit(x, y);
            let a = presch_at(&composed, z).unwrap();
            let b = presch_at(&direct, z).unwrap();
            assert!(close(a, b, 1e-9), "at {z}: {a} vs {b}");
        }
    }

    #[test]
    fn chain_rule_identity_on_random_conformal_inputs() {
        let k = harmonic_koebe::<f64>();
        let phi = AnalyticMap::<f64>::disk_automorphism(clit(0.3, -0.2), 0.9).unwrap();
        let composed = compose_conformal(&k, &phi).unwrap();
        for &(x, y) in &[(0.0, 0.0), (0.25, 0.4), (-0.5, -0.3)] {
            let w = clit(x, y);
            let lhs = presch_at(&composed, w).unwrap();
            let (phip, _) = phi.eval_d12(w).unwrap();
            let rhs = presch_at(&k, phi.eval_value(w).unwrap()).unwrap() * phip
                + pre_schwarzian_analytic(&phi, w).unwrap();
            assert!(close(lhs, rhs, 1e-10), "at {w}");
        }
    }

    #[test]
    fn affine_invariance_is_exact() {
        let k = harmonic_koebe::<f64>();
        let (a, b, c) = (clit(1.3, -0.5), clit(0.4, 0.8), clit(2.0, -1.0));
        let moved = k.affine_image(a, b, c).unwrap();
        for &(x, y) in &[(0.1, 0.2), (-0.4, 0.35), (0.6, -0.1)] {
            let z = clit(x, y);
            let p0 = presch_at(&k, z).unwrap();
            let p1 = presch_at(&moved, z).unwrap();
            assert!((p0 - p1).norm() < 1e-12, "at {z}");
        }
    }

    #[test]
    fn affine_transform_keeps_f_alpha_form() {
        let b1 = clit(0.3, -0.1);
        let eps = clit(-0.2, 0.45);
        let f = f_alpha(2.0, b1).unwrap();
        let moved = affine_transform(&f, eps).unwrap();
        let expect = (b1 + eps.conj()) / (clit(1.0, 0.0) + eps.conj() * b1.conj());
        for &(x, y) in &[(0.0, 0.0), (0.4, 0.2)] {
            let got = dilatation(&moved, clit(x, y)).unwrap();
            assert!(close(got, expect, 1e-12));
        }
        // h-part normalization is restored.
        let ((hp, _), _) = moved.part_derivs(clit(0.0, 0.0)).unwrap();
        assert!(close(hp, clit(1.0, 0.0), 1e-13));
    }

    #[test]
    fn koebe_transform_normalization() {
        let k = harmonic_koebe::<f64>();
        let phi = AnalyticMap::<f64>::disk_automorphism(clit(0.3, 0.2), 0.7).unwrap();
        let moved = koebe_transform(&k, &phi).unwrap();
        let z0 = clit(0.0, 0.0);
        assert!(moved.value(z0).unwrap().norm() < 1e-13);
        let ((hp, _), _) = moved.part_derivs(z0).unwrap();
        assert!(close(hp, clit(1.0, 0.0), 1e-12));
    }

    #[test]
    fn family_shift_kills_origin_dilatation() {
        for &(x, y) in &[(0.3, -0.1), (0.0, 0.0), (-0.2, 0.55)] {
            let z0 = clit(x, y);
            let shifted = family_shift(&harmonic_koebe::<f64>(), z0).unwrap();
            let w = dilatation(&shifted, clit(0.0, 0.0)).unwrap();
            assert!(w.norm() < 1e-11, "z0 = {z0}, omega(0) = {w}");
        }
    }

    #[test]
    fn family_shift_jacobian_identity() {
        let f = harmonic_koebe::<f64>();
        let z0 = clit(0.3, -0.1);
        let shifted = family_shift(&f, z0).unwrap();
        let phi = AnalyticMap::<f64>::disk_automorphism(z0, 0.0).unwrap();
        let j_at_z0 = jacobian(&f, z0).unwrap();
        let scale = (1.0 - z0.norm_sqr()).powi(2);
        for &(x, y) in &[(0.2, 0.1), (-0.35, 0.4), (0.0, 0.0)] {
            let z = clit(x, y);
            let lhs = jacobian(&shifted, z).unwrap();
            let (phip, _) = phi.eval_d12(z).unwrap();
            let rhs = phip.norm_sqr() / scale * jacobian(&f, phi.eval_value(z).unwrap()).unwrap()
                / j_at_z0;
            assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1.0), "at {z}");
        }
    }

    #[test]
    fn oracle_agrees_with_closed_forms() {
        let k = harmonic_koebe::<f64>();
        let z = clit(0.3, -0.25);
        let fd = presch_oracle(&k, z).unwrap();
        assert!(close(fd, koebe_presch_closed(z), 1e-7));
        let fk = f_k_family(0.5, 2.0).unwrap();
        let z2 = clit(-0.2, 0.4);
        assert!(close(presch_oracle(&fk, z2).unwrap(), presch_at(&fk, z2).unwrap(), 1e-7));
    }

    #[test]
    fn eps_difference_identity() {
        // P_{h+eps g} - P_f = ((eps+conj(omega))/(1+eps*omega)) * omega'/(1-|omega|^2).
        let fk = f_k_family(0.6, 1.0).unwrap();
        let eps = clit(0.3, 0.7);
        let hg = h_plus_eps_g(&fk, eps).unwrap();
        for &(x, y) in &[(0.1, 0.3), (-0.5, 0.2), (0.0, 0.0)] {
            let z = clit(x, y);
            let lhs = pre_schwarzian_analytic(&hg, z).unwrap() - presch_at(&fk, z).unwrap();
            let omega = z * 0.6;
            let omega_d = clit(0.6, 0.0);
            let one = clit(1.0, 0.0);
            let rhs = ((eps + omega.conj()) / (one + eps * omega)) * omega_d
                / clit(1.0 - omega.norm_sqr(), 0.0);
            assert!(close(lhs, rhs, 1e-11), "at {z}");
        }
    }

    #[test]
    fn h_plus_eps_g_rejects_large_eps() {
        let fk = f_k_family(0.5, 1.0).unwrap();
        assert!(h_plus_eps_g(&fk, clit(1.2, 0.0)).is_err());
        assert!(h_plus_eps_g(&fk, clit(0.6, 0.8)).is_ok());
    }

    #[test]
    fn direct_maps_refuse_decomposition_ops() {
        let direct = halfplane_remark3::<f64>().unwrap();
        assert!(matches!(
            dilatation(&direct, clit(1.0, 0.0)),
            Err(EvalError::RequiresDecomposition { .. })
        ));
        assert!(h_plus_eps_g(&direct, clit(0.5, 0.0)).is_err());
    }

    #[test]
    fn jacobian_rejects_outside_domain() {
        let k = harmonic_koebe::<f64>();
        assert!(matches!(
            jacobian(&k, clit(1.5, 0.0)),
            Err(EvalError::OutsideDomain { .. })
        ));
    }
}
