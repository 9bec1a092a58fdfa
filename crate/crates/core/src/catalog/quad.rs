//! Adaptive Gauss-Kronrod quadrature for complex-valued integrands.
//!
//! Used to recover antiderivative values for maps that are defined by
//! their derivatives. The integrand is analytic along the integration
//! segment, so a G7/K15 pair with bisection converges quickly.

// Node and weight tables keep their published 33-digit form; parsing
// rounds them to the nearest f64.
#![allow(clippy::excessive_precision)]

use crate::scalar::{Real, C};
use num_complex::Complex;

/// Kronrod abscissae (positive half, including the center) for K15.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

/// K15 weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// G7 weights for the odd-index abscissae of `XGK` plus the center.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One G7/K15 panel on `[a, b]`; returns `(k15, |k15 - g7|)`.
fn panel<T: Real, F: Fn(T) -> C<T>>(f: &F, a: T, b: T) -> (C<T>, T) {
    let zero = Complex::new(T::zero(), T::zero());
    let center = (a + b) * T::lit(0.5);
    let half = (b - a) * T::lit(0.5);
    let mut k15 = zero;
    let mut g7 = zero;
    for (i, &x) in XGK.iter().enumerate() {
        let x = T::lit(x);
        let wk = T::lit(WGK[i]);
        let sum = if i == 7 {
            f(center)
        } else {
            f(center - half * x) + f(center + half * x)
        };
        k15 = k15 + sum * Complex::new(wk, T::zero());
        if i % 2 == 1 {
            let wg = T::lit(WG[i / 2]);
            g7 = g7 + sum * Complex::new(wg, T::zero());
        } else if i == 7 {
            // Center node also belongs to the Gauss rule.
            let wg = T::lit(WG[3]);
            g7 = g7 + sum * Complex::new(wg, T::zero());
        }
    }
    let scale = Complex::new(half, T::zero());
    ((k15 * scale), (k15 * scale - g7 * scale).norm())
}

fn adaptive<T: Real, F: Fn(T) -> C<T>>(f: &F, a: T, b: T, tol: T, depth: u32) -> C<T> {
    let (value, err) = panel(f, a, b);
    if err <= tol * (b - a) || depth == 0 {
        return value;
    }
    let mid = (a + b) * T::lit(0.5);
    adaptive(f, a, mid, tol, depth - 1) + adaptive(f, mid, b, tol, depth - 1)
}

/// Integrates `f` over `[0, 1]` to absolute tolerance `tol`.
pub(crate) fn integrate_unit<T: Real, F: Fn(T) -> C<T>>(f: &F, tol: T) -> C<T> {
    adaptive(f, T::zero(), T::one(), tol, 24)
}
