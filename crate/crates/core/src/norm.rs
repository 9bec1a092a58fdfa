//! Supremum scans of weighted pre-Schwarzian moduli: norm estimates,
//! radial profiles, and divergence witnesses.
//!
//! The scan reports a certified lower bound for the supremum together
//! with a convergence flag, never a claimed exact value: suprema here are
//! often attained only in a boundary limit, and the interesting
//! counterexamples are exactly the ones where the running maximum keeps
//! growing as samples push outward or toward a puncture.

use crate::catalog::harmonic::HarmonicMap;
use crate::domain::{exterior_weight, DomainModel};
use crate::error::EvalError;
use crate::presch::{dilatation, presch_at};
use crate::scalar::{Real, C};
use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Polar sweep resolution and refinement policy.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n_theta: usize,
    pub n_r: usize,
    /// Distance kept from the boundary in the base sweep; refinement
    /// rounds halve it.
    pub boundary_margin: f64,
    pub refine_rounds: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            n_theta: 512,
            n_r: 400,
            boundary_margin: 1e-6,
            refine_rounds: 8,
        }
    }
}

/// Which weight multiplies `|P_f|` in a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Weight {
    /// Reciprocal hyperbolic density, the weight of the norm.
    InvDensity,
    /// `|z|^3 - |z|` on the exterior disk.
    ExteriorWeight,
}

/// Outcome of a sup scan.
#[derive(Clone, Debug)]
pub struct NormEstimate<T: Real> {
    /// Largest value over all evaluated points; a lower bound for the sup.
    pub sup_lower_bound: T,
    pub attained_at: C<T>,
    pub grid: GridSpec,
    /// True when the running maximum stabilized under boundary
    /// refinement; false means it was still growing in the last rounds.
    pub converged: bool,
    /// Running maximum after the base sweep (round 0) and after each
    /// refinement round.
    pub refinement_history: Vec<(usize, T)>,
    /// Points that evaluated to a finite value.
    pub samples: usize,
    /// Samples that failed to evaluate or came back non-finite.
    pub skipped: usize,
}

/// `weight(z) * |P_f(z)|` with the hyperbolic weight.
pub fn weighted_modulus<T: Real>(
    f: &HarmonicMap<T>,
    domain: &DomainModel<T>,
    z: C<T>,
) -> Result<T, EvalError> {
    weighted_modulus_with(f, domain, z, Weight::InvDensity)
}

/// `weight(z) * |P_f(z)|` with an explicit weight choice.
///
/// Goes through the pre-Schwarzian alone, never the Jacobian, so maps
/// whose `J` overflows at extreme radii still evaluate.
pub fn weighted_modulus_with<T: Real>(
    f: &HarmonicMap<T>,
    domain: &DomainModel<T>,
    z: C<T>,
    weight: Weight,
) -> Result<T, EvalError> {
    let w = match weight {
        Weight::InvDensity => domain.inv_density(z)?,
        Weight::ExteriorWeight => exterior_weight(z)?,
    };
    Ok(w * presch_at(f, z)?.norm())
}

/// Norm estimate with the hyperbolic weight.
pub fn norm_estimate<T: Real>(
    f: &HarmonicMap<T>,
    domain: &DomainModel<T>,
    spec: &GridSpec,
) -> Result<NormEstimate<T>, EvalError> {
    norm_estimate_with(f, domain, spec, Weight::InvDensity)
}

/// Norm estimate with an explicit weight.
pub fn norm_estimate_with<T: Real>(
    f: &HarmonicMap<T>,
    domain: &DomainModel<T>,
    spec: &GridSpec,
    weight: Weight,
) -> Result<NormEstimate<T>, EvalError> {
    sup_scan(domain, spec, move |z| {
        weighted_modulus_with(f, domain, z, weight)
    })
}

/// Supremum of the dilatation modulus `|g'/h'|` over the map's domain.
pub fn sup_dilatation<T: Real>(
    f: &HarmonicMap<T>,
    spec: &GridSpec,
) -> Result<NormEstimate<T>, EvalError> {
    let domain = f.domain().clone();
    sup_scan(&domain, spec, move |z| Ok(dilatation(f, z)?.norm()))
}

/// Generic parallel sup scan of a nonnegative functional over a domain.
///
/// Base polar sweep, then per-ray golden-section refinement around each
/// ray's best sample, then `refine_rounds` rounds of boundary probes with
/// halved margins (and doubled outer radii on the exterior disk).
pub fn sup_scan<T, F>(
    domain: &DomainModel<T>,
    spec: &GridSpec,
    eval: F,
) -> Result<NormEstimate<T>, EvalError>
where
    T: Real,
    F: Fn(C<T>) -> Result<T, EvalError> + Sync,
{
    if spec.n_theta == 0 || spec.n_r == 0 || spec.boundary_margin <= 0.0 {
        return Err(EvalError::InvalidParameter(
            "grid spec must have positive resolution and margin".into(),
        ));
    }
    let margin = T::lit(spec.boundary_margin);
    let thetas: Vec<T> = (0..spec.n_theta)
        .map(|i| T::lit(2.0 * std::f64::consts::PI * i as f64 / spec.n_theta as f64))
        .collect();

    let mut history = Vec::with_capacity(spec.refine_rounds + 1);
    let mut best = RayBest::empty();

    // Base sweep plus golden-section polish, parallel over rays.
    let ray_results: Vec<RayBest<T>> = thetas
        .par_iter()
        .map(|&theta| {
            let mut ray = RayBest::empty();
            let probe = |t: T, ray: &mut RayBest<T>| {
                let z = chart_point(domain, theta, t, margin);
                ray.consider(z, eval(z));
            };
            probe(T::zero(), &mut ray);
            let mut best_t = T::zero();
            for j in 1..=spec.n_r {
                let t = T::lit(j as f64 / spec.n_r as f64);
                let before = ray.value;
                probe(t, &mut ray);
                if ray.value > before {
                    best_t = t;
                }
            }
            let dt = T::lit(1.0 / spec.n_r as f64);
            let lo = (best_t - dt).max(T::zero());
            let hi = (best_t + dt).min(T::one());
            let mut polished = golden_max(lo, hi, 48, |t| {
                let z = chart_point(domain, theta, t, margin);
                match eval(z) {
                    Ok(v) if v.is_finite() => (v, Some(z)),
                    _ => (T::neg_infinity(), None),
                }
            });
            ray.merge(&mut polished);
            ray
        })
        .collect();
    for mut r in ray_results {
        best.merge(&mut r);
    }
    history.push((0usize, best.value));

    // Boundary refinement rounds.
    for round in 1..=spec.refine_rounds {
        let m = margin / T::lit((1u64 << round.min(52)) as f64);
        let round_best = thetas
            .par_iter()
            .map(|&theta| {
                let mut ray = RayBest::empty();
                for z in boundary_probes(domain, theta, m, round) {
                    ray.consider(z, eval(z));
                }
                ray
            })
            .reduce(RayBest::empty, |mut a, mut b| {
                a.merge(&mut b);
                a
            });
        let mut rb = round_best;
        best.merge(&mut rb);
        history.push((round, best.value));
    }

    if !best.value.is_finite() {
        return Err(EvalError::InvalidParameter(format!(
            "sup scan found no finite samples on {}",
            domain.label()
        )));
    }

    let converged = history_converged(&history);
    Ok(NormEstimate {
        sup_lower_bound: best.value,
        attained_at: best.at,
        grid: *spec,
        converged,
        refinement_history: history,
        samples: best.evaluated,
        skipped: best.skipped,
    })
}

/// Stable when the last two refinement increments are below 1e-4.
fn history_converged<T: Real>(history: &[(usize, T)]) -> bool {
    if history.len() < 3 {
        return false;
    }
    let tol = T::lit(1e-4);
    let n = history.len();
    let d1 = history[n - 1].1 - history[n - 2].1;
    let d2 = history[n - 2].1 - history[n - 3].1;
    d1.abs() < tol && d2.abs() < tol
}

#[derive(Clone, Copy)]
struct RayBest<T: Real> {
    value: T,
    at: C<T>,
    evaluated: usize,
    skipped: usize,
}

impl<T: Real> RayBest<T> {
    fn empty() -> Self {
        RayBest {
            value: T::neg_infinity(),
            at: Complex::new(T::zero(), T::zero()),
            evaluated: 0,
            skipped: 0,
        }
    }

    fn consider(&mut self, z: C<T>, outcome: Result<T, EvalError>) {
        match outcome {
            Ok(v) if v.is_finite() => {
                self.evaluated += 1;
                if v > self.value {
                    self.value = v;
                    self.at = z;
                }
            }
            _ => self.skipped += 1,
        }
    }

    fn merge(&mut self, other: &mut RayBest<T>) {
        if other.value > self.value {
            self.value = other.value;
            self.at = other.at;
        }
        self.evaluated += other.evaluated;
        self.skipped += other.skipped;
    }
}

/// Maximizes `eval` on `[lo, hi]` by golden-section search; `eval`
/// returns the value and the point it was evaluated at.
fn golden_max<T, E>(mut lo: T, mut hi: T, iters: usize, eval: E) -> RayBest<T>
where
    T: Real,
    E: Fn(T) -> (T, Option<C<T>>),
{
    let ratio = T::lit(0.618_033_988_749_894_9);
    let mut out = RayBest::empty();
    let record = |t: T, out: &mut RayBest<T>| -> T {
        let (v, at) = eval(t);
        match at {
            Some(z) => out.consider(z, Ok(v)),
            None => out.skipped += 1,
        }
        v
    };
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let mut f1 = record(x1, &mut out);
    let mut f2 = record(x2, &mut out);
    for _ in 0..iters {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = record(x2, &mut out);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = record(x1, &mut out);
        }
    }
    out
}

/// Maps a ray parameter `t` in `[0, 1]` to a domain point at angle
/// `theta`, keeping `margin` away from the boundary.
fn chart_point<T: Real>(domain: &DomainModel<T>, theta: T, t: T, margin: T) -> C<T> {
    let dir = Complex::from_polar(T::one(), theta);
    match domain {
        DomainModel::UnitDisk => dir.scale((T::one() - margin) * t),
        DomainModel::RiemannMapped(rd) => {
            let w = dir.scale((T::one() - margin) * t);
            rd.chart().eval_value(w).unwrap_or(w)
        }
        DomainModel::RightHalfPlane => {
            let w = dir.scale((T::one() - margin) * t);
            let one = Complex::new(T::one(), T::zero());
            (one + w) / (one - w)
        }
        DomainModel::SlitPlane => {
            let w = dir.scale((T::one() - margin) * t);
            let one = Complex::new(T::one(), T::zero());
            let c = (one + w) / (one - w);
            c * c
        }
        DomainModel::PuncturedDisk => {
            let r = margin.powf(T::one() - t) * (T::one() - margin).powf(t);
            dir.scale(r)
        }
        DomainModel::ExteriorDisk => {
            // Radii 1+margin up to 10 on a log scale.
            let nine = T::lit(9.0);
            let s = margin.powf(T::one() - t) * nine.powf(t);
            dir.scale(T::one() + s)
        }
    }
}

/// Near-boundary probes for refinement round `round` with margin `m`.
fn boundary_probes<T: Real>(
    domain: &DomainModel<T>,
    theta: T,
    m: T,
    round: usize,
) -> Vec<C<T>> {
    let dir = Complex::from_polar(T::one(), theta);
    match domain {
        DomainModel::UnitDisk => vec![dir.scale(T::one() - m)],
        DomainModel::RiemannMapped(rd) => {
            let w = dir.scale(T::one() - m);
            vec![rd.chart().eval_value(w).unwrap_or(w)]
        }
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
            let outward = T::lit(10.0) * T::lit((1u64 << round.min(52)) as f64);
            vec![dir.scale(T::one() + m), dir.scale(outward)]
        }
    }
}

/// One row of a radial profile.
#[derive(Clone, Copy, Debug)]
pub struct ProfileSample<T: Real> {
    pub r: T,
    pub theta: T,
    pub value: T,
}

/// Weighted-modulus samples along the ray `z = r e^{i theta}`; points
/// that fail to evaluate are dropped and counted.
pub fn radial_profile<T: Real>(
    f: &HarmonicMap<T>,
    domain: &DomainModel<T>,
    theta: T,
    radii: &[T],
) -> (Vec<ProfileSample<T>>, usize) {
    let dir = Complex::from_polar(T::one(), theta);
    let mut out = Vec::with_capacity(radii.len());
    let mut skipped = 0usize;
    for &r in radii {
        match weighted_modulus(f, domain, dir.scale(r)) {
            Ok(v) if v.is_finite() => out.push(ProfileSample {
                r,
                theta,
                value: v,
            }),
            _ => skipped += 1,
        }
    }
    (out, skipped)
}

/// A default radius ladder for profiles on each domain.
pub fn default_radii<T: Real>(domain: &DomainModel<T>, n: usize) -> Vec<T> {
    let margin = T::lit(1e-6);
    (1..=n)
        .map(|j| {
            let t = T::lit(j as f64 / n as f64);
            match domain {
                DomainModel::UnitDisk | DomainModel::RiemannMapped(_) => {
                    (T::one() - margin) * t
                }
                DomainModel::PuncturedDisk => {
                    margin.powf(T::one() - t) * (T::one() - margin).powf(t)
                }
                DomainModel::ExteriorDisk => {
                    T::one() + margin.powf(T::one() - t) * T::lit(9.0).powf(t)
                }
                DomainModel::RightHalfPlane | DomainModel::SlitPlane => {
                    // 1e-3 up to 1e3 on a log scale.
                    T::lit(10.0).powf(T::lit(6.0) * t - T::lit(3.0))
                }
            }
        })
        .collect()
}

/// CSV with 17 significant digits per field.
pub fn profile_to_csv<T: Real>(samples: &[ProfileSample<T>]) -> String {
    let mut out = String::from("r,theta,weighted_modulus\n");
    for s in samples {
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e}\n",
            s.r.as_f64(),
            s.theta.as_f64(),
            s.value.as_f64()
        ));
    }
    out
}

/// Searches for a point where the weighted modulus exceeds `threshold`,
/// walking geometric schedules toward each singular boundary locus.
/// Returns the witness and its value, or `None` once the budget is spent.
pub fn divergence_witness<T: Real>(
    f: &HarmonicMap<T>,
    domain: &DomainModel<T>,
    threshold: T,
    weight: Weight,
) -> Result<Option<(C<T>, T)>, EvalError> {
    if threshold.is_nan() || threshold <= T::zero() {
        return Err(EvalError::InvalidParameter(
            "witness threshold must be positive".into(),
        ));
    }
    let angles = [0.0, std::f64::consts::PI, 1.0, -1.0, 2.5, -2.5, 0.4, 3.6];
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    for &a in &angles {
        let dir: C<T> = Complex::from_polar(T::one(), T::lit(a));
        let mut schedules: Vec<Box<dyn Iterator<Item = C<T>>>> = Vec::new();
        match domain {
            DomainModel::ExteriorDisk => {
                // Outward doubling, capped before the weight overflows,
                // then an inward crawl toward the unit circle.
                let out_r = std::iter::successors(Some(two), move |&r| {
                    (r < T::lit(1e100)).then(|| r * two)
                });
                schedules.push(Box::new(out_r.map(move |r| dir.scale(r))));
                let in_r = (1..=60).map(move |j| T::one() + T::lit(1e-3) * half.powi(j));
                schedules.push(Box::new(in_r.map(move |r| dir.scale(r))));
            }
            DomainModel::PuncturedDisk => {
                let down = std::iter::successors(Some(half), move |&r| {
                    (r > T::lit(1e-300)).then(|| r * half)
                });
                schedules.push(Box::new(down.map(move |r| dir.scale(r))));
                let rim = (1..=60).map(move |j| T::one() - T::lit(1e-3) * half.powi(j));
                schedules.push(Box::new(rim.map(move |r| dir.scale(r))));
            }
            _ => {
                let margin = T::lit(1e-3);
                let toward = (1..=120).map(move |j| T::one() - margin * half.powi(j.min(120)));
                let d = domain.clone();
                schedules.push(Box::new(toward.map(move |t| {
                    chart_point(&d, T::lit(a), t, T::zero())
                })));
            }
        }
        for schedule in schedules {
            for z in schedule {
                if let Ok(v) = weighted_modulus_with(f, domain, z, weight) {
                    if v.is_finite() && v > threshold {
                        return Ok(Some((z, v)));
                    }
                }
            }
        }
    }
    Ok(None)
}
