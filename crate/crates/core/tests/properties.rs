//! Cross-cutting properties exercised through the public API: exact jets
//! against difference oracles, composition laws, sense preservation,
//! norm-scan monotonicity, and wire-format round-trips.

use num_complex::Complex;
use presch::jet::{default_step, default_step_d2};
use presch::{
    check_distortion, family_from_id, jacobian, majorization_radius, map_from_id, norm_estimate,
    numeric_second_derivative, numeric_wirtinger, pre_schwarzian, pre_schwarzian_analytic,
    presch_at, presch_oracle, run_report, AnalyticMap, CheckResult, CheckSpec, Domain64,
    DomainModel, GridSpec, Map64, Report, ReportConfig,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type C64 = Complex<f64>;

fn quick_grid() -> GridSpec {
    GridSpec {
        n_theta: 64,
        n_r: 80,
        boundary_margin: 1e-6,
        refine_rounds: 8,
    }
}

fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

/// A point comfortably inside the given domain, away from every
/// catalog singularity, so difference stencils stay evaluable.
fn interior_point(domain: &Domain64, rng: &mut StdRng) -> C64 {
    let angle: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    match domain {
        DomainModel::UnitDisk | DomainModel::RiemannMapped(_) => {
            Complex::from_polar(0.85 * rng.gen::<f64>().sqrt(), angle)
        }
        DomainModel::PuncturedDisk => Complex::from_polar(rng.gen_range(0.15..0.8), angle),
        DomainModel::ExteriorDisk => Complex::from_polar(rng.gen_range(1.3..4.0), angle),
        DomainModel::RightHalfPlane | DomainModel::SlitPlane => {
            Complex::new(rng.gen_range(0.2..2.5), rng.gen_range(-2.5..2.5))
        }
    }
}

#[test]
fn analytic_jets_match_difference_oracles() {
    let maps: Vec<(&str, AnalyticMap<f64>)> = vec![
        ("koebe-h", AnalyticMap::koebe_h()),
        ("koebe-g", AnalyticMap::koebe_g()),
        ("halfplane-h", AnalyticMap::halfplane_h()),
        ("halfplane-g", AnalyticMap::halfplane_g()),
        ("k-alpha-1.7", AnalyticMap::k_alpha(1.7).unwrap()),
        ("h-k", AnalyticMap::h_k(0.7, 1.0).unwrap()),
        ("g-k", AnalyticMap::g_k(0.7, 1.0).unwrap()),
        ("cayley", AnalyticMap::cayley()),
        ("cayley-sq", AnalyticMap::cayley_sq()),
        ("halfplane-chart", AnalyticMap::halfplane_to_disk()),
        ("slit-chart", AnalyticMap::slit_to_disk()),
        ("automorphism", AnalyticMap::disk_automorphism(Complex::new(0.3, 0.1), 0.7).unwrap()),
        ("psi", AnalyticMap::subordination_psi(0.8).unwrap()),
        (
            "cubic",
            AnalyticMap::polynomial(
                vec![
                    Complex::new(0.2, -0.1),
                    Complex::new(1.0, 0.0),
                    Complex::new(-0.4, 0.3),
                    Complex::new(0.0, 0.25),
                ],
                DomainModel::UnitDisk,
            ),
        ),
    ];
    let mut rng = StdRng::seed_from_u64(0x6a7e_55ed);
    for (label, map) in &maps {
        let domain = map.domain().clone();
        for _ in 0..100 {
            let z = interior_point(&domain, &mut rng);
            let jet = map.eval_jet(z).unwrap();
            let value = |w: C64| map.eval_value(w);
            let d1 = numeric_wirtinger(value, z, default_step(z)).unwrap().dz;
            let d2 = numeric_second_derivative(value, z, default_step_d2(z)).unwrap();
            assert!(
                close(jet.d1, d1, 1e-6),
                "{label} d1 at {z}: jet {} vs numeric {d1}",
                jet.d1
            );
            assert!(
                close(jet.d2, d2, 1e-6),
                "{label} d2 at {z}: jet {} vs numeric {d2}",
                jet.d2
            );
        }
    }
}

proptest! {
    /// Composing three maps associates: both bracketings produce the
    /// same jets wherever the innermost image lands in the disk.
    #[test]
    fn composition_is_associative(
        x0 in -0.6f64..0.6, y0 in -0.6f64..0.6, t0 in 0.0f64..std::f64::consts::TAU,
        x1 in -0.6f64..0.6, y1 in -0.6f64..0.6, t1 in 0.0f64..std::f64::consts::TAU,
        r in 0.0f64..0.8, angle in 0.0f64..std::f64::consts::TAU,
    ) {
        prop_assume!(x0 * x0 + y0 * y0 < 0.8);
        prop_assume!(x1 * x1 + y1 * y1 < 0.8);
        let outer = AnalyticMap::<f64>::koebe_h();
        let mid = AnalyticMap::disk_automorphism(Complex::new(x0, y0), t0).unwrap();
        let inner = AnalyticMap::disk_automorphism(Complex::new(x1, y1), t1).unwrap();
        let left = outer.compose_with(&mid).compose_with(&inner);
        let right = outer.compose_with(&mid.compose_with(&inner));
        let z = Complex::from_polar(r, angle);
        let a = left.eval_jet(z).unwrap();
        let b = right.eval_jet(z).unwrap();
        prop_assert!(close(a.value, b.value, 1e-12), "value {} vs {}", a.value, b.value);
        prop_assert!(close(a.d1, b.d1, 1e-12), "d1 {} vs {}", a.d1, b.d1);
        prop_assert!(close(a.d2, b.d2, 1e-12), "d2 {} vs {}", a.d2, b.d2);
    }

    /// The analytic shift `h + eps*g` moves the pre-Schwarzian by
    /// exactly `((eps + conj(omega)) / (1 + eps*omega)) * omega' / (1 - |omega|^2)`.
    #[test]
    fn analytic_shift_moves_presch_by_dilatation_term(
        ex in -1.0f64..1.0, ey in -1.0f64..1.0,
        r in 0.0f64..0.7, angle in 0.0f64..std::f64::consts::TAU,
        pick in 0usize..3,
    ) {
        prop_assume!(ex * ex + ey * ey <= 1.0);
        let eps = Complex::new(ex, ey);
        let f: Map64 = match pick {
            0 => map_from_id("koebe").unwrap(),
            1 => map_from_id("half-plane-L").unwrap(),
            _ => map_from_id("f-k:0.5:1").unwrap(),
        };
        let z = Complex::from_polar(r, angle);
        let shifted = presch::h_plus_eps_g(&f, eps).unwrap();
        let lhs = pre_schwarzian_analytic(&shifted, z).unwrap() - presch_at(&f, z).unwrap();
        let ((hp, hpp), (gp, gpp)) = f.part_derivs(z).unwrap();
        let omega = gp / hp;
        let omega_d = (gpp - omega * hpp) / hp;
        let rhs = (eps + omega.conj()) / (Complex::new(1.0, 0.0) + eps * omega) * omega_d
            / Complex::new(1.0 - omega.norm_sqr(), 0.0);
        prop_assert!(close(lhs, rhs, 1e-9), "lhs {lhs} rhs {rhs} at {z}");
    }

    /// Pass verdicts are exactly `worst_residual <= tolerance`, and the
    /// record survives a JSON round-trip.
    #[test]
    fn check_results_pass_iff_within_tolerance(
        residual in -1e3f64..1e3,
        tolerance in 0.0f64..10.0,
        x in -2.0f64..2.0, y in -2.0f64..2.0,
    ) {
        let result = CheckResult::new("probe", "m", "disk", residual, Complex::new(x, y), 7, tolerance);
        prop_assert_eq!(result.pass, residual <= tolerance);
        let text = serde_json::to_string(&result).unwrap();
        let back: CheckResult = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.pass, result.pass);
        prop_assert_eq!(back.worst_residual, result.worst_residual);
        prop_assert_eq!(back.worst_point, result.worst_point);
        prop_assert_eq!(back.samples, result.samples);
    }
}

#[test]
fn decomposed_catalog_maps_are_sense_preserving() {
    let ids = [
        "koebe",
        "half-plane-L",
        "k-alpha:2",
        "f-alpha:1.5:0.3+0.2i",
        "f-k:0.7:1",
        "f-k:1:2.5",
        "identity",
    ];
    for id in ids {
        let f: Map64 = map_from_id(id).unwrap();
        for i in 0..64 {
            let r = (i as f64 + 1.0) / 64.0 * (1.0 - 1e-3);
            for j in 0..64 {
                let theta = std::f64::consts::TAU * j as f64 / 64.0;
                let z = Complex::from_polar(r, theta);
                let j_f = jacobian(&f, z).unwrap();
                assert!(j_f > 0.0, "{id} has J = {j_f} at {z}");
            }
        }
    }
}

#[test]
fn closed_form_maps_match_wirtinger_oracle() {
    let ids = ["ext-counter", "slit-example", "remark3", "recip"];
    let mut rng = StdRng::seed_from_u64(0x0dd5_eed5);
    for id in ids {
        let f: Map64 = map_from_id(id).unwrap();
        let domain = f.domain().clone();
        for _ in 0..200 {
            let z = interior_point(&domain, &mut rng);
            let p = presch_at(&f, z).unwrap();
            let oracle = presch_oracle(&f, z).unwrap();
            assert!(close(p, oracle, 1e-6), "{id} at {z}: {p} vs {oracle}");
        }
    }
}

#[test]
fn norm_histories_never_decrease() {
    let cases = [
        ("koebe", "disk"),
        ("half-plane-L", "disk"),
        ("k-alpha:2", "disk"),
        ("remark3", "half-plane"),
        ("slit-example", "slit-plane"),
        ("recip", "punctured-disk"),
        ("ext-counter", "exterior"),
    ];
    for (map_id, domain_id) in cases {
        let f: Map64 = map_from_id(map_id).unwrap();
        let domain: Domain64 = presch::domain_from_id(domain_id).unwrap();
        let est = norm_estimate(&f, &domain, &quick_grid()).unwrap();
        for pair in est.refinement_history.windows(2) {
            assert!(
                pair[1].1 >= pair[0].1,
                "{map_id} history dropped: {:?}",
                est.refinement_history
            );
        }
    }
}

#[test]
fn finite_norm_scans_converge_and_divergent_ones_do_not() {
    let finite = ["half-plane-L", "koebe"];
    for id in finite {
        let f: Map64 = map_from_id(id).unwrap();
        let est = norm_estimate(&f, &DomainModel::UnitDisk, &quick_grid()).unwrap();
        assert!(est.converged, "{id} failed to converge: {:?}", est.refinement_history);
        let tail: Vec<f64> = est.refinement_history.iter().map(|&(_, v)| v).collect();
        let n = tail.len();
        assert!(tail[n - 1] - tail[n - 2] < 1e-4);
        assert!(tail[n - 2] - tail[n - 3] < 1e-4);
    }

    let divergent: Map64 = map_from_id("recip").unwrap();
    let est = norm_estimate(&divergent, &DomainModel::PuncturedDisk, &quick_grid()).unwrap();
    assert!(!est.converged, "history {:?}", est.refinement_history);
}

#[test]
fn order_family_norm_ignores_dilatation_coefficient() {
    let b1s = ["0", "0.5i", "0.3+0.2i", "-0.6"];
    let norms: Vec<f64> = b1s
        .iter()
        .map(|b1| {
            let f: Map64 = map_from_id(&format!("f-alpha:2:{b1}")).unwrap();
            norm_estimate(&f, &DomainModel::UnitDisk, &quick_grid())
                .unwrap()
                .sup_lower_bound
        })
        .collect();
    for n in &norms[1..] {
        assert!((n - norms[0]).abs() <= 1e-9, "norms {norms:?}");
    }
    assert!((norms[0] - 6.0).abs() < 1e-3, "expected 6, got {}", norms[0]);
}

#[test]
fn radial_log_jacobian_slope_matches_presch() {
    // (r/2) d/dr log J equals Re(z P) pointwise; central difference
    // in r against the closed form.
    let ids = ["koebe", "half-plane-L", "f-alpha:2:0.5i", "f-k:0.7:1"];
    let mut rng = StdRng::seed_from_u64(0x51de_5107);
    for id in ids {
        let f: Map64 = map_from_id(id).unwrap();
        for _ in 0..40 {
            let r = rng.gen_range(0.1..0.8);
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            let dir = Complex::from_polar(1.0, theta);
            let h = 1e-5;
            let j_hi = jacobian(&f, dir.scale(r + h)).unwrap().ln();
            let j_lo = jacobian(&f, dir.scale(r - h)).unwrap().ln();
            let slope = r / 2.0 * (j_hi - j_lo) / (2.0 * h);
            let z = dir.scale(r);
            let re_zp = (z * presch_at(&f, z).unwrap()).re;
            assert!(
                (slope - re_zp).abs() <= 1e-6 * re_zp.abs().max(1.0),
                "{id} at {z}: slope {slope} vs Re zP {re_zp}"
            );
        }
    }
}

#[test]
fn distortion_bounds_hold_for_family_extremals() {
    let radii: Vec<f64> = (1..=64).map(|i| i as f64 / 65.0).collect();
    for family_id in ["convex", "close-to-convex", "f-alpha:1", "f-alpha:2", "f-alpha:3"] {
        let family = family_from_id::<f64>(family_id).unwrap();
        for b1 in [Complex::new(0.0, 0.0), Complex::new(0.0, 0.5)] {
            let f = family.extremal(b1).unwrap();
            let result =
                check_distortion(&f, family_id, family.alpha0(), b1, &radii, 64).unwrap();
            assert!(
                result.pass,
                "{family_id} b1={b1}: residual {} at {}",
                result.worst_residual, result.worst_point
            );
        }
    }
}

#[test]
fn majorization_radius_strictly_decreases() {
    let mut prev = majorization_radius(1.0).unwrap();
    for i in 1..=300 {
        let alpha = 1.0 + 3.0 * i as f64 / 300.0;
        let n = majorization_radius(alpha).unwrap();
        assert!(n < prev, "n({alpha}) = {n} did not drop below {prev}");
        prev = n;
    }
}

#[test]
fn presch_value_carries_consistent_parts() {
    let f: Map64 = map_from_id("f-k:0.7:1").unwrap();
    let mut rng = StdRng::seed_from_u64(0xfeed_beef);
    for _ in 0..50 {
        let z = interior_point(&DomainModel::UnitDisk, &mut rng);
        let v = pre_schwarzian(&f, z).unwrap();
        assert!(v.jacobian > 0.0);
        let omega = v.omega.expect("decomposed map exposes omega");
        assert!(omega.norm() < 1.0);
        let ((hp, _), (gp, _)) = f.part_derivs(z).unwrap();
        assert!(close(omega, gp / hp, 1e-12));
        assert!((v.jacobian - (hp.norm_sqr() - gp.norm_sqr())).abs() <= 1e-12 * v.jacobian);
    }
}

#[test]
fn reports_round_trip_through_json() {
    let config = ReportConfig {
        checks: vec![
            CheckSpec::new("pointwise-disk").map("identity").param("alpha0", 1.0),
            CheckSpec::new("chain-rule"),
        ],
        grid: GridSpec {
            n_theta: 48,
            n_r: 64,
            boundary_margin: 1e-6,
            refine_rounds: 4,
        },
    };
    let config_text = serde_json::to_string(&config).unwrap();
    let config_back: ReportConfig = serde_json::from_str(&config_text).unwrap();
    assert_eq!(config_back.checks.len(), config.checks.len());
    assert_eq!(config_back.grid.n_theta, config.grid.n_theta);

    let report = run_report(&config_back).unwrap();
    assert!(report.all_passed());
    let text = serde_json::to_string_pretty(&report).unwrap();
    let back: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(back.summary, report.summary);
    assert_eq!(back.results.len(), report.results.len());
    for (a, b) in back.results.iter().zip(&report.results) {
        assert_eq!(a.check_id, b.check_id);
        assert_eq!(a.pass, b.pass);
        assert_eq!(a.worst_residual, b.worst_residual);
    }
}
