//! Batch check execution: a config names checks by ID with string
//! parameters, the runner dispatches them in parallel and folds the
//! outcomes into one report with a pass/fail summary.

use crate::catalog::analytic::AnalyticMap;
use crate::catalog::harmonic::{f_alpha, f_k_family, half_plane_map, harmonic_koebe, HarmonicMap};
use crate::catalog::ids::{default_domain_id, domain_from_id, family_from_id, map_from_id};
use crate::cplx::parse_complex;
use crate::domain::DomainModel;
use crate::error::EvalError;
use crate::norm::{divergence_witness, GridSpec, Weight};
use crate::presch::{compose_conformal, presch_at, presch_oracle};
use crate::verify::checks::{
    check_boundary_distance, check_comparison, check_distortion, check_norm_bound,
    check_norm_chain, check_norm_comparison, check_norm_value, check_osgood,
    check_pointwise_disk, CheckResult, ComparisonMode, OsgoodExpectation,
};
use crate::verify::majorization::{cor4_as_check, majorization_as_check, ConvexKind};
use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

type C64 = Complex<f64>;

/// One requested check: an ID plus optional map, domain, and parameters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckSpec {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
}

impl CheckSpec {
    pub fn new(id: &str) -> Self {
        CheckSpec {
            id: id.to_string(),
            map: None,
            domain: None,
            params: BTreeMap::new(),
        }
    }

    pub fn map(mut self, id: &str) -> Self {
        self.map = Some(id.to_string());
        self
    }

    pub fn domain(mut self, id: &str) -> Self {
        self.domain = Some(id.to_string());
        self
    }

    pub fn param(mut self, key: &str, value: impl std::fmt::Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }
}

/// A batch of checks and the grid their sweeps run on.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportConfig {
    pub checks: Vec<CheckSpec>,
    #[serde(default = "report_grid")]
    pub grid: GridSpec,
}

fn report_grid() -> GridSpec {
    GridSpec {
        n_theta: 96,
        n_r: 128,
        boundary_margin: 1e-6,
        refine_rounds: 8,
    }
}

/// Counts over the executed checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub conjecture_conditional: usize,
}

/// All outcomes plus the summary block.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

/// Runs every check in the config (in parallel) and assembles the
/// report. Unknown IDs and malformed parameters abort the run.
pub fn run_report(config: &ReportConfig) -> Result<Report, EvalError> {
    let results: Vec<CheckResult> = config
        .checks
        .par_iter()
        .map(|spec| run_check(spec, &config.grid))
        .collect::<Result<_, _>>()?;
    let passed = results.iter().filter(|r| r.pass).count();
    let conjecture_conditional = results.iter().filter(|r| r.conjecture_conditional).count();
    let summary = Summary {
        total: results.len(),
        passed,
        failed: results.len() - passed,
        conjecture_conditional,
    };
    Ok(Report { results, summary })
}

/// Dispatches one named check.
pub fn run_check(spec: &CheckSpec, grid: &GridSpec) -> Result<CheckResult, EvalError> {
    let conjectural = spec.params.get("conjectural").map(String::as_str) == Some("true");
    let result = match spec.id.as_str() {
        "pointwise-disk" => {
            let (f, map_id) = need_map(spec)?;
            check_pointwise_disk(&f, &map_id, need_f64(spec, "alpha0")?, grid)?
        }
        "norm-bound" => {
            let (f, map_id) = need_map(spec)?;
            let domain = domain_for(spec, &map_id)?;
            check_norm_bound(&f, &domain, &map_id, need_f64(spec, "bound")?, grid)?
        }
        "norm-value" => {
            let (f, map_id) = need_map(spec)?;
            let domain = domain_for(spec, &map_id)?;
            let tol = opt_f64(spec, "tol")?.unwrap_or(1e-3);
            check_norm_value(&f, &domain, &map_id, need_f64(spec, "expected")?, tol, grid)?
        }
        "boundary-distance" => {
            let (f, map_id) = need_map(spec)?;
            let domain = domain_for(spec, &map_id)?;
            check_boundary_distance(&f, &domain, &map_id, need_f64(spec, "alpha0")?, grid)?
        }
        "comparison" => {
            let (f, map_id) = need_map(spec)?;
            let domain = domain_for(spec, &map_id)?;
            let mode = ComparisonMode::Single(need_c64(spec, "eps")?);
            check_comparison(&f, &domain, &map_id, mode, grid)?
        }
        "comparison-pair" => {
            let (f, map_id) = need_map(spec)?;
            let domain = domain_for(spec, &map_id)?;
            let mode = ComparisonMode::Pair(need_c64(spec, "eps1")?, need_c64(spec, "eps2")?);
            check_comparison(&f, &domain, &map_id, mode, grid)?
        }
        "comparison-unit" => {
            let (f, map_id) = need_map(spec)?;
            let domain = domain_for(spec, &map_id)?;
            let mode = ComparisonMode::Unit(need_c64(spec, "eps")?);
            check_comparison(&f, &domain, &map_id, mode, grid)?
        }
        "norm-comparison" => {
            let (f, map_id) = need_map(spec)?;
            let domain = domain_for(spec, &map_id)?;
            check_norm_comparison(&f, &domain, &map_id, need_c64(spec, "eps")?, grid)?
        }
        "norm-chain" => check_norm_chain(need_f64(spec, "k")?, need_f64(spec, "a")?, grid)?,
        "distortion" => {
            let family_id = need_param(spec, "family")?;
            let family = family_from_id::<f64>(family_id)?;
            let b1 = opt_c64(spec, "b1")?.unwrap_or_else(|| Complex::new(0.0, 0.0));
            let f = family.extremal(b1)?;
            let radii = [0.1, 0.25, 0.5, 0.75, 0.9];
            check_distortion(&f, family_id, family.alpha0(), b1, &radii, 64)?
                .conjectural(family.conjectural())
        }
        "majorization" => majorization_as_check(convex_kind(spec)?)?,
        "cor4-derivative" => cor4_as_check(convex_kind(spec)?)?,
        "osgood" => {
            let domain = domain_from_id::<f64>(
                spec.domain
                    .as_deref()
                    .ok_or_else(|| missing(spec, "domain"))?,
            )?;
            let expectation = match spec.params.get("expect").map(String::as_str) {
                Some("vanishing") => OsgoodExpectation::Vanishing,
                _ => OsgoodExpectation::Floor(opt_f64(spec, "floor")?.unwrap_or(0.499)),
            };
            check_osgood(&domain, expectation, grid)?
        }
        "divergence" => divergence_check(spec)?,
        "chain-rule" => chain_rule_check(100)?,
        "affine-invariance" => affine_invariance_check()?,
        "presch-oracle" => presch_oracle_check()?,
        "density-pullback" => density_pullback_check()?,
        other => {
            return Err(EvalError::InvalidParameter(format!(
                "unknown check id `{other}`"
            )))
        }
    };
    Ok(if conjectural {
        result.conjectural(true)
    } else {
        result
    })
}

fn missing(spec: &CheckSpec, key: &str) -> EvalError {
    EvalError::InvalidParameter(format!("check `{}` needs `{key}`", spec.id))
}

fn need_map(spec: &CheckSpec) -> Result<(HarmonicMap<f64>, String), EvalError> {
    let id = spec.map.as_deref().ok_or_else(|| missing(spec, "map"))?;
    Ok((map_from_id(id)?, id.to_string()))
}

fn domain_for(spec: &CheckSpec, map_id: &str) -> Result<DomainModel<f64>, EvalError> {
    match spec.domain.as_deref() {
        Some(d) => domain_from_id(d),
        None => domain_from_id(default_domain_id(map_id)),
    }
}

fn need_param<'s>(spec: &'s CheckSpec, key: &str) -> Result<&'s str, EvalError> {
    spec.params
        .get(key)
        .map(String::as_str)
        .ok_or_else(|| missing(spec, key))
}

fn opt_f64(spec: &CheckSpec, key: &str) -> Result<Option<f64>, EvalError> {
    match spec.params.get(key) {
        None => Ok(None),
        Some(text) => text.parse::<f64>().map(Some).map_err(|_| {
            EvalError::InvalidParameter(format!("`{key}` is not a number: `{text}`"))
        }),
    }
}

fn need_f64(spec: &CheckSpec, key: &str) -> Result<f64, EvalError> {
    opt_f64(spec, key)?.ok_or_else(|| missing(spec, key))
}

fn opt_c64(spec: &CheckSpec, key: &str) -> Result<Option<C64>, EvalError> {
    match spec.params.get(key) {
        None => Ok(None),
        Some(text) => parse_complex::<f64>(text).map(Some),
    }
}

fn need_c64(spec: &CheckSpec, key: &str) -> Result<C64, EvalError> {
    opt_c64(spec, key)?.ok_or_else(|| missing(spec, key))
}

fn convex_kind(spec: &CheckSpec) -> Result<ConvexKind, EvalError> {
    match need_param(spec, "family")? {
        "convex" => Ok(ConvexKind::Convex),
        "close-to-convex" => Ok(ConvexKind::CloseToConvex),
        other => Err(EvalError::InvalidParameter(format!(
            "majorization family must be convex or close-to-convex, got `{other}`"
        ))),
    }
}

fn divergence_check(spec: &CheckSpec) -> Result<CheckResult, EvalError> {
    let (f, map_id) = need_map(spec)?;
    let domain = domain_for(spec, &map_id)?;
    let threshold = opt_f64(spec, "threshold")?.unwrap_or(1e3);
    let weight = match spec.params.get("weight").map(String::as_str) {
        Some("exterior-weight") => Weight::ExteriorWeight,
        _ => Weight::InvDensity,
    };
    let found = divergence_witness(&f, &domain, threshold, weight)?;
    let (residual, point) = match found {
        Some((z, v)) => (threshold - v, z),
        None => (1.0, Complex::new(0.0, 0.0)),
    };
    let mut out = CheckResult::new(
        "divergence",
        &map_id,
        domain.label(),
        residual,
        point,
        1,
        0.0,
    )
    .with_param("threshold", threshold);
    if found.is_none() {
        out = out.with_note("no witness found within the search budget");
    }
    Ok(out)
}

/// Small deterministic generator for the structural sweeps, so reports
/// are reproducible without promoting an RNG crate to a hard dependency.
struct Lcg(u64);

impl Lcg {
    fn new(seed: u64) -> Self {
        Lcg(seed)
    }

    fn unit(&mut self) -> f64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }

    fn disk_point(&mut self, radius: f64) -> C64 {
        let r = radius * self.unit().sqrt();
        let theta = 2.0 * std::f64::consts::PI * self.unit();
        Complex::from_polar(r, theta)
    }
}

fn structural_maps() -> Result<Vec<(&'static str, HarmonicMap<f64>)>, EvalError> {
    Ok(vec![
        ("koebe", harmonic_koebe()),
        ("half-plane-L", half_plane_map()),
        ("f-alpha:2:0.3+0.2i", f_alpha(2.0, Complex::new(0.3, 0.2))?),
        ("f-k:0.7:1", f_k_family(0.7, 1.0)?),
    ])
}

/// Composes catalog maps with random disk automorphisms and verifies
/// the composition rule `P_{f∘phi} = P_f(phi)·phi' + P_phi` pointwise,
/// with the left side evaluated through the composed jets.
fn chain_rule_check(n: usize) -> Result<CheckResult, EvalError> {
    let maps = structural_maps()?;
    let mut rng = Lcg::new(0x9e37_79b9_7f4a_7c15);
    let mut worst = f64::NEG_INFINITY;
    let mut worst_at = Complex::new(0.0, 0.0);
    for i in 0..n {
        let (_, f) = &maps[i % maps.len()];
        let z0 = rng.disk_point(0.7);
        let theta = 2.0 * std::f64::consts::PI * rng.unit();
        let z = rng.disk_point(0.8);
        let phi = AnalyticMap::disk_automorphism(z0, theta)?;
        let composed = compose_conformal(f, &phi)?;
        let lhs = presch_at(&composed, z)?;
        let (d1, d2) = phi.eval_d12(z)?;
        let rhs = presch_at(f, phi.eval_value(z)?)? * d1 + d2 / d1;
        let gap = (lhs - rhs).norm();
        if gap > worst {
            worst = gap;
            worst_at = z;
        }
    }
    Ok(CheckResult::new("chain-rule", "-", "disk", worst, worst_at, n, 1e-9)
        .with_param("compositions", n))
}

/// Verifies that affine images `a·f + b·conj(f) + c` leave the
/// pre-Schwarzian untouched at sampled points.
fn affine_invariance_check() -> Result<CheckResult, EvalError> {
    let maps = structural_maps()?;
    let coeffs: [(C64, C64, C64); 3] = [
        (
            Complex::new(1.0, 0.0),
            Complex::new(0.3, 0.2),
            Complex::new(0.0, 0.0),
        ),
        (
            Complex::new(2.0, -1.0),
            Complex::new(0.5, 0.0),
            Complex::new(1.0, 1.0),
        ),
        (
            Complex::new(0.8, 0.0),
            Complex::new(0.0, -0.3),
            Complex::new(-2.0, 0.0),
        ),
    ];
    let mut rng = Lcg::new(0x51ed_270b);
    let mut worst = f64::NEG_INFINITY;
    let mut worst_at = Complex::new(0.0, 0.0);
    let mut samples = 0usize;
    for (_, f) in &maps {
        for &(a, b, c) in &coeffs {
            let image = f.affine_image(a, b, c)?;
            for _ in 0..8 {
                let z = rng.disk_point(0.85);
                let gap = (presch_at(&image, z)? - presch_at(f, z)?).norm();
                samples += 1;
                if gap > worst {
                    worst = gap;
                    worst_at = z;
                }
            }
        }
    }
    Ok(CheckResult::new(
        "affine-invariance",
        "-",
        "disk",
        worst,
        worst_at,
        samples,
        1e-12,
    ))
}

fn oracle_probe_points(domain: &DomainModel<f64>) -> Vec<C64> {
    match domain {
        DomainModel::UnitDisk => vec![
            Complex::new(0.3, 0.1),
            Complex::new(-0.5, 0.2),
            Complex::new(0.1, -0.6),
            Complex::new(0.0, 0.55),
            Complex::new(-0.25, -0.25),
        ],
        DomainModel::RightHalfPlane => vec![
            Complex::new(1.0, 0.5),
            Complex::new(2.0, -1.0),
            Complex::new(0.4, 0.1),
        ],
        DomainModel::ExteriorDisk => vec![
            Complex::new(2.0, 0.5),
            Complex::new(-3.0, 1.0),
            Complex::new(1.5, -0.9),
        ],
        DomainModel::PuncturedDisk => vec![
            Complex::new(0.3, 0.2),
            Complex::new(-0.4, 0.1),
            Complex::new(0.1, -0.5),
        ],
        DomainModel::SlitPlane => vec![
            Complex::new(1.0, 0.5),
            Complex::new(2.0, -1.0),
            Complex::new(0.5, 2.0),
        ],
        DomainModel::RiemannMapped(_) => vec![Complex::new(0.2, 0.1)],
    }
}

/// Compares the closed pre-Schwarzian against the finite-difference
/// Wirtinger derivative of `log J` across the whole catalog.
fn presch_oracle_check() -> Result<CheckResult, EvalError> {
    let ids = [
        "koebe",
        "half-plane-L",
        "k-alpha:2",
        "f-alpha:2:0.3+0.2i",
        "f-k:0.7:1",
        "identity",
        "ext-counter",
        "slit-example",
        "remark3",
        "recip",
    ];
    let mut worst = f64::NEG_INFINITY;
    let mut worst_at = Complex::new(0.0, 0.0);
    let mut samples = 0usize;
    for id in ids {
        let f = map_from_id::<f64>(id)?;
        for z in oracle_probe_points(f.domain()) {
            let gap = (presch_at(&f, z)? - presch_oracle(&f, z)?).norm();
            samples += 1;
            if gap > worst {
                worst = gap;
                worst_at = z;
            }
        }
    }
    Ok(CheckResult::new(
        "presch-oracle",
        "catalog",
        "-",
        worst,
        worst_at,
        samples,
        1e-6,
    ))
}

/// Checks the hyperbolic density closed forms against the pullback
/// through an explicit conformal chart of the domain.
fn density_pullback_check() -> Result<CheckResult, EvalError> {
    let cases: [(&str, AnalyticMap<f64>, DomainModel<f64>); 2] = [
        ("half-plane", AnalyticMap::cayley(), DomainModel::RightHalfPlane),
        ("slit-plane", AnalyticMap::cayley_sq(), DomainModel::SlitPlane),
    ];
    let probes = [
        Complex::new(0.0, 0.0),
        Complex::new(0.3, 0.1),
        Complex::new(-0.4, 0.5),
        Complex::new(0.1, -0.7),
        Complex::new(0.62, 0.3),
    ];
    let mut worst = f64::NEG_INFINITY;
    let mut worst_at = Complex::new(0.0, 0.0);
    let mut samples = 0usize;
    for (_, chart, domain) in &cases {
        for &w in &probes {
            let z = chart.eval_value(w)?;
            let (d1, _) = chart.eval_d12(w)?;
            let disk_density = 1.0 / (1.0 - w.norm_sqr());
            let pulled = disk_density / d1.norm();
            let closed = domain.density(z)?;
            let gap = (pulled - closed).abs() / closed;
            samples += 1;
            if gap > worst {
                worst = gap;
                worst_at = z;
            }
        }
    }
    Ok(CheckResult::new(
        "density-pullback",
        "-",
        "half-plane,slit-plane",
        worst,
        worst_at,
        samples,
        1e-8,
    ))
}

/// The stock batch: sharp norms, pointwise bounds, bound witnesses,
/// comparison and distortion sweeps, majorization, structural
/// identities, the Osgood floor, and the divergence witnesses.
pub fn default_config() -> ReportConfig {
    let mut checks = vec![
        CheckSpec::new("pointwise-disk").map("koebe").param("alpha0", 2.5),
        CheckSpec::new("pointwise-disk").map("half-plane-L").param("alpha0", 1.5),
        CheckSpec::new("pointwise-disk").map("f-alpha:2:0.5i").param("alpha0", 2.0),
        CheckSpec::new("pointwise-disk").map("identity").param("alpha0", 1.0),
        CheckSpec::new("norm-value").map("half-plane-L").param("expected", 5.0),
        CheckSpec::new("norm-value").map("koebe").param("expected", 7.0),
        CheckSpec::new("norm-value").map("k-alpha:1").param("expected", 4.0),
        CheckSpec::new("norm-value").map("k-alpha:1.5").param("expected", 5.0),
        CheckSpec::new("norm-value").map("k-alpha:2").param("expected", 6.0),
        CheckSpec::new("norm-value").map("k-alpha:2.5").param("expected", 7.0),
        CheckSpec::new("norm-bound")
            .map("remark3")
            .param("bound", 7.0)
            .param("conjectural", "true"),
        CheckSpec::new("norm-bound")
            .map("slit-example")
            .param("bound", 9.0)
            .param("conjectural", "true"),
        CheckSpec::new("norm-bound").map("k-alpha:2").param("bound", 6.0),
        CheckSpec::new("boundary-distance").map("koebe").param("alpha0", 2.5),
        CheckSpec::new("boundary-distance").map("identity").param("alpha0", 1.0),
        CheckSpec::new("comparison").map("f-k:0.7:1").param("eps", "1"),
        CheckSpec::new("comparison-pair")
            .map("f-k:0.5:0")
            .param("eps1", "1")
            .param("eps2", "-1"),
        CheckSpec::new("comparison-unit").map("f-alpha:2:0.3+0.2i").param("eps", "i"),
        CheckSpec::new("norm-comparison").map("f-k:0.7:1").param("eps", "1"),
    ];
    for k in [0.3, 0.7, 1.0] {
        for a in [0.0, 1.0, 2.5] {
            checks.push(CheckSpec::new("norm-chain").param("k", k).param("a", a));
        }
    }
    for family in ["f-alpha:2", "convex", "close-to-convex"] {
        for b1 in ["0", "0.5i"] {
            checks.push(
                CheckSpec::new("distortion")
                    .param("family", family)
                    .param("b1", b1),
            );
        }
    }
    for family in ["convex", "close-to-convex"] {
        checks.push(CheckSpec::new("majorization").param("family", family));
        checks.push(CheckSpec::new("cor4-derivative").param("family", family));
    }
    checks.extend([
        CheckSpec::new("chain-rule"),
        CheckSpec::new("affine-invariance"),
        CheckSpec::new("presch-oracle"),
        CheckSpec::new("density-pullback"),
        CheckSpec::new("osgood").domain("disk").param("floor", 0.499),
        CheckSpec::new("osgood").domain("half-plane").param("floor", 0.499),
        CheckSpec::new("osgood").domain("punctured-disk").param("expect", "vanishing"),
        CheckSpec::new("divergence")
            .map("ext-counter")
            .param("threshold", 1e3)
            .param("weight", "exterior-weight"),
        CheckSpec::new("divergence").map("recip").param("threshold", 1e3),
    ]);
    ReportConfig {
        checks,
        grid: report_grid(),
    }
}
