//! String IDs for maps and domains, shared by the CLI and report configs.
//!
//! Map IDs: `koebe`, `half-plane-L`, `k-alpha:{alpha}`, `f-alpha:{alpha}:{b1}`,
//! `f-k:{k}:{a}`, `ext-counter`, `slit-example`, `remark3`, `identity`,
//! `recip`, `cayley`, `cayley-sq`.
//! Domain IDs: `disk`, `half-plane`, `exterior`, `punctured-disk`,
//! `slit-plane`, `riemann:{chart-id}`.

use crate::catalog::analytic::AnalyticMap;
use crate::catalog::harmonic::{
    self, analytic_as_harmonic, Family, HarmonicMap,
};
use crate::cplx::parse_complex;
use crate::domain::DomainModel;
use crate::error::EvalError;
use crate::scalar::Real;

fn bad_id(kind: &str, id: &str) -> EvalError {
    EvalError::InvalidParameter(format!("unknown {kind} id: {id}"))
}

fn parse_real<T: Real>(text: &str, what: &str) -> Result<T, EvalError> {
    text.parse::<f64>()
        .map(T::lit)
        .map_err(|_| EvalError::InvalidParameter(format!("bad {what}: {text}")))
}

/// Builds a catalog map from its ID.
pub fn map_from_id<T: Real>(id: &str) -> Result<HarmonicMap<T>, EvalError> {
    match id {
        "koebe" => return Ok(harmonic::harmonic_koebe()),
        "half-plane-L" => return Ok(harmonic::half_plane_map()),
        "ext-counter" => return harmonic::exterior_counterexample(),
        "slit-example" => return harmonic::slit_plane_example(),
        "remark3" => return harmonic::halfplane_remark3(),
        "identity" => return Ok(harmonic::identity_map()),
        "recip" => return harmonic::recip_punctured(),
        "cayley" | "cayley-sq" => return Ok(analytic_as_harmonic(analytic_from_id(id)?)),
        _ => {}
    }
    if let Some(rest) = id.strip_prefix("k-alpha:") {
        let alpha = parse_real::<T>(rest, "alpha")?;
        return Ok(analytic_as_harmonic(AnalyticMap::k_alpha(alpha)?));
    }
    if let Some(rest) = id.strip_prefix("f-alpha:") {
        let (alpha, b1) = rest
            .split_once(':')
            .ok_or_else(|| bad_id("map", id))?;
        return harmonic::f_alpha(parse_real::<T>(alpha, "alpha")?, parse_complex(b1)?);
    }
    if let Some(rest) = id.strip_prefix("f-k:") {
        let (k, a) = rest.split_once(':').ok_or_else(|| bad_id("map", id))?;
        return harmonic::f_k_family(parse_real::<T>(k, "k")?, parse_real::<T>(a, "a")?);
    }
    Err(bad_id("map", id))
}

/// Builds an analytic chart from its ID (used for `riemann:` domains and
/// for wrapping charts as maps).
pub fn analytic_from_id<T: Real>(id: &str) -> Result<AnalyticMap<T>, EvalError> {
    match id {
        "cayley" => Ok(AnalyticMap::cayley()),
        "cayley-sq" => Ok(AnalyticMap::cayley_sq()),
        _ => {
            if let Some(rest) = id.strip_prefix("k-alpha:") {
                AnalyticMap::k_alpha(parse_real::<T>(rest, "alpha")?)
            } else {
                Err(bad_id("chart", id))
            }
        }
    }
}

/// Builds a domain from its ID.
pub fn domain_from_id<T: Real>(id: &str) -> Result<DomainModel<T>, EvalError> {
    match id {
        "disk" => Ok(DomainModel::UnitDisk),
        "half-plane" => Ok(DomainModel::RightHalfPlane),
        "exterior" => Ok(DomainModel::ExteriorDisk),
        "punctured-disk" => Ok(DomainModel::PuncturedDisk),
        "slit-plane" => Ok(DomainModel::SlitPlane),
        _ => {
            if let Some(chart) = id.strip_prefix("riemann:") {
                DomainModel::riemann_mapped(analytic_from_id(chart)?)
            } else {
                Err(bad_id("domain", id))
            }
        }
    }
}

/// Builds a family descriptor from its ID: `convex`, `close-to-convex`,
/// `s-h` (optional `:alpha0`, default 2.5), `f-alpha:{alpha}`.
pub fn family_from_id<T: Real>(id: &str) -> Result<Family<T>, EvalError> {
    match id {
        "convex" => return Ok(Family::Convex),
        "close-to-convex" => return Ok(Family::CloseToConvex),
        "s-h" => {
            return Ok(Family::Univalent {
                alpha0: T::lit(2.5),
            })
        }
        _ => {}
    }
    if let Some(rest) = id.strip_prefix("s-h:") {
        return Ok(Family::Univalent {
            alpha0: parse_real::<T>(rest, "alpha0")?,
        });
    }
    if let Some(rest) = id.strip_prefix("f-alpha:") {
        return Ok(Family::OfOrder {
            alpha: parse_real::<T>(rest, "alpha")?,
        });
    }
    Err(bad_id("family", id))
}

/// The default domain a catalog map lives on, as an ID.
pub fn default_domain_id(map_id: &str) -> &'static str {
    match map_id {
        "ext-counter" => "exterior",
        "slit-example" => "slit-plane",
        "remark3" => "half-plane",
        "recip" => "punctured-disk",
        _ => "disk",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::clit;

    #[test]
    fn map_ids_round_trip() {
        for id in [
            "koebe",
            "half-plane-L",
            "k-alpha:2",
            "f-alpha:2.5:0.5i",
            "f-k:0.7:1",
            "ext-counter",
            "slit-example",
            "remark3",
            "identity",
            "recip",
        ] {
            let map = map_from_id::<f64>(id);
            assert!(map.is_ok(), "{id}: {map:?}");
            let domain = domain_from_id::<f64>(default_domain_id(id));
            assert!(domain.is_ok(), "{id}");
        }
        assert!(map_from_id::<f64>("nope").is_err());
        assert!(map_from_id::<f64>("f-alpha:2.5").is_err());
    }

    #[test]
    fn f_alpha_id_parses_b1() {
        let map = map_from_id::<f64>("f-alpha:2:0.3-0.4i").unwrap();
        let ((hp, _), (gp, _)) = map.part_derivs(clit(0.0, 0.0)).unwrap();
        assert!((gp / hp - clit(0.3, -0.4)).norm() < 1e-13);
    }

    #[test]
    fn domain_ids() {
        assert!(domain_from_id::<f64>("disk").is_ok());
        assert!(domain_from_id::<f64>("riemann:cayley").is_ok());
        assert!(domain_from_id::<f64>("riemann:cayley-sq").is_ok());
        assert!(domain_from_id::<f64>("riemann:nope").is_err());
        assert!(domain_from_id::<f64>("annulus").is_err());
    }

    #[test]
    fn family_ids() {
        assert_eq!(family_from_id::<f64>("convex").unwrap(), Family::Convex);
        assert_eq!(
            family_from_id::<f64>("s-h").unwrap(),
            Family::Univalent { alpha0: 2.5 }
        );
        assert_eq!(
            family_from_id::<f64>("s-h:2.7").unwrap(),
            Family::Univalent { alpha0: 2.7 }
        );
        assert_eq!(
            family_from_id::<f64>("f-alpha:1.5").unwrap(),
            Family::OfOrder { alpha: 1.5 }
        );
        assert!(family_from_id::<f64>("weird").is_err());
    }
}
