//! Error type shared by evaluation, transform construction, and checks.

use num_complex::Complex;
use thiserror::Error;

/// Errors raised when evaluating maps or constructing transforms.
///
/// Points are stored as `Complex<f64>` regardless of the working scalar so
/// the error type stays non-generic. Jet-level arithmetic does not know the
/// evaluation point; callers attach it with [`EvalError::at`].
#[derive(Debug, Clone, Error, PartialEq)]
pub enum EvalError {
    /// The requested point lies outside the map's domain of definition.
    #[error("point {point} is outside the domain {domain}")]
    OutsideDomain { point: Complex<f64>, domain: String },

    /// The point is within the guard distance of a declared singularity.
    #[error("point {point} is within {guard:e} of the singular point {singular}")]
    NearSingularity {
        point: Complex<f64>,
        singular: Complex<f64>,
        guard: f64,
    },

    /// Division by a zero value during evaluation.
    #[error("division by zero{}", fmt_at(.point))]
    DivisionByZero { point: Option<Complex<f64>> },

    /// The Jacobian is non-positive where the map must be sense-preserving.
    #[error("map is not sense-preserving at {point} (jacobian {jacobian:e})")]
    NotSensePreserving { point: Complex<f64>, jacobian: f64 },

    /// An operation that needs the analytic decomposition got a direct map.
    #[error("{op} requires a map given as an analytic decomposition h + conj(g)")]
    RequiresDecomposition { op: &'static str },

    /// A normalizing denominator vanished (affine or Koebe transform).
    #[error("degenerate normalization in {op}: |{denom}| too small")]
    DegenerateNormalization {
        op: &'static str,
        denom: Complex<f64>,
    },

    /// Affine coefficients with |a| <= |b| would flip or destroy orientation.
    #[error("affine coefficients reverse orientation: |a| = {a_mod:e} <= |b| = {b_mod:e}")]
    OrientationLoss { a_mod: f64, b_mod: f64 },

    /// A parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A norm needed as a finite quantity did not converge.
    #[error("norm estimate did not converge for {context}; treating as divergent")]
    DivergentNorm { context: String },

    /// Newton inversion of a Riemann map failed to converge.
    #[error("conformal inversion did not converge near {point}")]
    InversionFailed { point: Complex<f64> },

    /// The operation is not defined for the given domain model.
    #[error("{op} is not supported for domain {domain}")]
    UnsupportedDomain { op: &'static str, domain: String },
}

fn fmt_at(point: &Option<Complex<f64>>) -> String {
    match point {
        Some(p) => format!(" at {p}"),
        None => String::new(),
    }
}

impl EvalError {
    /// Fills in the evaluation point on errors raised below the map layer.
    pub fn at(self, point: Complex<f64>) -> Self {
        match self {
            EvalError::DivisionByZero { point: None } => {
                EvalError::DivisionByZero { point: Some(point) }
            }
            other => other,
        }
    }
}
