//! Textual `a+bi` form for complex numbers.
//!
//! The CLI accepts and emits complex values in this form. Formatting uses
//! Rust's shortest round-trip representation, so parsing the output always
//! recovers the exact value.

use crate::error::EvalError;
use crate::scalar::{Real, C};
use num_complex::Complex;

/// Formats a complex number as `a+bi` (always both parts, e.g. `3+0i`).
pub fn format_complex<T: Real>(z: C<T>) -> String {
    // Normalize negative zeros so output stays canonical.
    let re = if z.re == T::zero() { T::zero() } else { z.re };
    let im = if z.im == T::zero() { T::zero() } else { z.im };
    if im < T::zero() {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

/// Parses the `a+bi` form.
///
/// Accepted shapes: `1.5`, `-2`, `i`, `-i`, `0.5i`, `1+2i`, `1-2i`,
/// `1e-3+2.5e4i`. Whitespace is ignored wherever it appears.
pub fn parse_complex<T: Real>(text: &str) -> Result<C<T>, EvalError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let s = compact.as_str();
    if s.is_empty() {
        return Err(bad(text));
    }
    if let Some(body) = s.strip_suffix(['i', 'I']) {
        // Find the sign splitting real and imaginary parts. Skip a leading
        // sign and signs that belong to an exponent.
        let bytes = body.as_bytes();
        let mut split = None;
        for (idx, &b) in bytes.iter().enumerate().skip(1) {
            if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
            }
        }
        match split {
            Some(idx) => {
                let re = parse_real::<T>(&body[..idx]).ok_or_else(|| bad(text))?;
                let im = parse_imag::<T>(&body[idx..]).ok_or_else(|| bad(text))?;
                Ok(Complex::new(re, im))
            }
            None => {
                let im = parse_imag::<T>(body).ok_or_else(|| bad(text))?;
                Ok(Complex::new(T::zero(), im))
            }
        }
    } else {
        let re = parse_real::<T>(s).ok_or_else(|| bad(text))?;
        Ok(Complex::new(re, T::zero()))
    }
}

fn parse_real<T: Real>(s: &str) -> Option<T> {
    let v: f64 = s.trim().parse().ok()?;
    if v.is_finite() {
        Some(T::lit(v))
    } else {
        None
    }
}

/// Imaginary coefficient with the `i` stripped; bare signs mean +-1.
fn parse_imag<T: Real>(s: &str) -> Option<T> {
    match s.trim() {
        "" | "+" => Some(T::one()),
        "-" => Some(-T::one()),
        other => parse_real(other),
    }
}

fn bad(text: &str) -> EvalError {
    EvalError::InvalidParameter(format!("cannot parse {text:?} as a complex number (a+bi form)"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_common_shapes() {
        let cases: &[(&str, f64, f64)] = &[
            ("2", 2.0, 0.0),
            ("-1.5", -1.5, 0.0),
            ("i", 0.0, 1.0),
            ("-i", 0.0, -1.0),
            ("0.5i", 0.0, 0.5),
            ("-0.5i", 0.0, -0.5),
            ("1+i", 1.0, 1.0),
            ("1-i", 1.0, -1.0),
            ("0.3+0.1i", 0.3, 0.1),
            ("1e-3+2.5e4i", 1e-3, 2.5e4),
            ("-2.5e-1-3e+2i", -0.25, -300.0),
            (" 1 + 2i ", 1.0, 2.0),
        ];
        for &(text, re, im) in cases {
            let z: Complex<f64> = parse_complex(text).unwrap();
            assert_eq!(z, Complex::new(re, im), "case {text:?}");
        }
    }

    #[test]
    fn rejects_garbage() {
        for text in ["", "abc", "1+2j", "1++2i", "inf", "nan+1i"] {
            assert!(parse_complex::<f64>(text).is_err(), "case {text:?}");
        }
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_complex(Complex::new(3.0, 0.0)), "3+0i");
        assert_eq!(format_complex(Complex::new(0.0, 0.0)), "0+0i");
        assert_eq!(format_complex(Complex::new(-0.0, -0.0)), "0+0i");
        assert_eq!(format_complex(Complex::new(1.0, -2.0)), "1-2i");
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(re in -1e12f64..1e12, im in -1e12f64..1e12) {
            let z = Complex::new(re, im);
            let back: Complex<f64> = parse_complex(&format_complex(z)).unwrap();
            prop_assert_eq!(back, z);
        }
    }
}
