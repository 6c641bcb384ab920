//! High-precision brute-force summation: the independent oracle that every
//! symbolic result is checked against.

mod classical;
mod qseries;

pub use classical::{
    alternating_tail, classical_double_euler, classical_zeta, classical_zeta_int,
    classical_zeta_signed, power_tail, tornheim_naive,
};
pub use qseries::{
    phi_q, q_int, q_zeta1, q_zeta2, q_zeta2_truncated, tornheim_q, tornheim_q_window,
    TornheimWindow,
};

use rug::float::{Constant, Round};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Guard digits carried on top of the requested precision.
pub const GUARD_DIGITS: u32 = 15;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    /// Target decimal digits.
    pub digits: u32,
    /// Hard cap on any single summation index.
    pub max_terms: usize,
    /// Tail goal is `10^tail_goal_exp10`.
    pub tail_goal_exp10: i32,
}

impl PrecisionConfig {
    pub fn new(digits: u32) -> Result<Self> {
        if digits < 10 {
            return Err(Error::Domain(format!("digits must be >= 10, got {digits}")));
        }
        Ok(PrecisionConfig {
            digits,
            max_terms: 200_000,
            tail_goal_exp10: -(digits as i32) - 5,
        })
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Result<Self> {
        if max_terms < 100 {
            return Err(Error::Domain(format!(
                "max_terms must be >= 100, got {max_terms}"
            )));
        }
        self.max_terms = max_terms;
        Ok(self)
    }

    pub fn with_tail_goal_exp10(mut self, exp10: i32) -> Self {
        self.tail_goal_exp10 = exp10;
        self
    }

    /// Working precision in bits: digits plus guard digits.
    pub fn bits(&self) -> u32 {
        ((self.digits + GUARD_DIGITS) as f64 * LOG2_10).ceil() as u32 + 16
    }

    pub fn tail_goal(&self) -> Float {
        pow10(self.tail_goal_exp10, self.bits())
    }

    /// Absolute tolerance for comparisons: 10^(3 - digits).
    pub fn tolerance(&self) -> Float {
        pow10(3 - self.digits as i32, self.bits())
    }
}

/// q > 1, held exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QParam {
    q: Rational,
}

impl QParam {
    pub fn new(q: Rational) -> Result<Self> {
        if q <= 1 {
            return Err(Error::Domain(format!("q > 1 violated (q = {q})")));
        }
        Ok(QParam { q })
    }

    pub fn rational(&self) -> &Rational {
        &self.q
    }

    pub fn value(&self, bits: u32) -> Float {
        Float::with_val(bits, &self.q)
    }

    pub fn squared(&self) -> QParam {
        QParam {
            q: Rational::from(&self.q * &self.q),
        }
    }
}

/// A truncated series value with the rigorous-or-asymptotic bound on what
/// was left out.
#[derive(Debug, Clone)]
pub struct Summation {
    pub value: Float,
    pub tail_bound: Float,
    pub terms: usize,
}

pub fn pi(bits: u32) -> Float {
    Float::with_val(bits, Constant::Pi)
}

pub fn log2(bits: u32) -> Float {
    Float::with_val(bits, Constant::Log2)
}

pub fn pow10(exp: i32, bits: u32) -> Float {
    Float::with_val(bits, 10).pow(exp)
}

/// base^e for rational e; integer exponents avoid exp/log.
pub(crate) fn pow_rational(base: &Float, e: &Rational, bits: u32) -> Float {
    if *e.denom() == 1 {
        if let Some(k) = e.numer().to_i32() {
            return Float::with_val(bits, base.pow(k));
        }
    }
    let exponent = Float::with_val(bits, e);
    Float::with_val(bits, base.pow(&exponent))
}

/// Fixed-point decimal rendering with exactly `digits` digits after the
/// point, rounded to nearest.
pub fn render_fixed(x: &Float, digits: u32) -> String {
    let scaled = Float::with_val(x.prec() + 8, x * pow10(digits as i32, x.prec() + 8));
    let (int, _) = scaled
        .to_integer_round(Round::Nearest)
        .unwrap_or((Integer::new(), std::cmp::Ordering::Equal));
    let negative = int < 0;
    let mut body = int.abs().to_string();
    let d = digits as usize;
    if body.len() <= d {
        body = format!("{}{}", "0".repeat(d + 1 - body.len()), body);
    }
    let (whole, frac) = body.split_at(body.len() - d);
    let sign = if negative { "-" } else { "" };
    if d == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac}")
    }
}

/// Scientific rendering of a small positive bound, e.g. `3.1e-37`.
pub fn render_bound(x: &Float) -> String {
    if x.is_zero() {
        return "0".into();
    }
    format!("{:.2e}", x.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_limits() {
        assert!(PrecisionConfig::new(9).is_err());
        let p = PrecisionConfig::new(30).unwrap();
        assert_eq!(p.tail_goal_exp10, -35);
        assert!(p.bits() >= 150);
        assert!(p.clone().with_max_terms(99).is_err());
        assert!(QParam::new(Rational::from(1)).is_err());
        assert!(QParam::new(Rational::from((3, 2))).is_ok());
    }

    #[test]
    fn fixed_rendering() {
        let bits = 200;
        assert_eq!(render_fixed(&Float::with_val(bits, 0.5), 3), "0.500");
        assert_eq!(render_fixed(&Float::with_val(bits, -1.26), 1), "-1.3");
        assert_eq!(render_fixed(&Float::with_val(bits, 0.001), 2), "0.00");
        assert_eq!(render_fixed(&pi(bits), 10), "3.1415926536");
        assert_eq!(render_fixed(&Float::with_val(bits, 12), 0), "12");
    }
}
