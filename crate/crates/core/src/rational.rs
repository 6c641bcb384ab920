//! Exact rational helpers on top of GMP rationals.

use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// Binomial coefficient C(n, k) for any integer `n`; zero when `k < 0`.
///
/// For `n >= 0` and `k > n` the falling factorial contains a zero factor, so
/// the result is zero as well.
pub fn binomial(n: i64, k: i64) -> Integer {
    if k < 0 {
        return Integer::new();
    }
    Integer::from(n).binomial(k as u32)
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::from((num, den))
}

/// Formats as `p/q`, always with an explicit denominator.
pub fn to_ratio_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q`, an integer, or a finite decimal such as `1.5` or `-0.25`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if (int_digits.is_empty() && frac_part.is_empty())
            || !int_digits.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(Error::Parse(format!("invalid decimal '{s}'")));
        }
        let digits = format!("{int_digits}{frac_part}");
        let num = Integer::from_str_radix(if digits.is_empty() { "0" } else { &digits }, 10)
            .map_err(|e| Error::Parse(format!("invalid decimal '{s}': {e}")))?;
        let den = Integer::from(Integer::u_pow_u(10, frac_part.len() as u32));
        let value = Rational::from((num, den));
        return Ok(if negative { -value } else { value });
    }
    s.parse::<Rational>()
        .map_err(|e| Error::Parse(format!("invalid rational '{s}': {e}")))
}
