//! Bernoulli numbers and the rational constants derived from them.

use std::sync::Mutex;

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::rational::{binomial, factorial};

static TABLE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// B_n with B_1 = -1/2, from the recurrence sum_{k=0}^{n} C(n+1, k) B_k = 0.
pub fn bernoulli(n: u32) -> Rational {
    let mut table = TABLE.lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= n as usize {
        let m = table.len() as u32;
        let next = if m == 0 {
            Rational::from(1)
        } else if m > 1 && m % 2 == 1 {
            Rational::new()
        } else {
            let mut acc = Rational::new();
            for (k, bk) in table.iter().enumerate() {
                if *bk != 0 {
                    acc += Rational::from(binomial(m as i64 + 1, k as i64)) * bk;
                }
            }
            -acc / Integer::from(m + 1)
        };
        table.push(next);
    }
    table[n as usize].clone()
}

/// The rational c with zeta(k) = c * pi^k, for even k >= 2.
///
/// zeta(2m) = (-1)^(m+1) B_{2m} (2 pi)^(2m) / (2 (2m)!).
pub fn zeta_even_as_pi(k: i64) -> Result<Rational> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::Domain(format!(
            "zeta_even_as_pi needs an even k >= 2, got {k}"
        )));
    }
    let m = (k / 2) as u32;
    let sign = if m % 2 == 1 { 1 } else { -1 };
    let two_pow = Integer::from(Integer::u_pow_u(2, 2 * m));
    let value = bernoulli(2 * m) * two_pow / (factorial(2 * m) * 2u32) * sign;
    Ok(value)
}

/// Value at zero of the k-th Euler polynomial, E_k(0).
///
/// These are the coefficients of 2 / (e^z + 1) = sum_k E_k(0) z^k / k!, which
/// drive the Euler–Boole expansion of alternating tails.
pub fn euler_poly_at_zero(k: u32) -> Rational {
    if k == 0 {
        return Rational::from(1);
    }
    let two_pow = Integer::from(Integer::u_pow_u(2, k + 1)) - 1u32;
    -(bernoulli(k + 1) * two_pow * 2u32) / Integer::from(k + 1)
}
