//! Classical (q = 1) zeta values and double Euler sums.
//!
//! Tails of sum_{n>=x} eps^n n^(-p) use the Euler–Maclaurin expansion for
//! eps = +1 and the Euler–Boole expansion (Euler polynomials at zero) for
//! eps = -1. Both are asymptotic in 1/x; the truncation error is bounded by
//! the first omitted term.

use rug::ops::Pow;
use rug::{Float, Rational};

use super::{PrecisionConfig, Summation};
use crate::bernoulli::{bernoulli, euler_poly_at_zero};
use crate::error::{Error, Result};
use crate::index::{Sign, SignedIndex};
use crate::rational::factorial;

const MAX_EXPANSION_TERMS: u32 = 400;

/// Terms (c_j, e_j) of sum_{m>=x} eps^m m^(-p) = eps^x sum_j c_j x^(-e_j).
struct TailExpansion {
    bits: u32,
    eps: Sign,
    p: Float,
    k: u32,
    rising: Float,
}

impl TailExpansion {
    fn new(eps: Sign, p: &Float, bits: u32) -> Self {
        TailExpansion {
            bits,
            eps,
            p: p.clone(),
            k: 0,
            rising: Float::with_val(bits, 1u32),
        }
    }
}

impl Iterator for TailExpansion {
    type Item = (Float, Float);

    fn next(&mut self) -> Option<(Float, Float)> {
        let bits = self.bits;
        loop {
            if self.k > MAX_EXPANSION_TERMS {
                return None;
            }
            let k = self.k;
            self.k += 1;
            match self.eps {
                Sign::Plus => {
                    // x^(1-p)/(p-1) + x^(-p)/2 + sum_k B_2k/(2k)! (p)_(2k-1) x^(-p-2k+1)
                    match k {
                        0 => {
                            let c =
                                Float::with_val(bits, 1u32) / Float::with_val(bits, &self.p - 1u32);
                            return Some((c, Float::with_val(bits, &self.p - 1u32)));
                        }
                        1 => {
                            let c = Float::with_val(bits, 0.5);
                            return Some((c, self.p.clone()));
                        }
                        _ => {
                            let j = k - 1;
                            // (p)_(2j-1) from (p)_(2j-3)
                            if j == 1 {
                                self.rising = self.p.clone();
                            } else {
                                let a = Float::with_val(bits, &self.p + (2 * j - 3));
                                let b = Float::with_val(bits, &self.p + (2 * j - 2));
                                self.rising *= a * b;
                            }
                            let coeff: Rational = bernoulli(2 * j) / factorial(2 * j);
                            let c = Float::with_val(bits, &coeff) * &self.rising;
                            let e = Float::with_val(bits, &self.p + (2 * j - 1));
                            return Some((c, e));
                        }
                    }
                }
                Sign::Minus => {
                    // (1/2) sum_k E_k(0)/k! (-1)^k (p)_k x^(-p-k)
                    if k > 0 {
                        self.rising *= Float::with_val(bits, &self.p + (k - 1));
                    }
                    let ek = euler_poly_at_zero(k);
                    if ek == 0 {
                        continue;
                    }
                    let mut coeff: Rational = ek / factorial(k) / 2u32;
                    if k % 2 == 1 {
                        coeff = -coeff;
                    }
                    let c = Float::with_val(bits, &coeff) * &self.rising;
                    let e = Float::with_val(bits, &self.p + k);
                    return Some((c, e));
                }
            }
        }
    }
}

/// Sums an asymptotic series whose terms are produced lazily, stopping at the
/// first term below `goal`. Fails if the terms start growing first.
fn sum_asymptotic<I: Iterator<Item = Float>>(
    terms: I,
    goal: &Float,
    bits: u32,
    what: &str,
) -> Result<Summation> {
    let mut sum = Float::with_val(bits, 0);
    let mut previous: Option<Float> = None;
    for (count, term) in terms.enumerate() {
        let size = Float::with_val(bits, term.abs_ref());
        if size <= *goal {
            return Ok(Summation {
                value: sum,
                tail_bound: size,
                terms: count,
            });
        }
        if let Some(prev) = &previous {
            // past the smallest term of a divergent asymptotic series
            if count > 3 && size > *prev {
                break;
            }
        }
        sum += term;
        previous = Some(size);
    }
    Err(Error::Precision(format!(
        "{what}: asymptotic expansion did not reach the tail goal"
    )))
}

fn signed_unit(eps: Sign, x: u64) -> i32 {
    eps.pow(x).value()
}

/// sum_{n>=x0} eps^n n^(-p), for p > 1 when eps = +1 and p > 0 otherwise.
pub fn power_tail(eps: Sign, p: &Float, x0: u64, goal: &Float, bits: u32) -> Result<Summation> {
    if eps == Sign::Plus && *p <= 1 {
        return Err(Error::Domain(format!("power tail diverges for p = {p}")));
    }
    let x = Float::with_val(bits, x0);
    let ln_x = x.ln();
    let terms = TailExpansion::new(eps, p, bits).map(|(c, e)| {
        let power = Float::with_val(bits, -e * &ln_x).exp();
        c * power
    });
    let mut s = sum_asymptotic(terms, goal, bits, "power_tail")?;
    if signed_unit(eps, x0) < 0 {
        s.value = -s.value;
    }
    Ok(s)
}

/// sum_{n>=1} (-1)^n n^(-p) summed directly up to `cutoff` plus the
/// Euler–Boole tail. Independent of the (2^(1-p) - 1) zeta(p) route.
pub fn alternating_tail(p: &Float, cutoff: u64, goal: &Float, bits: u32) -> Result<Float> {
    let mut sum = Float::with_val(bits, 0);
    for n in 1..cutoff {
        let term = Float::with_val(bits, n).pow(&(-p.clone()));
        if n % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
    }
    let tail = power_tail(Sign::Minus, p, cutoff, goal, bits)?;
    Ok(sum + tail.value)
}

fn cutoff_for(prec: &PrecisionConfig) -> u64 {
    4 * prec.digits as u64 + 100
}

/// Riemann zeta at real s > 1 by Euler–Maclaurin.
pub fn classical_zeta(s: &Rational, prec: &PrecisionConfig) -> Result<Float> {
    if *s <= 1 {
        return Err(Error::Domain(format!("zeta({s}) needs s > 1")));
    }
    let bits = prec.bits();
    let sf = Float::with_val(bits, s);
    let neg = Float::with_val(bits, -&sf);
    let cutoff = cutoff_for(prec);
    let mut sum = Float::with_val(bits, 0);
    for n in 1..cutoff {
        sum += Float::with_val(bits, n).pow(&neg);
    }
    let goal = prec.tail_goal() / 100u32;
    let tail = power_tail(Sign::Plus, &sf, cutoff, &goal, bits)?;
    Ok(sum + tail.value)
}

pub fn classical_zeta_int(k: i64, prec: &PrecisionConfig) -> Result<Float> {
    classical_zeta(&Rational::from(k), prec)
}

/// zeta(k; sigma): plain zeta, or (2^(1-k) - 1) zeta(k) when barred, with
/// zeta(bar 1) = -log 2.
pub fn classical_zeta_signed(k: SignedIndex, prec: &PrecisionConfig) -> Result<Float> {
    let bits = prec.bits();
    match (k.value, k.sign) {
        (v, _) if v < 1 => Err(Error::Domain(format!("zeta({k}) needs an index >= 1"))),
        (1, Sign::Plus) => Err(Error::Domain("zeta(1) diverges".into())),
        (1, Sign::Minus) => Ok(-super::log2(bits)),
        (v, Sign::Plus) => classical_zeta_int(v, prec),
        (v, Sign::Minus) => {
            let factor = Float::with_val(bits, 2u32).pow(1 - v as i32) - 1u32;
            Ok(classical_zeta_int(v, prec)? * factor)
        }
    }
}

/// zeta(s1, s2; sigma1, sigma2) = sum_{n1 > n2 > 0} sigma1^n1 n1^-s1 sigma2^n2 n2^-s2.
///
/// The outer index n2 is summed directly up to N with the inner tail
/// T(n) = sum_{m>n} sigma1^m m^-s1 carried backwards from an asymptotic
/// start value. For n2 > N, T(n) = U(n) - sigma1^n n^-s1 where
/// U(n) = sigma1^n sum_j c_j n^(-e_j); each piece then becomes a one-level
/// power tail in n2 with sign sigma1 sigma2.
pub fn classical_double_euler(
    s1: SignedIndex,
    s2: SignedIndex,
    prec: &PrecisionConfig,
) -> Result<Summation> {
    let min_outer = if s1.sign == Sign::Plus { 2 } else { 1 };
    if s1.value < min_outer {
        return Err(Error::Domain(format!(
            "zeta({s1}, {s2}) diverges: leading index must be >= {min_outer}"
        )));
    }
    if s2.value < 1 {
        return Err(Error::Domain(format!(
            "zeta({s1}, {s2}) needs a trailing index >= 1"
        )));
    }
    let bits = prec.bits();
    let goal = prec.tail_goal() / 1000u32;
    let cutoff = cutoff_for(prec);
    let p1 = Float::with_val(bits, s1.value);
    let p2 = Float::with_val(bits, s2.value);
    let power = |n: u64, p: i64| Float::with_val(bits, n).pow(-(p as i32));

    // T(N) = sum_{m >= N+1} sigma1^m m^-s1
    let start = power_tail(s1.sign, &p1, cutoff + 1, &goal, bits)?;
    let mut inner = start.value;
    let mut head = Float::with_val(bits, 0);
    for n in (1..=cutoff).rev() {
        let outer = power(n, s2.value);
        let term = Float::with_val(bits, &outer * &inner);
        if s2.sign.pow(n) == Sign::Minus {
            head -= term;
        } else {
            head += term;
        }
        let step = power(n, s1.value);
        if s1.sign.pow(n) == Sign::Minus {
            inner -= step;
        } else {
            inner += step;
        }
    }

    let eps = s1.sign * s2.sign;
    let x = cutoff + 1;
    let mut bound = start.tail_bound;
    let mut expansion_terms = Vec::new();
    for (c, e) in TailExpansion::new(s1.sign, &p1, bits) {
        let p = Float::with_val(bits, &p2 + &e);
        let t = power_tail(eps, &p, x, &goal, bits)?;
        bound += Float::with_val(bits, t.tail_bound.clone() * c.clone().abs());
        expansion_terms.push(c * t.value);
        if expansion_terms.len() > 4 {
            let last = expansion_terms
                .last()
                .map(|f| Float::with_val(bits, f.abs_ref()));
            if last.is_some_and(|l| l <= goal) {
                break;
            }
        }
    }
    let tail_sum = sum_asymptotic(
        expansion_terms.into_iter(),
        &goal,
        bits,
        "double Euler tail",
    )?;
    let diagonal = power_tail(eps, &Float::with_val(bits, &p1 + &p2), x, &goal, bits)?;
    bound += tail_sum.tail_bound + diagonal.tail_bound;
    let value = head + tail_sum.value - diagonal.value;
    Ok(Summation {
        value,
        tail_bound: bound,
        terms: cutoff as usize,
    })
}

/// Plain f64 double summation of the classical Tornheim series over
/// 1 <= u, v <= n. A low-precision sanity oracle only.
pub fn tornheim_naive(r: i32, s: i32, t: i32, sigma: Sign, tau: Sign, n: u32) -> f64 {
    let mut total = 0.0;
    for u in 1..=n {
        let su = if sigma.pow(u as u64) == Sign::Minus {
            -1.0
        } else {
            1.0
        };
        let fu = (u as f64).powi(-r);
        let mut row = 0.0;
        for v in 1..=n {
            let sv = if tau.pow(v as u64) == Sign::Minus {
                -1.0
            } else {
                1.0
            };
            row += sv * (v as f64).powi(-s) * ((u + v) as f64).powi(-t);
        }
        total += su * fu * row;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{log2, pi, PrecisionConfig};

    fn prec() -> PrecisionConfig {
        PrecisionConfig::new(30).unwrap()
    }

    fn close(a: &Float, b: &Float, tol: &Float) -> bool {
        Float::with_val(a.prec(), a - b).abs() <= *tol
    }

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let p = prec();
        let z2 = classical_zeta_int(2, &p).unwrap();
        let exact = pi(p.bits()).square() / 6u32;
        assert!(close(&z2, &exact, &p.tolerance()));
        assert!(close(&z2, &exact, &crate::numeric::pow10(-36, p.bits())));
    }

    #[test]
    fn zeta_three_digits() {
        let p = prec();
        let z3 = classical_zeta_int(3, &p).unwrap();
        assert_eq!(
            crate::numeric::render_fixed(&z3, 30),
            "1.202056903159594285399738161511"
        );
    }

    #[test]
    fn alternating_one_is_minus_log2() {
        let p = prec();
        let v = classical_zeta_signed(SignedIndex::bar(1), &p).unwrap();
        assert_eq!(v, -log2(p.bits()));
        let direct =
            alternating_tail(&Float::with_val(p.bits(), 1), 200, &p.tail_goal(), p.bits()).unwrap();
        assert!(close(&v, &direct, &p.tolerance()));
    }

    #[test]
    fn divergent_inputs() {
        let p = prec();
        assert!(matches!(
            classical_zeta_signed(SignedIndex::plain(1), &p),
            Err(Error::Domain(_))
        ));
        assert!(classical_zeta(&Rational::from(1), &p).is_err());
        assert!(classical_double_euler(SignedIndex::plain(1), SignedIndex::plain(2), &p).is_err());
        assert!(classical_double_euler(SignedIndex::plain(2), SignedIndex::plain(0), &p).is_err());
    }

    #[test]
    fn zeta_two_one_is_zeta_three() {
        let p = prec();
        let z21 = classical_double_euler(SignedIndex::plain(2), SignedIndex::plain(1), &p).unwrap();
        let z3 = classical_zeta_int(3, &p).unwrap();
        assert!(close(&z21.value, &z3, &p.tolerance()));
    }

    #[test]
    fn real_argument_zeta() {
        // zeta(3/2) = 2.612375348685488343348567567924...
        let p = prec();
        let v = classical_zeta(&Rational::from((3, 2)), &p).unwrap();
        assert_eq!(
            &crate::numeric::render_fixed(&v, 25),
            "2.6123753486854883433485676"
        );
    }
}
