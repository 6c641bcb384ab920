//! q-series for real q > 1.
//!
//! With x = 1/q every summand is rewritten as
//!
//!   q^((s-1)n) / [n]_q^s = (q-1)^s * x^n * (1 - x^n)^(-s),
//!
//! so the terms decay geometrically for every real exponent and the tails
//! are bounded by geometric series: for n > N,
//! (1 - x^n)^(-s) <= c_N = (1 - x^(N+1))^(-s) when s > 0, and <= 1 otherwise.

use rug::ops::Pow;
use rug::{Assign, Float, Rational};

use super::{pow_rational, PrecisionConfig, QParam, Summation};
use crate::error::{Error, Result};
use crate::index::Sign;

/// [n]_q = (q^n - 1) / (q - 1).
pub fn q_int(n: u64, q: &QParam, bits: u32) -> Float {
    let qf = q.value(bits);
    let num = Float::with_val(bits, (&qf).pow(n as u32)) - 1u32;
    num / (qf - 1u32)
}

/// Shared state for one exponent: the sequence w_n = x^n (1-x^n)^(-s)
/// without the constant (q-1)^s.
struct Geometric {
    bits: u32,
    x: Float,
    one_minus_x: Float,
}

impl Geometric {
    fn new(q: &QParam, bits: u32) -> Self {
        let x = Float::with_val(bits, 1u32) / q.value(bits);
        let one_minus_x = Float::with_val(bits, 1u32 - &x);
        Geometric {
            bits,
            x,
            one_minus_x,
        }
    }

    fn factor(&self, xn: &Float, s: &Rational) -> Float {
        let base = Float::with_val(self.bits, 1u32 - xn);
        pow_rational(&base, &-s.clone(), self.bits)
    }

    /// c_N for the tail n > N, given x^(N+1).
    fn tail_factor(&self, x_next: &Float, s: &Rational) -> Float {
        if *s > 0 {
            self.factor(x_next, s)
        } else {
            Float::with_val(self.bits, 1u32)
        }
    }

    /// Bound on sum_{n>N} |w_n(s)| given x^(N+1).
    fn tail(&self, x_next: &Float, s: &Rational) -> Float {
        self.tail_factor(x_next, s) * x_next / &self.one_minus_x
    }

    fn scale(&self, q: &QParam, s: &Rational) -> Float {
        let qm1 = q.value(self.bits) - 1u32;
        pow_rational(&qm1, s, self.bits)
    }
}

fn signed(sign: Sign, n: u64, v: Float) -> Float {
    if sign.pow(n) == Sign::Minus {
        -v
    } else {
        v
    }
}

fn precision_error(what: &str, prec: &PrecisionConfig) -> Error {
    Error::Precision(format!(
        "{what}: tail bound 1e{} not reached within {} terms",
        prec.tail_goal_exp10, prec.max_terms
    ))
}

/// zeta_q[s; sigma] = sum_{n>=1} sigma^n q^((s-1)n) / [n]_q^s.
pub fn q_zeta1(s: &Rational, sign: Sign, q: &QParam, prec: &PrecisionConfig) -> Result<Summation> {
    let bits = prec.bits();
    let g = Geometric::new(q, bits);
    let scale = g.scale(q, s);
    let goal = prec.tail_goal();
    let mut sum = Float::with_val(bits, 0);
    let mut xn = Float::with_val(bits, 1u32);
    for n in 1..=prec.max_terms as u64 {
        xn *= &g.x;
        let term = g.factor(&xn, s) * &xn;
        sum += signed(sign, n, term);
        let x_next = Float::with_val(bits, &xn * &g.x);
        let bound = Float::with_val(bits, g.tail(&x_next, s) * &scale).abs();
        if bound <= goal {
            return Ok(Summation {
                value: sum * &scale,
                tail_bound: bound,
                terms: n as usize,
            });
        }
    }
    Err(precision_error("q_zeta1", prec))
}

/// phi[s; sigma] = sum_{n>=1} (n-1) sigma^n q^((s-1)n) / [n]_q^s.
pub fn phi_q(s: &Rational, sign: Sign, q: &QParam, prec: &PrecisionConfig) -> Result<Summation> {
    let bits = prec.bits();
    let g = Geometric::new(q, bits);
    let scale = g.scale(q, s);
    let goal = prec.tail_goal();
    let mut sum = Float::with_val(bits, 0);
    let mut xn = Float::with_val(bits, 1u32);
    for n in 1..=prec.max_terms as u64 {
        xn *= &g.x;
        if n > 1 {
            let term = g.factor(&xn, s) * &xn * (n - 1);
            sum += signed(sign, n, term);
        }
        // sum_{k>n} (k-1) x^k = x^(n+1) (n/(1-x) + x/(1-x)^2)
        let x_next = Float::with_val(bits, &xn * &g.x);
        let shape = Float::with_val(bits, n) / &g.one_minus_x
            + Float::with_val(bits, &g.x / g.one_minus_x.clone().square());
        let bound =
            Float::with_val(bits, g.tail_factor(&x_next, s) * &x_next * shape * &scale).abs();
        if bound <= goal {
            return Ok(Summation {
                value: sum * &scale,
                tail_bound: bound,
                terms: n as usize,
            });
        }
    }
    Err(precision_error("phi_q", prec))
}

/// Partial sum of zeta_q[s1, s2; sigma1, sigma2] over N >= m > n > 0.
pub fn q_zeta2_truncated(
    (s1, sign1): (&Rational, Sign),
    (s2, sign2): (&Rational, Sign),
    q: &QParam,
    n_max: u64,
    bits: u32,
) -> Float {
    let g = Geometric::new(q, bits);
    let mut sum = Float::with_val(bits, 0);
    let mut prefix = Float::with_val(bits, 0);
    let mut xn = Float::with_val(bits, 1u32);
    for m in 1..=n_max {
        xn *= &g.x;
        let a = signed(sign1, m, g.factor(&xn, s1) * &xn);
        sum += a * &prefix;
        prefix += signed(sign2, m, g.factor(&xn, s2) * &xn);
    }
    sum * g.scale(q, s1) * g.scale(q, s2)
}

/// zeta_q[s1, s2; sigma1, sigma2] = sum_{m>n>0} of the product of the two
/// depth-one summands. The inner sum is carried as a running prefix, so the
/// cost is linear in the cutoff.
pub fn q_zeta2(
    (s1, sign1): (&Rational, Sign),
    (s2, sign2): (&Rational, Sign),
    q: &QParam,
    prec: &PrecisionConfig,
) -> Result<Summation> {
    let bits = prec.bits();
    let g = Geometric::new(q, bits);
    let scale = g.scale(q, s1) * g.scale(q, s2);
    let goal = prec.tail_goal();
    let mut sum = Float::with_val(bits, 0);
    let mut prefix = Float::with_val(bits, 0);
    let mut prefix_abs = Float::with_val(bits, 0);
    let mut xn = Float::with_val(bits, 1u32);
    for m in 1..=prec.max_terms as u64 {
        xn *= &g.x;
        let a = signed(sign1, m, g.factor(&xn, s1) * &xn);
        sum += a * &prefix;
        let b = g.factor(&xn, s2) * &xn;
        prefix_abs += b.clone().abs();
        prefix += signed(sign2, m, b);
        let x_next = Float::with_val(bits, &xn * &g.x);
        let inner_all = Float::with_val(bits, &prefix_abs + g.tail(&x_next, s2));
        let bound = Float::with_val(bits, g.tail(&x_next, s1) * inner_all * &scale).abs();
        if bound <= goal {
            return Ok(Summation {
                value: sum * &scale,
                tail_bound: bound,
                terms: m as usize,
            });
        }
    }
    Err(precision_error("q_zeta2", prec))
}

/// Summation window for the q-Tornheim double series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TornheimWindow {
    /// 1 <= u, v <= N
    Square,
    /// u, v >= 1 and u + v <= 2N
    Triangle,
}

/// T[r, s, t; sigma, tau] over the square window.
pub fn tornheim_q(
    r: &Rational,
    s: &Rational,
    t: &Rational,
    sigma: Sign,
    tau: Sign,
    q: &QParam,
    prec: &PrecisionConfig,
) -> Result<Summation> {
    tornheim_q_window(r, s, t, sigma, tau, q, prec, TornheimWindow::Square)
}

/// T[r, s, t; sigma, tau] = sum_{u,v>=1} sigma^u tau^v
/// q^((r+t-1)u + (s+t-1)v) / ([u]^r [v]^s [u+v]^t).
///
/// The summand factors as (q-1)^(r+s+t) A_u B_v C_(u+v) with
/// A_u = sigma^u x^u (1-x^u)^(-r), B_v likewise, C_w = (1-x^w)^(-t). The
/// cutoff N is the first one where
///
///   (q-1)^(r+s+t) * max C * (tail(A) * sum|B| + tail(B) * sum|A|)
///
/// falls below the tail goal; both windows contain the N x N square, so the
/// same bound covers them. Terms are accumulated as symmetric pairs so that
/// swapping (r, sigma) with (s, tau) gives a bit-identical result.
#[allow(clippy::too_many_arguments)]
pub fn tornheim_q_window(
    r: &Rational,
    s: &Rational,
    t: &Rational,
    sigma: Sign,
    tau: Sign,
    q: &QParam,
    prec: &PrecisionConfig,
    window: TornheimWindow,
) -> Result<Summation> {
    let bits = prec.bits();
    let g = Geometric::new(q, bits);
    let weight = Rational::from(r + s) + t;
    let scale = g.scale(q, &weight);
    let goal = prec.tail_goal();

    let mut a: Vec<Float> = vec![Float::with_val(bits, 0)];
    let mut b: Vec<Float> = vec![Float::with_val(bits, 0)];
    let mut xs: Vec<Float> = vec![Float::with_val(bits, 1u32)];
    let mut a_abs = Float::with_val(bits, 0);
    let mut b_abs = Float::with_val(bits, 0);
    let mut cutoff = None;
    for n in 1..=prec.max_terms as u64 {
        let xn = Float::with_val(bits, &xs[n as usize - 1] * &g.x);
        let an = g.factor(&xn, r) * &xn;
        let bn = g.factor(&xn, s) * &xn;
        a_abs += an.clone().abs();
        b_abs += bn.clone().abs();
        a.push(signed(sigma, n, an));
        b.push(signed(tau, n, bn));
        xs.push(xn);

        let x_next = Float::with_val(bits, &xs[n as usize] * &g.x);
        let x_next2 = Float::with_val(bits, &x_next * &g.x);
        let tail_a = g.tail(&x_next, r);
        let tail_b = g.tail(&x_next, s);
        let c_max = g.tail_factor(&x_next2, t);
        let cross_a = Float::with_val(bits, &tail_a * Float::with_val(bits, &b_abs + &tail_b));
        let cross_b = Float::with_val(bits, &tail_b * Float::with_val(bits, &a_abs + &tail_a));
        let bound = Float::with_val(bits, (cross_a + cross_b) * c_max * &scale).abs();
        if bound <= goal {
            cutoff = Some((n as usize, bound));
            break;
        }
    }
    let Some((n, bound)) = cutoff else {
        return Err(precision_error("tornheim_q", prec));
    };

    let reach = match window {
        TornheimWindow::Square => n,
        TornheimWindow::Triangle => 2 * n - 1,
    };
    while xs.len() <= 2 * reach {
        let k = xs.len() as u64;
        let xn = Float::with_val(bits, &xs[k as usize - 1] * &g.x);
        if (k as usize) <= reach {
            a.push(signed(sigma, k, g.factor(&xn, r) * &xn));
            b.push(signed(tau, k, g.factor(&xn, s) * &xn));
        }
        xs.push(xn);
    }
    let c: Vec<Float> = xs.iter().map(|xw| g.factor(xw, t)).collect();

    let in_window = |u: usize, v: usize| match window {
        TornheimWindow::Square => u <= n && v <= n,
        TornheimWindow::Triangle => u + v <= 2 * n,
    };
    let mut sum = Float::with_val(bits, 0);
    let mut left = Float::new(bits);
    let mut right = Float::new(bits);
    for u in 1..=reach {
        for v in u..=reach {
            if !in_window(u, v) {
                break;
            }
            left.assign(&a[u] * &b[v]);
            left *= &c[u + v];
            if u == v {
                sum += &left;
            } else {
                right.assign(&a[v] * &b[u]);
                right *= &c[u + v];
                left += &right;
                sum += &left;
            }
        }
    }
    Ok(Summation {
        value: sum * scale,
        tail_bound: bound,
        terms: n,
    })
}
