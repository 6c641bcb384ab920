//! Partial fractions and the reduction of (q-)Tornheim series to double
//! (q-)Euler sums.
//!
//! Reductions are materialized as explicit term lists. The same list feeds
//! the numeric verifier, the exact evaluator and the `reduce` printer.

use std::fmt;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{ratio_string, QIndex, Sign, SignedIndex};
use crate::numeric::{
    classical_double_euler, phi_q, pow_rational, q_zeta1, q_zeta2, PrecisionConfig, QParam,
    Summation,
};
use crate::rational::binomial;

/// The three sign patterns of the Tornheim series: T = T(r, s, t),
/// S = T(bar r, bar s, t), R = T(r, bar s, t).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    T,
    S,
    R,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::T, Variant::S, Variant::R];

    /// (sigma, tau) attached to (u, v).
    pub fn signs(self) -> (Sign, Sign) {
        match self {
            Variant::T => (Sign::Plus, Sign::Plus),
            Variant::S => (Sign::Minus, Sign::Minus),
            Variant::R => (Sign::Plus, Sign::Minus),
        }
    }

    /// Inverse of [`Variant::signs`] up to the u <-> v symmetry: returns the
    /// variant and whether (r, s) must be swapped.
    pub fn from_signs(sigma: Sign, tau: Sign) -> (Variant, bool) {
        match (sigma, tau) {
            (Sign::Plus, Sign::Plus) => (Variant::T, false),
            (Sign::Minus, Sign::Minus) => (Variant::S, false),
            (Sign::Plus, Sign::Minus) => (Variant::R, false),
            (Sign::Minus, Sign::Plus) => (Variant::R, true),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Variant::T => "T",
            Variant::S => "S",
            Variant::R => "R",
        };
        write!(f, "{name}")
    }
}

/// Products of two depth-one (q-)zeta values: zeta[r] zeta[s],
/// zeta[bar r] zeta[bar s], zeta[r] zeta[bar s].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProductVariant {
    TT,
    SS,
    TS,
}

impl ProductVariant {
    pub const ALL: [ProductVariant; 3] =
        [ProductVariant::TT, ProductVariant::SS, ProductVariant::TS];

    pub fn tornheim(self) -> Variant {
        match self {
            ProductVariant::TT => Variant::T,
            ProductVariant::SS => Variant::S,
            ProductVariant::TS => Variant::R,
        }
    }
}

/// binom(z; a, b) = C(z, a) C(z - a, b).
pub fn trinomial(z: i64, a: u32, b: u32) -> Integer {
    binomial(z, a as i64) * binomial(z - a as i64, b as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
}

/// coefficient * (1-q)^one_minus_q_pow * q^(q_power_u u + q_power_v v)
///   / ([u]^denom_u_pow [v]^denom_v_pow [u+v]^denom_uv_pow)
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialFractionTerm {
    pub family: Family,
    #[serde(with = "ratio_string")]
    pub coefficient: Rational,
    pub q_power_u: i64,
    pub q_power_v: i64,
    pub denom_u_pow: u32,
    pub denom_v_pow: u32,
    pub denom_uv_pow: u32,
    pub one_minus_q_pow: u32,
}

/// [n]_q as an exact rational.
pub fn q_int_exact(n: u64, q: &Rational) -> Rational {
    let mut acc = Rational::new();
    let mut power = Rational::from(1);
    for _ in 0..n {
        acc += &power;
        power *= q;
    }
    acc
}

fn rational_pow(base: &Rational, e: i64) -> Rational {
    Rational::from(base.pow(e as i32))
}

impl PartialFractionTerm {
    pub fn evaluate(&self, u: u64, v: u64, q: &Rational) -> Rational {
        let one_minus_q: Rational = 1 - q.clone();
        let q_exp = self.q_power_u * u as i64 + self.q_power_v * v as i64;
        let num: Rational = &self.coefficient
            * rational_pow(&one_minus_q, self.one_minus_q_pow as i64)
            * rational_pow(q, q_exp);
        let den = rational_pow(&q_int_exact(u, q), self.denom_u_pow as i64)
            * rational_pow(&q_int_exact(v, q), self.denom_v_pow as i64)
            * rational_pow(&q_int_exact(u + v, q), self.denom_uv_pow as i64);
        num / den
    }
}

/// Partial-fraction expansion of 1 / ([u]^r [v]^s) in the three families.
pub fn lemma1_expand(r: u32, s: u32) -> Vec<PartialFractionTerm> {
    let (ri, si) = (r as i64, s as i64);
    let mut terms = Vec::new();
    for a in 0..r {
        for b in 0..r - a {
            terms.push(PartialFractionTerm {
                family: Family::A,
                coefficient: Rational::from(trinomial(a as i64 + si - 1, a, b)),
                q_power_u: si - 1 - b as i64,
                q_power_v: a as i64,
                denom_u_pow: r - a - b,
                denom_v_pow: 0,
                denom_uv_pow: s + a,
                one_minus_q_pow: b,
            });
        }
    }
    for a in 0..s {
        for b in 0..s - a {
            terms.push(PartialFractionTerm {
                family: Family::B,
                coefficient: Rational::from(trinomial(a as i64 + ri - 1, a, b)),
                q_power_u: a as i64,
                q_power_v: ri - 1 - b as i64,
                denom_u_pow: 0,
                denom_v_pow: s - a - b,
                denom_uv_pow: r + a,
                one_minus_q_pow: b,
            });
        }
    }
    for j in 1..=r.min(s) {
        terms.push(PartialFractionTerm {
            family: Family::C,
            coefficient: -Rational::from(trinomial(ri + si - j as i64 - 1, r - j, s - j)),
            q_power_u: si - j as i64,
            q_power_v: ri - j as i64,
            denom_u_pow: 0,
            denom_v_pow: 0,
            denom_uv_pow: r + s - j,
            one_minus_q_pow: j,
        });
    }
    terms
}

/// sum(terms at (u, v, q)) - 1/([u]^r [v]^s), exactly.
pub fn lemma1_residual(
    terms: &[PartialFractionTerm],
    r: u32,
    s: u32,
    u: u64,
    v: u64,
    q: &Rational,
) -> Rational {
    let mut sum = Rational::new();
    for term in terms {
        sum += term.evaluate(u, v, q);
    }
    let target = Rational::from(1)
        / (rational_pow(&q_int_exact(u, q), r as i64) * rational_pow(&q_int_exact(v, q), s as i64));
    sum - target
}

/// True iff the expansion reproduces 1/([u]^r [v]^s) exactly at (u, v, q).
pub fn verify_lemma1(r: u32, s: u32, u: u64, v: u64, q: &Rational) -> bool {
    lemma1_residual(&lemma1_expand(r, s), r, s, u, v, q) == 0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum QTermKind {
    /// (1-q)^one_minus_q_pow * zeta_q[outer, inner]
    DoubleQZeta {
        outer: QIndex,
        inner: QIndex,
        one_minus_q_pow: u32,
    },
    /// (1-q)^one_minus_q_pow * phi[index]
    Phi { index: QIndex, one_minus_q_pow: u32 },
    /// (1-q)^one_minus_q_pow * (1+q)^one_plus_q_pow * zeta_{q^2}[index]
    QSquaredZeta {
        #[serde(with = "ratio_string")]
        index: Rational,
        one_minus_q_pow: u32,
        #[serde(with = "ratio_string")]
        one_plus_q_pow: Rational,
    },
}

impl QTermKind {
    /// Sum of the (q-)zeta indices carried by the term.
    pub fn index_weight(&self) -> Rational {
        match self {
            QTermKind::DoubleQZeta { outer, inner, .. } => {
                Rational::from(&outer.value + &inner.value)
            }
            QTermKind::Phi { index, .. } => index.value.clone(),
            QTermKind::QSquaredZeta { index, .. } => index.clone(),
        }
    }

    pub fn one_minus_q_pow(&self) -> u32 {
        match self {
            QTermKind::DoubleQZeta {
                one_minus_q_pow, ..
            }
            | QTermKind::Phi {
                one_minus_q_pow, ..
            }
            | QTermKind::QSquaredZeta {
                one_minus_q_pow, ..
            } => *one_minus_q_pow,
        }
    }

    /// Numeric value including the (1-q) and (1+q) factors.
    pub fn evaluate(&self, q: &QParam, prec: &PrecisionConfig) -> Result<Summation> {
        let bits = prec.bits();
        let qf = q.value(bits);
        let one_minus_q = Float::with_val(bits, 1u32 - &qf);
        let factor = Float::with_val(bits, (&one_minus_q).pow(self.one_minus_q_pow()));
        let (raw, extra) = match self {
            QTermKind::DoubleQZeta { outer, inner, .. } => (
                q_zeta2(
                    (&outer.value, outer.sign),
                    (&inner.value, inner.sign),
                    q,
                    prec,
                )?,
                Float::with_val(bits, 1u32),
            ),
            QTermKind::Phi { index, .. } => (
                phi_q(&index.value, index.sign, q, prec)?,
                Float::with_val(bits, 1u32),
            ),
            QTermKind::QSquaredZeta {
                index,
                one_plus_q_pow,
                ..
            } => {
                let one_plus_q = Float::with_val(bits, &qf + 1u32);
                (
                    q_zeta1(index, Sign::Plus, &q.squared(), prec)?,
                    pow_rational(&one_plus_q, one_plus_q_pow, bits),
                )
            }
        };
        let scale = factor * extra;
        Ok(Summation {
            value: Float::with_val(bits, &raw.value * &scale),
            tail_bound: Float::with_val(bits, raw.tail_bound * scale.abs()),
            terms: raw.terms,
        })
    }
}

impl fmt::Display for QTermKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pow = self.one_minus_q_pow();
        let prefix = match pow {
            0 => String::new(),
            1 => "(1-q)*".to_string(),
            p => format!("(1-q)^{p}*"),
        };
        match self {
            QTermKind::DoubleQZeta { outer, inner, .. } => {
                write!(f, "{prefix}zeta_q[{outer}, {inner}]")
            }
            QTermKind::Phi { index, .. } => write!(f, "{prefix}phi[{index}]"),
            QTermKind::QSquaredZeta {
                index,
                one_plus_q_pow,
                ..
            } => {
                write!(f, "{prefix}(1+q)^({one_plus_q_pow})*zeta_{{q^2}}[{index}]")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTerm {
    #[serde(with = "ratio_string")]
    pub coeff: Rational,
    pub kind: QTermKind,
}

/// A symbolic sum of weighted double q-zeta, phi and q^2-zeta terms.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Reduction {
    pub terms: Vec<ReductionTerm>,
}

impl Reduction {
    fn push(&mut self, coeff: Integer, kind: QTermKind) {
        self.terms.push(ReductionTerm {
            coeff: Rational::from(coeff),
            kind,
        });
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate(&self, q: &QParam, prec: &PrecisionConfig) -> Result<Summation> {
        let bits = prec.bits();
        let mut value = Float::with_val(bits, 0);
        let mut bound = Float::with_val(bits, 0);
        let mut terms = 0;
        for term in &self.terms {
            let s = term.kind.evaluate(q, prec)?;
            let c = Float::with_val(bits, &term.coeff);
            value += Float::with_val(bits, &s.value * &c);
            bound += s.tail_bound * c.abs();
            terms = terms.max(s.terms);
        }
        Ok(Summation {
            value,
            tail_bound: bound,
            terms,
        })
    }

    /// Every term has total weight `weight`, where (1-q) counts as weight one
    /// and (1+q) as weight zero.
    pub fn is_weight_homogeneous(&self, weight: &Rational) -> bool {
        self.terms
            .iter()
            .all(|t| t.kind.index_weight() + t.kind.one_minus_q_pow() == *weight)
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, term) in self.terms.iter().enumerate() {
            let negative = term.coeff < 0;
            let abs = Rational::from(term.coeff.abs_ref());
            let sign = match (i, negative) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            if abs == 1 {
                write!(f, "{sign}{}", term.kind)?;
            } else {
                write!(f, "{sign}{abs}*{}", term.kind)?;
            }
        }
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn qi(value: Rational, sign: Sign) -> QIndex {
    QIndex::new(value, sign)
}

/// Expresses T[r, s, t; sigma, tau] through double q-Euler sums.
///
/// Families: A over 0 <= a <= r-1, 0 <= b <= r-1-a (lexicographic), then B
/// with r and s exchanged, then C over 1 <= j <= min(r, s). For R the last
/// family sums over even u + v only and becomes
/// +(1-q)^j (1+q)^(j-r-s-t) zeta_{q^2}[r+s+t-j].
pub fn theorem1_reduce(r: u32, s: u32, t: &Rational, variant: Variant) -> Result<Reduction> {
    if r == 0 || s == 0 {
        return Err(Error::Domain(format!(
            "r and s must be positive integers (r = {r}, s = {s})"
        )));
    }
    let (a_signs, b_signs) = match variant {
        Variant::T => ((Sign::Plus, Sign::Plus), (Sign::Plus, Sign::Plus)),
        Variant::S => ((Sign::Minus, Sign::Plus), (Sign::Minus, Sign::Plus)),
        Variant::R => ((Sign::Minus, Sign::Minus), (Sign::Plus, Sign::Minus)),
    };
    let (ri, si) = (r as i64, s as i64);
    let mut red = Reduction::default();
    for a in 0..r {
        for b in 0..r - a {
            red.push(
                trinomial(a as i64 + si - 1, a, b),
                QTermKind::DoubleQZeta {
                    outer: qi(Rational::from(t + (si + a as i64)), a_signs.0),
                    inner: qi(Rational::from(r - a - b), a_signs.1),
                    one_minus_q_pow: b,
                },
            );
        }
    }
    for a in 0..s {
        for b in 0..s - a {
            red.push(
                trinomial(a as i64 + ri - 1, a, b),
                QTermKind::DoubleQZeta {
                    outer: qi(Rational::from(t + (ri + a as i64)), b_signs.0),
                    inner: qi(Rational::from(s - a - b), b_signs.1),
                    one_minus_q_pow: b,
                },
            );
        }
    }
    for j in 1..=r.min(s) {
        let c = trinomial(ri + si - j as i64 - 1, r - j, s - j);
        let index = Rational::from(t + (ri + si - j as i64));
        match variant {
            Variant::T | Variant::S => {
                let sign = if variant == Variant::T {
                    Sign::Plus
                } else {
                    Sign::Minus
                };
                red.push(
                    -c,
                    QTermKind::Phi {
                        index: qi(index, sign),
                        one_minus_q_pow: j,
                    },
                );
            }
            Variant::R => {
                let one_plus_q_pow = Rational::from(j as i64 - ri - si) - t;
                red.push(
                    c,
                    QTermKind::QSquaredZeta {
                        index,
                        one_minus_q_pow: j,
                        one_plus_q_pow,
                    },
                );
            }
        }
    }
    Ok(red)
}

/// The t = 0 decomposition of zeta_q[r] zeta_q[s] (and its signed forms),
/// with coefficients written as C(a+s-1, s-1) C(s-1, b).
pub fn product_decompose(r: u32, s: u32, variant: ProductVariant) -> Result<Reduction> {
    if r == 0 || s == 0 {
        return Err(Error::Domain(format!(
            "r and s must be positive integers (r = {r}, s = {s})"
        )));
    }
    let (ri, si) = (r as i64, s as i64);
    let (a_signs, b_signs) = match variant {
        ProductVariant::TT => ((Sign::Plus, Sign::Plus), (Sign::Plus, Sign::Plus)),
        ProductVariant::SS => ((Sign::Minus, Sign::Plus), (Sign::Minus, Sign::Plus)),
        ProductVariant::TS => ((Sign::Minus, Sign::Minus), (Sign::Plus, Sign::Minus)),
    };
    let mut red = Reduction::default();
    for a in 0..r {
        for b in 0..r - a {
            red.push(
                binomial(a as i64 + si - 1, si - 1) * binomial(si - 1, b as i64),
                QTermKind::DoubleQZeta {
                    outer: qi(Rational::from(si + a as i64), a_signs.0),
                    inner: qi(Rational::from(r - a - b), a_signs.1),
                    one_minus_q_pow: b,
                },
            );
        }
    }
    for a in 0..s {
        for b in 0..s - a {
            red.push(
                binomial(a as i64 + ri - 1, ri - 1) * binomial(ri - 1, b as i64),
                QTermKind::DoubleQZeta {
                    outer: qi(Rational::from(ri + a as i64), b_signs.0),
                    inner: qi(Rational::from(s - a - b), b_signs.1),
                    one_minus_q_pow: b,
                },
            );
        }
    }
    for j in 1..=r.min(s) {
        let c = trinomial(ri + si - j as i64 - 1, r - j, s - j);
        let index = Rational::from(ri + si - j as i64);
        match variant {
            ProductVariant::TT | ProductVariant::SS => {
                let sign = if variant == ProductVariant::TT {
                    Sign::Plus
                } else {
                    Sign::Minus
                };
                red.push(
                    -c,
                    QTermKind::Phi {
                        index: qi(index, sign),
                        one_minus_q_pow: j,
                    },
                );
            }
            ProductVariant::TS => red.push(
                c,
                QTermKind::QSquaredZeta {
                    index,
                    one_minus_q_pow: j,
                    one_plus_q_pow: Rational::from(j as i64 - ri - si),
                },
            ),
        }
    }
    Ok(red)
}

/// Left side of the product decomposition: zeta_q[r; sigma] zeta_q[s; tau].
pub fn product_value(
    r: u32,
    s: u32,
    variant: ProductVariant,
    q: &QParam,
    prec: &PrecisionConfig,
) -> Result<Summation> {
    let (sigma, tau) = variant.tornheim().signs();
    let a = q_zeta1(&Rational::from(r), sigma, q, prec)?;
    let b = q_zeta1(&Rational::from(s), tau, q, prec)?;
    let bits = prec.bits();
    let bound = Float::with_val(bits, &a.tail_bound * b.value.clone().abs())
        + Float::with_val(bits, &b.tail_bound * a.value.clone().abs())
        + Float::with_val(bits, &a.tail_bound * &b.tail_bound);
    Ok(Summation {
        value: a.value * b.value,
        tail_bound: bound,
        terms: a.terms.max(b.terms),
    })
}

/// coeff * zeta(outer, inner) with classical signed indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalTerm {
    #[serde(with = "ratio_string")]
    pub coeff: Rational,
    pub outer: SignedIndex,
    pub inner: SignedIndex,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ClassicalReduction {
    pub terms: Vec<ClassicalTerm>,
}

impl ClassicalReduction {
    /// Numeric value from Euler–Maclaurin double Euler sums.
    pub fn evaluate(&self, prec: &PrecisionConfig) -> Result<Summation> {
        let bits = prec.bits();
        let mut value = Float::with_val(bits, 0);
        let mut bound = Float::with_val(bits, 0);
        for term in &self.terms {
            let z = classical_double_euler(term.outer, term.inner, prec)?;
            let c = Float::with_val(bits, &term.coeff);
            value += Float::with_val(bits, &z.value * &c);
            bound += z.tail_bound * c.abs();
        }
        Ok(Summation {
            value,
            tail_bound: bound,
            terms: self.terms.len(),
        })
    }
}

impl fmt::Display for ClassicalReduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if term.coeff == 1 {
                write!(f, "zeta({}, {})", term.outer, term.inner)?;
            } else {
                write!(f, "{}*zeta({}, {})", term.coeff, term.outer, term.inner)?;
            }
        }
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Convergence conditions for the classical series, by variant.
pub fn classical_conditions(r: i64, s: i64, t: i64, variant: Variant) -> Result<()> {
    if r < 1 || s < 1 {
        return Err(Error::Domain(format!(
            "r and s must be positive integers (r = {r}, s = {s})"
        )));
    }
    let (need_r, need_s) = match variant {
        Variant::T => (1, 1),
        Variant::S => (0, 0),
        Variant::R => (1, 0),
    };
    let mut failures = Vec::new();
    if r + t <= need_r {
        failures.push(format!("r+t>{need_r} violated"));
    }
    if s + t <= need_s {
        failures.push(format!("s+t>{need_s} violated"));
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Error::Domain(failures.join("; ")))
    }
}

/// Classical reduction of T, S, R to double Euler sums (the q -> 1 limit,
/// where every (1-q) term drops out).
pub fn corollary1_reduce(r: i64, s: i64, t: i64, variant: Variant) -> Result<ClassicalReduction> {
    classical_conditions(r, s, t, variant)?;
    let (a_signs, b_signs) = match variant {
        Variant::T => ((Sign::Plus, Sign::Plus), (Sign::Plus, Sign::Plus)),
        Variant::S => ((Sign::Minus, Sign::Plus), (Sign::Minus, Sign::Plus)),
        Variant::R => ((Sign::Minus, Sign::Minus), (Sign::Plus, Sign::Minus)),
    };
    let mut terms = Vec::new();
    for a in 0..r {
        terms.push(ClassicalTerm {
            coeff: Rational::from(binomial(a + s - 1, s - 1)),
            outer: SignedIndex::new(s + t + a, a_signs.0),
            inner: SignedIndex::new(r - a, a_signs.1),
        });
    }
    for a in 0..s {
        terms.push(ClassicalTerm {
            coeff: Rational::from(binomial(a + r - 1, r - 1)),
            outer: SignedIndex::new(r + t + a, b_signs.0),
            inner: SignedIndex::new(s - a, b_signs.1),
        });
    }
    Ok(ClassicalReduction { terms })
}

/// Classical product decomposition: corollary1_reduce at t = 0.
pub fn classical_product_decompose(
    r: i64,
    s: i64,
    variant: ProductVariant,
) -> Result<ClassicalReduction> {
    corollary1_reduce(r, s, 0, variant.tornheim())
}
