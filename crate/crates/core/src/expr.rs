//! The canonical zeta ring Q[pi, log 2, zeta(3), zeta(5), ...].
//!
//! Every exact result lives here. Even zeta values are eliminated in favour
//! of powers of pi, alternating constants are rewritten through
//! zeta(k; -1) = (2^(1-k) - 1) zeta(k), and zeta(1; -1) = -log 2.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bernoulli::zeta_even_as_pi;
use crate::error::{Error, Result};
use crate::index::{Sign, SignedIndex};
use crate::numeric::{self, PrecisionConfig};
use crate::rational::parse_rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ZetaMonomial {
    pub pi: u32,
    pub log2: u32,
    /// Odd arguments k >= 3, sorted ascending, repeated for powers.
    zeta: Vec<u32>,
}

impl ZetaMonomial {
    pub fn one() -> Self {
        ZetaMonomial::default()
    }

    pub fn new(pi: u32, log2: u32, mut zeta: Vec<u32>) -> Result<Self> {
        if let Some(bad) = zeta.iter().find(|&&k| k < 3 || k % 2 == 0) {
            return Err(Error::Domain(format!(
                "odd zeta factor must be an odd integer >= 3, got {bad}"
            )));
        }
        zeta.sort_unstable();
        Ok(ZetaMonomial { pi, log2, zeta })
    }

    pub fn zeta_factors(&self) -> &[u32] {
        &self.zeta
    }

    pub fn weight(&self) -> u32 {
        self.pi + self.log2 + self.zeta.iter().sum::<u32>()
    }

    pub fn is_one(&self) -> bool {
        self.pi == 0 && self.log2 == 0 && self.zeta.is_empty()
    }

    fn times(&self, other: &ZetaMonomial) -> ZetaMonomial {
        let mut zeta = self.zeta.clone();
        zeta.extend_from_slice(&other.zeta);
        zeta.sort_unstable();
        ZetaMonomial {
            pi: self.pi + other.pi,
            log2: self.log2 + other.log2,
            zeta,
        }
    }
}

impl Ord for ZetaMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.weight(), self.pi, self.log2, &self.zeta).cmp(&(
            other.weight(),
            other.pi,
            other.log2,
            &other.zeta,
        ))
    }
}

impl PartialOrd for ZetaMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ZetaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.pi {
            0 => {}
            1 => parts.push("pi".into()),
            p => parts.push(format!("pi^{p}")),
        }
        match self.log2 {
            0 => {}
            1 => parts.push("log(2)".into()),
            p => parts.push(format!("log(2)^{p}")),
        }
        let mut i = 0;
        while i < self.zeta.len() {
            let k = self.zeta[i];
            let run = self.zeta[i..].iter().take_while(|&&x| x == k).count();
            if run == 1 {
                parts.push(format!("zeta({k})"));
            } else {
                parts.push(format!("zeta({k})^{run}"));
            }
            i += run;
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Sparse polynomial with rational coefficients over [`ZetaMonomial`]s.
///
/// Canonical by construction: keys are unique (map) and zero coefficients
/// are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZetaExpression {
    terms: BTreeMap<ZetaMonomial, Rational>,
}

impl ZetaExpression {
    pub fn zero() -> Self {
        ZetaExpression::default()
    }

    pub fn constant(c: Rational) -> Self {
        ZetaExpression::monomial(c, ZetaMonomial::one())
    }

    pub fn monomial(c: Rational, m: ZetaMonomial) -> Self {
        let mut e = ZetaExpression::zero();
        e.add_term(m, c);
        e
    }

    pub fn pi_pow(k: u32) -> Self {
        ZetaExpression::monomial(
            Rational::from(1),
            ZetaMonomial {
                pi: k,
                ..Default::default()
            },
        )
    }

    pub fn log2() -> Self {
        ZetaExpression::monomial(
            Rational::from(1),
            ZetaMonomial {
                log2: 1,
                ..Default::default()
            },
        )
    }

    /// Atomic zeta(k) for odd k >= 3.
    pub fn zeta_odd(k: u32) -> Result<Self> {
        Ok(ZetaExpression::monomial(
            Rational::from(1),
            ZetaMonomial::new(0, 0, vec![k])?,
        ))
    }

    /// Builds from possibly repeated or zero terms, merging into canonical form.
    pub fn from_terms<I: IntoIterator<Item = (ZetaMonomial, Rational)>>(terms: I) -> Self {
        let mut e = ZetaExpression::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, m: ZetaMonomial, c: Rational) {
        if c == 0 {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if *existing == 0 {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&ZetaMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &ZetaMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if *c == 0 {
            return ZetaExpression::zero();
        }
        ZetaExpression {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), Rational::from(v * c)))
                .collect(),
        }
    }

    /// Rebuilds the map from scratch. Idempotent; expressions are already
    /// canonical, so this is the identity on values.
    pub fn canonicalize(&self) -> Self {
        ZetaExpression::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    /// Common weight of all monomials, or `None` when mixed or empty.
    pub fn weight(&self) -> Option<u32> {
        let mut weights = self.terms.keys().map(ZetaMonomial::weight);
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = ZetaExpression::constant(Rational::from(1));
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Numeric value using pi, log 2 and odd zeta values at `prec`.
    pub fn numeric(&self, prec: &PrecisionConfig) -> Float {
        let bits = prec.bits();
        let pi = numeric::pi(bits);
        let log2 = numeric::log2(bits);
        let mut zetas: HashMap<u32, Float> = HashMap::new();
        let mut total = Float::with_val(bits, 0);
        for (m, c) in &self.terms {
            let mut v = Float::with_val(bits, c);
            if m.pi > 0 {
                v *= Float::with_val(bits, (&pi).pow(m.pi));
            }
            if m.log2 > 0 {
                v *= Float::with_val(bits, (&log2).pow(m.log2));
            }
            for &k in &m.zeta {
                let z = zetas.entry(k).or_insert_with(|| {
                    numeric::classical_zeta_int(k as i64, prec)
                        .expect("odd zeta argument >= 3 converges")
                });
                v *= &*z;
            }
            total += v;
        }
        total
    }
}

/// zeta(k) for sign +1, zeta(bar k) = (2^(1-k) - 1) zeta(k) for sign -1,
/// with zeta(bar 1) = -log 2. zeta(1) diverges.
pub fn zeta_const(k: SignedIndex) -> Result<ZetaExpression> {
    let SignedIndex { value, sign } = k;
    if value < 1 {
        return Err(Error::Domain(format!("zeta({k}) needs an index >= 1")));
    }
    if value == 1 {
        return match sign {
            Sign::Plus => Err(Error::Domain("zeta(1) diverges".into())),
            Sign::Minus => Ok(-ZetaExpression::log2()),
        };
    }
    let plain = if value % 2 == 0 {
        ZetaExpression::monomial(
            zeta_even_as_pi(value)?,
            ZetaMonomial {
                pi: value as u32,
                ..Default::default()
            },
        )
    } else {
        ZetaExpression::zeta_odd(value as u32)?
    };
    Ok(match sign {
        Sign::Plus => plain,
        Sign::Minus => {
            let factor =
                Rational::from((1, Integer::from(Integer::u_pow_u(2, (value - 1) as u32)))) - 1u32;
            plain.scale(&factor)
        }
    })
}

impl Neg for ZetaExpression {
    type Output = ZetaExpression;
    fn neg(self) -> ZetaExpression {
        ZetaExpression {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Add<&ZetaExpression> for &ZetaExpression {
    type Output = ZetaExpression;
    fn add(self, rhs: &ZetaExpression) -> ZetaExpression {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for ZetaExpression {
    type Output = ZetaExpression;
    fn add(mut self, rhs: ZetaExpression) -> ZetaExpression {
        self += &rhs;
        self
    }
}

impl AddAssign<&ZetaExpression> for ZetaExpression {
    fn add_assign(&mut self, rhs: &ZetaExpression) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Sub<&ZetaExpression> for &ZetaExpression {
    type Output = ZetaExpression;
    fn sub(self, rhs: &ZetaExpression) -> ZetaExpression {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), Rational::from(-c));
        }
        out
    }
}

impl Sub for ZetaExpression {
    type Output = ZetaExpression;
    fn sub(self, rhs: ZetaExpression) -> ZetaExpression {
        &self - &rhs
    }
}

impl Mul<&ZetaExpression> for &ZetaExpression {
    type Output = ZetaExpression;
    fn mul(self, rhs: &ZetaExpression) -> ZetaExpression {
        let mut out = ZetaExpression::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(mb), Rational::from(ca * cb));
            }
        }
        out
    }
}

impl Mul for ZetaExpression {
    type Output = ZetaExpression;
    fn mul(self, rhs: ZetaExpression) -> ZetaExpression {
        &self * &rhs
    }
}

/// Terms print highest weight first and, within a weight, highest power of pi
/// first, matching the usual presentation of these values.
impl fmt::Display for ZetaExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = *c < 0;
            let abs = Rational::from(c.abs_ref());
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let coeff = if *abs.denom() == 1 {
                abs.numer().to_string()
            } else {
                format!("({}/{})", abs.numer(), abs.denom())
            };
            if m.is_one() {
                write!(f, "{}", coeff.trim_start_matches('(').trim_end_matches(')'))?;
            } else if abs == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{coeff}*{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: String,
    pi: u32,
    log2: u32,
    zeta: Vec<u32>,
}

impl Serialize for ZetaExpression {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let reprs: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(m, c)| TermRepr {
                coeff: crate::rational::to_ratio_string(c),
                pi: m.pi,
                log2: m.log2,
                zeta: m.zeta.clone(),
            })
            .collect();
        reprs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZetaExpression {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let reprs = Vec::<TermRepr>::deserialize(d)?;
        let mut e = ZetaExpression::zero();
        for r in reprs {
            let c = parse_rational(&r.coeff).map_err(serde::de::Error::custom)?;
            let m = ZetaMonomial::new(r.pi, r.log2, r.zeta).map_err(serde::de::Error::custom)?;
            e.add_term(m, c);
        }
        Ok(e)
    }
}

impl FromStr for ZetaExpression {
    type Err = Error;

    /// Parses the human syntax produced by `Display`, e.g.
    /// `-(5/16)*pi^2*zeta(3) + (107/32)*zeta(5)`. Even zeta arguments and
    /// `log(2)` / `log2` are accepted and canonicalized.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.starts_with('[') {
            return serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()));
        }
        Parser::new(trimmed).parse_expression()
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            src,
        }
    }

    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {} in '{}'", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, word: &str) -> bool {
        self.skip_ws();
        let w: Vec<char> = word.chars().collect();
        if self.chars[self.pos..].starts_with(&w) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_digit() || self.chars[self.pos] == '.')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.eat('^') {
            self.number()?
                .parse::<u32>()
                .map_err(|_| self.error("expected an integer exponent"))
        } else {
            Ok(1)
        }
    }

    fn rational_literal(&mut self) -> Result<Rational> {
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut text = self.number()?;
        if self.eat('/') {
            text = format!("{text}/{}", self.number()?);
        }
        let r = parse_rational(&text)?;
        Ok(if negative { -r } else { r })
    }

    fn parse_expression(&mut self) -> Result<ZetaExpression> {
        let mut total = ZetaExpression::zero();
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            let term = self.parse_term()?;
            total += &(if sign < 0 { -term } else { term });
            match self.peek() {
                None => break,
                Some('+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -1;
                }
                Some(_) => return Err(self.error("expected '+' or '-'")),
            }
        }
        Ok(total)
    }

    fn parse_term(&mut self) -> Result<ZetaExpression> {
        let mut acc = self.parse_factor()?;
        while self.eat('*') {
            acc = &acc * &self.parse_factor()?;
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<ZetaExpression> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let r = self.rational_literal()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(ZetaExpression::constant(r))
            }
            Some(c) if c.is_ascii_digit() => {
                let r = self.rational_literal()?;
                Ok(ZetaExpression::constant(r))
            }
            _ => {
                if self.eat_word("pi") || self.eat_word("π") {
                    let p = self.exponent()?;
                    Ok(ZetaExpression::pi_pow(p))
                } else if self.eat_word("log(2)") || self.eat_word("log2") {
                    let p = self.exponent()?;
                    Ok(ZetaExpression::log2().pow(p))
                } else if self.eat_word("zeta(") || self.eat_word("ζ(") {
                    let k = self
                        .number()?
                        .parse::<i64>()
                        .map_err(|_| self.error("expected an integer zeta argument"))?;
                    if !self.eat(')') {
                        return Err(self.error("expected ')'"));
                    }
                    let p = self.exponent()?;
                    Ok(zeta_const(SignedIndex::plain(k))?.pow(p))
                } else {
                    Err(self.error("expected a factor"))
                }
            }
        }
    }
}
