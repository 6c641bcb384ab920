//! Exact evaluation of classical double Euler sums at odd weight, and of
//! T, S, R through their reduction to double Euler sums.

use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{zeta_const, ZetaExpression};
use crate::index::{Sign, SignedIndex};
use crate::rational::binomial;
use crate::reduction::{corollary1_reduce, Variant};

/// Value given to zeta(0; sign) inside the odd-weight formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ZeroConvention {
    /// zeta(0; +1) = zeta(0; -1) = -1/2. The alternating value follows from
    /// zeta(0; -1) = (2^(1-0) - 1) zeta(0).
    #[default]
    Uniform,
    /// zeta(0; -1) = +1/2, i.e. the sign of eta(0). Kept for comparison; it
    /// does not reproduce the known R values.
    EtaSign,
}

impl ZeroConvention {
    fn value(self, sign: Sign) -> Rational {
        match (self, sign) {
            (ZeroConvention::EtaSign, Sign::Minus) => Rational::from((1, 2)),
            _ => Rational::from((-1, 2)),
        }
    }

    fn rule_name(self) -> &'static str {
        match self {
            ZeroConvention::Uniform => "zeta(0;+-1)=-1/2",
            ZeroConvention::EtaSign => "zeta(0;-1)=+1/2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceEntry {
    pub rule: String,
    pub args: Vec<i64>,
}

impl ProvenanceEntry {
    fn new(rule: &str, args: &[i64]) -> Self {
        ProvenanceEntry {
            rule: rule.to_string(),
            args: args.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvaluationResult {
    pub expression: ZetaExpression,
    pub provenance: Vec<ProvenanceEntry>,
}

/// zeta(k; sign) as it appears inside the odd-weight formula: zeta(0; .)
/// per the convention, and the sentinel zeta(1; +1) = 0.
fn formula_zeta(k: i64, sign: Sign, convention: ZeroConvention) -> Result<ZetaExpression> {
    match (k, sign) {
        (0, _) => Ok(ZetaExpression::constant(convention.value(sign))),
        (1, Sign::Plus) => Ok(ZetaExpression::zero()),
        _ => zeta_const(SignedIndex::new(k, sign)),
    }
}

fn int(n: i64) -> Rational {
    Rational::from(n)
}

/// The general odd-weight evaluation of zeta(s, t; sigma, tau):
///
///   (1 + (-1)^s)/2 zeta(s;sigma) zeta(t;tau) - zeta(s+t; sigma tau)/2
///   + (-1)^t sum_{0<=k<=t/2} C(s+t-2k-1, s-1) zeta(2k; sigma tau) zeta(s+t-2k; sigma)
///   + (-1)^t sum_{0<=k<=s/2} C(s+t-2k-1, t-1) zeta(2k; sigma tau) zeta(s+t-2k; tau)
pub fn odd_weight_formula(
    s: i64,
    t: i64,
    sigma: Sign,
    tau: Sign,
    convention: ZeroConvention,
) -> Result<ZetaExpression> {
    let st = sigma * tau;
    let mut out = ZetaExpression::zero();
    if s % 2 == 0 {
        out += &(&formula_zeta(s, sigma, convention)? * &formula_zeta(t, tau, convention)?);
    }
    out += &formula_zeta(s + t, st, convention)?.scale(&Rational::from((-1, 2)));
    let parity = if t % 2 == 0 { 1 } else { -1 };
    for k in 0..=t / 2 {
        let c = binomial(s + t - 2 * k - 1, s - 1) * parity;
        if c != 0 {
            let prod = &formula_zeta(2 * k, st, convention)?
                * &formula_zeta(s + t - 2 * k, sigma, convention)?;
            out += &prod.scale(&Rational::from(c));
        }
    }
    for k in 0..=s / 2 {
        let c = binomial(s + t - 2 * k - 1, t - 1) * parity;
        if c != 0 {
            let prod = &formula_zeta(2 * k, st, convention)?
                * &formula_zeta(s + t - 2 * k, tau, convention)?;
            out += &prod.scale(&Rational::from(c));
        }
    }
    Ok(out)
}

/// zeta(s, 1) = (s/2) zeta(s+1) - (1/2) sum_{k=2}^{s-1} zeta(k) zeta(s+1-k), any s > 1.
pub fn euler_depth_two_one(s: i64) -> Result<ZetaExpression> {
    if s < 2 {
        return Err(Error::Domain(format!("zeta({s}, 1) needs s > 1")));
    }
    let mut out = zeta_const(SignedIndex::plain(s + 1))?.scale(&Rational::from((s, 2)));
    for k in 2..s {
        let prod =
            &zeta_const(SignedIndex::plain(k))? * &zeta_const(SignedIndex::plain(s + 1 - k))?;
        out += &prod.scale(&Rational::from((-1, 2)));
    }
    Ok(out)
}

/// zeta(s, 1; sigma, 1) for even s:
/// (s-1)/2 zeta(s+1; sigma) + zeta(s+1)/2 - sum_{k=1}^{s/2-1} zeta(2k; sigma) zeta(s+1-2k).
pub fn depth_two_trailing_one(s: i64, sigma: Sign) -> Result<ZetaExpression> {
    if s < 2 || s % 2 != 0 {
        return Err(Error::Domain(format!(
            "trailing-one formula needs an even s >= 2, got {s}"
        )));
    }
    let mut out = zeta_const(SignedIndex::new(s + 1, sigma))?.scale(&Rational::from((s - 1, 2)));
    out += &zeta_const(SignedIndex::plain(s + 1))?.scale(&Rational::from((1, 2)));
    for k in 1..s / 2 {
        let prod = &zeta_const(SignedIndex::new(2 * k, sigma))?
            * &zeta_const(SignedIndex::plain(s + 1 - 2 * k))?;
        out += &prod.scale(&int(-1));
    }
    Ok(out)
}

fn sign_arg(sign: Sign) -> i64 {
    sign.value() as i64
}

/// Exact zeta(s, t; sigma, tau) for odd s + t, plus zeta(s, 1) for every s > 1.
pub fn double_euler_closed(s: i64, t: i64, sigma: Sign, tau: Sign) -> Result<ZetaExpression> {
    let mut provenance = Vec::new();
    double_euler_closed_with(s, t, sigma, tau, ZeroConvention::default(), &mut provenance)
}

pub fn double_euler_closed_with(
    s: i64,
    t: i64,
    sigma: Sign,
    tau: Sign,
    convention: ZeroConvention,
    provenance: &mut Vec<ProvenanceEntry>,
) -> Result<ZetaExpression> {
    let outer = SignedIndex::new(s, sigma);
    let inner = SignedIndex::new(t, tau);
    let min_outer = if sigma == Sign::Plus { 2 } else { 1 };
    if s < min_outer || t < 1 {
        return Err(Error::Domain(format!(
            "zeta({outer}, {inner}) diverges or is undefined"
        )));
    }
    let args = [s, t, sign_arg(sigma), sign_arg(tau)];
    if t == 1 && tau == Sign::Plus && sigma == Sign::Plus {
        provenance.push(ProvenanceEntry::new("euler_zs1", &args));
        return euler_depth_two_one(s);
    }
    if (s + t) % 2 == 0 {
        return Err(Error::Unsupported(format!(
            "zeta({outer}, {inner}) has even weight {}; no closed form",
            s + t
        )));
    }
    if t == 1 && tau == Sign::Plus {
        provenance.push(ProvenanceEntry::new("trailing_one", &args));
        return depth_two_trailing_one(s, sigma);
    }
    provenance.push(ProvenanceEntry::new("odd_weight", &args));
    odd_weight_formula(s, t, sigma, tau, convention)
}

/// Exact T, S or R at positive integers with odd r + s + t.
pub fn tornheim_closed(r: i64, s: i64, t: i64, variant: Variant) -> Result<EvaluationResult> {
    tornheim_closed_with(r, s, t, variant, ZeroConvention::default())
}

pub fn tornheim_closed_with(
    r: i64,
    s: i64,
    t: i64,
    variant: Variant,
    convention: ZeroConvention,
) -> Result<EvaluationResult> {
    if r < 1 || s < 1 || t < 1 {
        return Err(Error::Domain(format!(
            "closed forms need positive integers r, s, t (got {r}, {s}, {t})"
        )));
    }
    if (r + s + t) % 2 == 0 {
        return Err(Error::Unsupported(format!(
            "{variant}({r},{s},{t}) has even weight {}; no closed form, numeric only",
            r + s + t
        )));
    }
    let reduction = corollary1_reduce(r, s, t, variant)?;
    let mut provenance = vec![
        ProvenanceEntry::new(&format!("reduce_{variant}"), &[r, s, t]),
        ProvenanceEntry::new(convention.rule_name(), &[]),
    ];
    let mut expression = ZetaExpression::zero();
    for term in &reduction.terms {
        let value = double_euler_closed_with(
            term.outer.value,
            term.inner.value,
            term.outer.sign,
            term.inner.sign,
            convention,
            &mut provenance,
        )?;
        expression += &value.scale(&term.coeff);
    }
    Ok(EvaluationResult {
        expression,
        provenance,
    })
}

pub const MAX_TABLE_WEIGHT: i64 = 15;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub variant: Variant,
    pub r: i64,
    pub s: i64,
    pub t: i64,
    pub result: EvaluationResult,
}

/// Every R, S, T closed form with odd weight r + s + t <= `max_weight`,
/// ordered by weight, then T, S, R, then (r, s, t).
pub fn closed_form_table(max_weight: i64) -> Result<Vec<TableEntry>> {
    if max_weight > MAX_TABLE_WEIGHT {
        return Err(Error::Domain(format!(
            "weight bound {max_weight} exceeds {MAX_TABLE_WEIGHT}; use `eval` for individual high-weight values"
        )));
    }
    let mut out = Vec::new();
    for w in (3..=max_weight).step_by(2) {
        for variant in Variant::ALL {
            for r in 1..w - 1 {
                for s in 1..w - r {
                    let t = w - r - s;
                    let result = tornheim_closed(r, s, t, variant)?;
                    out.push(TableEntry {
                        variant,
                        r,
                        s,
                        t,
                        result,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> ZetaExpression {
        s.parse().unwrap()
    }

    #[test]
    fn zeta_two_one() {
        assert_eq!(
            double_euler_closed(2, 1, Sign::Plus, Sign::Plus).unwrap(),
            parse("zeta(3)")
        );
    }

    #[test]
    fn zeta_four_one() {
        let expected = parse("2*zeta(5) - zeta(2)*zeta(3)");
        assert_eq!(
            double_euler_closed(4, 1, Sign::Plus, Sign::Plus).unwrap(),
            expected
        );
        assert_eq!(expected.to_string(), "-(1/6)*pi^2*zeta(3) + 2*zeta(5)");
    }

    #[test]
    fn zeta_three_two() {
        assert_eq!(
            double_euler_closed(3, 2, Sign::Plus, Sign::Plus).unwrap(),
            parse("3*zeta(2)*zeta(3) - (11/2)*zeta(5)")
        );
    }

    #[test]
    fn sentinel_formula_agrees_with_trailing_one_forms() {
        for s in (2..=12).step_by(2) {
            for sigma in [Sign::Plus, Sign::Minus] {
                let general =
                    odd_weight_formula(s, 1, sigma, Sign::Plus, ZeroConvention::Uniform).unwrap();
                let special = depth_two_trailing_one(s, sigma).unwrap();
                assert_eq!(general, special, "s = {s}, sigma = {sigma:?}");
                if sigma == Sign::Plus {
                    assert_eq!(special, euler_depth_two_one(s).unwrap());
                }
            }
        }
    }

    #[test]
    fn parity_and_domain_errors() {
        assert!(matches!(
            double_euler_closed(3, 3, Sign::Minus, Sign::Plus),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            double_euler_closed(1, 2, Sign::Plus, Sign::Plus),
            Err(Error::Domain(_))
        ));
        // zeta(s, 1) is available at every s > 1
        assert!(double_euler_closed(3, 1, Sign::Plus, Sign::Plus).is_ok());
        assert!(matches!(
            tornheim_closed(1, 1, 2, Variant::T),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn r111() {
        let res = tornheim_closed(1, 1, 1, Variant::R).unwrap();
        assert_eq!(res.expression, parse("-(5/8)*zeta(3)"));
        assert_eq!(res.provenance[0].rule, "reduce_R");
    }

    #[test]
    fn t_symmetry() {
        for (r, s, t) in [(1, 2, 2), (2, 3, 2), (1, 4, 2), (3, 5, 1)] {
            assert_eq!(
                tornheim_closed(r, s, t, Variant::T).unwrap().expression,
                tornheim_closed(s, r, t, Variant::T).unwrap().expression
            );
        }
    }

    #[test]
    fn table_bound_and_weights() {
        assert!(closed_form_table(17).is_err());
        let table = closed_form_table(7).unwrap();
        assert!(table
            .iter()
            .all(|e| e.result.expression.weight() == Some((e.r + e.s + e.t) as u32)));
        let weight3: Vec<_> = table.iter().filter(|e| e.r + e.s + e.t == 3).collect();
        assert_eq!(weight3.len(), 3);
    }

    #[test]
    fn result_json_round_trip() {
        let res = tornheim_closed(2, 1, 2, Variant::R).unwrap();
        let json = serde_json::to_string(&res).unwrap();
        assert_eq!(
            serde_json::from_str::<EvaluationResult>(&json).unwrap(),
            res
        );
    }
}
