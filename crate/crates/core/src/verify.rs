//! Identity sweeps that drive both evaluation paths against each other.
//! Cases run in parallel; reports keep the deterministic case order.

use std::fmt;

use rayon::prelude::*;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use crate::closed_form::tornheim_closed;
use crate::error::{Error, Result};
use crate::expr::ZetaExpression;
use crate::index::SignedIndex;
use crate::numeric::{classical_zeta_signed, render_bound, tornheim_q, PrecisionConfig, QParam};
use crate::reduction::{
    classical_product_decompose, corollary1_reduce, product_decompose, product_value,
    theorem1_reduce, verify_lemma1, ProductVariant, Variant,
};
use crate::reference::all_known_values;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub label: String,
    pub passed: bool,
    pub detail: String,
    /// |lhs - rhs| for numeric checks.
    pub residual: Option<f64>,
}

impl CaseResult {
    fn numeric(label: String, diff: &Float, tol: &Float) -> Self {
        CaseResult {
            label,
            passed: diff <= tol,
            detail: format!("|diff| = {}", render_bound(diff)),
            residual: Some(diff.to_f64()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub family: String,
    pub cases: Vec<CaseResult>,
}

impl Report {
    fn new(family: &str, cases: Vec<CaseResult>) -> Self {
        Report {
            family: family.to_string(),
            cases,
        }
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    /// Largest numeric residual over all cases, if any case is numeric.
    pub fn max_residual(&self) -> Option<f64> {
        self.cases
            .iter()
            .filter_map(|c| c.residual)
            .reduce(f64::max)
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.passed).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{mark} {} {}", c.label, c.detail)?;
        }
        write!(
            f,
            "{}: {}/{} passed",
            self.family,
            self.cases.len() - self.failures(),
            self.cases.len()
        )
    }
}

/// Tolerance for identities whose sides are built from classical double
/// Euler sums: 10^(6 - digits).
pub fn classical_tolerance(prec: &PrecisionConfig) -> Float {
    prec.tolerance() * 1000u32
}

fn collect<T: Send>(cases: Vec<Result<T>>) -> Result<Vec<T>> {
    cases.into_iter().collect()
}

fn diff(a: &Float, b: &Float) -> Float {
    Float::with_val(a.prec(), a - b).abs()
}

pub fn default_qs() -> Vec<Rational> {
    vec![Rational::from((3, 2)), Rational::from(2), Rational::from(3)]
}

/// Exact check of the partial fraction identity for r, s in [1, max],
/// u, v in [1, max + 1], q in {3/2, 2, 7/2}.
pub fn lemma1_sweep(max: u32) -> Report {
    let qs = [
        Rational::from((3, 2)),
        Rational::from(2),
        Rational::from((7, 2)),
    ];
    let mut grid = Vec::new();
    for r in 1..=max {
        for s in 1..=max {
            for u in 1..=max as u64 + 1 {
                for v in 1..=max as u64 + 1 {
                    for q in &qs {
                        grid.push((r, s, u, v, q.clone()));
                    }
                }
            }
        }
    }
    let cases = grid
        .into_par_iter()
        .map(|(r, s, u, v, q)| {
            let passed = verify_lemma1(r, s, u, v, &q);
            CaseResult {
                label: format!("lemma1 r={r} s={s} u={u} v={v} q={q}"),
                passed,
                detail: if passed {
                    "exact".into()
                } else {
                    "residual nonzero".into()
                },
                residual: None,
            }
        })
        .collect();
    Report::new("lemma1", cases)
}

/// tornheim_q against the evaluated reduction, every variant, r, s in [1, max].
pub fn theorem1_sweep(
    max: u32,
    ts: &[Rational],
    qs: &[Rational],
    prec: &PrecisionConfig,
) -> Result<Report> {
    let mut grid = Vec::new();
    for variant in Variant::ALL {
        for r in 1..=max {
            for s in 1..=max {
                for t in ts {
                    for q in qs {
                        grid.push((variant, r, s, t.clone(), QParam::new(q.clone())?));
                    }
                }
            }
        }
    }
    let tol = prec.tolerance();
    let cases = grid
        .into_par_iter()
        .map(|(variant, r, s, t, q)| {
            let (sigma, tau) = variant.signs();
            let lhs = tornheim_q(
                &Rational::from(r),
                &Rational::from(s),
                &t,
                sigma,
                tau,
                &q,
                prec,
            )?;
            let rhs = theorem1_reduce(r, s, &t, variant)?.evaluate(&q, prec)?;
            Ok(CaseResult::numeric(
                format!("theorem1 {variant}[{r},{s},{t}] q={}", q.rational()),
                &diff(&lhs.value, &rhs.value),
                &tol,
            ))
        })
        .collect();
    Ok(Report::new("theorem1", collect(cases)?))
}

/// zeta_q[r; sigma] zeta_q[s; tau] against the product decomposition.
pub fn corollary2_sweep(max: u32, qs: &[Rational], prec: &PrecisionConfig) -> Result<Report> {
    let mut grid = Vec::new();
    for variant in [ProductVariant::TT, ProductVariant::SS, ProductVariant::TS] {
        for r in 1..=max {
            for s in 1..=max {
                for q in qs {
                    grid.push((variant, r, s, QParam::new(q.clone())?));
                }
            }
        }
    }
    let tol = prec.tolerance();
    let cases = grid
        .into_par_iter()
        .map(|(variant, r, s, q)| {
            let lhs = product_value(r, s, variant, &q, prec)?;
            let rhs = product_decompose(r, s, variant)?.evaluate(&q, prec)?;
            Ok(CaseResult::numeric(
                format!("corollary2 {variant:?} r={r} s={s} q={}", q.rational()),
                &diff(&lhs.value, &rhs.value),
                &tol,
            ))
        })
        .collect();
    Ok(Report::new("corollary2", collect(cases)?))
}

/// Classical zeta(r) zeta(s) and its signed forms for r, s in [lo, hi].
pub fn corollary3_sweep(lo: i64, hi: i64, prec: &PrecisionConfig) -> Result<Report> {
    let mut grid = Vec::new();
    for variant in [ProductVariant::TT, ProductVariant::SS, ProductVariant::TS] {
        for r in lo..=hi {
            for s in lo..=hi {
                grid.push((variant, r, s));
            }
        }
    }
    let tol = classical_tolerance(prec);
    let cases = grid
        .into_par_iter()
        .map(|(variant, r, s)| {
            let (sigma, tau) = variant.tornheim().signs();
            let a = classical_zeta_signed(SignedIndex::new(r, sigma), prec)?;
            let b = classical_zeta_signed(SignedIndex::new(s, tau), prec)?;
            let lhs = a * b;
            let rhs = classical_product_decompose(r, s, variant)?.evaluate(prec)?;
            Ok(CaseResult::numeric(
                format!("corollary3 {variant:?} r={r} s={s}"),
                &diff(&lhs, &rhs.value),
                &tol,
            ))
        })
        .collect();
    Ok(Report::new("corollary3", collect(cases)?))
}

/// Closed forms against summed double Euler sums for (r, s, t) in [1, max]^3
/// with odd weight and convergent series.
pub fn corollary1_sweep(max: i64, prec: &PrecisionConfig) -> Result<Report> {
    let mut grid = Vec::new();
    for variant in Variant::ALL {
        for r in 1..=max {
            for s in 1..=max {
                for t in 1..=max {
                    if (r + s + t) % 2 == 1 && corollary1_reduce(r, s, t, variant).is_ok() {
                        grid.push((variant, r, s, t));
                    }
                }
            }
        }
    }
    let tol = classical_tolerance(prec);
    let cases = grid
        .into_par_iter()
        .map(|(variant, r, s, t)| {
            let exact = tornheim_closed(r, s, t, variant)?.expression.numeric(prec);
            let summed = corollary1_reduce(r, s, t, variant)?.evaluate(prec)?;
            Ok(CaseResult::numeric(
                format!("corollary1 {variant}({r},{s},{t})"),
                &diff(&exact, &summed.value),
                &tol,
            ))
        })
        .collect();
    Ok(Report::new("corollary1", collect(cases)?))
}

/// Every published closed form, compared exactly.
pub fn table_sweep() -> Result<Report> {
    let cases = all_known_values()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|kv| {
            let got = tornheim_closed(kv.r, kv.s, kv.t, kv.variant)?.expression;
            let passed = got == kv.expression();
            Ok(CaseResult {
                label: format!("table {}", kv.label()),
                passed,
                detail: if passed {
                    "exact".into()
                } else {
                    format!("got {got}")
                },
                residual: None,
            })
        })
        .collect();
    Ok(Report::new("table", collect(cases)?))
}

/// A user-supplied expression claimed to equal T, S or R at (r, s, t),
/// compared with the numeric value from summed double Euler sums.
pub fn expression_check(
    expression: &ZetaExpression,
    r: i64,
    s: i64,
    t: i64,
    variant: Variant,
    prec: &PrecisionConfig,
) -> Result<(CaseResult, Float)> {
    let summed = corollary1_reduce(r, s, t, variant)?.evaluate(prec)?;
    let claimed = expression.numeric(prec);
    let d = diff(&claimed, &summed.value);
    let case = CaseResult::numeric(
        format!("expr {variant}({r},{s},{t})"),
        &d,
        &classical_tolerance(prec),
    );
    Ok((case, d))
}

pub fn expression_report(
    expression: &ZetaExpression,
    r: i64,
    s: i64,
    t: i64,
    variant: Variant,
    prec: &PrecisionConfig,
) -> Result<Report> {
    let (case, _) = expression_check(expression, r, s, t, variant, prec)?;
    Ok(Report::new("expr", vec![case]))
}

pub const FAMILIES: [&str; 6] = [
    "lemma1",
    "theorem1",
    "corollary1",
    "corollary2",
    "corollary3",
    "table",
];

/// Runs a named sweep with its standard grid; `max` overrides the index range.
pub fn run_family(
    family: &str,
    max: Option<u32>,
    qs: Option<Vec<Rational>>,
    prec: &PrecisionConfig,
) -> Result<Report> {
    match family {
        "lemma1" => Ok(lemma1_sweep(max.unwrap_or(5))),
        "theorem1" => {
            let ts = [
                Rational::from(0),
                Rational::from(1),
                Rational::from(2),
                Rational::from((1, 2)),
            ];
            theorem1_sweep(max.unwrap_or(4), &ts, &qs.unwrap_or_else(default_qs), prec)
        }
        "corollary1" => corollary1_sweep(max.unwrap_or(5) as i64, prec),
        "corollary2" => corollary2_sweep(
            max.unwrap_or(4),
            &qs.unwrap_or_else(|| vec![Rational::from((3, 2)), Rational::from(2)]),
            prec,
        ),
        "corollary3" => corollary3_sweep(2, max.unwrap_or(5) as i64, prec),
        "table" => table_sweep(),
        other => Err(Error::Parse(format!(
            "unknown identity family `{other}` (expected one of {})",
            FAMILIES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec() -> PrecisionConfig {
        PrecisionConfig::new(20).unwrap()
    }

    #[test]
    fn small_sweeps_pass() {
        assert!(lemma1_sweep(2).passed());
        assert!(table_sweep().unwrap().passed());
        let r = theorem1_sweep(2, &[Rational::from(1)], &[Rational::from(2)], &prec()).unwrap();
        assert_eq!(r.cases.len(), 12);
        assert!(r.passed(), "{r}");
        assert!(corollary2_sweep(2, &[Rational::from(2)], &prec())
            .unwrap()
            .passed());
        assert!(corollary3_sweep(2, 3, &prec()).unwrap().passed());
        assert!(corollary1_sweep(2, &prec()).unwrap().passed());
    }

    #[test]
    fn report_order_is_deterministic() {
        let a = lemma1_sweep(2);
        let b = lemma1_sweep(2);
        assert_eq!(a, b);
        assert!(a.cases[0].label.starts_with("lemma1 r=1 s=1 u=1 v=1"));
    }

    #[test]
    fn wrong_expression_fails() {
        let e: ZetaExpression = "-(5/8)*zeta(3)".parse().unwrap();
        let (ok, _) = expression_check(&e, 1, 1, 1, Variant::R, &prec()).unwrap();
        assert!(ok.passed);
        let bad: ZetaExpression = "-(5/7)*zeta(3)".parse().unwrap();
        let (fail, d) = expression_check(&bad, 1, 1, 1, Variant::R, &prec()).unwrap();
        assert!(!fail.passed);
        assert!(d > 1e-3);
    }

    #[test]
    fn unknown_family() {
        assert!(matches!(
            run_family("nope", None, None, &prec()),
            Err(Error::Parse(_))
        ));
    }
}
