use std::process::{Command, Output};

use rug::Rational;
use tornheim_core::closed_form::{tornheim_closed, EvaluationResult, TableEntry};
use tornheim_core::reduction::{theorem1_reduce, Reduction, Variant};
use tornheim_core::verify::Report;

fn tornheim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tornheim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn eval_closed_form() {
    let o = tornheim(&["eval", "R", "1", "1", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).starts_with("-(5/8)*zeta(3) ≈ -0.7512855644747464283748"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn eval_reports_failed_inequality() {
    let o = tornheim(&["eval", "T", "1", "1", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("s+t>1 violated"));
}

#[test]
fn eval_q_analog() {
    let o = tornheim(&["eval", "T", "2", "1", "2", "--q", "2", "--digits", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let value = out.lines().next().unwrap().rsplit(' ').next().unwrap();
    assert_eq!(value.split('.').nth(1).unwrap().len(), 30);
    assert!(out.lines().nth(1).unwrap().starts_with("tail bound: "));
}

#[test]
fn even_weight_is_numeric_only() {
    let o = tornheim(&["eval", "T", "1", "1", "2", "--digits", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no closed form, numeric only"));
}

#[test]
fn signs_pick_the_variant() {
    let a = stdout(&tornheim(&["eval", "T", "1", "1", "1", "--signs", "+-"]));
    let b = stdout(&tornheim(&["eval", "R", "1", "1", "1"]));
    let c = stdout(&tornheim(&["eval", "T", "1", "1", "1", "--signs=-+"]));
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn precision_failure_exit_code() {
    let o = tornheim(&["eval", "qzeta", "2", "--q", "1000001/1000000"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("precision"));
}

#[test]
fn bad_arguments_exit_code() {
    assert_eq!(tornheim(&["eval", "T", "1", "1"]).status.code(), Some(2));
    assert_eq!(tornheim(&["eval", "qzeta", "2"]).status.code(), Some(2));
    assert_eq!(
        tornheim(&["eval", "T", "1", "1", "1", "--q", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(tornheim(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn table_contents_and_bound() {
    let o = tornheim(&["table", "--max-weight", "5"]);
    let out = stdout(&o);
    assert!(out.contains("R(1,1,1) = -(5/8)*zeta(3)"));
    assert!(out.contains("R(2,1,2) = -(5/16)*pi^2*zeta(3) + (107/32)*zeta(5)"));
    assert_eq!(
        out.lines()
            .filter(|l| l.starts_with("R(") && l.contains("zeta(5)"))
            .count(),
        6
    );
    let refused = tornheim(&["table", "--max-weight", "17"]);
    assert_eq!(refused.status.code(), Some(2));
    assert!(stderr(&refused).contains("use `eval`"));
}

#[test]
fn table_weight_fifteen_has_s555() {
    let out = stdout(&tornheim(&["table"]));
    assert!(out.contains(
        "S(5,5,5) = (7/73728)*pi^4*zeta(11) + (35/24576)*pi^2*zeta(13) + (63/8192)*zeta(15)"
    ));
}

#[test]
fn json_round_trips() {
    let o = tornheim(&["eval", "R", "2", "1", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let closed: EvaluationResult = serde_json::from_value(v["closed_form"].clone()).unwrap();
    assert_eq!(closed, tornheim_closed(2, 1, 2, Variant::R).unwrap());

    let o = tornheim(&["reduce", "S", "3", "2", "1/2", "--format", "json"]);
    let red: Reduction = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        red,
        theorem1_reduce(3, 2, &Rational::from((1, 2)), Variant::S).unwrap()
    );

    let o = tornheim(&["table", "--max-weight", "7", "--format", "json"]);
    let table: Vec<TableEntry> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(table
        .iter()
        .any(|e| e.variant == Variant::S && (e.r, e.s, e.t) == (1, 1, 5)));
}

#[test]
fn reduce_prints_families_in_order() {
    let out = stdout(&tornheim(&["reduce", "R", "1", "1", "1"]));
    assert_eq!(
        out.trim(),
        "R[1,1,1] = zeta_q[bar(2), bar(1)] + zeta_q[2, bar(1)] + (1-q)*(1+q)^(-2)*zeta_{q^2}[2]"
    );
    let out = stdout(&tornheim(&["reduce", "T", "1", "1", "1", "--classical"]));
    assert_eq!(out.trim(), "T(1,1,1) = zeta(2, 1) + zeta(2, 1)");
}

#[test]
fn verify_sweeps() {
    let o = tornheim(&["verify", "lemma1", "--max", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("lemma1: 1200/1200 passed\n"));

    let o = tornheim(&["verify", "table", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report
        .cases
        .iter()
        .any(|c| c.label == "table R(9,9,9)" && c.passed));

    let o = tornheim(&["verify", "theorem1", "--q", "2", "--digits", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let report = stdout(&o);
    assert!(report.ends_with("theorem1: 192/192 passed\n"));
}

#[test]
fn verify_user_expression() {
    let good = tornheim(&["verify", "expr", "R", "1", "1", "1", "--", "-(5/8)*zeta(3)"]);
    assert_eq!(good.status.code(), Some(0));
    let bad = tornheim(&["verify", "expr", "R", "1", "1", "1", "--", "-(5/7)*zeta(3)"]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(stdout(&bad).starts_with("FAIL expr R(1,1,1)"));
}
