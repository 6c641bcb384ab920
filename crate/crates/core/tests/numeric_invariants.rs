use rug::ops::Pow;
use rug::{Float, Rational};

use tornheim_core::closed_form::{double_euler_closed, tornheim_closed};
use tornheim_core::numeric::*;
use tornheim_core::reduction::{product_decompose, theorem1_reduce, ProductVariant, Variant};
use tornheim_core::{zeta_const, Error, Sign, SignedIndex};

fn prec() -> PrecisionConfig {
    PrecisionConfig::new(30).unwrap()
}

fn q(n: i64, d: i64) -> QParam {
    QParam::new(Rational::from((n, d))).unwrap()
}

fn int(n: i64) -> Rational {
    Rational::from(n)
}

fn close(a: &Float, b: &Float, tol: &Float) -> bool {
    Float::with_val(a.prec(), a - b).abs() <= *tol
}

/// sigma^n q^((s-1)n) / [n]_q^s straight from the definition.
fn direct_term(s: i32, sign: Sign, qv: &Float, n: u32) -> Float {
    let bits = qv.prec();
    let qn = Float::with_val(bits, qv.pow(n));
    let qint = Float::with_val(bits, &qn - 1u32) / Float::with_val(bits, qv - 1u32);
    let t = Float::with_val(bits, qv.pow((s - 1) * n as i32)) / qint.pow(s);
    if sign == Sign::Minus && n % 2 == 1 {
        -t
    } else {
        t
    }
}

#[test]
fn q_integers() {
    let bits = prec().bits();
    assert_eq!(q_int(1, &q(3, 1), bits), 1);
    assert_eq!(q_int(3, &q(2, 1), bits), 7);
    assert_eq!(q_int(4, &q(2, 1), bits), 15);
    assert_eq!(q_int(2, &q(4, 1), bits) * 3u32, 15);
}

#[test]
fn depth_one_examples() {
    let p = prec();
    let qp = q(2, 1);
    let qv = qp.value(p.bits());
    let mut oracle = Float::with_val(p.bits(), 0);
    for n in 1..=200 {
        oracle += direct_term(2, Sign::Plus, &qv, n);
    }
    let got = q_zeta1(&int(2), Sign::Plus, &qp, &p).unwrap();
    assert!(close(&got.value, &oracle, &p.tolerance()));
    assert!(got.value.to_string().starts_with("2.744"));

    let erdos = q_zeta1(&int(1), Sign::Plus, &qp, &p).unwrap();
    assert_eq!(render_fixed(&erdos.value, 6), "1.606695");

    let geometric = q_zeta1(&int(0), Sign::Minus, &qp, &p).unwrap();
    let third = Float::with_val(p.bits(), Rational::from((-1, 3)));
    assert!(close(&geometric.value, &third, &p.tolerance()));
}

#[test]
fn phi_defining_identity() {
    let p = prec();
    let qp = q(2, 1);
    let qv = qp.value(p.bits());
    let mut weighted = Float::with_val(p.bits(), 0);
    for n in 1..=250u32 {
        weighted += direct_term(2, Sign::Plus, &qv, n) * n;
    }
    let phi = phi_q(&int(2), Sign::Plus, &qp, &p).unwrap();
    let z = q_zeta1(&int(2), Sign::Plus, &qp, &p).unwrap();
    assert!(close(&phi.value, &(weighted - z.value), &p.tolerance()));

    let neg = phi_q(&int(3), Sign::Minus, &q(3, 1), &p).unwrap();
    let qv = q(3, 1).value(p.bits());
    let mut oracle = Float::with_val(p.bits(), 0);
    for n in 2..=200u32 {
        oracle += direct_term(3, Sign::Minus, &qv, n) * (n - 1);
    }
    assert!(close(&neg.value, &oracle, &p.tolerance()));
}

#[test]
fn depth_two_exchanged_order() {
    let p = prec();
    let qp = q(2, 1);
    let qv = qp.value(p.bits());
    let got = q_zeta2((&int(2), Sign::Plus), (&int(1), Sign::Plus), &qp, &p).unwrap();
    // sum over the inner index first: sum_n b_n * sum_{m>n} a_m
    let n_max = 250;
    let a: Vec<Float> = (0..=n_max)
        .map(|m| direct_term(2, Sign::Plus, &qv, m.max(1)))
        .collect();
    let mut suffix = Float::with_val(p.bits(), 0);
    let mut oracle = Float::with_val(p.bits(), 0);
    for n in (1..n_max).rev() {
        suffix += &a[n as usize + 1];
        oracle += direct_term(1, Sign::Plus, &qv, n) * &suffix;
    }
    assert!(close(&got.value, &oracle, &p.tolerance()));
    assert_eq!(
        q_zeta2_truncated(
            (&int(3), Sign::Minus),
            (&int(2), Sign::Plus),
            &qp,
            0,
            p.bits()
        ),
        0
    );
}

#[test]
fn depth_two_against_product_decomposition() {
    let p = prec();
    let qp = q(2, 1);
    let z1 = q_zeta1(&int(1), Sign::Minus, &qp, &p).unwrap().value;
    let square = Float::with_val(p.bits(), &z1 * &z1);
    let rhs = product_decompose(1, 1, ProductVariant::SS)
        .unwrap()
        .evaluate(&qp, &p)
        .unwrap();
    assert!(close(&square, &rhs.value, &p.tolerance()));
    // the decomposition is 2 zeta_q[bar1, 1] - (1-q) phi[bar1]; its double sum
    // must be the one computed directly
    let d = q_zeta2((&int(1), Sign::Minus), (&int(1), Sign::Plus), &qp, &p).unwrap();
    let phi = phi_q(&int(1), Sign::Minus, &qp, &p).unwrap();
    let rebuilt =
        Float::with_val(p.bits(), &d.value * 2u32) + phi.value * (qp.value(p.bits()) - 1u32);
    assert!(close(&square, &rebuilt, &p.tolerance()));
}

#[test]
fn tornheim_against_reductions() {
    let p = prec();
    let qp = q(2, 1);
    let one = int(1);
    let lhs = tornheim_q(&one, &one, &one, Sign::Plus, Sign::Plus, &qp, &p).unwrap();
    let d = q_zeta2((&int(2), Sign::Plus), (&one, Sign::Plus), &qp, &p).unwrap();
    let phi = phi_q(&int(2), Sign::Plus, &qp, &p).unwrap();
    let rhs = Float::with_val(p.bits(), &d.value * 2u32) + phi.value * (qp.value(p.bits()) - 1u32);
    assert!(close(&lhs.value, &rhs, &p.tolerance()));

    let half = Rational::from((1, 2));
    let q15 = q(3, 2);
    let lhs = tornheim_q(&int(2), &one, &half, Sign::Plus, Sign::Minus, &q15, &p).unwrap();
    let rhs = theorem1_reduce(2, 1, &half, Variant::R)
        .unwrap()
        .evaluate(&q15, &p)
        .unwrap();
    assert!(close(&lhs.value, &rhs.value, &p.tolerance()));
}

#[test]
fn printed_r_sign_in_third_family_fails() {
    // flipping the q^2-zeta family back to a minus sign breaks the identity
    let p = PrecisionConfig::new(20).unwrap();
    let qp = q(2, 1);
    let one = int(1);
    let lhs = tornheim_q(&one, &one, &one, Sign::Plus, Sign::Minus, &qp, &p).unwrap();
    let mut red = theorem1_reduce(1, 1, &one, Variant::R).unwrap();
    let good = red.evaluate(&qp, &p).unwrap();
    assert!(close(&lhs.value, &good.value, &p.tolerance()));
    for term in &mut red.terms {
        if matches!(
            term.kind,
            tornheim_core::reduction::QTermKind::QSquaredZeta { .. }
        ) {
            term.coeff = -term.coeff.clone();
        }
    }
    let bad = red.evaluate(&qp, &p).unwrap();
    assert!(!close(
        &lhs.value,
        &bad.value,
        &Float::with_val(p.bits(), 0.1)
    ));
}

#[test]
fn windows_agree() {
    let p = prec();
    for (r, s, t, sigma, tau) in [
        (1, 1, 1, Sign::Plus, Sign::Plus),
        (2, 1, 2, Sign::Minus, Sign::Minus),
        (3, 2, 0, Sign::Plus, Sign::Minus),
    ] {
        let (r, s, t) = (int(r), int(s), int(t));
        let sq = tornheim_q_window(&r, &s, &t, sigma, tau, &q(3, 2), &p, TornheimWindow::Square)
            .unwrap();
        let tri = tornheim_q_window(
            &r,
            &s,
            &t,
            sigma,
            tau,
            &q(3, 2),
            &p,
            TornheimWindow::Triangle,
        )
        .unwrap();
        let two_goals = p.tail_goal() * 2u32;
        assert!(close(&sq.value, &tri.value, &two_goals));
    }
}

#[test]
fn swap_is_bit_identical() {
    let p = prec();
    let (two, one) = (int(2), int(1));
    let a = tornheim_q(&two, &one, &one, Sign::Minus, Sign::Plus, &q(2, 1), &p).unwrap();
    let b = tornheim_q(&one, &two, &one, Sign::Plus, Sign::Minus, &q(2, 1), &p).unwrap();
    assert_eq!(a.value, b.value);
    let half = Rational::from((1, 2));
    let a = tornheim_q(&int(3), &half, &two, Sign::Plus, Sign::Minus, &q(5, 2), &p).unwrap();
    let b = tornheim_q(&half, &int(3), &two, Sign::Minus, Sign::Plus, &q(5, 2), &p).unwrap();
    assert_eq!(a.value, b.value);
}

#[test]
fn doubling_digits_keeps_reported_digits() {
    let lo = PrecisionConfig::new(25).unwrap();
    let hi = PrecisionConfig::new(50).unwrap();
    let (two, one) = (int(2), int(1));
    let a = tornheim_q(&two, &one, &one, Sign::Plus, Sign::Minus, &q(2, 1), &lo).unwrap();
    let b = tornheim_q(&two, &one, &one, Sign::Plus, Sign::Minus, &q(2, 1), &hi).unwrap();
    assert_eq!(render_fixed(&a.value, 25), render_fixed(&b.value, 25));
    let a = classical_double_euler(SignedIndex::bar(2), SignedIndex::bar(1), &lo).unwrap();
    let b = classical_double_euler(SignedIndex::bar(2), SignedIndex::bar(1), &hi).unwrap();
    assert_eq!(render_fixed(&a.value, 25), render_fixed(&b.value, 25));
}

#[test]
fn classical_constants() {
    let p = prec();
    let tol = p.tolerance();
    let z2 = classical_zeta_int(2, &p).unwrap();
    assert!(close(&z2, &(pi(p.bits()).square() / 6u32), &tol));
    assert_eq!(
        render_fixed(&classical_zeta_int(3, &p).unwrap(), 10),
        "1.2020569032"
    );
    let l = classical_zeta_signed(SignedIndex::bar(1), &p).unwrap();
    assert!(close(&l, &(-log2(p.bits())), &tol));
    assert!(matches!(
        classical_zeta_signed(SignedIndex::plain(1), &p),
        Err(Error::Domain(_))
    ));
}

#[test]
fn even_zeta_as_pi_powers() {
    let p = prec();
    for k in (2..=20).step_by(2) {
        let exact = zeta_const(SignedIndex::plain(k)).unwrap().numeric(&p);
        assert!(
            close(&exact, &classical_zeta_int(k, &p).unwrap(), &p.tolerance()),
            "k = {k}"
        );
    }
}

#[test]
fn alternating_constants_match_alternating_series() {
    let p = prec();
    for k in 1..=10 {
        let exact = zeta_const(SignedIndex::bar(k)).unwrap().numeric(&p);
        let series =
            alternating_tail(&Float::with_val(p.bits(), k), 50, &p.tail_goal(), p.bits()).unwrap();
        assert!(close(&exact, &series, &p.tolerance()), "k = {k}");
    }
}

#[test]
fn double_euler_identities() {
    let p = prec();
    let tol = p.tolerance();
    let z21 = classical_double_euler(SignedIndex::plain(2), SignedIndex::plain(1), &p).unwrap();
    assert!(close(&z21.value, &classical_zeta_int(3, &p).unwrap(), &tol));

    let z32 = classical_double_euler(SignedIndex::plain(3), SignedIndex::plain(2), &p).unwrap();
    let z23 = classical_double_euler(SignedIndex::plain(2), SignedIndex::plain(3), &p).unwrap();
    let lhs = z32.value + z23.value + classical_zeta_int(5, &p).unwrap();
    let rhs = classical_zeta_int(2, &p).unwrap() * classical_zeta_int(3, &p).unwrap();
    assert!(close(&lhs, &rhs, &tol));

    let bb = classical_double_euler(SignedIndex::bar(2), SignedIndex::bar(1), &p).unwrap();
    let closed = double_euler_closed(2, 1, Sign::Minus, Sign::Minus)
        .unwrap()
        .numeric(&p);
    assert!(close(&bb.value, &closed, &tol));
}

#[test]
fn euler_reflection_from_closed_forms() {
    let p = prec();
    for s in 2..=7i64 {
        for t in 2..=7i64 {
            if (s + t) % 2 == 0 {
                continue;
            }
            let a = double_euler_closed(s, t, Sign::Plus, Sign::Plus).unwrap();
            let b = double_euler_closed(t, s, Sign::Plus, Sign::Plus).unwrap();
            let lhs = (&a + &b) + zeta_const(SignedIndex::plain(s + t)).unwrap();
            let rhs = &zeta_const(SignedIndex::plain(s)).unwrap()
                * &zeta_const(SignedIndex::plain(t)).unwrap();
            assert!(
                close(&lhs.numeric(&p), &rhs.numeric(&p), &p.tolerance()),
                "s = {s}, t = {t}"
            );
        }
    }
}

#[test]
fn naive_sum_sanity() {
    // coarse oracle only
    let exact = tornheim_closed(2, 2, 1, Variant::R)
        .unwrap()
        .expression
        .numeric(&prec())
        .to_f64();
    let naive = tornheim_naive(2, 2, 1, Sign::Plus, Sign::Minus, 2000);
    assert!((exact - naive).abs() < 1e-4, "{exact} vs {naive}");
}

#[test]
fn unreachable_tail_is_a_precision_error() {
    let p = PrecisionConfig::new(30)
        .unwrap()
        .with_max_terms(100)
        .unwrap();
    let near_one = QParam::new(Rational::from((1001, 1000))).unwrap();
    assert!(matches!(
        q_zeta1(&int(2), Sign::Plus, &near_one, &p),
        Err(Error::Precision(_))
    ));
    assert!(QParam::new(int(1)).is_err());
}
