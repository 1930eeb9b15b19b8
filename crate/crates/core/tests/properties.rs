//! Property tests over the evaluators, coefficient families and CLI output.

use incgamma::cli::{write_rows, Cell, Format, Row};
use incgamma::coeffs::{bell_partial, gen_c, gen_d, RationalPoly};
use incgamma::expansions::*;
use incgamma::inversion::*;
use incgamma::oracle::*;
use incgamma::special::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn parity_holds(p: &RationalPoly, n: usize, t: &BigRational) -> bool {
    let minus = p.eval(&-t.clone());
    let plus = p.eval(t);
    if n.is_multiple_of(2) {
        minus == plus
    } else {
        minus == -plus
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn erfc_reflection(x in -27.0f64..27.0) {
        let s = erfc(x) + erfc(-x);
        prop_assert!((s - 2.0).abs() <= 4.0 * f64::EPSILON, "{x}: {s}");
    }

    #[test]
    fn half_erfc_inverse(t in -5.0f64..5.0) {
        // q near 1 keeps only an absolute eps of information, which costs
        // eps/φ(τ) in τ on the far left
        let q = half_erfc(t);
        let back = inv_half_erfc(q).unwrap();
        let tol = 1e-12 + 2.0 * f64::EPSILON / normal_pdf(t);
        prop_assert!((back - t).abs() <= tol, "{t} {back}");
        prop_assert!((half_erfc(back) - q).abs() <= 4.0 * f64::EPSILON * q.max(1e-300), "{q}");
    }

    #[test]
    fn dawson_odd_and_ode(x in 0.05f64..6.0) {
        prop_assert_eq!(dawson(-x), -dawson(x));
        let h = 1e-5;
        let deriv = (dawson(x + h) - dawson(x - h)) / (2.0 * h);
        prop_assert!((deriv - (1.0 - 2.0 * x * dawson(x))).abs() <= 1e-9);
        prop_assert!(dawson(x).abs() < 0.55);
    }

    #[test]
    fn scaled_gamma_above_one(a in 0.01f64..1e6) {
        prop_assert!(scaled_gamma(a).unwrap() > 1.0);
    }

    #[test]
    fn eta_tends_to_lambda_minus_one(k in 2i32..=6, below in any::<bool>()) {
        let d = 10f64.powi(-k);
        let lam = if below { 1.0 - d } else { 1.0 + d };
        let ratio = eta_of_lambda(lam) / (lam - 1.0);
        prop_assert!((ratio - 1.0).abs() <= 2.0 * d, "{lam}: {ratio}");
    }

    #[test]
    fn bell_homogeneity(alpha in proptest::collection::vec(-20i64..20, 6), k in 1usize..=6) {
        let base: Vec<BigRational> = alpha.iter().map(|&v| rat(v, 3)).collect();
        let scaled: Vec<BigRational> = base
            .iter()
            .enumerate()
            .map(|(j, v)| v * rat(1 << (j + 1), 1))
            .collect();
        for m in 0..=k {
            let lhs = bell_partial(k, m, &scaled).unwrap();
            let rhs = bell_partial(k, m, &base).unwrap() * rat(1 << k, 1);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn coefficient_parity(p in -50i64..50, q in 1i64..20, n in 0usize..=10) {
        let t = rat(p, q);
        prop_assert!(parity_holds(&gen_c(n), n, &t));
        prop_assert!(parity_holds(&gen_d(n), n, &t));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hybrid_within_estimate(la in 0.7f64..4.0, r in 0.2f64..5.0) {
        let a = 10f64.powf(la);
        let x = a * r;
        let h = hybrid_q(a, x).unwrap();
        let q = q_f64(a, x).unwrap();
        prop_assert!((h.value - q).abs() <= 1e-10f64.max(10.0 * h.error_estimate), "a={a} x={x}: {} {q}", h.value);
    }

    #[test]
    fn quantile_decreasing(q1 in 0.02f64..0.98, gap in 0.005f64..0.2) {
        let q2 = (q1 + gap).min(0.985);
        prop_assume!(q2 > q1);
        let x1 = quantile_auto(50.0, q1).unwrap().x;
        let x2 = quantile_auto(50.0, q2).unwrap().x;
        prop_assert!(x1 > x2);
    }

    #[test]
    fn oracle_precision_ladder(a in 1.0f64..200.0, r in 0.2f64..3.0) {
        let (a, x) = (bf(a), bf(a * r));
        let lo = oracle_q(&a, &x).unwrap();
        let hi = oracle_q(&a.with_prec(2 * DEFAULT_PREC), &x.with_prec(2 * DEFAULT_PREC)).unwrap();
        prop_assert!(lo.sub(&hi).abs().div(&hi).to_f64() <= 1e-25);
    }

    #[test]
    fn csv_round_trip(vals in proptest::collection::vec(any::<f64>().prop_filter("finite", |v| v.is_finite()), 1..6),
                      ints in proptest::collection::vec(any::<i64>(), 1..6)) {
        let rows: Vec<Row> = vals
            .iter()
            .zip(ints.iter().cycle())
            .map(|(v, i)| vec![("v", Cell::Num(*v)), ("i", Cell::Int(*i)), ("s", Cell::Text("outer-upper".into())), ("e", Cell::Empty)])
            .collect();
        let mut buf = Vec::new();
        write_rows(&mut buf, &rows, Format::Csv).unwrap();
        let mut rd = csv::Reader::from_reader(buf.as_slice());
        let headers: Vec<String> = rd.headers().unwrap().iter().map(String::from).collect();
        prop_assert_eq!(headers, vec!["v", "i", "s", "e"]);
        let mut parsed = Vec::new();
        for rec in rd.records() {
            let rec = rec.unwrap();
            parsed.push(vec![
                ("v", Cell::Num(rec[0].parse().unwrap())),
                ("i", Cell::Int(rec[1].parse().unwrap())),
                ("s", Cell::Text(rec[2].to_string())),
                ("e", if rec[3].is_empty() { Cell::Empty } else { Cell::Text(rec[3].to_string()) }),
            ]);
        }
        prop_assert_eq!(parsed, rows.clone());

        let mut js = Vec::new();
        write_rows(&mut js, &rows, Format::Json).unwrap();
        let arr: Vec<serde_json::Value> = serde_json::from_slice(&js).unwrap();
        for (obj, row) in arr.iter().zip(&rows) {
            let Cell::Num(v) = row[0].1 else { unreachable!() };
            let from_json = obj["v"].as_f64().unwrap();
            prop_assert_eq!(incgamma::cli::fmt_num(from_json), incgamma::cli::fmt_num(v));
        }
    }
}

#[test]
fn scaled_gamma_reproduces_factorials() {
    let mut fact = 1.0f64;
    for a in 2..=12 {
        fact *= (a - 1) as f64;
        let a = a as f64;
        let g = scaled_gamma(a).unwrap() * (2.0 * std::f64::consts::PI).sqrt() * a.powf(a - 0.5) * (-a).exp();
        assert!((g / fact - 1.0).abs() <= 1e-13, "a={a}: {g} {fact}");
    }
}

#[test]
fn regime_continuity() {
    for a in [50.0f64, 500.0, 5000.0] {
        for sign in [-1.0, 1.0] {
            let tau = sign * 0.9 * a.powf(1.0 / 6.0);
            let x = a + tau * a.sqrt();
            let t = q_transition_auto(a, tau, 100).unwrap();
            let o = outer_q_series(a, x, None).unwrap();
            let est = t.error_estimate.max(o.error_estimate);
            assert!(
                (t.value - o.value).abs() <= 5.0 * est,
                "a={a} τ={tau}: {} {} {est}",
                t.value,
                o.value
            );
        }
    }
}

#[test]
fn quantile_symmetry() {
    let (a, q, n) = (100.0, 0.2, 8);
    let lo = quantile(a, q, n).unwrap();
    let hi = quantile(a, 1.0 - q, n).unwrap();
    let tau0 = lo.tau0;
    let even: f64 = (0..n)
        .step_by(2)
        .map(|k| gen_d(k).to_f64_coeffs().iter().rev().fold(0.0, |acc, c| acc * tau0 + c) * a.powf(-(k as f64) / 2.0))
        .sum();
    let gap = lo.x + hi.x - 2.0 * a - 2.0 * even;
    assert!(gap.abs() <= 1e-12 * a, "{gap}");
}

#[test]
fn negative_zero_bracket() {
    let a = -30.3f64;
    let z = negative_zero(a, 6).unwrap();
    let h = (-a).powf(-3.0);
    let g = |x: f64| oracle_gammastar(&bf(a), &bf(x)).unwrap().to_f64();
    assert!(g(z.x_minus - h).signum() != g(z.x_minus + h).signum());
}

#[test]
fn oracle_ratio_identities() {
    for a in [3.0f64, 30.0] {
        let full = gamma_positive(&bf(a)).unwrap();
        for x in [a / 2.0, a, 2.0 * a] {
            let up = oracle_gamma_upper(&bf(a), &bf(x)).unwrap();
            let q = oracle_q(&bf(a), &bf(x)).unwrap();
            assert!(up.div(&full).sub(&q).abs().div(&q).to_f64() <= 1e-24);
            let (p, q2) = oracle_pq(&bf(a), &bf(x)).unwrap();
            assert!(p.add(&q2).sub(&bf(1.0)).abs().to_f64() <= 1e-25);
        }
    }
}
