use std::process::Command;

use multisym::polyalg::{HbarSeries, Monomial, Polynomial, VarId};
use multisym::weylstar::Sign;
use multisym::Rational;
use multisym_cli::commands::{decompose, enumerate, eval, eval_document, Family, Format};
use multisym_cli::eval::EvalConfig;
use num_bigint::BigInt;
use proptest::prelude::*;
use serde_json::Value;

fn config(n: u32) -> EvalConfig {
    EvalConfig { n: Some(n), verify: true, ..EvalConfig::default() }
}

fn int(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

fn pt(i: u32, j: u32) -> VarId {
    VarId::point(i, j)
}

/// `Σ_K ħ^|K|/K! ∂_y^K f ∂_x^K g` over the point variables, written out
/// directly for the tests.
fn star_oracle(f: &Polynomial, g: &Polynomial, n: u32, max_k: u32) -> HbarSeries {
    // (f, g, ħ-degree, K!) after differentiating at points 1..i
    let mut layer = vec![(f.clone(), g.clone(), 0u32, 1i64)];
    for i in 1..=n {
        let mut next = Vec::new();
        for (f, g, k_tot, fact) in layer {
            let (mut df, mut dg, mut kf) = (f, g, 1i64);
            for k in 0..=max_k {
                if k > 0 {
                    df = df.partial_derivative(pt(i, 2));
                    dg = dg.partial_derivative(pt(i, 1));
                    kf *= k as i64;
                }
                if df.is_zero() || dg.is_zero() {
                    break;
                }
                next.push((df.clone(), dg.clone(), k_tot + k, fact * kf));
            }
        }
        layer = next;
    }
    let mut out = HbarSeries::zero(None);
    for (f, g, k, fact) in layer {
        out.add_at(k, &f.mul(&g).scale(&Rational::new(1.into(), fact.into())));
    }
    out
}

#[test]
fn weyl_example_document() {
    let doc = eval_document("e[2](y) @ e[3](x)", &config(3)).unwrap();
    assert_eq!(doc.esum.as_ref().unwrap().len(), 3);
    assert_eq!(doc.oracle_match, Some(true));
    let e2y = Polynomial::from_terms([
        (Monomial::from_pairs([(pt(1, 2), 1), (pt(2, 2), 1)]), int(1)),
        (Monomial::from_pairs([(pt(1, 2), 1), (pt(3, 2), 1)]), int(1)),
        (Monomial::from_pairs([(pt(2, 2), 1), (pt(3, 2), 1)]), int(1)),
    ]);
    let e3x = Polynomial::monomial(Monomial::from_pairs((1..=3).map(|i| (pt(i, 1), 1))));
    assert!(doc.expansion.same_coeffs(&star_oracle(&e2y, &e3x, 3, 3)));
    assert_eq!(doc.expansion.coeff(2), Polynomial::from_terms((1..=3).map(|i| (Monomial::var(pt(i, 1)), int(1)))));
}

#[test]
fn classical_example_document() {
    let doc = eval_document("e[1,1](y1*y2, y1) * e[2,1](y1*y2, y3)", &config(3)).unwrap();
    let sum = doc.esum.unwrap();
    assert_eq!(sum.len(), 3);
    assert!(sum.terms().iter().all(|t| t.index().parts() == [1, 1, 1]));
    assert_eq!(doc.oracle_match, Some(true));
    assert_eq!(doc.expansion.max_degree(), Some(0));
}

#[test]
fn zero_document() {
    let out = eval("0 * e[1](y1)", &config(1), Format::Json).unwrap();
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["esum"], serde_json::json!([]));
    assert_eq!(v["expansion"], serde_json::json!([]));
    assert_eq!(v["oracle_match"], Value::Bool(true));
}

#[test]
fn json_schema_and_determinism() {
    let input = "e[2](x^2*y) @ e[2](x*y^3) - 3/7*hbar";
    let first = eval(input, &config(2), Format::Json).unwrap();
    for _ in 0..5 {
        assert_eq!(eval(input, &config(2), Format::Json).unwrap(), first);
    }
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["input"], input);
    assert_eq!((v["n"].as_u64(), v["d"].as_u64(), v["order"].as_u64()), (Some(2), Some(2), Some(3)));
    let last = v["esum"].as_array().unwrap().last().unwrap();
    assert_eq!(last["coeff"], serde_json::json!({"num": "-3", "den": "7"}));
    assert_eq!(last["index"], serde_json::json!([]));
    assert_eq!(last["hbar"], 1);
    let first_sym = &v["esum"][0];
    assert_eq!(first_sym["index"], serde_json::json!([2]));
    assert_eq!(first_sym["args"][0][0]["monomial"], serde_json::json!({"x": 3, "y": 4}));
    let hbars: Vec<u64> = v["expansion"].as_array().unwrap().iter().map(|e| e["hbar"].as_u64().unwrap()).collect();
    assert_eq!(hbars, [0, 1, 2]);
    assert_eq!(v["oracle_match"], Value::Bool(true));
}

#[test]
fn big_rationals_survive_json() {
    let out = eval("123456789012345678901234567891/2 * e[1](y1)", &config(1), Format::Json).unwrap();
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["esum"][0]["coeff"], serde_json::json!({"num": "123456789012345678901234567891", "den": "2"}));
}

#[test]
fn homogeneous_symbols_have_no_esum() {
    let doc = eval_document("h[1,1] * e[1](y1)", &config(2)).unwrap();
    assert!(doc.esum.is_none());
    assert_eq!(doc.oracle_match, None);
    assert!(!doc.expansion.is_zero());
}

#[test]
fn sign_does_not_change_products() {
    let a = eval("e[1](x) @ e[1](y)", &config(2), Format::Json).unwrap();
    let cfg = EvalConfig { sign: Sign::Minus, ..config(2) };
    assert_eq!(eval("e[1](x) @ e[1](y)", &cfg, Format::Json).unwrap(), a);
}

#[test]
fn enumeration_counts() {
    assert_eq!(enumerate(Family::L, &[1, 1, 1], &[1, 2, 1], 4, None, None).unwrap().lines().count(), 12);
    assert_eq!(enumerate(Family::L, &[1, 1], &[2, 1], 3, None, None).unwrap().lines().count(), 3);
    assert_eq!(enumerate(Family::Q, &[2], &[3], 3, Some(1), None).unwrap().lines().count(), 1);
    assert_eq!(enumerate(Family::Q, &[2], &[3], 3, Some(2), None).unwrap().lines().count(), 2);
    assert!(enumerate(Family::Q, &[2], &[3], 3, None, None).is_err());
    assert!(enumerate(Family::L, &[1], &[1], 3, Some(1), None).is_err());
}

#[test]
fn enumeration_lines_are_sorted() {
    let out = enumerate(Family::L, &[2, 1], &[1, 2], 4, None, None).unwrap();
    let rows: Vec<Vec<u32>> = out.lines().map(|l| l.split(' ').map(|x| x.parse().unwrap()).collect()).collect();
    assert!(rows.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn decompose_outputs() {
    let cfg = EvalConfig { n: Some(2), ..EvalConfig::default() };
    assert_eq!(decompose("e[1](y1)^2", &cfg, Format::Text).unwrap(), "2*e[2](y1) + e[1](y1^2)\n");
    assert_eq!(decompose("e[1](x) * e[1](y)", &cfg, Format::Text).unwrap(), "e[1,1](x, y) + e[1](x*y)\n");
    assert_eq!(decompose("0 * e[1](y1)", &cfg, Format::Text).unwrap(), "0\n");
    let v: Value = serde_json::from_str(&decompose("e[1](y) @ e[1](x)", &cfg, Format::Json).unwrap()).unwrap();
    let hbars: Vec<u64> = v["coefficients"].as_array().unwrap().iter().map(|t| t["hbar"].as_u64().unwrap()).collect();
    assert_eq!(hbars, [0, 0, 1]);
    let cfg3 = EvalConfig { n: Some(3), d: Some(1), ..EvalConfig::default() };
    assert!(decompose("h[1] * p(y1)", &cfg3, Format::Text).is_ok());
}

fn phase_arg() -> impl Strategy<Value = Polynomial> {
    (0u32..=2, 0u32..=2).prop_filter("non-constant", |(a, b)| a + b > 0).prop_map(|(a, b)| {
        Polynomial::monomial(Monomial::from_pairs([(VarId::Abstract(1), a), (VarId::Abstract(2), b)]))
    })
}

fn esym_text() -> impl Strategy<Value = String> {
    (1usize..=2).prop_flat_map(|a| {
        (proptest::collection::vec(1u32..=2, a), proptest::collection::vec(phase_arg(), a)).prop_map(|(idx, args)| {
            let name = |v: VarId| if v == VarId::Abstract(1) { "x".to_string() } else { "y".to_string() };
            let idx: Vec<String> = idx.iter().map(u32::to_string).collect();
            let args: Vec<String> = args.iter().map(|p| p.display_with(name).to_string()).collect();
            format!("e[{}]({})", idx.join(","), args.join(", "))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn verify_holds_on_product_paths(a in esym_text(), b in esym_text(), op in prop_oneof![Just("*"), Just("@")], order in proptest::option::of(1u32..=3)) {
        let input = format!("{a} {op} {b} + 2*hbar*{a}");
        let input = if op == "@" { format!("({a} @ {b}) + 2*hbar*{a}") } else { input };
        let cfg = EvalConfig { n: Some(4), order, verify: true, ..EvalConfig::default() };
        let doc = eval_document(&input, &cfg).map_err(|e| TestCaseError::fail(format!("{input}: {e}")))?;
        prop_assert_eq!(doc.oracle_match, Some(true), "{}", input);
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_multisym"))
}

#[test]
fn binary_round_trip() {
    let out = bin().args(["eval", "--n", "3", "--verify", "e[2](y) @ e[3](x)"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("esum: e[1,2](x, x*y) + e[1,1,1](x, x*y, 1)*hbar + e[1,2](x, 1)*hbar^2"), "{text}");
    assert!(text.contains("oracle_match: true"));

    let out = bin().args(["eval", "--sign", "-1", "--format", "json", "--n", "2", "-2*e[1](x)"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let out = bin().args(["enum", "L", "--alpha", "1,1", "--beta", "2,1", "--n", "3"]).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 3);

    let out = bin().args(["decompose", "--n", "2", "p(y1^2)"]).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "e[1](y1^2)\n");
}

#[test]
fn binary_errors_point_at_the_source() {
    let out = bin().args(["eval", "e[1,1]"]).output().unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("1:7"), "{err}");
    assert!(err.ends_with("  e[1,1]\n        ^\n"), "{err}");

    let out = bin().args(["eval", "--n", "2", "e[1](y1) * e[3](y1)"]).output().unwrap();
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.ends_with("             ^^^^^^^^\n"), "{err}");

    let out = bin().args(["eval", "e[1](y1) @ e[1](y1)"]).output().unwrap();
    assert!(!out.status.success());
}
