// SPDX-License-Identifier: Apache-2.0

use dualcurve_core::expr::{Expr, Func};
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        Just(Expr::Var),
        Just(Expr::Param("a".into())),
        Just(Expr::pi()),
        (0u32..1000, 0u32..4).prop_map(|(m, k)| Expr::Num(m as f64 / 10f64.powi(k as i32))),
    ]
}

fn func() -> impl Strategy<Value = Func> {
    prop_oneof![
        Just(Func::Sin),
        Just(Func::Cos),
        Just(Func::Tan),
        Just(Func::Exp),
        Just(Func::Log),
        Just(Func::Sqrt),
    ]
}

fn tree() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 40, 2, |inner| {
        let b = |e: Expr| Box::new(e);
        prop_oneof![
            inner.clone().prop_map(move |e| Expr::Neg(b(e))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Sub(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Mul(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Div(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Pow(b(x), b(y))),
            (func(), inner).prop_map(move |(f, x)| Expr::Call(f, b(x))),
        ]
    })
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(e in tree()) {
        let text = e.to_string();
        let back = Expr::parse_with_params(&text, &["a"]).unwrap();
        prop_assert_eq!(back, e, "printed as {}", text);
    }
}

#[test]
fn derivatives_of_known_functions() {
    let cases = [
        ("s^3", "3*s^2", 1.7),
        ("sin(2*s)", "2*cos(2*s)", 0.3),
        ("log(s)", "1/s", 2.5),
        ("sqrt(s)", "1/(2*sqrt(s))", 0.8),
        ("exp(s^2)", "2*s*exp(s^2)", 0.6),
        ("tan(s)", "1/cos(s)^2", 0.4),
    ];
    for (f, df, s) in cases {
        let got = Expr::parse(f).unwrap().derivative().eval(s).unwrap();
        let want = Expr::parse(df).unwrap().eval(s).unwrap();
        assert!((got - want).abs() < 1e-12, "{f}: {got} vs {want}");
    }
}

#[test]
fn malformed_input_is_rejected() {
    for bad in ["", "sin(", "s +", "2 ** s", "foo(s)", "s)", "1..2"] {
        assert!(Expr::parse(bad).is_err(), "accepted `{bad}`");
    }
}
