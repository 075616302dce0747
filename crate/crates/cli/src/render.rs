use std::fmt::Write as _;

use multisym::multisym::ESymbol;
use multisym::polyalg::{Monomial, Polynomial};
use multisym::Rational;
use serde_json::{json, Map, Value};

use crate::ast::Mode;
use crate::eval::Document;

pub fn rational(q: &Rational) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

pub fn monomial(m: &Monomial, mode: Mode) -> Value {
    let map: Map<String, Value> = m.exponents().iter().map(|&(v, e)| (mode.var_name(v), json!(e))).collect();
    Value::Object(map)
}

pub fn polynomial(p: &Polynomial, mode: Mode) -> Value {
    Value::Array(
        p.terms().iter().map(|(m, c)| json!({ "coeff": rational(c), "monomial": monomial(m, mode) })).collect(),
    )
}

pub fn symbol(s: &ESymbol, mode: Mode) -> Value {
    json!({
        "coeff": rational(s.coeff()),
        "hbar": s.hbar(),
        "index": s.index().parts(),
        "args": s.args().iter().map(|a| polynomial(a, mode)).collect::<Vec<_>>(),
    })
}

pub fn to_json(doc: &Document) -> Value {
    let mode = doc.mode;
    json!({
        "input": doc.input,
        "n": doc.n,
        "d": doc.d,
        "order": doc.order,
        "esum": doc.esum.as_ref().map(|s| s.terms().iter().map(|t| symbol(t, mode)).collect::<Vec<_>>()),
        "expansion": doc
            .expansion
            .coeffs()
            .map(|(m, p)| json!({ "hbar": m, "terms": polynomial(p, mode) }))
            .collect::<Vec<_>>(),
        "oracle_match": doc.oracle_match,
    })
}

pub fn to_text(doc: &Document) -> String {
    let name = doc.mode.namer();
    let mut out = String::new();
    let _ = writeln!(out, "n = {}, d = {}, order = {}", doc.n, doc.d, doc.order);
    match &doc.esum {
        Some(sum) if sum.is_empty() => out.push_str("esum: 0\n"),
        Some(sum) => {
            let _ = writeln!(out, "esum: {}", sum.display_with(&name));
        }
        None => out.push_str("esum: (none)\n"),
    }
    if doc.expansion.is_zero() {
        out.push_str("expansion: 0\n");
    } else {
        out.push_str("expansion:\n");
        for (m, p) in doc.expansion.coeffs() {
            let _ = writeln!(out, "  hbar^{m}: {}", p.display_with(&name));
        }
    }
    if let Some(ok) = doc.oracle_match {
        let _ = writeln!(out, "oracle_match: {ok}");
    }
    out
}
