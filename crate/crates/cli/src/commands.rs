use std::collections::BTreeMap;
use std::fmt::Write as _;

use multisym::basis::{decompose_series, MonomialIndexedAlpha};
use multisym::margins::{enumerate_l, enumerate_q};
use multisym::multisym::{ESum, ESymbol};
use multisym::weylstar::Sign;
use multisym::Rational;
use serde_json::json;
use thiserror::Error;

use crate::ast::Span;
use crate::eval::{evaluate, resolve_dimensions, Document, EvalConfig, EvalError};
use crate::parser::{parse, ParseError};
use crate::render;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    L,
    Q,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Eval(#[from] EvalError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn span(&self) -> Option<Span> {
        match self {
            CliError::Parse(e) => Some(Span { start: e.pos(), end: e.pos() }),
            CliError::Eval(EvalError::Domain { span, .. }) => Some(*span),
            _ => None,
        }
    }

    /// The message, followed by the offending source line and a caret
    /// marker when a position is known.
    pub fn report(&self, input: &str) -> String {
        let mut out = format!("error: {self}\n");
        let Some(span) = self.span() else { return out };
        let Some(line) = input.lines().nth(span.start.line.saturating_sub(1)) else { return out };
        let width = if span.end.line == span.start.line && span.end.col > span.start.col {
            span.end.col - span.start.col
        } else {
            1
        };
        let _ = writeln!(out, "  {line}");
        let _ = writeln!(out, "  {}{}", " ".repeat(span.start.col.saturating_sub(1)), "^".repeat(width));
        out
    }
}

pub fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+1" | "1" | "+" => Ok(Sign::Plus),
        "-1" | "-" => Ok(Sign::Minus),
        _ => Err(format!("expected +1 or -1, got '{s}'")),
    }
}

pub fn eval_document(input: &str, config: &EvalConfig) -> Result<Document, CliError> {
    let parsed = parse(input)?;
    Ok(evaluate(input, &parsed, config)?)
}

pub fn eval(input: &str, config: &EvalConfig, format: Format) -> Result<String, CliError> {
    let doc = eval_document(input, config)?;
    Ok(match format {
        Format::Text => render::to_text(&doc),
        Format::Json => format!("{}\n", render::to_json(&doc)),
    })
}

/// One matrix per line, entries flattened row-major.
pub fn enumerate(
    family: Family,
    alpha: &[u32],
    beta: &[u32],
    n: u32,
    m: Option<u32>,
    k_max: Option<u32>,
) -> Result<String, CliError> {
    if alpha.is_empty() || beta.is_empty() {
        return Err(CliError::Usage("--alpha and --beta need at least one entry".into()));
    }
    let rows: Vec<Vec<u32>> = match family {
        Family::L => {
            if m.is_some() || k_max.is_some() {
                return Err(CliError::Usage("--m and --kmax only apply to Q".into()));
            }
            enumerate_l(alpha, beta, n).iter().map(|g| g.flattened()).collect()
        }
        Family::Q => {
            let m = m.ok_or_else(|| CliError::Usage("Q needs --m".into()))?;
            enumerate_q(alpha, beta, n, m, k_max.unwrap_or(m)).iter().map(|g| g.flattened().to_vec()).collect()
        }
    };
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    Ok(out)
}

fn as_esum(coeffs: &BTreeMap<u32, BTreeMap<MonomialIndexedAlpha, Rational>>) -> ESum {
    let mut out = ESum::new();
    for (&k, block) in coeffs {
        for (alpha, c) in block {
            let e = alpha.to_esymbol();
            out.push(ESymbol::new(e.index().clone(), e.args().to_vec(), c.clone(), k).expect("arity preserved"));
        }
    }
    out
}

/// Coefficients of the expanded expression in the `e_α ħ^k` basis.
pub fn decompose(input: &str, config: &EvalConfig, format: Format) -> Result<String, CliError> {
    let parsed = parse(input)?;
    let (mode, n, d) = resolve_dimensions(&parsed, config)?;
    let doc = evaluate(input, &parsed, &EvalConfig { n: Some(n), d: Some(d), verify: false, ..*config })?;
    let coeffs = decompose_series(&doc.expansion, n, d)
        .map_err(|source| EvalError::Domain { span: parsed.expr.span, source })?;
    let sum = as_esum(&coeffs);
    Ok(match format {
        Format::Text => {
            if sum.is_empty() {
                "0\n".to_string()
            } else {
                format!("{}\n", sum.display_with(mode.namer()))
            }
        }
        Format::Json => {
            let terms: Vec<_> = sum.terms().iter().map(|s| render::symbol(s, mode)).collect();
            format!("{}\n", json!({ "input": input, "n": n, "d": d, "coefficients": terms }))
        }
    })
}
