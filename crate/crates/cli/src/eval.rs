use multisym::multisym::{
    classical_product, expand_homogeneous, expand_vaccarino, power_sum, ESum, ESymbol, MultiIndex, PolyTuple,
};
use multisym::polyalg::{HbarSeries, Polynomial, VarId};
use multisym::weylstar::{quantum_product, star, PhaseContext, Sign};
use multisym::Rational;
use num_traits::One;
use thiserror::Error;

use crate::ast::{Expr, ExprKind, Mode, Span};
use crate::parser::Parsed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EvalConfig {
    pub n: Option<u32>,
    pub d: Option<u32>,
    /// ħ-degrees `>= order` are dropped.
    pub order: Option<u32>,
    pub sign: Sign,
    pub verify: bool,
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("{source} (in {span})")]
    Domain {
        span: Span,
        #[source]
        source: multisym::Error,
    },
    #[error("{0}")]
    Config(String),
}

fn at(span: Span) -> impl Fn(multisym::Error) -> EvalError {
    move |source| EvalError::Domain { span, source }
}

/// The outcome of one evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub input: String,
    pub mode: Mode,
    pub n: u32,
    pub d: u32,
    pub order: u32,
    /// Symbolic result, when every step went through a product formula.
    pub esum: Option<ESum>,
    pub expansion: HbarSeries,
    /// Whether the symbolic result expands to `expansion`; `None` unless
    /// verification was requested and a symbolic result exists.
    pub oracle_match: Option<bool>,
}

/// A value: its expansion over the points, and a symbolic form if known.
#[derive(Debug, Clone)]
struct Value {
    series: HbarSeries,
    esum: Option<ESum>,
}

struct Evaluator {
    n: u32,
    d: u32,
    mode: Mode,
    order: Option<u32>,
    ctx: PhaseContext,
}

/// Resolves `n` and `d` from the configuration and the expression.
pub fn resolve_dimensions(parsed: &Parsed, config: &EvalConfig) -> Result<(Mode, u32, u32), EvalError> {
    let mode = parsed.effective_mode();
    let mut weight = 1;
    let mut coord = 1;
    let mut h_len = None;
    parsed.expr.walk(&mut |e| match &e.kind {
        ExprKind::ESym { index, args } => {
            weight = weight.max(index.iter().sum());
            for v in args.iter().flat_map(Polynomial::variables) {
                coord = coord.max(v.coord());
            }
        }
        ExprKind::HSym { index } => {
            h_len = Some(h_len.unwrap_or(0).max(index.len() as u32));
        }
        ExprKind::PSum(m) => {
            for v in m.vars() {
                coord = coord.max(v.coord());
            }
        }
        _ => {}
    });
    let n = config.n.unwrap_or(weight);
    if n == 0 {
        return Err(EvalError::Config("n must be at least 1".into()));
    }
    let d = match mode {
        Mode::Phase => {
            if let Some(d) = config.d.filter(|&d| d != 2) {
                return Err(EvalError::Config(format!("x, y live on the plane, so d must be 2 (got {d})")));
            }
            2
        }
        Mode::General => config.d.unwrap_or_else(|| coord.max(h_len.unwrap_or(1))),
    };
    if d == 0 {
        return Err(EvalError::Config("d must be at least 1".into()));
    }
    Ok((mode, n, d))
}

pub fn evaluate(input: &str, parsed: &Parsed, config: &EvalConfig) -> Result<Document, EvalError> {
    let (mode, n, d) = resolve_dimensions(parsed, config)?;
    let ev = Evaluator { n, d, mode, order: config.order, ctx: PhaseContext::new(n, config.sign) };
    let value = ev.eval(&parsed.expr)?;
    let oracle_match = match (&value.esum, config.verify) {
        (Some(sum), true) => {
            let expanded = sum.expand(n).map_err(at(parsed.expr.span))?.truncate(config.order);
            Some(expanded.same_coeffs(&value.series))
        }
        _ => None,
    };
    let top = value
        .series
        .max_degree()
        .into_iter()
        .chain(value.esum.iter().flat_map(|s| s.terms().iter().map(ESymbol::hbar)))
        .max();
    Ok(Document {
        input: input.to_string(),
        mode,
        n,
        d,
        order: config.order.unwrap_or_else(|| top.map_or(1, |m| m + 1)),
        esum: value.esum,
        expansion: value.series.with_order(None),
        oracle_match,
    })
}

fn scalar(c: Rational, hbar: u32) -> ESum {
    ESymbol::new(MultiIndex::new(Vec::new()), Vec::new(), c, hbar).expect("empty index, no arguments").into()
}

impl Evaluator {
    fn check_vars(&self, p: &Polynomial, span: Span) -> Result<(), EvalError> {
        for v in p.variables() {
            if let VarId::Abstract(j) = v {
                if j > self.d {
                    return Err(EvalError::Domain {
                        span,
                        source: multisym::Error::VariableOutOfRange {
                            var: self.mode.var_name(v),
                            n: self.n,
                            d: self.d,
                        },
                    });
                }
            }
        }
        Ok(())
    }

    fn eval(&self, e: &Expr) -> Result<Value, EvalError> {
        let err = at(e.span);
        let order = self.order;
        Ok(match &e.kind {
            ExprKind::ESym { index, args } => {
                for a in args {
                    self.check_vars(a, e.span)?;
                }
                let sym = ESymbol::plain(MultiIndex::new(index.clone()), args.clone()).map_err(&err)?;
                let tuple = PolyTuple::new(args.clone()).map_err(&err)?;
                let poly = expand_vaccarino(&tuple, &MultiIndex::new(index.clone()), self.n).map_err(&err)?;
                Value { series: HbarSeries::from_poly(poly, order), esum: Some(sym.into()) }
            }
            ExprKind::HSym { index } => {
                if index.len() as u32 != self.d {
                    return Err(EvalError::Config(format!(
                        "h[...] at {} needs {} index entries, one per coordinate",
                        e.span, self.d
                    )));
                }
                let poly = expand_homogeneous(index, self.n, self.d).map_err(&err)?;
                Value { series: HbarSeries::from_poly(poly, order), esum: None }
            }
            ExprKind::PSum(m) => {
                let mono = Polynomial::monomial(m.clone());
                self.check_vars(&mono, e.span)?;
                let poly = power_sum(m, self.n).map_err(&err)?;
                let sym = ESymbol::plain(MultiIndex::new(vec![1]), vec![mono]).map_err(&err)?;
                Value { series: HbarSeries::from_poly(poly, order), esum: Some(sym.into()) }
            }
            ExprKind::Hbar => {
                Value { series: HbarSeries::hbar(order), esum: Some(scalar(Rational::one(), 1).truncate(order)) }
            }
            ExprKind::Number(q) => Value {
                series: HbarSeries::from_poly(Polynomial::constant(q.clone()), order),
                esum: Some(scalar(q.clone(), 0).truncate(order)),
            },
            ExprKind::Add(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                Value { series: a.series.add(&b.series), esum: both(a.esum, b.esum, |x, y| Ok(x.concat(&y)))? }
            }
            ExprKind::Sub(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                Value { series: a.series.sub(&b.series), esum: both(a.esum, b.esum, |x, y| Ok(x.concat(&y.neg())))? }
            }
            ExprKind::Mul(a, b) => self.multiply(self.eval(a)?, self.eval(b)?, e.span)?,
            ExprKind::Star(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                let series = star(&a.series, &b.series, order).map_err(&err)?;
                let esum = both(a.esum, b.esum, |x, y| {
                    pairwise(&x, &y, order, |s, t, o| {
                        quantum_product(&tuple(s), s.index(), &tuple(t), t.index(), &self.ctx, o)
                    })
                    .map_err(&err)
                })?;
                Value { series, esum }
            }
            ExprKind::Pow(a, k) => {
                let base = self.eval(a)?;
                let mut acc =
                    Value { series: HbarSeries::one(order), esum: Some(scalar(Rational::one(), 0).truncate(order)) };
                for _ in 0..*k {
                    acc = self.multiply(acc, base.clone(), e.span)?;
                }
                acc
            }
        })
    }

    fn multiply(&self, a: Value, b: Value, span: Span) -> Result<Value, EvalError> {
        let err = at(span);
        let n = self.n;
        let esum = both(a.esum, b.esum, |x, y| {
            pairwise(&x, &y, self.order, |s, t, _| classical_product(&tuple(s), s.index(), &tuple(t), t.index(), n))
                .map_err(&err)
        })?;
        Ok(Value { series: a.series.mul(&b.series), esum })
    }
}

fn tuple(s: &ESymbol) -> PolyTuple {
    PolyTuple::new(s.args().to_vec()).expect("symbols with a nonempty index have valid arguments")
}

fn both<F>(a: Option<ESum>, b: Option<ESum>, f: F) -> Result<Option<ESum>, EvalError>
where
    F: FnOnce(ESum, ESum) -> Result<ESum, EvalError>,
{
    match (a, b) {
        (Some(a), Some(b)) => f(a, b).map(Some),
        _ => Ok(None),
    }
}

/// Multiplies two sums term by term. Scalar terms (empty index) just scale
/// the other side; `f` gets the bare symbols and the remaining ħ budget.
fn pairwise<F>(a: &ESum, b: &ESum, order: Option<u32>, f: F) -> multisym::Result<ESum>
where
    F: Fn(&ESymbol, &ESymbol, Option<u32>) -> multisym::Result<ESum>,
{
    let mut out = ESum::new();
    for s in a.terms() {
        for t in b.terms() {
            let shift = s.hbar() + t.hbar();
            if order.is_some_and(|o| shift >= o) {
                continue;
            }
            let part = if s.index().is_empty() {
                ESum::from(t.bare())
            } else if t.index().is_empty() {
                ESum::from(s.bare())
            } else {
                f(&s.bare(), &t.bare(), order.map(|o| o - shift))?
            };
            out = out.concat(&part.scale(&(s.coeff() * t.coeff())).shift(shift));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn run(input: &str, n: u32) -> Document {
        let config = EvalConfig { n: Some(n), verify: true, ..EvalConfig::default() };
        evaluate(input, &parse(input).unwrap(), &config).unwrap()
    }

    #[test]
    fn weyl_example_routes_to_quantum_product() {
        let doc = run("e[2](y) @ e[3](x)", 3);
        let sum = doc.esum.unwrap();
        assert_eq!(sum.len(), 3);
        assert_eq!(doc.oracle_match, Some(true));
        assert_eq!(doc.order, 3);
        assert_eq!(doc.expansion.coeff(2).len(), 3);
    }

    #[test]
    fn classical_example() {
        let doc = run("e[1,1](y1*y2,y1) * e[2,1](y1*y2,y3)", 3);
        assert_eq!(doc.esum.unwrap().len(), 3);
        assert_eq!(doc.oracle_match, Some(true));
        assert_eq!(doc.d, 3);
    }

    #[test]
    fn zero_times_anything() {
        let doc = run("0 * e[1](y1)", 2);
        assert!(doc.expansion.is_zero());
        assert!(doc.esum.unwrap().is_empty());
    }

    #[test]
    fn scalars_and_powers() {
        let doc = run("(2*hbar + e[1](x)) @ e[1](y) - e[1](x)^2", 2);
        assert_eq!(doc.oracle_match, Some(true));
        let doc = run("h[2] + p(y1^2)", 2);
        assert!(doc.esum.is_none());
        assert_eq!(doc.oracle_match, None);
    }

    #[test]
    fn truncation() {
        let input = "e[2](y) @ e[3](x)";
        let config = EvalConfig { n: Some(3), order: Some(2), verify: true, ..EvalConfig::default() };
        let doc = evaluate(input, &parse(input).unwrap(), &config).unwrap();
        assert_eq!(doc.order, 2);
        assert_eq!(doc.esum.unwrap().len(), 2);
        assert!(doc.expansion.coeff(2).is_zero());
        assert_eq!(doc.oracle_match, Some(true));
    }

    #[test]
    fn domain_errors_carry_spans() {
        let input = "e[3](y1) * e[1](y1)";
        let config = EvalConfig { n: Some(2), ..EvalConfig::default() };
        match evaluate(input, &parse(input).unwrap(), &config) {
            Err(EvalError::Domain { span, .. }) => assert_eq!((span.start.col, span.end.col), (1, 9)),
            other => panic!("{other:?}"),
        }
        let config = EvalConfig { d: Some(1), ..EvalConfig::default() };
        assert!(evaluate("e[1](y2)", &parse("e[1](y2)").unwrap(), &config).is_err());
        let config = EvalConfig { d: Some(3), ..EvalConfig::default() };
        assert!(evaluate("e[1](x)", &parse("e[1](x)").unwrap(), &config).is_err());
    }
}
