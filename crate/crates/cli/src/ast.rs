use std::fmt;

use multisym::polyalg::{Monomial, Polynomial, VarId};
use multisym::Rational;

/// A position in the input, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub start: Pos,
    pub end: Pos,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.start, self.end)
    }
}

/// How abstract variables are spelled: `y1..yd`, or `x, y` on the phase plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    General,
    Phase,
}

impl Mode {
    pub fn var_name(self, v: VarId) -> String {
        match (self, v) {
            (Mode::General, VarId::Abstract(j)) => format!("y{j}"),
            (Mode::General, VarId::Point { point, coord }) => format!("x{point}_{coord}"),
            (Mode::Phase, VarId::Abstract(1)) => "x".to_string(),
            (Mode::Phase, VarId::Abstract(2)) => "y".to_string(),
            (Mode::Phase, VarId::Point { point, coord: 1 }) => format!("x{point}"),
            (Mode::Phase, VarId::Point { point, coord: 2 }) => format!("y{point}"),
            (Mode::Phase, other) => other.to_string(),
        }
    }

    pub fn namer(self) -> impl Fn(VarId) -> String {
        move |v| self.var_name(v)
    }
}

#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

/// Structural equality; spans are ignored.
impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    ESym { index: Vec<u32>, args: Vec<Polynomial> },
    HSym { index: Vec<u32> },
    PSum(Monomial),
    Hbar,
    Number(Rational),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Star(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    /// Binding strength: sums 1, products 2, powers 3, atoms 4.
    fn precedence(&self) -> u8 {
        match self.kind {
            ExprKind::Add(..) | ExprKind::Sub(..) => 1,
            ExprKind::Mul(..) | ExprKind::Star(..) => 2,
            ExprKind::Pow(..) => 3,
            ExprKind::Number(ref q) if q < &Rational::from_integer(0.into()) => 3,
            _ => 4,
        }
    }

    /// Visits every node, parents first.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        match &self.kind {
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) | ExprKind::Star(a, b) => {
                a.walk(f);
                b.walk(f);
            }
            ExprKind::Pow(a, _) => a.walk(f),
            _ => {}
        }
    }

    /// Source text that parses back to this expression.
    pub fn print(&self, mode: Mode) -> String {
        let mut out = String::new();
        self.write(&mut out, mode);
        out
    }

    fn write(&self, out: &mut String, mode: Mode) {
        let name = mode.namer();
        let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        match &self.kind {
            ExprKind::ESym { index, args } => {
                let args: Vec<String> = args.iter().map(|a| a.display_with(&name).to_string()).collect();
                out.push_str(&format!("e[{}]({})", list(index), args.join(", ")));
            }
            ExprKind::HSym { index } => out.push_str(&format!("h[{}]", list(index))),
            ExprKind::PSum(m) => out.push_str(&format!("p({})", Polynomial::monomial(m.clone()).display_with(&name))),
            ExprKind::Hbar => out.push_str("hbar"),
            ExprKind::Number(q) => out.push_str(&q.to_string()),
            ExprKind::Add(a, b) => self.binary(out, mode, a, " + ", b),
            ExprKind::Sub(a, b) => self.binary(out, mode, a, " - ", b),
            ExprKind::Mul(a, b) => self.binary(out, mode, a, " * ", b),
            ExprKind::Star(a, b) => self.binary(out, mode, a, " @ ", b),
            ExprKind::Pow(a, k) => {
                a.write_wrapped(out, mode, a.precedence() < 4);
                out.push_str(&format!("^{k}"));
            }
        }
    }

    fn binary(&self, out: &mut String, mode: Mode, a: &Expr, op: &str, b: &Expr) {
        let p = self.precedence();
        // `*` and `@` do not chain into each other.
        let clash = |e: &Expr| {
            matches!(
                (&self.kind, &e.kind),
                (ExprKind::Mul(..), ExprKind::Star(..)) | (ExprKind::Star(..), ExprKind::Mul(..))
            )
        };
        a.write_wrapped(out, mode, a.precedence() < p || clash(a));
        out.push_str(op);
        b.write_wrapped(out, mode, b.precedence() <= p || clash(b));
    }

    fn write_wrapped(&self, out: &mut String, mode: Mode, wrap: bool) {
        if wrap {
            out.push('(');
        }
        self.write(out, mode);
        if wrap {
            out.push(')');
        }
    }
}
