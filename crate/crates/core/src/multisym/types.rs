use std::fmt;
use std::ops::Deref;

use num_traits::{One, Zero};

use super::expand::vaccarino;
use crate::error::{Error, Result};
use crate::polyalg::{HbarSeries, Polynomial, VarId};
use crate::Rational;

/// An exponent vector `α = (α₁, …, α_a)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(parts: Vec<u32>) -> Self {
        MultiIndex(parts)
    }

    /// `|α|`.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn check_weight(&self, n: u32) -> Result<()> {
        check_weight(&self.0, n)
    }
}

pub(crate) fn check_weight(alpha: &[u32], n: u32) -> Result<()> {
    let weight: u32 = alpha.iter().sum();
    if weight > n {
        return Err(Error::IndexTooLarge { index: alpha.to_vec(), weight, n });
    }
    Ok(())
}

impl Deref for MultiIndex {
    type Target = [u32];
    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl<const N: usize> From<[u32; N]> for MultiIndex {
    fn from(v: [u32; N]) -> Self {
        MultiIndex(v.to_vec())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// A non-empty tuple `(p₁, …, p_a)` of nonzero polynomials in the abstract
/// variables `y_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyTuple(Vec<Polynomial>);

impl PolyTuple {
    pub fn new(entries: Vec<Polynomial>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyTuple);
        }
        for (i, p) in entries.iter().enumerate() {
            if p.is_zero() {
                return Err(Error::ZeroArgument(i + 1));
            }
            if let Some(v) = p.variables().into_iter().find(VarId::is_point) {
                return Err(Error::PointVariable(v.to_string()));
            }
        }
        Ok(PolyTuple(entries))
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest abstract coordinate label used by any entry.
    pub fn max_coord(&self) -> u32 {
        self.0.iter().flat_map(|p| p.variables()).map(|v| v.coord()).max().unwrap_or(0)
    }
}

impl Deref for PolyTuple {
    type Target = [Polynomial];
    fn deref(&self) -> &[Polynomial] {
        &self.0
    }
}

/// The symbol `c·e_γ(p₁, …, p_k)·ħ^m`.
///
/// Index parts equal to zero are dropped together with their argument; the
/// remaining arguments keep their order (constant arguments such as `1` are
/// kept).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ESymbol {
    index: MultiIndex,
    args: Vec<Polynomial>,
    coeff: Rational,
    hbar: u32,
}

impl ESymbol {
    pub fn new(index: MultiIndex, args: Vec<Polynomial>, coeff: Rational, hbar: u32) -> Result<Self> {
        if index.len() != args.len() {
            return Err(Error::ArityMismatch { index: index.len(), args: args.len() });
        }
        let (parts, args): (Vec<u32>, Vec<Polynomial>) = index.0.into_iter().zip(args).filter(|(k, _)| *k > 0).unzip();
        Ok(ESymbol { index: MultiIndex(parts), args, coeff, hbar })
    }

    /// `e_α(p)` with coefficient one at ħ-degree zero.
    pub fn plain(index: MultiIndex, args: Vec<Polynomial>) -> Result<Self> {
        Self::new(index, args, Rational::one(), 0)
    }

    pub fn index(&self) -> &MultiIndex {
        &self.index
    }

    pub fn args(&self) -> &[Polynomial] {
        &self.args
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn hbar(&self) -> u32 {
        self.hbar
    }

    /// The same symbol with coefficient one and ħ-degree zero.
    pub fn bare(&self) -> ESymbol {
        ESymbol { index: self.index.clone(), args: self.args.clone(), coeff: Rational::one(), hbar: 0 }
    }

    pub(crate) fn with_coeff(mut self, coeff: Rational, hbar: u32) -> ESymbol {
        self.coeff = coeff;
        self.hbar = hbar;
        self
    }

    /// Whether some argument with a positive index part is zero (the symbol
    /// then expands to zero).
    pub fn vanishes(&self) -> bool {
        self.coeff.is_zero() || self.args.iter().any(Polynomial::is_zero)
    }

    /// Expands `c·e_γ(p)` over `n` points, without the ħ power.
    pub fn expand(&self, n: u32) -> Result<Polynomial> {
        check_weight(&self.index, n)?;
        Ok(vaccarino(&self.args, &self.index, n)?.scale(&self.coeff))
    }

    pub fn fmt_with<F>(&self, f: &mut fmt::Formatter<'_>, name: &F) -> fmt::Result
    where
        F: Fn(VarId) -> String,
    {
        write!(f, "e{}(", self.index)?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            a.fmt_with(f, name)?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for ESymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        ESum::from(vec![self.clone()]).fmt_with(f, &|v: VarId| v.to_string())
    }
}

/// A formal linear combination of e-symbols.
///
/// Two sums are semantically equal when their expansions agree; the symbol
/// list itself is not a normal form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ESum {
    terms: Vec<ESymbol>,
}

impl ESum {
    pub fn new() -> Self {
        ESum { terms: Vec::new() }
    }

    pub fn push(&mut self, sym: ESymbol) {
        if !sym.coeff.is_zero() {
            self.terms.push(sym);
        }
    }

    pub fn terms(&self) -> &[ESymbol] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> ESum {
        let mut out = ESum::new();
        for t in &self.terms {
            out.push(ESymbol { coeff: &t.coeff * c, ..t.clone() });
        }
        out
    }

    pub fn neg(&self) -> ESum {
        self.scale(&-Rational::one())
    }

    /// Multiplies every symbol by `ħ^k`.
    pub fn shift(&self, k: u32) -> ESum {
        ESum { terms: self.terms.iter().map(|t| ESymbol { hbar: t.hbar + k, ..t.clone() }).collect() }
    }

    pub fn concat(&self, other: &ESum) -> ESum {
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out
    }

    /// Drops symbols at ħ-degree `>= order`.
    pub fn truncate(&self, order: Option<u32>) -> ESum {
        match order {
            None => self.clone(),
            Some(o) => ESum { terms: self.terms.iter().filter(|t| t.hbar < o).cloned().collect() },
        }
    }

    /// Symbols at ħ-degree `m`.
    pub fn at_hbar(&self, m: u32) -> impl Iterator<Item = &ESymbol> {
        self.terms.iter().filter(move |t| t.hbar == m)
    }

    /// Full expansion over `n` points, per ħ-degree.
    pub fn expand(&self, n: u32) -> Result<HbarSeries> {
        let mut out = HbarSeries::zero(None);
        for t in &self.terms {
            out.add_at(t.hbar, &t.expand(n)?);
        }
        Ok(out)
    }

    /// Semantic equality: equal expansions over `n` points.
    pub fn expand_eq(&self, other: &ESum, n: u32) -> Result<bool> {
        Ok(self.expand(n)?.same_coeffs(&other.expand(n)?))
    }

    pub fn fmt_with<F>(&self, f: &mut fmt::Formatter<'_>, name: &F) -> fmt::Result
    where
        F: Fn(VarId) -> String,
    {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let negative = t.coeff < Rational::zero();
            let abs = if negative { -&t.coeff } else { t.coeff.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            // e_∅ = 1, so such a term is a scalar.
            if t.index.is_empty() {
                match (abs.is_one(), t.hbar) {
                    (true, 0) => write!(f, "1")?,
                    (true, _) => {}
                    (false, 0) => write!(f, "{abs}")?,
                    (false, _) => write!(f, "{abs}*")?,
                }
                match t.hbar {
                    0 => {}
                    1 => write!(f, "hbar")?,
                    k => write!(f, "hbar^{k}")?,
                }
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            t.fmt_with(f, name)?;
            match t.hbar {
                0 => {}
                1 => write!(f, "*hbar")?,
                k => write!(f, "*hbar^{k}")?,
            }
        }
        Ok(())
    }

    pub fn display_with<'a, F>(&'a self, name: F) -> impl fmt::Display + 'a
    where
        F: Fn(VarId) -> String + 'a,
    {
        struct Show<'a, F>(&'a ESum, F);
        impl<F: Fn(VarId) -> String> fmt::Display for Show<'_, F> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, &self.1)
            }
        }
        Show(self, name)
    }
}

impl From<Vec<ESymbol>> for ESum {
    fn from(terms: Vec<ESymbol>) -> Self {
        let mut s = ESum::new();
        for t in terms {
            s.push(t);
        }
        s
    }
}

impl From<ESymbol> for ESum {
    fn from(t: ESymbol) -> Self {
        ESum::from(vec![t])
    }
}

impl fmt::Display for ESum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|v: VarId| v.to_string())
    }
}
