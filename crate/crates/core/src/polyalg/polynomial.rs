use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::{Monomial, VarId};
use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::Rational;

/// A multivariate polynomial with exact rational coefficients.
///
/// Terms are kept sorted in descending graded-lex order with no zero
/// coefficients and no repeated monomials, so derived equality is semantic
/// equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(v: VarId) -> Self {
        Self::term(Monomial::var(v), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Rational::one())
    }

    /// Collects arbitrary terms into canonical form.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            accumulate(&mut acc, m, c);
        }
        Self::from_map(acc)
    }

    fn from_map(acc: BTreeMap<Monomial, Rational>) -> Self {
        Polynomial { terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The constant coefficient if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.iter().find(|(m, _)| m.is_one()).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Largest exponent of `v` over all terms.
    pub fn degree_in(&self, v: VarId) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
    }

    /// Sorted set of variables that occur.
    pub fn variables(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self.terms.iter().flat_map(|(m, _)| m.vars()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn is_abstract(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.vars().all(|v| !v.is_point()))
    }

    pub fn is_point(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.vars().all(|v| v.is_point()))
    }

    pub fn max_point_index(&self) -> u32 {
        self.terms.iter().flat_map(|(m, _)| m.vars().filter_map(|v| v.point_index())).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        // Both term lists are sorted descending; merge.
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Polynomial { terms: out }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                accumulate(&mut acc, ma.mul(mb), ca * cb);
            }
        }
        Self::from_map(acc)
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        // Multiplying by a monomial preserves the term order.
        Polynomial { terms: self.terms.iter().map(|(t, k)| (t.mul(m), k * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = Polynomial::mul(&base, &base);
            }
        }
        result
    }

    pub fn partial_derivative(&self, v: VarId) -> Polynomial {
        Polynomial::from_terms(
            self.terms
                .iter()
                .filter_map(|(m, c)| m.derive(v).map(|(dm, e)| (dm, c * Rational::from_integer(BigInt::from(e))))),
        )
    }

    /// Renames variables; the renaming need not be injective.
    pub fn map_vars<F: FnMut(VarId) -> VarId>(&self, mut f: F) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.map_vars(&mut f), c.clone())))
    }

    /// `q(i)`: replaces every abstract `y_j` by the point variable `x_{ij}`.
    pub fn substitute_point(&self, i: u32) -> Result<Polynomial> {
        if let Some(v) = self.variables().into_iter().find(VarId::is_point) {
            return Err(Error::PointVariable(v.to_string()));
        }
        Ok(self.substitute_point_unchecked(i))
    }

    pub(crate) fn substitute_point_unchecked(&self, i: u32) -> Polynomial {
        // Abstract -> point of a fixed index is order preserving.
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    (
                        m.map_vars(|v| match v {
                            VarId::Abstract(j) => VarId::point(i, j),
                            other => other,
                        }),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Replaces every `x_{ij}` by `x_{σ(i)j}`.
    pub fn apply_permutation(&self, sigma: &Permutation) -> Polynomial {
        self.map_vars(|v| match v {
            VarId::Point { point, coord } => VarId::point(sigma.apply(point), coord),
            other => other,
        })
    }

    /// Writes the polynomial with a custom variable naming.
    pub fn fmt_with<F>(&self, f: &mut fmt::Formatter<'_>, name: &F) -> fmt::Result
    where
        F: Fn(VarId) -> String,
    {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c < &Rational::zero();
            let abs = if negative { -c } else { c.clone() };
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                m.fmt_with(f, name)?;
            }
        }
        Ok(())
    }

    pub fn display_with<'a, F>(&'a self, name: F) -> impl fmt::Display + 'a
    where
        F: Fn(VarId) -> String + 'a,
    {
        struct Show<'a, F>(&'a Polynomial, F);
        impl<F: Fn(VarId) -> String> fmt::Display for Show<'_, F> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, &self.1)
            }
        }
        Show(self, name)
    }
}

fn accumulate(acc: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|v: VarId| v.to_string())
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial::monomial(m)
    }
}

impl From<VarId> for Polynomial {
    fn from(v: VarId) -> Self {
        Polynomial::var(v)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                Polynomial::$method(self, rhs)
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                Polynomial::$method(&self, &rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                Polynomial::$method(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(&self)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        Polynomial::from_terms(iter.flat_map(|p| p.terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32, j: u32) -> Polynomial {
        Polynomial::var(VarId::point(i, j))
    }
    fn y(j: u32) -> Polynomial {
        Polynomial::var(VarId::Abstract(j))
    }
    fn int(c: i64) -> Polynomial {
        Polynomial::from_int(c)
    }

    #[test]
    fn add_examples() {
        assert!((&x(1, 1) + &(-x(1, 1))).is_zero());
        let m = &x(1, 1) * &x(1, 2);
        assert_eq!(&m + &m, &int(2) * &m);
        assert_eq!(&(&y(1) + &y(2)) + &y(2), &y(1) + &(&int(2) * &y(2)));
    }

    #[test]
    fn mul_examples() {
        let a = &y(1) + &y(2);
        let b = &y(1) - &y(2);
        assert_eq!(&a * &b, &y(1).pow(2) - &y(2).pow(2));
        assert_eq!(&a * &Polynomial::one(), a);
        let s = &x(1, 1) + &x(2, 1);
        let expect = x(1, 1).pow(2) + &int(2) * &(&x(1, 1) * &x(2, 1)) + x(2, 1).pow(2);
        assert_eq!(&s * &s, expect);
    }

    #[test]
    fn substitute_examples() {
        let q = &(&y(1) * &y(2)) * &y(3);
        assert_eq!(q.substitute_point(1).unwrap(), &(&x(1, 1) * &x(1, 2)) * &x(1, 3));
        assert_eq!(q.substitute_point(2).unwrap(), &(&x(2, 1) * &x(2, 2)) * &x(2, 3));
        assert_eq!(Polynomial::one().substitute_point(5).unwrap(), Polynomial::one());
        assert!(matches!(x(1, 1).substitute_point(1), Err(Error::PointVariable(_))));
    }

    #[test]
    fn derivative_examples() {
        let f = &x(1, 1).pow(2) * &x(1, 2);
        assert_eq!(f.partial_derivative(VarId::point(1, 1)), &int(2) * &(&x(1, 1) * &x(1, 2)));
        assert!(x(1, 1).partial_derivative(VarId::point(2, 1)).is_zero());
        let g = &(&y(1) * &y(2)) + &y(1);
        assert_eq!(g.partial_derivative(VarId::Abstract(1)), &y(2) + &int(1));
    }

    #[test]
    fn permutation_examples() {
        let f = &x(1, 1) * &x(2, 2);
        let swap = Permutation::new(vec![2, 1]).unwrap();
        assert_eq!(f.apply_permutation(&swap), &x(2, 1) * &x(1, 2));
        assert_eq!(f.apply_permutation(&Permutation::identity(2)), f);
        let sym = &x(1, 1) + &x(2, 1);
        assert_eq!(sym.apply_permutation(&swap), sym);
    }

    #[test]
    fn display() {
        let p = &(&y(1).pow(2) * &int(3)) - &y(2) + int(1);
        assert_eq!(p.to_string(), "3*y1^2 - y2 + 1");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!((-y(1)).to_string(), "-y1");
    }

    #[test]
    fn terms_sorted_descending() {
        let p = &(&y(2) + &y(1).pow(2)) + &(&y(1) * &y(2));
        let ms: Vec<_> = p.terms().iter().map(|(m, _)| m.clone()).collect();
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
    }
}
