use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::polynomial::Polynomial;
use crate::Rational;

/// A truncated formal power series in ħ with polynomial coefficients.
///
/// `order = Some(M)` discards every degree `>= M`; `None` keeps everything
/// (the Weyl products are finite, so this is a legitimate mode).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HbarSeries {
    coeffs: BTreeMap<u32, Polynomial>,
    order: Option<u32>,
}

impl HbarSeries {
    pub fn zero(order: Option<u32>) -> Self {
        HbarSeries { coeffs: BTreeMap::new(), order }
    }

    pub fn from_poly(p: Polynomial, order: Option<u32>) -> Self {
        Self::from_coeffs([(0, p)], order)
    }

    pub fn one(order: Option<u32>) -> Self {
        Self::from_poly(Polynomial::one(), order)
    }

    /// The series `ħ`.
    pub fn hbar(order: Option<u32>) -> Self {
        Self::from_coeffs([(1, Polynomial::one())], order)
    }

    pub fn from_coeffs<I: IntoIterator<Item = (u32, Polynomial)>>(coeffs: I, order: Option<u32>) -> Self {
        let mut s = HbarSeries::zero(order);
        for (m, p) in coeffs {
            s.add_at(m, &p);
        }
        s
    }

    pub fn order(&self) -> Option<u32> {
        self.order
    }

    fn keeps(&self, m: u32) -> bool {
        self.order.is_none_or(|o| m < o)
    }

    /// Adds `p·ħ^m` in place (ignored beyond the truncation order).
    pub fn add_at(&mut self, m: u32, p: &Polynomial) {
        if p.is_zero() || !self.keeps(m) {
            return;
        }
        let sum = match self.coeffs.get(&m) {
            Some(q) => q.add(p),
            None => p.clone(),
        };
        if sum.is_zero() {
            self.coeffs.remove(&m);
        } else {
            self.coeffs.insert(m, sum);
        }
    }

    /// Coefficient of `ħ^m`.
    pub fn coeff(&self, m: u32) -> Polynomial {
        self.coeffs.get(&m).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &Polynomial)> {
        self.coeffs.iter().map(|(&m, p)| (m, p))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest ħ-degree with a nonzero coefficient.
    pub fn max_degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Re-truncates at `order` (which may only shrink the kept range).
    pub fn truncate(&self, order: Option<u32>) -> HbarSeries {
        let order = min_order(self.order, order);
        HbarSeries {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&m, _)| order.is_none_or(|o| m < o))
                .map(|(&m, p)| (m, p.clone()))
                .collect(),
            order,
        }
    }

    pub fn with_order(mut self, order: Option<u32>) -> HbarSeries {
        self.order = order;
        if let Some(o) = order {
            self.coeffs.retain(|&m, _| m < o);
        }
        self
    }

    pub fn add(&self, other: &HbarSeries) -> HbarSeries {
        let mut out = HbarSeries { coeffs: BTreeMap::new(), order: min_order(self.order, other.order) };
        for (m, p) in self.coeffs().chain(other.coeffs()) {
            out.add_at(m, p);
        }
        out
    }

    pub fn neg(&self) -> HbarSeries {
        HbarSeries { coeffs: self.coeffs.iter().map(|(&m, p)| (m, p.neg())).collect(), order: self.order }
    }

    pub fn sub(&self, other: &HbarSeries) -> HbarSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> HbarSeries {
        if c.is_zero() {
            return HbarSeries::zero(self.order);
        }
        HbarSeries { coeffs: self.coeffs.iter().map(|(&m, p)| (m, p.scale(c))).collect(), order: self.order }
    }

    /// Multiplies by `ħ^k`.
    pub fn shift(&self, k: u32) -> HbarSeries {
        HbarSeries::from_coeffs(self.coeffs.iter().map(|(&m, p)| (m + k, p.clone())), self.order)
    }

    /// Cauchy product with the commutative polynomial product in each slot.
    pub fn mul(&self, other: &HbarSeries) -> HbarSeries {
        self.cauchy(other, |f, g| f.mul(g))
    }

    /// Cauchy product for an arbitrary bilinear coefficient product that
    /// itself returns a series (used by the star product).
    pub(crate) fn cauchy_series<F>(&self, other: &HbarSeries, order: Option<u32>, mut prod: F) -> HbarSeries
    where
        F: FnMut(&Polynomial, &Polynomial, Option<u32>) -> HbarSeries,
    {
        let order = min_order(min_order(self.order, other.order), order);
        let mut out = HbarSeries::zero(order);
        for (a, f) in self.coeffs() {
            for (b, g) in other.coeffs() {
                let base = a + b;
                if order.is_some_and(|o| base >= o) {
                    continue;
                }
                let inner = prod(f, g, order.map(|o| o - base));
                for (k, p) in inner.coeffs() {
                    out.add_at(base + k, p);
                }
            }
        }
        out
    }

    fn cauchy<F>(&self, other: &HbarSeries, mut prod: F) -> HbarSeries
    where
        F: FnMut(&Polynomial, &Polynomial) -> Polynomial,
    {
        self.cauchy_series(other, None, |f, g, _| HbarSeries::from_poly(prod(f, g), None))
    }

    /// Applies `f` to every coefficient.
    pub fn map<F: FnMut(&Polynomial) -> Polynomial>(&self, mut f: F) -> HbarSeries {
        HbarSeries::from_coeffs(self.coeffs.iter().map(|(&m, p)| (m, f(p))), self.order)
    }

    /// Equality of coefficients, ignoring the recorded truncation order.
    pub fn same_coeffs(&self, other: &HbarSeries) -> bool {
        self.coeffs == other.coeffs
    }
}

/// The tighter of two truncation orders.
pub fn min_order(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl fmt::Display for HbarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, p)) in self.coeffs.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            match m {
                0 => write!(f, "({p})")?,
                1 => write!(f, "({p})*hbar")?,
                _ => write!(f, "({p})*hbar^{m}")?,
            }
        }
        Ok(())
    }
}
