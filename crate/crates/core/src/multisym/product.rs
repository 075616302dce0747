use std::collections::HashMap;

use itertools::Itertools;
use num_traits::{One, Pow};

use super::types::{check_weight, ESum, ESymbol, MultiIndex, PolyTuple};
use crate::error::{Error, Result};
use crate::margins::{self, MarginMatrix};
use crate::polyalg::Polynomial;
use crate::Rational;

/// Result of rewriting `e_α(p)` over the monomials of the entries of `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialReduction {
    /// `(m₁₁, …, m_{1k₁}, …, m_{a k_a})`: the monomials of each `p_l` in
    /// canonical term order, concatenated.
    pub monomials: PolyTuple,
    /// All `(β, c^β)` with `r(β) = α`, so that `e_α(p) = Σ c^β·e_β(m)`.
    pub pairs: Vec<(MultiIndex, Rational)>,
}

impl MonomialReduction {
    pub fn to_esum(&self) -> Result<ESum> {
        let mut out = ESum::new();
        for (beta, c) in &self.pairs {
            out.push(ESymbol::new(beta.clone(), self.monomials.to_vec(), c.clone(), 0)?);
        }
        Ok(out)
    }
}

/// Expresses `e_α(p)` through Vaccarino functions of monomials.
pub fn monomial_reduction(p: &PolyTuple, alpha: &MultiIndex, n: u32) -> Result<MonomialReduction> {
    if p.len() != alpha.len() {
        return Err(Error::ArityMismatch { index: alpha.len(), args: p.len() });
    }
    alpha.check_weight(n)?;
    let mut monomials = Vec::new();
    let mut coeffs = Vec::new();
    for pl in p.iter() {
        for (m, c) in pl.terms() {
            monomials.push(Polynomial::monomial(m.clone()));
            coeffs.push(c.clone());
        }
    }
    let per_entry: Vec<Vec<Vec<u32>>> =
        p.iter().zip(alpha.iter()).map(|(pl, &al)| compositions(al, pl.len())).collect();
    let mut pairs = Vec::new();
    for choice in per_entry.iter().multi_cartesian_product_or_unit() {
        let beta: Vec<u32> = choice.into_iter().flatten().collect();
        let c = beta.iter().zip(&coeffs).fold(Rational::one(), |acc, (&b, c)| acc * Pow::pow(c, b));
        pairs.push((MultiIndex::new(beta), c));
    }
    Ok(MonomialReduction { monomials: PolyTuple::new(monomials)?, pairs })
}

/// `multi_cartesian_product` that yields one empty tuple for zero factors.
trait CartesianOrUnit<'a> {
    fn multi_cartesian_product_or_unit(self) -> Box<dyn Iterator<Item = Vec<Vec<u32>>> + 'a>;
}

impl<'a> CartesianOrUnit<'a> for std::slice::Iter<'a, Vec<Vec<u32>>> {
    fn multi_cartesian_product_or_unit(self) -> Box<dyn Iterator<Item = Vec<Vec<u32>>> + 'a> {
        if self.len() == 0 {
            return Box::new(std::iter::once(Vec::new()));
        }
        Box::new(self.map(|v| v.iter().cloned()).multi_cartesian_product())
    }
}

/// Weak compositions of `total` into `parts` parts, lexicographically
/// descending in the first part.
pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The argument tuple `(p, q, pq)`: `p₁…p_a, q₁…q_b, p₁q₁…p₁q_b, …, p_aq_b`.
pub fn product_arguments(p: &PolyTuple, q: &PolyTuple) -> Vec<Polynomial> {
    let mut args: Vec<Polynomial> = p.iter().chain(q.iter()).cloned().collect();
    for pl in p.iter() {
        for qr in q.iter() {
            args.push(pl.mul(qr));
        }
    }
    args
}

/// The index of `e_γ(p, q, pq)` matching [`product_arguments`].
pub fn margin_index(g: &MarginMatrix) -> MultiIndex {
    let (a, b) = (g.a(), g.b());
    let mut idx: Vec<u32> = (1..=a).map(|l| g.get(l, 0)).collect();
    idx.extend((1..=b).map(|r| g.get(0, r)));
    for l in 1..=a {
        idx.extend((1..=b).map(|r| g.get(l, r)));
    }
    MultiIndex::new(idx)
}

/// `e_α(p)·e_β(q) = Σ_{γ ∈ L(α,β,n)} e_γ(p, q, pq)`.
pub fn classical_product(p: &PolyTuple, alpha: &MultiIndex, q: &PolyTuple, beta: &MultiIndex, n: u32) -> Result<ESum> {
    if p.len() != alpha.len() {
        return Err(Error::ArityMismatch { index: alpha.len(), args: p.len() });
    }
    if q.len() != beta.len() {
        return Err(Error::ArityMismatch { index: beta.len(), args: q.len() });
    }
    alpha.check_weight(n)?;
    beta.check_weight(n)?;
    let args = product_arguments(p, q);
    let mut out = ESum::new();
    for g in margins::enumerate_l(alpha, beta, n) {
        out.push(ESymbol::plain(margin_index(&g), args.clone())?);
    }
    Ok(out)
}

/// Number of 0/1 cubes `A_{ijl}` (`i` over the factors, `j` over points,
/// `l` over coordinates) with `Σ_i A_{ijl} = a_{jl}`, `Σ_l A_{ijl} <= 1` and
/// `Σ_j A_{ijl} = (α_i)_l`: the coefficient of `x^a` in `∏_i e_{α_i}`.
pub fn elementary_product_count(alphas: &[Vec<u32>], a: &[Vec<u32>]) -> Result<u128> {
    let n = a.len() as u32;
    let d = match (alphas.first(), a.first()) {
        (Some(al), _) => al.len(),
        (None, Some(row)) => row.len(),
        (None, None) => 0,
    };
    for al in alphas {
        if al.len() != d {
            return Err(Error::DimensionMismatch(format!("index {al:?} does not have length {d}")));
        }
        check_weight(al, n)?;
    }
    for row in a {
        if row.len() != d {
            return Err(Error::DimensionMismatch(format!("exponent row {row:?} does not have length {d}")));
        }
    }
    let total_alpha: u32 = alphas.iter().flatten().sum();
    let total_a: u32 = a.iter().flatten().sum();
    if total_alpha != total_a {
        return Ok(0);
    }
    let start: Vec<u32> = alphas.iter().flatten().copied().collect();
    let mut layer: HashMap<Vec<u32>, u128> = HashMap::from([(start, 1)]);
    for row in a {
        let mut next: HashMap<Vec<u32>, u128> = HashMap::new();
        for (rem, count) in &layer {
            let mut need = row.clone();
            let mut rem = rem.clone();
            assign_point(0, alphas.len(), d, &mut need, &mut rem, &mut |r| {
                *next.entry(r.to_vec()).or_insert(0) += count;
            });
        }
        layer = next;
    }
    Ok(layer.into_iter().filter(|(r, _)| r.iter().all(|&v| v == 0)).map(|(_, c)| c).sum())
}

/// Chooses, for factor `i` onwards, at most one coordinate per factor so
/// that coordinate `l` is chosen exactly `need[l]` times.
fn assign_point<F: FnMut(&[u32])>(i: usize, m: usize, d: usize, need: &mut [u32], rem: &mut [u32], emit: &mut F) {
    let outstanding: u32 = need.iter().sum();
    if outstanding as usize > m - i {
        return;
    }
    if i == m {
        emit(rem);
        return;
    }
    assign_point(i + 1, m, d, need, rem, emit);
    for l in 0..d {
        let slot = i * d + l;
        if need[l] > 0 && rem[slot] > 0 {
            need[l] -= 1;
            rem[slot] -= 1;
            assign_point(i + 1, m, d, need, rem, emit);
            need[l] += 1;
            rem[slot] += 1;
        }
    }
}
