use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::types::{check_weight, MultiIndex, PolyTuple};
use crate::error::{Error, Result};
use crate::polyalg::{Monomial, Permutation, Polynomial, VarId};
use crate::Rational;

/// Coefficient of `t^α` in `∏_{i=1}^{n} (1 + Σ_l p_l(i) t_l)`.
///
/// Runs a dynamic program over the points whose state is the vector of
/// slots already filled for each `l`; each state carries the sum over all
/// partial disjoint-subset choices reaching it.
pub(crate) fn vaccarino(args: &[Polynomial], alpha: &[u32], n: u32) -> Result<Polynomial> {
    if args.len() != alpha.len() {
        return Err(Error::ArityMismatch { index: alpha.len(), args: args.len() });
    }
    check_weight(alpha, n)?;
    for p in args {
        if let Some(v) = p.variables().into_iter().find(VarId::is_point) {
            return Err(Error::PointVariable(v.to_string()));
        }
    }
    let need: u32 = alpha.iter().sum();
    let mut states: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
    states.insert(vec![0; alpha.len()], Polynomial::one());
    for i in 1..=n {
        let at_point: Vec<Polynomial> = args.iter().map(|p| p.substitute_point_unchecked(i)).collect();
        let points_left = n - i;
        let mut next: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
        for (used, poly) in &states {
            let filled: u32 = used.iter().sum();
            // Leave point i unused.
            if need - filled <= points_left {
                merge(&mut next, used.clone(), poly.clone());
            }
            if need - filled > points_left + 1 || filled == need {
                continue;
            }
            for (l, pl) in at_point.iter().enumerate() {
                if used[l] < alpha[l] {
                    let mut key = used.clone();
                    key[l] += 1;
                    merge(&mut next, key, poly.mul(pl));
                }
            }
        }
        states = next;
    }
    Ok(states.remove(alpha).unwrap_or_default())
}

fn merge(map: &mut BTreeMap<Vec<u32>, Polynomial>, key: Vec<u32>, p: Polynomial) {
    match map.get_mut(&key) {
        Some(q) => *q = q.add(&p),
        None => {
            map.insert(key, p);
        }
    }
}

/// The Vaccarino function `e_α(p)` over `n` points.
pub fn expand_vaccarino(p: &PolyTuple, alpha: &MultiIndex, n: u32) -> Result<Polynomial> {
    vaccarino(p.entries(), alpha, n)
}

/// The elementary multi-symmetric function `e_α` for `α ∈ ℕ^d`, i.e.
/// `e_α(y₁, …, y_d)`.
pub fn expand_elementary(alpha: &[u32], n: u32, d: u32) -> Result<Polynomial> {
    if alpha.len() != d as usize {
        return Err(Error::DimensionMismatch(format!("index of length {} for d = {d}", alpha.len())));
    }
    let coords: Vec<Polynomial> = (1..=d).map(|j| Polynomial::var(VarId::Abstract(j))).collect();
    vaccarino(&coords, alpha, n)
}

/// The homogeneous multi-symmetric function `h_k`: the coefficient of `t^k`
/// in `∏_i (1 − Σ_j x_{ij} t_j)^{-1}`, computed as
/// `Σ_{v₁+⋯+v_n = k} ∏_i multinomial(|v_i|; v_i)·x_i^{v_i}`.
pub fn expand_homogeneous(k: &[u32], n: u32, d: u32) -> Result<Polynomial> {
    if k.len() != d as usize {
        return Err(Error::DimensionMismatch(format!("index of length {} for d = {d}", k.len())));
    }
    let mut states: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
    states.insert(k.to_vec(), Polynomial::one());
    for i in 1..=n {
        let mut next: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
        for (rem, poly) in &states {
            let choices: Vec<Vec<u32>> = if i == n { vec![rem.clone()] } else { boxes_below(rem) };
            for v in choices {
                let mono = Monomial::from_pairs(v.iter().enumerate().map(|(j, &e)| (VarId::point(i, j as u32 + 1), e)));
                let coeff = Rational::from_integer(multinomial(&v));
                let key: Vec<u32> = rem.iter().zip(&v).map(|(r, e)| r - e).collect();
                merge(&mut next, key, poly.mul_monomial(&mono, &coeff));
            }
        }
        states = next;
    }
    if n == 0 {
        return Ok(if k.iter().all(|&e| e == 0) { Polynomial::one() } else { Polynomial::zero() });
    }
    Ok(states.remove(&vec![0; k.len()]).unwrap_or_default())
}

/// All vectors `v` with `0 <= v <= bound` componentwise, lexicographic.
pub(crate) fn boxes_below(bound: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(bound.len())];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=b).map(move |e| {
                    let mut v = prefix.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    out
}

pub(crate) fn multinomial(parts: &[u32]) -> BigInt {
    let mut result = BigInt::one();
    let mut total = 0u32;
    for &p in parts {
        for j in 1..=p {
            total += 1;
            result = result * BigInt::from(total) / BigInt::from(j);
        }
    }
    result
}

/// The power sum `e₁(m) = m(1) + ⋯ + m(n)` of a non-constant monomial in the
/// abstract variables.
pub fn power_sum(m: &Monomial, n: u32) -> Result<Polynomial> {
    if m.is_one() {
        return Err(Error::ConstantMonomial);
    }
    if let Some(v) = m.vars().find(VarId::is_point) {
        return Err(Error::PointVariable(v.to_string()));
    }
    let q = Polynomial::monomial(m.clone());
    Ok((1..=n).map(|i| q.substitute_point_unchecked(i)).sum())
}

/// `Σ_{σ ∈ S_n} f∘σ` (unnormalized).
pub fn symmetrize(f: &Polynomial, n: u32) -> Polynomial {
    Permutation::all(n).map(|s| f.apply_permutation(&s)).sum()
}

/// Whether `f` is fixed by every permutation of the `n` points.
pub fn is_invariant(f: &Polynomial, n: u32) -> bool {
    Permutation::generators(n).iter().all(|s| &f.apply_permutation(s) == f)
}

/// The staircase product `p₁(1)⋯p₁(α₁)·p₂(α₁+1)⋯p_a(|α|)`, whose
/// symmetrization is `(∏ α_l!)(n − |α|)!·e_α(p)`.
pub fn staircase(p: &PolyTuple, alpha: &MultiIndex, n: u32) -> Result<Polynomial> {
    if p.len() != alpha.len() {
        return Err(Error::ArityMismatch { index: alpha.len(), args: p.len() });
    }
    alpha.check_weight(n)?;
    let mut point = 0;
    let mut out = Polynomial::one();
    for (pl, &count) in p.iter().zip(alpha.iter()) {
        for _ in 0..count {
            point += 1;
            out = out.mul(&pl.substitute_point_unchecked(point));
        }
    }
    Ok(out)
}
