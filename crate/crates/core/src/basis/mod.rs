//! Decomposition of invariant polynomials in the basis `{e_α}` indexed by
//! finitely supported maps `α` from non-constant monomials to multiplicities,
//! and bounded generation certificates.
//!
//! Everything is done blockwise: an invariant polynomial splits by
//! multidegree (the exponent sum of each coordinate over all points), and
//! each block is an exact linear system.

pub mod linsolve;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::multisym::{
    boxes_below, expand_elementary, expand_homogeneous, is_invariant, power_sum, ESymbol, MultiIndex,
};
use crate::polyalg::{HbarSeries, Monomial, Polynomial, VarId};
use crate::Rational;

/// `α: monomials → ℕ` with finite support; `e_α` picks `α(m)` distinct
/// points carrying each monomial `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MonomialIndexedAlpha {
    support: BTreeMap<Monomial, u32>,
}

impl MonomialIndexedAlpha {
    pub fn new<I: IntoIterator<Item = (Monomial, u32)>>(entries: I) -> Result<Self> {
        let mut support = BTreeMap::new();
        for (m, k) in entries {
            if m.is_one() {
                return Err(Error::ConstantMonomial);
            }
            if let Some(v) = m.vars().find(VarId::is_point) {
                return Err(Error::PointVariable(v.to_string()));
            }
            if k > 0 {
                *support.entry(m).or_insert(0) += k;
            }
        }
        Ok(MonomialIndexedAlpha { support })
    }

    /// `|α|`.
    pub fn weight(&self) -> u32 {
        self.support.values().sum()
    }

    pub fn support(&self) -> &BTreeMap<Monomial, u32> {
        &self.support
    }

    pub fn multiplicity(&self, m: &Monomial) -> u32 {
        self.support.get(m).copied().unwrap_or(0)
    }

    /// The symbol `e_α` with monomial arguments in descending term order.
    pub fn to_esymbol(&self) -> ESymbol {
        let (index, args): (Vec<u32>, Vec<Polynomial>) =
            self.support.iter().rev().map(|(m, &k)| (k, Polynomial::monomial(m.clone()))).unzip();
        ESymbol::plain(MultiIndex::new(index), args).expect("index and arguments have equal length")
    }

    pub fn expand(&self, n: u32) -> Result<Polynomial> {
        self.to_esymbol().expand(n)
    }
}

impl fmt::Display for MonomialIndexedAlpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", self.to_esymbol())
    }
}

fn exponent_monomial(e: &[u32]) -> Monomial {
    Monomial::from_pairs(e.iter().enumerate().map(|(j, &k)| (VarId::Abstract(j as u32 + 1), k)))
}

/// Every `α` with `|α| <= n` whose `e_α` has the given multidegree.
pub fn enumerate_alpha(profile: &[u32], n: u32) -> Vec<MonomialIndexedAlpha> {
    let mut monos: Vec<(Vec<u32>, Monomial)> = boxes_below(profile)
        .into_iter()
        .filter(|e| e.iter().any(|&k| k > 0))
        .map(|e| {
            let m = exponent_monomial(&e);
            (e, m)
        })
        .collect();
    monos.sort_by(|a, b| b.1.cmp(&a.1));
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    alpha_search(&monos, 0, profile.to_vec(), n, &mut chosen, &mut out);
    out
}

fn alpha_search(
    monos: &[(Vec<u32>, Monomial)],
    idx: usize,
    remaining: Vec<u32>,
    slots: u32,
    chosen: &mut Vec<(Monomial, u32)>,
    out: &mut Vec<MonomialIndexedAlpha>,
) {
    if remaining.iter().all(|&k| k == 0) {
        out.push(MonomialIndexedAlpha { support: chosen.iter().cloned().collect() });
        return;
    }
    if idx == monos.len() || slots == 0 {
        return;
    }
    let (e, m) = &monos[idx];
    let max_mult = e.iter().zip(&remaining).filter(|(&k, _)| k > 0).map(|(&k, &r)| r / k).min().unwrap_or(0).min(slots);
    for mult in (0..=max_mult).rev() {
        let rest: Vec<u32> = remaining.iter().zip(e).map(|(r, k)| r - mult * k).collect();
        if mult > 0 {
            chosen.push((m.clone(), mult));
        }
        alpha_search(monos, idx + 1, rest, slots - mult, chosen, out);
        if mult > 0 {
            chosen.pop();
        }
    }
}

/// Checks that `f` lives on `n` points with `d` coordinates.
fn check_domain(f: &Polynomial, n: u32, d: u32) -> Result<()> {
    for v in f.variables() {
        if !v.is_point() {
            return Err(Error::AbstractVariable(v.to_string()));
        }
        if !v.in_range(n, d) {
            return Err(Error::VariableOutOfRange { var: v.to_string(), n, d });
        }
    }
    Ok(())
}

/// Splits `f` by multidegree (per-coordinate exponent sums).
fn blocks(f: &Polynomial, d: u32) -> BTreeMap<Vec<u32>, Polynomial> {
    let mut grouped: BTreeMap<Vec<u32>, Vec<(Monomial, Rational)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        let mut profile = vec![0; d as usize];
        for &(v, e) in m.exponents() {
            profile[(v.coord() - 1) as usize] += e;
        }
        grouped.entry(profile).or_default().push((m.clone(), c.clone()));
    }
    grouped.into_iter().map(|(k, t)| (k, Polynomial::from_terms(t))).collect()
}

/// Solves `target = Σ c_j·columns[j]` over the union of monomials.
fn solve_block(columns: &[Polynomial], target: &Polynomial) -> linsolve::Solve {
    let mut rows: Vec<Monomial> = target.terms().iter().map(|(m, _)| m.clone()).collect();
    for c in columns {
        rows.extend(c.terms().iter().map(|(m, _)| m.clone()));
    }
    rows.sort();
    rows.dedup();
    let position: HashMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let dense = |p: &Polynomial| {
        let mut v = vec![Rational::zero(); rows.len()];
        for (m, c) in p.terms() {
            v[position[m]] = c.clone();
        }
        v
    };
    let cols: Vec<Vec<Rational>> = columns.iter().map(dense).collect();
    linsolve::solve(&cols, &dense(target))
}

/// Coefficients of `f` in the basis `{e_α : |α| <= n}`.
pub fn decompose(f: &Polynomial, n: u32, d: u32) -> Result<BTreeMap<MonomialIndexedAlpha, Rational>> {
    check_domain(f, n, d)?;
    if !is_invariant(f, n) {
        return Err(Error::NotInvariant(n));
    }
    let parts: Vec<Result<Vec<(MonomialIndexedAlpha, Rational)>>> = blocks(f, d)
        .into_par_iter()
        .map(|(profile, block)| {
            let alphas = enumerate_alpha(&profile, n);
            let columns = alphas.iter().map(|a| a.expand(n)).collect::<Result<Vec<_>>>()?;
            let s = solve_block(&columns, &block);
            if s.rank < alphas.len() {
                return Err(Error::Dependent(format!("{profile:?}")));
            }
            let sol = s.solution.ok_or_else(|| Error::NoSolution(format!("multidegree {profile:?}")))?;
            Ok(alphas.into_iter().zip(sol).filter(|(_, c)| !c.is_zero()).collect())
        })
        .collect();
    let mut out = BTreeMap::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Degreewise decomposition of an invariant ħ-series.
pub fn decompose_series(
    f: &HbarSeries,
    n: u32,
    d: u32,
) -> Result<BTreeMap<u32, BTreeMap<MonomialIndexedAlpha, Rational>>> {
    f.coeffs().map(|(k, p)| Ok((k, decompose(p, n, d)?))).collect()
}

/// Re-expands a decomposition.
pub fn recompose(coeffs: &BTreeMap<MonomialIndexedAlpha, Rational>, n: u32) -> Result<Polynomial> {
    let mut out = Polynomial::zero();
    for (a, c) in coeffs {
        out = out.add(&a.expand(n)?.scale(c));
    }
    Ok(out)
}

/// Exact rank of the `e_α` expansions of one multidegree block.
pub fn block_rank(profile: &[u32], n: u32) -> Result<(usize, usize)> {
    let alphas = enumerate_alpha(profile, n);
    let columns = alphas.iter().map(|a| a.expand(n)).collect::<Result<Vec<_>>>()?;
    let s = solve_block(&columns, &Polynomial::zero());
    Ok((s.rank, alphas.len()))
}

/// Which family of generators a certificate uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorSet {
    Elementary,
    Homogeneous,
    PowerSums,
}

/// One generator: `e_k`, `h_k` (with `k ∈ ℕ^d`) or `e₁(m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Elementary(Vec<u32>),
    Homogeneous(Vec<u32>),
    PowerSum(Vec<u32>),
}

impl Generator {
    pub fn multidegree(&self) -> &[u32] {
        match self {
            Generator::Elementary(k) | Generator::Homogeneous(k) | Generator::PowerSum(k) => k,
        }
    }

    pub fn expand(&self, n: u32) -> Result<Polynomial> {
        let d = self.multidegree().len() as u32;
        match self {
            Generator::Elementary(k) => expand_elementary(k, n, d),
            Generator::Homogeneous(k) => expand_homogeneous(k, n, d),
            Generator::PowerSum(e) => power_sum(&exponent_monomial(e), n),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |k: &[u32]| k.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        match self {
            Generator::Elementary(k) => write!(f, "e[{}]", list(k)),
            Generator::Homogeneous(k) => write!(f, "h[{}]", list(k)),
            Generator::PowerSum(e) => write!(f, "p({})", exponent_monomial(e)),
        }
    }
}

/// A product of generators with multiplicities.
pub type GeneratorProduct = Vec<(Generator, u32)>;

/// An explicit expression of a polynomial in a generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub terms: Vec<(Rational, GeneratorProduct)>,
}

impl Certificate {
    pub fn expand(&self, n: u32) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        for (c, prod) in &self.terms {
            let mut term = Polynomial::constant(c.clone());
            for (g, k) in prod {
                term = term.mul(&g.expand(n)?.pow(*k));
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, prod)) in self.terms.iter().enumerate() {
            let negative = c < &Rational::zero();
            let abs = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if prod.is_empty() {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            for (j, (g, k)) in prod.iter().enumerate() {
                if j > 0 {
                    write!(f, "*")?;
                }
                write!(f, "{g}")?;
                if *k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// Generators of the given family whose multidegree fits under `profile`.
fn candidate_generators(set: GeneratorSet, profile: &[u32], n: u32) -> Vec<Generator> {
    boxes_below(profile)
        .into_iter()
        .filter(|k| {
            let w: u32 = k.iter().sum();
            w >= 1 && w <= n
        })
        .map(|k| match set {
            GeneratorSet::Elementary => Generator::Elementary(k),
            GeneratorSet::Homogeneous => Generator::Homogeneous(k),
            GeneratorSet::PowerSums => Generator::PowerSum(k),
        })
        .collect()
}

/// All multisets of `gens` whose multidegrees sum to `profile`.
fn products(gens: &[Generator], profile: &[u32]) -> Vec<GeneratorProduct> {
    fn go(gens: &[Generator], idx: usize, rem: Vec<u32>, cur: &mut GeneratorProduct, out: &mut Vec<GeneratorProduct>) {
        if rem.iter().all(|&k| k == 0) {
            out.push(cur.clone());
            return;
        }
        if idx == gens.len() {
            return;
        }
        let e = gens[idx].multidegree();
        let max_mult = e.iter().zip(&rem).filter(|(&k, _)| k > 0).map(|(&k, &r)| r / k).min().unwrap_or(0);
        for mult in (0..=max_mult).rev() {
            let rest: Vec<u32> = rem.iter().zip(e).map(|(r, k)| r - mult * k).collect();
            if mult > 0 {
                cur.push((gens[idx].clone(), mult));
            }
            go(gens, idx + 1, rest, cur, out);
            if mult > 0 {
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(gens, 0, profile.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Writes an invariant `f` as a polynomial in the chosen generators, by an
/// exact solve over all generator products of each multidegree. Free
/// unknowns are set to zero, so the certificate is deterministic.
pub fn verify_generation(f: &Polynomial, set: GeneratorSet, n: u32, d: u32, max_degree: u32) -> Result<Certificate> {
    check_domain(f, n, d)?;
    if f.total_degree() > max_degree {
        return Err(Error::DegreeBound { degree: f.total_degree(), bound: max_degree });
    }
    if !is_invariant(f, n) {
        return Err(Error::NotInvariant(n));
    }
    let mut cache: HashMap<Generator, Polynomial> = HashMap::new();
    let mut terms = Vec::new();
    for (profile, block) in blocks(f, d) {
        let gens = candidate_generators(set, &profile, n);
        for g in &gens {
            if !cache.contains_key(g) {
                cache.insert(g.clone(), g.expand(n)?);
            }
        }
        let prods = products(&gens, &profile);
        let columns: Vec<Polynomial> = prods
            .iter()
            .map(|prod| prod.iter().fold(Polynomial::one(), |acc, (g, k)| acc.mul(&cache[g].pow(*k))))
            .collect();
        let s = solve_block(&columns, &block);
        let sol = s
            .solution
            .ok_or_else(|| Error::NoSolution(format!("{block} is not generated in multidegree {profile:?}")))?;
        terms.extend(prods.into_iter().zip(sol).filter(|(_, c)| !c.is_zero()).map(|(p, c)| (c, p)));
    }
    Ok(Certificate { terms })
}
