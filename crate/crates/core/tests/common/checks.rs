#![allow(dead_code)]

use multisym::multisym::{classical_product, expand_vaccarino, staircase, symmetrize, MultiIndex};
use multisym::polyalg::{HbarSeries, Polynomial};
use multisym::weylstar::{commutator, poisson_bracket, quantum_product, star, PhaseContext, Sign};

use super::{factorial, int, invariant_by_all_perms, star_oracle, tuple, vaccarino_bruteforce};

pub type Check = Result<(), String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// The classical product expands to the product of the brute-force
/// expansions, and the result is invariant.
pub fn classical_matches_oracle(p: &[Polynomial], alpha: &[u32], q: &[Polynomial], beta: &[u32], n: u32) -> Check {
    let (pt, qt) = (tuple(p.to_vec()), tuple(q.to_vec()));
    let sum = classical_product(&pt, &MultiIndex::from(alpha.to_vec()), &qt, &MultiIndex::from(beta.to_vec()), n)
        .map_err(err)?;
    let got = sum.expand(n).map_err(err)?;
    let want = vaccarino_bruteforce(p, alpha, n).mul(&vaccarino_bruteforce(q, beta, n));
    ensure(got.same_coeffs(&HbarSeries::from_poly(want.clone(), None)), || {
        format!("classical product {sum} gives {got}, oracle {want}")
    })?;
    ensure(invariant_by_all_perms(&want, n), || format!("{want} is not invariant"))
}

/// The quantum product expands to the star product of the brute-force
/// expansions, its ħ⁰ slice is the classical product, and every ħ-degree is
/// invariant.
pub fn quantum_matches_oracle(p: &[Polynomial], alpha: &[u32], q: &[Polynomial], beta: &[u32], n: u32) -> Check {
    let (pt, qt) = (tuple(p.to_vec()), tuple(q.to_vec()));
    let (a, b) = (MultiIndex::from(alpha.to_vec()), MultiIndex::from(beta.to_vec()));
    let ctx = PhaseContext::new(n, Sign::Plus);
    let sum = quantum_product(&pt, &a, &qt, &b, &ctx, None).map_err(err)?;
    let got = sum.expand(n).map_err(err)?;
    let want = star_oracle(&vaccarino_bruteforce(p, alpha, n), &vaccarino_bruteforce(q, beta, n), n);
    ensure(got.same_coeffs(&want), || format!("quantum product {sum} gives {got}, oracle {want}"))?;

    let slice: multisym::multisym::ESum = sum.at_hbar(0).cloned().collect::<Vec<_>>().into();
    let classical = classical_product(&pt, &a, &qt, &b, n).map_err(err)?;
    ensure(slice.expand_eq(&classical, n).map_err(err)?, || {
        format!("ħ⁰ slice {slice} differs from classical product {classical}")
    })?;
    for (k, c) in got.coeffs() {
        ensure(invariant_by_all_perms(c, n), || format!("ħ^{k} coefficient {c} is not invariant"))?;
    }
    Ok(())
}

pub fn star_associative(f: &Polynomial, g: &Polynomial, h: &Polynomial) -> Check {
    let (f, g, h) = (
        HbarSeries::from_poly(f.clone(), None),
        HbarSeries::from_poly(g.clone(), None),
        HbarSeries::from_poly(h.clone(), None),
    );
    let left = star(&star(&f, &g, None).map_err(err)?, &h, None).map_err(err)?;
    let right = star(&f, &star(&g, &h, None).map_err(err)?, None).map_err(err)?;
    ensure(left.same_coeffs(&right), || format!("(f⋆g)⋆h = {left} but f⋆(g⋆h) = {right}"))
}

/// `f⋆g − g⋆f = σ{f, g}ħ + O(ħ²)` with `σ = −1`.
pub fn commutator_is_bracket(f: &Polynomial, g: &Polynomial, n: u32) -> Check {
    let ctx = PhaseContext::commutator_convention(n);
    let (fs, gs) = (HbarSeries::from_poly(f.clone(), None), HbarSeries::from_poly(g.clone(), None));
    let c = commutator(&fs, &gs, &ctx, None).map_err(err)?;
    ensure(c.coeff(0).is_zero(), || format!("commutator has ħ⁰ part {}", c.coeff(0)))?;
    let bracket = poisson_bracket(f, g, &ctx);
    ensure(c.coeff(1) == bracket, || format!("commutator ħ¹ part {} but bracket {bracket}", c.coeff(1)))
}

/// `Σ_σ staircase∘σ = (∏ α_l!)(n − |α|)!·e_α(p)`.
pub fn symmetrization_factor(p: &[Polynomial], alpha: &[u32], n: u32) -> Check {
    let pt = tuple(p.to_vec());
    let a = MultiIndex::from(alpha.to_vec());
    let lhs = symmetrize(&staircase(&pt, &a, n).map_err(err)?, n);
    let factor = alpha.iter().map(|&k| factorial(k)).product::<i64>() * factorial(n - a.weight());
    let rhs = expand_vaccarino(&pt, &a, n).map_err(err)?.scale(&int(factor));
    ensure(lhs == rhs, || format!("symmetrization {lhs} but factor·e_α = {rhs}"))
}
