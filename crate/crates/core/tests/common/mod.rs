#![allow(dead_code)]

pub mod checks;

use multisym::multisym::PolyTuple;
use multisym::polyalg::{HbarSeries, Monomial, Polynomial, VarId};
use multisym::weylstar::{xi, yi, X, Y};
use multisym::Rational;
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ab(j: u32) -> Polynomial {
    Polynomial::var(VarId::Abstract(j))
}

pub fn pt(i: u32, j: u32) -> Polynomial {
    Polynomial::var(VarId::Point { point: i, coord: j })
}

pub fn xy(c: u32, d: u32) -> Polynomial {
    Polynomial::monomial(Monomial::from_pairs([(X, c), (Y, d)]))
}

pub fn tuple(v: Vec<Polynomial>) -> PolyTuple {
    PolyTuple::new(v).unwrap()
}

/// `e_α(p)` by summing over every labelling of the points `1..=n` with
/// `0..=a`, where label `l > 0` occurs exactly `α_l` times.
pub fn vaccarino_bruteforce(p: &[Polynomial], alpha: &[u32], n: u32) -> Polynomial {
    let a = alpha.len() as u32;
    let mut labels = vec![0u32; n as usize];
    let mut out = Polynomial::zero();
    loop {
        let mut counts = vec![0u32; a as usize];
        for &l in &labels {
            if l > 0 {
                counts[(l - 1) as usize] += 1;
            }
        }
        if counts == alpha {
            let mut term = Polynomial::one();
            for (i, &l) in labels.iter().enumerate() {
                if l > 0 {
                    term = term.mul(&at_point(&p[(l - 1) as usize], i as u32 + 1));
                }
            }
            out = out.add(&term);
        }
        let mut pos = 0;
        loop {
            if pos == labels.len() {
                return out;
            }
            labels[pos] += 1;
            if labels[pos] <= a {
                break;
            }
            labels[pos] = 0;
            pos += 1;
        }
    }
}

/// `q(i)`, by hand.
pub fn at_point(q: &Polynomial, i: u32) -> Polynomial {
    q.map_vars(|v| match v {
        VarId::Abstract(j) => VarId::Point { point: i, coord: j },
        other => other,
    })
}

fn nth_derivative(f: &Polynomial, v: VarId, k: u32) -> Polynomial {
    (0..k).fold(f.clone(), |acc, _| acc.partial_derivative(v))
}

/// `F⋆G = Σ_K ħ^{|K|}/K! · ∂_y^K F · ∂_x^K G` over multi-indices `K ∈ ℕ^n`.
pub fn star_oracle(f: &Polynomial, g: &Polynomial, n: u32) -> HbarSeries {
    let mut out = HbarSeries::zero(None);
    let mut stack: Vec<(u32, Polynomial, Polynomial, Rational, u32)> = vec![(1, f.clone(), g.clone(), int(1), 0)];
    while let Some((i, fk, gk, c, total)) = stack.pop() {
        if i > n {
            out.add_at(total, &fk.mul(&gk).scale(&c));
            continue;
        }
        let mut k = 0u32;
        let mut fact = int(1);
        loop {
            let df = nth_derivative(&fk, yi(i), k);
            let dg = nth_derivative(&gk, xi(i), k);
            if df.is_zero() || dg.is_zero() {
                break;
            }
            stack.push((i + 1, df, dg, &c / &fact, total + k));
            k += 1;
            fact *= int(k as i64);
        }
    }
    out
}

/// Full expansion of `f` under every permutation of the points.
pub fn invariant_by_all_perms(f: &Polynomial, n: u32) -> bool {
    multisym::polyalg::Permutation::all(n).all(|s| &f.apply_permutation(&s) == f)
}

pub fn factorial(k: u32) -> i64 {
    (1..=k as i64).product()
}

/// A nonzero monomial in `y1..yd` of degree `1..=max_deg` times a small
/// nonzero coefficient.
pub fn general_entry(d: u32, max_deg: u32) -> impl Strategy<Value = Polynomial> + Clone {
    (proptest::collection::vec(0..=max_deg, d as usize), -2i64..=2, 0..d).prop_map(move |(mut e, c, bump)| {
        while e.iter().sum::<u32>() > max_deg {
            let i = e.iter().position(|&k| k > 0).unwrap();
            e[i] -= 1;
        }
        if e.iter().all(|&k| k == 0) {
            e[bump as usize] = 1;
        }
        let m = Monomial::from_pairs(e.iter().enumerate().map(|(j, &k)| (VarId::Abstract(j as u32 + 1), k)));
        let c = if c == 0 { 1 } else { c };
        Polynomial::term(m, int(c))
    })
}

/// A nonzero phase polynomial in `x, y` with one or two monomials of degree
/// at most `max_deg`.
pub fn phase_entry(max_deg: u32) -> impl Strategy<Value = Polynomial> + Clone {
    let mono = (0..=max_deg, 0..=max_deg, -2i64..=2).prop_map(move |(c, d, k)| {
        let (c, d) = if c + d > max_deg { (c.min(max_deg), max_deg - c.min(max_deg)) } else { (c, d) };
        let k = if k == 0 { 1 } else { k };
        xy(c, d).scale(&int(k))
    });
    proptest::collection::vec(mono, 1..=2).prop_map(|ms| {
        let s: Polynomial = ms.into_iter().sum();
        if s.is_zero() {
            xy(1, 0)
        } else {
            s
        }
    })
}

/// A tuple of `1..=2` entries with a composition of weight at most `n`.
pub fn indexed_tuple<S: Strategy<Value = Polynomial> + Clone + 'static>(
    entry: S,
    n: u32,
) -> impl Strategy<Value = (Vec<Polynomial>, Vec<u32>)> {
    (1usize..=2).prop_flat_map(move |a| {
        (proptest::collection::vec(entry.clone(), a), proptest::collection::vec(0..=n, a)).prop_map(
            move |(p, mut alpha)| {
                while alpha.iter().sum::<u32>() > n {
                    let i = alpha.iter().position(|&k| k > 0).unwrap();
                    alpha[i] -= 1;
                }
                (p, alpha)
            },
        )
    })
}

/// Every vector of length `len` with entry sum at most `total`, in
/// ascending lexicographic order.
pub fn bounded_vectors(len: usize, total: u32) -> Vec<Vec<u32>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in bounded_vectors(len - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
