mod common;

use common::checks::{commutator_is_bracket, quantum_matches_oracle, star_associative};
use common::{at_point, indexed_tuple, int, phase_entry, star_oracle, tuple, xy};
use multisym::multisym::{classical_product, MultiIndex};
use multisym::polyalg::{HbarSeries, Permutation, Polynomial};
use multisym::weylstar::{quantum_product, quantum_product_with, star, star_poly, BilinearFamily, PhaseContext, Sign};
use proptest::prelude::*;

/// Sum of phase monomials placed at random points of `1..=n`.
fn point_poly(n: u32) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((phase_entry(2), 1..=n), 1..=2)
        .prop_map(|parts| parts.iter().map(|(p, i)| at_point(p, *i)).sum())
}

/// Only the commutative term.
struct Commutative;

impl BilinearFamily for Commutative {
    fn apply(&self, k: u32, f: &Polynomial, g: &Polynomial) -> Polynomial {
        if k == 0 {
            f.mul(g)
        } else {
            Polynomial::zero()
        }
    }

    fn max_order(&self, _: &Polynomial, _: &Polynomial) -> u32 {
        0
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn star_matches_derivative_oracle(f in point_poly(2), g in point_poly(2)) {
        let got = star_poly(&f, &g, None).unwrap();
        prop_assert!(got.same_coeffs(&star_oracle(&f, &g, 2)));
    }

    #[test]
    fn associativity(f in point_poly(2), g in point_poly(2), h in point_poly(2)) {
        if let Err(e) = star_associative(&f, &g, &h) {
            return Err(TestCaseError::fail(e));
        }
    }

    #[test]
    fn classical_limit(f in point_poly(3), g in point_poly(3)) {
        prop_assert_eq!(star_poly(&f, &g, None).unwrap().coeff(0), f.mul(&g));
    }

    #[test]
    fn commutator_first_order(f in point_poly(3), g in point_poly(3)) {
        if let Err(e) = commutator_is_bracket(&f, &g, 3) {
            return Err(TestCaseError::fail(e));
        }
    }

    #[test]
    fn truncated_star_is_prefix(f in point_poly(2), g in point_poly(2), order in 0u32..=4) {
        let full = star_poly(&f, &g, None).unwrap();
        let cut = star_poly(&f, &g, Some(order)).unwrap();
        prop_assert!(cut.same_coeffs(&full.truncate(Some(order))));
    }

    #[test]
    fn quantum_product_oracle(
        (p, alpha) in indexed_tuple(phase_entry(3), 3),
        (q, beta) in indexed_tuple(phase_entry(3), 3),
        n in 1u32..=3,
    ) {
        prop_assume!(alpha.iter().sum::<u32>() <= n && beta.iter().sum::<u32>() <= n);
        if let Err(e) = quantum_matches_oracle(&p, &alpha, &q, &beta, n) {
            return Err(TestCaseError::fail(e));
        }
    }

    #[test]
    fn quantum_output_is_equivariant(
        (p, alpha) in indexed_tuple(phase_entry(2), 2),
        (q, beta) in indexed_tuple(phase_entry(2), 2),
    ) {
        let n = 2;
        prop_assume!(alpha.iter().sum::<u32>() <= n && beta.iter().sum::<u32>() <= n);
        let ctx = PhaseContext::new(n, Sign::Plus);
        let (pt, qt) = (tuple(p), tuple(q));
        let (a, b) = (MultiIndex::from(alpha), MultiIndex::from(beta));
        let sum = quantum_product(&pt, &a, &qt, &b, &ctx, None).unwrap();
        let series = sum.expand(n).unwrap();
        let swap = Permutation::transposition(n, 1, 2).unwrap();
        prop_assert!(series.same_coeffs(&series.map(|c| c.apply_permutation(&swap))));
        // Each ħ costs one x and one y.
        let top = multisym::multisym::expand_vaccarino(&pt, &a, n).unwrap().total_degree()
            + multisym::multisym::expand_vaccarino(&qt, &b, n).unwrap().total_degree();
        for (m, c) in series.coeffs() {
            prop_assert!(c.total_degree() + 2 * m <= top);
        }
    }

    #[test]
    fn commutative_family_gives_classical_product(
        (p, alpha) in indexed_tuple(phase_entry(2), 2),
        (q, beta) in indexed_tuple(phase_entry(2), 2),
        n in 1u32..=2,
    ) {
        prop_assume!(alpha.iter().sum::<u32>() <= n && beta.iter().sum::<u32>() <= n);
        let (pt, qt) = (tuple(p), tuple(q));
        let (a, b) = (MultiIndex::from(alpha), MultiIndex::from(beta));
        let ctx = PhaseContext::new(n, Sign::Plus);
        let sum = quantum_product_with(&Commutative, &pt, &a, &qt, &b, &ctx, None).unwrap();
        prop_assert!(sum.terms().iter().all(|s| s.hbar() == 0));
        let classical = classical_product(&pt, &a, &qt, &b, n).unwrap();
        prop_assert!(sum.expand_eq(&classical, n).unwrap());
    }
}

#[test]
fn truncation_drops_high_slices() {
    let ctx = PhaseContext::new(3, Sign::Plus);
    let p = tuple(vec![xy(0, 1)]);
    let q = tuple(vec![xy(1, 0)]);
    let full = quantum_product(&p, &MultiIndex::from([2]), &q, &MultiIndex::from([3]), &ctx, None).unwrap();
    let cut = quantum_product(&p, &MultiIndex::from([2]), &q, &MultiIndex::from([3]), &ctx, Some(2)).unwrap();
    assert_eq!(full.len(), 3);
    assert_eq!(cut.len(), 2);
    assert!(cut.terms().iter().all(|s| s.hbar() < 2));
    assert!(quantum_product(&p, &MultiIndex::from([2]), &q, &MultiIndex::from([3]), &ctx, Some(0)).unwrap().is_empty());
}

#[test]
fn star_on_series_uses_hbar_bookkeeping() {
    // (ħ·y₁) ⋆ x₁ = ħ·x₁y₁ + ħ².
    let f = HbarSeries::from_coeffs([(1, at_point(&xy(0, 1), 1))], None);
    let g = HbarSeries::from_poly(at_point(&xy(1, 0), 1), None);
    let got = star(&f, &g, None).unwrap();
    assert_eq!(got.coeff(0), Polynomial::zero());
    assert_eq!(got.coeff(1), at_point(&xy(1, 1), 1));
    assert_eq!(got.coeff(2), Polynomial::constant(int(1)));
}
