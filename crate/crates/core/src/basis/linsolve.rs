//! Fraction-free (Bareiss) elimination for exact rank and solve.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::Rational;

/// Outcome of an exact solve of `A·c = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solve {
    pub rank: usize,
    /// One solution (free unknowns set to zero), or `None` if inconsistent.
    pub solution: Option<Vec<Rational>>,
}

/// Scales a rational row to integers by the lcm of its denominators.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
}

/// Reduces `m` in place to row echelon form; returns the pivot columns.
/// Every division is exact.
fn bareiss(m: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..m[i].len() {
                let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "fraction-free step must divide exactly");
                m[i][j] = q;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of the matrix whose columns are `columns` (all of equal length).
pub fn rank(columns: &[Vec<Rational>]) -> usize {
    let Some(first) = columns.first() else {
        return 0;
    };
    let rows: Vec<Vec<Rational>> = (0..first.len()).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    bareiss(&mut m, columns.len()).len()
}

/// Solves `Σ_j c_j·columns[j] = rhs` exactly.
pub fn solve(columns: &[Vec<Rational>], rhs: &[Rational]) -> Solve {
    let ncols = columns.len();
    let mut m: Vec<Vec<BigInt>> = rhs
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(b.clone());
            integer_row(&row)
        })
        .collect();
    let pivots = bareiss(&mut m, ncols);
    let rank = pivots.len();
    if m[rank..].iter().any(|row| !row[ncols].is_zero()) {
        return Solve { rank, solution: None };
    }
    let mut x = vec![Rational::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate().rev() {
        let mut acc = Rational::from_integer(m[r][ncols].clone());
        for (j, xj) in x.iter().enumerate().skip(c + 1) {
            if !m[r][j].is_zero() {
                acc -= Rational::from_integer(m[r][j].clone()) * xj;
            }
        }
        x[c] = acc / Rational::from_integer(m[r][c].clone());
    }
    Solve { rank, solution: Some(x) }
}
