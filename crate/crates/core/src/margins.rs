//! Enumeration of the margin-constrained integer arrays that index the
//! classical and quantum products.
//!
//! A [`MarginMatrix`] `γ` is an `(a+1)×(b+1)` array with `γ₀₀ = 0`, row sums
//! `α_l` (rows `1..=a`), column sums `β_r` (columns `1..=b`) and total at
//! most `n`. A [`CubicalMatrix`] adds a third index `k` (the ħ-slice); only
//! cells with `l, r >= 1` may be nonzero for `k >= 1`, and `Σ k·γ_{lrk}` is
//! the ħ-degree `m`.
//!
//! Both enumerators walk the cells in lexicographic `(l, r, k)` order and try
//! values in increasing order, so the output is sorted lexicographically by
//! the flattened entry vector.

use std::fmt;

use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarginMatrix {
    a: usize,
    b: usize,
    entries: Vec<u32>,
}

impl MarginMatrix {
    /// Builds a matrix from its `(a+1)×(b+1)` row-major entries.
    pub fn from_rows(a: usize, b: usize, entries: Vec<u32>) -> Self {
        assert_eq!(entries.len(), (a + 1) * (b + 1));
        MarginMatrix { a, b, entries }
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn get(&self, l: usize, r: usize) -> u32 {
        self.entries[l * (self.b + 1) + r]
    }

    pub fn total(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn row_sum(&self, l: usize) -> u32 {
        (0..=self.b).map(|r| self.get(l, r)).sum()
    }

    pub fn col_sum(&self, r: usize) -> u32 {
        (0..=self.a).map(|l| self.get(l, r)).sum()
    }

    /// Row-major entries without the `(0, 0)` corner.
    pub fn flattened(&self) -> Vec<u32> {
        self.entries[1..].to_vec()
    }

    /// Whether this matrix belongs to `L(α, β, n)`.
    pub fn satisfies(&self, alpha: &[u32], beta: &[u32], n: u32) -> bool {
        alpha.len() == self.a
            && beta.len() == self.b
            && self.get(0, 0) == 0
            && self.total() <= n
            && (1..=self.a).all(|l| self.row_sum(l) == alpha[l - 1])
            && (1..=self.b).all(|r| self.col_sum(r) == beta[r - 1])
    }
}

impl fmt::Display for MarginMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_flat(f, &self.flattened())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubicalMatrix {
    a: usize,
    b: usize,
    k_max: u32,
    /// Values of the admissible cells, in [`cells`] order.
    entries: Vec<u32>,
}

impl CubicalMatrix {
    /// Builds a cubical matrix from the admissible-cell values in
    /// lexicographic `(l, r, k)` order.
    pub fn from_flat(a: usize, b: usize, k_max: u32, entries: Vec<u32>) -> Self {
        assert_eq!(entries.len(), cubical_cells(a, b, k_max).len());
        CubicalMatrix { a, b, k_max, entries }
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn k_max(&self) -> u32 {
        self.k_max
    }

    pub fn get(&self, l: usize, r: usize, k: u32) -> u32 {
        match cell_position(self.a, self.b, self.k_max, l, r, k) {
            Some(i) => self.entries[i],
            None => 0,
        }
    }

    /// Admissible-cell values in lexicographic `(l, r, k)` order.
    pub fn flattened(&self) -> &[u32] {
        &self.entries
    }

    pub fn total(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// `Σ k·γ_{lrk}`.
    pub fn weight(&self) -> u32 {
        cubical_cells(self.a, self.b, self.k_max).iter().zip(&self.entries).map(|(c, &v)| c.k * v).sum()
    }

    pub fn row_sum(&self, l: usize) -> u32 {
        self.sum_where(|c| c.l == l)
    }

    pub fn col_sum(&self, r: usize) -> u32 {
        self.sum_where(|c| c.r == r)
    }

    fn sum_where<F: Fn(&Cell) -> bool>(&self, pred: F) -> u32 {
        cubical_cells(self.a, self.b, self.k_max)
            .iter()
            .zip(&self.entries)
            .filter(|(c, _)| pred(c))
            .map(|(_, &v)| v)
            .sum()
    }

    /// The `k = 0` slice as a margin matrix.
    pub fn slice0(&self) -> MarginMatrix {
        let mut entries = vec![0; (self.a + 1) * (self.b + 1)];
        for l in 0..=self.a {
            for r in 0..=self.b {
                entries[l * (self.b + 1) + r] = self.get(l, r, 0);
            }
        }
        MarginMatrix::from_rows(self.a, self.b, entries)
    }

    /// Whether this array belongs to `Q(α, β, n, m)` (with `k <= k_max`).
    pub fn satisfies(&self, alpha: &[u32], beta: &[u32], n: u32, m: u32) -> bool {
        alpha.len() == self.a
            && beta.len() == self.b
            && self.total() <= n
            && self.weight() == m
            && (1..=self.a).all(|l| self.row_sum(l) == alpha[l - 1])
            && (1..=self.b).all(|r| self.col_sum(r) == beta[r - 1])
    }
}

impl fmt::Display for CubicalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_flat(f, &self.entries)
    }
}

fn write_flat(f: &mut fmt::Formatter<'_>, v: &[u32]) -> fmt::Result {
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// One admissible position `(l, r, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub l: usize,
    pub r: usize,
    pub k: u32,
}

/// Admissible cells of a margin matrix, row-major, corner omitted.
pub fn margin_cells(a: usize, b: usize) -> Vec<Cell> {
    cubical_cells(a, b, 0)
}

/// Admissible cells of a cubical matrix in lexicographic `(l, r, k)` order:
/// `(0, r, 0)`, then per row `(l, 0, 0)` followed by `(l, r, 0..=k_max)`.
pub fn cubical_cells(a: usize, b: usize, k_max: u32) -> Vec<Cell> {
    let mut cells: Vec<Cell> = (1..=b).map(|r| Cell { l: 0, r, k: 0 }).collect();
    for l in 1..=a {
        cells.push(Cell { l, r: 0, k: 0 });
        for r in 1..=b {
            cells.extend((0..=k_max).map(|k| Cell { l, r, k }));
        }
    }
    cells
}

fn cell_position(a: usize, b: usize, k_max: u32, l: usize, r: usize, k: u32) -> Option<usize> {
    if l > a || r > b || k > k_max || (l == 0 && r == 0) || ((l == 0 || r == 0) && k > 0) {
        return None;
    }
    if l == 0 {
        return Some(r - 1);
    }
    let row_len = 1 + b * (k_max as usize + 1);
    let base = b + (l - 1) * row_len;
    if r == 0 {
        Some(base)
    } else {
        Some(base + 1 + (r - 1) * (k_max as usize + 1) + k as usize)
    }
}

/// Depth-first search over the cells with running margins.
struct Search<'a> {
    alpha: &'a [u32],
    beta: &'a [u32],
    n: u32,
    weight: Option<u32>,
    k_max: u32,
    cells: Vec<Cell>,
    last_in_row: Vec<bool>,
    last_in_col: Vec<bool>,
}

#[derive(Clone)]
struct State {
    row_rem: Vec<u32>,
    col_rem: Vec<u32>,
    total_rem: u32,
    weight_rem: u32,
    values: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(alpha: &'a [u32], beta: &'a [u32], n: u32, weight: Option<u32>, k_max: u32) -> Self {
        let cells = cubical_cells(alpha.len(), beta.len(), k_max);
        let mut last_in_row = vec![false; cells.len()];
        let mut last_in_col = vec![false; cells.len()];
        for l in 1..=alpha.len() {
            if let Some(i) = cells.iter().rposition(|c| c.l == l) {
                last_in_row[i] = true;
            }
        }
        for r in 1..=beta.len() {
            if let Some(i) = cells.iter().rposition(|c| c.r == r) {
                last_in_col[i] = true;
            }
        }
        Search { alpha, beta, n, weight, k_max, cells, last_in_row, last_in_col }
    }

    fn initial(&self) -> Option<State> {
        let row_total: u32 = self.alpha.iter().sum();
        let col_total: u32 = self.beta.iter().sum();
        if row_total > self.n || col_total > self.n {
            return None;
        }
        let mut row_rem = vec![0];
        row_rem.extend_from_slice(self.alpha);
        let mut col_rem = vec![0];
        col_rem.extend_from_slice(self.beta);
        Some(State {
            row_rem,
            col_rem,
            total_rem: self.n,
            weight_rem: self.weight.unwrap_or(0),
            values: Vec::with_capacity(self.cells.len()),
        })
    }

    /// Candidate values for cell `idx`, ascending.
    fn candidates(&self, idx: usize, st: &State) -> std::ops::RangeInclusive<u32> {
        let c = self.cells[idx];
        let mut hi = st.total_rem;
        if c.l >= 1 {
            hi = hi.min(st.row_rem[c.l]);
        }
        if c.r >= 1 {
            hi = hi.min(st.col_rem[c.r]);
        }
        if let (Some(_), Some(q)) = (self.weight, st.weight_rem.checked_div(c.k)) {
            hi = hi.min(q);
        }
        let mut lo = 0;
        if self.last_in_row[idx] {
            lo = lo.max(st.row_rem[c.l]);
        }
        if self.last_in_col[idx] {
            lo = lo.max(st.col_rem[c.r]);
        }
        if lo > hi {
            // Empty range.
            #[allow(clippy::reversed_empty_ranges)]
            return 1..=0;
        }
        if self.last_in_row[idx] || self.last_in_col[idx] {
            lo..=lo
        } else {
            lo..=hi
        }
    }

    fn feasible(&self, idx: usize, st: &State) -> bool {
        let rows: u32 = st.row_rem.iter().sum();
        let cols: u32 = st.col_rem.iter().sum();
        if rows.max(cols) > st.total_rem {
            return false;
        }
        if self.weight.is_some() && st.weight_rem > 0 {
            // Only cells with k >= 1 and l, r >= 1 carry weight; each unit of
            // total contributes at most k_max, and rows bound the remainder.
            let remaining_weighted = self.cells[idx..].iter().any(|c| c.k > 0);
            if !remaining_weighted || st.weight_rem > rows.min(st.total_rem) * self.k_max {
                return false;
            }
        }
        true
    }

    fn assign(&self, idx: usize, v: u32, st: &mut State) {
        let c = self.cells[idx];
        if c.l >= 1 {
            st.row_rem[c.l] -= v;
        }
        if c.r >= 1 {
            st.col_rem[c.r] -= v;
        }
        st.total_rem -= v;
        if self.weight.is_some() {
            st.weight_rem -= c.k * v;
        }
        st.values.push(v);
    }

    fn unassign(&self, idx: usize, v: u32, st: &mut State) {
        let c = self.cells[idx];
        if c.l >= 1 {
            st.row_rem[c.l] += v;
        }
        if c.r >= 1 {
            st.col_rem[c.r] += v;
        }
        st.total_rem += v;
        if self.weight.is_some() {
            st.weight_rem += c.k * v;
        }
        st.values.pop();
    }

    fn run<F: FnMut(&[u32])>(&self, idx: usize, st: &mut State, emit: &mut F) {
        if !self.feasible(idx, st) {
            return;
        }
        if idx == self.cells.len() {
            if st.weight_rem == 0 {
                emit(&st.values);
            }
            return;
        }
        for v in self.candidates(idx, st) {
            self.assign(idx, v, st);
            self.run(idx + 1, st, emit);
            self.unassign(idx, v, st);
        }
    }

    /// All feasible states after the first `depth` cells, in order.
    fn prefixes(&self, depth: usize) -> Vec<State> {
        let mut out = Vec::new();
        if let Some(mut st) = self.initial() {
            self.collect_prefixes(0, depth, &mut st, &mut out);
        }
        out
    }

    fn collect_prefixes(&self, idx: usize, depth: usize, st: &mut State, out: &mut Vec<State>) {
        if !self.feasible(idx, st) {
            return;
        }
        if idx == depth || idx == self.cells.len() {
            out.push(st.clone());
            return;
        }
        for v in self.candidates(idx, st) {
            self.assign(idx, v, st);
            self.collect_prefixes(idx + 1, depth, st, out);
            self.unassign(idx, v, st);
        }
    }

    fn for_each<F: FnMut(&[u32])>(&self, mut emit: F) {
        if let Some(mut st) = self.initial() {
            self.run(0, &mut st, &mut emit);
        }
    }

    /// Splits the search on the top row (`l = 0`) and runs the branches on
    /// the rayon pool; the concatenation preserves lexicographic order.
    fn collect_par(&self) -> Vec<Vec<u32>> {
        let depth = self.beta.len();
        self.prefixes(depth)
            .into_par_iter()
            .map(|mut st| {
                let mut local = Vec::new();
                let start = st.values.len();
                self.run(start, &mut st, &mut |v| local.push(v.to_vec()));
                local
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    }
}

fn margin_from_flat(a: usize, b: usize, flat: &[u32]) -> MarginMatrix {
    let mut entries = Vec::with_capacity(flat.len() + 1);
    entries.push(0);
    entries.extend_from_slice(flat);
    MarginMatrix::from_rows(a, b, entries)
}

/// `L(α, β, n)` in lexicographic order of the flattened entries.
pub fn enumerate_l(alpha: &[u32], beta: &[u32], n: u32) -> Vec<MarginMatrix> {
    let mut out = Vec::new();
    for_each_l(alpha, beta, n, |m| out.push(m));
    out
}

/// Streams `L(α, β, n)` without collecting.
pub fn for_each_l<F: FnMut(MarginMatrix)>(alpha: &[u32], beta: &[u32], n: u32, mut f: F) {
    let (a, b) = (alpha.len(), beta.len());
    Search::new(alpha, beta, n, Some(0), 0).for_each(|flat| f(margin_from_flat(a, b, flat)));
}

/// Parallel variant of [`enumerate_l`]; identical output.
pub fn enumerate_l_par(alpha: &[u32], beta: &[u32], n: u32) -> Vec<MarginMatrix> {
    let (a, b) = (alpha.len(), beta.len());
    Search::new(alpha, beta, n, Some(0), 0)
        .collect_par()
        .into_iter()
        .map(|flat| margin_from_flat(a, b, &flat))
        .collect()
}

/// `|L(α, β, n)|` without materializing the matrices.
pub fn count_l(alpha: &[u32], beta: &[u32], n: u32) -> u64 {
    let mut count = 0u64;
    Search::new(alpha, beta, n, Some(0), 0).for_each(|_| count += 1);
    count
}

/// `Q(α, β, n, m)` restricted to `k <= k_max`, lexicographic on the
/// flattened `(l, r, k)` vector.
pub fn enumerate_q(alpha: &[u32], beta: &[u32], n: u32, m: u32, k_max: u32) -> Vec<CubicalMatrix> {
    collect_q(Search::new(alpha, beta, n, Some(m), k_max))
}

/// Parallel variant of [`enumerate_q`]; identical output.
pub fn enumerate_q_par(alpha: &[u32], beta: &[u32], n: u32, m: u32, k_max: u32) -> Vec<CubicalMatrix> {
    let (a, b) = (alpha.len(), beta.len());
    Search::new(alpha, beta, n, Some(m), k_max)
        .collect_par()
        .into_iter()
        .map(|flat| CubicalMatrix::from_flat(a, b, k_max, flat))
        .collect()
}

/// All cubical matrices with the given margins and `k <= k_max`, with the
/// weight constraint dropped.
pub fn enumerate_q_any_weight(alpha: &[u32], beta: &[u32], n: u32, k_max: u32) -> Vec<CubicalMatrix> {
    collect_q(Search::new(alpha, beta, n, None, k_max))
}

fn collect_q(search: Search<'_>) -> Vec<CubicalMatrix> {
    let (a, b, k_max) = (search.alpha.len(), search.beta.len(), search.k_max);
    let mut out = Vec::new();
    search.for_each(|flat| out.push(CubicalMatrix::from_flat(a, b, k_max, flat.to_vec())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_counts() {
        assert_eq!(count_l(&[1, 1], &[2, 1], 3), 3);
        assert_eq!(enumerate_l(&[1, 1, 1], &[1, 2, 1], 4).len(), 12);
        assert_eq!(count_l(&[1, 1, 1], &[1, 2, 1], 4), 12);
    }

    #[test]
    fn single_point_forces_diagonal() {
        let ls = enumerate_l(&[1], &[1], 1);
        assert_eq!(ls.len(), 1);
        assert_eq!(ls[0].get(1, 1), 1);
        assert_eq!(ls[0].total(), 1);
        assert_eq!(enumerate_l(&[1], &[1], 2).len(), 2);
    }

    #[test]
    fn weyl_first_example_slices() {
        // (γ100, γ010, γ110, γ111) for m = 0, 1, 2; cells with k = 2 carry
        // B₂(y, x) = 0 and are left out.
        let expect = [[0, 1, 2, 0], [0, 1, 1, 1], [0, 1, 0, 2]];
        for (m, want) in expect.iter().enumerate() {
            let qs: Vec<_> =
                enumerate_q(&[2], &[3], 3, m as u32, 2).into_iter().filter(|q| q.get(1, 1, 2) == 0).collect();
            assert_eq!(qs.len(), 1, "m = {m}");
            let q = &qs[0];
            let got = [q.get(1, 0, 0), q.get(0, 1, 0), q.get(1, 1, 0), q.get(1, 1, 1)];
            assert_eq!(&got, want);
        }
    }

    #[test]
    fn zero_weight_slice_matches_l() {
        let alpha = [1, 2];
        let beta = [2, 1];
        let l = enumerate_l(&alpha, &beta, 4);
        let q: Vec<_> = enumerate_q(&alpha, &beta, 4, 0, 2).iter().map(CubicalMatrix::slice0).collect();
        assert_eq!(l, q);
    }

    #[test]
    fn weight_beyond_bound_is_empty() {
        assert!(enumerate_q(&[1], &[1], 2, 3, 1).is_empty());
    }

    #[test]
    fn out_of_range_margins_are_empty() {
        assert_eq!(count_l(&[3], &[1], 2), 0);
    }

    #[test]
    fn zero_row_is_forced_zero() {
        for g in enumerate_l(&[0, 1], &[1], 2) {
            assert_eq!(g.row_sum(1), 0);
        }
    }

    #[test]
    fn cell_positions_roundtrip() {
        let cells = cubical_cells(2, 3, 2);
        for (i, c) in cells.iter().enumerate() {
            assert_eq!(cell_position(2, 3, 2, c.l, c.r, c.k), Some(i));
        }
        assert_eq!(cell_position(2, 3, 2, 0, 0, 0), None);
        assert_eq!(cell_position(2, 3, 2, 1, 0, 1), None);
    }

    #[test]
    fn parallel_matches_sequential() {
        assert_eq!(enumerate_l(&[1, 2], &[2, 1], 4), enumerate_l_par(&[1, 2], &[2, 1], 4));
        assert_eq!(enumerate_q(&[2, 1], &[1, 2], 4, 2, 2), enumerate_q_par(&[2, 1], &[1, 2], 4, 2, 2));
    }
}
