use std::cmp::Ordering;
use std::fmt;

/// A polynomial variable.
///
/// `Abstract(j)` is the coordinate label `y_j` used for the arguments of
/// multi-symmetric functions; `Point { point: i, coord: j }` is `x_{ij}`, the
/// `j`-th coordinate of the `i`-th point. Both indices are 1-based.
///
/// The derived order puts every abstract variable before every point
/// variable, then compares lexicographically by `(point, coord)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    Abstract(u32),
    Point { point: u32, coord: u32 },
}

impl VarId {
    pub fn point(point: u32, coord: u32) -> Self {
        debug_assert!(point >= 1 && coord >= 1);
        VarId::Point { point, coord }
    }

    pub fn abstract_var(coord: u32) -> Self {
        debug_assert!(coord >= 1);
        VarId::Abstract(coord)
    }

    pub fn is_point(&self) -> bool {
        matches!(self, VarId::Point { .. })
    }

    pub fn coord(&self) -> u32 {
        match *self {
            VarId::Abstract(j) => j,
            VarId::Point { coord, .. } => coord,
        }
    }

    pub fn point_index(&self) -> Option<u32> {
        match *self {
            VarId::Abstract(_) => None,
            VarId::Point { point, .. } => Some(point),
        }
    }

    /// Checks the variable against a configured `(n, d)`.
    pub fn in_range(&self, n: u32, d: u32) -> bool {
        match *self {
            VarId::Abstract(j) => (1..=d).contains(&j),
            VarId::Point { point, coord } => (1..=n).contains(&point) && (1..=d).contains(&coord),
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::Abstract(j) => write!(f, "y{j}"),
            VarId::Point { point, coord } => write!(f, "x{point}_{coord}"),
        }
    }
}

/// A power product of variables with positive exponents.
///
/// Stored as a list sorted by [`VarId`]; zero exponents are never stored, so
/// structural equality is monomial equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: VarId) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    pub fn var_pow(v: VarId, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial { exps: vec![(v, e)] }
        }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs; repeated
    /// variables are merged and zero exponents dropped.
    pub fn from_pairs<I: IntoIterator<Item = (VarId, u32)>>(pairs: I) -> Self {
        let mut exps: Vec<(VarId, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        exps.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(VarId, u32)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match merged.last_mut() {
                Some((last, acc)) if *last == v => *acc += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { exps: merged }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self) -> &[(VarId, u32)] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.exps.binary_search_by_key(&v, |&(w, _)| w).map(|i| self.exps[i].1).unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { exps: out }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial { exps: self.exps.iter().map(|&(v, e)| (v, e * k)).collect() }
    }

    /// Lowers the exponent of `v` by one; `None` if `v` does not occur.
    /// The second component is the exponent before lowering.
    pub fn derive(&self, v: VarId) -> Option<(Monomial, u32)> {
        let idx = self.exps.binary_search_by_key(&v, |&(w, _)| w).ok()?;
        let e = self.exps[idx].1;
        let mut exps = self.exps.clone();
        if e == 1 {
            exps.remove(idx);
        } else {
            exps[idx].1 -= 1;
        }
        Some((Monomial { exps }, e))
    }

    /// Applies a variable renaming. The map need not be injective.
    pub fn map_vars<F: FnMut(VarId) -> VarId>(&self, mut f: F) -> Monomial {
        Monomial::from_pairs(self.exps.iter().map(|&(v, e)| (f(v), e)))
    }

    /// Splits off the factor living on point `i`, returned with the point
    /// variables replaced by the matching abstract ones.
    pub fn point_factor(&self, i: u32) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .filter_map(|&(v, e)| match v {
                    VarId::Point { point, coord } if point == i => Some((VarId::Abstract(coord), e)),
                    _ => None,
                })
                .collect(),
        }
    }

    /// Sorted, deduplicated point indices occurring in this monomial.
    pub fn points(&self) -> Vec<u32> {
        let mut pts: Vec<u32> = self.exps.iter().filter_map(|(v, _)| v.point_index()).collect();
        pts.dedup();
        pts
    }

    pub fn fmt_with<F>(&self, f: &mut fmt::Formatter<'_>, name: &F) -> fmt::Result
    where
        F: Fn(VarId) -> String,
    {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (idx, &(v, e)) in self.exps.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", name(v))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Graded lexicographic order: total degree first, then the exponent of the
/// smallest variable decides (a larger exponent on an earlier variable wins).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let by_degree = self.degree().cmp(&other.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {
                    let c = a[i].1.cmp(&b[j].1);
                    if c != Ordering::Equal {
                        return c;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        (a.len() - i).cmp(&(b.len() - j))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|v: VarId| v.to_string())
    }
}
