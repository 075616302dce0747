use itertools::Itertools;

use crate::error::{Error, Result};

/// A permutation of the point labels `1..=n`, stored in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// `images[i - 1]` is the image of `i`.
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len() as u32;
        let mut seen = vec![false; images.len()];
        for &v in &images {
            if v == 0 || v > n || seen[(v - 1) as usize] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of 1..={n}")));
            }
            seen[(v - 1) as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: u32) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// The transposition exchanging `i` and `j`.
    pub fn transposition(n: u32, i: u32, j: u32) -> Result<Self> {
        let mut images: Vec<u32> = (1..=n).collect();
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::InvalidPermutation(format!("({i} {j}) on {n} points")));
        }
        images.swap((i - 1) as usize, (j - 1) as usize);
        Ok(Permutation { images })
    }

    /// The cycle `1 -> 2 -> ... -> n -> 1`.
    pub fn cycle(n: u32) -> Self {
        Permutation { images: (1..=n).map(|i| if i == n { 1 } else { i + 1 }).collect() }
    }

    pub fn degree(&self) -> u32 {
        self.images.len() as u32
    }

    /// Image of `i`; labels beyond the degree are fixed.
    pub fn apply(&self, i: u32) -> u32 {
        match self.images.get((i as usize).wrapping_sub(1)) {
            Some(&v) => v,
            None => i,
        }
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let n = self.degree().max(other.degree());
        Permutation { images: (1..=n).map(|i| self.apply(other.apply(i))).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[(v - 1) as usize] = i as u32 + 1;
        }
        Permutation { images }
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// All `n!` permutations, in lexicographic order of their one-line form.
    pub fn all(n: u32) -> impl Iterator<Item = Permutation> {
        (1..=n).permutations(n as usize).map(|images| Permutation { images })
    }

    /// A generating set of `S_n`: one transposition and the long cycle.
    pub fn generators(n: u32) -> Vec<Permutation> {
        if n < 2 {
            return Vec::new();
        }
        vec![Permutation::transposition(n, 1, 2).expect("n >= 2"), Permutation::cycle(n)]
    }
}
