//! Flat indexing of the graded Fock basis `|r, s>` and interior masks.

use serde::{Deserialize, Serialize};

/// States `|r, s>` with boson number `0 <= r <= nmax` and grade
/// `0 <= s < k`, stored at flat index `r * k + s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedBasis {
    k: usize,
    nmax: usize,
}

impl GradedBasis {
    /// `k = 1` is allowed and gives the plain truncated Fock space.
    pub fn new(k: usize, nmax: usize) -> Self {
        assert!(k >= 1, "graded basis needs at least one grade");
        Self { k, nmax }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn dim(&self) -> usize {
        (self.nmax + 1) * self.k
    }

    pub fn index(&self, r: usize, s: usize) -> usize {
        debug_assert!(r <= self.nmax && s < self.k);
        r * self.k + s
    }

    pub fn state(&self, n: usize) -> (usize, usize) {
        (n / self.k, n % self.k)
    }
}

/// Index set on which a truncated relation is compared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteriorMask {
    dim: usize,
    margin: usize,
    selected: Vec<usize>,
}

impl InteriorMask {
    /// All `|r, s>` with `r <= nmax - margin`; empty once `margin > nmax`.
    pub fn new(basis: &GradedBasis, margin: usize) -> Self {
        let selected = (0..basis.dim())
            .filter(|&n| basis.state(n).0 + margin <= basis.nmax())
            .collect();
        Self {
            dim: basis.dim(),
            margin,
            selected,
        }
    }

    /// Every index of a `dim`-dimensional space (used where no truncation exists).
    pub fn full(dim: usize) -> Self {
        Self {
            dim,
            margin: 0,
            selected: (0..dim).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn len(&self) -> usize {
        self.selected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }
}
