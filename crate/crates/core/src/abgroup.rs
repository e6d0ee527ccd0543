//! Finitely generated abelian groups in Smith canonical form.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::matrix::IntMatrix;
use crate::snf::smith_decomposition;

/// A finitely generated abelian group `Z^free_rank + Z/d1 + Z/d2 + ...`
/// with `d1 | d2 | ...` and every `di > 1`. This representation is unique,
/// so equality of groups is equality of values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        for w in torsion.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "torsion coefficients must form a divisibility chain");
        }
        assert!(torsion.iter().all(|d| d > &BigInt::one()), "torsion coefficients must exceed 1");
        FgAbGroup { free_rank, torsion }
    }

    pub fn trivial() -> Self {
        FgAbGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        assert!(order > 1);
        FgAbGroup { free_rank: 0, torsion: vec![BigInt::from(order)] }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Cokernel `Z^n / im(m)` where `m` has `n` rows.
    pub fn cokernel(m: &IntMatrix) -> Self {
        let d = smith_decomposition(m);
        let factors = d.factors();
        let torsion: Vec<BigInt> =
            factors.iter().filter(|f| !f.is_one()).cloned().collect();
        FgAbGroup { free_rank: m.rows() - factors.len(), torsion }
    }

    /// Canonical form of a direct sum.
    ///
    /// Torsion parts are merged back into a single divisibility chain by
    /// diagonal Smith reduction.
    pub fn direct_sum(&self, other: &FgAbGroup) -> Self {
        let all: Vec<BigInt> =
            self.torsion.iter().chain(other.torsion.iter()).cloned().collect();
        let n = all.len();
        let mut diag = IntMatrix::zero(n, n);
        for (i, d) in all.iter().enumerate() {
            diag[(i, i)] = d.clone();
        }
        let mut sum = FgAbGroup::cokernel(&diag);
        sum.free_rank += self.free_rank + other.free_rank;
        sum
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
