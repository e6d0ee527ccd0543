//! Integer chain complexes with sparse boundary matrices, and chain maps.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Sparse integer matrix stored column-major. Rows and columns are dense
/// index ranges; only nonzero entries are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: Vec<BTreeMap<u32, BigInt>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![BTreeMap::new(); cols] }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        if v.is_zero() {
            self.cols[c].remove(&(r as u32));
        } else {
            self.cols[c].insert(r as u32, v);
        }
    }

    pub fn from_dense(m: &IntMatrix) -> Self {
        let mut s = SparseMatrix::zero(m.rows(), m.cols());
        for j in 0..m.cols() {
            for i in 0..m.rows() {
                if !m[(i, j)].is_zero() {
                    s.cols[j].insert(i as u32, m[(i, j)].clone());
                }
            }
        }
        s
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.rows, self.cols.len());
        for (j, col) in self.cols.iter().enumerate() {
            for (&i, v) in col {
                m[(i as usize, j)] = v.clone();
            }
        }
        m
    }

    pub fn apply_column(&self, v: &BTreeMap<u32, BigInt>) -> BTreeMap<u32, BigInt> {
        let mut out: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (&j, c) in v {
            for (&i, a) in &self.cols[j as usize] {
                let e = out.entry(i).or_insert_with(BigInt::zero);
                *e += a * c;
                if e.is_zero() {
                    out.remove(&i);
                }
            }
        }
        out
    }

    /// Composite `self * other`, both column-major.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols.len(), other.rows);
        SparseMatrix {
            rows: self.rows,
            cols: other.cols.iter().map(|c| self.apply_column(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }
}

/// A non-negatively graded chain complex of free Z-modules.
///
/// `ranks[n]` is the rank of the degree-n module; `boundary(n)` maps degree n
/// to degree n-1. Degree 0 has the zero boundary implicitly.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<SparseMatrix>, // boundaries[n]: C_n -> C_{n-1}; boundaries[0] has 0 rows
}

impl ChainComplex {
    /// Build from per-degree boundary matrices given densely.
    /// `boundaries[k]` must map degree k+1 to degree k.
    pub fn from_dense_boundaries(rank0: usize, boundaries: Vec<IntMatrix>) -> Result<Self> {
        let mut ranks = vec![rank0];
        let mut sparse = vec![SparseMatrix::zero(0, rank0)];
        let mut below = rank0;
        for b in &boundaries {
            if b.rows() != below {
                return Err(Error::structural(format!(
                    "boundary of degree {} has {} rows but degree {} has rank {}",
                    ranks.len(),
                    b.rows(),
                    ranks.len() - 1,
                    below
                )));
            }
            ranks.push(b.cols());
            below = b.cols();
            sparse.push(SparseMatrix::from_dense(b));
        }
        let c = ChainComplex { ranks, boundaries: sparse };
        c.check_boundary_squared()?;
        Ok(c)
    }

    pub fn from_sparse(ranks: Vec<usize>, mut boundaries: Vec<SparseMatrix>) -> Result<Self> {
        assert_eq!(ranks.len(), boundaries.len());
        if !ranks.is_empty() {
            assert_eq!(boundaries[0].rows, 0);
            for n in 0..ranks.len() {
                assert_eq!(boundaries[n].ncols(), ranks[n]);
                if n > 0 {
                    assert_eq!(boundaries[n].rows, ranks[n - 1]);
                }
            }
        }
        if ranks.is_empty() {
            boundaries = vec![SparseMatrix::zero(0, 0)];
            let c = ChainComplex { ranks: vec![0], boundaries };
            return Ok(c);
        }
        let c = ChainComplex { ranks, boundaries };
        c.check_boundary_squared()?;
        Ok(c)
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn boundary(&self, n: usize) -> Option<&SparseMatrix> {
        self.boundaries.get(n)
    }

    /// Alternating sum of module ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(n, &r)| if n % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    fn check_boundary_squared(&self) -> Result<()> {
        for n in 2..self.ranks.len() {
            let prod = self.boundaries[n - 1].compose(&self.boundaries[n]);
            if !prod.is_zero() {
                return Err(Error::structural(format!(
                    "boundary squared is nonzero from degree {n}"
                )));
            }
        }
        Ok(())
    }
}

/// A chain map between two complexes, one matrix per degree.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub maps: Vec<SparseMatrix>, // maps[n]: C_n(source) -> C_n(target)
}

impl ChainMap {
    pub fn identity(c: &ChainComplex) -> Self {
        let maps = c
            .ranks()
            .iter()
            .map(|&r| {
                let mut m = SparseMatrix::zero(r, r);
                for i in 0..r {
                    m.set(i, i, BigInt::from(1));
                }
                m
            })
            .collect();
        ChainMap { maps }
    }

    pub fn from_dense(maps: Vec<IntMatrix>) -> Self {
        ChainMap { maps: maps.iter().map(SparseMatrix::from_dense).collect() }
    }

    /// Check that the squares with the boundaries commute; names the first
    /// failing degree.
    pub fn validate(&self, source: &ChainComplex, target: &ChainComplex) -> Result<()> {
        if self.maps.len() != source.ranks().len() {
            return Err(Error::structural(format!(
                "chain map has {} degrees, source complex has {}",
                self.maps.len(),
                source.ranks().len()
            )));
        }
        for (n, m) in self.maps.iter().enumerate() {
            if m.ncols() != source.rank(n) || m.rows != target.rank(n) {
                return Err(Error::structural(format!(
                    "chain map in degree {n} has shape {}x{}, expected {}x{}",
                    m.rows,
                    m.ncols(),
                    target.rank(n),
                    source.rank(n)
                )));
            }
        }
        for n in 1..self.maps.len() {
            // degrees past the target's top map into the zero module, where
            // both composites vanish
            let Some(tb) = target.boundary(n) else { continue };
            let lhs = tb.compose(&self.maps[n]);
            let rhs = self.maps[n - 1].compose(source.boundary(n).unwrap());
            if lhs != rhs {
                return Err(Error::structural(format!(
                    "chain map does not commute with boundaries in degree {n}"
                )));
            }
        }
        Ok(())
    }

    pub fn compose(&self, inner: &ChainMap) -> ChainMap {
        let maps = self
            .maps
            .iter()
            .zip(&inner.maps)
            .map(|(outer, inner)| outer.compose(inner))
            .collect();
        ChainMap { maps }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn circle_complex() -> ChainComplex {
        // one vertex, one edge, zero boundary
        ChainComplex::from_dense_boundaries(1, vec![IntMatrix::zero(1, 1)]).unwrap()
    }

    #[test]
    fn rejects_nonzero_boundary_squared() {
        // d1 = [1], d2 = [1]: d1 d2 = [1] != 0
        let d1 = IntMatrix::from_i64_rows(&[&[1]]);
        let d2 = IntMatrix::from_i64_rows(&[&[1]]);
        assert!(ChainComplex::from_dense_boundaries(1, vec![d1, d2]).is_err());
    }

    #[test]
    fn euler_characteristic_from_ranks() {
        let c = circle_complex();
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn chain_map_validation_names_degree() {
        let c = circle_complex();
        // degree-1 map negating the edge commutes with zero boundaries
        let f = ChainMap::from_dense(vec![
            IntMatrix::from_i64_rows(&[&[1]]),
            IntMatrix::from_i64_rows(&[&[-1]]),
        ]);
        assert!(f.validate(&c, &c).is_ok());

        // an interval: two vertices, one edge
        let interval =
            ChainComplex::from_dense_boundaries(2, vec![IntMatrix::from_i64_rows(&[&[-1], &[1]])])
                .unwrap();
        // swap the vertices but keep the edge fixed: does not commute
        let g = ChainMap::from_dense(vec![
            IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]),
            IntMatrix::from_i64_rows(&[&[1]]),
        ]);
        let err = g.validate(&interval, &interval).unwrap_err();
        assert!(err.to_string().contains("degree 1"), "{err}");
    }
}
