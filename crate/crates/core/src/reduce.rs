//! Elimination of invertible boundary entries from a chain complex.
//!
//! Repeatedly cancels pairs (a, b) with `boundary(a)[b] = ±1`, which removes
//! both cells without changing the homotopy type of the complex. Pairs are
//! chosen by smallest fill-in cost (Markowitz count), ties broken by
//! (degree, row, col), so the output is deterministic. What remains is
//! usually a tiny complex carrying the same homology, together with the
//! chain equivalences to and from the original complex when requested.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::chain::{ChainComplex, ChainMap, SparseMatrix};

pub struct Reduction {
    pub reduced: ChainComplex,
    /// Original indices of the surviving cells, per degree, ascending.
    pub surviving: Vec<Vec<u32>>,
    /// Projection original -> reduced, one matrix per degree.
    pub psi: Option<ChainMap>,
    /// Inclusion reduced -> original, one matrix per degree.
    pub iota: Option<ChainMap>,
}

type Column = BTreeMap<u32, BigInt>;

struct State {
    ranks: Vec<usize>,
    live: Vec<Vec<bool>>,
    // cols[n][j] = boundary of cell j in degree n, as a column over degree n-1
    cols: Vec<Vec<Column>>,
    // rowsupp[n][i] = degree-n columns with a nonzero entry in row i
    rowsupp: Vec<Vec<BTreeSet<u32>>>,
    psi: Option<Vec<Vec<Option<Column>>>>,  // per degree, per live cell: row of psi
    iota: Option<Vec<Vec<Option<Column>>>>, // per degree, per live cell: column of iota
    heap: BinaryHeap<Reverse<(u64, usize, u32, u32)>>,
}

impl State {
    fn cost(&self, n: usize, row: u32, col: u32) -> u64 {
        let c = (self.cols[n][col as usize].len() as u64).saturating_sub(1);
        let r = (self.rowsupp[n][row as usize].len() as u64).saturating_sub(1);
        c * r
    }

    fn push_candidate(&mut self, n: usize, row: u32, col: u32) {
        let cost = self.cost(n, row, col);
        self.heap.push(Reverse((cost, n, row, col)));
    }

    fn cancel(&mut self, n: usize, b: u32, a: u32) {
        let u = self.cols[n][a as usize][&b].clone();
        debug_assert!(u.abs().is_one());

        let col_a = self.cols[n][a as usize].clone();
        let mut gamma = col_a.clone();
        gamma.remove(&b);
        let row_b: Vec<(u32, BigInt)> = self.rowsupp[n][b as usize]
            .iter()
            .filter(|&&x| x != a)
            .map(|&x| (x, self.cols[n][x as usize][&b].clone()))
            .collect();

        // iota: new iota(x) = iota(x) - u^-1 * delta(x) * iota(a)
        if let Some(iota) = &mut self.iota {
            let ia = iota[n][a as usize].clone().unwrap();
            for (x, c) in &row_b {
                let scale = &u * c; // u^-1 = u for a unit
                let target = iota[n][*x as usize].as_mut().unwrap();
                for (orig, v) in &ia {
                    let e = target.entry(*orig).or_insert_with(BigInt::zero);
                    *e -= &scale * v;
                    if e.is_zero() {
                        target.remove(orig);
                    }
                }
            }
            iota[n][a as usize] = None;
            iota[n - 1][b as usize] = None;
        }

        // psi: new psi-row(w) = psi-row(w) - u^-1 * gamma_w * psi-row(b)
        if let Some(psi) = &mut self.psi {
            let pb = psi[n - 1][b as usize].clone().unwrap();
            for (w, g) in &gamma {
                let scale = &u * g;
                let target = psi[n - 1][*w as usize].as_mut().unwrap();
                for (orig, v) in &pb {
                    let e = target.entry(*orig).or_insert_with(BigInt::zero);
                    *e -= &scale * v;
                    if e.is_zero() {
                        target.remove(orig);
                    }
                }
            }
            psi[n - 1][b as usize] = None;
            psi[n][a as usize] = None;
        }

        // boundary in degree n: clear row b from every other column using col a
        for (x, c) in &row_b {
            let scale = &u * c;
            let xi = *x as usize;
            for (w, v) in &col_a {
                let entry = self.cols[n][xi].entry(*w).or_insert_with(BigInt::zero);
                *entry -= &scale * v;
                if entry.is_zero() {
                    self.cols[n][xi].remove(w);
                    self.rowsupp[n][*w as usize].remove(x);
                } else {
                    self.rowsupp[n][*w as usize].insert(*x);
                    if entry.abs().is_one() {
                        self.push_candidate(n, *w, *x);
                    }
                }
            }
        }

        // remove column a and row b in degree n
        for w in col_a.keys() {
            self.rowsupp[n][*w as usize].remove(&a);
        }
        self.cols[n][a as usize].clear();
        debug_assert!(self.rowsupp[n][b as usize].is_empty());

        // degree n+1: the row of a disappears
        if n + 1 < self.ranks.len() {
            let ys: Vec<u32> = self.rowsupp[n + 1][a as usize].iter().copied().collect();
            for y in ys {
                self.cols[n + 1][y as usize].remove(&a);
            }
            self.rowsupp[n + 1][a as usize].clear();
        }

        // degree n-1: the column of b disappears
        let wb: Vec<u32> = self.cols[n - 1][b as usize].keys().copied().collect();
        for w in wb {
            self.rowsupp[n - 1][w as usize].remove(&b);
        }
        self.cols[n - 1][b as usize].clear();

        self.live[n][a as usize] = false;
        self.live[n - 1][b as usize] = false;
    }
}

pub fn reduce(c: &ChainComplex, with_maps: bool) -> Reduction {
    let degrees = c.ranks().len();
    let mut st = State {
        ranks: c.ranks().to_vec(),
        live: c.ranks().iter().map(|&r| vec![true; r]).collect(),
        cols: (0..degrees)
            .map(|n| (0..c.rank(n)).map(|j| c.boundary(n).unwrap().cols[j].clone()).collect())
            .collect(),
        rowsupp: (0..degrees)
            .map(|n| {
                let below = if n == 0 { 0 } else { c.rank(n - 1) };
                vec![BTreeSet::new(); below]
            })
            .collect(),
        psi: None,
        iota: None,
        heap: BinaryHeap::new(),
    };
    for n in 1..degrees {
        for j in 0..c.rank(n) {
            for &i in st.cols[n][j].keys() {
                st.rowsupp[n][i as usize].insert(j as u32);
            }
        }
    }
    if with_maps {
        let ident = |r: usize| -> Vec<Option<Column>> {
            (0..r).map(|i| Some(BTreeMap::from([(i as u32, BigInt::one())]))).collect()
        };
        st.psi = Some(c.ranks().iter().map(|&r| ident(r)).collect());
        st.iota = Some(c.ranks().iter().map(|&r| ident(r)).collect());
    }

    for n in 1..degrees {
        for j in 0..c.rank(n) {
            let units: Vec<u32> = st.cols[n][j]
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .map(|(&i, _)| i)
                .collect();
            for i in units {
                st.push_candidate(n, i, j as u32);
            }
        }
    }

    while let Some(Reverse((cost, n, row, col))) = st.heap.pop() {
        if !st.live[n][col as usize] || !st.live[n - 1][row as usize] {
            continue;
        }
        let Some(v) = st.cols[n][col as usize].get(&row) else { continue };
        if !v.abs().is_one() {
            continue;
        }
        let current = st.cost(n, row, col);
        if current != cost {
            st.heap.push(Reverse((current, n, row, col)));
            continue;
        }
        st.cancel(n, row, col);
    }

    // compact the surviving cells
    let surviving: Vec<Vec<u32>> = st
        .live
        .iter()
        .map(|l| l.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i as u32).collect())
        .collect();
    let newindex: Vec<BTreeMap<u32, u32>> = surviving
        .iter()
        .map(|s| s.iter().enumerate().map(|(new, &old)| (old, new as u32)).collect())
        .collect();

    let mut boundaries = Vec::new();
    for n in 0..degrees {
        let rows = if n == 0 { 0 } else { surviving[n - 1].len() };
        let mut m = SparseMatrix::zero(rows, surviving[n].len());
        for (new_j, &old_j) in surviving[n].iter().enumerate() {
            for (&old_i, v) in &st.cols[n][old_j as usize] {
                let new_i = newindex[n - 1][&old_i];
                m.cols[new_j].insert(new_i, v.clone());
            }
        }
        boundaries.push(m);
    }
    let ranks: Vec<usize> = surviving.iter().map(|s| s.len()).collect();
    let reduced = ChainComplex::from_sparse(ranks, boundaries)
        .expect("reduction preserves boundary squared = 0");

    let psi = st.psi.map(|psi| {
        let maps = (0..degrees)
            .map(|n| {
                let mut m = SparseMatrix::zero(surviving[n].len(), c.rank(n));
                for (new_i, &old_i) in surviving[n].iter().enumerate() {
                    let row = psi[n][old_i as usize].as_ref().unwrap();
                    for (&orig, v) in row {
                        m.cols[orig as usize].insert(new_i as u32, v.clone());
                    }
                }
                m
            })
            .collect();
        ChainMap { maps }
    });
    let iota = st.iota.map(|iota| {
        let maps = (0..degrees)
            .map(|n| {
                let mut m = SparseMatrix::zero(c.rank(n), surviving[n].len());
                for (new_j, &old_j) in surviving[n].iter().enumerate() {
                    let col = iota[n][old_j as usize].as_ref().unwrap();
                    for (&orig, v) in col {
                        m.cols[new_j].insert(orig, v.clone());
                    }
                }
                m
            })
            .collect();
        ChainMap { maps }
    });

    Reduction { reduced, surviving, psi, iota }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IntMatrix;

    fn interval() -> ChainComplex {
        ChainComplex::from_dense_boundaries(2, vec![IntMatrix::from_i64_rows(&[&[-1], &[1]])])
            .unwrap()
    }

    #[test]
    fn interval_collapses_to_point() {
        let r = reduce(&interval(), true);
        assert_eq!(r.reduced.ranks(), &[1, 0]);
        let psi = r.psi.unwrap();
        let iota = r.iota.unwrap();
        psi.validate(&interval(), &r.reduced).unwrap();
        iota.validate(&r.reduced, &interval()).unwrap();
        // psi . iota = identity on the reduced complex
        let comp = psi.compose(&iota);
        for (n, m) in comp.maps.iter().enumerate() {
            let expect = ChainMap::identity(&r.reduced).maps[n].clone();
            assert_eq!(m, &expect);
        }
    }

    #[test]
    fn projective_plane_boundary_survives() {
        // minimal CW-style model: one cell in degrees 0,1,2 with d2 = [2], d1 = [0]
        let c = ChainComplex::from_dense_boundaries(
            1,
            vec![IntMatrix::zero(1, 1), IntMatrix::from_i64_rows(&[&[2]])],
        )
        .unwrap();
        let r = reduce(&c, false);
        // no unit entries: nothing cancels
        assert_eq!(r.reduced.ranks(), &[1, 1, 1]);
    }

    #[test]
    fn maps_are_chain_equivalences_on_sphere_boundary() {
        // boundary of the 2-simplex: 3 vertices, 3 edges
        let d1 = IntMatrix::from_i64_rows(&[&[-1, -1, 0], &[1, 0, -1], &[0, 1, 1]]);
        let c = ChainComplex::from_dense_boundaries(3, vec![d1]).unwrap();
        let r = reduce(&c, true);
        let psi = r.psi.unwrap();
        let iota = r.iota.unwrap();
        psi.validate(&c, &r.reduced).unwrap();
        iota.validate(&r.reduced, &c).unwrap();
        // circle: one 0-cell and one 1-cell survive with zero boundary
        assert_eq!(r.reduced.ranks(), &[1, 1]);
        assert!(r.reduced.boundary(1).unwrap().is_zero());
    }
}
