//! Homology groups, homology bases, and induced maps on homology.
//!
//! The heavy lifting happens in two stages: `reduce` cancels all unit
//! boundary entries (keeping the chain equivalence), then a dense Smith
//! normal form pipeline on the small surviving complex produces canonical
//! groups, a fixed basis of every `H_n / tors`, and coordinates for cycles.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::abgroup::FgAbGroup;
use crate::chain::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::reduce::{reduce, Reduction};
use crate::snf::smith_decomposition;

/// Homology groups of an integer chain complex, one per degree.
pub fn homology(c: &ChainComplex) -> Vec<FgAbGroup> {
    let model = HomologyModel::build(c, false);
    model.groups().to_vec()
}

/// Per-degree decomposition data: canonical group, fixed bases of the free
/// and torsion parts (in reduced-complex coordinates), and the projection
/// taking a cycle to its homology coordinates.
struct DegreeData {
    group: FgAbGroup,
    free_basis: IntMatrix,   // reduced-rank x b_n
    tors_basis: IntMatrix,   // reduced-rank x t_n
    ker_rows: IntMatrix,     // z x reduced-rank : cycle -> kernel coordinates
    uprime: IntMatrix,       // z x z            : kernel -> homology coordinates
    free_indices: Vec<usize>,
    tors_indices: Vec<usize>,
    moduli: Vec<BigInt>,
}

impl DegreeData {
    /// Homology coordinates of a cycle given in reduced-complex coordinates.
    fn coords(&self, cycle: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let k = self.ker_rows.apply(cycle);
        let y = self.uprime.apply(&k);
        let free = self.free_indices.iter().map(|&i| y[i].clone()).collect();
        let tors = self
            .tors_indices
            .iter()
            .zip(&self.moduli)
            .map(|(&i, d)| {
                let mut r = &y[i] % d;
                if r.is_negative() {
                    r += d;
                }
                r
            })
            .collect();
        (free, tors)
    }
}

pub struct HomologyModel {
    reduction: Reduction,
    degrees: Vec<DegreeData>,
    groups: Vec<FgAbGroup>,
}

impl HomologyModel {
    pub fn new(c: &ChainComplex) -> Self {
        HomologyModel::build(c, true)
    }

    fn build(c: &ChainComplex, with_maps: bool) -> Self {
        let reduction = reduce(c, with_maps);
        let r = &reduction.reduced;
        let top = r.top_degree();
        let mut degrees = Vec::new();
        for n in 0..=top {
            let dn = r.boundary(n).unwrap().to_dense();
            let dn1 = if n < top {
                r.boundary(n + 1).unwrap().to_dense()
            } else {
                IntMatrix::zero(r.rank(n), 0)
            };
            degrees.push(degree_decomposition(&dn, &dn1));
        }
        let groups = degrees.iter().map(|d| d.group.clone()).collect();
        HomologyModel { reduction, degrees, groups }
    }

    pub fn groups(&self) -> &[FgAbGroup] {
        &self.groups
    }

    pub fn group(&self, n: usize) -> FgAbGroup {
        self.groups.get(n).cloned().unwrap_or_else(FgAbGroup::trivial)
    }

    /// Basis of `H_n / tors` as cycles in the original complex.
    pub fn free_basis_cycles(&self, n: usize) -> Vec<Vec<BigInt>> {
        let deg = &self.degrees[n];
        let iota = &self.reduction.iota.as_ref().expect("model built with maps").maps[n];
        (0..deg.free_basis.cols())
            .map(|j| {
                let col = deg.free_basis.column(j);
                let mut dense = vec![BigInt::zero(); iota.rows];
                let sparse_col: std::collections::BTreeMap<u32, BigInt> = col
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| (i as u32, v.clone()))
                    .collect();
                for (&i, v) in &iota.apply_column(&sparse_col) {
                    dense[i as usize] = v.clone();
                }
                dense
            })
            .collect()
    }

    /// Homology coordinates (free part, torsion part) of a cycle given in
    /// original-complex coordinates.
    pub fn cycle_coords(&self, n: usize, cycle: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let psi = &self.reduction.psi.as_ref().expect("model built with maps").maps[n];
        let sparse: std::collections::BTreeMap<u32, BigInt> = cycle
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i as u32, v.clone()))
            .collect();
        let reduced = psi.apply_column(&sparse);
        let mut dense = vec![BigInt::zero(); psi.rows];
        for (&i, v) in &reduced {
            dense[i as usize] = v.clone();
        }
        self.degrees[n].coords(&dense)
    }

    /// The map induced on homology by a chain map from `source` to `target`.
    pub fn induced(source: &HomologyModel, target: &HomologyModel, f: &ChainMap) -> HomologyMap {
        let psi = target.reduction.psi.as_ref().expect("model built with maps");
        let iota = source.reduction.iota.as_ref().expect("model built with maps");
        let mut degrees = Vec::new();
        let top = source.degrees.len().max(target.degrees.len());
        for n in 0..top {
            let (sd, td) = (source.degrees.get(n), target.degrees.get(n));
            let (Some(sd), Some(td)) = (sd, td) else {
                degrees.push(DegreeMap {
                    free: IntMatrix::zero(
                        td.map_or(0, |d| d.free_indices.len()),
                        sd.map_or(0, |d| d.free_indices.len()),
                    ),
                    torsion: IntMatrix::zero(
                        td.map_or(0, |d| d.tors_indices.len()),
                        sd.map_or(0, |d| d.tors_indices.len()),
                    ),
                    moduli: td.map_or_else(Vec::new, |d| d.moduli.clone()),
                });
                continue;
            };
            // reduced-level map psi_target . f . iota_source
            let reduced_map = psi.maps[n].compose(&f.maps[n]).compose(&iota.maps[n]);
            let image_coords = |basis: &IntMatrix, j: usize| {
                let col = basis.column(j);
                let sparse: std::collections::BTreeMap<u32, BigInt> = col
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| (i as u32, v.clone()))
                    .collect();
                let image = reduced_map.apply_column(&sparse);
                let mut dense = vec![BigInt::zero(); reduced_map.rows];
                for (&i, v) in &image {
                    dense[i as usize] = v.clone();
                }
                td.coords(&dense)
            };
            let b_src = sd.free_basis.cols();
            let b_tgt = td.free_indices.len();
            let mut free = IntMatrix::zero(b_tgt, b_src);
            for j in 0..b_src {
                let (fc, _) = image_coords(&sd.free_basis, j);
                for i in 0..b_tgt {
                    free[(i, j)] = fc[i].clone();
                }
            }
            let t_src = sd.tors_basis.cols();
            let t_tgt = td.tors_indices.len();
            let mut torsion = IntMatrix::zero(t_tgt, t_src);
            for j in 0..t_src {
                let (fc, tc) = image_coords(&sd.tors_basis, j);
                debug_assert!(fc.iter().all(|x| x.is_zero()), "torsion mapped into free part");
                for i in 0..t_tgt {
                    torsion[(i, j)] = tc[i].clone();
                }
            }
            degrees.push(DegreeMap { free, torsion, moduli: td.moduli.clone() });
        }
        HomologyMap { degrees }
    }
}

fn degree_decomposition(dn: &IntMatrix, dn1: &IntMatrix) -> DegreeData {
    // kernel of the outgoing boundary, from the column transform of its SNF
    let snf_n = smith_decomposition(dn);
    let rank_n = snf_n.rank;
    let z = dn.cols() - rank_n;
    let ker_cols: Vec<usize> = (rank_n..dn.cols()).collect();
    let kernel = snf_n.v.select_columns(&ker_cols);
    let ker_rows = snf_n.v_inv.select_rows(&ker_cols);

    // incoming boundaries, expressed in kernel coordinates
    let w = ker_rows.mul(dn1);
    let snf_w = smith_decomposition(&w);
    let rank_w = snf_w.rank;

    let mut tors_indices = Vec::new();
    let mut moduli = Vec::new();
    for (i, d) in snf_w.factors().iter().enumerate() {
        if !d.is_one() {
            tors_indices.push(i);
            moduli.push(d.clone());
        }
    }
    let free_indices: Vec<usize> = (rank_w..z).collect();
    let group = FgAbGroup::new(z - rank_w, moduli.clone());

    let basis = kernel.mul(&snf_w.u_inv);
    let free_basis = basis.select_columns(&free_indices);
    let tors_basis = basis.select_columns(&tors_indices);

    DegreeData {
        group,
        free_basis,
        tors_basis,
        ker_rows,
        uprime: snf_w.u,
        free_indices,
        tors_indices,
        moduli,
    }
}

/// Induced map on homology: per degree, the matrix on the chosen basis of
/// `H_n / tors` plus the action on the torsion summands (entries taken mod
/// the corresponding torsion coefficient).
#[derive(Debug)]
pub struct HomologyMap {
    pub degrees: Vec<DegreeMap>,
}

#[derive(Debug)]
pub struct DegreeMap {
    pub free: IntMatrix,
    pub torsion: IntMatrix,
    pub moduli: Vec<BigInt>,
}

impl HomologyMap {
    pub fn free_matrix(&self, n: usize) -> Option<&IntMatrix> {
        self.degrees.get(n).map(|d| &d.free)
    }
}

/// Validates the chain map and computes the induced map on homology.
pub fn induced_map(
    f: &ChainMap,
    source: &ChainComplex,
    target: &ChainComplex,
) -> Result<HomologyMap> {
    f.validate(source, target)?;
    let sm = HomologyModel::new(source);
    let tm = HomologyModel::new(target);
    Ok(HomologyModel::induced(&sm, &tm, f))
}

/// Exact determinant of the degree-n free part of an induced map.
///
/// Fails if the free part is not square, which happens exactly when the map
/// is not an isomorphism between the free parts.
pub fn free_determinant(h: &HomologyMap, n: usize) -> Result<BigInt> {
    let Some(d) = h.degrees.get(n) else {
        return Ok(BigInt::one()); // both groups are zero: empty determinant
    };
    if d.free.rows() != d.free.cols() {
        return Err(Error::contract(format!(
            "degree {n} free part is {}x{}, not an isomorphism of free parts",
            d.free.rows(),
            d.free.cols()
        )));
    }
    Ok(d.free.determinant())
}
