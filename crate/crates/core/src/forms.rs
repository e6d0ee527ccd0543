//! Intersection forms of oriented closed 4-manifolds and exact signatures
//! of symmetric integer forms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::chain::{ChainComplex, SparseMatrix};
use crate::error::{Error, Result};
use crate::homology::HomologyModel;
use crate::matrix::IntMatrix;
use crate::triangulation::Triangulation;

/// The cochain complex of `c`, regraded so that degree n holds the
/// (d-n)-cochains. Homology of the result in degree d-k is H^k of `c`.
pub fn dual_complex(c: &ChainComplex) -> ChainComplex {
    let d = c.top_degree();
    let ranks: Vec<usize> = (0..=d).map(|n| c.rank(d - n)).collect();
    let mut boundaries = vec![SparseMatrix::zero(0, ranks[0])];
    for n in 1..=d {
        // coboundary C^{d-n} -> C^{d-n+1} is the transpose of the boundary
        let b = c.boundary(d - n + 1).unwrap();
        let mut m = SparseMatrix::zero(c.rank(d - n + 1), c.rank(d - n));
        for (j, col) in b.cols.iter().enumerate() {
            for (&i, v) in col {
                m.set(j, i as usize, v.clone());
            }
        }
        boundaries.push(m);
    }
    ChainComplex::from_sparse(ranks, boundaries).expect("coboundary squares to zero")
}

/// Intersection form of an oriented closed 4-manifold triangulation: the
/// Alexander-Whitney cup product on a basis of H^2 modulo torsion,
/// evaluated against the fundamental class.
pub fn intersection_form(t: &Triangulation) -> Result<IntMatrix> {
    if t.dimension != 4 {
        return Err(Error::contract(format!(
            "intersection form needs a 4-dimensional triangulation, got dimension {}",
            t.dimension
        )));
    }
    let (complex, faces) = t.chain_complex();
    let fundamental = t.fundamental_cycle(&faces)?;

    let dual = dual_complex(&complex);
    let model = HomologyModel::new(&dual);
    // H^2 sits in dual degree d - 2 = 2
    let cocycles = model.free_basis_cycles(2);
    let b = cocycles.len();

    let face_index: BTreeMap<&[u32], usize> =
        faces[2].iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
    let mut q = IntMatrix::zero(b, b);
    for (fi, facet) in faces[4].iter().enumerate() {
        let mu = &fundamental[fi];
        if mu.is_zero() {
            continue;
        }
        let front = face_index[&facet[0..3]];
        let back = face_index[&facet[2..5]];
        for i in 0..b {
            if cocycles[i][front].is_zero() {
                continue;
            }
            for j in 0..b {
                if cocycles[j][back].is_zero() {
                    continue;
                }
                let term = mu * &cocycles[i][front] * &cocycles[j][back];
                q[(i, j)] += term;
            }
        }
    }
    debug_assert_eq!(q, q.transpose(), "cup product pairing must be symmetric on cocycles");
    Ok(q)
}

/// Signature of a symmetric integer form that is nondegenerate over the
/// rationals: the count of positive minus negative diagonal entries after
/// exact congruence diagonalization.
pub fn signature(form: &IntMatrix) -> Result<i64> {
    if form.rows() != form.cols() {
        return Err(Error::contract("signature needs a square matrix"));
    }
    if *form != form.transpose() {
        return Err(Error::contract("signature needs a symmetric matrix"));
    }
    let n = form.rows();
    let mut m = form.clone();
    let mut positive = 0i64;
    let mut negative = 0i64;
    for k in 0..n {
        if m[(k, k)].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !m[(i, i)].is_zero()) {
                m.swap_rows(i, k);
                m.swap_cols(i, k);
            } else {
                // all remaining diagonal entries vanish; bring in an
                // off-diagonal entry or conclude degeneracy
                let mut found = None;
                'search: for i in k..n {
                    for j in i + 1..n {
                        if !m[(i, j)].is_zero() {
                            found = Some((i, j));
                            break 'search;
                        }
                    }
                }
                let Some((i, j)) = found else {
                    return Err(Error::contract("form is degenerate over the rationals"));
                };
                // row/col i += row/col j makes the (i, i) entry 2*m[i][j]
                let one = BigInt::from(-1);
                m.row_sub(i, j, &one);
                m.col_sub(i, j, &one);
                m.swap_rows(i, k);
                m.swap_cols(i, k);
            }
        }
        let pivot = m[(k, k)].clone();
        for i in k + 1..n {
            let q = m[(i, k)].clone();
            if q.is_zero() {
                continue;
            }
            // congruence by [[1, 0], [-q, p]]: row_i <- p*row_i - q*row_k,
            // then the same on columns; signature is preserved because the
            // transform is invertible over the rationals
            scale_row(&mut m, i, &pivot);
            m.row_sub(i, k, &q);
            scale_col(&mut m, i, &pivot);
            m.col_sub(i, k, &q);
        }
        if pivot.is_positive() {
            positive += 1;
        } else {
            negative += 1;
        }
    }
    Ok(positive - negative)
}

fn scale_row(m: &mut IntMatrix, i: usize, s: &BigInt) {
    for j in 0..m.cols() {
        let v = &m[(i, j)] * s;
        m[(i, j)] = v;
    }
}

fn scale_col(m: &mut IntMatrix, j: usize, s: &BigInt) {
    for i in 0..m.rows() {
        let v = &m[(i, j)] * s;
        m[(i, j)] = v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::sphere_boundary;

    #[test]
    fn signature_of_small_forms() {
        assert_eq!(signature(&IntMatrix::zero(0, 0)).unwrap(), 0);
        assert_eq!(signature(&IntMatrix::from_i64_rows(&[&[1]])).unwrap(), 1);
        assert_eq!(signature(&IntMatrix::from_i64_rows(&[&[-1]])).unwrap(), -1);
        // hyperbolic plane
        assert_eq!(signature(&IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]])).unwrap(), 0);
        // E8-style positive definite corner
        assert_eq!(
            signature(&IntMatrix::from_i64_rows(&[&[2, -1], &[-1, 2]])).unwrap(),
            2
        );
    }

    #[test]
    fn signature_rejects_degenerate_and_asymmetric() {
        assert!(signature(&IntMatrix::zero(2, 2)).is_err());
        assert!(signature(&IntMatrix::from_i64_rows(&[&[0, 1], &[0, 0]])).is_err());
    }

    #[test]
    fn direct_sum_with_negation_has_zero_signature() {
        let forms = [
            IntMatrix::from_i64_rows(&[&[1]]),
            IntMatrix::from_i64_rows(&[&[2, 1], &[1, 3]]),
            IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]),
        ];
        for f in &forms {
            let n = f.rows();
            let mut sum = IntMatrix::zero(2 * n, 2 * n);
            for i in 0..n {
                for j in 0..n {
                    sum[(i, j)] = f[(i, j)].clone();
                    sum[(n + i, n + j)] = -f[(i, j)].clone();
                }
            }
            assert_eq!(signature(&sum).unwrap(), 0);
        }
    }

    #[test]
    fn four_sphere_has_empty_form() {
        let s4 = sphere_boundary(4);
        let q = intersection_form(&s4).unwrap();
        assert_eq!(q.rows(), 0);
        assert_eq!(signature(&q).unwrap(), 0);
    }

    #[test]
    fn wrong_dimension_rejected() {
        assert!(intersection_form(&sphere_boundary(3)).is_err());
    }

    #[test]
    fn signature_is_independent_of_the_vertex_order() {
        let cp2 = crate::fixtures::complex_projective_plane();
        let base = signature(&intersection_form(&cp2).unwrap()).unwrap();
        for perm in [
            vec![3u32, 1, 4, 0, 8, 2, 7, 5, 6],
            vec![8, 7, 6, 5, 4, 3, 2, 1, 0],
        ] {
            // push the triangulation and its orientation forward along the
            // relabeling
            let relabeled = Triangulation {
                dimension: cp2.dimension,
                vertex_count: cp2.vertex_count,
                facets: cp2
                    .facets
                    .iter()
                    .map(|f| f.iter().map(|&v| perm[v as usize]).collect())
                    .collect(),
                orientation: cp2.orientation.clone(),
                permutation: None,
            };
            let report = relabeled.validate();
            assert!(report.is_valid(), "{:?}", report.violations);
            let s = signature(&intersection_form(&relabeled).unwrap()).unwrap();
            assert_eq!(s, base, "perm {perm:?}");
        }
    }

    #[test]
    fn product_of_two_spheres_is_hyperbolic() {
        let s2 = sphere_boundary(2);
        let p = crate::triangulation::staircase_product(&s2, &s2).oriented().unwrap();
        let q = intersection_form(&p).unwrap();
        assert_eq!(q.rows(), 2);
        assert_eq!(signature(&q).unwrap(), 0);
        // rank-2, even, unimodular, signature 0 characterizes the
        // hyperbolic form up to congruence
        assert_eq!(q.determinant(), BigInt::from(-1));
        assert!(q[(0, 0)].clone() % 2 == BigInt::zero());
        assert!(q[(1, 1)].clone() % 2 == BigInt::zero());
    }
}
