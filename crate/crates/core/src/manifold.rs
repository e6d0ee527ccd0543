//! Manifold invariants computed from a triangulation: homology, the
//! Kervaire semicharacteristic, automorphism actions on homology, the
//! K1(Z)-valued class of an automorphism, and the Poincare duality
//! determinant identity.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::abgroup::FgAbGroup;
use crate::chain::ChainComplex;
use crate::error::{Error, Result};
use crate::homology::{free_determinant, HomologyMap, HomologyModel};
use crate::triangulation::Triangulation;

/// A triangulation bundled with its chain complex and homology model, so
/// that repeated automorphism computations share the reduction work.
pub struct TriangulationModel {
    t: Triangulation,
    faces: Vec<Vec<Vec<u32>>>,
    complex: ChainComplex,
    model: HomologyModel,
}

impl TriangulationModel {
    pub fn new(t: &Triangulation) -> Self {
        let (complex, faces) = t.chain_complex();
        let model = HomologyModel::new(&complex);
        TriangulationModel { t: t.clone(), faces, complex, model }
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.t
    }

    pub fn homology(&self) -> &[FgAbGroup] {
        self.model.groups()
    }

    pub fn betti(&self) -> Vec<usize> {
        self.model.groups().iter().map(|g| g.free_rank()).collect()
    }

    /// Mod-2 sum of the even-degree homology ranks, defined for odd
    /// dimensions only.
    pub fn kervaire_semicharacteristic(&self) -> Result<u8> {
        let d = self.t.dimension;
        if d % 2 == 0 {
            return Err(Error::contract(
                "the Kervaire semicharacteristic is defined for odd dimensions only",
            ));
        }
        let sum: usize = (0..=(d - 1) / 2).map(|i| self.model.group(2 * i).free_rank()).sum();
        Ok((sum % 2) as u8)
    }

    /// The map induced on homology by a facet-preserving vertex permutation.
    pub fn action(&self, perm: &[u32]) -> Result<HomologyMap> {
        let f = self.t.automorphism_chain_map(perm, &self.faces)?;
        debug_assert!(f.validate(&self.complex, &self.complex).is_ok());
        Ok(HomologyModel::induced(&self.model, &self.model, &f))
    }

    /// Determinant of the action in the top degree: +1 for orientation
    /// preserving, -1 for reversing (on orientable closed complexes).
    pub fn orientation_behavior(&self, perm: &[u32]) -> Result<BigInt> {
        let action = self.action(perm)?;
        free_determinant(&action, self.t.dimension)
    }

    /// Product over all degrees of the determinants of the action on
    /// H_i / tors: the image of the automorphism class in K1(Z) = {+-1}.
    pub fn k1_class(&self, perm: &[u32]) -> Result<i8> {
        let action = self.action(perm)?;
        self.k1_of_action(&action)
    }

    pub fn k1_of_action(&self, action: &HomologyMap) -> Result<i8> {
        let mut product = BigInt::one();
        for n in 0..=self.t.dimension {
            let det = free_determinant(action, n)?;
            if !det.abs().is_one() {
                return Err(Error::contract(format!(
                    "degree {n} determinant {det} is not a unit; the map is not an automorphism"
                )));
            }
            product *= det;
        }
        Ok(if product == BigInt::one() { 1 } else { -1 })
    }

    /// det(phi_i) det(phi_{d-i}) = det(phi_d)^{rank H_i}, checked exactly.
    pub fn duality_identity_holds(&self, perm: &[u32], i: usize) -> Result<bool> {
        let d = self.t.dimension;
        if i > d {
            return Err(Error::contract(format!("degree {i} exceeds the dimension {d}")));
        }
        self.t.oriented_signs()?;
        let action = self.action(perm)?;
        let det_i = free_determinant(&action, i)?;
        let det_di = free_determinant(&action, d - i)?;
        let det_d = free_determinant(&action, d)?;
        let rank = self.model.group(i).free_rank();
        Ok(det_i * det_di == num_traits::pow::pow(det_d, rank))
    }
}

pub fn kervaire_semicharacteristic(t: &Triangulation) -> Result<u8> {
    TriangulationModel::new(t).kervaire_semicharacteristic()
}

pub fn automorphism_action(t: &Triangulation, perm: &[u32]) -> Result<HomologyMap> {
    TriangulationModel::new(t).action(perm)
}

pub fn k1_class(t: &Triangulation, perm: &[u32]) -> Result<i8> {
    TriangulationModel::new(t).k1_class(perm)
}

pub fn check_duality_identity(t: &Triangulation, perm: &[u32], i: usize) -> Result<bool> {
    TriangulationModel::new(t).duality_identity_holds(perm, i)
}
