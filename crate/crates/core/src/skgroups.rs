//! Cut-and-paste equivalence deciders and group structure for closed
//! oriented triangulated manifolds.
//!
//! Two closed oriented manifolds are SKK-equivalent exactly when their
//! Euler characteristic, Kervaire semicharacteristic and bordism class
//! agree; SK-equivalence further quotients by mapping tori, which at desk
//! scale (dimension at most 4) is detected by the Euler characteristic and,
//! in dimension 4, the signature. Bordism classes are computed where a
//! triangulation determines them (signature in dimension 4, triviality
//! below) and carried as user-supplied labels above.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::abgroup::FgAbGroup;
use crate::error::{Error, Result};
use crate::forms::{intersection_form, signature};
use crate::manifold::TriangulationModel;
use crate::triangulation::Triangulation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bordism {
    /// Dimensions 1..3, where the oriented bordism group vanishes.
    Trivial,
    /// Dimension 0 (signed point count) and dimension 4 (signature).
    Computed(BigInt),
    /// Dimension 5 and up: an externally asserted class label.
    Supplied(String),
}

impl fmt::Display for Bordism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bordism::Trivial => write!(f, "trivial"),
            Bordism::Computed(v) => write!(f, "computed({v})"),
            Bordism::Supplied(l) => write!(f, "supplied({l})"),
        }
    }
}

/// The complete SKK invariant of a closed oriented manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTuple {
    pub dim: usize,
    pub chi: i64,
    pub kappa: Option<u8>,
    pub bordism: Bordism,
}

impl InvariantTuple {
    /// Presentation-level data for a manifold with boundary, where only the
    /// Euler characteristic is recorded.
    pub fn presentation(dim: usize, chi: i64) -> Self {
        InvariantTuple { dim, chi, kappa: None, bordism: Bordism::Trivial }
    }

    pub fn report(&self) -> String {
        let mut s = format!("{{dim:{}, chi:{}", self.dim, self.chi);
        if let Some(k) = self.kappa {
            s.push_str(&format!(", kappa:{k}"));
        }
        s.push_str(&format!(", bordism:{}}}", self.bordism));
        s
    }
}

/// Compute the invariant tuple of a valid closed oriented triangulation.
/// Dimensions 5 and up need an externally supplied bordism label.
pub fn invariant_tuple(t: &Triangulation, bordism_label: Option<&str>) -> Result<InvariantTuple> {
    let d = t.dimension;
    t.oriented_signs()?;
    let chi = t.euler_characteristic();
    let model = TriangulationModel::new(t);
    let kappa = if d % 2 == 1 {
        let k = model.kervaire_semicharacteristic()?;
        if chi != 0 {
            return Err(Error::contract(format!(
                "closed odd-dimensional manifold has chi = {chi}, expected 0"
            )));
        }
        Some(k)
    } else {
        None
    };
    let bordism = match d {
        0 => Bordism::Computed(BigInt::from(chi)),
        1..=3 => Bordism::Trivial,
        4 => Bordism::Computed(BigInt::from(signature(&intersection_form(t)?)?)),
        _ => match bordism_label {
            Some(label) => Bordism::Supplied(label.to_string()),
            None => {
                return Err(Error::contract(format!(
                    "dimension {d} needs a bordism label; it is not computable from a triangulation"
                )))
            }
        },
    };
    Ok(InvariantTuple { dim: d, chi, kappa, bordism })
}

/// Componentwise equality of the complete SKK invariant.
pub fn skk_equivalent(a: &InvariantTuple, b: &InvariantTuple) -> Result<bool> {
    if a.dim != b.dim {
        return Err(Error::contract(format!(
            "dimension mismatch: {} vs {}",
            a.dim, b.dim
        )));
    }
    Ok(a == b)
}

/// SK-equivalence for dimensions up to 4: detected by chi for even
/// dimensions (plus the signature in dimension 4); always true for odd
/// dimensions up to 3 where the SK group vanishes.
pub fn sk_equivalent(a: &InvariantTuple, b: &InvariantTuple) -> Result<bool> {
    if a.dim != b.dim {
        return Err(Error::contract(format!(
            "dimension mismatch: {} vs {}",
            a.dim, b.dim
        )));
    }
    match a.dim {
        0 | 2 => Ok(a.chi == b.chi),
        1 | 3 => Ok(true),
        4 => Ok(a.chi == b.chi && a.bordism == b.bordism),
        d => Err(Error::contract(format!(
            "SK-equivalence in dimension {d} needs a quotient convention for the bordism classes"
        ))),
    }
}

/// A declared identification of supplied bordism labels with classes of
/// the bordism group modulo mapping tori, enabling SK decisions above
/// dimension 4.
#[derive(Clone, Debug, Default)]
pub struct SkConvention {
    pub quotient_class: BTreeMap<String, String>,
}

pub fn sk_equivalent_with(
    a: &InvariantTuple,
    b: &InvariantTuple,
    convention: &SkConvention,
) -> Result<bool> {
    if a.dim <= 4 {
        return sk_equivalent(a, b);
    }
    let class_of = |t: &InvariantTuple| -> Result<String> {
        match &t.bordism {
            Bordism::Supplied(l) => convention
                .quotient_class
                .get(l)
                .cloned()
                .ok_or_else(|| Error::contract(format!("no quotient class declared for label '{l}'"))),
            other => Err(Error::contract(format!(
                "expected a supplied bordism label in dimension {}, found {other}",
                t.dim
            ))),
        }
    };
    let same_class = class_of(a)? == class_of(b)?;
    if a.dim % 2 == 0 {
        Ok(a.chi == b.chi && same_class)
    } else {
        Ok(same_class)
    }
}

/// A finitely generated abelian group with human-readable generator labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDescription {
    pub group: FgAbGroup,
    pub generators: Vec<String>,
}

impl fmt::Display for GroupDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.group)?;
        if !self.generators.is_empty() {
            write!(f, " generated by {}", self.generators.join(", "))?;
        }
        Ok(())
    }
}

/// The subgroup of SKK generated by the sphere: Z for even dimensions,
/// Z/2 for d = 1 mod 4, trivial for d = 3 mod 4.
fn sphere_subgroup(d: usize) -> GroupDescription {
    let label = format!("[S^{d}]");
    if d % 2 == 0 {
        GroupDescription { group: FgAbGroup::free(1), generators: vec![label] }
    } else if d % 4 == 1 {
        GroupDescription { group: FgAbGroup::cyclic(2), generators: vec![label] }
    } else {
        GroupDescription { group: FgAbGroup::trivial(), generators: vec![] }
    }
}

/// Oriented bordism groups for dimensions 1..4, classical input data.
fn small_bordism_group(d: usize) -> Option<GroupDescription> {
    match d {
        1 | 2 | 3 => Some(GroupDescription { group: FgAbGroup::trivial(), generators: vec![] }),
        4 => Some(GroupDescription {
            group: FgAbGroup::free(1),
            generators: vec!["bordism".to_string()],
        }),
        _ => None,
    }
}

/// The split extension of the bordism group by the sphere subgroup, in
/// canonical form. Dimensions 5 and up need the bordism group supplied.
pub fn skk_group_structure(d: usize, omega: Option<&GroupDescription>) -> Result<GroupDescription> {
    if d == 0 {
        return Err(Error::contract("dimension must be at least 1"));
    }
    let omega = match omega {
        Some(o) => o.clone(),
        None => small_bordism_group(d).ok_or_else(|| {
            Error::contract(format!(
                "dimension {d} needs the bordism group supplied as a group description"
            ))
        })?,
    };
    let j = sphere_subgroup(d);
    let mut generators = j.generators.clone();
    generators.extend(omega.generators.iter().cloned());
    Ok(GroupDescription { group: j.group.direct_sum(&omega.group), generators })
}

/// A label for a closed nullbordant boundary component, optionally
/// fingerprinted by its homology groups to catch misuse of the same name
/// for different manifolds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryLabel {
    pub name: String,
    pub fingerprint: Option<Vec<FgAbGroup>>,
    /// None means unasserted; dimensions d-1 >= 4 require Some(true).
    pub nullbordant: Option<bool>,
}

impl BoundaryLabel {
    pub fn named(name: &str) -> Self {
        BoundaryLabel { name: name.to_string(), fingerprint: None, nullbordant: None }
    }
}

/// Canonical class in the cut-and-paste group of manifolds with boundary:
/// the closed part of the invariant plus the free-abelian word in the
/// boundary labels.
#[derive(Clone, Debug)]
pub struct SkBoundaryClass {
    pub dim: usize,
    pub sk: InvariantTuple,
    pub word: BTreeMap<String, usize>,
    fingerprints: BTreeMap<String, Vec<FgAbGroup>>,
}

pub fn sk_boundary_split(
    d: usize,
    sk_part: &InvariantTuple,
    boundary_labels: &[BoundaryLabel],
) -> Result<SkBoundaryClass> {
    if sk_part.dim != d {
        return Err(Error::contract(format!(
            "invariant tuple has dimension {}, expected {d}",
            sk_part.dim
        )));
    }
    if d == 0 {
        return Err(Error::contract("manifolds with boundary need dimension at least 1"));
    }
    let boundary_dim = d - 1;
    let mut word: BTreeMap<String, usize> = BTreeMap::new();
    let mut fingerprints: BTreeMap<String, Vec<FgAbGroup>> = BTreeMap::new();
    for label in boundary_labels {
        match (boundary_dim <= 3, label.nullbordant) {
            (true, Some(false)) => {
                return Err(Error::contract(format!(
                    "label '{}' asserted non-nullbordant, impossible in dimension {boundary_dim}",
                    label.name
                )))
            }
            (false, Some(true)) => {}
            (false, _) => {
                return Err(Error::contract(format!(
                    "label '{}' needs a nullbordance assertion in dimension {boundary_dim}",
                    label.name
                )))
            }
            (true, _) => {}
        }
        if let Some(fp) = &label.fingerprint {
            match fingerprints.get(&label.name) {
                Some(existing) if existing != fp => {
                    return Err(Error::contract(format!(
                        "label '{}' used with two different homology fingerprints",
                        label.name
                    )))
                }
                _ => {
                    fingerprints.insert(label.name.clone(), fp.clone());
                }
            }
        }
        *word.entry(label.name.clone()).or_insert(0) += 1;
    }
    Ok(SkBoundaryClass { dim: d, sk: sk_part.clone(), word, fingerprints })
}

impl SkBoundaryClass {
    /// Equality of classes: equality of the SK part (per the closed-case
    /// decider) and of the boundary word. Shared label names must carry
    /// matching fingerprints.
    pub fn equivalent(&self, other: &SkBoundaryClass) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::contract(format!(
                "dimension mismatch: {} vs {}",
                self.dim, other.dim
            )));
        }
        for (name, fp) in &self.fingerprints {
            if let Some(fp2) = other.fingerprints.get(name) {
                if fp != fp2 {
                    return Err(Error::contract(format!(
                        "label '{name}' names manifolds with different homology"
                    )));
                }
            }
        }
        Ok(sk_equivalent(&self.sk, &other.sk)? && self.word == other.word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;

    #[test]
    fn sphere_tuple() {
        let s3 = fixture("s3").unwrap();
        let t = invariant_tuple(&s3, None).unwrap();
        assert_eq!(t.dim, 3);
        assert_eq!(t.chi, 0);
        assert_eq!(t.kappa, Some(1));
        assert_eq!(t.bordism, Bordism::Trivial);
        assert_eq!(t.report(), "{dim:3, chi:0, kappa:1, bordism:trivial}");
    }

    #[test]
    fn cp2_tuple_has_signature_bordism() {
        let cp2 = fixture("cp2").unwrap();
        let t = invariant_tuple(&cp2, None).unwrap();
        assert_eq!(t.dim, 4);
        assert_eq!(t.chi, 3);
        assert_eq!(t.kappa, None);
        match &t.bordism {
            Bordism::Computed(s) => assert_eq!(s.clone().magnitude().to_string(), "1"),
            other => panic!("expected computed bordism, got {other}"),
        }
    }

    #[test]
    fn dimension_five_requires_label() {
        let p = fixture("s2xs1").unwrap(); // dimension 3: fine without label
        invariant_tuple(&p, None).unwrap();
        let q = fixture("cp2xs1").unwrap();
        assert!(invariant_tuple(&q, None).is_err());
        let t = invariant_tuple(&q, Some("0")).unwrap();
        assert_eq!(t.bordism, Bordism::Supplied("0".into()));
        assert_eq!(t.kappa, Some(1));
    }

    #[test]
    fn skk_decider_is_componentwise() {
        let a = InvariantTuple { dim: 5, chi: 0, kappa: Some(1), bordism: Bordism::Supplied("0".into()) };
        let b = InvariantTuple { dim: 5, chi: 0, kappa: Some(0), bordism: Bordism::Supplied("0".into()) };
        assert!(skk_equivalent(&a, &a.clone()).unwrap());
        assert!(!skk_equivalent(&a, &b).unwrap());
        let c = InvariantTuple { dim: 4, chi: 4, kappa: None, bordism: Bordism::Computed(BigInt::from(0)) };
        assert!(skk_equivalent(&a, &c).is_err());
    }

    #[test]
    fn sk_decider_small_dimensions() {
        let t3 = invariant_tuple(&fixture("t3").unwrap(), None).unwrap();
        let s3 = invariant_tuple(&fixture("s3").unwrap(), None).unwrap();
        assert!(sk_equivalent(&t3, &s3).unwrap());
        assert!(!skk_equivalent(&t3, &s3).unwrap());

        let s2 = invariant_tuple(&fixture("s2").unwrap(), None).unwrap();
        let t2 = invariant_tuple(&fixture("t2").unwrap(), None).unwrap();
        assert!(!sk_equivalent(&s2, &t2).unwrap());
    }

    #[test]
    fn sk_above_four_needs_convention() {
        let a = InvariantTuple { dim: 5, chi: 0, kappa: Some(1), bordism: Bordism::Supplied("x".into()) };
        let b = InvariantTuple { dim: 5, chi: 0, kappa: Some(0), bordism: Bordism::Supplied("y".into()) };
        assert!(sk_equivalent(&a, &b).is_err());
        let mut conv = SkConvention::default();
        conv.quotient_class.insert("x".into(), "0".into());
        conv.quotient_class.insert("y".into(), "0".into());
        assert!(sk_equivalent_with(&a, &b, &conv).unwrap());
    }

    #[test]
    fn skk_groups_match_the_sphere_subgroup_table() {
        let g1 = skk_group_structure(1, None).unwrap();
        assert_eq!(g1.group, FgAbGroup::cyclic(2));
        assert_eq!(g1.generators, vec!["[S^1]"]);
        let g2 = skk_group_structure(2, None).unwrap();
        assert_eq!(g2.group, FgAbGroup::free(1));
        let g3 = skk_group_structure(3, None).unwrap();
        assert!(g3.group.is_trivial());
        let g4 = skk_group_structure(4, None).unwrap();
        assert_eq!(g4.group, FgAbGroup::free(2));
        assert_eq!(g4.generators, vec!["[S^4]", "bordism"]);
        assert!(skk_group_structure(5, None).is_err());
        let omega5 = GroupDescription { group: FgAbGroup::trivial(), generators: vec![] };
        let g5 = skk_group_structure(5, Some(&omega5)).unwrap();
        assert_eq!(g5.group, FgAbGroup::cyclic(2));
    }

    #[test]
    fn deciders_are_equivalence_relations_and_skk_refines_sk() {
        // all fixtures of dimension <= 4, with both orientations of cp2
        let mut tuples = Vec::new();
        for name in ["s1", "s2", "s3", "s4", "t2", "t3", "t4", "cp2", "s2xs1", "s3xs1", "s2xs2"] {
            tuples.push(invariant_tuple(&fixture(name).unwrap(), None).unwrap());
        }
        let cp2_rev = fixture("cp2").unwrap().reversed_orientation().unwrap();
        tuples.push(invariant_tuple(&cp2_rev, None).unwrap());

        let same_dim: Vec<(usize, usize)> = (0..tuples.len())
            .flat_map(|i| (0..tuples.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| tuples[i].dim == tuples[j].dim)
            .collect();
        for &(i, j) in &same_dim {
            // reflexivity and symmetry
            assert!(skk_equivalent(&tuples[i], &tuples[i]).unwrap());
            assert!(sk_equivalent(&tuples[i], &tuples[i]).unwrap());
            assert_eq!(
                skk_equivalent(&tuples[i], &tuples[j]).unwrap(),
                skk_equivalent(&tuples[j], &tuples[i]).unwrap()
            );
            assert_eq!(
                sk_equivalent(&tuples[i], &tuples[j]).unwrap(),
                sk_equivalent(&tuples[j], &tuples[i]).unwrap()
            );
            // SKK refines SK
            if skk_equivalent(&tuples[i], &tuples[j]).unwrap() {
                assert!(sk_equivalent(&tuples[i], &tuples[j]).unwrap());
            }
            // transitivity
            for k in 0..tuples.len() {
                if tuples[k].dim != tuples[i].dim {
                    continue;
                }
                for rel in [skk_equivalent, sk_equivalent] {
                    if rel(&tuples[i], &tuples[j]).unwrap() && rel(&tuples[j], &tuples[k]).unwrap()
                    {
                        assert!(rel(&tuples[i], &tuples[k]).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn kappa_is_skk_but_not_sk_invariant() {
        // dimension 3: equal chi (0) and trivial bordism, kappa 1 vs 0
        let s3 = invariant_tuple(&fixture("s3").unwrap(), None).unwrap();
        let t3 = invariant_tuple(&fixture("t3").unwrap(), None).unwrap();
        assert_eq!(s3.kappa, Some(1));
        assert_eq!(t3.kappa, Some(0));
        assert_eq!(s3.chi, t3.chi);
        assert_eq!(s3.bordism, t3.bordism);
        assert!(!skk_equivalent(&s3, &t3).unwrap());
        assert!(sk_equivalent(&s3, &t3).unwrap());
    }

    #[test]
    fn mapping_tori_have_vanishing_chi_and_trivial_bordism_slot() {
        use crate::triangulation::mapping_torus;
        let s2 = fixture("s2").unwrap();
        // a 3-cycle preserves orientation, so the mapping torus is oriented
        let torus = mapping_torus(&s2, &[1, 2, 0, 3]).unwrap();
        let tuple = invariant_tuple(&torus, None).unwrap();
        assert_eq!(tuple.chi, 0);
        assert_eq!(tuple.bordism, Bordism::Trivial);
    }

    #[test]
    fn boundary_split_examples() {
        // a disk: chi = 1, one boundary circle
        let disk = InvariantTuple::presentation(2, 1);
        let class = sk_boundary_split(2, &disk, &[BoundaryLabel::named("S^1")]).unwrap();
        assert_eq!(class.word.get("S^1"), Some(&1));

        // solid torus vs thickened sphere: distinguished by boundary words
        let solid_torus = sk_boundary_split(
            3,
            &InvariantTuple::presentation(3, 0),
            &[BoundaryLabel::named("T^2")],
        )
        .unwrap();
        let thick_sphere = sk_boundary_split(
            3,
            &InvariantTuple::presentation(3, 2),
            &[BoundaryLabel::named("S^2"), BoundaryLabel::named("S^2")],
        )
        .unwrap();
        assert!(!solid_torus.equivalent(&thick_sphere).unwrap());

        // closed manifold: empty word, class of the manifold itself
        let s3 = invariant_tuple(&fixture("s3").unwrap(), None).unwrap();
        let closed = sk_boundary_split(3, &s3, &[]).unwrap();
        assert!(closed.word.is_empty());
        assert!(closed.equivalent(&closed.clone()).unwrap());
    }

    #[test]
    fn boundary_split_contract_errors() {
        let pres = InvariantTuple::presentation(3, 0);
        let bad = BoundaryLabel {
            name: "X".into(),
            fingerprint: None,
            nullbordant: Some(false),
        };
        assert!(sk_boundary_split(3, &pres, &[bad]).is_err());

        let pres5 = InvariantTuple::presentation(5, 0);
        let unasserted = BoundaryLabel::named("Y");
        assert!(sk_boundary_split(5, &pres5, &[unasserted]).is_err());

        let fp1 = BoundaryLabel {
            name: "Z".into(),
            fingerprint: Some(vec![FgAbGroup::free(1)]),
            nullbordant: None,
        };
        let fp2 = BoundaryLabel {
            name: "Z".into(),
            fingerprint: Some(vec![FgAbGroup::free(2)]),
            nullbordant: None,
        };
        let pres2 = InvariantTuple::presentation(2, 0);
        let err = sk_boundary_split(2, &pres2, &[fp1, fp2]).unwrap_err();
        assert!(err.to_string().contains("fingerprint"), "{err}");
    }
}
