//! Finite categories presented by explicit composition tables.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Morphism {
    pub id: String,
    pub src: String,
    pub dst: String,
}

/// A finite category: objects, morphisms (including identities), and a
/// total composition table on composable pairs. `composition` is keyed by
/// `(f, g)` with `dst(f) = src(g)` and holds the composite `f;g : src(f) -> dst(g)`.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub composition: BTreeMap<(String, String), String>,
}

impl FiniteCategory {
    pub fn morphism(&self, id: &str) -> Option<&Morphism> {
        self.morphisms.iter().find(|m| m.id == id)
    }

    pub fn compose(&self, f: &str, g: &str) -> Option<&String> {
        self.composition.get(&(f.to_string(), g.to_string()))
    }

    /// Identity morphism of each object, as determined by the table.
    pub fn identities(&self) -> Result<BTreeMap<String, String>> {
        let mut ids = BTreeMap::new();
        for o in &self.objects {
            let mut found = None;
            for e in &self.morphisms {
                if e.src != *o || e.dst != *o {
                    continue;
                }
                let neutral = self.morphisms.iter().all(|f| {
                    let left = f.dst != *o
                        || self.compose(&f.id, &e.id).map(|c| c == &f.id).unwrap_or(false);
                    let right = f.src != *o
                        || self.compose(&e.id, &f.id).map(|c| c == &f.id).unwrap_or(false);
                    left && right
                });
                if neutral {
                    found = Some(e.id.clone());
                    break;
                }
            }
            match found {
                Some(id) => {
                    ids.insert(o.clone(), id);
                }
                None => {
                    return Err(Error::structural(format!("object {o} has no identity morphism")))
                }
            }
        }
        Ok(ids)
    }

    /// Check identities, totality of the table on composable pairs, and
    /// associativity; errors name the violating pair or triple.
    pub fn validate(&self) -> Result<()> {
        let objset: BTreeSet<&String> = self.objects.iter().collect();
        let mut morset = BTreeSet::new();
        for m in &self.morphisms {
            if !objset.contains(&m.src) || !objset.contains(&m.dst) {
                return Err(Error::structural(format!(
                    "morphism {} references unknown objects {} -> {}",
                    m.id, m.src, m.dst
                )));
            }
            if !morset.insert(&m.id) {
                return Err(Error::structural(format!("duplicate morphism id {}", m.id)));
            }
        }
        for ((f, g), h) in &self.composition {
            let (mf, mg) = match (self.morphism(f), self.morphism(g)) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    return Err(Error::structural(format!(
                        "composition entry ({f}, {g}) references unknown morphisms"
                    )))
                }
            };
            let mh = self.morphism(h).ok_or_else(|| {
                Error::structural(format!("composite {h} of ({f}, {g}) is not a morphism"))
            })?;
            if mf.dst != mg.src {
                return Err(Error::structural(format!("({f}, {g}) is not a composable pair")));
            }
            if mh.src != mf.src || mh.dst != mg.dst {
                return Err(Error::structural(format!(
                    "composite of ({f}, {g}) has wrong endpoints: {h}"
                )));
            }
        }
        for f in &self.morphisms {
            for g in &self.morphisms {
                if f.dst != g.src {
                    continue;
                }
                if self.compose(&f.id, &g.id).is_none() {
                    return Err(Error::structural(format!(
                        "composition table is missing the composable pair ({}, {})",
                        f.id, g.id
                    )));
                }
            }
        }
        self.identities()?;
        for f in &self.morphisms {
            for g in &self.morphisms {
                if f.dst != g.src {
                    continue;
                }
                for h in &self.morphisms {
                    if g.dst != h.src {
                        continue;
                    }
                    let fg = self.compose(&f.id, &g.id).unwrap();
                    let gh = self.compose(&g.id, &h.id).unwrap();
                    let left = self.compose(fg, &h.id).ok_or_else(|| {
                        Error::structural(format!(
                            "composition table is missing ({fg}, {})",
                            h.id
                        ))
                    })?;
                    let right = self.compose(&f.id, gh).ok_or_else(|| {
                        Error::structural(format!(
                            "composition table is missing ({}, {gh})",
                            f.id
                        ))
                    })?;
                    if left != right {
                        return Err(Error::structural(format!(
                            "associativity fails on the triple ({}, {}, {})",
                            f.id, g.id, h.id
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The one-object category with only its identity.
    pub fn point() -> Self {
        FiniteCategory {
            objects: vec!["*".into()],
            morphisms: vec![Morphism { id: "id*".into(), src: "*".into(), dst: "*".into() }],
            composition: BTreeMap::from([(("id*".into(), "id*".into()), "id*".into())]),
        }
    }

    /// The nerve of a finite total order 0 < 1 < ... < n-1.
    pub fn chain_poset(n: usize) -> Self {
        let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut morphisms = Vec::new();
        for i in 0..n {
            for j in i..n {
                morphisms.push(Morphism {
                    id: format!("m{i}_{j}"),
                    src: i.to_string(),
                    dst: j.to_string(),
                });
            }
        }
        let mut composition = BTreeMap::new();
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    composition
                        .insert((format!("m{i}_{j}"), format!("m{j}_{k}")), format!("m{i}_{k}"));
                }
            }
        }
        FiniteCategory { objects, morphisms, composition }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_category_is_valid() {
        FiniteCategory::point().validate().unwrap();
    }

    #[test]
    fn chain_poset_is_valid() {
        FiniteCategory::chain_poset(3).validate().unwrap();
    }

    #[test]
    fn truncated_free_monoid_is_rejected() {
        // one object, morphisms id, x, x^2, with x.x^2 missing from the table
        let cat = FiniteCategory {
            objects: vec!["*".into()],
            morphisms: vec![
                Morphism { id: "id".into(), src: "*".into(), dst: "*".into() },
                Morphism { id: "x".into(), src: "*".into(), dst: "*".into() },
                Morphism { id: "xx".into(), src: "*".into(), dst: "*".into() },
            ],
            composition: BTreeMap::from([
                (("id".into(), "id".into()), "id".into()),
                (("id".into(), "x".into()), "x".into()),
                (("x".into(), "id".into()), "x".into()),
                (("id".into(), "xx".into()), "xx".into()),
                (("xx".into(), "id".into()), "xx".into()),
                (("x".into(), "x".into()), "xx".into()),
            ]),
        };
        let err = cat.validate().unwrap_err();
        assert!(err.to_string().contains("missing"), "{err}");
        assert!(err.to_string().contains("x"), "{err}");
    }

    #[test]
    fn missing_identity_detected() {
        let cat = FiniteCategory {
            objects: vec!["a".into()],
            morphisms: vec![],
            composition: BTreeMap::new(),
        };
        assert!(cat.validate().is_err());
    }
}
