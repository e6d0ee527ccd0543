//! Finite simplicial and semisimplicial sets presented by their
//! nondegenerate simplices.
//!
//! A cell's face can be a degenerate simplex, which is recorded as a pair
//! (nondegenerate target, degeneracy word). Words are kept in the normal
//! form `s_{i1} ... s_{ik}` with `i1 > ... > ik`; the rewriting rules of the
//! simplicial identities reduce any expression to this form, which makes
//! equality of simplices decidable.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::category::FiniteCategory;
use crate::chain::{ChainComplex, SparseMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Simplicial,
    Semisimplicial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellRef {
    pub degree: usize,
    pub index: usize,
}

/// A possibly-degenerate simplex: a degeneracy word in normal form applied
/// to a nondegenerate cell.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    pub word: Vec<usize>,
    pub cell: CellRef,
}

impl Element {
    pub fn of(cell: CellRef) -> Self {
        Element { word: Vec::new(), cell }
    }

    pub fn degree(&self) -> usize {
        self.cell.degree + self.word.len()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.word.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceTarget {
    pub cell: CellRef,
    pub word: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SimplicialObject {
    kind: Kind,
    ids: Vec<Vec<String>>,                 // per degree
    faces: Vec<Vec<Vec<FaceTarget>>>,      // per degree >= 1, per cell, per face index
    index: BTreeMap<String, CellRef>,
}

/// Rewrite a degeneracy word to the strictly decreasing normal form using
/// `s_i s_j = s_{j+1} s_i` for `i <= j`.
pub fn normalize_word(mut w: Vec<usize>) -> Vec<usize> {
    loop {
        let mut changed = false;
        for t in 0..w.len().saturating_sub(1) {
            if w[t] <= w[t + 1] {
                let (a, b) = (w[t], w[t + 1]);
                w[t] = b + 1;
                w[t + 1] = a;
                changed = true;
            }
        }
        if !changed {
            return w;
        }
    }
}

impl SimplicialObject {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn top_degree(&self) -> usize {
        self.ids.len().saturating_sub(1)
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.ids.iter().map(|v| v.len()).collect()
    }

    pub fn cell_count(&self, degree: usize) -> usize {
        self.ids.get(degree).map_or(0, |v| v.len())
    }

    pub fn cell_id(&self, cell: CellRef) -> &str {
        &self.ids[cell.degree][cell.index]
    }

    pub fn cell_by_id(&self, id: &str) -> Option<CellRef> {
        self.index.get(id).copied()
    }

    pub fn face_target(&self, cell: CellRef, i: usize) -> &FaceTarget {
        &self.faces[cell.degree][cell.index][i]
    }

    /// s_j applied to an element.
    pub fn apply_s(&self, e: &Element, j: usize) -> Element {
        debug_assert!(j <= e.degree());
        let mut w = Vec::with_capacity(e.word.len() + 1);
        w.push(j);
        w.extend_from_slice(&e.word);
        Element { word: normalize_word(w), cell: e.cell }
    }

    /// d_i applied to an element, pushing the face through the degeneracy
    /// word with the simplicial identities.
    pub fn apply_d(&self, e: &Element, i: usize) -> Element {
        debug_assert!(i <= e.degree());
        let mut out: Vec<usize> = Vec::with_capacity(e.word.len());
        let mut icur = i;
        for (k, &j) in e.word.iter().enumerate() {
            if icur < j {
                out.push(j - 1);
            } else if icur == j || icur == j + 1 {
                // d_i s_j = id
                out.extend_from_slice(&e.word[k + 1..]);
                return Element { word: normalize_word(out), cell: e.cell };
            } else {
                out.push(j);
                icur -= 1;
            }
        }
        let target = self.face_target(e.cell, icur);
        out.extend_from_slice(&target.word);
        Element { word: normalize_word(out), cell: target.cell }
    }

    /// Check every structural invariant, including the simplicial
    /// identities `d_i d_j = d_{j-1} d_i` for `i < j` on all cells.
    pub fn validate(&self) -> Result<()> {
        for (degree, ids) in self.ids.iter().enumerate() {
            for (index, id) in ids.iter().enumerate() {
                let c = CellRef { degree, index };
                if self.index.get(id) != Some(&c) {
                    return Err(Error::structural(format!("simplex id {id} is not unique")));
                }
            }
        }
        for degree in 1..self.ids.len() {
            if self.faces[degree].len() != self.ids[degree].len() {
                return Err(Error::structural(format!("missing face table in degree {degree}")));
            }
            for (index, fs) in self.faces[degree].iter().enumerate() {
                let id = &self.ids[degree][index];
                if fs.len() != degree + 1 {
                    return Err(Error::structural(format!(
                        "simplex {id} of degree {degree} has {} faces, expected {}",
                        fs.len(),
                        degree + 1
                    )));
                }
                for (i, t) in fs.iter().enumerate() {
                    if t.cell.degree >= self.ids.len()
                        || t.cell.index >= self.ids[t.cell.degree].len()
                    {
                        return Err(Error::structural(format!(
                            "face {i} of {id} references a missing simplex"
                        )));
                    }
                    if t.cell.degree + t.word.len() != degree - 1 {
                        return Err(Error::structural(format!(
                            "face {i} of {id} has inconsistent degree"
                        )));
                    }
                    if self.kind == Kind::Semisimplicial && !t.word.is_empty() {
                        return Err(Error::structural(format!(
                            "face {i} of {id} carries a degeneracy word in a semisimplicial object"
                        )));
                    }
                    let normal = normalize_word(t.word.clone());
                    if normal != t.word {
                        return Err(Error::structural(format!(
                            "face {i} of {id} has a degeneracy word not in normal form"
                        )));
                    }
                    // each s index must be within range when applied right to left
                    let m = t.word.len();
                    for (pos, &s) in t.word.iter().enumerate() {
                        if s > t.cell.degree + (m - 1 - pos) {
                            return Err(Error::structural(format!(
                                "face {i} of {id} has out-of-range degeneracy index {s}"
                            )));
                        }
                    }
                }
            }
        }
        // simplicial identities
        for degree in 2..self.ids.len() {
            for index in 0..self.ids[degree].len() {
                let x = Element::of(CellRef { degree, index });
                for j in 1..=degree {
                    for i in 0..j {
                        let a = self.apply_d(&self.apply_d(&x, j), i);
                        let b = self.apply_d(&self.apply_d(&x, i), j - 1);
                        if a != b {
                            return Err(Error::structural(format!(
                                "simplicial identity d_{i} d_{j} fails on {}",
                                self.cell_id(x.cell)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Normalized chain complex: one generator per nondegenerate simplex,
    /// faces with degenerate targets contribute zero.
    pub fn normalized_chains(&self) -> ChainComplex {
        let ranks: Vec<usize> = self.ids.iter().map(|v| v.len()).collect();
        let mut boundaries = vec![SparseMatrix::zero(0, ranks[0])];
        for degree in 1..self.ids.len() {
            let mut m = SparseMatrix::zero(ranks[degree - 1], ranks[degree]);
            for index in 0..self.ids[degree].len() {
                let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (i, t) in self.faces[degree][index].iter().enumerate() {
                    if !t.word.is_empty() {
                        continue;
                    }
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    *acc.entry(t.cell.index).or_insert_with(|| BigInt::from(0)) +=
                        BigInt::from(sign);
                }
                for (row, v) in acc {
                    m.set(row, index, v);
                }
            }
            boundaries.push(m);
        }
        ChainComplex::from_sparse(ranks, boundaries)
            .expect("normalized chains square to zero")
    }

    /// Text format, one declaration per line.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(out, "kind {}", match self.kind {
            Kind::Simplicial => "simplicial",
            Kind::Semisimplicial => "semisimplicial",
        })
        .unwrap();
        for (degree, ids) in self.ids.iter().enumerate() {
            for id in ids {
                writeln!(out, "simplex {degree} {id}").unwrap();
            }
        }
        for degree in 1..self.ids.len() {
            for (index, fs) in self.faces[degree].iter().enumerate() {
                for (i, t) in fs.iter().enumerate() {
                    let mut line = format!(
                        "face {} {} {}",
                        self.ids[degree][index],
                        i,
                        self.cell_id(t.cell)
                    );
                    for s in &t.word {
                        write!(line, " {s}").unwrap();
                    }
                    writeln!(out, "{line}").unwrap();
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<SimplicialObject> {
        let mut kind = None;
        let mut cells: Vec<(usize, String)> = Vec::new();
        let mut faces: Vec<(usize, String, usize, String, Vec<usize>)> = Vec::new();
        for (ln0, raw) in text.lines().enumerate() {
            let ln = ln0 + 1;
            let line = raw.split('#').next().unwrap_or("");
            let mut toks = line.split_whitespace();
            let Some(head) = toks.next() else { continue };
            match head {
                "kind" => {
                    kind = Some(match toks.next() {
                        Some("simplicial") => Kind::Simplicial,
                        Some("semisimplicial") => Kind::Semisimplicial,
                        other => {
                            return Err(Error::parse(ln, format!("bad kind {other:?}")))
                        }
                    });
                }
                "simplex" => {
                    let d: usize = toks
                        .next()
                        .ok_or_else(|| Error::parse(ln, "missing degree"))?
                        .parse()
                        .map_err(|_| Error::parse(ln, "bad degree"))?;
                    let id = toks.next().ok_or_else(|| Error::parse(ln, "missing id"))?;
                    cells.push((d, id.to_string()));
                }
                "face" => {
                    let id = toks.next().ok_or_else(|| Error::parse(ln, "missing id"))?;
                    let i: usize = toks
                        .next()
                        .ok_or_else(|| Error::parse(ln, "missing face index"))?
                        .parse()
                        .map_err(|_| Error::parse(ln, "bad face index"))?;
                    let target = toks.next().ok_or_else(|| Error::parse(ln, "missing target"))?;
                    let word: Vec<usize> = toks
                        .map(|t| t.parse().map_err(|_| Error::parse(ln, format!("bad degeneracy index '{t}'"))))
                        .collect::<Result<_>>()?;
                    faces.push((ln, id.to_string(), i, target.to_string(), word));
                }
                other => return Err(Error::parse(ln, format!("unknown declaration '{other}'"))),
            }
        }
        let kind = kind.ok_or_else(|| Error::parse(1, "missing 'kind' line"))?;
        let mut builder = SimplicialObjectBuilder::new(kind);
        for (d, id) in cells {
            builder.cell(d, &id);
        }
        for (ln, id, i, target, word) in faces {
            builder
                .face_checked(&id, i, &target, word)
                .map_err(|e| Error::parse(ln, e.to_string()))?;
        }
        builder.finish()
    }
}

pub struct SimplicialObjectBuilder {
    kind: Kind,
    cells: Vec<(usize, String)>,
    faces: BTreeMap<(String, usize), (String, Vec<usize>)>,
}

impl SimplicialObjectBuilder {
    pub fn new(kind: Kind) -> Self {
        SimplicialObjectBuilder { kind, cells: Vec::new(), faces: BTreeMap::new() }
    }

    pub fn cell(&mut self, degree: usize, id: &str) -> &mut Self {
        self.cells.push((degree, id.to_string()));
        self
    }

    pub fn face(&mut self, id: &str, i: usize, target: &str, word: Vec<usize>) -> &mut Self {
        self.faces.insert((id.to_string(), i), (target.to_string(), word));
        self
    }

    fn face_checked(&mut self, id: &str, i: usize, target: &str, word: Vec<usize>) -> Result<()> {
        if self.faces.contains_key(&(id.to_string(), i)) {
            return Err(Error::structural(format!("duplicate face declaration {id} {i}")));
        }
        self.face(id, i, target, word);
        Ok(())
    }

    /// Assemble and validate.
    pub fn finish(self) -> Result<SimplicialObject> {
        let top = self.cells.iter().map(|(d, _)| *d).max().unwrap_or(0);
        let mut ids: Vec<Vec<String>> = vec![Vec::new(); top + 1];
        let mut index = BTreeMap::new();
        for (d, id) in &self.cells {
            let c = CellRef { degree: *d, index: ids[*d].len() };
            if index.insert(id.clone(), c).is_some() {
                return Err(Error::structural(format!("simplex id {id} declared twice")));
            }
            ids[*d].push(id.clone());
        }
        let mut faces: Vec<Vec<Vec<FaceTarget>>> = vec![Vec::new(); top + 1];
        for degree in 1..=top {
            for id in &ids[degree] {
                let mut fs = Vec::new();
                for i in 0..=degree {
                    let (target, word) =
                        self.faces.get(&(id.clone(), i)).ok_or_else(|| {
                            Error::structural(format!("missing face {i} of simplex {id}"))
                        })?;
                    let cell = *index.get(target).ok_or_else(|| {
                        Error::structural(format!("face {i} of {id} targets unknown simplex {target}"))
                    })?;
                    fs.push(FaceTarget { cell, word: word.clone() });
                }
                faces[degree].push(fs);
            }
        }
        let obj = SimplicialObject { kind: self.kind, ids, faces, index };
        obj.validate()?;
        Ok(obj)
    }
}

/// Nerve of a finite category.
///
/// Nondegenerate n-simplices are composable strings of n non-identity
/// morphisms. The semisimplicial kind is the nerve of the category with its
/// identities removed. Categories whose non-identity morphisms admit a
/// composable cycle have an infinite nerve and are rejected.
pub fn nerve(cat: &FiniteCategory, kind: Kind) -> Result<SimplicialObject> {
    cat.validate()?;
    let identities = cat.identities()?;
    let is_identity =
        |m: &str| -> bool { identities.values().any(|id| id == m) };
    let non_identity: Vec<&str> = cat
        .morphisms
        .iter()
        .filter(|m| !is_identity(&m.id))
        .map(|m| m.id.as_str())
        .collect();

    // composability graph on non-identity morphisms must be acyclic
    let n = non_identity.len();
    let pos: BTreeMap<&str, usize> = non_identity.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &f in &non_identity {
        for &g in &non_identity {
            if cat.morphism(f).unwrap().dst == cat.morphism(g).unwrap().src {
                adj[pos[f]].push(pos[g]);
            }
        }
    }
    let mut state = vec![0u8; n]; // 0 unvisited, 1 on stack, 2 done
    fn dfs(v: usize, adj: &[Vec<usize>], state: &mut [u8]) -> bool {
        state[v] = 1;
        for &w in &adj[v] {
            if state[w] == 1 {
                return false;
            }
            if state[w] == 0 && !dfs(w, adj, state) {
                return false;
            }
        }
        state[v] = 2;
        true
    }
    for v in 0..n {
        if state[v] == 0 && !dfs(v, &adj, &mut state) {
            return Err(Error::structural(
                "category has a composable cycle of non-identity morphisms; its nerve is not finite",
            ));
        }
    }

    // enumerate composable strings, degree by degree
    let mut strings: Vec<Vec<Vec<String>>> = vec![vec![]];
    let mut current: Vec<Vec<String>> = non_identity.iter().map(|&m| vec![m.to_string()]).collect();
    while !current.is_empty() {
        strings.push(current.clone());
        let mut next = Vec::new();
        for s in &current {
            let last = cat.morphism(s.last().unwrap()).unwrap();
            for &g in &non_identity {
                if cat.morphism(g).unwrap().src == last.dst {
                    let mut ext = s.clone();
                    ext.push(g.to_string());
                    next.push(ext);
                }
            }
        }
        current = next;
    }

    let string_id = |s: &[String]| -> String { s.join(".") };
    let mut builder = SimplicialObjectBuilder::new(kind);
    for o in &cat.objects {
        builder.cell(0, o);
    }
    for (degree, ss) in strings.iter().enumerate().skip(1) {
        for s in ss {
            builder.cell(degree, &string_id(s));
        }
    }
    for (degree, ss) in strings.iter().enumerate().skip(1) {
        for s in ss {
            let id = string_id(s);
            for i in 0..=degree {
                let (target, word): (String, Vec<usize>) = if degree == 1 {
                    let m = cat.morphism(&s[0]).unwrap();
                    if i == 0 {
                        (m.dst.clone(), vec![])
                    } else {
                        (m.src.clone(), vec![])
                    }
                } else if i == 0 {
                    (string_id(&s[1..]), vec![])
                } else if i == degree {
                    (string_id(&s[..degree - 1]), vec![])
                } else {
                    let c = cat.compose(&s[i - 1], &s[i]).unwrap().clone();
                    if is_identity(&c) {
                        unreachable!("acyclic category cannot compose non-identities to an identity");
                    }
                    let mut seq = Vec::new();
                    seq.extend_from_slice(&s[..i - 1]);
                    seq.push(c);
                    seq.extend_from_slice(&s[i + 1..]);
                    (string_id(&seq), vec![])
                };
                builder.face(&id, i, &target, word);
            }
        }
    }
    builder.finish()
}

/// Left adjoint to the forgetful map from simplicial to semisimplicial
/// sets: the nondegenerate simplices and their faces are kept verbatim, the
/// degeneracies exist formally.
pub fn free_degeneracies(x: &SimplicialObject) -> Result<SimplicialObject> {
    if x.kind != Kind::Semisimplicial {
        return Err(Error::contract("free_degeneracies expects a semisimplicial object"));
    }
    let mut out = x.clone();
    out.kind = Kind::Simplicial;
    out.validate()?;
    Ok(out)
}

/// Edgewise subdivision: degree n of the subdivision is degree 2n+1 of the
/// input, with faces `d_i . d_{2n+1-i}` and degeneracies `s_i . s_{2n-i}`.
///
/// For the simplicial kind, degenerate simplices of the input contribute, so
/// the subdivision presentation is computed on the full simplex sets via the
/// degeneracy-word calculus; for the semisimplicial kind only the
/// nondegenerate odd-degree simplices exist.
pub fn edgewise_subdivide(x: &SimplicialObject) -> Result<SimplicialObject> {
    match x.kind {
        Kind::Semisimplicial => subdivide_semisimplicial(x),
        Kind::Simplicial => subdivide_simplicial(x),
    }
}

fn subdivide_semisimplicial(x: &SimplicialObject) -> Result<SimplicialObject> {
    let top = x.top_degree();
    let mut builder = SimplicialObjectBuilder::new(Kind::Semisimplicial);
    let mut degrees = Vec::new();
    let mut n = 0;
    while 2 * n + 1 <= top {
        let m = 2 * n + 1;
        let cells: Vec<usize> = (0..x.cell_count(m)).collect();
        for &index in &cells {
            builder.cell(n, x.cell_id(CellRef { degree: m, index }));
        }
        degrees.push((n, m, cells));
        n += 1;
    }
    for &(n, m, ref cells) in &degrees {
        if n == 0 {
            continue;
        }
        for &index in cells {
            let e = Element::of(CellRef { degree: m, index });
            let id = x.cell_id(e.cell).to_string();
            for i in 0..=n {
                let f = x.apply_d(&x.apply_d(&e, m - i), i);
                debug_assert!(f.is_nondegenerate());
                builder.face(&id, i, x.cell_id(f.cell), vec![]);
            }
        }
    }
    builder.finish()
}

fn subdivide_simplicial(x: &SimplicialObject) -> Result<SimplicialObject> {
    let dim = x.top_degree();

    // all simplices (including degenerate ones) of each degree up to 2*dim+1
    let mut elements: Vec<Vec<Element>> = Vec::new();
    for m in 0..=2 * dim + 1 {
        let mut set: BTreeSet<Element> = BTreeSet::new();
        if m <= dim {
            for index in 0..x.cell_count(m) {
                set.insert(Element::of(CellRef { degree: m, index }));
            }
        }
        if m > 0 {
            let prev = elements[m - 1].clone();
            for e in &prev {
                for j in 0..m {
                    set.insert(x.apply_s(e, j));
                }
            }
        }
        elements.push(set.into_iter().collect());
    }

    // Eilenberg-Zilber decomposition in the subdivision: for every element
    // of odd degree, record the sd-degeneracy word over its sd-nondegenerate
    // core. Cores are exactly the elements never hit by an sd-degeneracy.
    let mut decomposition: BTreeMap<Element, (Vec<usize>, Element)> = BTreeMap::new();
    for n in 0..dim {
        let m = 2 * n + 1;
        for e in &elements[m] {
            let (word, core) = match decomposition.get(e) {
                Some((w, c)) => (w.clone(), c.clone()),
                None => (vec![], e.clone()),
            };
            for i in 0..=n {
                // s_i^sd = s_{2n+2-i} . s_i
                let image = x.apply_s(&x.apply_s(e, i), m + 1 - i);
                let mut w = Vec::with_capacity(word.len() + 1);
                w.push(i);
                w.extend_from_slice(&word);
                let entry = (normalize_word(w), core.clone());
                if let Some(existing) = decomposition.get(&image) {
                    debug_assert_eq!(existing, &entry, "ambiguous sd decomposition");
                } else {
                    decomposition.insert(image, entry);
                }
            }
        }
    }

    let sd_id = |e: &Element| -> String {
        let mut id = x.cell_id(e.cell).to_string();
        for s in &e.word {
            id.push_str(&format!(".s{s}"));
        }
        id
    };

    let mut builder = SimplicialObjectBuilder::new(Kind::Simplicial);
    let mut cores: Vec<Vec<Element>> = Vec::new();
    for n in 0..=dim {
        let m = 2 * n + 1;
        let cs: Vec<Element> = elements[m]
            .iter()
            .filter(|e| !decomposition.contains_key(e))
            .cloned()
            .collect();
        for e in &cs {
            builder.cell(n, &sd_id(e));
        }
        cores.push(cs);
    }
    for (n, cs) in cores.iter().enumerate() {
        if n == 0 {
            continue;
        }
        let m = 2 * n + 1;
        for e in cs {
            let id = sd_id(e);
            for i in 0..=n {
                // d_i^sd = d_i . d_{2n+1-i}
                let f = x.apply_d(&x.apply_d(e, m - i), i);
                let (word, core) = match decomposition.get(&f) {
                    Some((w, c)) => (w.clone(), c.clone()),
                    None => (vec![], f.clone()),
                };
                builder.face(&id, i, &sd_id(&core), word);
            }
        }
    }
    builder.finish()
}

/// Convenience constructors for the basic fixtures.
pub mod objects {
    use super::*;

    /// A single point.
    pub fn point(kind: Kind) -> SimplicialObject {
        let mut b = SimplicialObjectBuilder::new(kind);
        b.cell(0, "pt");
        b.finish().expect("point is valid")
    }

    /// One vertex, one edge with both faces at the vertex.
    pub fn circle(kind: Kind) -> SimplicialObject {
        let mut b = SimplicialObjectBuilder::new(kind);
        b.cell(0, "v");
        b.cell(1, "e");
        b.face("e", 0, "v", vec![]);
        b.face("e", 1, "v", vec![]);
        b.finish().expect("circle is valid")
    }

    /// The 2-simplex with its 7 nondegenerate simplices.
    pub fn delta2(kind: Kind) -> SimplicialObject {
        let mut b = SimplicialObjectBuilder::new(kind);
        for v in ["v0", "v1", "v2"] {
            b.cell(0, v);
        }
        for e in ["e01", "e02", "e12"] {
            b.cell(1, e);
        }
        b.cell(2, "t");
        // edge [a, b]: face 0 = b, face 1 = a
        b.face("e01", 0, "v1", vec![]);
        b.face("e01", 1, "v0", vec![]);
        b.face("e02", 0, "v2", vec![]);
        b.face("e02", 1, "v0", vec![]);
        b.face("e12", 0, "v2", vec![]);
        b.face("e12", 1, "v1", vec![]);
        b.face("t", 0, "e12", vec![]);
        b.face("t", 1, "e02", vec![]);
        b.face("t", 2, "e01", vec![]);
        b.finish().expect("delta2 is valid")
    }

    /// The boundary of the (d+1)-simplex as a semisimplicial object.
    pub fn sphere_boundary(d: usize) -> SimplicialObject {
        let t = crate::triangulation::sphere_boundary(d);
        from_triangulation(&t)
    }

    /// Any triangulation as a semisimplicial object on its sorted faces.
    pub fn from_triangulation(t: &crate::triangulation::Triangulation) -> SimplicialObject {
        let faces = t.faces_by_dim();
        let name = |f: &[u32]| -> String {
            let parts: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            format!("c{}", parts.join("_"))
        };
        let mut b = SimplicialObjectBuilder::new(Kind::Semisimplicial);
        for (d, fs) in faces.iter().enumerate() {
            for f in fs {
                b.cell(d, &name(f));
            }
        }
        for (d, fs) in faces.iter().enumerate() {
            if d == 0 {
                continue;
            }
            for f in fs {
                for i in 0..f.len() {
                    let mut sub = f.clone();
                    sub.remove(i);
                    b.face(&name(f), i, &name(&sub), vec![]);
                }
            }
        }
        b.finish().expect("triangulation faces form a semisimplicial object")
    }
}

#[cfg(test)]
mod tests {
    use super::objects::*;
    use super::*;
    use crate::abgroup::FgAbGroup;
    use crate::homology::homology;

    #[test]
    fn word_normalization() {
        // s_0 s_0 = s_1 s_0
        assert_eq!(normalize_word(vec![0, 0]), vec![1, 0]);
        // s_0 s_0 s_0 = s_2 s_1 s_0
        assert_eq!(normalize_word(vec![0, 0, 0]), vec![2, 1, 0]);
        assert_eq!(normalize_word(vec![3, 1, 0]), vec![3, 1, 0]);
        // s_1 s_2 = s_3 s_1
        assert_eq!(normalize_word(vec![1, 2]), vec![3, 1]);
    }

    #[test]
    fn word_identities_as_operators() {
        // check d_i s_j rules through apply_d on the circle's degenerate simplices
        let c = circle(Kind::Simplicial);
        let e = Element::of(c.cell_by_id("e").unwrap());
        let s0e = c.apply_s(&e, 0);
        assert_eq!(s0e.word, vec![0]);
        // d_0 s_0 = id, d_1 s_0 = id
        assert_eq!(c.apply_d(&s0e, 0), e);
        assert_eq!(c.apply_d(&s0e, 1), e);
        // d_2 s_0 e = s_0 d_1 e = s_0 v
        let d2 = c.apply_d(&s0e, 2);
        assert_eq!(d2.word, vec![0]);
        assert_eq!(c.cell_id(d2.cell), "v");
    }

    #[test]
    fn validation_rejects_broken_identities() {
        // a 2-cell whose faces do not satisfy d_0 d_1 = d_0 d_0 style identities
        let mut b = SimplicialObjectBuilder::new(Kind::Semisimplicial);
        b.cell(0, "a");
        b.cell(0, "b");
        b.cell(0, "c");
        b.cell(1, "e");
        b.cell(1, "f");
        b.cell(1, "g");
        for (edge, (x, y)) in [("e", ("a", "b")), ("f", ("b", "c")), ("g", ("a", "c"))] {
            b.face(edge, 0, y, vec![]);
            b.face(edge, 1, x, vec![]);
        }
        b.cell(2, "t");
        b.face("t", 0, "f", vec![]);
        b.face("t", 1, "e", vec![]); // wrong: d_1 should be the long edge g
        b.face("t", 2, "g", vec![]);
        let err = b.finish().unwrap_err();
        assert!(err.to_string().contains("simplicial identity"), "{err}");
    }

    #[test]
    fn point_and_circle_chains() {
        let p = point(Kind::Simplicial);
        assert_eq!(homology(&p.normalized_chains()), vec![FgAbGroup::free(1)]);
        let c = circle(Kind::Simplicial);
        let h = homology(&c.normalized_chains());
        assert_eq!(h, vec![FgAbGroup::free(1), FgAbGroup::free(1)]);
    }

    #[test]
    fn nerve_of_point_category() {
        for kind in [Kind::Simplicial, Kind::Semisimplicial] {
            let n = nerve(&FiniteCategory::point(), kind).unwrap();
            assert_eq!(n.cell_counts(), vec![1]);
        }
    }

    #[test]
    fn nerve_of_chain_poset_is_delta2() {
        let n = nerve(&FiniteCategory::chain_poset(3), Kind::Simplicial).unwrap();
        assert_eq!(n.cell_counts(), vec![3, 3, 1]);
        let chains = n.normalized_chains();
        assert_eq!(chains.euler_characteristic(), 1);
        let h = homology(&chains);
        assert_eq!(h[0], FgAbGroup::free(1));
        assert_eq!(h[1], FgAbGroup::trivial());
        assert_eq!(h[2], FgAbGroup::trivial());
    }

    #[test]
    fn nerve_rejects_composable_cycles() {
        // the group Z/2 as a one-object category: x . x = id
        let cat = FiniteCategory {
            objects: vec!["*".into()],
            morphisms: vec![
                crate::category::Morphism { id: "id".into(), src: "*".into(), dst: "*".into() },
                crate::category::Morphism { id: "x".into(), src: "*".into(), dst: "*".into() },
            ],
            composition: std::collections::BTreeMap::from([
                (("id".into(), "id".into()), "id".into()),
                (("id".into(), "x".into()), "x".into()),
                (("x".into(), "id".into()), "x".into()),
                (("x".into(), "x".into()), "id".into()),
            ]),
        };
        assert!(nerve(&cat, Kind::Simplicial).is_err());
    }

    #[test]
    fn free_degeneracies_preserves_cells_and_homology() {
        let p = free_degeneracies(&point(Kind::Semisimplicial)).unwrap();
        assert_eq!(p.kind(), Kind::Simplicial);
        assert_eq!(p.cell_counts(), vec![1]);
        assert!(free_degeneracies(&p).is_err(), "input must be semisimplicial");

        let d2 = delta2(Kind::Semisimplicial);
        let free = free_degeneracies(&d2).unwrap();
        assert_eq!(free.kind(), Kind::Simplicial);
        assert_eq!(free.cell_counts(), vec![3, 3, 1]);
        assert_eq!(
            homology(&d2.normalized_chains()),
            homology(&free.normalized_chains())
        );

        let circ = circle(Kind::Semisimplicial);
        let free = free_degeneracies(&circ).unwrap();
        assert_eq!(
            homology(&free.normalized_chains())[1],
            FgAbGroup::free(1)
        );
    }

    #[test]
    fn semisimplicial_delta2_subdivides_to_three_points() {
        let d2 = delta2(Kind::Semisimplicial);
        let sd = edgewise_subdivide(&d2).unwrap();
        assert_eq!(sd.cell_counts(), vec![3]);
        let h = homology(&sd.normalized_chains());
        assert_eq!(h, vec![FgAbGroup::free(3)]);
    }

    #[test]
    fn simplicial_delta2_subdivision_stays_contractible() {
        let d2 = free_degeneracies(&delta2(Kind::Semisimplicial)).unwrap();
        let sd = edgewise_subdivide(&d2).unwrap();
        sd.validate().unwrap();
        let h = homology(&sd.normalized_chains());
        assert_eq!(h[0], FgAbGroup::free(1));
        for g in &h[1..] {
            assert_eq!(*g, FgAbGroup::trivial());
        }
    }

    #[test]
    fn circle_subdivision_keeps_both_groups() {
        let c = circle(Kind::Simplicial);
        let sd = edgewise_subdivide(&c).unwrap();
        sd.validate().unwrap();
        assert_eq!(sd.cell_counts(), vec![2, 2]);
        let h = homology(&sd.normalized_chains());
        assert_eq!(h, vec![FgAbGroup::free(1), FgAbGroup::free(1)]);
    }

    #[test]
    fn format_round_trip() {
        let d2 = delta2(Kind::Semisimplicial);
        let text = d2.serialize();
        let back = SimplicialObject::parse(&text).unwrap();
        assert_eq!(back.serialize(), text);
        assert_eq!(back.cell_counts(), d2.cell_counts());
    }

    #[test]
    fn format_with_degeneracy_words_round_trips() {
        let c = free_degeneracies(&circle(Kind::Semisimplicial)).unwrap();
        let sd = edgewise_subdivide(&c).unwrap();
        let text = sd.serialize();
        let back = SimplicialObject::parse(&text).unwrap();
        assert_eq!(back.serialize(), text);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn normalized_words_strictly_decrease(raw in proptest::collection::vec(0usize..6, 0..6)) {
                let w = normalize_word(raw);
                for pair in w.windows(2) {
                    prop_assert!(pair[0] > pair[1]);
                }
                prop_assert_eq!(normalize_word(w.clone()), w);
            }

            #[test]
            fn degeneracies_retract_along_both_faces(
                raw in proptest::collection::vec(0usize..4, 0..4),
                j_seed in 0usize..8,
            ) {
                // build an element over the circle's edge, then check
                // d_j s_j = d_{j+1} s_j = id
                let c = circle(Kind::Simplicial);
                let mut e = Element::of(c.cell_by_id("e").unwrap());
                for s in raw {
                    let j = s.min(e.degree());
                    e = c.apply_s(&e, j);
                }
                let j = j_seed % (e.degree() + 1);
                let se = c.apply_s(&e, j);
                prop_assert_eq!(c.apply_d(&se, j), e.clone());
                prop_assert_eq!(c.apply_d(&se, j + 1), e);
            }
        }
    }
}
