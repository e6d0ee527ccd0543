//! Finite categories with squares: axiom validation, the K0 presentation
//! by the square relation, the grid nerve, and the indexing that sends a
//! string of composable pieces to a grid of distinguished squares.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abgroup::FgAbGroup;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::simplicial::{normalize_word, Kind, SimplicialObject, SimplicialObjectBuilder};
use crate::snf::smith_decomposition;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SquareDecl {
    pub top: String,
    pub left: String,
    pub right: String,
    pub bottom: String,
}

/// A finite category with squares: two morphism classes with their own
/// composition tables, a set of distinguished squares, a designated initial
/// object, an isomorphism-class partition of the objects, and an optional
/// partial union pairing on objects.
#[derive(Clone, Debug, Default)]
pub struct SquaresCategory {
    pub objects: Vec<String>,
    pub initial: String,
    pub hmors: Vec<(String, String, String)>, // (id, src, dst)
    pub vmors: Vec<(String, String, String)>,
    pub hcomp: BTreeMap<(String, String), String>, // (f, g) -> f;g with dst(f) = src(g)
    pub vcomp: BTreeMap<(String, String), String>,
    pub squares: BTreeSet<SquareDecl>,
    pub iso_classes: Vec<BTreeSet<String>>,
    pub unions: BTreeMap<(String, String), String>,
}

#[derive(Debug)]
pub struct SquaresReport {
    pub violations: Vec<String>,
}

impl SquaresReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

struct MorClass<'a> {
    mors: &'a [(String, String, String)],
    comp: &'a BTreeMap<(String, String), String>,
    label: &'static str,
}

impl<'a> MorClass<'a> {
    fn endpoints(&self, id: &str) -> Option<(&str, &str)> {
        self.mors.iter().find(|(m, _, _)| m == id).map(|(_, s, d)| (s.as_str(), d.as_str()))
    }

    fn check(&self, objects: &BTreeSet<&String>, violations: &mut Vec<String>) {
        let mut ids = BTreeSet::new();
        for (id, src, dst) in self.mors {
            if !ids.insert(id) {
                violations.push(format!("duplicate {} morphism id {id}", self.label));
            }
            if !objects.contains(src) || !objects.contains(dst) {
                violations.push(format!(
                    "{} morphism {id} references unknown objects {src} -> {dst}",
                    self.label
                ));
            }
        }
        for ((f, g), h) in self.comp {
            match (self.endpoints(f), self.endpoints(g), self.endpoints(h)) {
                (Some((fs, fd)), Some((gs, gd)), Some((hs, hd))) => {
                    if fd != gs {
                        violations.push(format!("{} pair ({f}, {g}) is not composable", self.label));
                    } else if hs != fs || hd != gd {
                        violations.push(format!(
                            "{} composite of ({f}, {g}) has wrong endpoints {h}",
                            self.label
                        ));
                    }
                }
                _ => violations.push(format!(
                    "{} composition entry ({f}, {g}) -> {h} references unknown morphisms",
                    self.label
                )),
            }
        }
        for (f, _, fd) in self.mors {
            for (g, gs, _) in self.mors {
                if fd == gs && !self.comp.contains_key(&(f.clone(), g.clone())) {
                    violations.push(format!(
                        "{} composition table is missing the pair ({f}, {g})",
                        self.label
                    ));
                }
            }
        }
        // associativity on the full table
        for (f, _, fd) in self.mors {
            for (g, gs, gd) in self.mors {
                if fd != gs {
                    continue;
                }
                for (h, hs, _) in self.mors {
                    if gd != hs {
                        continue;
                    }
                    let fg = self.comp.get(&(f.clone(), g.clone()));
                    let gh = self.comp.get(&(g.clone(), h.clone()));
                    if let (Some(fg), Some(gh)) = (fg, gh) {
                        let left = self.comp.get(&(fg.clone(), h.clone()));
                        let right = self.comp.get(&(f.clone(), gh.clone()));
                        match (left, right) {
                            (Some(l), Some(r)) if l == r => {}
                            _ => violations.push(format!(
                                "{} associativity fails on ({f}, {g}, {h})",
                                self.label
                            )),
                        }
                    }
                }
            }
        }
    }

    /// The identity morphism of each object, when the table determines one.
    fn identities(&self, objects: &[String]) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        for o in objects {
            for (e, src, dst) in self.mors {
                if src != o || dst != o {
                    continue;
                }
                let neutral = self.mors.iter().all(|(f, fs, fd)| {
                    let left = fd != o
                        || self.comp.get(&(f.clone(), e.clone())).map(|c| c == f).unwrap_or(false);
                    let right = fs != o
                        || self.comp.get(&(e.clone(), f.clone())).map(|c| c == f).unwrap_or(false);
                    left && right
                });
                if neutral {
                    out.insert(o.clone(), e.clone());
                    break;
                }
            }
        }
        out
    }
}

impl SquaresCategory {
    fn hclass(&self) -> MorClass<'_> {
        MorClass { mors: &self.hmors, comp: &self.hcomp, label: "horizontal" }
    }

    fn vclass(&self) -> MorClass<'_> {
        MorClass { mors: &self.vmors, comp: &self.vcomp, label: "vertical" }
    }

    pub fn h_identity(&self, object: &str) -> Option<String> {
        self.hclass().identities(&self.objects).get(object).cloned()
    }

    pub fn v_identity(&self, object: &str) -> Option<String> {
        self.vclass().identities(&self.objects).get(object).cloned()
    }

    /// Exhaustive check of every axiom; violations carry witnesses.
    pub fn validate(&self) -> SquaresReport {
        let mut violations = Vec::new();
        let objset: BTreeSet<&String> = self.objects.iter().collect();
        if !self.objects.contains(&self.initial) {
            violations.push(format!("initial object {} is not an object", self.initial));
        }
        self.hclass().check(&objset, &mut violations);
        self.vclass().check(&objset, &mut violations);
        if !violations.is_empty() {
            return SquaresReport { violations };
        }

        let h_ids = self.hclass().identities(&self.objects);
        let v_ids = self.vclass().identities(&self.objects);
        for o in &self.objects {
            if !h_ids.contains_key(o) {
                violations.push(format!("object {o} has no horizontal identity"));
            }
            if !v_ids.contains_key(o) {
                violations.push(format!("object {o} has no vertical identity"));
            }
        }
        if !violations.is_empty() {
            return SquaresReport { violations };
        }

        // square shapes
        for sq in &self.squares {
            if self.square_corners(sq).is_none() {
                violations.push(format!("square {sq:?} has mismatched boundaries"));
            }
        }

        // squares with parallel identities are distinguished
        for (f, src, dst) in &self.hmors {
            let sq = SquareDecl {
                top: f.clone(),
                left: v_ids[src].clone(),
                right: v_ids[dst].clone(),
                bottom: f.clone(),
            };
            if !self.squares.contains(&sq) {
                violations.push(format!(
                    "identity-bordered square on horizontal {f} is not distinguished"
                ));
            }
        }
        for (g, src, dst) in &self.vmors {
            let sq = SquareDecl {
                top: h_ids[src].clone(),
                left: g.clone(),
                right: g.clone(),
                bottom: h_ids[dst].clone(),
            };
            if !self.squares.contains(&sq) {
                violations.push(format!(
                    "identity-bordered square on vertical {g} is not distinguished"
                ));
            }
        }

        // closure under horizontal and vertical pasting
        for a in &self.squares {
            for b in &self.squares {
                if a.right == b.left {
                    if let (Some(top), Some(bottom)) = (
                        self.hcomp.get(&(a.top.clone(), b.top.clone())),
                        self.hcomp.get(&(a.bottom.clone(), b.bottom.clone())),
                    ) {
                        let paste = SquareDecl {
                            top: top.clone(),
                            left: a.left.clone(),
                            right: b.right.clone(),
                            bottom: bottom.clone(),
                        };
                        if !self.squares.contains(&paste) {
                            violations.push(format!(
                                "horizontal pasting of {a:?} and {b:?} is not distinguished"
                            ));
                        }
                    }
                }
                if a.bottom == b.top {
                    if let (Some(left), Some(right)) = (
                        self.vcomp.get(&(a.left.clone(), b.left.clone())),
                        self.vcomp.get(&(a.right.clone(), b.right.clone())),
                    ) {
                        let paste = SquareDecl {
                            top: a.top.clone(),
                            left: left.clone(),
                            right: right.clone(),
                            bottom: b.bottom.clone(),
                        };
                        if !self.squares.contains(&paste) {
                            violations.push(format!(
                                "vertical pasting of {a:?} and {b:?} is not distinguished"
                            ));
                        }
                    }
                }
            }
        }

        // the initial object admits exactly one morphism to every object,
        // in both classes
        for o in &self.objects {
            for (class, label) in [(&self.hmors, "horizontal"), (&self.vmors, "vertical")] {
                let count = class
                    .iter()
                    .filter(|(_, src, dst)| src == &self.initial && dst == o)
                    .count();
                if count != 1 {
                    violations.push(format!(
                        "initial object has {count} {label} morphisms to {o}, expected exactly 1"
                    ));
                }
            }
        }

        // iso classes partition the objects
        let mut seen = BTreeSet::new();
        for class in &self.iso_classes {
            for o in class {
                if !objset.contains(o) {
                    violations.push(format!("iso class mentions unknown object {o}"));
                }
                if !seen.insert(o.clone()) {
                    violations.push(format!("object {o} appears in two iso classes"));
                }
            }
        }

        // union pairing: associative where all composites are defined
        for ((a, b), x) in &self.unions {
            if !objset.contains(a) || !objset.contains(b) || !objset.contains(x) {
                violations.push(format!("union entry ({a}, {b}) -> {x} references unknown objects"));
            }
        }
        for ((a, b), ab) in &self.unions {
            for ((b2, c), bc) in &self.unions {
                if b != b2 {
                    continue;
                }
                if let (Some(ab_c), Some(a_bc)) = (
                    self.unions.get(&(ab.clone(), c.clone())),
                    self.unions.get(&(a.clone(), bc.clone())),
                ) {
                    if ab_c != a_bc {
                        violations.push(format!(
                            "union is not associative on ({a}, {b}, {c}): {ab_c} vs {a_bc}"
                        ));
                    }
                }
            }
        }

        SquaresReport { violations }
    }

    /// Corner objects (A, B, C, D) of a distinguished square with top
    /// A -> B, left A -> C, right B -> D, bottom C -> D.
    pub fn square_corners(&self, sq: &SquareDecl) -> Option<(String, String, String, String)> {
        let h = self.hclass();
        let v = self.vclass();
        let (ts, td) = h.endpoints(&sq.top)?;
        let (ls, ld) = v.endpoints(&sq.left)?;
        let (rs, rd) = v.endpoints(&sq.right)?;
        let (bs, bd) = h.endpoints(&sq.bottom)?;
        if ts == ls && td == rs && ld == bs && rd == bd {
            Some((ts.to_string(), td.to_string(), bs.to_string(), bd.to_string()))
        } else {
            None
        }
    }

    /// Iso classes completed with singletons for uncovered objects, sorted
    /// by their least element for a deterministic generator order.
    fn sorted_iso_classes(&self) -> Vec<BTreeSet<String>> {
        let mut classes = self.iso_classes.clone();
        let covered: BTreeSet<String> = classes.iter().flatten().cloned().collect();
        for o in &self.objects {
            if !covered.contains(o) {
                classes.push(BTreeSet::from([o.clone()]));
            }
        }
        classes.sort_by(|a, b| a.iter().next().cmp(&b.iter().next()));
        classes
    }

    /// The unique horizontal morphism between two objects, if there is one.
    fn unique_hmor(&self, src: &str, dst: &str) -> Result<String> {
        let all: Vec<&String> = self
            .hmors
            .iter()
            .filter(|(_, s, d)| s == src && d == dst)
            .map(|(id, _, _)| id)
            .collect();
        match all.as_slice() {
            [one] => Ok((*one).clone()),
            [] => Err(Error::contract(format!("no horizontal morphism {src} -> {dst}"))),
            _ => Err(Error::contract(format!(
                "horizontal morphism {src} -> {dst} is not unique"
            ))),
        }
    }

    fn unique_vmor(&self, src: &str, dst: &str) -> Result<String> {
        let all: Vec<&String> = self
            .vmors
            .iter()
            .filter(|(_, s, d)| s == src && d == dst)
            .map(|(id, _, _)| id)
            .collect();
        match all.as_slice() {
            [one] => Ok((*one).clone()),
            [] => Err(Error::contract(format!("no vertical morphism {src} -> {dst}"))),
            _ => Err(Error::contract(format!("vertical morphism {src} -> {dst} is not unique"))),
        }
    }

    pub fn union(&self, a: &str, b: &str) -> Result<String> {
        self.unions
            .get(&(a.to_string(), b.to_string()))
            .cloned()
            .ok_or_else(|| Error::contract(format!("union of {a} and {b} is not designated")))
    }

    /// Text format, one declaration per line.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for o in &self.objects {
            if *o == self.initial {
                writeln!(out, "object {o} initial").unwrap();
            } else {
                writeln!(out, "object {o}").unwrap();
            }
        }
        for (id, s, d) in &self.hmors {
            writeln!(out, "hmor {id} {s} {d}").unwrap();
        }
        for (id, s, d) in &self.vmors {
            writeln!(out, "vmor {id} {s} {d}").unwrap();
        }
        for ((f, g), h) in &self.hcomp {
            writeln!(out, "hcomp {f} {g} {h}").unwrap();
        }
        for ((f, g), h) in &self.vcomp {
            writeln!(out, "vcomp {f} {g} {h}").unwrap();
        }
        for sq in &self.squares {
            writeln!(out, "square {} {} {} {}", sq.top, sq.left, sq.right, sq.bottom).unwrap();
        }
        for class in &self.iso_classes {
            let parts: Vec<&str> = class.iter().map(|s| s.as_str()).collect();
            writeln!(out, "isoclass {}", parts.join(" ")).unwrap();
        }
        for ((a, b), c) in &self.unions {
            writeln!(out, "union {a} {b} {c}").unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<SquaresCategory> {
        let mut cat = SquaresCategory::default();
        for (ln0, raw) in text.lines().enumerate() {
            let ln = ln0 + 1;
            let line = raw.split('#').next().unwrap_or("");
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            let need = |n: usize| -> Result<()> {
                if toks.len() == n {
                    Ok(())
                } else {
                    Err(Error::parse(ln, format!("'{}' expects {} fields", toks[0], n - 1)))
                }
            };
            match toks[0] {
                "object" => {
                    if toks.len() == 3 && toks[2] == "initial" {
                        cat.initial = toks[1].to_string();
                    } else {
                        need(2)?;
                    }
                    cat.objects.push(toks[1].to_string());
                }
                "hmor" => {
                    need(4)?;
                    cat.hmors.push((toks[1].into(), toks[2].into(), toks[3].into()));
                }
                "vmor" => {
                    need(4)?;
                    cat.vmors.push((toks[1].into(), toks[2].into(), toks[3].into()));
                }
                "hcomp" => {
                    need(4)?;
                    cat.hcomp.insert((toks[1].into(), toks[2].into()), toks[3].into());
                }
                "vcomp" => {
                    need(4)?;
                    cat.vcomp.insert((toks[1].into(), toks[2].into()), toks[3].into());
                }
                "square" => {
                    need(5)?;
                    cat.squares.insert(SquareDecl {
                        top: toks[1].into(),
                        left: toks[2].into(),
                        right: toks[3].into(),
                        bottom: toks[4].into(),
                    });
                }
                "isoclass" => {
                    cat.iso_classes.push(toks[1..].iter().map(|s| s.to_string()).collect());
                }
                "union" => {
                    need(4)?;
                    cat.unions.insert((toks[1].into(), toks[2].into()), toks[3].into());
                }
                other => return Err(Error::parse(ln, format!("unknown declaration '{other}'"))),
            }
        }
        Ok(cat)
    }
}

/// K0 of a squares category: the free abelian group on iso classes modulo
/// the relations [initial] = 0 and [A] + [D] = [B] + [C] per distinguished
/// square, in Smith canonical form with labeled generators.
pub struct K0Presentation {
    pub group: FgAbGroup,
    /// One label per canonical generator: torsion generators first, then
    /// free generators; each is an integer combination of iso classes.
    pub generators: Vec<String>,
    class_count: usize,
    class_labels: Vec<String>,
    class_index: BTreeMap<String, usize>,
    u: IntMatrix,
    factors: Vec<BigInt>,
}

impl K0Presentation {
    /// Coordinates of an object's class in the canonical decomposition:
    /// torsion coordinates (mod their moduli) then free coordinates.
    pub fn class_vector(&self, object: &str) -> Result<Vec<BigInt>> {
        let class = *self
            .class_index
            .get(object)
            .ok_or_else(|| Error::contract(format!("unknown object '{object}'")))?;
        let mut e = vec![BigInt::zero(); self.class_count];
        e[class] = BigInt::from(1);
        let y = self.u.apply(&e);
        let mut out = Vec::new();
        for (i, d) in self.factors.iter().enumerate() {
            if d > &BigInt::from(1) {
                let mut r = &y[i] % d;
                if r < BigInt::zero() {
                    r += d;
                }
                out.push(r);
            }
        }
        for item in y.iter().skip(self.factors.len()) {
            out.push(item.clone());
        }
        Ok(out)
    }

    pub fn class_label(&self, index: usize) -> &str {
        &self.class_labels[index]
    }
}

pub fn k0_presentation(c: &SquaresCategory) -> Result<K0Presentation> {
    let report = c.validate();
    if !report.is_valid() {
        return Err(Error::contract(format!(
            "squares category is invalid: {}",
            report.violations.join("; ")
        )));
    }
    let classes = c.sorted_iso_classes();
    let k = classes.len();
    let class_labels: Vec<String> =
        classes.iter().map(|cl| format!("[{}]", cl.iter().next().unwrap())).collect();
    let class_index: BTreeMap<String, usize> = classes
        .iter()
        .enumerate()
        .flat_map(|(i, cl)| cl.iter().map(move |o| (o.clone(), i)))
        .collect();

    let mut relations: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    let mut initial_rel = vec![BigInt::zero(); k];
    initial_rel[class_index[&c.initial]] = BigInt::from(1);
    relations.insert(initial_rel);
    for sq in &c.squares {
        let (a, b, cc, d) = c.square_corners(sq).expect("validated squares have corners");
        let mut rel = vec![BigInt::zero(); k];
        rel[class_index[&a]] += BigInt::from(1);
        rel[class_index[&d]] += BigInt::from(1);
        rel[class_index[&b]] -= BigInt::from(1);
        rel[class_index[&cc]] -= BigInt::from(1);
        if rel.iter().any(|x| !x.is_zero()) {
            relations.insert(rel);
        }
    }
    let relations: Vec<Vec<BigInt>> = relations.into_iter().collect();
    let mut m = IntMatrix::zero(k, relations.len());
    for (j, rel) in relations.iter().enumerate() {
        for (i, v) in rel.iter().enumerate() {
            m[(i, j)] = v.clone();
        }
    }
    let snf = smith_decomposition(&m);
    let factors = snf.factors();
    let torsion: Vec<BigInt> =
        factors.iter().filter(|f| f > &&BigInt::from(1)).cloned().collect();
    let group = FgAbGroup::new(k - factors.len(), torsion);

    // generator labels: the canonical generator i is u_inv * e_i
    let mut generators = Vec::new();
    for (i, d) in factors.iter().enumerate() {
        if d > &BigInt::from(1) {
            generators.push(combination_label(&snf.u_inv.column(i), &class_labels));
        }
    }
    for i in factors.len()..k {
        generators.push(combination_label(&snf.u_inv.column(i), &class_labels));
    }

    Ok(K0Presentation {
        group,
        generators,
        class_count: k,
        class_labels,
        class_index,
        u: snf.u,
        factors,
    })
}

fn combination_label(coeffs: &[BigInt], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, l) in coeffs.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        if c == &BigInt::from(1) {
            if !out.is_empty() {
                out.push('+');
            }
            out.push_str(l);
        } else if c == &BigInt::from(-1) {
            out.push('-');
            out.push_str(l);
        } else {
            if !out.is_empty() && c > &BigInt::zero() {
                out.push('+');
            }
            out.push_str(&format!("{c}{l}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A homomorphism between finitely generated abelian groups, as a matrix on
/// the presentation generators (torsion generators first, then free).
#[derive(Clone, Debug)]
pub struct AbHom {
    pub source: FgAbGroup,
    pub target: FgAbGroup,
    pub matrix: IntMatrix,
}

impl AbHom {
    fn generator_count(g: &FgAbGroup) -> usize {
        g.torsion().len() + g.free_rank()
    }

    pub fn validate(&self) -> Result<()> {
        if self.matrix.rows() != Self::generator_count(&self.target)
            || self.matrix.cols() != Self::generator_count(&self.source)
        {
            return Err(Error::contract(format!(
                "homomorphism matrix is {}x{}, expected {}x{}",
                self.matrix.rows(),
                self.matrix.cols(),
                Self::generator_count(&self.target),
                Self::generator_count(&self.source),
            )));
        }
        Ok(())
    }
}

/// Coequalizer of two homomorphisms with the same source and target:
/// target / im(d0 - d1), in canonical form.
pub fn coequalizer_pi0(d0: &AbHom, d1: &AbHom) -> Result<FgAbGroup> {
    d0.validate()?;
    d1.validate()?;
    if d0.source != d1.source || d0.target != d1.target {
        return Err(Error::contract("the two homomorphisms must share source and target"));
    }
    let tgt_tors = d0.target.torsion();
    let tgt_gens = AbHom::generator_count(&d0.target);
    let src_gens = AbHom::generator_count(&d0.source);
    // relation matrix: target presentation relations, then im(d0 - d1)
    let mut m = IntMatrix::zero(tgt_gens, tgt_tors.len() + src_gens);
    for (i, d) in tgt_tors.iter().enumerate() {
        m[(i, i)] = d.clone();
    }
    for j in 0..src_gens {
        for i in 0..tgt_gens {
            m[(i, tgt_tors.len() + j)] = &d0.matrix[(i, j)] - &d1.matrix[(i, j)];
        }
    }
    Ok(FgAbGroup::cokernel(&m))
}

/// An n by n grid of distinguished squares agreeing on shared edges,
/// stored row-major. The corner objects form an (n+1) by (n+1) matrix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GridSimplex {
    pub n: usize,
    pub squares: Vec<SquareDecl>,
    /// Corner objects, row-major, (n+1)^2 entries.
    pub corners: Vec<String>,
}

impl GridSimplex {
    pub fn corner(&self, row: usize, col: usize) -> &str {
        &self.corners[row * (self.n + 1) + col]
    }

    fn square(&self, row: usize, col: usize) -> &SquareDecl {
        &self.squares[row * self.n + col]
    }

    /// Structural validity in a category: every entry distinguished,
    /// adjacent squares sharing their boundary morphisms.
    pub fn validate(&self, c: &SquaresCategory) -> Result<()> {
        for sq in &self.squares {
            if !c.squares.contains(sq) {
                return Err(Error::structural(format!("grid entry {sq:?} is not distinguished")));
            }
        }
        for r in 0..self.n {
            for col in 0..self.n {
                if col + 1 < self.n && self.square(r, col).right != self.square(r, col + 1).left {
                    return Err(Error::structural(format!(
                        "grid squares ({r}, {col}) and ({r}, {}) disagree on their shared edge",
                        col + 1
                    )));
                }
                if r + 1 < self.n && self.square(r, col).bottom != self.square(r + 1, col).top {
                    return Err(Error::structural(format!(
                        "grid squares ({r}, {col}) and ({}, {col}) disagree on their shared edge",
                        r + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

mod grid_nerve_impl;
pub use grid_nerve_impl::{grid_face, grid_nerve, string_sd_face, string_to_grid};

/// Small hand-built squares categories used as test subjects.
pub mod toys {
    use super::*;

    /// The one-object category on the initial object.
    pub fn initial_point() -> SquaresCategory {
        let mut c = SquaresCategory {
            objects: vec!["e".into()],
            initial: "e".into(),
            ..Default::default()
        };
        c.hmors.push(("hid_e".into(), "e".into(), "e".into()));
        c.vmors.push(("vid_e".into(), "e".into(), "e".into()));
        c.hcomp.insert(("hid_e".into(), "hid_e".into()), "hid_e".into());
        c.vcomp.insert(("vid_e".into(), "vid_e".into()), "vid_e".into());
        c.squares.insert(SquareDecl {
            top: "hid_e".into(),
            left: "vid_e".into(),
            right: "vid_e".into(),
            bottom: "hid_e".into(),
        });
        c
    }

    /// Subsets of {0, .., size-1} with inclusions in both directions and
    /// pushout squares (D = B union C over A = B intersect C); the union
    /// pairing is disjoint union.
    pub fn finite_subsets(size: u32) -> SquaresCategory {
        let subsets: Vec<u32> = (0..(1u32 << size)).collect();
        let name = |s: u32| -> String {
            if s == 0 {
                "E".into()
            } else {
                let els: Vec<String> =
                    (0..size).filter(|i| s & (1 << i) != 0).map(|i| i.to_string()).collect();
                format!("S{}", els.join(""))
            }
        };
        let mut c = SquaresCategory {
            objects: subsets.iter().map(|&s| name(s)).collect(),
            initial: name(0),
            ..Default::default()
        };
        let mor_name = |s: u32, t: u32| format!("i_{}_{}", name(s), name(t));
        for &s in &subsets {
            for &t in &subsets {
                if s & t == s {
                    c.hmors.push((format!("h{}", mor_name(s, t)), name(s), name(t)));
                    c.vmors.push((format!("v{}", mor_name(s, t)), name(s), name(t)));
                }
            }
        }
        for &s in &subsets {
            for &t in &subsets {
                if s & t != s {
                    continue;
                }
                for &u in &subsets {
                    if t & u != t {
                        continue;
                    }
                    c.hcomp.insert(
                        (format!("h{}", mor_name(s, t)), format!("h{}", mor_name(t, u))),
                        format!("h{}", mor_name(s, u)),
                    );
                    c.vcomp.insert(
                        (format!("v{}", mor_name(s, t)), format!("v{}", mor_name(t, u))),
                        format!("v{}", mor_name(s, u)),
                    );
                }
            }
        }
        // pushout squares: top B' -> B'|C', left B' -> ... for every pair
        // (B, C) with A = B & C, D = B | C
        for &b in &subsets {
            for &cc in &subsets {
                let a = b & cc;
                let d = b | cc;
                c.squares.insert(SquareDecl {
                    top: format!("h{}", mor_name(a, b)),
                    left: format!("v{}", mor_name(a, cc)),
                    right: format!("v{}", mor_name(b, d)),
                    bottom: format!("h{}", mor_name(cc, d)),
                });
            }
        }
        // iso classes by cardinality
        for card in 0..=size {
            let class: BTreeSet<String> = subsets
                .iter()
                .filter(|&&s| s.count_ones() == card)
                .map(|&s| name(s))
                .collect();
            c.iso_classes.push(class);
        }
        // designated union: disjoint union within the universe
        for &s in &subsets {
            for &t in &subsets {
                if s & t == 0 {
                    c.unions.insert((name(s), name(t)), name(s | t));
                }
            }
        }
        c
    }

    /// Two objects E (initial) and A with only the axiom-required squares.
    pub fn two_objects() -> SquaresCategory {
        let mut c = SquaresCategory {
            objects: vec!["E".into(), "A".into()],
            initial: "E".into(),
            ..Default::default()
        };
        for (pre, mors, comp) in [
            ("h", &mut c.hmors, &mut c.hcomp),
            ("v", &mut c.vmors, &mut c.vcomp),
        ] {
            mors.push((format!("{pre}idE"), "E".into(), "E".into()));
            mors.push((format!("{pre}idA"), "A".into(), "A".into()));
            mors.push((format!("{pre}u"), "E".into(), "A".into()));
            comp.insert((format!("{pre}idE"), format!("{pre}idE")), format!("{pre}idE"));
            comp.insert((format!("{pre}idA"), format!("{pre}idA")), format!("{pre}idA"));
            comp.insert((format!("{pre}idE"), format!("{pre}u")), format!("{pre}u"));
            comp.insert((format!("{pre}u"), format!("{pre}idA")), format!("{pre}u"));
        }
        for (top, left, right, bottom) in [
            ("hidE", "vidE", "vidE", "hidE"),
            ("hidA", "vidA", "vidA", "hidA"),
            ("hu", "vidE", "vidA", "hu"),
            ("hidE", "vu", "vu", "hidA"),
        ] {
            c.squares.insert(SquareDecl {
                top: top.into(),
                left: left.into(),
                right: right.into(),
                bottom: bottom.into(),
            });
        }
        c
    }
}

#[cfg(test)]
mod tests {
    use super::toys::*;
    use super::*;

    #[test]
    fn point_category_is_valid() {
        let c = initial_point();
        let report = c.validate();
        assert!(report.is_valid(), "{:?}", report.violations);
    }

    #[test]
    fn missing_identity_square_is_reported() {
        let mut c = initial_point();
        c.squares.clear();
        let report = c.validate();
        assert!(!report.is_valid());
        assert!(
            report.violations.iter().any(|v| v.contains("identity-bordered")),
            "{:?}",
            report.violations
        );
    }

    #[test]
    fn finite_subsets_toy_is_valid() {
        let c = finite_subsets(3);
        let report = c.validate();
        assert!(report.is_valid(), "{:?}", report.violations);
    }

    #[test]
    fn k0_of_point_is_trivial() {
        let p = k0_presentation(&initial_point()).unwrap();
        assert!(p.group.is_trivial());
    }

    #[test]
    fn k0_of_two_objects_is_free_on_a() {
        let c = two_objects();
        assert!(c.validate().is_valid(), "{:?}", c.validate().violations);
        let p = k0_presentation(&c).unwrap();
        assert_eq!(p.group, FgAbGroup::free(1));
        let va = p.class_vector("A").unwrap();
        let ve = p.class_vector("E").unwrap();
        assert_eq!(va.iter().map(|x| x.to_string()).collect::<Vec<_>>(), vec!["1"]);
        assert_eq!(ve.iter().map(|x| x.to_string()).collect::<Vec<_>>(), vec!["0"]);
    }

    #[test]
    fn k0_of_finite_subsets_is_counting() {
        let c = finite_subsets(3);
        let p = k0_presentation(&c).unwrap();
        assert_eq!(p.group, FgAbGroup::free(1));
        let point = p.class_vector("S0").unwrap();
        for (obj, card) in [("E", 0i64), ("S0", 1), ("S01", 2), ("S012", 3)] {
            let v = p.class_vector(obj).unwrap();
            assert_eq!(v.len(), 1);
            assert_eq!(v[0], &point[0] * BigInt::from(card));
        }
    }

    #[test]
    fn k0_invariant_under_relabeling_within_iso_classes() {
        // permute object names inside the cardinality classes
        let c = finite_subsets(3);
        let mut swapped = c.clone();
        let rename = |s: &str| -> String {
            match s {
                "S01" => "S02".into(),
                "S02" => "S01".into(),
                other => other.into(),
            }
        };
        swapped.objects = swapped.objects.iter().map(|o| rename(o)).collect();
        swapped.initial = rename(&swapped.initial);
        swapped.hmors =
            swapped.hmors.iter().map(|(i, s, d)| (i.clone(), rename(s), rename(d))).collect();
        swapped.vmors =
            swapped.vmors.iter().map(|(i, s, d)| (i.clone(), rename(s), rename(d))).collect();
        let p1 = k0_presentation(&c).unwrap();
        let p2 = k0_presentation(&swapped).unwrap();
        assert_eq!(p1.group, p2.group);
        assert_eq!(
            p1.class_vector("S012").unwrap(),
            p2.class_vector("S012").unwrap()
        );
    }

    #[test]
    fn coequalizer_examples() {
        let z = FgAbGroup::free(1);
        let id = AbHom {
            source: z.clone(),
            target: z.clone(),
            matrix: IntMatrix::from_i64_rows(&[&[1]]),
        };
        // d0 = d1: target unchanged
        assert_eq!(coequalizer_pi0(&id, &id).unwrap(), z);
        // d0 = id, d1 = *3 on Z: cokernel of -2 is Z/2
        let times3 = AbHom {
            source: z.clone(),
            target: z.clone(),
            matrix: IntMatrix::from_i64_rows(&[&[3]]),
        };
        assert_eq!(coequalizer_pi0(&id, &times3).unwrap(), FgAbGroup::cyclic(2));
        // surjective difference on Z^2: quotient is trivial
        let z2 = FgAbGroup::free(2);
        let a = AbHom {
            source: z2.clone(),
            target: z2.clone(),
            matrix: IntMatrix::from_i64_rows(&[&[1, 0], &[0, 1]]),
        };
        let b = AbHom {
            source: z2.clone(),
            target: z2.clone(),
            matrix: IntMatrix::from_i64_rows(&[&[0, 0], &[0, 0]]),
        };
        assert!(coequalizer_pi0(&a, &b).unwrap().is_trivial());
        // shape mismatch
        let bad = AbHom {
            source: z.clone(),
            target: z2.clone(),
            matrix: IntMatrix::from_i64_rows(&[&[1], &[0]]),
        };
        assert!(coequalizer_pi0(&id, &bad).is_err());
    }

    #[test]
    fn format_round_trips() {
        let c = finite_subsets(2);
        let text = c.serialize();
        let back = SquaresCategory::parse(&text).unwrap();
        assert_eq!(back.serialize(), text);
        assert!(back.validate().is_valid());
    }
}
