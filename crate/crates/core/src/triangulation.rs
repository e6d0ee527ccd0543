//! Triangulated closed pseudomanifolds given by facet lists.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::chain::{ChainComplex, ChainMap, SparseMatrix};
use crate::error::{Error, Result};

/// A pure simplicial complex of dimension `d` presented by its facets,
/// optionally carrying an orientation (a sign per facet, relative to the
/// facet tuple as written) and a distinguished vertex permutation read from
/// a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub dimension: usize,
    pub vertex_count: usize,
    pub facets: Vec<Vec<u32>>,
    pub orientation: Option<Vec<i8>>,
    pub permutation: Option<Vec<u32>>,
}

/// Validation outcome. `violations` lists every broken invariant with a
/// witness; the remaining fields describe the complex when it is closed.
#[derive(Debug)]
pub struct ValidationReport {
    pub violations: Vec<String>,
    pub connected: bool,
    pub components: usize,
    /// Present for closed pseudomanifolds: true iff the top homology of each
    /// component is Z (orientation signs propagate consistently).
    pub orientable: Option<bool>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Triangulation {
    pub fn new(dimension: usize, vertex_count: usize, facets: Vec<Vec<u32>>) -> Self {
        Triangulation { dimension, vertex_count, facets, orientation: None, permutation: None }
    }

    /// Ridges (codimension-1 faces) with the list of facets containing each.
    fn ridge_incidence(&self) -> BTreeMap<Vec<u32>, Vec<usize>> {
        let mut map: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
        for (fi, f) in self.facets.iter().enumerate() {
            let mut sorted = f.clone();
            sorted.sort_unstable();
            for skip in 0..sorted.len() {
                let mut ridge = sorted.clone();
                ridge.remove(skip);
                map.entry(ridge).or_default().push(fi);
            }
        }
        map
    }

    /// Check the closed-pseudomanifold invariants and report connectedness
    /// and orientability.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (fi, f) in self.facets.iter().enumerate() {
            if f.len() != self.dimension + 1 {
                violations.push(format!("facet {fi} has {} vertices, expected {}", f.len(), self.dimension + 1));
            }
            let set: BTreeSet<u32> = f.iter().copied().collect();
            if set.len() != f.len() {
                violations.push(format!("facet {fi} has repeated vertices: {f:?}"));
            }
            if f.iter().any(|&v| v as usize >= self.vertex_count) {
                violations.push(format!("facet {fi} references a vertex out of range: {f:?}"));
            }
        }
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        for (fi, f) in self.facets.iter().enumerate() {
            let mut s = f.clone();
            s.sort_unstable();
            if !seen.insert(s) {
                violations.push(format!("facet {fi} duplicates an earlier facet: {f:?}"));
            }
        }
        if let Some(orient) = &self.orientation {
            if orient.len() != self.facets.len() {
                violations.push(format!(
                    "orientation has {} signs for {} facets",
                    orient.len(),
                    self.facets.len()
                ));
            }
        }
        if !violations.is_empty() {
            return ValidationReport { violations, connected: false, components: 0, orientable: None };
        }

        let ridges = self.ridge_incidence();
        for (ridge, fs) in &ridges {
            if fs.len() != 2 {
                violations.push(format!(
                    "face {ridge:?} lies in {} facets {fs:?}, expected exactly 2",
                    fs.len()
                ));
            }
        }

        let (components, component_of) = self.dual_components(&ridges);
        let connected = components <= 1;

        let orientable = if violations.is_empty() {
            match self.propagate_orientation(&ridges) {
                Some(signs) => {
                    if let Some(given) = &self.orientation {
                        // a given orientation must agree with a propagated one
                        // up to a global sign per component
                        let mut flip: Vec<Option<i8>> = vec![None; components];
                        let mut ok = true;
                        for (fi, (&a, &b)) in given.iter().zip(&signs).enumerate() {
                            if a != 1 && a != -1 {
                                violations.push(format!("facet {fi} has orientation sign {a}"));
                                ok = false;
                                break;
                            }
                            let comp = component_of[fi];
                            let f = a * b;
                            match flip[comp] {
                                None => flip[comp] = Some(f),
                                Some(existing) if existing == f => {}
                                Some(_) => {
                                    violations.push(format!(
                                        "orientation signs do not induce opposite orientations near facet {fi}"
                                    ));
                                    ok = false;
                                    break;
                                }
                            }
                        }
                        if ok {
                            Some(true)
                        } else {
                            None
                        }
                    } else {
                        Some(true)
                    }
                }
                None => {
                    if self.orientation.is_some() {
                        violations.push("orientation given but the complex is non-orientable".into());
                    }
                    Some(false)
                }
            }
        } else {
            None
        };

        ValidationReport { violations, connected, components: components.max(1), orientable }
    }

    fn dual_components(&self, ridges: &BTreeMap<Vec<u32>, Vec<usize>>) -> (usize, Vec<usize>) {
        let n = self.facets.len();
        let mut comp = vec![usize::MAX; n];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for fs in ridges.values() {
            for i in 0..fs.len() {
                for j in i + 1..fs.len() {
                    adj[fs[i]].push(fs[j]);
                    adj[fs[j]].push(fs[i]);
                }
            }
        }
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = count;
            while let Some(f) = stack.pop() {
                for &g in &adj[f] {
                    if comp[g] == usize::MAX {
                        comp[g] = count;
                        stack.push(g);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    /// Deterministic orientation by sign propagation over the dual graph:
    /// the lowest-index facet of each component gets +1 relative to its
    /// written vertex order. Returns None when the complex is non-orientable.
    fn propagate_orientation(&self, ridges: &BTreeMap<Vec<u32>, Vec<usize>>) -> Option<Vec<i8>> {
        let n = self.facets.len();
        let mut sign = vec![0i8; n];
        for start in 0..n {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut stack = vec![start];
            while let Some(f) = stack.pop() {
                let mut fs_sorted = self.facets[f].clone();
                fs_sorted.sort_unstable();
                for skip in 0..fs_sorted.len() {
                    let mut ridge = fs_sorted.clone();
                    ridge.remove(skip);
                    let inc = &ridges[&ridge];
                    for &g in inc {
                        if g == f {
                            continue;
                        }
                        let want = -induced_sign(&self.facets[f], &ridge)
                            * sign[f]
                            * induced_sign(&self.facets[g], &ridge);
                        // induced orientations on the shared ridge must cancel:
                        // sign[g] * induced(g) == -sign[f] * induced(f)
                        if sign[g] == 0 {
                            sign[g] = want;
                            stack.push(g);
                        } else if sign[g] != want {
                            return None;
                        }
                    }
                }
            }
        }
        Some(sign)
    }

    /// An orientation computed deterministically, or a contract error when
    /// the complex is non-orientable. A stored orientation wins.
    pub fn oriented_signs(&self) -> Result<Vec<i8>> {
        if let Some(o) = &self.orientation {
            return Ok(o.clone());
        }
        let ridges = self.ridge_incidence();
        self.propagate_orientation(&ridges)
            .ok_or_else(|| Error::contract("triangulation is non-orientable"))
    }

    pub fn oriented(mut self) -> Result<Self> {
        let signs = self.oriented_signs()?;
        self.orientation = Some(signs);
        Ok(self)
    }

    pub fn reversed_orientation(mut self) -> Result<Self> {
        let signs = self.oriented_signs()?;
        self.orientation = Some(signs.iter().map(|s| -s).collect());
        Ok(self)
    }

    /// All faces of every dimension, deduplicated, lexicographically sorted
    /// within each dimension. Index k holds the k-dimensional faces.
    pub fn faces_by_dim(&self) -> Vec<Vec<Vec<u32>>> {
        let mut sets: Vec<BTreeSet<Vec<u32>>> = vec![BTreeSet::new(); self.dimension + 1];
        for f in &self.facets {
            let mut sorted = f.clone();
            sorted.sort_unstable();
            for size in 1..=sorted.len() {
                for combo in combinations(&sorted, size) {
                    sets[size - 1].insert(combo);
                }
            }
        }
        sets.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Alternating sum of face counts over all dimensions.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces_by_dim()
            .iter()
            .enumerate()
            .map(|(k, faces)| if k % 2 == 0 { faces.len() as i64 } else { -(faces.len() as i64) })
            .sum()
    }

    /// Simplicial chain complex on the sorted faces. The boundary uses the
    /// standard alternating-sign convention induced by the vertex order.
    pub fn chain_complex(&self) -> (ChainComplex, Vec<Vec<Vec<u32>>>) {
        let faces = self.faces_by_dim();
        let index: Vec<BTreeMap<&[u32], usize>> = faces
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect())
            .collect();
        let mut boundaries = vec![SparseMatrix::zero(0, faces[0].len())];
        for n in 1..=self.dimension {
            let mut m = SparseMatrix::zero(faces[n - 1].len(), faces[n].len());
            for (j, f) in faces[n].iter().enumerate() {
                for skip in 0..f.len() {
                    let mut sub = f.clone();
                    sub.remove(skip);
                    let i = index[n - 1][sub.as_slice()];
                    let sign = if skip % 2 == 0 { 1 } else { -1 };
                    m.set(i, j, BigInt::from(sign));
                }
            }
            boundaries.push(m);
        }
        let ranks = faces.iter().map(|f| f.len()).collect();
        let complex = ChainComplex::from_sparse(ranks, boundaries)
            .expect("simplicial boundary squares to zero");
        (complex, faces)
    }

    /// The fundamental cycle in top-degree chain coordinates.
    pub fn fundamental_cycle(&self, faces: &[Vec<Vec<u32>>]) -> Result<Vec<BigInt>> {
        let signs = self.oriented_signs()?;
        let top = &faces[self.dimension];
        let index: BTreeMap<&[u32], usize> =
            top.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
        let mut cycle = vec![BigInt::from(0); top.len()];
        for (fi, f) in self.facets.iter().enumerate() {
            let mut sorted = f.clone();
            sorted.sort_unstable();
            let parity = sort_parity(f);
            let i = index[sorted.as_slice()];
            cycle[i] = BigInt::from((signs[fi] * parity) as i64);
        }
        Ok(cycle)
    }

    /// The signed permutation chain map induced by a vertex automorphism.
    pub fn automorphism_chain_map(
        &self,
        perm: &[u32],
        faces: &[Vec<Vec<u32>>],
    ) -> Result<ChainMap> {
        self.check_automorphism(perm)?;
        let mut maps = Vec::new();
        for fs in faces {
            let index: BTreeMap<&[u32], usize> =
                fs.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
            let mut m = SparseMatrix::zero(fs.len(), fs.len());
            for (j, f) in fs.iter().enumerate() {
                let image: Vec<u32> = f.iter().map(|&v| perm[v as usize]).collect();
                let sign = sort_parity(&image);
                let mut sorted = image;
                sorted.sort_unstable();
                let i = *index.get(sorted.as_slice()).ok_or_else(|| {
                    Error::contract(format!("permutation does not preserve the face {f:?}"))
                })?;
                m.set(i, j, BigInt::from(sign as i64));
            }
            maps.push(m);
        }
        Ok(ChainMap { maps })
    }

    /// Require that `perm` is a bijection on vertices mapping facets to facets.
    pub fn check_automorphism(&self, perm: &[u32]) -> Result<()> {
        if perm.len() != self.vertex_count {
            return Err(Error::contract(format!(
                "permutation has {} entries for {} vertices",
                perm.len(),
                self.vertex_count
            )));
        }
        let mut seen = vec![false; self.vertex_count];
        for &v in perm {
            if v as usize >= self.vertex_count || seen[v as usize] {
                return Err(Error::contract("permutation is not a bijection on vertices"));
            }
            seen[v as usize] = true;
        }
        let facet_set: BTreeSet<Vec<u32>> = self
            .facets
            .iter()
            .map(|f| {
                let mut s = f.clone();
                s.sort_unstable();
                s
            })
            .collect();
        for f in &self.facets {
            let mut image: Vec<u32> = f.iter().map(|&v| perm[v as usize]).collect();
            image.sort_unstable();
            if !facet_set.contains(&image) {
                return Err(Error::contract(format!(
                    "permutation does not map facet {f:?} to a facet"
                )));
            }
        }
        Ok(())
    }

    /// Line-oriented text format. Byte-exact round trip with `parse`.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(out, "dim {}", self.dimension).unwrap();
        writeln!(out, "vertices {}", self.vertex_count).unwrap();
        for f in &self.facets {
            let v: Vec<String> = f.iter().map(|x| x.to_string()).collect();
            writeln!(out, "facet {}", v.join(" ")).unwrap();
        }
        if let Some(orient) = &self.orientation {
            for s in orient {
                writeln!(out, "orient {}", if *s >= 0 { "1" } else { "-1" }).unwrap();
            }
        }
        if let Some(p) = &self.permutation {
            let v: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            writeln!(out, "perm {}", v.join(" ")).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Triangulation> {
        let mut dimension: Option<usize> = None;
        let mut vertex_count: Option<usize> = None;
        let mut facets = Vec::new();
        let mut orient = Vec::new();
        let mut perm: Option<Vec<u32>> = None;
        for (ln0, raw) in text.lines().enumerate() {
            let ln = ln0 + 1;
            let line = raw.split('#').next().unwrap_or("");
            let mut toks = line.split_whitespace();
            let Some(head) = toks.next() else { continue };
            let parse_u32s = |toks: std::str::SplitWhitespace| -> Result<Vec<u32>> {
                toks.map(|t| t.parse::<u32>().map_err(|_| Error::parse(ln, format!("bad integer '{t}'"))))
                    .collect()
            };
            match head {
                "dim" => {
                    let v = toks
                        .next()
                        .ok_or_else(|| Error::parse(ln, "missing dimension"))?
                        .parse()
                        .map_err(|_| Error::parse(ln, "bad dimension"))?;
                    dimension = Some(v);
                }
                "vertices" => {
                    let v = toks
                        .next()
                        .ok_or_else(|| Error::parse(ln, "missing vertex count"))?
                        .parse()
                        .map_err(|_| Error::parse(ln, "bad vertex count"))?;
                    vertex_count = Some(v);
                }
                "facet" => facets.push(parse_u32s(toks)?),
                "orient" => {
                    let t = toks.next().ok_or_else(|| Error::parse(ln, "missing sign"))?;
                    let s: i8 = match t {
                        "1" | "+1" => 1,
                        "-1" => -1,
                        _ => return Err(Error::parse(ln, format!("bad orientation sign '{t}'"))),
                    };
                    orient.push(s);
                }
                "perm" => perm = Some(parse_u32s(toks)?),
                other => return Err(Error::parse(ln, format!("unknown declaration '{other}'"))),
            }
        }
        let dimension = dimension.ok_or_else(|| Error::parse(1, "missing 'dim' line"))?;
        let vertex_count = vertex_count.ok_or_else(|| Error::parse(1, "missing 'vertices' line"))?;
        Ok(Triangulation {
            dimension,
            vertex_count,
            facets,
            orientation: if orient.is_empty() { None } else { Some(orient) },
            permutation: perm,
        })
    }
}

/// Sign of the permutation sorting `tuple` ascending: +1 for even, -1 odd.
pub fn sort_parity(tuple: &[u32]) -> i8 {
    let mut inv = 0usize;
    for i in 0..tuple.len() {
        for j in i + 1..tuple.len() {
            if tuple[i] > tuple[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign with which the sorted facet induces the given sorted ridge
/// (the alternating sign of the omitted position), times the parity of the
/// facet tuple as written.
fn induced_sign(facet: &[u32], ridge: &[u32]) -> i8 {
    let mut sorted = facet.to_vec();
    sorted.sort_unstable();
    let omitted = sorted
        .iter()
        .position(|v| !ridge.contains(v))
        .expect("ridge is a face of the facet");
    let alt = if omitted % 2 == 0 { 1 } else { -1 };
    alt * sort_parity(facet)
}

fn combinations(sorted: &[u32], size: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(sorted: &[u32], size: usize, start: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..sorted.len() {
            current.push(sorted[i]);
            rec(sorted, size, i + 1, current, out);
            current.pop();
        }
    }
    rec(sorted, size, 0, &mut current, &mut out);
    out
}

/// The boundary of the (d+1)-simplex: the standard triangulation of the
/// d-sphere with d+2 vertices.
pub fn sphere_boundary(d: usize) -> Triangulation {
    let n = d + 2;
    let verts: Vec<u32> = (0..n as u32).collect();
    let facets = combinations(&verts, d + 1);
    Triangulation::new(d, n, facets)
}

/// Staircase (Freudenthal) triangulation of the n-torus on the grid
/// (Z/3)^n: one simplex per (base vertex, coordinate order) pair.
pub fn staircase_torus(n: usize) -> Triangulation {
    assert!(n >= 1);
    let side = 3u32;
    let nverts = side.pow(n as u32) as usize;
    let label = |coords: &[u32]| -> u32 {
        coords.iter().rev().fold(0u32, |acc, &c| acc * side + c)
    };
    let mut facets = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut base = vec![0u32; n];
    loop {
        // iterate over all permutations for this base point
        loop {
            let mut vertex = base.clone();
            let mut facet = vec![label(&vertex)];
            for &axis in perm.iter() {
                vertex[axis] = (vertex[axis] + 1) % side;
                facet.push(label(&vertex));
            }
            facets.push(facet);
            if !next_permutation(&mut perm) {
                break;
            }
        }
        perm = (0..n).collect();
        // advance the base point
        let mut i = 0;
        loop {
            if i == n {
                let mut t = Triangulation::new(n, nverts, facets);
                t.facets.sort();
                return t;
            }
            base[i] += 1;
            if base[i] < side {
                break;
            }
            base[i] = 0;
            i += 1;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Staircase product triangulation of two complexes: vertices are pairs
/// `(a, b) -> a * b_count + b`, facets are monotone lattice paths through
/// each pair of facets.
pub fn staircase_product(a: &Triangulation, b: &Triangulation) -> Triangulation {
    let nb = b.vertex_count as u32;
    let mut facets = Vec::new();
    for fa in &a.facets {
        let mut fa = fa.clone();
        fa.sort_unstable();
        for fb in &b.facets {
            let mut fb = fb.clone();
            fb.sort_unstable();
            let (p, q) = (fa.len() - 1, fb.len() - 1);
            for path in lattice_paths(p, q) {
                let facet: Vec<u32> =
                    path.iter().map(|&(i, j)| fa[i] * nb + fb[j]).collect();
                facets.push(facet);
            }
        }
    }
    facets.sort();
    Triangulation::new(
        a.dimension + b.dimension,
        a.vertex_count * b.vertex_count,
        facets,
    )
}

fn lattice_paths(p: usize, q: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut current = vec![(0usize, 0usize)];
    fn rec(p: usize, q: usize, current: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let &(i, j) = current.last().unwrap();
        if i == p && j == q {
            out.push(current.clone());
            return;
        }
        if i < p {
            current.push((i + 1, j));
            rec(p, q, current, out);
            current.pop();
        }
        if j < q {
            current.push((i, j + 1));
            rec(p, q, current, out);
            current.pop();
        }
    }
    rec(p, q, &mut current, &mut out);
    out
}

/// Mapping torus of a vertex automorphism: three prism layers over `t`, the
/// last one glued back to the first through `phi`. Three layers keep every
/// prism simplex on two distinct levels, so the gluing never degenerates a
/// simplex, for any automorphism.
pub fn mapping_torus(t: &Triangulation, phi: &[u32]) -> Result<Triangulation> {
    t.check_automorphism(phi)?;
    let layers = 3u32;
    let n = t.vertex_count as u32;
    let vertex = |v: u32, level: u32| -> u32 { level * n + v };
    let mut facets = Vec::new();
    for f in &t.facets {
        let mut sorted = f.clone();
        sorted.sort_unstable();
        let d = sorted.len();
        for level in 0..layers {
            for split in 0..d {
                let mut facet = Vec::with_capacity(d + 1);
                for &v in &sorted[..=split] {
                    facet.push(vertex(v, level));
                }
                for &v in &sorted[split..] {
                    if level + 1 < layers {
                        facet.push(vertex(v, level + 1));
                    } else {
                        facet.push(vertex(phi[v as usize], 0));
                    }
                }
                facets.push(facet);
            }
        }
    }
    facets.sort();
    Ok(Triangulation::new(t.dimension + 1, (layers * n) as usize, facets))
}

/// Product with a circle made of `2k` vertices whose staircase direction
/// alternates segment by segment. The alternation makes the circle
/// reflection `level -> -level` a simplicial automorphism of the product
/// for every base complex; `circle_reflection` and `circle_rotation`
/// return the corresponding vertex permutations.
pub fn alternating_circle_product(t: &Triangulation, half_segments: usize) -> Triangulation {
    assert!(half_segments >= 2, "need at least 4 circle vertices");
    let levels = (2 * half_segments) as u32;
    let n = t.vertex_count as u32;
    let vertex = |v: u32, level: u32| -> u32 { level * n + v };
    let mut facets = Vec::new();
    for f in &t.facets {
        let mut sorted = f.clone();
        sorted.sort_unstable();
        let d = sorted.len();
        for level in 0..levels {
            let next = (level + 1) % levels;
            // even segments ascend through the vertex order, odd ones descend
            let (lo, hi) = if level % 2 == 0 { (level, next) } else { (next, level) };
            for split in 0..d {
                let mut facet = Vec::with_capacity(d + 1);
                for &v in &sorted[..=split] {
                    facet.push(vertex(v, lo));
                }
                for &v in &sorted[split..] {
                    facet.push(vertex(v, hi));
                }
                facets.push(facet);
            }
        }
    }
    facets.sort();
    Triangulation::new(t.dimension + 1, (levels * n) as usize, facets)
}

/// Vertex permutation of `alternating_circle_product(t, k)` reflecting the
/// circle factor about level 0.
pub fn circle_reflection(t: &Triangulation, half_segments: usize) -> Vec<u32> {
    let levels = (2 * half_segments) as u32;
    let n = t.vertex_count as u32;
    let mut perm = Vec::with_capacity((levels * n) as usize);
    for level in 0..levels {
        let target = (levels - level) % levels;
        for v in 0..n {
            perm.push(target * n + v);
        }
    }
    perm
}

/// Vertex permutation of `alternating_circle_product(t, k)` rotating the
/// circle factor by two levels (one full alternation period).
pub fn circle_rotation_by_two(t: &Triangulation, half_segments: usize) -> Vec<u32> {
    let levels = (2 * half_segments) as u32;
    let n = t.vertex_count as u32;
    let mut perm = Vec::with_capacity((levels * n) as usize);
    for level in 0..levels {
        let target = (level + 2) % levels;
        for v in 0..n {
            perm.push(target * n + v);
        }
    }
    perm
}

/// A subcomplex of a pseudomanifold-with-boundary, given by a facet subset.
#[derive(Clone, Debug)]
pub struct SubcomplexInclusion {
    pub host: Triangulation,
    pub selected: Vec<usize>,
}

impl SubcomplexInclusion {
    pub fn new(host: Triangulation, selected: Vec<usize>) -> Result<Self> {
        for (ridge, fs) in host.ridge_incidence() {
            if fs.len() > 2 {
                return Err(Error::structural(format!(
                    "host face {ridge:?} lies in {} facets, so the host is not a pseudomanifold with boundary",
                    fs.len()
                )));
            }
        }
        let mut seen = BTreeSet::new();
        for &i in &selected {
            if i >= host.facets.len() {
                return Err(Error::structural(format!("selected facet {i} out of range")));
            }
            if !seen.insert(i) {
                return Err(Error::structural(format!("facet {i} selected twice")));
            }
        }
        Ok(SubcomplexInclusion { host, selected })
    }
}

/// Ridges contained in exactly one facet of the given facet list, i.e. the
/// boundary of a pseudomanifold with boundary.
fn boundary_ridges(facets: &[&Vec<u32>]) -> Vec<Vec<u32>> {
    let mut count: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for f in facets {
        let mut sorted = (*f).clone();
        sorted.sort_unstable();
        for skip in 0..sorted.len() {
            let mut ridge = sorted.clone();
            ridge.remove(skip);
            *count.entry(ridge).or_insert(0) += 1;
        }
    }
    count.into_iter().filter(|(_, c)| *c == 1).map(|(r, _)| r).collect()
}

/// Connected components of a pure (d-1)-complex, via shared (d-2)-faces.
fn ridge_components(ridges: &[Vec<u32>]) -> Vec<Vec<usize>> {
    let mut subface_map: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    for (i, r) in ridges.iter().enumerate() {
        for skip in 0..r.len() {
            let mut sub = r.clone();
            sub.remove(skip);
            subface_map.entry(sub).or_default().push(i);
        }
    }
    let n = ridges.len();
    let mut comp = vec![usize::MAX; n];
    let mut components = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = Vec::new();
        let mut stack = vec![start];
        comp[start] = id;
        while let Some(r) = stack.pop() {
            members.push(r);
            let mut sorted = ridges[r].clone();
            sorted.sort_unstable();
            for skip in 0..sorted.len() {
                let mut sub = sorted.clone();
                sub.remove(skip);
                for &other in &subface_map[&sub] {
                    if comp[other] == usize::MAX {
                        comp[other] = id;
                        stack.push(other);
                    }
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    components
}

/// Does every boundary component of the subcomplex lie entirely in the
/// boundary of the host, or entirely in its interior?
pub fn is_sk_embedding(inc: &SubcomplexInclusion) -> bool {
    let host_facets: Vec<&Vec<u32>> = inc.host.facets.iter().collect();
    let host_boundary: BTreeSet<Vec<u32>> = boundary_ridges(&host_facets).into_iter().collect();
    let sub_facets: Vec<&Vec<u32>> =
        inc.selected.iter().map(|&i| &inc.host.facets[i]).collect();
    let sub_boundary = boundary_ridges(&sub_facets);
    for component in ridge_components(&sub_boundary) {
        let in_host_boundary: Vec<bool> = component
            .iter()
            .map(|&i| host_boundary.contains(&sub_boundary[i]))
            .collect();
        if in_host_boundary.iter().any(|&x| x) && !in_host_boundary.iter().all(|&x| x) {
            return false;
        }
    }
    true
}

#[cfg(test)]
pub mod tests {
    use super::*;
    use crate::homology::homology;
    use crate::abgroup::FgAbGroup;

    pub fn complex_of_sphere(d: usize) -> ChainComplex {
        sphere_boundary(d).chain_complex().0
    }

    #[test]
    fn sphere_boundary_is_valid_and_orientable() {
        let s2 = sphere_boundary(2);
        assert_eq!(s2.facets.len(), 4);
        let report = s2.validate();
        assert!(report.is_valid(), "{:?}", report.violations);
        assert!(report.connected);
        assert_eq!(report.orientable, Some(true));
        assert_eq!(s2.euler_characteristic(), 2);
    }

    #[test]
    fn odd_spheres_have_zero_euler_characteristic() {
        assert_eq!(sphere_boundary(3).euler_characteristic(), 0);
        assert_eq!(sphere_boundary(1).euler_characteristic(), 0);
    }

    #[test]
    fn face_in_three_facets_is_invalid() {
        let t = Triangulation::new(
            2,
            5,
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4]],
        );
        let report = t.validate();
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| v.contains("[0, 1]")), "{:?}", report.violations);
    }

    #[test]
    fn torus_fixture_shape() {
        let t2 = staircase_torus(2);
        assert_eq!(t2.vertex_count, 9);
        assert_eq!(t2.facets.len(), 18);
        let report = t2.validate();
        assert!(report.is_valid(), "{:?}", report.violations);
        assert_eq!(report.orientable, Some(true));
        assert_eq!(t2.euler_characteristic(), 0);
        let (c, _) = t2.chain_complex();
        let h = homology(&c);
        assert_eq!(h[0], FgAbGroup::free(1));
        assert_eq!(h[1], FgAbGroup::free(2));
        assert_eq!(h[2], FgAbGroup::free(1));
    }

    #[test]
    fn torus_3_homology() {
        let t3 = staircase_torus(3);
        assert_eq!(t3.facets.len(), 162);
        let (c, _) = t3.chain_complex();
        let h = homology(&c);
        let betti: Vec<usize> = h.iter().map(|g| g.free_rank()).collect();
        assert_eq!(betti, vec![1, 3, 3, 1]);
        assert!(h.iter().all(|g| g.torsion().is_empty()));
    }

    #[test]
    fn klein_bottle_from_reflected_circle() {
        let s1 = sphere_boundary(1);
        // reflection fixing vertex 0
        let k = mapping_torus(&s1, &[0, 2, 1]).unwrap();
        let report = k.validate();
        assert!(report.is_valid(), "{:?}", report.violations);
        assert_eq!(report.orientable, Some(false));
        assert_eq!(k.euler_characteristic(), 0);
        let (c, _) = k.chain_complex();
        let h = homology(&c);
        assert_eq!(h[0], FgAbGroup::free(1));
        assert_eq!(h[1], FgAbGroup::new(1, vec![BigInt::from(2)]));
        assert_eq!(h[2], FgAbGroup::trivial());
    }

    #[test]
    fn mapping_torus_of_identity_is_product_with_circle() {
        let s2 = sphere_boundary(2);
        let m = mapping_torus(&s2, &[0, 1, 2, 3]).unwrap();
        let report = m.validate();
        assert!(report.is_valid(), "{:?}", report.violations);
        assert_eq!(m.euler_characteristic(), 0);
        let (c, _) = m.chain_complex();
        let h = homology(&c);
        let betti: Vec<usize> = h.iter().map(|g| g.free_rank()).collect();
        assert_eq!(betti, vec![1, 1, 1, 1]);
    }

    #[test]
    fn product_of_spheres() {
        let s2 = sphere_boundary(2);
        let p = staircase_product(&s2, &s2);
        assert_eq!(p.facets.len(), 96);
        let report = p.validate();
        assert!(report.is_valid(), "{:?}", report.violations);
        let (c, _) = p.chain_complex();
        let betti: Vec<usize> = homology(&c).iter().map(|g| g.free_rank()).collect();
        assert_eq!(betti, vec![1, 0, 2, 0, 1]);
    }

    #[test]
    fn alternating_product_admits_reflection_and_rotation() {
        let s2 = sphere_boundary(2);
        let p = alternating_circle_product(&s2, 2);
        let report = p.validate();
        assert!(report.is_valid(), "{:?}", report.violations);
        let refl = circle_reflection(&s2, 2);
        let rot = circle_rotation_by_two(&s2, 2);
        p.check_automorphism(&refl).unwrap();
        p.check_automorphism(&rot).unwrap();
        let (c, _) = p.chain_complex();
        let betti: Vec<usize> = homology(&c).iter().map(|g| g.free_rank()).collect();
        assert_eq!(betti, vec![1, 1, 1, 1]);
    }

    #[test]
    fn fundamental_cycles_are_cycles() {
        for t in [
            sphere_boundary(2),
            sphere_boundary(4),
            staircase_torus(2),
            crate::fixtures::complex_projective_plane(),
            staircase_product(&sphere_boundary(2), &sphere_boundary(2)),
        ] {
            let (complex, faces) = t.chain_complex();
            let cycle = t.fundamental_cycle(&faces).unwrap();
            let sparse: std::collections::BTreeMap<u32, BigInt> = cycle
                .iter()
                .enumerate()
                .filter(|(_, v)| !num_traits::Zero::is_zero(*v))
                .map(|(i, v)| (i as u32, v.clone()))
                .collect();
            assert!(!sparse.is_empty());
            let boundary = complex.boundary(t.dimension).unwrap().apply_column(&sparse);
            assert!(boundary.is_empty(), "fundamental chain has nonzero boundary");
        }
    }

    #[test]
    fn file_format_round_trip() {
        let mut t = sphere_boundary(2).oriented().unwrap();
        t.permutation = Some(vec![1, 0, 2, 3]);
        let text = t.serialize();
        let back = Triangulation::parse(&text).unwrap();
        assert_eq!(t, back);
        assert_eq!(back.serialize(), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = Triangulation::parse("dim 2\nvertices x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn sk_embedding_collar_in_cylinder() {
        // cylinder: circle x two segments; sub = first segment's prisms
        let s1 = sphere_boundary(1);
        let cyl2 = cylinder(&s1, 2);
        let first_layer: Vec<usize> = (0..cyl2.facets.len())
            .filter(|&i| cyl2.facets[i].iter().all(|&v| v < 6))
            .collect();
        assert!(!first_layer.is_empty());
        let inc = SubcomplexInclusion::new(cyl2.clone(), first_layer).unwrap();
        assert!(is_sk_embedding(&inc));
        // the whole host in itself
        let all = SubcomplexInclusion::new(cyl2.clone(), (0..cyl2.facets.len()).collect()).unwrap();
        assert!(is_sk_embedding(&all));
    }

    #[test]
    fn sk_embedding_fails_for_partial_boundary_overlap() {
        // disk = cone over a hexagon; two adjacent triangles share part of
        // the boundary circle and part of the interior
        let hexagon_disk = Triangulation::new(
            2,
            7,
            (0..6u32).map(|i| vec![6, i, (i + 1) % 6]).collect(),
        );
        let inc = SubcomplexInclusion::new(hexagon_disk, vec![0, 1]).unwrap();
        assert!(!is_sk_embedding(&inc));
    }

    /// t x [0, layers] as stacked prisms, no gluing: a manifold with boundary.
    pub fn cylinder(t: &Triangulation, layers: u32) -> Triangulation {
        let n = t.vertex_count as u32;
        let mut facets = Vec::new();
        for f in &t.facets {
            let mut sorted = f.clone();
            sorted.sort_unstable();
            let d = sorted.len();
            for level in 0..layers {
                for split in 0..d {
                    let mut facet = Vec::with_capacity(d + 1);
                    for &v in &sorted[..=split] {
                        facet.push(level * n + v);
                    }
                    for &v in &sorted[split..] {
                        facet.push((level + 1) * n + v);
                    }
                    facets.push(facet);
                }
            }
        }
        facets.sort();
        Triangulation::new(t.dimension + 1, ((layers + 1) * n) as usize, facets)
    }
}
