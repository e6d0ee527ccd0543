//! Grid enumeration for the nerve of a squares category, its simplicial
//! structure, and the string-to-grid indexing of the comparison map.

use super::*;

/// Rectangular grid of squares used while pasting rows and columns.
struct RectGrid {
    rows: usize,
    cols: usize,
    squares: Vec<SquareDecl>,
}

impl RectGrid {
    fn at(&self, r: usize, c: usize) -> &SquareDecl {
        &self.squares[r * self.cols + c]
    }

    fn paste_vertical(c: &SquaresCategory, a: &SquareDecl, b: &SquareDecl) -> SquareDecl {
        SquareDecl {
            top: a.top.clone(),
            left: c.vcomp[&(a.left.clone(), b.left.clone())].clone(),
            right: c.vcomp[&(a.right.clone(), b.right.clone())].clone(),
            bottom: b.bottom.clone(),
        }
    }

    fn paste_horizontal(c: &SquaresCategory, a: &SquareDecl, b: &SquareDecl) -> SquareDecl {
        SquareDecl {
            top: c.hcomp[&(a.top.clone(), b.top.clone())].clone(),
            left: a.left.clone(),
            right: b.right.clone(),
            bottom: c.hcomp[&(a.bottom.clone(), b.bottom.clone())].clone(),
        }
    }

    /// Remove corner row k: square rows k-1 and k merge (or an edge row
    /// drops when k is extremal).
    fn delete_corner_row(&self, c: &SquaresCategory, k: usize) -> RectGrid {
        let mut squares = Vec::new();
        for r in 0..self.rows - 1 {
            for col in 0..self.cols {
                let sq = if k != self.rows && r + 1 == k {
                    Self::paste_vertical(c, self.at(r, col), self.at(r + 1, col))
                } else if k != self.rows && r + 1 > k {
                    self.at(r + 1, col).clone()
                } else {
                    self.at(r, col).clone()
                };
                squares.push(sq);
            }
        }
        RectGrid { rows: self.rows - 1, cols: self.cols, squares }
    }

    fn delete_corner_col(&self, c: &SquaresCategory, k: usize) -> RectGrid {
        let mut squares = Vec::new();
        for r in 0..self.rows {
            for col in 0..self.cols - 1 {
                let sq = if k != self.cols && col + 1 == k {
                    Self::paste_horizontal(c, self.at(r, col), self.at(r, col + 1))
                } else if k != self.cols && col + 1 > k {
                    self.at(r, col + 1).clone()
                } else {
                    self.at(r, col).clone()
                };
                squares.push(sq);
            }
        }
        RectGrid { rows: self.rows, cols: self.cols - 1, squares }
    }
}

/// The i-th face of a grid simplex: delete the i-th corner row and column,
/// pasting the neighbouring squares.
pub fn grid_face(c: &SquaresCategory, g: &GridSimplex, i: usize) -> GridSimplex {
    assert!(g.n >= 1 && i <= g.n);
    let mut corners = Vec::new();
    for r in 0..=g.n {
        if r == i {
            continue;
        }
        for col in 0..=g.n {
            if col == i {
                continue;
            }
            corners.push(g.corner(r, col).to_string());
        }
    }
    if g.n == 1 {
        return GridSimplex { n: 0, squares: Vec::new(), corners };
    }
    let rect = RectGrid { rows: g.n, cols: g.n, squares: g.squares.clone() };
    let rect = rect.delete_corner_row(c, i).delete_corner_col(c, i);
    GridSimplex { n: g.n - 1, squares: rect.squares, corners }
}

fn hedge(g: &GridSimplex, corner_row: usize, col: usize) -> String {
    if corner_row < g.n {
        g.squares[corner_row * g.n + col].top.clone()
    } else {
        g.squares[(g.n - 1) * g.n + col].bottom.clone()
    }
}

fn vedge(g: &GridSimplex, row: usize, corner_col: usize) -> String {
    if corner_col < g.n {
        g.squares[row * g.n + corner_col].left.clone()
    } else {
        g.squares[row * g.n + g.n - 1].right.clone()
    }
}

/// The j-th degeneracy: duplicate corner row and column j, gluing with
/// identities and identity-bordered squares.
pub fn grid_degeneracy(c: &SquaresCategory, g: &GridSimplex, j: usize) -> GridSimplex {
    assert!(j <= g.n);
    let n = g.n + 1;
    let rho = |x: usize| if x <= j { x } else { x - 1 };
    let mut corners = Vec::new();
    for r in 0..=n {
        for col in 0..=n {
            corners.push(g.corner(rho(r), rho(col)).to_string());
        }
    }
    let old_square_row = |r: usize| if r < j { r } else { r - 1 };
    let mut squares = Vec::new();
    for r in 0..n {
        for col in 0..n {
            let sq = if r == j && col == j {
                let o = g.corner(j, j);
                SquareDecl {
                    top: c.h_identity(o).expect("valid category has identities"),
                    left: c.v_identity(o).expect("valid category has identities"),
                    right: c.v_identity(o).expect("valid category has identities"),
                    bottom: c.h_identity(o).expect("valid category has identities"),
                }
            } else if r == j {
                let oc = old_square_row(col);
                let h = hedge(g, j, oc);
                SquareDecl {
                    top: h.clone(),
                    left: c.v_identity(g.corner(j, oc)).expect("identities"),
                    right: c.v_identity(g.corner(j, oc + 1)).expect("identities"),
                    bottom: h,
                }
            } else if col == j {
                let or = old_square_row(r);
                let v = vedge(g, or, j);
                SquareDecl {
                    top: c.h_identity(g.corner(or, j)).expect("identities"),
                    left: v.clone(),
                    right: v,
                    bottom: c.h_identity(g.corner(or + 1, j)).expect("identities"),
                }
            } else {
                g.squares[old_square_row(r) * g.n + old_square_row(col)].clone()
            };
            squares.push(sq);
        }
    }
    GridSimplex { n, squares, corners }
}

/// Eilenberg-Zilber normal form of a grid: the degeneracy word (strictly
/// decreasing) over its nondegenerate core.
pub fn grid_normal_form(c: &SquaresCategory, g: &GridSimplex) -> (Vec<usize>, GridSimplex) {
    let mut word = Vec::new();
    let mut current = g.clone();
    'strip: loop {
        for j in 0..current.n {
            // the inverse of s_j is the face d_{j+1}
            let candidate = grid_face(c, &current, j + 1);
            if grid_degeneracy(c, &candidate, j) == current {
                word.push(j);
                current = candidate;
                continue 'strip;
            }
        }
        break;
    }
    (normalize_word(word), current)
}

/// The nerve of a squares category: n-simplices are n by n grids of
/// distinguished squares, faces delete a row and column, degeneracies
/// repeat one. Enumeration stops at `n_max`; `budget` bounds the number of
/// partial grids visited.
pub fn grid_nerve(c: &SquaresCategory, n_max: usize, budget: usize) -> Result<SimplicialObject> {
    let report = c.validate();
    if !report.is_valid() {
        return Err(Error::contract(format!(
            "squares category is invalid: {}",
            report.violations.join("; ")
        )));
    }
    let mut visited = 0usize;
    let mut charge = |visited: &mut usize| -> Result<()> {
        *visited += 1;
        if *visited > budget {
            Err(Error::resource(format!("grid enumeration exceeded the budget of {budget}")))
        } else {
            Ok(())
        }
    };

    // index squares by their boundary constraints
    let mut by_none: Vec<&SquareDecl> = c.squares.iter().collect();
    by_none.sort();
    let mut by_left: BTreeMap<&str, Vec<&SquareDecl>> = BTreeMap::new();
    let mut by_top: BTreeMap<&str, Vec<&SquareDecl>> = BTreeMap::new();
    let mut by_top_left: BTreeMap<(&str, &str), Vec<&SquareDecl>> = BTreeMap::new();
    for sq in &c.squares {
        by_left.entry(&sq.left).or_default().push(sq);
        by_top.entry(&sq.top).or_default().push(sq);
        by_top_left.entry((&sq.top, &sq.left)).or_default().push(sq);
    }

    let mut grids_by_degree: Vec<Vec<GridSimplex>> = Vec::new();
    let mut objects = c.objects.clone();
    objects.sort();
    grids_by_degree.push(
        objects
            .iter()
            .map(|o| GridSimplex { n: 0, squares: Vec::new(), corners: vec![o.clone()] })
            .collect(),
    );

    for n in 1..=n_max {
        let mut found: BTreeSet<GridSimplex> = BTreeSet::new();
        let mut partial: Vec<&SquareDecl> = Vec::new();
        enumerate_grids(
            c,
            n,
            &mut partial,
            &by_none,
            &by_left,
            &by_top,
            &by_top_left,
            &mut found,
            &mut visited,
            &mut charge,
        )?;
        grids_by_degree.push(found.into_iter().collect());
    }

    // identify degenerate grids and name the nondegenerate ones
    let mut builder = SimplicialObjectBuilder::new(Kind::Simplicial);
    let mut core_ids: BTreeMap<GridSimplex, String> = BTreeMap::new();
    let mut cores_by_degree: Vec<Vec<GridSimplex>> = Vec::new();
    for (degree, grids) in grids_by_degree.iter().enumerate() {
        let mut cores = Vec::new();
        for g in grids {
            let (word, _) = grid_normal_form(c, g);
            if word.is_empty() {
                let id = format!("g{}_{}", degree, cores.len());
                core_ids.insert(g.clone(), id.clone());
                builder.cell(degree, &id);
                cores.push(g.clone());
            }
        }
        cores_by_degree.push(cores);
    }
    for (degree, cores) in cores_by_degree.iter().enumerate() {
        if degree == 0 {
            continue;
        }
        for g in cores {
            let id = core_ids[g].clone();
            for i in 0..=degree {
                let f = grid_face(c, g, i);
                let (word, core) = grid_normal_form(c, &f);
                let target = core_ids.get(&core).ok_or_else(|| {
                    Error::structural(format!(
                        "face of a degree-{degree} grid is not among the enumerated grids"
                    ))
                })?;
                builder.face(&id, i, target, word);
            }
        }
    }
    builder.finish()
}

#[allow(clippy::too_many_arguments)]
fn enumerate_grids<'a>(
    c: &SquaresCategory,
    n: usize,
    partial: &mut Vec<&'a SquareDecl>,
    by_none: &[&'a SquareDecl],
    by_left: &BTreeMap<&str, Vec<&'a SquareDecl>>,
    by_top: &BTreeMap<&str, Vec<&'a SquareDecl>>,
    by_top_left: &BTreeMap<(&str, &str), Vec<&'a SquareDecl>>,
    found: &mut BTreeSet<GridSimplex>,
    visited: &mut usize,
    charge: &mut impl FnMut(&mut usize) -> Result<()>,
) -> Result<()> {
    if partial.len() == n * n {
        let squares: Vec<SquareDecl> = partial.iter().map(|s| (*s).clone()).collect();
        let g = assemble_grid(c, n, squares);
        found.insert(g);
        return Ok(());
    }
    charge(visited)?;
    let (r, col) = (partial.len() / n, partial.len() % n);
    let top = if r > 0 { Some(partial[(r - 1) * n + col].bottom.as_str()) } else { None };
    let left = if col > 0 { Some(partial[r * n + col - 1].right.as_str()) } else { None };
    let empty: Vec<&SquareDecl> = Vec::new();
    let candidates: &[&SquareDecl] = match (top, left) {
        (None, None) => by_none,
        (Some(t), None) => by_top.get(t).map(|v| v.as_slice()).unwrap_or(&empty),
        (None, Some(l)) => by_left.get(l).map(|v| v.as_slice()).unwrap_or(&empty),
        (Some(t), Some(l)) => by_top_left.get(&(t, l)).map(|v| v.as_slice()).unwrap_or(&empty),
    };
    let candidates = candidates.to_vec();
    for sq in candidates {
        partial.push(sq);
        enumerate_grids(c, n, partial, by_none, by_left, by_top, by_top_left, found, visited, charge)?;
        partial.pop();
    }
    Ok(())
}

fn assemble_grid(c: &SquaresCategory, n: usize, squares: Vec<SquareDecl>) -> GridSimplex {
    let mut corners = vec![String::new(); (n + 1) * (n + 1)];
    for r in 0..n {
        for col in 0..n {
            let sq = &squares[r * n + col];
            let (a, b, cc, d) = c.square_corners(sq).expect("distinguished squares have corners");
            corners[r * (n + 1) + col] = a;
            corners[r * (n + 1) + col + 1] = b;
            corners[(r + 1) * (n + 1) + col] = cc;
            corners[(r + 1) * (n + 1) + col + 1] = d;
        }
    }
    GridSimplex { n, squares, corners }
}

/// Grid simplex of a string of 2m+1 composable pieces
/// `W_m ... W_1 W_0 W'_1 ... W'_m` (in that order): corner (i, j) is the
/// designated union of W_i, ..., W_0, ..., W'_j, and the grid squares are
/// the distinguished squares over the unique inclusions between corners.
pub fn string_to_grid(c: &SquaresCategory, string: &[String]) -> Result<GridSimplex> {
    if string.len() % 2 == 0 {
        return Err(Error::contract("a subdivision simplex is a string of odd length"));
    }
    let m = (string.len() - 1) / 2;
    let w = |i: usize| -> &String { &string[m - i] }; // W_i
    let wp = |j: usize| -> &String { &string[m + j] }; // W'_j

    let mut corners = vec![String::new(); (m + 1) * (m + 1)];
    corners[0] = w(0).clone();
    for j in 1..=m {
        corners[j] = c.union(&corners[j - 1], wp(j))?;
    }
    for i in 1..=m {
        for j in 0..=m {
            corners[i * (m + 1) + j] = c.union(w(i), &corners[(i - 1) * (m + 1) + j])?;
        }
    }
    let mut squares = Vec::new();
    for r in 1..=m {
        for col in 1..=m {
            let a = &corners[(r - 1) * (m + 1) + col - 1];
            let b = &corners[(r - 1) * (m + 1) + col];
            let cc = &corners[r * (m + 1) + col - 1];
            let d = &corners[r * (m + 1) + col];
            let sq = SquareDecl {
                top: c.unique_hmor(a, b)?,
                left: c.unique_vmor(a, cc)?,
                right: c.unique_vmor(b, d)?,
                bottom: c.unique_hmor(cc, d)?,
            };
            if !c.squares.contains(&sq) {
                return Err(Error::contract(format!(
                    "missing designated square for the pair ({a}, {b}; {cc}, {d})"
                )));
            }
            squares.push(sq);
        }
    }
    Ok(GridSimplex { n: m, squares, corners })
}

/// The i-th face of a (2m+1)-string in the edgewise subdivision: the ends
/// drop for i = m, the central triple merges for i = 0, and the symmetric
/// pair at distance i merges otherwise.
pub fn string_sd_face(c: &SquaresCategory, string: &[String], i: usize) -> Result<Vec<String>> {
    let m = (string.len() - 1) / 2;
    if string.len() % 2 == 0 || m == 0 || i > m {
        return Err(Error::contract("face index out of range for the string"));
    }
    if i == m {
        return Ok(string[1..2 * m].to_vec());
    }
    if i == 0 {
        let center = c.union(&string[m - 1], &c.union(&string[m], &string[m + 1])?)?;
        let mut out = Vec::new();
        out.extend_from_slice(&string[..m - 1]);
        out.push(center);
        out.extend_from_slice(&string[m + 2..]);
        return Ok(out);
    }
    // merge W_{i+1} with W_i and W'_i with W'_{i+1}
    let left = c.union(&string[m - i - 1], &string[m - i])?;
    let right = c.union(&string[m + i], &string[m + i + 1])?;
    let mut out = Vec::new();
    out.extend_from_slice(&string[..m - i - 1]);
    out.push(left);
    out.extend_from_slice(&string[m - i + 1..m + i]);
    out.push(right);
    out.extend_from_slice(&string[m + i + 2..]);
    Ok(out)
}
