//! Built-in triangulation generators, byte-identical per name.

use crate::error::{Error, Result};
use crate::triangulation::{
    alternating_circle_product, sphere_boundary, staircase_product, staircase_torus,
    Triangulation,
};

/// The 6-vertex triangulation of the real projective plane: one triangle
/// from each complementary pair, every edge in exactly two triangles.
const RP2_FACETS: [[u32; 3]; 10] = [
    [0, 1, 2],
    [0, 1, 3],
    [0, 2, 4],
    [0, 3, 5],
    [0, 4, 5],
    [1, 2, 5],
    [1, 3, 4],
    [1, 4, 5],
    [2, 3, 4],
    [2, 3, 5],
];

/// The 9-vertex triangulation of the complex projective plane: the unique
/// 36-facet complementarity 4-manifold on 9 vertices. Every 3-subset is a
/// face and a 5-subset is a facet exactly when its complementary 4-subset
/// is not a face.
const CP2_FACETS: [[u32; 5]; 36] = [
    [0, 1, 2, 3, 4],
    [0, 1, 2, 3, 5],
    [0, 1, 2, 4, 5],
    [0, 1, 3, 4, 6],
    [0, 1, 3, 5, 6],
    [0, 1, 4, 5, 7],
    [0, 1, 4, 6, 7],
    [0, 1, 5, 6, 8],
    [0, 1, 5, 7, 8],
    [0, 1, 6, 7, 8],
    [0, 2, 3, 4, 8],
    [0, 2, 3, 5, 6],
    [0, 2, 3, 6, 7],
    [0, 2, 3, 7, 8],
    [0, 2, 4, 5, 8],
    [0, 2, 5, 6, 8],
    [0, 2, 6, 7, 8],
    [0, 3, 4, 6, 7],
    [0, 3, 4, 7, 8],
    [0, 4, 5, 7, 8],
    [1, 2, 3, 4, 8],
    [1, 2, 3, 5, 7],
    [1, 2, 3, 7, 8],
    [1, 2, 4, 5, 7],
    [1, 2, 4, 6, 7],
    [1, 2, 4, 6, 8],
    [1, 2, 6, 7, 8],
    [1, 3, 4, 6, 8],
    [1, 3, 5, 6, 8],
    [1, 3, 5, 7, 8],
    [2, 3, 5, 6, 7],
    [2, 4, 5, 6, 7],
    [2, 4, 5, 6, 8],
    [3, 4, 5, 6, 7],
    [3, 4, 5, 6, 8],
    [3, 4, 5, 7, 8],
];

pub fn real_projective_plane() -> Triangulation {
    Triangulation::new(2, 6, RP2_FACETS.iter().map(|f| f.to_vec()).collect())
}

pub fn complex_projective_plane() -> Triangulation {
    Triangulation::new(4, 9, CP2_FACETS.iter().map(|f| f.to_vec()).collect())
        .oriented()
        .expect("the complex projective plane is orientable")
}

/// Product with a 4-vertex circle whose staircase direction alternates, so
/// the circle reflection and the rotation by two are automorphisms.
pub fn circle_product(t: &Triangulation) -> Triangulation {
    alternating_circle_product(t, 2)
}

pub const FIXTURE_NAMES: [&str; 15] = [
    "s1", "s2", "s3", "s4", "s5", "t2", "t3", "t4", "t5", "rp2", "cp2", "s2xs1", "s3xs1",
    "cp2xs1", "s2xs2",
];

/// Deterministic triangulation for a built-in fixture name.
pub fn fixture(name: &str) -> Result<Triangulation> {
    let oriented = |t: Triangulation| t.oriented().expect("fixture is orientable");
    Ok(match name {
        "s1" => oriented(sphere_boundary(1)),
        "s2" => oriented(sphere_boundary(2)),
        "s3" => oriented(sphere_boundary(3)),
        "s4" => oriented(sphere_boundary(4)),
        "s5" => oriented(sphere_boundary(5)),
        "t2" => oriented(staircase_torus(2)),
        "t3" => oriented(staircase_torus(3)),
        "t4" => oriented(staircase_torus(4)),
        "t5" => oriented(staircase_torus(5)),
        "rp2" => real_projective_plane(),
        "cp2" => complex_projective_plane(),
        "s2xs1" => oriented(circle_product(&sphere_boundary(2))),
        "s3xs1" => oriented(circle_product(&sphere_boundary(3))),
        "cp2xs1" => oriented(circle_product(&complex_projective_plane())),
        "s2xs2" => oriented(staircase_product(&sphere_boundary(2), &sphere_boundary(2))),
        other => return Err(Error::contract(format!("unknown fixture name '{other}'"))),
    })
}

/// Vertex permutations of the staircase torus `(Z/3)^n`.
pub mod torus_maps {
    fn digits(mut v: u32, n: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            out.push(v % 3);
            v /= 3;
        }
        out
    }

    fn label(coords: &[u32]) -> u32 {
        coords.iter().rev().fold(0, |acc, &c| acc * 3 + c)
    }

    pub fn translation(n: usize, delta: &[u32]) -> Vec<u32> {
        assert_eq!(delta.len(), n);
        let total = 3u32.pow(n as u32);
        (0..total)
            .map(|v| {
                let d: Vec<u32> =
                    digits(v, n).iter().zip(delta).map(|(a, b)| (a + b) % 3).collect();
                label(&d)
            })
            .collect()
    }

    pub fn axis_permutation(n: usize, perm: &[usize]) -> Vec<u32> {
        assert_eq!(perm.len(), n);
        let total = 3u32.pow(n as u32);
        (0..total)
            .map(|v| {
                let d = digits(v, n);
                let moved: Vec<u32> = (0..n).map(|i| d[perm[i]]).collect();
                label(&moved)
            })
            .collect()
    }

    /// x -> -x - (1, ..., 1): reverses the vertex order, hence reverses
    /// orientation in odd dimensions.
    pub fn point_reflection(n: usize) -> Vec<u32> {
        let total = 3u32.pow(n as u32);
        (0..total).map(|v| total - 1 - v).collect()
    }
}
