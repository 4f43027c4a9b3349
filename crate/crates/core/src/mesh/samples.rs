//! Small built-in meshes used by the CLI, experiments, and tests.

use super::{edge_key, Edge, TriMesh};
use std::collections::BTreeMap;

fn uniform(n_vertices: usize, faces: Vec<[usize; 3]>, length: f64) -> TriMesh {
    let mut lengths: BTreeMap<Edge, f64> = BTreeMap::new();
    for f in &faces {
        for k in 0..3 {
            lengths.insert(edge_key(f[k], f[(k + 1) % 3]), length);
        }
    }
    TriMesh::new(n_vertices, faces, &lengths).expect("built-in mesh is valid")
}

/// Boundary of the regular tetrahedron, side 1: a sphere.
pub fn tetrahedron() -> TriMesh {
    uniform(
        4,
        vec![[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]],
        1.0,
    )
}

/// The regular octahedron boundary, side 1.
pub fn octahedron() -> TriMesh {
    // apexes 0 (top) and 5 (bottom) over the square 1-2-3-4
    let mut faces = Vec::new();
    for k in 0..4 {
        let a = 1 + k;
        let b = 1 + (k + 1) % 4;
        faces.push([0, a, b]);
        faces.push([5, b, a]);
    }
    uniform(6, faces, 1.0)
}

/// The regular icosahedron boundary, side 1.
pub fn icosahedron() -> TriMesh {
    // vertex 0 top, 1..=5 upper ring, 6..=10 lower ring, 11 bottom
    let mut faces = Vec::new();
    for k in 0..5 {
        let u = 1 + k;
        let un = 1 + (k + 1) % 5;
        let l = 6 + k;
        let ln = 6 + (k + 1) % 5;
        faces.push([0, u, un]);
        faces.push([u, l, un]);
        faces.push([un, l, ln]);
        faces.push([11, ln, l]);
    }
    uniform(12, faces, 1.0)
}

/// The 7-vertex (Moebius-Kantor) torus: faces {i, i+1, i+3} and
/// {i, i+2, i+3} mod 7, using all 21 edges.
fn torus7_faces() -> Vec<[usize; 3]> {
    let mut faces = Vec::new();
    for i in 0..7usize {
        faces.push([i, (i + 1) % 7, (i + 3) % 7]);
        faces.push([i, (i + 2) % 7, (i + 3) % 7]);
    }
    faces
}

/// The minimal 7-vertex torus with unit edge lengths: 14 unit equilateral
/// faces realizing a flat hexagonal torus.
pub fn torus7() -> TriMesh {
    uniform(7, torus7_faces(), 1.0)
}

/// Antipodal quotient of the icosahedron: the 6-vertex projective plane
/// (the complete graph K6), with all 15 edge lengths equal to `length`.
fn rp2_6(length: f64) -> TriMesh {
    // the unique 6-vertex triangulation of RP^2: 10 of the 20 triangles of
    // K6, every one of the 15 edges in exactly two of them
    let faces = vec![
        [0, 1, 3],
        [0, 1, 4],
        [0, 2, 3],
        [0, 2, 5],
        [0, 4, 5],
        [1, 2, 4],
        [1, 2, 5],
        [1, 3, 5],
        [2, 3, 4],
        [3, 4, 5],
    ];
    uniform(6, faces, length)
}

/// RP^2 with unit edge lengths.
pub fn rp2_unit() -> TriMesh {
    rp2_6(1.0)
}

/// RP^2 with round-metric edge lengths: each edge is a geodesic arc of the
/// unit-sphere icosahedron, of central angle arccos(1/sqrt(5)).
pub fn rp2_round() -> TriMesh {
    rp2_6((1.0 / 5.0f64.sqrt()).acos())
}

/// An m x n grid torus (m, n >= 3): unit squares cut into two triangles
/// by a diagonal of length sqrt(2).
pub fn grid_torus(m: usize, n: usize) -> TriMesh {
    assert!(m >= 3 && n >= 3);
    let id = |i: usize, j: usize| (i % m) * n + (j % n);
    let mut faces = Vec::new();
    let mut lengths: BTreeMap<Edge, f64> = BTreeMap::new();
    for i in 0..m {
        for j in 0..n {
            let a = id(i, j);
            let b = id(i + 1, j);
            let c = id(i + 1, j + 1);
            let d = id(i, j + 1);
            faces.push([a, b, c]);
            faces.push([a, c, d]);
            lengths.insert(edge_key(a, b), 1.0);
            lengths.insert(edge_key(a, d), 1.0);
            lengths.insert(edge_key(a, c), 2.0f64.sqrt());
        }
    }
    TriMesh::new(m * n, faces, &lengths).expect("grid torus is valid")
}

/// An m x n Klein bottle grid: as the grid torus in the i direction, but
/// the j direction closes up with the orientation-reversing identification
/// (i, n) ~ (m - i mod m, 0). Valid for m >= 4, n >= 3.
pub fn klein_grid(m: usize, n: usize) -> TriMesh {
    assert!(m >= 4 && n >= 3);
    let id = |i: usize, j: usize| -> usize {
        let i = i % m;
        let j_wraps = j / n;
        let j = j % n;
        if j_wraps % 2 == 1 {
            ((m - i) % m) * n + j
        } else {
            i * n + j
        }
    };
    let mut faces = Vec::new();
    let mut lengths: BTreeMap<Edge, f64> = BTreeMap::new();
    for i in 0..m {
        for j in 0..n {
            let a = id(i, j);
            let b = id(i + 1, j);
            let c = id(i + 1, j + 1);
            let d = id(i, j + 1);
            faces.push([a, b, c]);
            faces.push([a, c, d]);
            lengths.insert(edge_key(a, b), 1.0);
            lengths.insert(edge_key(a, d), 1.0);
            lengths.insert(edge_key(a, c), 2.0f64.sqrt());
        }
    }
    TriMesh::new(m * n, faces, &lengths).expect("Klein grid is valid")
}

/// Resolves a built-in mesh by name.
pub fn by_name(name: &str) -> Option<TriMesh> {
    match name.trim().to_ascii_lowercase().as_str() {
        "tetrahedron" => Some(tetrahedron()),
        "octahedron" => Some(octahedron()),
        "icosahedron" => Some(icosahedron()),
        "torus7" => Some(torus7()),
        "rp2" | "rp2-round" => Some(rp2_round()),
        "rp2-unit" => Some(rp2_unit()),
        "torus-grid" => Some(grid_torus(3, 3)),
        "klein" => Some(klein_grid(4, 3)),
        _ => None,
    }
}
