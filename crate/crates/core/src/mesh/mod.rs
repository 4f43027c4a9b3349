//! Triangulated piecewise-flat closed surfaces with per-edge lengths.
//!
//! A `TriMesh` is a combinatorial closed surface (every edge in exactly two
//! faces, every vertex link a single cycle) together with a strictly
//! triangle-inequality-respecting length on each edge. Areas come from
//! Heron's formula per face; the Z2-homology 1-systole is computed exactly
//! in the edge metric via the homology cover; midpoint subdivision refines
//! the edge graph without changing the underlying flat metric.

mod homology;
pub mod samples;
mod systole;

pub use homology::z2_homology_basis;
pub use systole::{
    optimize_ratio, optimize_ratio_traced, systole_h1z2, systolic_ratio, LoopResult, SweepSample,
    SystoleReport, DEFAULT_B1_CAP,
};

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MeshError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a closed surface: {0}")]
    NotClosedSurface(String),
    #[error("triangle inequality violated in face ({0}, {1}, {2})")]
    TriangleInequalityViolated(usize, usize, usize),
    #[error("mesh is not connected")]
    Disconnected,
    #[error("no nontrivial Z2-homology class (b1 = 0)")]
    NoNontrivialClass,
    #[error("homology cover too large: b1 = {betti} exceeds cap {cap}")]
    CoverTooLarge { betti: usize, cap: usize },
    #[error("no feasible perturbation at the given step size")]
    StepTooLarge,
}

/// An unordered edge, stored with the smaller vertex first.
pub type Edge = (usize, usize);

fn edge_key(a: usize, b: usize) -> Edge {
    (a.min(b), a.max(b))
}

/// A validated closed triangulated surface with positive edge lengths.
#[derive(Clone, Debug)]
pub struct TriMesh {
    n_vertices: usize,
    faces: Vec<[usize; 3]>,
    /// sorted unordered vertex pairs
    edges: Vec<Edge>,
    edge_index: BTreeMap<Edge, usize>,
    /// lengths parallel to `edges`
    lengths: Vec<f64>,
    orientable: bool,
    euler_characteristic: i64,
    z2_betti1: usize,
}

impl TriMesh {
    /// Validates the closed-surface conditions, connectivity, and the
    /// strict triangle inequality in every face.
    pub fn new(
        n_vertices: usize,
        faces: Vec<[usize; 3]>,
        lengths: &BTreeMap<Edge, f64>,
    ) -> Result<Self, MeshError> {
        if n_vertices == 0 || faces.is_empty() {
            return Err(MeshError::Parse("empty mesh".into()));
        }
        for f in &faces {
            if f.iter().any(|&v| v >= n_vertices) {
                return Err(MeshError::Parse(format!(
                    "face ({}, {}, {}) references a missing vertex",
                    f[0], f[1], f[2]
                )));
            }
            if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                return Err(MeshError::Parse(format!(
                    "degenerate face ({}, {}, {})",
                    f[0], f[1], f[2]
                )));
            }
        }
        // collect edges with face incidence counts
        let mut edge_faces: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
        for (fi, f) in faces.iter().enumerate() {
            for k in 0..3 {
                edge_faces
                    .entry(edge_key(f[k], f[(k + 1) % 3]))
                    .or_default()
                    .push(fi);
            }
        }
        for (e, fs) in &edge_faces {
            if fs.len() != 2 {
                return Err(MeshError::NotClosedSurface(format!(
                    "edge ({}, {}) lies in {} faces, expected 2",
                    e.0,
                    e.1,
                    fs.len()
                )));
            }
        }
        let edges: Vec<Edge> = edge_faces.keys().cloned().collect();
        let edge_index: BTreeMap<Edge, usize> =
            edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();

        // vertex links must be single cycles
        check_links(n_vertices, &faces)?;

        // connectivity over the edge graph
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n_vertices];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n_vertices];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(MeshError::Disconnected);
        }

        // lengths: exactly one positive length per edge
        let mut len_vec = vec![0.0f64; edges.len()];
        for (e, l) in lengths {
            let Some(&i) = edge_index.get(e) else {
                return Err(MeshError::Parse(format!(
                    "length given for non-edge ({}, {})",
                    e.0, e.1
                )));
            };
            if !(l.is_finite() && *l > 0.0) {
                return Err(MeshError::Parse(format!(
                    "non-positive length on edge ({}, {})",
                    e.0, e.1
                )));
            }
            len_vec[i] = *l;
        }
        if lengths.len() != edges.len() {
            let missing = edges
                .iter()
                .find(|e| !lengths.contains_key(e))
                .expect("some edge lacks a length");
            return Err(MeshError::Parse(format!(
                "missing length for edge ({}, {})",
                missing.0, missing.1
            )));
        }
        for f in &faces {
            let a = len_vec[edge_index[&edge_key(f[0], f[1])]];
            let b = len_vec[edge_index[&edge_key(f[1], f[2])]];
            let c = len_vec[edge_index[&edge_key(f[0], f[2])]];
            if a >= b + c || b >= a + c || c >= a + b {
                return Err(MeshError::TriangleInequalityViolated(f[0], f[1], f[2]));
            }
        }

        let orientable = is_orientable(&faces, &edge_faces);
        let euler = n_vertices as i64 - edges.len() as i64 + faces.len() as i64;
        Ok(TriMesh {
            n_vertices,
            faces,
            edges,
            edge_index,
            lengths: len_vec,
            orientable,
            euler_characteristic: euler,
            z2_betti1: (2 - euler) as usize,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&edge_key(a, b)).copied()
    }

    pub fn length(&self, a: usize, b: usize) -> Option<f64> {
        self.edge_id(a, b).map(|i| self.lengths[i])
    }

    pub fn orientable(&self) -> bool {
        self.orientable
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.euler_characteristic
    }

    /// dim H_1(.; Z2) = 2 - euler characteristic for a closed surface.
    pub fn z2_betti1(&self) -> usize {
        self.z2_betti1
    }

    /// Total area: Heron's formula summed over faces.
    pub fn area(&self) -> f64 {
        self.faces
            .iter()
            .map(|f| {
                let a = self.length(f[0], f[1]).unwrap();
                let b = self.length(f[1], f[2]).unwrap();
                let c = self.length(f[0], f[2]).unwrap();
                heron(a, b, c)
            })
            .sum()
    }

    /// Same topology with new edge lengths (parallel to `edges`).
    pub fn with_lengths(&self, lengths: Vec<f64>) -> Result<Self, MeshError> {
        assert_eq!(lengths.len(), self.edges.len());
        let map: BTreeMap<Edge, f64> = self
            .edges
            .iter()
            .cloned()
            .zip(lengths.iter().cloned())
            .collect();
        TriMesh::new(self.n_vertices, self.faces.clone(), &map)
    }

    /// Uniformly scales all edge lengths.
    pub fn scaled(&self, factor: f64) -> TriMesh {
        let mut m = self.clone();
        for l in m.lengths.iter_mut() {
            *l *= factor;
        }
        m
    }

    /// Midpoint (1 -> 4) subdivision, `levels` times. The flat metric of
    /// every face is preserved exactly: half-edges get half the parent
    /// length and each midline is parallel to a side at half its length.
    pub fn subdivide(&self, levels: usize) -> TriMesh {
        let (m, _) = self.subdivide_tracked(levels);
        m
    }

    /// As [`subdivide`](Self::subdivide), also returning for each new edge
    /// the index of the base edge whose length it halves: new length =
    /// base length / 2^levels. Used by the optimizer to re-weight a
    /// subdivided mesh without rebuilding it.
    pub fn subdivide_tracked(&self, levels: usize) -> (TriMesh, Vec<usize>) {
        let mut mesh = self.clone();
        let mut parent: Vec<usize> = (0..self.edges.len()).collect();
        for _ in 0..levels {
            let (next, step_parent) = mesh.subdivide_once();
            parent = step_parent.iter().map(|&p| parent[p]).collect();
            mesh = next;
        }
        (mesh, parent)
    }

    fn subdivide_once(&self) -> (TriMesh, Vec<usize>) {
        let v0 = self.n_vertices;
        // midpoint vertex of edge i is v0 + i
        let midpoint = |a: usize, b: usize| v0 + self.edge_id(a, b).unwrap();
        let mut faces = Vec::with_capacity(self.faces.len() * 4);
        for f in &self.faces {
            let [a, b, c] = *f;
            let mab = midpoint(a, b);
            let mbc = midpoint(b, c);
            let mca = midpoint(c, a);
            faces.push([a, mab, mca]);
            faces.push([b, mbc, mab]);
            faces.push([c, mca, mbc]);
            faces.push([mab, mbc, mca]);
        }
        let mut lengths: BTreeMap<Edge, f64> = BTreeMap::new();
        let mut parent_of: BTreeMap<Edge, usize> = BTreeMap::new();
        let mut put = |key: Edge, parent_edge: usize, lengths: &mut BTreeMap<Edge, f64>| {
            lengths.insert(key, self.lengths[parent_edge] / 2.0);
            parent_of.insert(key, parent_edge);
        };
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            let m = v0 + i;
            put(edge_key(a, m), i, &mut lengths);
            put(edge_key(b, m), i, &mut lengths);
        }
        for f in &self.faces {
            let [a, b, c] = *f;
            let mab = midpoint(a, b);
            let mbc = midpoint(b, c);
            let mca = midpoint(c, a);
            // each midline is parallel to the opposite side
            put(edge_key(mab, mbc), self.edge_id(a, c).unwrap(), &mut lengths);
            put(edge_key(mbc, mca), self.edge_id(a, b).unwrap(), &mut lengths);
            put(edge_key(mab, mca), self.edge_id(b, c).unwrap(), &mut lengths);
        }
        let mesh = TriMesh::new(v0 + self.edges.len(), faces, &lengths)
            .expect("subdivision of a valid mesh is valid");
        let parent: Vec<usize> = mesh.edges.iter().map(|e| parent_of[e]).collect();
        (mesh, parent)
    }
}

pub(crate) fn heron(a: f64, b: f64, c: f64) -> f64 {
    let s = (a + b + c) / 2.0;
    (s * (s - a) * (s - b) * (s - c)).max(0.0).sqrt()
}

/// Every vertex link must be a single closed cycle.
fn check_links(n_vertices: usize, faces: &[[usize; 3]]) -> Result<(), MeshError> {
    let mut incident: Vec<Vec<[usize; 2]>> = vec![Vec::new(); n_vertices];
    for f in faces {
        for k in 0..3 {
            let v = f[k];
            incident[v].push([f[(k + 1) % 3], f[(k + 2) % 3]]);
        }
    }
    for (v, link_edges) in incident.iter().enumerate() {
        if link_edges.is_empty() {
            return Err(MeshError::NotClosedSurface(format!(
                "vertex {v} lies in no face"
            )));
        }
        // each link vertex must have degree exactly 2 in the link graph
        let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
        for e in link_edges {
            *deg.entry(e[0]).or_insert(0) += 1;
            *deg.entry(e[1]).or_insert(0) += 1;
        }
        if deg.values().any(|&d| d != 2) {
            return Err(MeshError::NotClosedSurface(format!(
                "link of vertex {v} is not a cycle"
            )));
        }
        // and the link graph must be connected (a single cycle)
        let start = link_edges[0][0];
        let mut seen: BTreeSet<usize> = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for e in link_edges {
                for (x, y) in [(e[0], e[1]), (e[1], e[0])] {
                    if x == u && seen.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
        }
        if seen.len() != deg.len() {
            return Err(MeshError::NotClosedSurface(format!(
                "link of vertex {v} has several components"
            )));
        }
    }
    Ok(())
}

/// Orientability via the dual graph: propagate face orientations across
/// shared edges; orientable iff no contradiction arises.
fn is_orientable(faces: &[[usize; 3]], edge_faces: &BTreeMap<Edge, Vec<usize>>) -> bool {
    // flip[f] = whether face f's stored vertex order must be reversed
    let mut flip: Vec<Option<bool>> = vec![None; faces.len()];
    let directed = |f: &[usize; 3], flipped: bool, a: usize, b: usize| -> bool {
        // does the (possibly flipped) boundary traverse a -> b?
        for k in 0..3 {
            let (x, y) = (f[k], f[(k + 1) % 3]);
            if !flipped && x == a && y == b {
                return true;
            }
            if flipped && x == b && y == a {
                return true;
            }
        }
        false
    };
    for start in 0..faces.len() {
        if flip[start].is_some() {
            continue;
        }
        flip[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(fi) = queue.pop_front() {
            let fl = flip[fi].unwrap();
            for k in 0..3 {
                let (a, b) = (faces[fi][k], faces[fi][(k + 1) % 3]);
                let e = edge_key(a, b);
                for &gi in &edge_faces[&e] {
                    if gi == fi {
                        continue;
                    }
                    // fi traverses the edge one way; gi must traverse it
                    // the opposite way
                    let fi_ab = directed(&faces[fi], fl, a, b);
                    let (x, y) = if fi_ab { (b, a) } else { (a, b) };
                    let need_flip = !directed(&faces[gi], false, x, y);
                    match flip[gi] {
                        None => {
                            flip[gi] = Some(need_flip);
                            queue.push_back(gi);
                        }
                        Some(g) => {
                            if g != need_flip {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

/// Parses the `systole-mesh v1` text format.
pub fn load_mesh(text: &str) -> Result<TriMesh, MeshError> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| MeshError::Parse("empty file".into()))?;
    if header != "systole-mesh v1" {
        return Err(MeshError::Parse(format!("bad header: {header}")));
    }
    let n_vertices = parse_count(lines.next(), "vertices")?;
    let n_faces = parse_count(lines.next(), "faces")?;
    let mut faces = Vec::with_capacity(n_faces);
    for _ in 0..n_faces {
        let line = lines
            .next()
            .ok_or_else(|| MeshError::Parse("unexpected end of face list".into()))?;
        let ids: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        let ids = ids.map_err(|_| MeshError::Parse(format!("bad face line: {line}")))?;
        if ids.len() != 3 {
            return Err(MeshError::Parse(format!("bad face line: {line}")));
        }
        faces.push([ids[0], ids[1], ids[2]]);
    }
    match lines.next() {
        Some("lengths") => {}
        other => {
            return Err(MeshError::Parse(format!(
                "expected 'lengths', got {other:?}"
            )))
        }
    }
    let mut lengths: BTreeMap<Edge, f64> = BTreeMap::new();
    for line in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(MeshError::Parse(format!("bad length line: {line}")));
        }
        let i: usize = parts[0]
            .parse()
            .map_err(|_| MeshError::Parse(format!("bad length line: {line}")))?;
        let j: usize = parts[1]
            .parse()
            .map_err(|_| MeshError::Parse(format!("bad length line: {line}")))?;
        let l: f64 = parts[2]
            .parse()
            .map_err(|_| MeshError::Parse(format!("bad length line: {line}")))?;
        if lengths.insert(edge_key(i, j), l).is_some() {
            return Err(MeshError::Parse(format!(
                "duplicate length for edge ({i}, {j})"
            )));
        }
    }
    TriMesh::new(n_vertices, faces, &lengths)
}

fn parse_count(line: Option<&str>, keyword: &str) -> Result<usize, MeshError> {
    let line = line.ok_or_else(|| MeshError::Parse(format!("missing '{keyword}' line")))?;
    let rest = line
        .strip_prefix(keyword)
        .ok_or_else(|| MeshError::Parse(format!("expected '{keyword} N', got: {line}")))?;
    rest.trim()
        .parse()
        .map_err(|_| MeshError::Parse(format!("bad count in: {line}")))
}

/// Renders a mesh in the `systole-mesh v1` format.
pub fn render_mesh(mesh: &TriMesh) -> String {
    let mut out = String::from("systole-mesh v1\n");
    out.push_str(&format!("vertices {}\n", mesh.n_vertices));
    out.push_str(&format!("faces {}\n", mesh.faces.len()));
    for f in &mesh.faces {
        out.push_str(&format!("{} {} {}\n", f[0], f[1], f[2]));
    }
    out.push_str("lengths\n");
    for (e, l) in mesh.edges.iter().zip(&mesh.lengths) {
        out.push_str(&format!("{} {} {:.17}\n", e.0, e.1, l));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tetrahedron_is_a_sphere() {
        let m = samples::tetrahedron();
        assert_eq!(m.n_vertices(), 4);
        assert_eq!(m.edges().len(), 6);
        assert_eq!(m.faces().len(), 4);
        assert_eq!(m.euler_characteristic(), 2);
        assert_eq!(m.z2_betti1(), 0);
        assert!(m.orientable());
        assert!((m.area() - 3.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn torus7_counts() {
        let m = samples::torus7();
        assert_eq!(m.n_vertices(), 7);
        assert_eq!(m.edges().len(), 21);
        assert_eq!(m.faces().len(), 14);
        assert_eq!(m.euler_characteristic(), 0);
        assert_eq!(m.z2_betti1(), 2);
        assert!(m.orientable());
        assert!((m.area() - 7.0 * 3.0f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn rp2_is_nonorientable_with_betti_one() {
        let m = samples::rp2_unit();
        assert_eq!(m.n_vertices(), 6);
        assert_eq!(m.edges().len(), 15);
        assert_eq!(m.faces().len(), 10);
        assert_eq!(m.euler_characteristic(), 1);
        assert_eq!(m.z2_betti1(), 1);
        assert!(!m.orientable());
    }

    #[test]
    fn klein_bottle_grid_is_valid() {
        let m = samples::klein_grid(4, 3);
        assert_eq!(m.euler_characteristic(), 0);
        assert_eq!(m.z2_betti1(), 2);
        assert!(!m.orientable());
    }

    #[test]
    fn open_surface_is_rejected() {
        // icosahedron with one face deleted
        let ico = samples::icosahedron();
        let faces: Vec<[usize; 3]> = ico.faces()[1..].to_vec();
        let lengths: BTreeMap<Edge, f64> = ico
            .edges()
            .iter()
            .cloned()
            .zip(ico.lengths().iter().cloned())
            .collect();
        let err = TriMesh::new(ico.n_vertices(), faces, &lengths).unwrap_err();
        assert!(matches!(err, MeshError::NotClosedSurface(_)));
    }

    #[test]
    fn triangle_inequality_is_enforced() {
        let t = samples::tetrahedron();
        let mut lengths: BTreeMap<Edge, f64> = t
            .edges()
            .iter()
            .cloned()
            .zip(t.lengths().iter().cloned())
            .collect();
        lengths.insert((0, 1), 2.5);
        let err = TriMesh::new(4, t.faces().to_vec(), &lengths).unwrap_err();
        assert!(matches!(err, MeshError::TriangleInequalityViolated(..)));
    }

    #[test]
    fn subdivision_preserves_area_and_quarters_faces() {
        for m in [samples::tetrahedron(), samples::torus7(), samples::rp2_round()] {
            let area = m.area();
            for k in 1..=3usize {
                let s = m.subdivide(k);
                assert_eq!(s.faces().len(), m.faces().len() * 4usize.pow(k as u32));
                assert!((s.area() - area).abs() < 1e-9 * area, "level {k}");
                assert_eq!(s.euler_characteristic(), m.euler_characteristic());
                assert_eq!(s.orientable(), m.orientable());
            }
        }
    }

    #[test]
    fn subdivide_tracked_maps_lengths_exactly() {
        let m = samples::torus7();
        let levels = 2;
        let (s, parent) = m.subdivide_tracked(levels);
        for (i, e) in s.edges().iter().enumerate() {
            let expect = m.lengths()[parent[i]] / 4.0;
            assert_eq!(s.lengths()[i], expect, "edge {e:?}");
        }
    }

    #[test]
    fn file_roundtrip() {
        let m = samples::torus7();
        let text = render_mesh(&m);
        let back = load_mesh(&text).unwrap();
        assert_eq!(back.n_vertices(), m.n_vertices());
        assert_eq!(back.faces(), m.faces());
        assert_eq!(back.lengths(), m.lengths());
    }

    #[test]
    fn parse_errors_are_reported() {
        assert!(matches!(
            load_mesh("not a mesh"),
            Err(MeshError::Parse(_))
        ));
        let text = "systole-mesh v1\nvertices 4\nfaces 1\n0 1 2\nlengths\n0 1 1.0\n";
        assert!(load_mesh(text).is_err());
    }
}
