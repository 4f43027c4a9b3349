//! Shared helpers for integration tests: an independent brute-force
//! systole oracle and deterministic mesh perturbation.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use syscat_core::mesh::{z2_homology_basis, TriMesh};

/// Deterministic sum of a multiset of lengths: sort first so that equal
/// multisets produce bitwise-equal sums regardless of traversal order.
pub fn canonical_sum(mut lengths: Vec<f64>) -> f64 {
    lengths.sort_by(f64::total_cmp);
    lengths.into_iter().sum()
}

/// Canonical length of a closed vertex cycle on the mesh.
pub fn cycle_length(mesh: &TriMesh, cycle: &[usize]) -> f64 {
    let lens: Vec<f64> = (0..cycle.len())
        .map(|i| {
            mesh.length(cycle[i], cycle[(i + 1) % cycle.len()])
                .expect("cycle must follow mesh edges")
        })
        .collect();
    canonical_sum(lens)
}

/// Exhaustive shortest Z2-homologically-nontrivial simple cycle, by DFS
/// over all simple cycles (canonical start = smallest vertex) with length
/// pruning. Returns the canonical length, or None on a sphere.
pub fn brute_force_systole(mesh: &TriMesh) -> Option<f64> {
    let basis = z2_homology_basis(mesh);
    if basis.betti == 0 {
        return None;
    }
    let n = mesh.n_vertices();
    let mut adj: Vec<Vec<(usize, f64, u64)>> = vec![Vec::new(); n];
    for (ei, &(a, b)) in mesh.edges().iter().enumerate() {
        let l = mesh.lengths()[ei];
        let sig = basis.signatures[ei];
        adj[a].push((b, l, sig));
        adj[b].push((a, l, sig));
    }

    let mut best = f64::INFINITY;
    let mut best_edges: Vec<f64> = Vec::new();
    // DFS state: the path starts at `start` (the smallest vertex of the
    // cycle) and never revisits vertices below it
    struct Dfs<'a> {
        adj: &'a [Vec<(usize, f64, u64)>],
        start: usize,
        on_path: Vec<bool>,
        edge_lens: Vec<f64>,
        best: f64,
        best_edges: Vec<f64>,
    }
    impl Dfs<'_> {
        fn go(&mut self, v: usize, len: f64, sig: u64, depth: usize) {
            for &(w, l, s) in &self.adj[v] {
                if len + l >= self.best {
                    continue;
                }
                if w == self.start {
                    if depth >= 3 && sig ^ s != 0 {
                        self.edge_lens.push(l);
                        let cand = canonical_sum(self.edge_lens.clone());
                        if cand < self.best {
                            self.best = cand;
                            self.best_edges = self.edge_lens.clone();
                        }
                        self.edge_lens.pop();
                    }
                    continue;
                }
                if w < self.start || self.on_path[w] {
                    continue;
                }
                self.on_path[w] = true;
                self.edge_lens.push(l);
                self.go(w, len + l, sig ^ s, depth + 1);
                self.edge_lens.pop();
                self.on_path[w] = false;
            }
        }
    }
    for start in 0..n {
        let mut dfs = Dfs {
            adj: &adj,
            start,
            on_path: vec![false; n],
            edge_lens: Vec::new(),
            best,
            best_edges: std::mem::take(&mut best_edges),
        };
        dfs.on_path[start] = true;
        dfs.go(start, 0.0, 0, 1);
        best = dfs.best;
        best_edges = dfs.best_edges;
    }
    assert!(best.is_finite(), "a nontrivial cycle must exist");
    Some(canonical_sum(best_edges))
}

/// Corpus of non-sphere closed-surface meshes with at most 12 vertices
/// covering the torus, projective plane, and Klein bottle, plus seeded
/// metric perturbations of each.
pub fn small_mesh_corpus() -> Vec<(String, TriMesh)> {
    use syscat_core::mesh::samples;
    let bases: Vec<(&str, TriMesh)> = vec![
        ("torus7", samples::torus7()),
        ("rp2-unit", samples::rp2_unit()),
        ("rp2-round", samples::rp2_round()),
        ("grid-torus-3x3", samples::grid_torus(3, 3)),
        ("grid-torus-3x4", samples::grid_torus(3, 4)),
        ("klein-4x3", samples::klein_grid(4, 3)),
    ];
    let mut out = Vec::new();
    for (name, mesh) in bases {
        out.push((name.to_string(), mesh.clone()));
        for seed in 1..=3u64 {
            out.push((
                format!("{name}-perturbed-{seed}"),
                perturbed(&mesh, seed * 101 + name.len() as u64, 0.08),
            ));
        }
    }
    out
}

/// Multiplies every edge length by a factor in [1-eps, 1+eps], seeded;
/// retries with a smaller eps if the triangle inequality breaks.
pub fn perturbed(mesh: &TriMesh, seed: u64, mut eps: f64) -> TriMesh {
    loop {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lengths: Vec<f64> = mesh
            .lengths()
            .iter()
            .map(|&l| l * (1.0 + rng.random_range(-eps..=eps)))
            .collect();
        match mesh.with_lengths(lengths) {
            Ok(m) => return m,
            Err(_) => eps *= 0.5,
        }
    }
}
