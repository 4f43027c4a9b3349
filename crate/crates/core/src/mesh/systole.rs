//! Exact edge-metric Z2-homology systoles via the homology cover, plus the
//! derivative-free systolic-ratio optimizer.
//!
//! The cover has vertex set (mesh vertices) x (Z2)^b1 and deck group
//! (Z2)^b1 acting on the second factor by the edge signatures. The distance
//! from (v, 0) to (v, g) with g != 0 is the length of a shortest closed
//! edge path through v in class g; minimizing over v and g gives the
//! systole exactly (in the edge metric).

use super::homology::{z2_homology_basis, Z2Basis};
use super::{heron, MeshError, TriMesh};
use rayon::prelude::*;
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::atomic::{AtomicU64, Ordering};

/// Default cap on b1: the cover has 2^b1 sheets.
pub const DEFAULT_B1_CAP: usize = 6;

/// A shortest noncontractible (Z2-essential) closed edge path.
#[derive(Clone, Debug)]
pub struct LoopResult {
    /// closed path as a vertex sequence; the last vertex is adjacent to
    /// the first (which is not repeated)
    pub cycle: Vec<usize>,
    pub length: f64,
    /// nonzero Z2-homology class of the loop, as a bitmask in (Z2)^b1
    pub witness: u64,
}

/// Area, systole, and ratio of a (possibly refined) mesh.
#[derive(Clone, Debug)]
pub struct SystoleReport {
    pub area: f64,
    pub sysh1_z2: f64,
    /// the Z2-homology systole is an upper bound for the homotopy systole
    /// (edge paths only, and homologically trivial implies a shorter or
    /// equal noncontractible loop never exists below it)
    pub pisys1_upper: f64,
    pub ratio: f64,
    pub refinement_level: usize,
}

/// Precomputed homology-cover structure for one mesh topology. Lengths are
/// supplied separately so the optimizer can re-weight cheaply.
pub(crate) struct CoverEngine {
    sheets: usize,
    n_base: usize,
    /// per base vertex: (neighbor, edge id, signature)
    adj: Vec<Vec<(usize, usize, u64)>>,
}

impl CoverEngine {
    pub(crate) fn new(mesh: &TriMesh, basis: &Z2Basis) -> Self {
        let n = mesh.n_vertices();
        let mut adj: Vec<Vec<(usize, usize, u64)>> = vec![Vec::new(); n];
        for (ei, &(a, b)) in mesh.edges().iter().enumerate() {
            let sig = basis.signatures[ei];
            adj[a].push((b, ei, sig));
            adj[b].push((a, ei, sig));
        }
        CoverEngine {
            sheets: 1usize << basis.betti,
            n_base: n,
            adj,
        }
    }

    fn cover_id(&self, v: usize, g: u64) -> usize {
        v * self.sheets + g as usize
    }

    /// Dijkstra from (source, 0); distances over the whole cover. Stops
    /// early once the frontier exceeds `bound`.
    fn dijkstra(
        &self,
        source: usize,
        weights: &[f64],
        bound: f64,
        pred: Option<&mut Vec<usize>>,
    ) -> Vec<f64> {
        let size = self.n_base * self.sheets;
        let mut dist = vec![f64::INFINITY; size];
        let mut pred_store = pred;
        let start = self.cover_id(source, 0);
        dist[start] = 0.0;
        // heap keyed by (distance bits, node) for deterministic pops
        let mut heap: BinaryHeap<Reverse<(u64, usize)>> = BinaryHeap::new();
        heap.push(Reverse((0, start)));
        while let Some(Reverse((dbits, u))) = heap.pop() {
            let d = f64::from_bits(dbits);
            if d > dist[u] || d > bound {
                continue;
            }
            let (v, g) = (u / self.sheets, u as u64 & (self.sheets as u64 - 1));
            for &(w, ei, sig) in &self.adj[v] {
                let t = self.cover_id(w, g ^ sig);
                let nd = d + weights[ei];
                if nd < dist[t] {
                    dist[t] = nd;
                    if let Some(p) = pred_store.as_deref_mut() {
                        p[t] = u;
                    }
                    heap.push(Reverse((nd.to_bits(), t)));
                }
            }
        }
        dist
    }

    /// min over nonzero g of dist((source,0), (source,g)).
    fn source_best(&self, source: usize, weights: &[f64], bound: f64) -> f64 {
        let dist = self.dijkstra(source, weights, bound, None);
        (1..self.sheets)
            .map(|g| dist[self.cover_id(source, g as u64)])
            .fold(f64::INFINITY, f64::min)
    }

    /// Exact systole length under the given edge weights. Parallel over
    /// source vertices; the shared bound only prunes, so the returned
    /// minimum is schedule-independent.
    pub(crate) fn systole_length(&self, weights: &[f64]) -> f64 {
        let best_bits = AtomicU64::new(f64::INFINITY.to_bits());
        (0..self.n_base).into_par_iter().for_each(|v| {
            let bound = f64::from_bits(best_bits.load(Ordering::Relaxed));
            let got = self.source_best(v, weights, bound);
            let mut cur = best_bits.load(Ordering::Relaxed);
            while got < f64::from_bits(cur) {
                match best_bits.compare_exchange(
                    cur,
                    got.to_bits(),
                    Ordering::Relaxed,
                    Ordering::Relaxed,
                ) {
                    Ok(_) => break,
                    Err(actual) => cur = actual,
                }
            }
        });
        f64::from_bits(best_bits.load(Ordering::Relaxed))
    }

    /// Full result with a canonical witness loop.
    pub(crate) fn systole_loop(&self, weights: &[f64]) -> LoopResult {
        let length = self.systole_length(weights);
        // deterministically pick the smallest source and sheet achieving it
        let mut chosen: Option<(usize, u64)> = None;
        'outer: for v in 0..self.n_base {
            let dist = self.dijkstra(v, weights, length * (1.0 + 1e-12), None);
            for g in 1..self.sheets {
                if dist[self.cover_id(v, g as u64)] <= length {
                    chosen = Some((v, g as u64));
                    break 'outer;
                }
            }
        }
        let (v, g) = chosen.expect("systole length is attained by some source");
        let mut pred = vec![usize::MAX; self.n_base * self.sheets];
        let _ = self.dijkstra(v, weights, length * (1.0 + 1e-12), Some(&mut pred));
        // walk back from (v, g) to (v, 0); the base projection visits v
        // exactly once (as the projection of the endpoint (v, g))
        let mut path = Vec::new();
        let mut cur = self.cover_id(v, g);
        let start = self.cover_id(v, 0);
        while cur != start {
            path.push(cur / self.sheets);
            cur = pred[cur];
            assert!(cur != usize::MAX, "broken predecessor chain");
        }
        path.reverse();
        let cycle = canonical_cycle(&path);
        LoopResult {
            cycle,
            length,
            witness: g,
        }
    }
}

/// Lexicographically smallest representation over rotations and both
/// traversal directions.
fn canonical_cycle(path: &[usize]) -> Vec<usize> {
    let k = path.len();
    let mut best: Option<Vec<usize>> = None;
    let mut consider = |seq: Vec<usize>| {
        if best.as_ref().is_none_or(|b| seq < *b) {
            best = Some(seq);
        }
    };
    let reversed: Vec<usize> = path.iter().rev().cloned().collect();
    for s in 0..k {
        let rot: Vec<usize> = (0..k).map(|i| path[(s + i) % k]).collect();
        consider(rot);
        let rot_r: Vec<usize> = (0..k).map(|i| reversed[(s + i) % k]).collect();
        consider(rot_r);
    }
    best.unwrap()
}

fn check_b1(mesh: &TriMesh, b1_cap: usize) -> Result<(), MeshError> {
    if mesh.z2_betti1() == 0 {
        return Err(MeshError::NoNontrivialClass);
    }
    if mesh.z2_betti1() > b1_cap {
        return Err(MeshError::CoverTooLarge {
            betti: mesh.z2_betti1(),
            cap: b1_cap,
        });
    }
    Ok(())
}

/// Shortest closed edge path with nonzero Z2-homology class, exact in the
/// edge metric.
pub fn systole_h1z2(mesh: &TriMesh, b1_cap: usize) -> Result<LoopResult, MeshError> {
    check_b1(mesh, b1_cap)?;
    let basis = z2_homology_basis(mesh);
    let engine = CoverEngine::new(mesh, &basis);
    let result = engine.systole_loop(mesh.lengths());
    debug_assert!(result.witness != 0);
    Ok(result)
}

/// Area, systole, and ratio after `levels` midpoint subdivisions.
pub fn systolic_ratio(
    mesh: &TriMesh,
    levels: usize,
    b1_cap: usize,
) -> Result<SystoleReport, MeshError> {
    check_b1(mesh, b1_cap)?;
    let refined = mesh.subdivide(levels);
    let area = refined.area();
    let sys = systole_h1z2(&refined, b1_cap)?;
    Ok(SystoleReport {
        area,
        sysh1_z2: sys.length,
        pisys1_upper: sys.length,
        ratio: sys.length * sys.length / area,
        refinement_level: levels,
    })
}

/// Coordinate ascent on edge lengths maximizing the systolic ratio at a
/// fixed refinement level. Multiplicative +-step moves on one edge at a
/// time, accepted only when the ratio strictly increases and every face
/// keeps a strict triangle inequality; lengths renormalize to unit area
/// after every sweep. Deterministic for a fixed seed.
pub fn optimize_ratio(
    mesh: &TriMesh,
    levels: usize,
    iterations: usize,
    step: f64,
    seed: u64,
    b1_cap: usize,
) -> Result<(TriMesh, SystoleReport), MeshError> {
    let (best, report, _) = optimize_ratio_traced(mesh, levels, iterations, step, seed, b1_cap)?;
    Ok((best, report))
}

/// One row of the per-sweep optimization trace.
#[derive(Clone, Copy, Debug)]
pub struct SweepSample {
    pub iter: usize,
    pub ratio: f64,
    pub area: f64,
    pub systole: f64,
}

/// As [`optimize_ratio`], additionally returning the state after every
/// sweep (post-renormalization, so areas are 1 up to roundoff).
pub fn optimize_ratio_traced(
    mesh: &TriMesh,
    levels: usize,
    iterations: usize,
    step: f64,
    seed: u64,
    b1_cap: usize,
) -> Result<(TriMesh, SystoleReport, Vec<SweepSample>), MeshError> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    check_b1(mesh, b1_cap)?;
    assert!(step > 0.0, "step must be positive");
    let basis_topology = mesh.subdivide_tracked(levels);
    let (refined, parent) = basis_topology;
    let basis = z2_homology_basis(&refined);
    let engine = CoverEngine::new(&refined, &basis);
    let scale = 0.5f64.powi(levels as i32);

    let faces = mesh.faces().to_vec();
    let edge_of = |a: usize, b: usize| mesh.edge_id(a, b).unwrap();
    // faces touching each edge, for fast feasibility checks
    let mut edge_faces: Vec<Vec<[usize; 3]>> = vec![Vec::new(); mesh.edges().len()];
    for f in &faces {
        for k in 0..3 {
            edge_faces[edge_of(f[k], f[(k + 1) % 3])].push(*f);
        }
    }
    let feasible = |lengths: &[f64], touched: &[[usize; 3]]| -> bool {
        touched.iter().all(|f| {
            let a = lengths[edge_of(f[0], f[1])];
            let b = lengths[edge_of(f[1], f[2])];
            let c = lengths[edge_of(f[0], f[2])];
            a < b + c && b < a + c && c < a + b
        })
    };
    let area_of = |lengths: &[f64]| -> f64 {
        faces
            .iter()
            .map(|f| {
                heron(
                    lengths[edge_of(f[0], f[1])],
                    lengths[edge_of(f[1], f[2])],
                    lengths[edge_of(f[0], f[2])],
                )
            })
            .sum()
    };
    let ratio_of = |lengths: &[f64], weights: &mut Vec<f64>| -> f64 {
        for (wi, &p) in weights.iter_mut().zip(&parent) {
            *wi = lengths[p] * scale;
        }
        let sys = engine.systole_length(weights);
        sys * sys / area_of(lengths)
    };

    let mut lengths = mesh.lengths().to_vec();
    let mut weights = vec![0.0; refined.edges().len()];
    let mut ratio = ratio_of(&lengths, &mut weights);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..lengths.len()).collect();
    let mut trace = Vec::with_capacity(iterations);

    for sweep in 0..iterations {
        order.shuffle(&mut rng);
        let mut any_feasible = false;
        for &e in &order {
            for factor in [1.0 + step, 1.0 - step] {
                let candidate = lengths[e] * factor;
                if !(candidate > 0.0) {
                    continue;
                }
                let old = lengths[e];
                lengths[e] = candidate;
                if feasible(&lengths, &edge_faces[e]) {
                    any_feasible = true;
                    let new_ratio = ratio_of(&lengths, &mut weights);
                    if new_ratio > ratio {
                        ratio = new_ratio;
                        break; // keep the move, continue with next edge
                    }
                }
                lengths[e] = old;
            }
        }
        if !any_feasible {
            return Err(MeshError::StepTooLarge);
        }
        // renormalize to unit area (the ratio is scale-invariant)
        let norm = area_of(&lengths).sqrt();
        for l in lengths.iter_mut() {
            *l /= norm;
        }
        for (wi, &p) in weights.iter_mut().zip(&parent) {
            *wi = lengths[p] * scale;
        }
        let sys = engine.systole_length(&weights);
        let area = area_of(&lengths);
        trace.push(SweepSample {
            iter: sweep + 1,
            ratio: sys * sys / area,
            area,
            systole: sys,
        });
    }

    let best = mesh.with_lengths(lengths)?;
    let report = systolic_ratio(&best, levels, b1_cap)?;
    Ok((best, report, trace))
}

#[cfg(test)]
mod tests {
    use super::super::samples;
    use super::*;

    #[test]
    fn torus7_systole_is_three() {
        let m = samples::torus7();
        let r = systole_h1z2(&m, DEFAULT_B1_CAP).unwrap();
        assert!((r.length - 3.0).abs() < 1e-12, "length {}", r.length);
        assert_eq!(r.cycle.len(), 3);
        assert!(r.witness != 0);
    }

    #[test]
    fn rp2_unit_systole_is_three() {
        let m = samples::rp2_unit();
        let r = systole_h1z2(&m, DEFAULT_B1_CAP).unwrap();
        assert!((r.length - 3.0).abs() < 1e-12, "length {}", r.length);
    }

    #[test]
    fn sphere_has_no_nontrivial_class() {
        assert_eq!(
            systole_h1z2(&samples::tetrahedron(), DEFAULT_B1_CAP).unwrap_err(),
            MeshError::NoNontrivialClass
        );
    }

    #[test]
    fn cover_cap_is_enforced() {
        let m = samples::torus7();
        assert_eq!(
            systole_h1z2(&m, 1).unwrap_err(),
            MeshError::CoverTooLarge { betti: 2, cap: 1 }
        );
    }

    #[test]
    fn witness_matches_cycle_signature() {
        for m in [samples::torus7(), samples::rp2_unit(), samples::klein_grid(4, 3)] {
            let basis = z2_homology_basis(&m);
            let r = systole_h1z2(&m, DEFAULT_B1_CAP).unwrap();
            let mut sig = 0u64;
            let k = r.cycle.len();
            let mut len = 0.0;
            for i in 0..k {
                let (a, b) = (r.cycle[i], r.cycle[(i + 1) % k]);
                let e = m.edge_id(a, b).expect("cycle uses mesh edges");
                sig ^= basis.signatures[e];
                len += m.lengths()[e];
            }
            assert_eq!(sig, r.witness);
            assert!((len - r.length).abs() < 1e-12);
        }
    }

    #[test]
    fn refinement_never_increases_the_systole() {
        for m in [samples::torus7(), samples::rp2_round()] {
            let mut prev = systole_h1z2(&m, DEFAULT_B1_CAP).unwrap().length;
            for k in 1..=2 {
                let cur = systole_h1z2(&m.subdivide(k), DEFAULT_B1_CAP).unwrap().length;
                assert!(cur <= prev + 1e-12, "level {k}: {cur} > {prev}");
                prev = cur;
            }
        }
    }

    #[test]
    fn ratio_is_scale_invariant() {
        let m = samples::torus7();
        let r1 = systolic_ratio(&m, 1, DEFAULT_B1_CAP).unwrap();
        let r2 = systolic_ratio(&m.scaled(3.7), 1, DEFAULT_B1_CAP).unwrap();
        assert!((r1.ratio - r2.ratio).abs() < 1e-12);
        assert!((r2.sysh1_z2 - 3.7 * r1.sysh1_z2).abs() < 1e-9);
        assert!((r2.area - 3.7 * 3.7 * r1.area).abs() < 1e-9);
    }

    #[test]
    fn torus7_level0_ratio_matches_hand_value() {
        let m = samples::torus7();
        let r = systolic_ratio(&m, 0, DEFAULT_B1_CAP).unwrap();
        let expect = 9.0 / (7.0 * 3.0f64.sqrt() / 2.0);
        assert!((r.ratio - expect).abs() < 1e-12);
    }

    #[test]
    fn optimizer_is_monotone_and_deterministic() {
        let m = samples::torus7();
        let before = systolic_ratio(&m, 0, DEFAULT_B1_CAP).unwrap().ratio;
        let (m1, r1) = optimize_ratio(&m, 0, 10, 0.05, 42, DEFAULT_B1_CAP).unwrap();
        assert!(r1.ratio >= before - 1e-12);
        let (m2, r2) = optimize_ratio(&m, 0, 10, 0.05, 42, DEFAULT_B1_CAP).unwrap();
        assert_eq!(m1.lengths(), m2.lengths());
        assert_eq!(r1.ratio, r2.ratio);
    }

    #[test]
    fn absurd_step_is_rejected() {
        let m = samples::torus7();
        // multiplying any single unit edge by 3 breaks a triangle, and
        // shrinking by the same step makes it non-positive
        assert_eq!(
            optimize_ratio(&m, 0, 1, 2.0, 1, DEFAULT_B1_CAP).unwrap_err(),
            MeshError::StepTooLarge
        );
    }
}
