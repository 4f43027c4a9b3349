//! Z2-homology signatures of mesh edges.
//!
//! A spanning tree assigns every cycle a coordinate vector over the cotree
//! edges; quotienting by the face-boundary rows leaves (Z2)^b1. Every edge
//! receives a signature in (Z2)^b1 (tree edges: 0) such that the class of
//! any closed edge path is the XOR of its edge signatures and every face
//! boundary sums to zero.

use super::TriMesh;
use std::collections::VecDeque;

/// Output of [`z2_homology_basis`]: signatures are bitmasks with
/// `betti` significant bits.
#[derive(Clone, Debug)]
pub struct Z2Basis {
    pub betti: usize,
    /// edge ids not in the spanning tree
    pub cotree_edges: Vec<usize>,
    /// per-edge class vector in (Z2)^betti, parallel to mesh.edges()
    pub signatures: Vec<u64>,
}

/// Bitset row: blocks of 64 columns.
type Row = Vec<u64>;

fn get(row: &Row, c: usize) -> bool {
    row[c / 64] >> (c % 64) & 1 == 1
}

fn xor_into(dst: &mut Row, src: &Row) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

pub fn z2_homology_basis(mesh: &TriMesh) -> Z2Basis {
    let n = mesh.n_vertices();
    let edges = mesh.edges();
    // BFS spanning tree from vertex 0
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (ei, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, ei));
        adj[b].push((a, ei));
    }
    let mut in_tree = vec![false; edges.len()];
    let mut visited = vec![false; n];
    visited[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &(w, ei) in &adj[v] {
            if !visited[w] {
                visited[w] = true;
                in_tree[ei] = true;
                queue.push_back(w);
            }
        }
    }
    let cotree_edges: Vec<usize> = (0..edges.len()).filter(|&e| !in_tree[e]).collect();
    let m = cotree_edges.len();
    let mut cotree_col = vec![usize::MAX; edges.len()];
    for (c, &e) in cotree_edges.iter().enumerate() {
        cotree_col[e] = c;
    }

    // face-boundary matrix over the cotree coordinates
    let blocks = m.div_ceil(64).max(1);
    let mut rows: Vec<Row> = Vec::with_capacity(mesh.faces().len());
    for f in mesh.faces() {
        let mut row = vec![0u64; blocks];
        for k in 0..3 {
            let e = mesh.edge_id(f[k], f[(k + 1) % 3]).unwrap();
            if cotree_col[e] != usize::MAX {
                // XOR handles a cotree edge listed once per face side
                row[cotree_col[e] / 64] ^= 1 << (cotree_col[e] % 64);
            }
        }
        rows.push(row);
    }

    // Gaussian elimination; then one kernel vector per free column
    let mut pivots: Vec<usize> = Vec::new(); // pivot column of each kept row
    let mut kept: Vec<Row> = Vec::new();
    for mut row in rows {
        for (p, krow) in pivots.iter().zip(&kept) {
            if get(&row, *p) {
                xor_into(&mut row, krow);
            }
        }
        if let Some(p) = (0..m).find(|&c| get(&row, c)) {
            // back-substitute into earlier rows for full reduction
            for krow in kept.iter_mut() {
                if get(krow, p) {
                    xor_into(krow, &row);
                }
            }
            pivots.push(p);
            kept.push(row);
        }
    }
    let betti = m - pivots.len();
    assert_eq!(
        betti,
        mesh.z2_betti1(),
        "cycle/boundary quotient dimension must equal 2 - euler characteristic"
    );
    assert!(betti <= 64, "signatures are stored in a u64 bitmask");

    let mut is_pivot = vec![false; m];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    // kernel vector per free column: v[free] = 1, v[pivot p] = row_p[free]
    let mut signatures = vec![0u64; edges.len()];
    for (bit, free) in (0..m).filter(|&c| !is_pivot[c]).enumerate() {
        // free coordinate itself
        signatures[cotree_edges[free]] |= 1 << bit;
        for (ri, &p) in pivots.iter().enumerate() {
            if get(&kept[ri], free) {
                signatures[cotree_edges[p]] |= 1 << bit;
            }
        }
    }
    Z2Basis {
        betti,
        cotree_edges,
        signatures,
    }
}
