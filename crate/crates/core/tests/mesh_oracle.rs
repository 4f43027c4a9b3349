//! The homology-cover systole must agree exactly with an independent
//! brute-force enumeration of simple cycles on every small mesh.

mod common;

use common::{brute_force_systole, cycle_length, small_mesh_corpus as corpus};
use syscat_core::mesh::{samples, systole_h1z2, MeshError, DEFAULT_B1_CAP};

#[test]
fn corpus_is_large_and_small_enough() {
    let corpus = corpus();
    assert!(corpus.len() >= 20, "only {} meshes", corpus.len());
    for (name, mesh) in &corpus {
        assert!(mesh.n_vertices() <= 12, "{name} has too many vertices");
        assert!(mesh.z2_betti1() >= 1, "{name} has no nontrivial cycles");
    }
}

#[test]
fn cover_systole_matches_brute_force_exactly() {
    for (name, mesh) in corpus() {
        let oracle = brute_force_systole(&mesh).expect("corpus meshes are non-spheres");
        let result = systole_h1z2(&mesh, DEFAULT_B1_CAP).unwrap();
        let engine = cycle_length(&mesh, &result.cycle);
        assert_eq!(
            engine.to_bits(),
            oracle.to_bits(),
            "{name}: engine loop length {engine} vs brute force {oracle}"
        );
        assert!(
            (result.length - engine).abs() <= 1e-12 * engine,
            "{name}: reported length {} disagrees with its own cycle {engine}",
            result.length
        );
        assert_ne!(result.witness, 0, "{name}: witness class must be nonzero");
    }
}

#[test]
fn spheres_have_no_systole_and_no_brute_force_cycle() {
    for mesh in [
        samples::tetrahedron(),
        samples::octahedron(),
        samples::icosahedron(),
    ] {
        assert!(brute_force_systole(&mesh).is_none());
        assert!(matches!(
            systole_h1z2(&mesh, DEFAULT_B1_CAP),
            Err(MeshError::NoNontrivialClass)
        ));
    }
}

#[test]
fn systole_scales_linearly() {
    for factor in [0.5, 2.0, 7.25] {
        let mesh = samples::torus7();
        let base = systole_h1z2(&mesh, DEFAULT_B1_CAP).unwrap().length;
        let scaled = systole_h1z2(&mesh.scaled(factor), DEFAULT_B1_CAP)
            .unwrap()
            .length;
        assert!((scaled - factor * base).abs() <= 1e-12 * scaled);
    }
}
