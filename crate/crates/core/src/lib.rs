//! Computational laboratory for systolic geometry and
//! Lusternik-Schnirelmann category invariants.
//!
//! The crate is organized around four engines:
//!
//! * [`mesh`] — triangulated piecewise-flat surfaces: exact edge-metric
//!   Z2-homology systoles via homology covers, areas, systolic ratios and
//!   derivative-free ratio optimization;
//! * [`lattice`] — flat tori as positive-definite Gram matrices: exact
//!   shortest lattice vectors, covolumes and the Hermite-constant inequality;
//! * [`cdga`] — free graded-commutative differential algebras over Q or Z_p:
//!   cohomology, cup products, Massey triple products with indeterminacy,
//!   the Toomer invariant and ring-maps-up-to-homotopy verification;
//! * [`bounds`] — a rule engine producing certified intervals for cat(M)
//!   and syscat(M) from manifold descriptors, plus the exact constants of
//!   the Massey-product systolic inequality.
//!
//! [`experiment`] ties the engines together into reproducible, seeded
//! experiment drivers with CSV emission; the `syscat-lab` binary is the
//! command-line front end.

pub mod bounds;
pub mod cdga;
pub mod experiment;
pub mod field;
pub mod lattice;
pub mod mesh;
