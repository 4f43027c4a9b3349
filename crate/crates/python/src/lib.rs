//! Python bindings for the systolic-geometry and category-bounds engines.
//!
//! Build the `syscat_lab` extension module with
//! `cargo build -p syscat-python --release`; the smoke test in
//! `python/smoke_test.py` locates the produced cdylib automatically.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use syscat_core::bounds;
use syscat_core::cdga::{models, parse_cdga, parse_polynomial, Cohomology, FreeCdga};
use syscat_core::lattice::{self, Lattice};
use syscat_core::mesh::{self, samples, TriMesh as CoreMesh};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A closed triangulated surface with edge lengths.
#[pyclass(name = "TriMesh")]
struct PyTriMesh {
    inner: CoreMesh,
}

#[pymethods]
impl PyTriMesh {
    /// Built-in meshes: tetrahedron, octahedron, icosahedron, torus7,
    /// rp2, rp2-unit, torus-grid, klein.
    #[staticmethod]
    fn by_name(name: &str) -> PyResult<Self> {
        samples::by_name(name)
            .map(|inner| PyTriMesh { inner })
            .ok_or_else(|| err(format!("unknown built-in mesh {name}")))
    }

    /// Parse the mesh text format (vertices/faces/lengths sections).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyTriMesh {
            inner: mesh::load_mesh(text).map_err(err)?,
        })
    }

    #[getter]
    fn n_vertices(&self) -> usize {
        self.inner.n_vertices()
    }

    #[getter]
    fn faces(&self) -> Vec<[usize; 3]> {
        self.inner.faces().to_vec()
    }

    #[getter]
    fn euler_characteristic(&self) -> i64 {
        self.inner.euler_characteristic()
    }

    #[getter]
    fn orientable(&self) -> bool {
        self.inner.orientable()
    }

    #[getter]
    fn z2_betti1(&self) -> usize {
        self.inner.z2_betti1()
    }

    fn area(&self) -> f64 {
        self.inner.area()
    }

    fn subdivide(&self, levels: usize) -> Self {
        PyTriMesh {
            inner: self.inner.subdivide(levels),
        }
    }

    /// Shortest Z2-homologically-nontrivial edge loop: (length, cycle).
    #[pyo3(signature = (b1_cap = mesh::DEFAULT_B1_CAP))]
    fn systole(&self, b1_cap: usize) -> PyResult<(f64, Vec<usize>)> {
        let r = mesh::systole_h1z2(&self.inner, b1_cap).map_err(err)?;
        Ok((r.length, r.cycle))
    }

    /// (ratio, systole, area) after `levels` midpoint subdivisions.
    #[pyo3(signature = (levels = 0, b1_cap = mesh::DEFAULT_B1_CAP))]
    fn systolic_ratio(&self, levels: usize, b1_cap: usize) -> PyResult<(f64, f64, f64)> {
        let r = mesh::systolic_ratio(&self.inner, levels, b1_cap).map_err(err)?;
        Ok((r.ratio, r.sysh1_z2, r.area))
    }

    /// Coordinate ascent on edge lengths; returns (optimized mesh, ratio).
    #[pyo3(signature = (levels = 1, iterations = 50, step = 0.05, seed = 0, b1_cap = mesh::DEFAULT_B1_CAP))]
    fn optimize_ratio(
        &self,
        levels: usize,
        iterations: usize,
        step: f64,
        seed: u64,
        b1_cap: usize,
    ) -> PyResult<(PyTriMesh, f64)> {
        let (best, report) =
            mesh::optimize_ratio(&self.inner, levels, iterations, step, seed, b1_cap)
                .map_err(err)?;
        Ok((PyTriMesh { inner: best }, report.ratio))
    }
}

/// A full-rank lattice given by its Gram matrix.
#[pyclass(name = "Lattice")]
struct PyLattice {
    inner: Lattice,
}

#[pymethods]
impl PyLattice {
    #[new]
    fn new(gram: Vec<Vec<f64>>) -> PyResult<Self> {
        Ok(PyLattice {
            inner: Lattice::new(gram).map_err(err)?,
        })
    }

    #[staticmethod]
    fn hexagonal() -> Self {
        PyLattice {
            inner: lattice::hexagonal(),
        }
    }

    #[staticmethod]
    fn d4() -> Self {
        PyLattice {
            inner: lattice::d4(),
        }
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn covolume(&self) -> f64 {
        self.inner.covolume()
    }

    /// (coefficients, length) of a shortest nonzero vector.
    fn shortest_vector(&self) -> (Vec<i64>, f64) {
        let sv = self.inner.shortest_vector();
        (sv.coeffs, sv.length)
    }

    /// (lhs, rhs, holds) of sv^rank <= gamma^(rank/2) * covolume.
    fn hermite_check(&self) -> PyResult<(f64, f64, bool)> {
        let c = self.inner.check_hermite_inequality().map_err(err)?;
        Ok((c.lhs, c.rhs, c.holds))
    }
}

/// A free graded-commutative differential algebra with a degree cap.
#[pyclass(name = "Cdga")]
struct PyCdga {
    inner: FreeCdga,
}

#[pymethods]
impl PyCdga {
    /// Built-in models: "su6", "cp N", "torus N".
    #[staticmethod]
    fn by_name(name: &str) -> PyResult<Self> {
        Ok(PyCdga {
            inner: models::by_name(name).map_err(err)?,
        })
    }

    /// Parse the algebra text format (field/cap/gen/d statements).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyCdga {
            inner: parse_cdga(text).map_err(err)?,
        })
    }

    #[getter]
    fn degree_cap(&self) -> usize {
        self.inner.degree_cap
    }

    #[getter]
    fn generators(&self) -> Vec<(String, usize)> {
        self.inner
            .generators
            .iter()
            .map(|g| (g.name.clone(), g.degree))
            .collect()
    }

    fn betti(&self, degree: usize) -> PyResult<usize> {
        Cohomology::new(&self.inner).dim(degree).map_err(err)
    }

    fn cup_length(&self) -> PyResult<usize> {
        Cohomology::new(&self.inner).cup_length().map_err(err)
    }

    /// Triple Massey product of three generators:
    /// (degree, nontrivial, representative, indeterminacy dimension).
    fn massey_triple(
        &self,
        u: &str,
        v: &str,
        w: &str,
    ) -> PyResult<(usize, bool, String, usize)> {
        let coh = Cohomology::new(&self.inner);
        let cu = coh.generator_class(u).map_err(err)?;
        let cv = coh.generator_class(v).map_err(err)?;
        let cw = coh.generator_class(w).map_err(err)?;
        let m = coh.massey_triple(&cu, &cv, &cw).map_err(err)?;
        let rep = coh.to_polynomial(&m.representative).map_err(err)?;
        Ok((
            m.degree,
            m.nontrivial,
            self.inner.render(&rep),
            m.indeterminacy.len(),
        ))
    }

    /// Word-length depth of the fundamental class in `top_degree`.
    fn toomer_e0(&self, top_degree: usize) -> PyResult<usize> {
        Cohomology::new(&self.inner).toomer_e0(top_degree).map_err(err)
    }

    /// Whether the polynomial (as text) is a cocycle representing a
    /// nonzero class in the given degree.
    fn is_nonzero_class(&self, degree: usize, expr: &str) -> PyResult<bool> {
        let p = parse_polynomial(&self.inner.field, &self.inner.generators, expr).map_err(err)?;
        if !self.inner.differentiate(&p).is_zero() {
            return Ok(false);
        }
        let coh = Cohomology::new(&self.inner);
        Ok(!coh.class_of(degree, &p).map_err(err)?.is_zero_class(&self.inner))
    }
}

/// Certified cat/syscat intervals from a descriptor of `key: value` lines.
/// Returns ((cat_lo, cat_hi), (sys_lo, sys_hi), conjectural_sys_lo_or_None).
#[pyfunction]
#[pyo3(signature = (descriptor, conjectures = false))]
fn category_bounds(
    descriptor: &str,
    conjectures: bool,
) -> PyResult<((usize, usize), (usize, usize), Option<usize>)> {
    let desc = bounds::parse_descriptor(descriptor).map_err(err)?;
    let cat = bounds::cat_bounds(&desc).map_err(err)?;
    let sys = bounds::syscat_bounds(&desc, conjectures).map_err(err)?;
    Ok((
        (cat.lo, cat.hi),
        (sys.lo, sys.hi),
        sys.conjectural_lo.map(|(v, _)| v),
    ))
}

/// Exact constants of the triple-systole inequality:
/// (p3, A1, A2, statement) with the rationals rendered as strings.
#[pyfunction]
fn massey_inequality_spec(n: u64, p1: u64, p2: u64) -> PyResult<(u64, String, String, String)> {
    let s = bounds::massey_inequality_spec(n, p1, p2).map_err(err)?;
    Ok((s.p3, s.a1.to_string(), s.a2.to_string(), s.statement))
}

/// Stated values for a named manifold:
/// (description, cat interval, syscat interval or None).
#[pyfunction]
fn lookup_known(
    name: &str,
) -> PyResult<(String, (usize, usize), Option<(usize, usize)>)> {
    let case = bounds::lookup_known(name).map_err(err)?;
    Ok((case.description.to_string(), case.cat, case.syscat))
}

/// All names in the known-values table.
#[pyfunction]
fn known_names() -> Vec<String> {
    bounds::known_names().iter().map(|s| s.to_string()).collect()
}

/// The rank-b constant of the shortest-vector inequality (b <= 4 exact).
#[pyfunction]
fn hermite_constant(rank: usize) -> PyResult<f64> {
    lattice::hermite_constant(rank).map_err(err)
}

#[pymodule]
fn syscat_lab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTriMesh>()?;
    m.add_class::<PyLattice>()?;
    m.add_class::<PyCdga>()?;
    m.add_function(wrap_pyfunction!(category_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(massey_inequality_spec, m)?)?;
    m.add_function(wrap_pyfunction!(lookup_known, m)?)?;
    m.add_function(wrap_pyfunction!(known_names, m)?)?;
    m.add_function(wrap_pyfunction!(hermite_constant, m)?)?;
    Ok(())
}
