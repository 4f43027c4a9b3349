//! Cohomology of a free CDGA by exact linear algebra, one degree at a time.

use super::linalg::{self, Span};
use super::{CdgaError, FreeCdga, Monomial, Polynomial};
use crate::field::Scalar;
use std::cell::RefCell;
use std::collections::BTreeMap;

/// A cohomology class: coordinates in the computed basis of H^degree.
/// The zero vector is the zero class.
#[derive(Clone, Debug, PartialEq)]
pub struct CohClass {
    pub degree: usize,
    pub coords: Vec<Scalar>,
}

impl CohClass {
    pub fn is_zero_class(&self, algebra: &FreeCdga) -> bool {
        self.coords.iter().all(|c| algebra.field.is_zero(c))
    }
}

struct DegreeData {
    basis: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    /// d-matrix from this degree into the next, rows = next-degree basis
    d_matrix: Vec<Vec<Scalar>>,
    /// echelon span of the image of d from the previous degree
    im_span: Span,
    /// canonical (RREF mod image) representative coordinate vectors of H^n
    reps: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

/// Cohomology computations for one algebra, with per-degree caching.
pub struct Cohomology<'a> {
    pub algebra: &'a FreeCdga,
    cache: RefCell<BTreeMap<usize, std::rc::Rc<DegreeData>>>,
}

impl<'a> Cohomology<'a> {
    pub fn new(algebra: &'a FreeCdga) -> Self {
        Cohomology {
            algebra,
            cache: RefCell::new(BTreeMap::new()),
        }
    }

    fn degree_data(&self, n: usize) -> Result<std::rc::Rc<DegreeData>, CdgaError> {
        if let Some(d) = self.cache.borrow().get(&n) {
            return Ok(d.clone());
        }
        let a = self.algebra;
        if n + 1 > a.degree_cap {
            return Err(CdgaError::CapExceeded {
                cap: a.degree_cap,
                needed: n + 1,
            });
        }
        let field = a.field;
        let basis = a.basis(n)?;
        let index: BTreeMap<Monomial, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let next_basis = a.basis(n + 1)?;
        let next_index: BTreeMap<Monomial, usize> = next_basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        // columns = basis of A^n, rows = basis of A^{n+1}
        let mut d_matrix = vec![vec![field.zero(); basis.len()]; next_basis.len()];
        for (col, m) in basis.iter().enumerate() {
            let dm = a.truncate(&a.d_mono(m));
            for (mono, c) in &dm.terms {
                let row = next_index[mono];
                d_matrix[row][col] = c.clone();
            }
        }
        // image of d from degree n-1
        let mut im_span = Span::new(field, basis.len());
        if n >= 1 {
            for m in a.basis(n - 1)? {
                let dm = a.truncate(&a.d_mono(&m));
                let mut v = vec![field.zero(); basis.len()];
                for (mono, c) in &dm.terms {
                    v[index[mono]] = c.clone();
                }
                im_span.insert(&v);
            }
        }
        // kernel of d_n, reduced modulo the image, put in RREF so that
        // class coordinates can be read off at the pivots
        let kernel = linalg::kernel_basis(&field, d_matrix.clone(), basis.len());
        let mut reduced = Vec::new();
        let mut seen = Span::new(field, basis.len());
        for k in kernel {
            let r = im_span.reduce(&k);
            if seen.insert(&r) {
                reduced.push(r);
            }
        }
        let (reps, pivots) = linalg::rref(&field, reduced);
        let data = std::rc::Rc::new(DegreeData {
            basis,
            index,
            d_matrix,
            im_span,
            reps,
            pivots,
        });
        self.cache.borrow_mut().insert(n, data.clone());
        Ok(data)
    }

    /// dim H^n; requires n <= degree_cap - 1.
    pub fn dim(&self, n: usize) -> Result<usize, CdgaError> {
        Ok(self.degree_data(n)?.reps.len())
    }

    /// Monomial basis of the degree-n piece of the algebra.
    pub fn chain_basis(&self, n: usize) -> Result<Vec<Monomial>, CdgaError> {
        Ok(self.degree_data(n)?.basis.clone())
    }

    /// Cocycle representatives of the chosen basis of H^n.
    pub fn representatives(&self, n: usize) -> Result<Vec<Polynomial>, CdgaError> {
        let data = self.degree_data(n)?;
        Ok(data
            .reps
            .iter()
            .map(|v| self.vector_to_poly(&data, v))
            .collect())
    }

    fn vector_to_poly(&self, data: &DegreeData, v: &[Scalar]) -> Polynomial {
        let field = self.algebra.field;
        let mut p = Polynomial::zero();
        for (i, c) in v.iter().enumerate() {
            if !field.is_zero(c) {
                p = p.add(&field, &Polynomial::monomial(data.basis[i].clone(), c.clone()));
            }
        }
        p
    }

    fn poly_to_vector(&self, data: &DegreeData, p: &Polynomial) -> Result<Vec<Scalar>, CdgaError> {
        let field = self.algebra.field;
        let mut v = vec![field.zero(); data.basis.len()];
        for (m, c) in &p.terms {
            let Some(&i) = data.index.get(m) else {
                return Err(CdgaError::WrongDegree {
                    expected: data.basis.first().map(|m| self.algebra.mono_degree(m)).unwrap_or(0),
                    got: self.algebra.mono_degree(m),
                });
            };
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// The class of a closed homogeneous polynomial of degree n.
    pub fn class_of(&self, n: usize, z: &Polynomial) -> Result<CohClass, CdgaError> {
        let field = self.algebra.field;
        let data = self.degree_data(n)?;
        let v = self.poly_to_vector(&data, z)?;
        // must be a cocycle
        for row in &data.d_matrix {
            let mut s = field.zero();
            for (j, c) in row.iter().enumerate() {
                if !field.is_zero(c) && !field.is_zero(&v[j]) {
                    s = field.add(&s, &field.mul(c, &v[j]));
                }
            }
            assert!(field.is_zero(&s), "class_of called on a non-cocycle");
        }
        let mut w = data.im_span.reduce(&v);
        let mut coords = vec![field.zero(); data.reps.len()];
        for (i, (&p, rep)) in data.pivots.iter().zip(&data.reps).enumerate() {
            let c = w[p].clone();
            if !field.is_zero(&c) {
                for j in 0..w.len() {
                    let t = field.mul(&c, &rep[j]);
                    w[j] = field.sub(&w[j], &t);
                }
            }
            coords[i] = c;
        }
        debug_assert!(w.iter().all(|x| field.is_zero(x)));
        Ok(CohClass { degree: n, coords })
    }

    /// A cocycle representative of a class.
    pub fn to_polynomial(&self, class: &CohClass) -> Result<Polynomial, CdgaError> {
        let field = self.algebra.field;
        let data = self.degree_data(class.degree)?;
        assert_eq!(class.coords.len(), data.reps.len(), "coordinate length mismatch");
        let mut v = vec![field.zero(); data.basis.len()];
        for (c, rep) in class.coords.iter().zip(&data.reps) {
            for (j, r) in rep.iter().enumerate() {
                v[j] = field.add(&v[j], &field.mul(c, r));
            }
        }
        Ok(self.vector_to_poly(&data, &v))
    }

    pub fn zero_class(&self, n: usize) -> Result<CohClass, CdgaError> {
        let field = self.algebra.field;
        Ok(CohClass {
            degree: n,
            coords: vec![field.zero(); self.dim(n)?],
        })
    }

    /// The class of a generator (which must be a cocycle).
    pub fn generator_class(&self, name: &str) -> Result<CohClass, CdgaError> {
        let a = self.algebra;
        let i = a.generator_index(name)?;
        let mut m = vec![0u16; a.generators.len()];
        m[i] = 1;
        let p = Polynomial::monomial(m, a.field.one());
        self.class_of(a.generators[i].degree, &p)
    }

    /// Cup product of two classes; independent of chosen representatives.
    pub fn cup(&self, u: &CohClass, v: &CohClass) -> Result<CohClass, CdgaError> {
        let n = u.degree + v.degree;
        if n + 1 > self.algebra.degree_cap {
            return Err(CdgaError::CapExceeded {
                cap: self.algebra.degree_cap,
                needed: n + 1,
            });
        }
        let pu = self.to_polynomial(u)?;
        let pv = self.to_polynomial(v)?;
        let prod = self.algebra.mul(&pu, &pv);
        self.class_of(n, &prod)
    }

    /// Solves d x = b for a homogeneous exact polynomial b of degree n,
    /// returning the particular solution with free monomial coefficients
    /// zero (fixed monomial ordering makes this deterministic).
    pub fn primitive(&self, n: usize, b: &Polynomial) -> Result<Option<Polynomial>, CdgaError> {
        assert!(n >= 1);
        let data_prev = self.degree_data(n - 1)?;
        let data_n = self.degree_data(n)?;
        let target = self.poly_to_vector(&data_n, b)?;
        // rows = basis of A^n, cols = basis of A^{n-1}: that is exactly
        // d_matrix of degree n-1
        let sol = linalg::solve(&self.algebra.field, &data_prev.d_matrix, &target);
        Ok(sol.map(|x| self.vector_to_poly(&data_prev, &x)))
    }

    /// Largest d with (H^+)^d nonzero, where H^+ is all positive-degree
    /// cohomology. Errors with CapExceeded when a product could exceed the
    /// cap before vanishing (reported, never guessed).
    pub fn cup_length(&self) -> Result<usize, CdgaError> {
        let a = self.algebra;
        let field = a.field;
        let max_deg = a.degree_cap - 1;
        // positive-degree generators of the cohomology, per degree
        let mut hplus: Vec<(usize, Polynomial)> = Vec::new();
        for n in 1..=max_deg {
            for p in self.representatives(n)? {
                hplus.push((n, p));
            }
        }
        if hplus.is_empty() {
            return Ok(0);
        }
        // current product subspace, as (degree, representative, class) with
        // per-degree spans for independence
        let mut current: Vec<(usize, Polynomial)> = hplus.clone();
        let mut length = 1;
        loop {
            let mut spans: BTreeMap<usize, Span> = BTreeMap::new();
            let mut next: Vec<(usize, Polynomial)> = Vec::new();
            let mut out_of_range = false;
            for (ds, ps) in &current {
                for (dh, ph) in &hplus {
                    let n = ds + dh;
                    let prod = a.mul_unbounded(ps, ph);
                    if prod.is_zero() {
                        continue;
                    }
                    if n > max_deg {
                        // a product survived past the computable range
                        out_of_range = true;
                        continue;
                    }
                    let class = self.class_of(n, &prod)?;
                    if class.is_zero_class(a) {
                        continue;
                    }
                    let span = spans
                        .entry(n)
                        .or_insert_with(|| Span::new(field, class.coords.len()));
                    if span.insert(&class.coords) {
                        next.push((n, self.to_polynomial(&class)?));
                    }
                }
            }
            if next.is_empty() {
                if out_of_range {
                    return Err(CdgaError::CapExceeded {
                        cap: a.degree_cap,
                        needed: a.degree_cap + 1,
                    });
                }
                return Ok(length);
            }
            length += 1;
            current = next;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::models;
    use super::*;

    #[test]
    fn torus_model_betti_numbers() {
        // Lambda(x1..xn) with d = 0: dim H^k = C(n, k).
        let binom = |n: usize, k: usize| -> usize {
            let mut r = 1usize;
            for i in 0..k {
                r = r * (n - i) / (i + 1);
            }
            r
        };
        for n in 1..=4 {
            let a = models::torus(n).unwrap();
            let coh = Cohomology::new(&a);
            for k in 0..=n {
                assert_eq!(coh.dim(k).unwrap(), binom(n, k), "torus({n}) H^{k}");
            }
        }
    }

    #[test]
    fn cp3_betti_numbers() {
        let a = models::cp(3).unwrap();
        let coh = Cohomology::new(&a);
        for k in 0..a.degree_cap {
            let expected = if k % 2 == 0 && k <= 6 { 1 } else { 0 };
            assert_eq!(coh.dim(k).unwrap(), expected, "CP^3 H^{k}");
        }
    }

    #[test]
    fn su6_low_cohomology() {
        let a = models::su6().unwrap();
        let coh = Cohomology::new(&a);
        assert_eq!(coh.dim(4).unwrap(), 1);
        assert_eq!(coh.dim(6).unwrap(), 1);
        assert_eq!(coh.dim(7).unwrap(), 0);
        assert_eq!(coh.dim(8).unwrap(), 0);
        assert_eq!(coh.dim(9).unwrap(), 0);
        assert_eq!(coh.dim(13).unwrap(), 1);
        assert_eq!(coh.dim(19).unwrap(), 1);
    }

    #[test]
    fn cup_product_su6_x4_squared_vanishes() {
        let a = models::su6().unwrap();
        let coh = Cohomology::new(&a);
        let x4 = coh.generator_class("x4").unwrap();
        let sq = coh.cup(&x4, &x4).unwrap();
        assert!(sq.is_zero_class(&a));
    }

    #[test]
    fn cup_product_cp3_x_squared_nonzero() {
        let a = models::cp(3).unwrap();
        let coh = Cohomology::new(&a);
        let x = coh.generator_class("x2").unwrap();
        let sq = coh.cup(&x, &x).unwrap();
        assert!(!sq.is_zero_class(&a));
    }

    #[test]
    fn cup_with_unit_is_identity() {
        let a = models::cp(3).unwrap();
        let coh = Cohomology::new(&a);
        let unit = CohClass {
            degree: 0,
            coords: vec![a.field.one()],
        };
        let x = coh.generator_class("x2").unwrap();
        assert_eq!(coh.cup(&unit, &x).unwrap(), x);
    }

    #[test]
    fn cup_length_values() {
        let a = models::cp(3).unwrap();
        assert_eq!(Cohomology::new(&a).cup_length().unwrap(), 3);
        let t = models::torus(3).unwrap();
        assert_eq!(Cohomology::new(&t).cup_length().unwrap(), 3);
    }

    #[test]
    fn cup_length_of_contractible_model_is_zero() {
        // Lambda(x1, y2), dy...: take dx = 0 would not be contractible;
        // the acyclic model is d(y) = x with |x| = 2, |y| = 1.
        use super::super::{FreeCdga, Generator, Polynomial};
        use crate::field::Field;
        let field = Field::Rational;
        let gens = vec![
            Generator {
                name: "y".into(),
                degree: 1,
            },
            Generator {
                name: "x".into(),
                degree: 2,
            },
        ];
        let dx = Polynomial::zero();
        let dy = Polynomial::monomial(vec![0, 1], field.one());
        let a = FreeCdga::new(field, gens, vec![dy, dx], 8).unwrap();
        let coh = Cohomology::new(&a);
        assert_eq!(coh.dim(1).unwrap(), 0);
        assert_eq!(coh.dim(2).unwrap(), 0);
        assert_eq!(coh.cup_length().unwrap(), 0);
    }

    #[test]
    fn z2_torus_runs() {
        let a = models::torus_over(3, crate::field::Field::Prime(2)).unwrap();
        let coh = Cohomology::new(&a);
        // over Z2 the free graded-commutative algebra on degree-1
        // generators is polynomial, so dims differ from C(n,k)
        assert_eq!(coh.dim(0).unwrap(), 1);
        assert_eq!(coh.dim(1).unwrap(), 3);
        let x = coh.generator_class("x1").unwrap();
        let sq = coh.cup(&x, &x).unwrap();
        assert!(!sq.is_zero_class(&a));
    }
}
