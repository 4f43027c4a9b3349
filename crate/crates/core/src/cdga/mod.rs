//! Finite-type free graded-commutative differential algebras over Q or Z_p.
//!
//! An algebra is presented by generators with degrees, a differential of
//! degree +1 given on generators, and a degree cap bounding every basis
//! enumeration. All arithmetic is exact; every operation states the cap it
//! needs and fails loudly rather than silently truncating.

mod cohomology;
mod homotopy;
pub(crate) mod linalg;
mod massey;
pub mod models;
mod parse;
mod toomer;

pub use cohomology::{CohClass, Cohomology};
pub use homotopy::{verify_higher_homotopies, HomotopyFamily, HomotopyLevelReport, LinearMap};
pub use massey::MasseyCoset;
pub use parse::{parse_cdga, parse_polynomial};

use crate::field::{Field, Scalar};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CdgaError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("differential of generator {generator} does not raise degree by 1")]
    DegreeMismatch { generator: String },
    #[error("d^2 != 0 on generator {generator}")]
    NotSquareZero { generator: String },
    #[error("degree cap {cap} exceeded: operation needs degree {needed}")]
    CapExceeded { cap: usize, needed: usize },
    #[error("Massey product undefined: cup products of the inputs are not both zero")]
    ProductsNotZero,
    #[error("no fundamental class: dim H^{degree} = {dim}, expected 1")]
    NoFundamentalClass { degree: usize, dim: usize },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("class has wrong degree: expected {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("unknown built-in model {0}")]
    UnknownModel(String),
}

/// A generator of the free algebra: a name and a positive degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

/// A monomial: exponent vector over the generator list, kept in normal
/// order. Odd-degree generators have exponent at most 1 unless char = 2.
pub type Monomial = Vec<u16>;

/// Total degree of a monomial.
fn mono_degree(gens: &[Generator], m: &Monomial) -> usize {
    m.iter()
        .zip(gens)
        .map(|(e, g)| *e as usize * g.degree)
        .sum()
}

/// Word length: number of generator factors counted with multiplicity.
pub fn word_length(m: &Monomial) -> usize {
    m.iter().map(|e| *e as usize).sum()
}

/// A polynomial: finitely many monomials with nonzero scalars.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct Polynomial {
    pub terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut p = Polynomial::zero();
        p.terms.insert(m, c);
        p
    }

    fn add_term(&mut self, field: &Field, m: Monomial, c: Scalar) {
        if field.is_zero(&c) {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = field.add(&old, &c);
                if !field.is_zero(&s) {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn add(&self, field: &Field, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, field: &Field, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, m.clone(), field.neg(c));
        }
        out
    }

    pub fn scale(&self, field: &Field, c: &Scalar) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, a) in &self.terms {
            out.add_term(field, m.clone(), field.mul(a, c));
        }
        out
    }
}

/// A finitely generated free graded-commutative DGA with a degree cap.
#[derive(Clone, Debug)]
pub struct FreeCdga {
    pub field: Field,
    pub generators: Vec<Generator>,
    /// differential on each generator, parallel to `generators`
    pub differential: Vec<Polynomial>,
    pub degree_cap: usize,
}

impl FreeCdga {
    /// Builds and validates an algebra: the differential must raise degree
    /// by exactly 1 on each generator and square to zero up to the cap.
    pub fn new(
        field: Field,
        generators: Vec<Generator>,
        differential: Vec<Polynomial>,
        degree_cap: usize,
    ) -> Result<Self, CdgaError> {
        assert_eq!(generators.len(), differential.len());
        let a = FreeCdga {
            field,
            generators,
            differential,
            degree_cap,
        };
        for (i, g) in a.generators.iter().enumerate() {
            for m in a.differential[i].terms.keys() {
                if mono_degree(&a.generators, m) != g.degree + 1 {
                    return Err(CdgaError::DegreeMismatch {
                        generator: g.name.clone(),
                    });
                }
            }
        }
        for (i, g) in a.generators.iter().enumerate() {
            let dd = a.differentiate(&a.differential[i]);
            let dd = a.truncate(&dd);
            if !dd.is_zero() {
                return Err(CdgaError::NotSquareZero {
                    generator: g.name.clone(),
                });
            }
        }
        Ok(a)
    }

    pub fn generator_index(&self, name: &str) -> Result<usize, CdgaError> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| CdgaError::UnknownGenerator(name.to_string()))
    }

    pub fn mono_degree(&self, m: &Monomial) -> usize {
        mono_degree(&self.generators, m)
    }

    fn gen_is_odd(&self, i: usize) -> bool {
        self.generators[i].degree % 2 == 1
    }

    /// In characteristic != 2, odd generators square to zero.
    fn odd_squares_vanish(&self) -> bool {
        self.field.characteristic() != 2
    }

    /// Drops monomials above the degree cap.
    pub fn truncate(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &p.terms {
            if self.mono_degree(m) <= self.degree_cap {
                out.add_term(&self.field, m.clone(), c.clone());
            }
        }
        out
    }

    /// Product of two normal-order monomials with the Koszul sign, or None
    /// when an odd generator would repeat (char != 2).
    pub fn mul_mono(&self, a: &Monomial, b: &Monomial) -> Option<(i64, Monomial)> {
        let n = self.generators.len();
        let mut out = vec![0u16; n];
        // Count transpositions of odd factors: each odd factor of b at
        // index i moves left past every odd factor of a at index j > i.
        let mut swaps: u64 = 0;
        let mut odd_a_above: u64 = 0;
        for i in (0..n).rev() {
            if self.gen_is_odd(i) {
                swaps += b[i] as u64 * odd_a_above;
                odd_a_above += a[i] as u64;
            }
            let s = a[i] as u32 + b[i] as u32;
            if self.gen_is_odd(i) && self.odd_squares_vanish() && s > 1 {
                return None;
            }
            if s > u16::MAX as u32 {
                return None;
            }
            out[i] = s as u16;
        }
        let sign = if swaps % 2 == 0 { 1 } else { -1 };
        Some((sign, out))
    }

    /// Product of polynomials, truncated at the degree cap.
    pub fn mul(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &p.terms {
            for (mb, cb) in &q.terms {
                if let Some((sign, m)) = self.mul_mono(ma, mb) {
                    if self.mono_degree(&m) > self.degree_cap {
                        continue;
                    }
                    let mut c = self.field.mul(ca, cb);
                    if sign < 0 {
                        c = self.field.neg(&c);
                    }
                    out.add_term(&self.field, m, c);
                }
            }
        }
        out
    }

    /// Product without the cap, used where identical vanishing (e.g. by
    /// odd-generator repetition) must be detected above the cap.
    pub fn mul_unbounded(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &p.terms {
            for (mb, cb) in &q.terms {
                if let Some((sign, m)) = self.mul_mono(ma, mb) {
                    let mut c = self.field.mul(ca, cb);
                    if sign < 0 {
                        c = self.field.neg(&c);
                    }
                    out.add_term(&self.field, m, c);
                }
            }
        }
        out
    }

    /// Differential of a monomial via the Leibniz rule, as a polynomial.
    pub fn d_mono(&self, m: &Monomial) -> Polynomial {
        let field = self.field;
        let mut out = Polynomial::zero();
        // d(g_1^{e_1} ... g_k^{e_k}) = sum over factor positions; all e_i
        // copies of g_i contribute the same term, with the sign of the
        // degree of the prefix in front of the copy being differentiated.
        let n = self.generators.len();
        for i in 0..n {
            let e = m[i];
            if e == 0 || self.differential[i].is_zero() {
                continue;
            }
            let gi_deg = self.generators[i].degree;
            // prefix degree before the generator block i
            let prefix: usize = (0..i)
                .map(|j| m[j] as usize * self.generators[j].degree)
                .sum();
            // within the block, the t-th copy (t = 0..e-1) has t more
            // factors of g_i in front of it
            for t in 0..e {
                let sign_deg = prefix + t as usize * gi_deg;
                // left part: g_1^{e_1} .. g_i^{t}
                let mut left = vec![0u16; n];
                for (j, l) in left.iter_mut().enumerate().take(i) {
                    *l = m[j];
                }
                left[i] = t;
                // right part: g_i^{e-1-t} g_{i+1}^{...} ..
                let mut right = vec![0u16; n];
                right[i] = e - 1 - t;
                for (j, r) in right.iter_mut().enumerate().skip(i + 1) {
                    *r = m[j];
                }
                let mut term = Polynomial::monomial(left, field.one());
                term = self.mul(&term, &self.differential[i]);
                term = self.mul(&term, &Polynomial::monomial(right, field.one()));
                if sign_deg % 2 == 1 {
                    term = term.scale(&field, &field.from_i64(-1));
                }
                out = out.add(&field, &term);
            }
        }
        out
    }

    /// Differential of a polynomial.
    pub fn differentiate(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &p.terms {
            let dm = self.d_mono(m).scale(&self.field, c);
            out = out.add(&self.field, &dm);
        }
        out
    }

    /// Monomial basis of the degree-`n` graded piece, in lexicographic
    /// exponent order.
    pub fn basis(&self, n: usize) -> Result<Vec<Monomial>, CdgaError> {
        if n > self.degree_cap {
            return Err(CdgaError::CapExceeded {
                cap: self.degree_cap,
                needed: n,
            });
        }
        let mut out = Vec::new();
        let mut current = vec![0u16; self.generators.len()];
        self.enumerate_basis(n, 0, &mut current, &mut out);
        out.sort();
        Ok(out)
    }

    fn enumerate_basis(
        &self,
        remaining: usize,
        idx: usize,
        current: &mut Monomial,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        if idx >= self.generators.len() {
            return;
        }
        let deg = self.generators[idx].degree;
        let max_e = if self.gen_is_odd(idx) && self.odd_squares_vanish() {
            1
        } else {
            remaining / deg
        };
        for e in 0..=max_e.min(remaining / deg) {
            current[idx] = e as u16;
            self.enumerate_basis(remaining - e * deg, idx + 1, current, out);
        }
        current[idx] = 0;
    }

    /// Renders a polynomial with generator names, for reports.
    pub fn render(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in &p.terms {
            let mut factors = Vec::new();
            for (i, e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.generators[i].name.clone()),
                    _ => factors.push(format!("{}^{}", self.generators[i].name, e)),
                }
            }
            let mono = if factors.is_empty() {
                "1".to_string()
            } else {
                factors.join("*")
            };
            let coeff = format!("{c}");
            if coeff == "1" {
                parts.push(mono);
            } else if coeff == "-1" {
                parts.push(format!("-{mono}"));
            } else {
                parts.push(format!("{coeff}*{mono}"));
            }
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for FreeCdga {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("{}:{}", g.name, g.degree))
            .collect();
        write!(f, "Lambda({}) cap {}", names.join(", "), self.degree_cap)
    }
}

#[cfg(test)]
mod tests {
    use super::models;
    use super::*;

    #[test]
    fn su6_model_is_valid() {
        let a = models::su6().unwrap();
        assert_eq!(a.generators.len(), 5);
        assert_eq!(a.degree_cap, 20);
    }

    #[test]
    fn koszul_sign_odd_odd() {
        // In Lambda(y7, y9): y9*y7 = -y7*y9.
        let a = models::su6().unwrap();
        let y7 = a.generator_index("y7").unwrap();
        let y9 = a.generator_index("y9").unwrap();
        let mut m7 = vec![0u16; 5];
        m7[y7] = 1;
        let mut m9 = vec![0u16; 5];
        m9[y9] = 1;
        let (s_fwd, m_fwd) = a.mul_mono(&m7, &m9).unwrap();
        let (s_bwd, m_bwd) = a.mul_mono(&m9, &m7).unwrap();
        assert_eq!(m_fwd, m_bwd);
        assert_eq!(s_fwd, 1);
        assert_eq!(s_bwd, -1);
    }

    #[test]
    fn odd_square_vanishes_over_q() {
        let a = models::su6().unwrap();
        let y7 = a.generator_index("y7").unwrap();
        let mut m = vec![0u16; 5];
        m[y7] = 1;
        assert!(a.mul_mono(&m, &m).is_none());
    }

    #[test]
    fn leibniz_on_random_monomials() {
        let a = models::su6().unwrap();
        let field = a.field;
        // d(m1 m2) = d(m1) m2 + (-1)^{|m1|} m1 d(m2), checked over a swath
        // of basis monomials.
        for deg1 in 1..8 {
            for deg2 in 1..8 {
                if deg1 + deg2 + 1 > a.degree_cap {
                    continue;
                }
                for m1 in a.basis(deg1).unwrap() {
                    for m2 in a.basis(deg2).unwrap() {
                        let p1 = Polynomial::monomial(m1.clone(), field.one());
                        let p2 = Polynomial::monomial(m2.clone(), field.one());
                        let prod = a.mul(&p1, &p2);
                        let lhs = a.differentiate(&prod);
                        let mut rhs = a.mul(&a.differentiate(&p1), &p2);
                        let mut t2 = a.mul(&p1, &a.differentiate(&p2));
                        if deg1 % 2 == 1 {
                            t2 = t2.scale(&field, &field.from_i64(-1));
                        }
                        rhs = rhs.add(&field, &t2);
                        assert_eq!(a.truncate(&lhs), a.truncate(&rhs));
                    }
                }
            }
        }
    }

    #[test]
    fn d_squared_zero_on_monomials() {
        let a = models::su6().unwrap();
        for deg in 1..=12 {
            for m in a.basis(deg).unwrap() {
                let dm = a.d_mono(&m);
                let ddm = a.truncate(&a.differentiate(&dm));
                assert!(ddm.is_zero(), "d^2 != 0 on {m:?}");
            }
        }
    }
}
