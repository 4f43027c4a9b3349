//! Verification of ring maps up to higher homotopies.
//!
//! A family f_0, f_1, ... consists of linear maps f_i on (i+1)-fold tensors
//! of the source algebra, of degree -i, with f_0 a chain map. The defining
//! identity at level i is
//!
//! ```text
//! d . f_i + (-1)^{i+1} f_i . D =
//!   sum_{j=1}^{i} (-1)^j [ mu(f_{j-1} (x) f_{i-j}) - f_{i-1}(1^{j-1} (x) mu (x) 1^{i-j}) ]
//! ```
//!
//! where D is the tensor extension of the source differential (with Koszul
//! signs) and the (f_{j-1} (x) f_{i-j}) application carries the sign
//! (-1)^{(i-j) * deg(first j factors)}. Everything is evaluated exactly on
//! basis tensors, so a family either verifies or produces a concrete
//! counterexample tensor.

use super::{CdgaError, FreeCdga, Monomial, Polynomial};
use crate::field::Scalar;
use std::collections::BTreeMap;

/// A linear map on (arity)-fold tensors of source basis monomials, given by
/// its nonzero values. Missing tensors map to zero.
#[derive(Clone, Debug, Default)]
pub struct LinearMap {
    pub entries: BTreeMap<Vec<Monomial>, Polynomial>,
}

impl LinearMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, tensor: Vec<Monomial>, value: Polynomial) {
        if value.is_zero() {
            self.entries.remove(&tensor);
        } else {
            self.entries.insert(tensor, value);
        }
    }
}

/// A would-be ring map up to higher homotopies: maps[i] is f_i, taking
/// (i+1)-fold tensors, of degree -i. Maps beyond the supplied ones are
/// treated as zero.
#[derive(Debug)]
pub struct HomotopyFamily {
    pub source: FreeCdga,
    pub target: FreeCdga,
    pub maps: Vec<LinearMap>,
}

/// Outcome of checking the level-i identity on every in-cap basis tensor.
#[derive(Clone, Debug)]
pub struct HomotopyLevelReport {
    pub level: usize,
    pub holds: bool,
    /// largest absolute coefficient of LHS - RHS seen (0 when it holds)
    pub max_discrepancy: f64,
    /// an offending tensor and the nonzero difference there, if any
    pub witness: Option<(Vec<Monomial>, Polynomial)>,
}

/// A formal sum of scalar-weighted basis tensors.
type TensorPoly = Vec<(Vec<Monomial>, Scalar)>;

impl HomotopyFamily {
    /// Validates field agreement and degree homogeneity of the supplied
    /// maps: every value of f_i must be homogeneous of degree
    /// (total input degree) - i.
    pub fn new(
        source: FreeCdga,
        target: FreeCdga,
        maps: Vec<LinearMap>,
    ) -> Result<Self, CdgaError> {
        assert_eq!(source.field, target.field, "source/target field mismatch");
        for (i, f) in maps.iter().enumerate() {
            for (tensor, value) in &f.entries {
                assert_eq!(tensor.len(), i + 1, "f_{i} takes {}-fold tensors", i + 1);
                let in_deg: usize = tensor.iter().map(|m| source.mono_degree(m)).sum();
                if in_deg < i {
                    return Err(CdgaError::DegreeMismatch {
                        generator: format!("f_{i} input of degree {in_deg}"),
                    });
                }
                let want = in_deg - i;
                for m in value.terms.keys() {
                    if target.mono_degree(m) != want {
                        return Err(CdgaError::DegreeMismatch {
                            generator: format!(
                                "f_{i} value on a degree-{in_deg} tensor is not homogeneous of degree {want}"
                            ),
                        });
                    }
                }
            }
        }
        Ok(HomotopyFamily {
            source,
            target,
            maps,
        })
    }

    fn eval(&self, i: usize, t: &TensorPoly) -> Polynomial {
        let field = self.target.field;
        let mut out = Polynomial::zero();
        let Some(f) = self.maps.get(i) else {
            return out;
        };
        for (tensor, c) in t {
            if let Some(v) = f.entries.get(tensor) {
                out = out.add(&field, &v.scale(&field, c));
            }
        }
        out
    }

    /// Koszul-signed tensor extension of the source differential.
    fn d_tensor(&self, tensor: &[Monomial]) -> TensorPoly {
        let a = &self.source;
        let field = a.field;
        let mut out: BTreeMap<Vec<Monomial>, Scalar> = BTreeMap::new();
        let mut prefix_deg = 0usize;
        for (s, m) in tensor.iter().enumerate() {
            let dm = a.truncate(&a.d_mono(m));
            for (mono, c) in &dm.terms {
                let mut t = tensor.to_vec();
                t[s] = mono.clone();
                let mut c = c.clone();
                if prefix_deg % 2 == 1 {
                    c = field.neg(&c);
                }
                let e = out.entry(t).or_insert_with(|| field.zero());
                *e = field.add(e, &c);
            }
            prefix_deg += a.mono_degree(m);
        }
        out.into_iter()
            .filter(|(_, c)| !field.is_zero(c))
            .collect()
    }

    /// Applies the source multiplication at positions j, j+1 (0-based j).
    fn contract(&self, tensor: &[Monomial], j: usize) -> TensorPoly {
        let a = &self.source;
        let prod = a.mul(
            &Polynomial::monomial(tensor[j].clone(), a.field.one()),
            &Polynomial::monomial(tensor[j + 1].clone(), a.field.one()),
        );
        let mut out = Vec::new();
        for (mono, c) in &prod.terms {
            let mut t = Vec::with_capacity(tensor.len() - 1);
            t.extend_from_slice(&tensor[..j]);
            t.push(mono.clone());
            t.extend_from_slice(&tensor[j + 1 + 1..]);
            out.push((t, c.clone()));
        }
        out
    }

    /// LHS - RHS of the level-i identity on one basis tensor.
    fn defect(&self, i: usize, tensor: &[Monomial]) -> Polynomial {
        let field = self.target.field;
        let single: TensorPoly = vec![(tensor.to_vec(), field.one())];
        // d(f_i(t))
        let mut lhs = self.target.truncate(&self.target.differentiate(&self.eval(i, &single)));
        // + (-1)^{i+1} f_i(D t)
        let mut fd = self.eval(i, &self.d_tensor(tensor));
        if (i + 1) % 2 == 1 {
            fd = fd.scale(&field, &field.from_i64(-1));
        }
        lhs = lhs.add(&field, &fd);

        let mut rhs = Polynomial::zero();
        for j in 1..=i {
            // mu(f_{j-1} (x) f_{i-j}) with the Koszul sign of moving the
            // degree -(i-j) map past the first j factors
            let left: TensorPoly = vec![(tensor[..j].to_vec(), field.one())];
            let right: TensorPoly = vec![(tensor[j..].to_vec(), field.one())];
            let fl = self.eval(j - 1, &left);
            let fr = self.eval(i - j, &right);
            let mut prod = self.target.mul(&fl, &fr);
            let first_deg: usize = tensor[..j]
                .iter()
                .map(|m| self.source.mono_degree(m))
                .sum();
            if ((i - j) * first_deg) % 2 == 1 {
                prod = prod.scale(&field, &field.from_i64(-1));
            }
            // - f_{i-1}(1^{j-1} (x) mu (x) 1^{i-j})
            let contracted = self.eval(i - 1, &self.contract(tensor, j - 1));
            let mut term = prod.sub(&field, &contracted);
            if j % 2 == 1 {
                term = term.scale(&field, &field.from_i64(-1));
            }
            rhs = rhs.add(&field, &term);
        }
        lhs.sub(&field, &rhs)
    }

    /// All (arity)-fold tensors of positive-degree basis monomials with
    /// total degree at most max_deg.
    fn basis_tensors(&self, arity: usize, max_deg: usize) -> Vec<Vec<Monomial>> {
        let a = &self.source;
        let mut per_degree: Vec<Vec<Monomial>> = Vec::new();
        for d in 1..=max_deg {
            per_degree.push(a.basis(d).unwrap_or_default());
        }
        let mut out = Vec::new();
        let mut current: Vec<Monomial> = Vec::new();
        fn rec(
            per_degree: &[Vec<Monomial>],
            arity: usize,
            budget: usize,
            current: &mut Vec<Monomial>,
            out: &mut Vec<Vec<Monomial>>,
        ) {
            if current.len() == arity {
                out.push(current.clone());
                return;
            }
            let slots_left = arity - current.len();
            for d in 1..=budget.saturating_sub(slots_left - 1) {
                for m in &per_degree[d - 1] {
                    current.push(m.clone());
                    rec(per_degree, arity, budget - d, current, out);
                    current.pop();
                }
            }
        }
        rec(&per_degree, arity, max_deg, &mut current, &mut out);
        out
    }
}

/// Checks the defining identity of a homotopy family at levels 0..=up_to
/// on every basis tensor of total degree <= degree_cap - 1 (so that the
/// differential stays within the cap). Missing maps count as zero.
pub fn verify_higher_homotopies(
    h: &HomotopyFamily,
    up_to: usize,
) -> Result<Vec<HomotopyLevelReport>, CdgaError> {
    let mut reports = Vec::new();
    let max_deg = h.source.degree_cap - 1;
    for i in 0..=up_to {
        let mut max_discrepancy = 0.0f64;
        let mut witness = None;
        for tensor in h.basis_tensors(i + 1, max_deg) {
            let diff = h.defect(i, &tensor);
            if !diff.is_zero() {
                let m = diff
                    .terms
                    .values()
                    .map(|c| c.abs_f64())
                    .fold(0.0, f64::max);
                if m > max_discrepancy {
                    max_discrepancy = m;
                }
                if witness.is_none() {
                    witness = Some((tensor.clone(), diff));
                }
            }
        }
        reports.push(HomotopyLevelReport {
            level: i,
            holds: witness.is_none(),
            max_discrepancy,
            witness,
        });
    }
    Ok(reports)
}
