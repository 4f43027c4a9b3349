//! The Toomer invariant e0 via the word-length filtration.

use super::cohomology::Cohomology;
use super::linalg;
use super::{word_length, CdgaError, Polynomial};

impl Cohomology<'_> {
    /// Largest p such that the fundamental class of degree `top_degree`
    /// (dim H^top must be 1) admits a cocycle representative all of whose
    /// monomials have word length >= p.
    pub fn toomer_e0(&self, top_degree: usize) -> Result<usize, CdgaError> {
        let a = self.algebra;
        let field = a.field;
        let dim = self.dim(top_degree)?;
        if dim != 1 {
            return Err(CdgaError::NoFundamentalClass {
                degree: top_degree,
                dim,
            });
        }
        let basis = self.chain_basis(top_degree)?;
        let next_basis = a.basis(top_degree + 1)?;
        let next_index: std::collections::BTreeMap<_, usize> = next_basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut e0 = 0;
        for p in 1.. {
            let cols: Vec<usize> = (0..basis.len())
                .filter(|&i| word_length(&basis[i]) >= p)
                .collect();
            if cols.is_empty() {
                break;
            }
            // d restricted to the filtration-level-p columns
            let mut m = vec![vec![field.zero(); cols.len()]; next_basis.len()];
            for (j, &ci) in cols.iter().enumerate() {
                let dm = a.truncate(&a.d_mono(&basis[ci]));
                for (mono, c) in &dm.terms {
                    m[next_index[mono]][j] = c.clone();
                }
            }
            let kernel = linalg::kernel_basis(&field, m, cols.len());
            let mut feasible = false;
            for k in kernel {
                let mut z = Polynomial::zero();
                for (j, c) in k.iter().enumerate() {
                    if !field.is_zero(c) {
                        z = z.add(
                            &field,
                            &Polynomial::monomial(basis[cols[j]].clone(), c.clone()),
                        );
                    }
                }
                if !self.class_of(top_degree, &z)?.is_zero_class(a) {
                    feasible = true;
                    break;
                }
            }
            if feasible {
                e0 = p;
            } else {
                break;
            }
        }
        Ok(e0)
    }
}
