//! Massey triple products with their full indeterminacy subspace.

use super::cohomology::{CohClass, Cohomology};
use super::linalg::Span;
use super::{CdgaError, Polynomial};

/// The value of a triple Massey product: a coset of the indeterminacy
/// subspace in H^{|u|+|v|+|w|-1}. `nontrivial` means the coset does not
/// contain zero.
#[derive(Clone, Debug)]
pub struct MasseyCoset {
    pub degree: usize,
    pub representative: CohClass,
    /// basis of the indeterminacy subspace u.H + H.w
    pub indeterminacy: Vec<CohClass>,
    pub nontrivial: bool,
}

impl Cohomology<'_> {
    /// The triple Massey product <u, v, w>. Defined only when both cup
    /// products u.v and v.w vanish. The representative is built from the
    /// deterministic primitives of [`Cohomology::primitive`]; the coset is
    /// independent of those choices.
    pub fn massey_triple(
        &self,
        u: &CohClass,
        v: &CohClass,
        w: &CohClass,
    ) -> Result<MasseyCoset, CdgaError> {
        let (coset, _, _) = self.massey_triple_detailed(u, v, w)?;
        Ok(coset)
    }

    /// As [`massey_triple`](Self::massey_triple), also returning the chosen
    /// primitives x (with d x = u.v) and y (with d y = v.w) so callers can
    /// probe coset well-definedness against other choices.
    pub fn massey_triple_detailed(
        &self,
        u: &CohClass,
        v: &CohClass,
        w: &CohClass,
    ) -> Result<(MasseyCoset, Polynomial, Polynomial), CdgaError> {
        let a = self.algebra;
        let field = a.field;
        let degree = u.degree + v.degree + w.degree - 1;
        if degree + 1 > a.degree_cap {
            return Err(CdgaError::CapExceeded {
                cap: a.degree_cap,
                needed: degree + 1,
            });
        }
        if !self.cup(u, v)?.is_zero_class(a) || !self.cup(v, w)?.is_zero_class(a) {
            return Err(CdgaError::ProductsNotZero);
        }
        let pu = self.to_polynomial(u)?;
        let pv = self.to_polynomial(v)?;
        let pw = self.to_polynomial(w)?;
        let uv = a.mul(&pu, &pv);
        let vw = a.mul(&pv, &pw);
        let x = self
            .primitive(u.degree + v.degree, &uv)?
            .expect("u.v is exact, a primitive must exist");
        let y = self
            .primitive(v.degree + w.degree, &vw)?
            .expect("v.w is exact, a primitive must exist");
        // representative cocycle: x.w - (-1)^{|u|} u.y
        let mut rep = a.mul(&x, &pw);
        let mut uy = a.mul(&pu, &y);
        if u.degree % 2 == 0 {
            uy = uy.scale(&field, &field.from_i64(-1));
        }
        rep = rep.add(&field, &uy);
        let representative = self.class_of(degree, &rep)?;

        // indeterminacy: u.H^{|v|+|w|-1} + H^{|u|+|v|-1}.w
        let hdim = self.dim(degree)?;
        let mut span = Span::new(field, hdim);
        let mut indeterminacy = Vec::new();
        let push = |class: CohClass, span: &mut Span, out: &mut Vec<CohClass>| {
            if span.insert(&class.coords) {
                out.push(class);
            }
        };
        for h in self.basis_classes(v.degree + w.degree - 1)? {
            push(self.cup(u, &h)?, &mut span, &mut indeterminacy);
        }
        for h in self.basis_classes(u.degree + v.degree - 1)? {
            push(self.cup(&h, w)?, &mut span, &mut indeterminacy);
        }
        let nontrivial = !span.contains(&representative.coords);
        Ok((
            MasseyCoset {
                degree,
                representative,
                indeterminacy,
                nontrivial,
            },
            x,
            y,
        ))
    }

    /// The chosen basis of H^n as classes (unit coordinate vectors).
    pub fn basis_classes(&self, n: usize) -> Result<Vec<CohClass>, CdgaError> {
        let field = self.algebra.field;
        let dim = self.dim(n)?;
        Ok((0..dim)
            .map(|i| {
                let mut coords = vec![field.zero(); dim];
                coords[i] = field.one();
                CohClass { degree: n, coords }
            })
            .collect())
    }
}
