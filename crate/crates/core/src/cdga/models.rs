//! Built-in minimal models used throughout the test suite and the CLI.

use super::{CdgaError, FreeCdga, Generator, Polynomial};
use crate::field::Field;

fn gen(name: &str, degree: usize) -> Generator {
    Generator {
        name: name.to_string(),
        degree,
    }
}

/// The minimal model of SU(6)/(SU(3) x SU(3)):
/// Lambda(x4, x6, y7, y9, y11) with
/// d y7 = x4^2, d y9 = x4*x6, d y11 = x6^2.
pub fn su6() -> Result<FreeCdga, CdgaError> {
    let field = Field::Rational;
    let gens = vec![
        gen("x4", 4),
        gen("x6", 6),
        gen("y7", 7),
        gen("y9", 9),
        gen("y11", 11),
    ];
    let one = field.one();
    let dy7 = Polynomial::monomial(vec![2, 0, 0, 0, 0], one.clone());
    let dy9 = Polynomial::monomial(vec![1, 1, 0, 0, 0], one.clone());
    let dy11 = Polynomial::monomial(vec![0, 2, 0, 0, 0], one);
    let d = vec![Polynomial::zero(), Polynomial::zero(), dy7, dy9, dy11];
    FreeCdga::new(field, gens, d, 20)
}

/// The minimal model of CP^n: Lambda(x2, y_{2n+1}) with d y = x^{n+1}.
pub fn cp(n: usize) -> Result<FreeCdga, CdgaError> {
    cp_over(n, Field::Rational)
}

pub fn cp_over(n: usize, field: Field) -> Result<FreeCdga, CdgaError> {
    assert!(n >= 1);
    let gens = vec![gen("x2", 2), gen(&format!("y{}", 2 * n + 1), 2 * n + 1)];
    let dy = Polynomial::monomial(vec![(n + 1) as u16, 0], field.one());
    FreeCdga::new(field, gens, vec![Polynomial::zero(), dy], 4 * n + 1)
}

/// The minimal model of the n-torus: Lambda(x1_1..x1_n), d = 0.
pub fn torus(n: usize) -> Result<FreeCdga, CdgaError> {
    torus_over(n, Field::Rational)
}

pub fn torus_over(n: usize, field: Field) -> Result<FreeCdga, CdgaError> {
    assert!(n >= 1);
    let gens: Vec<Generator> = (1..=n).map(|i| gen(&format!("x{i}"), 1)).collect();
    let d = vec![Polynomial::zero(); n];
    FreeCdga::new(field, gens, d, n + 2)
}

/// Resolves a model by name: `su6`, `cp <n>` or `torus <n>` (the space
/// is optional).
pub fn by_name(name: &str) -> Result<FreeCdga, CdgaError> {
    let name = name.trim().to_ascii_lowercase();
    if name == "su6" {
        return su6();
    }
    if let Some(rest) = name.strip_prefix("cp") {
        if let Ok(n) = rest.trim().parse::<usize>() {
            if n >= 1 {
                return cp(n);
            }
        }
    }
    if let Some(rest) = name.strip_prefix("torus") {
        if let Ok(n) = rest.trim().parse::<usize>() {
            if n >= 1 {
                return torus(n);
            }
        }
    }
    Err(CdgaError::UnknownModel(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn by_name_resolves_models() {
        assert_eq!(by_name("su6").unwrap().generators.len(), 5);
        assert_eq!(by_name("CP3").unwrap().degree_cap, 13);
        assert_eq!(by_name("cp 3").unwrap().degree_cap, 13);
        assert_eq!(by_name("torus2").unwrap().generators.len(), 2);
        assert!(matches!(
            by_name("bogus"),
            Err(CdgaError::UnknownModel(_))
        ));
    }

    #[test]
    fn su6_differential_squares_to_zero_by_construction() {
        // FreeCdga::new would have rejected it otherwise; spot-check one
        // value anyway: d(y9) = x4*x6.
        let a = su6().unwrap();
        let i = a.generator_index("y9").unwrap();
        assert_eq!(a.render(&a.differential[i]), "x4*x6");
    }
}
