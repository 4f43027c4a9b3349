//! Parser for the `cdga v1` text format.
//!
//! Statements are separated by newlines or semicolons:
//!
//! ```text
//! cdga v1
//! field Q          # or: field Z5
//! cap 20
//! gen x4 : 4       # the colon is optional
//! d x4 = 0
//! d y7 = x4*x4     # integer coefficients, *, + and -, ^ powers, 0
//! ```

use super::{CdgaError, FreeCdga, Generator, Polynomial};
use crate::field::Field;

pub fn parse_cdga(text: &str) -> Result<FreeCdga, CdgaError> {
    let mut field: Option<Field> = None;
    let mut cap: Option<usize> = None;
    let mut generators: Vec<Generator> = Vec::new();
    let mut d_lines: Vec<(String, String)> = Vec::new();

    for raw in text.split(['\n', ';']) {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() || line == "cdga v1" {
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).ok_or_else(|| {
            CdgaError::Parse(format!("cannot parse statement: {line}"))
        })?;
        let rest = rest.trim();
        match kw {
            "field" => {
                field = Some(parse_field(rest)?);
            }
            "cap" => {
                cap = Some(rest.parse().map_err(|_| {
                    CdgaError::Parse(format!("bad cap value: {rest}"))
                })?);
            }
            "gen" => {
                let spec = rest.replace(':', " ");
                let mut it = spec.split_whitespace();
                let (Some(name), Some(deg)) = (it.next(), it.next()) else {
                    return Err(CdgaError::Parse(format!("bad generator line: {line}")));
                };
                if it.next().is_some() {
                    return Err(CdgaError::Parse(format!("bad generator line: {line}")));
                }
                let degree: usize = deg.parse().map_err(|_| {
                    CdgaError::Parse(format!("bad generator degree: {deg}"))
                })?;
                if degree == 0 {
                    return Err(CdgaError::Parse(format!(
                        "generator {name} must have positive degree"
                    )));
                }
                if generators.iter().any(|g| g.name == name) {
                    return Err(CdgaError::Parse(format!("duplicate generator {name}")));
                }
                generators.push(Generator {
                    name: name.to_string(),
                    degree,
                });
            }
            "d" => {
                let (name, expr) = rest.split_once('=').ok_or_else(|| {
                    CdgaError::Parse(format!("bad differential line: {line}"))
                })?;
                d_lines.push((name.trim().to_string(), expr.trim().to_string()));
            }
            _ => {
                return Err(CdgaError::Parse(format!("unknown keyword: {kw}")));
            }
        }
    }

    let field = field.unwrap_or(Field::Rational);
    let cap = cap.ok_or_else(|| CdgaError::Parse("missing cap statement".into()))?;
    let mut differential = vec![Polynomial::zero(); generators.len()];
    for (name, expr) in d_lines {
        let i = generators
            .iter()
            .position(|g| g.name == name)
            .ok_or(CdgaError::UnknownGenerator(name))?;
        differential[i] = parse_polynomial(&field, &generators, &expr)?;
    }
    FreeCdga::new(field, generators, differential, cap)
}

fn parse_field(s: &str) -> Result<Field, CdgaError> {
    if s == "Q" {
        return Ok(Field::Rational);
    }
    if let Some(p) = s.strip_prefix('Z') {
        let p: u64 = p
            .parse()
            .map_err(|_| CdgaError::Parse(format!("bad field: {s}")))?;
        if !is_prime(p) {
            return Err(CdgaError::Parse(format!("field Z{p}: {p} is not prime")));
        }
        return Ok(Field::Prime(p));
    }
    Err(CdgaError::Parse(format!("bad field: {s}")))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Parses a sum of terms; each term is integer coefficients and generator
/// powers joined by `*` (a `^` power or repetition both work).
pub fn parse_polynomial(
    field: &Field,
    generators: &[Generator],
    expr: &str,
) -> Result<Polynomial, CdgaError> {
    let expr = expr.trim();
    let mut out = Polynomial::zero();
    if expr == "0" {
        return Ok(out);
    }
    for (negate, term) in split_terms(expr)? {
        let mut coeff: i64 = if negate { -1 } else { 1 };
        let mut mono = vec![0u16; generators.len()];
        for factor in term.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(CdgaError::Parse(format!("empty factor in term: {term}")));
            }
            if let Ok(n) = factor.parse::<i64>() {
                coeff = coeff
                    .checked_mul(n)
                    .ok_or_else(|| CdgaError::Parse("coefficient overflow".into()))?;
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (
                    n.trim(),
                    e.trim().parse::<u16>().map_err(|_| {
                        CdgaError::Parse(format!("bad exponent in factor: {factor}"))
                    })?,
                ),
                None => (factor, 1),
            };
            let i = generators
                .iter()
                .position(|g| g.name == name)
                .ok_or_else(|| CdgaError::UnknownGenerator(name.to_string()))?;
            mono[i] += exp;
        }
        // an odd generator squared is zero outside characteristic 2
        let vanishes = field.characteristic() != 2
            && mono
                .iter()
                .zip(generators)
                .any(|(e, g)| g.degree % 2 == 1 && *e > 1);
        if !vanishes {
            out.add_term(field, mono, field.from_i64(coeff));
        }
    }
    Ok(out)
}

/// Splits `a - 2*b + c` into signed terms.
fn split_terms(expr: &str) -> Result<Vec<(bool, String)>, CdgaError> {
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut negate = false;
    let mut seen_any = false;
    for ch in expr.chars() {
        match ch {
            '+' | '-' if seen_any && !current.trim().is_empty() => {
                terms.push((negate, std::mem::take(&mut current)));
                negate = ch == '-';
            }
            '-' if current.trim().is_empty() => {
                negate = !negate;
                seen_any = true;
            }
            '+' if current.trim().is_empty() => {}
            _ => {
                current.push(ch);
                seen_any = true;
            }
        }
    }
    if current.trim().is_empty() {
        return Err(CdgaError::Parse(format!("dangling operator in: {expr}")));
    }
    terms.push((negate, current));
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::super::Cohomology;
    use super::*;

    #[test]
    fn parses_su6_text() {
        let text = "\
cdga v1
field Q
cap 20
gen x4 : 4
gen x6 : 6
gen y7 : 7
gen y9 : 9
gen y11 : 11
d x4 = 0
d x6 = 0
d y7 = x4*x4
d y9 = x4*x6
d y11 = x6^2
";
        let a = parse_cdga(text).unwrap();
        let b = super::super::models::su6().unwrap();
        assert_eq!(a.generators, b.generators);
        assert_eq!(a.differential, b.differential);
    }

    #[test]
    fn parses_semicolon_form() {
        let a = parse_cdga("gen x 2; d x = 0; field Q; cap 10").unwrap();
        assert_eq!(a.generators.len(), 1);
        assert_eq!(a.degree_cap, 10);
        let coh = Cohomology::new(&a);
        // truncated polynomial algebra: H^k = 1 for even k up to the cap
        assert_eq!(coh.dim(8).unwrap(), 1);
        assert_eq!(coh.dim(7).unwrap(), 0);
    }

    #[test]
    fn signs_and_coefficients() {
        let gens = vec![
            Generator {
                name: "a".into(),
                degree: 2,
            },
            Generator {
                name: "b".into(),
                degree: 2,
            },
        ];
        let f = Field::Rational;
        let p = parse_polynomial(&f, &gens, "2*a - 3*b + a").unwrap();
        assert_eq!(p.terms.len(), 2);
        assert_eq!(p.terms[&vec![1, 0]], f.from_i64(3));
        assert_eq!(p.terms[&vec![0, 1]], f.from_i64(-3));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_cdga("field Q; cap 10; gen x 0"),
            Err(CdgaError::Parse(_))
        ));
        assert!(matches!(
            parse_cdga("field Q; cap 10; gen x 2; d z = x"),
            Err(CdgaError::UnknownGenerator(_))
        ));
        assert!(matches!(
            parse_cdga("field Z4; cap 10; gen x 2"),
            Err(CdgaError::Parse(_))
        ));
        assert!(matches!(
            parse_cdga("gen x 2; d x = 0"),
            Err(CdgaError::Parse(_)) // missing cap
        ));
    }

    #[test]
    fn differential_must_raise_degree() {
        let err = parse_cdga("field Q; cap 10; gen x 2; gen y 5; d y = x*x").unwrap_err();
        assert!(matches!(err, CdgaError::DegreeMismatch { .. }));
    }

    #[test]
    fn d_squared_must_vanish() {
        let err =
            parse_cdga("field Q; cap 10; gen x 1; gen y 2; d x = y; d y = x*y").unwrap_err();
        assert!(matches!(err, CdgaError::NotSquareZero { .. }));
    }
}
