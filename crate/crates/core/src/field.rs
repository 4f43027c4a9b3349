//! Exact coefficient arithmetic over Q or a prime field Z_p.
//!
//! All cohomology and Massey computations run over these exact scalars so
//! that triviality verdicts carry no floating-point doubt.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// The coefficient field of a CDGA: the rationals or Z_p for a prime p.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::zero()),
            Field::Prime(_) => Scalar::Mod(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::one()),
            Field::Prime(_) => Scalar::Mod(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Mod(r)
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + y) % p),
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rational, Scalar::Rat(x)) => Scalar::Rat(-x),
            (Field::Prime(p), Scalar::Mod(x)) => Scalar::Mod((p - x % p) % p),
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rational, Scalar::Rat(x)) => {
                assert!(!x.is_zero(), "division by zero");
                Scalar::Rat(x.recip())
            }
            (Field::Prime(p), Scalar::Mod(x)) => {
                assert!(*x % p != 0, "division by zero");
                Scalar::Mod(mod_pow(*x, p - 2, *p))
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(x) => x.is_zero(),
            Scalar::Mod(x) => match self {
                Field::Prime(p) => x % p == 0,
                Field::Rational => panic!("scalar/field mismatch"),
            },
        }
    }
}

fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = base as u128 % p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

/// An element of the active [`Field`]. Values of `Mod` are kept reduced.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Mod(u64),
}

impl Scalar {
    /// Magnitude used only for pretty-printing and test diagnostics.
    pub fn abs_f64(&self) -> f64 {
        match self {
            Scalar::Rat(x) => {
                let n = x.numer().abs();
                let d = x.denom().abs();
                let nf: f64 = n.to_string().parse().unwrap_or(f64::INFINITY);
                let df: f64 = d.to_string().parse().unwrap_or(1.0);
                nf / df
            }
            Scalar::Mod(x) => *x as f64,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(x) => write!(f, "{x}"),
            Scalar::Mod(x) => write!(f, "{x}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_inverse() {
        let f = Field::Rational;
        let a = f.from_i64(-6);
        let prod = f.mul(&a, &f.inv(&a));
        assert_eq!(prod, f.one());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::Prime(7);
        let a = f.from_i64(-3); // = 4 mod 7
        assert_eq!(a, Scalar::Mod(4));
        assert_eq!(f.mul(&a, &f.inv(&a)), f.one());
        assert_eq!(f.add(&f.from_i64(5), &f.from_i64(4)), Scalar::Mod(2));
    }

    #[test]
    fn char_2_negation_is_identity() {
        let f = Field::Prime(2);
        let a = f.one();
        assert_eq!(f.neg(&a), a);
    }
}
