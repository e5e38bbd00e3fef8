//! Exact coefficient fields: prime fields F_p and the rationals.

use crate::error::{EngineError, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A coefficient field: either F_p for a prime p, or the rational numbers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    /// Prime field of order `p`.
    Prime(u64),
    /// Exact rational numbers.
    Rationals,
}

/// An element of a [`FieldSpec`]. Prime-field values are kept reduced in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp(u64),
    Rat(BigRational),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    /// Builds F_p, validating that `p` is prime.
    pub fn prime(p: u64) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(EngineError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// The default working field, F_32003.
    pub fn default_prime() -> FieldSpec {
        FieldSpec::Prime(32003)
    }

    /// Characteristic of the field (0 for the rationals).
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Prime(_) => Scalar::Fp(0),
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Prime(_) => Scalar::Fp(1),
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
        }
    }

    /// Embeds a signed integer into the field.
    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Prime(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp(r)
            }
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// Builds the rational a/b (exact; over F_p this is a * b^-1).
    pub fn fraction(&self, a: i64, b: i64) -> Result<Scalar> {
        if b == 0 {
            return Err(EngineError::DivisionByZero);
        }
        self.div(&self.from_i64(a), &self.from_i64(b))
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(x) => *x == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(x) => *x == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % p),
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            (FieldSpec::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % (*p as u128)) as u64)
            }
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(EngineError::DivisionByZero);
        }
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Fp(x)) => {
                // Extended Euclid on (x, p); p is prime so gcd is 1.
                let (mut r0, mut r1) = (*x as i128, *p as i128);
                let (mut s0, mut s1) = (1i128, 0i128);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (s0, s1) = (s1, s0 - q * s1);
                }
                let inv = s0.rem_euclid(*p as i128) as u64;
                Ok(Scalar::Fp(inv))
            }
            (FieldSpec::Rationals, Scalar::Rat(x)) => Ok(Scalar::Rat(x.recip())),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// a^n for a natural exponent, by repeated squaring.
    pub fn pow(&self, a: &Scalar, mut n: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Renders a scalar canonically. Prime-field values use the symmetric
    /// representative (e.g. 32002 in F_32003 prints as -1) so small integer
    /// coefficients read naturally; the parser accepts both spellings.
    pub fn format(&self, a: &Scalar) -> String {
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Fp(x)) => {
                if *x > p / 2 {
                    format!("-{}", p - x)
                } else {
                    format!("{x}")
                }
            }
            (FieldSpec::Rationals, Scalar::Rat(r)) => {
                if r.denom().is_one() {
                    format!("{}", r.numer())
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F({p})"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inverse_in_f5() {
        let k = FieldSpec::prime(5).unwrap();
        assert_eq!(k.inv(&k.from_i64(2)).unwrap(), k.from_i64(3));
    }

    #[test]
    fn rational_sum_is_exact() {
        let k = FieldSpec::Rationals;
        let half = k.fraction(1, 2).unwrap();
        let third = k.fraction(1, 3).unwrap();
        assert_eq!(k.add(&half, &third), k.fraction(5, 6).unwrap());
    }

    #[test]
    fn wraparound_in_default_field() {
        let k = FieldSpec::default_prime();
        let a = k.from_i64(32002);
        assert_eq!(k.mul(&a, &a), k.one());
    }

    #[test]
    fn zero_has_no_inverse() {
        let k = FieldSpec::default_prime();
        assert_eq!(k.inv(&k.zero()), Err(EngineError::DivisionByZero));
        let q = FieldSpec::Rationals;
        assert_eq!(q.inv(&q.zero()), Err(EngineError::DivisionByZero));
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(FieldSpec::prime(32001), Err(EngineError::NotPrime(32001)));
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(32003).is_ok());
    }

    #[test]
    fn symmetric_representative_formatting() {
        let k = FieldSpec::default_prime();
        assert_eq!(k.format(&k.from_i64(-1)), "-1");
        assert_eq!(k.format(&k.from_i64(7)), "7");
        let q = FieldSpec::Rationals;
        assert_eq!(q.format(&q.fraction(-3, 6).unwrap()), "-1/2");
    }

    fn arb_fp() -> impl Strategy<Value = i64> {
        -40000i64..40000
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1024))]

        #[test]
        fn field_axioms_f32003(a in arb_fp(), b in arb_fp(), c in arb_fp()) {
            let k = FieldSpec::default_prime();
            let (a, b, c) = (k.from_i64(a), k.from_i64(b), k.from_i64(c));
            prop_assert_eq!(k.add(&a, &b), k.add(&b, &a));
            prop_assert_eq!(k.mul(&a, &b), k.mul(&b, &a));
            prop_assert_eq!(k.add(&k.add(&a, &b), &c), k.add(&a, &k.add(&b, &c)));
            prop_assert_eq!(k.mul(&k.mul(&a, &b), &c), k.mul(&a, &k.mul(&b, &c)));
            prop_assert_eq!(k.mul(&a, &k.add(&b, &c)), k.add(&k.mul(&a, &b), &k.mul(&a, &c)));
            prop_assert_eq!(k.sub(&a, &a), k.zero());
            if !k.is_zero(&a) {
                prop_assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), k.one());
            }
        }

        #[test]
        fn field_axioms_rationals(an in -50i64..50, ad in 1i64..20, bn in -50i64..50, bd in 1i64..20) {
            let k = FieldSpec::Rationals;
            let a = k.fraction(an, ad).unwrap();
            let b = k.fraction(bn, bd).unwrap();
            prop_assert_eq!(k.add(&a, &b), k.add(&b, &a));
            prop_assert_eq!(k.sub(&a, &a), k.zero());
            if !k.is_zero(&b) {
                let q = k.div(&a, &b).unwrap();
                prop_assert_eq!(k.mul(&q, &b), a);
            }
        }
    }
}
