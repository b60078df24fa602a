//! Coefficient fields.
//!
//! Elements are plain values; all arithmetic goes through a field object so
//! that a prime field can carry its modulus at runtime.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt::Debug;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// A field with exact arithmetic.
pub trait Field: Clone + PartialEq + Eq + Debug {
    type Elem: Clone + PartialEq + Eq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// 0 for the rationals, q for the prime field of order q.
    fn characteristic(&self) -> u64;

    /// Short human name, `Q` or `F<q>`.
    fn name(&self) -> String;

    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, Error>;

    /// `acc <- acc - c * x`
    fn sub_mul_assign(&self, acc: &mut Self::Elem, c: &Self::Elem, x: &Self::Elem) {
        let prod = self.mul(c, x);
        *acc = self.sub(acc, &prod);
    }

    /// `acc <- acc + c * x`
    fn add_mul_assign(&self, acc: &mut Self::Elem, c: &Self::Elem, x: &Self::Elem) {
        let prod = self.mul(c, x);
        *acc = self.add(acc, &prod);
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, Error> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Whether the integer `m` is a unit in this field.
    fn integer_is_unit(&self, m: u64) -> bool {
        match self.characteristic() {
            0 => m != 0,
            q => !m.is_multiple_of(q),
        }
    }
}

/// The rational numbers with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn name(&self) -> String {
        "Q".to_string()
    }

    fn format_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn parse_elem(&self, s: &str) -> Result<BigRational, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(
                BigInt::from_str(s).map_err(|_| bad())?,
            )),
        }
    }

    fn sub_mul_assign(&self, acc: &mut BigRational, c: &BigRational, x: &BigRational) {
        *acc -= c * x;
    }

    fn add_mul_assign(&self, acc: &mut BigRational, c: &BigRational, x: &BigRational) {
        *acc += c * x;
    }
}

/// The prime field of order `q`, elements stored as canonical residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    /// Largest accepted modulus; products of two residues must fit in a `u64`.
    pub const MAX_MODULUS: u64 = (1 << 31) - 1;

    pub fn new(q: u64) -> Result<Self, Error> {
        if q > Self::MAX_MODULUS || !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(PrimeField { q: q as u32 })
    }

    pub fn modulus(&self) -> u64 {
        self.q as u64
    }

    fn reduce_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.q as i64) as u32
    }

    fn pow(&self, base: u32, mut exp: u64) -> u32 {
        let q = self.q as u64;
        let mut acc = 1u64 % q;
        let mut b = base as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % q;
            }
            b = b * b % q;
            exp >>= 1;
        }
        acc as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1 % self.q
    }

    fn from_i64(&self, v: i64) -> u32 {
        self.reduce_i64(v)
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.q as u64) as u32
    }

    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.q as u64 - *b as u64) % self.q as u64) as u32
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.q as u64) as u32
    }

    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.q - *a
        }
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.q as u64 - 2))
        }
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn characteristic(&self) -> u64 {
        self.q as u64
    }

    fn name(&self) -> String {
        format!("F{}", self.q)
    }

    fn format_elem(&self, a: &u32) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<u32, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not an element of F{}: {s:?}", self.q));
        let as_int = |t: &str| -> Result<u32, Error> {
            let v = BigInt::from_str(t.trim()).map_err(|_| bad())?;
            let q = BigInt::from(self.q);
            let mut r = v % &q;
            if r.is_negative() {
                r += q;
            }
            Ok(u32::try_from(r).expect("residue below modulus"))
        };
        match s.split_once('/') {
            Some((n, d)) => self.div(&as_int(n)?, &as_int(d)?),
            None => as_int(s),
        }
    }

    fn sub_mul_assign(&self, acc: &mut u32, c: &u32, x: &u32) {
        let q = self.q as u64;
        let prod = (*c as u64 * *x as u64) % q;
        *acc = ((*acc as u64 + q - prod) % q) as u32;
    }
}

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(7).is_ok());
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeField::new(9), Err(Error::NotPrime(9)));
        assert!(PrimeField::new(1 << 40).is_err());
    }

    #[test]
    fn prime_field_inverses() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7u32 {
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), 1);
        }
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.div(&1, &0), Err(Error::DivisionByZero));
    }

    #[test]
    fn parse_and_format() {
        let q = Rationals;
        assert_eq!(q.format_elem(&q.parse_elem("-6/4").unwrap()), "-3/2");
        assert_eq!(q.parse_elem("1/0"), Err(Error::DivisionByZero));
        assert!(q.parse_elem("x").is_err());
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.parse_elem("-1").unwrap(), 4);
        // 2/3 = 2 * 2 = 4 mod 5
        assert_eq!(f5.parse_elem("2/3").unwrap(), 4);
    }

    #[test]
    fn units() {
        assert!(Rationals.integer_is_unit(2));
        assert!(!Rationals.integer_is_unit(0));
        let f2 = PrimeField::new(2).unwrap();
        assert!(!f2.integer_is_unit(2));
        assert!(f2.integer_is_unit(3));
    }
}
