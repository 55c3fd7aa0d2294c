//! Exact coefficient rings: integers, rationals, and prime fields.
//!
//! All coefficient values are tagged by a [`CoefficientRing`] describing how
//! to combine them. Integer coefficients are arbitrary precision, rationals
//! are kept reduced with positive denominator, and prime-field values are
//! canonical representatives in `0..p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime modulus, validated at construction. 2 <= p < 2^31.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 31).contains(&p) {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// Deterministic trial division; the modulus bound keeps this cheap.
fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The coefficient ring of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientRing {
    Integers,
    Rationals,
    PrimeField(Prime),
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "ZZ"),
            CoefficientRing::Rationals => write!(f, "QQ"),
            CoefficientRing::PrimeField(p) => write!(f, "GF({})", p.get()),
        }
    }
}

/// A coefficient value; meaningful only together with its ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coeff {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64),
}

impl CoefficientRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        Ok(CoefficientRing::PrimeField(Prime::new(p)?))
    }

    /// The prime modulus, if this is a prime field.
    pub fn modulus(&self) -> Option<u32> {
        match self {
            CoefficientRing::PrimeField(p) => Some(p.get()),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientRing::Integers)
    }

    pub fn zero(&self) -> Coeff {
        self.from_bigint(BigInt::zero())
    }

    pub fn one(&self) -> Coeff {
        self.from_bigint(BigInt::one())
    }

    /// Embed an integer, normalizing into the ring.
    pub fn from_bigint(&self, n: BigInt) -> Coeff {
        match self {
            CoefficientRing::Integers => Coeff::Int(n),
            CoefficientRing::Rationals => Coeff::Rat(BigRational::from_integer(n)),
            CoefficientRing::PrimeField(p) => {
                let p = BigInt::from(p.get());
                Coeff::Mod(u64::try_from(n.mod_floor(&p)).expect("reduced residue fits u64"))
            }
        }
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        self.from_bigint(BigInt::from(n))
    }

    /// Embed a fraction; the denominator form is only allowed over the rationals.
    pub fn from_ratio(&self, numer: BigInt, denom: BigInt) -> Result<Coeff> {
        if denom.is_one() {
            return Ok(self.from_bigint(numer));
        }
        match self {
            CoefficientRing::Rationals => {
                if denom.is_zero() {
                    return Err(Error::Parse {
                        position: 0,
                        message: "zero denominator".into(),
                    });
                }
                Ok(Coeff::Rat(BigRational::new(numer, denom)))
            }
            other => Err(Error::WrongRing {
                expected: "QQ",
                found: *other,
            }),
        }
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Int(n) => n.is_zero(),
            Coeff::Rat(q) => q.is_zero(),
            Coeff::Mod(r) => *r == 0,
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Int(n) => n.is_one(),
            Coeff::Rat(q) => q.is_one(),
            Coeff::Mod(r) => *r == 1,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (CoefficientRing::Integers, Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x + y),
            (CoefficientRing::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            (CoefficientRing::PrimeField(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod((x + y) % p.get() as u64)
            }
            _ => panic!("coefficient does not belong to ring {self}"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (CoefficientRing::Integers, Coeff::Int(x)) => Coeff::Int(-x),
            (CoefficientRing::Rationals, Coeff::Rat(x)) => Coeff::Rat(-x),
            (CoefficientRing::PrimeField(p), Coeff::Mod(x)) => {
                let p = p.get() as u64;
                Coeff::Mod(if *x == 0 { 0 } else { p - x })
            }
            _ => panic!("coefficient does not belong to ring {self}"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (CoefficientRing::Integers, Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x * y),
            (CoefficientRing::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            (CoefficientRing::PrimeField(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(x * y % p.get() as u64)
            }
            _ => panic!("coefficient does not belong to ring {self}"),
        }
    }

    /// Multiplicative inverse; `None` for zero. Errors over the integers.
    pub fn inv(&self, a: &Coeff) -> Result<Option<Coeff>> {
        if self.is_zero(a) {
            return Ok(None);
        }
        match (self, a) {
            (CoefficientRing::Rationals, Coeff::Rat(x)) => Ok(Some(Coeff::Rat(x.recip()))),
            (CoefficientRing::PrimeField(p), Coeff::Mod(x)) => {
                Ok(Some(Coeff::Mod(mod_inverse(*x, p.get() as u64))))
            }
            (CoefficientRing::Integers, _) => Err(Error::NotAField(*self)),
            _ => panic!("coefficient does not belong to ring {self}"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Option<Coeff>> {
        Ok(self.inv(b)?.map(|binv| self.mul(a, &binv)))
    }

    /// Format a coefficient in the grammar's notation.
    pub fn format(&self, a: &Coeff) -> String {
        match a {
            Coeff::Int(n) => n.to_string(),
            Coeff::Rat(q) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Coeff::Mod(r) => r.to_string(),
        }
    }

    /// True when the coefficient prints with a leading minus sign.
    pub fn is_negative(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Int(n) => n.is_negative(),
            Coeff::Rat(q) => q.is_negative(),
            Coeff::Mod(_) => false,
        }
    }

    /// The coefficient with its sign stripped (prime-field values unchanged).
    pub fn abs(&self, a: &Coeff) -> Coeff {
        match a {
            Coeff::Int(n) => Coeff::Int(n.abs()),
            Coeff::Rat(q) => Coeff::Rat(q.abs()),
            Coeff::Mod(r) => Coeff::Mod(*r),
        }
    }
}

/// Inverse of `a` modulo prime `p` by Fermat's little theorem.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(3).is_ok());
        assert!(Prime::new(2147483647).is_ok()); // 2^31 - 1
        assert_eq!(Prime::new(1), Err(Error::ModulusOutOfRange(1)));
        assert_eq!(Prime::new(9), Err(Error::NotPrime(9)));
        assert_eq!(Prime::new(1 << 31), Err(Error::ModulusOutOfRange(1 << 31)));
    }

    #[test]
    fn modular_normalization() {
        let gf5 = CoefficientRing::prime_field(5).unwrap();
        assert_eq!(gf5.from_i64(-1), Coeff::Mod(4));
        assert_eq!(gf5.from_i64(12), Coeff::Mod(2));
        assert!(gf5.is_zero(&gf5.from_i64(10)));
    }

    #[test]
    fn field_inverses() {
        let gf7 = CoefficientRing::prime_field(7).unwrap();
        for a in 1..7 {
            let inv = gf7.inv(&Coeff::Mod(a)).unwrap().unwrap();
            assert!(gf7.is_one(&gf7.mul(&Coeff::Mod(a), &inv)));
        }
        assert_eq!(gf7.inv(&Coeff::Mod(0)).unwrap(), None);
        let zz = CoefficientRing::Integers;
        assert!(zz.inv(&zz.from_i64(2)).is_err());
    }

    #[test]
    fn rational_reduction() {
        let qq = CoefficientRing::Rationals;
        let half = qq
            .from_ratio(BigInt::from(2), BigInt::from(4))
            .unwrap();
        assert_eq!(qq.format(&half), "1/2");
        let zz = CoefficientRing::Integers;
        assert!(zz.from_ratio(BigInt::from(1), BigInt::from(2)).is_err());
    }
}
