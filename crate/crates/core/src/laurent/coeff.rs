//! Coefficient rings: arbitrary-precision rationals and word-size prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A coefficient field for [`LaurentPoly`](super::LaurentPoly).
///
/// Rationals and prime-field elements share this interface. Elements that
/// need a runtime parameter (the modulus) carry it, and `Ctx` is the value
/// needed to conjure constants out of thin air.
pub trait Coeff:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + CoeffDisplay + Send + Sync + 'static
{
    type Ctx: Copy + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: Self::Ctx) -> Self;
    fn one(ctx: Self::Ctx) -> Self;
    fn from_i64(n: i64, ctx: Self::Ctx) -> Self;

    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    /// The unit `u` such that `u * self` is the canonical representative of
    /// `self` up to the units allowed by canonicalization (sign for rationals,
    /// any nonzero scalar for prime fields).
    fn normalizing_unit(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one(self.ctx())
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

impl Coeff for BigRational {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero(_: ()) -> Self {
        Zero::zero()
    }
    fn one(_: ()) -> Self {
        One::one()
    }
    fn from_i64(n: i64, _: ()) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn normalizing_unit(&self) -> Self {
        if self.is_negative() {
            -<BigRational as One>::one()
        } else {
            <BigRational as One>::one()
        }
    }
}

/// Formats coefficients for human-readable output.
pub trait CoeffDisplay {
    fn show(&self) -> String;
    fn is_negative_like(&self) -> bool;
}

impl CoeffDisplay for BigRational {
    fn show(&self) -> String {
        format_rational(self)
    }
    fn is_negative_like(&self) -> bool {
        self.is_negative()
    }
}

impl CoeffDisplay for Fp {
    fn show(&self) -> String {
        self.to_string()
    }
    fn is_negative_like(&self) -> bool {
        false
    }
}

/// Largest modulus accepted by [`PrimeField::new`]; products of two reduced
/// elements must fit in a `u64`.
pub const MAX_MODULUS: u64 = u32::MAX as u64;

/// A prime modulus checked at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField(u64);

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if q > MAX_MODULUS {
            return Err(Error::Precondition(format!(
                "modulus {q} exceeds {MAX_MODULUS}"
            )));
        }
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(PrimeField(q))
    }

    pub fn modulus(self) -> u64 {
        self.0
    }

    pub fn elem(self, v: i64) -> Fp {
        Fp::new(v, self)
    }

    /// Least primitive root of the field.
    pub fn primitive_root(self) -> Fp {
        let q = self.0;
        if q == 2 {
            return self.elem(1);
        }
        let factors = prime_factors(q - 1);
        (2..q)
            .map(|g| self.elem(g as i64))
            .find(|g| factors.iter().all(|&f| !g.pow((q - 1) / f).is_one()))
            .expect("every prime field has a primitive root")
    }
}

/// An element of `F_q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    field: PrimeField,
}

impl Fp {
    pub fn new(v: i64, field: PrimeField) -> Self {
        let q = field.0 as i64;
        Fp {
            v: v.rem_euclid(q) as u64,
            field,
        }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn pow(&self, mut e: u64) -> Fp {
        let q = self.field.0;
        let mut base = self.v;
        let mut acc = 1 % q;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % q;
            }
            base = base * base % q;
            e >>= 1;
        }
        Fp {
            v: acc,
            field: self.field,
        }
    }

    /// Signed representative in `(-q/2, q/2]`, used for display.
    pub fn symmetric(&self) -> i64 {
        let q = self.field.0;
        if self.v > q / 2 {
            self.v as i64 - q as i64
        } else {
            self.v as i64
        }
    }

    fn check(&self, rhs: &Fp) {
        assert_eq!(self.field, rhs.field, "mixed prime fields");
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.v, self.field.0)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Coeff for Fp {
    type Ctx = PrimeField;

    fn ctx(&self) -> PrimeField {
        self.field
    }
    fn zero(ctx: PrimeField) -> Self {
        Fp { v: 0, field: ctx }
    }
    fn one(ctx: PrimeField) -> Self {
        Fp {
            v: 1 % ctx.0,
            field: ctx,
        }
    }
    fn from_i64(n: i64, ctx: PrimeField) -> Self {
        Fp::new(n, ctx)
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Fp {
            v: (self.v + rhs.v) % self.field.0,
            field: self.field,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Fp {
            v: (self.v + self.field.0 - rhs.v) % self.field.0,
            field: self.field,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Fp {
            v: self.v * rhs.v % self.field.0,
            field: self.field,
        }
    }
    fn neg(&self) -> Self {
        Fp {
            v: (self.field.0 - self.v) % self.field.0,
            field: self.field,
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            None
        } else {
            Some(self.pow(self.field.0 - 2))
        }
    }
    fn normalizing_unit(&self) -> Self {
        self.inv().unwrap_or_else(|| Self::one(self.field))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Parses `a/b` or an integer into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Precondition(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if Zero::is_zero(&den) {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Inverse of [`parse_rational`]: integers print bare, otherwise `a/b`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites() {
        assert!(matches!(PrimeField::new(9), Err(Error::NotPrime(9))));
        assert!(PrimeField::new(7).is_ok());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn least_primitive_roots() {
        assert_eq!(PrimeField::new(7).unwrap().primitive_root().value(), 3);
        assert_eq!(PrimeField::new(11).unwrap().primitive_root().value(), 2);
        assert_eq!(PrimeField::new(29).unwrap().primitive_root().value(), 2);
    }

    #[test]
    fn field_inverse_roundtrip() {
        let f = PrimeField::new(101).unwrap();
        for v in 1..101 {
            let x = f.elem(v);
            assert!(x.mul(&x.inv().unwrap()).is_one());
        }
        assert!(f.elem(0).inv().is_none());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(format_rational(&parse_rational("2/4").unwrap()), "1/2");
        assert_eq!(format_rational(&parse_rational("-6/3").unwrap()), "-2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
