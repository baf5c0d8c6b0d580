use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::coeff::{Coeff, Fp};
use crate::error::{Error, Result};

/// A Laurent polynomial in one variable `t`.
///
/// Stored sparsely as exponent -> coefficient; zero coefficients are never
/// stored, so the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<K> {
    terms: BTreeMap<i64, K>,
}

pub type QPoly = LaurentPoly<BigRational>;
pub type FpPoly = LaurentPoly<Fp>;

impl<K: Coeff> Default for LaurentPoly<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Coeff> LaurentPoly<K> {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: K::Ctx) -> Self {
        Self::constant(K::one(ctx))
    }

    pub fn constant(c: K) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: K, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// `t^exp` with unit coefficient.
    pub fn t_pow(exp: i64, ctx: K::Ctx) -> Self {
        Self::monomial(K::one(ctx), exp)
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, K)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    pub fn from_i64_terms(pairs: &[(i64, i64)], ctx: K::Ctx) -> Self {
        Self::from_terms(pairs.iter().map(|&(e, c)| (e, K::from_i64(c, ctx))))
    }

    pub fn add_term(&mut self, exp: i64, c: &K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(old) => {
                let s = old.add(c);
                if s.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(exp, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &K)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> Option<&K> {
        self.terms.get(&exp)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Width `max_exp - min_exp`; `None` for zero.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    pub fn leading(&self) -> Option<(i64, &K)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Coefficient ring context, if it can be read off a stored coefficient.
    pub fn ctx(&self) -> Option<K::Ctx> {
        self.terms.values().next().map(Coeff::ctx)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x.mul(c))).collect(),
        }
    }

    /// Substitutes `t -> t^{-1}`.
    pub fn mirror(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Substitutes `t -> t^k`.
    pub fn compose_power(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    pub fn pow(&self, e: u32, ctx: K::Ctx) -> Self {
        let mut acc = Self::one(ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at a nonzero point (or at zero when no negative
    /// exponents are present).
    pub fn eval(&self, x: &K) -> Result<K> {
        let ctx = x.ctx();
        let inv = if x.is_zero() {
            if self.min_exp().is_some_and(|e| e < 0) {
                return Err(Error::Precondition(
                    "evaluation at 0 of a polynomial with negative exponents".into(),
                ));
            }
            None
        } else {
            x.inv()
        };
        let mut acc = K::zero(ctx);
        for (e, c) in &self.terms {
            let base = if *e >= 0 {
                x.clone()
            } else {
                inv.clone().expect("nonzero point")
            };
            let mut p = K::one(ctx);
            for _ in 0..e.unsigned_abs() {
                p = p.mul(&base);
            }
            acc = acc.add(&c.mul(&p));
        }
        Ok(acc)
    }

    /// Exact quotient `self / den` in the Laurent ring, or `None` when the
    /// division leaves a remainder.
    pub fn div_exact(&self, den: &Self) -> Option<Self> {
        let (dlead_e, dlead_c) = den.leading()?;
        let dspan = den.span()?;
        let dinv = dlead_c.inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((re, rc)) = rem.leading() {
            if rem.span()? < dspan {
                return None;
            }
            let c = rc.mul(&dinv);
            let e = re - dlead_e;
            rem = &rem - &den.shift(e).scale(&c);
            quot.add_term(e, &c);
        }
        Some(quot)
    }

    /// Euclidean division of ordinary polynomials (all exponents >= 0).
    pub(crate) fn div_rem_poly(&self, den: &Self) -> (Self, Self) {
        let (dlead_e, dlead_c) = den.leading().expect("division by zero polynomial");
        let dinv = dlead_c.inv().expect("leading coefficient invertible");
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((re, rc)) = rem.leading() {
            if re < dlead_e {
                break;
            }
            let c = rc.mul(&dinv);
            let e = re - dlead_e;
            rem = &rem - &den.shift(e).scale(&c);
            quot.add_term(e, &c);
        }
        (quot, rem)
    }

    /// Drops the `t^k` factor so the minimal exponent is 0.
    pub fn normalize_shift(&self) -> (Self, i64) {
        match self.min_exp() {
            Some(m) => (self.shift(-m), m),
            None => (self.clone(), 0),
        }
    }

    /// Monic gcd of the polynomial parts (unit shifts ignored).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, _) = self.normalize_shift();
        let (mut b, _) = other.normalize_shift();
        while !b.is_zero() {
            let (_, r) = a.div_rem_poly(&b);
            a = b;
            b = r.normalize_shift().0;
        }
        match a.leading() {
            Some((_, c)) => {
                let inv = c.inv().expect("field coefficient");
                a.scale(&inv)
            }
            None => a,
        }
    }
}

impl QPoly {
    pub fn from_ints(pairs: &[(i64, i64)]) -> Self {
        Self::from_i64_terms(pairs, ())
    }

    pub fn q_one() -> Self {
        Self::one(())
    }

    pub fn t() -> Self {
        Self::t_pow(1, ())
    }
}

impl<'a, K: Coeff> Add<&'a LaurentPoly<K>> for &'a LaurentPoly<K> {
    type Output = LaurentPoly<K>;
    fn add(self, rhs: &LaurentPoly<K>) -> LaurentPoly<K> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl<'a, K: Coeff> Sub<&'a LaurentPoly<K>> for &'a LaurentPoly<K> {
    type Output = LaurentPoly<K>;
    fn sub(self, rhs: &LaurentPoly<K>) -> LaurentPoly<K> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &c.neg());
        }
        out
    }
}

impl<'a, K: Coeff> Mul<&'a LaurentPoly<K>> for &'a LaurentPoly<K> {
    type Output = LaurentPoly<K>;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &LaurentPoly<K>) -> LaurentPoly<K> {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &c1.mul(c2));
            }
        }
        out
    }
}

impl<K: Coeff> Neg for &LaurentPoly<K> {
    type Output = LaurentPoly<K>;
    fn neg(self) -> LaurentPoly<K> {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<K: Coeff> $tr<LaurentPoly<K>> for LaurentPoly<K> {
            type Output = LaurentPoly<K>;
            fn $m(self, rhs: LaurentPoly<K>) -> LaurentPoly<K> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<K: Coeff> Neg for LaurentPoly<K> {
    type Output = LaurentPoly<K>;
    fn neg(self) -> LaurentPoly<K> {
        -&self
    }
}

impl<K: Coeff> fmt::Display for LaurentPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative_like();
            let mag = if neg { c.neg() } else { c.clone() };
            let sign = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let coeff = mag.show();
            let body = match (*e, coeff.as_str()) {
                (0, _) => coeff.clone(),
                (1, "1") => "t".to_string(),
                (1, _) => format!("{coeff}*t"),
                (_, "1") => format!("t^{e}"),
                _ => format!("{coeff}*t^{e}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl<K: Coeff> fmt::Debug for LaurentPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::coeff::parse_rational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn zero_has_no_terms() {
        let p = QPoly::from_ints(&[(1, 2), (1, -2)]);
        assert!(p.is_zero());
        assert_eq!(p, QPoly::zero());
    }

    #[test]
    fn eval_trefoil_at_minus_one() {
        let d = QPoly::from_ints(&[(0, 1), (1, -1), (2, 1)]);
        assert_eq!(d.eval(&q("-1")).unwrap(), q("3"));
        assert_eq!(QPoly::q_one().eval(&q("7/3")).unwrap(), q("1"));
    }

    #[test]
    fn eval_at_zero() {
        assert!(QPoly::from_ints(&[(-1, 1)]).eval(&q("0")).is_err());
        assert_eq!(
            QPoly::from_ints(&[(0, 4), (2, 1)]).eval(&q("0")).unwrap(),
            q("4")
        );
    }

    #[test]
    fn exact_division() {
        let num = QPoly::from_ints(&[(2, 1), (0, -1)]);
        let den = QPoly::from_ints(&[(1, 1), (0, -1)]);
        assert_eq!(
            num.div_exact(&den).unwrap(),
            QPoly::from_ints(&[(1, 1), (0, 1)])
        );
        let tre = QPoly::from_ints(&[(2, 1), (1, -1), (0, 1)]);
        assert!(tre.div_exact(&den).is_none());
        // Laurent units divide everything.
        let unit = QPoly::from_ints(&[(-3, -1)]);
        assert_eq!(tre.div_exact(&unit).unwrap(), (-&tre).shift(3));
    }

    #[test]
    fn gcd_is_monic() {
        let a = QPoly::from_ints(&[(2, 2), (0, -2)]);
        let b = QPoly::from_ints(&[(3, 3), (2, -3)]);
        assert_eq!(a.gcd(&b), QPoly::from_ints(&[(1, 1), (0, -1)]));
    }

    #[test]
    fn display() {
        let p = QPoly::from_ints(&[(-1, -1), (0, 1), (1, -1)]);
        assert_eq!(p.to_string(), "-t + 1 - t^-1");
        assert_eq!(
            QPoly::from_ints(&[(2, 2), (1, -3), (0, 2)]).to_string(),
            "2*t^2 - 3*t + 2"
        );
    }
}
