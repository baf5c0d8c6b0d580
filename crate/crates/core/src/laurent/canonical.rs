use serde_json::{json, Map, Value};

use num_rational::BigRational;

use super::coeff::{format_rational, Coeff, Fp};
use super::poly::LaurentPoly;
use crate::error::{Error, Result};

/// A Laurent polynomial with its `unit * t^shift` factor split off.
///
/// `original = unit * t^shift * poly`, where `poly` has minimal exponent 0
/// and a positive (rationals) or unit (prime fields) leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalPoly<K: Coeff> {
    pub poly: LaurentPoly<K>,
    pub unit: K,
    pub shift: i64,
}

/// Picks the canonical associate of `p` under multiplication by units.
pub fn canonicalize<K: Coeff>(p: &LaurentPoly<K>, ctx: K::Ctx) -> CanonicalPoly<K> {
    let Some((_, lead)) = p.leading() else {
        return CanonicalPoly {
            poly: LaurentPoly::zero(),
            unit: K::one(ctx),
            shift: 0,
        };
    };
    let norm = lead.normalizing_unit();
    let (shifted, shift) = p.normalize_shift();
    CanonicalPoly {
        poly: shifted.scale(&norm),
        unit: norm.inv().expect("normalizing unit is invertible"),
        shift,
    }
}

impl<K: Coeff> CanonicalPoly<K> {
    /// Reassembles `unit * t^shift * poly`.
    pub fn expand(&self) -> LaurentPoly<K> {
        self.poly.shift(self.shift).scale(&self.unit)
    }
}

/// Either an exact Laurent quotient or a gcd-reduced fraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Quotient<K: Coeff> {
    Exact(LaurentPoly<K>),
    Fraction {
        num: LaurentPoly<K>,
        den: LaurentPoly<K>,
    },
}

impl<K: Coeff> Quotient<K> {
    pub fn is_polynomial(&self) -> bool {
        matches!(self, Quotient::Exact(_))
    }

    /// Numerator and denominator, the exact case having denominator 1.
    pub fn parts(&self, ctx: K::Ctx) -> (LaurentPoly<K>, LaurentPoly<K>) {
        match self {
            Quotient::Exact(p) => (p.clone(), LaurentPoly::one(ctx)),
            Quotient::Fraction { num, den } => (num.clone(), den.clone()),
        }
    }
}

/// Divides `num` by `den` in the Laurent ring over a field.
///
/// When the division is not exact the fraction is reduced by the polynomial
/// gcd; the denominator is returned in canonical form and the numerator
/// absorbs the units.
pub fn divide_exact<K: Coeff>(num: &LaurentPoly<K>, den: &LaurentPoly<K>) -> Result<Quotient<K>> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(Quotient::Exact(LaurentPoly::zero()));
    }
    if let Some(q) = num.div_exact(den) {
        return Ok(Quotient::Exact(q));
    }
    let g = num.gcd(den);
    let n = num.div_exact(&g).expect("gcd divides numerator");
    let d = den.div_exact(&g).expect("gcd divides denominator");
    let ctx = d.ctx().expect("nonzero denominator");
    let cd = canonicalize(&d, ctx);
    let unit_inv = cd.unit.inv().expect("unit");
    Ok(Quotient::Fraction {
        num: n.shift(-cd.shift).scale(&unit_inv),
        den: cd.poly,
    })
}

/// Renders the removed unit, e.g. `(-1)^1 t^-1` over the rationals.
pub trait UnitDisplay {
    fn unit_string(&self) -> String;
}

impl UnitDisplay for CanonicalPoly<BigRational> {
    fn unit_string(&self) -> String {
        let s = u8::from(num_traits::Signed::is_negative(&self.unit));
        format!("(-1)^{} t^{}", s, self.shift)
    }
}

impl UnitDisplay for CanonicalPoly<Fp> {
    fn unit_string(&self) -> String {
        format!("{} t^{}", self.unit.value(), self.shift)
    }
}

/// Coefficient map `{"<exp>": "<coeff>"}` used in JSON output.
pub fn coeff_map<K: Coeff>(p: &LaurentPoly<K>) -> Value {
    let mut m = Map::new();
    for (e, c) in p.terms() {
        m.insert(e.to_string(), Value::String(c.show()));
    }
    Value::Object(m)
}

/// Compact integer map `{"<exp>": n}` for integral rational polynomials.
pub fn int_coeff_map(p: &LaurentPoly<BigRational>) -> Value {
    let mut m = Map::new();
    for (e, c) in p.terms() {
        let v = if c.is_integer() {
            let n = c.numer().to_string();
            n.parse::<i64>()
                .map(Value::from)
                .unwrap_or(Value::String(n))
        } else {
            Value::String(format_rational(c))
        };
        m.insert(e.to_string(), v);
    }
    Value::Object(m)
}

pub fn canonical_json<K: Coeff>(c: &CanonicalPoly<K>) -> Value
where
    CanonicalPoly<K>: UnitDisplay,
{
    json!({ "coeffs": coeff_map(&c.poly), "unit": c.unit_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{Fp, PrimeField, QPoly};

    #[test]
    fn canonicalize_example() {
        let p = QPoly::from_ints(&[(-1, -1), (0, 1), (1, -1)]);
        let c = canonicalize(&p, ());
        assert_eq!(c.poly, QPoly::from_ints(&[(0, 1), (1, -1), (2, 1)]));
        assert_eq!(c.shift, -1);
        assert_eq!(c.unit, BigRational::from_integer((-1).into()));
        assert_eq!(c.unit_string(), "(-1)^1 t^-1");
        assert_eq!(c.expand(), p);
    }

    #[test]
    fn canonicalize_zero_and_constants() {
        let z = canonicalize(&QPoly::zero(), ());
        assert!(z.poly.is_zero());
        assert_eq!(z.shift, 0);
        let five = canonicalize(&QPoly::from_ints(&[(3, -5)]), ());
        assert_eq!(five.poly, QPoly::from_ints(&[(0, 5)]));
    }

    #[test]
    fn canonicalize_prime_field_is_monic() {
        let f = PrimeField::new(7).unwrap();
        let p = LaurentPoly::<Fp>::from_i64_terms(&[(-2, 3), (0, 5)], f);
        let c = canonicalize(&p, f);
        assert!(c.poly.leading().unwrap().1.is_one());
        assert_eq!(c.poly.min_exp(), Some(0));
        assert_eq!(c.expand(), p);
    }

    #[test]
    fn divide_cases() {
        let num = QPoly::from_ints(&[(2, 1), (0, -1)]);
        let den = QPoly::from_ints(&[(1, 1), (0, -1)]);
        assert_eq!(
            divide_exact(&num, &den).unwrap(),
            Quotient::Exact(QPoly::from_ints(&[(1, 1), (0, 1)]))
        );

        let tre = QPoly::from_ints(&[(2, 1), (1, -1), (0, 1)]);
        let q = divide_exact(&tre, &den).unwrap();
        assert!(!q.is_polynomial());
        assert_eq!(
            q,
            Quotient::Fraction {
                num: tre.clone(),
                den: den.clone()
            }
        );

        assert_eq!(
            divide_exact(&QPoly::zero(), &tre).unwrap(),
            Quotient::Exact(QPoly::zero())
        );
        assert!(matches!(
            divide_exact(&tre, &QPoly::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn divide_reduces_common_factor() {
        // (t^2-1)(t^2-t+1) / (t-1)^2 = (t+1)(t^2-t+1) / (t-1)
        let tm1 = QPoly::from_ints(&[(1, 1), (0, -1)]);
        let tp1 = QPoly::from_ints(&[(1, 1), (0, 1)]);
        let tre = QPoly::from_ints(&[(2, 1), (1, -1), (0, 1)]);
        let num = &(&tm1 * &tp1) * &tre;
        let den = (&tm1 * &tm1)
            .shift(-4)
            .scale(&BigRational::from_integer((-3).into()));
        match divide_exact(&num, &den).unwrap() {
            Quotient::Fraction { num: n, den: d } => {
                assert_eq!(d, tm1.scale(&BigRational::from_integer(3.into())));
                assert_eq!(
                    &n * &(&tm1 * &tm1)
                        .shift(-4)
                        .scale(&BigRational::from_integer((-3).into())),
                    &num * &d
                );
            }
            other => panic!("expected fraction, got {other:?}"),
        }
    }
}
