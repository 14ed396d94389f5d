use std::fmt;

use serde::{Deserialize, Serialize};

use super::arith;
use crate::{Error, Result};

/// The supported base fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawField", into = "RawField")]
pub enum BaseField {
    /// F_q with q an odd prime power.
    FiniteField { q: u64 },
    RealClosed,
    Rationals,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum RawField {
    Fq { q: u64 },
    R,
    Q,
}

impl TryFrom<RawField> for BaseField {
    type Error = Error;
    fn try_from(raw: RawField) -> Result<Self> {
        match raw {
            RawField::Fq { q } => BaseField::finite(q),
            RawField::R => Ok(BaseField::RealClosed),
            RawField::Q => Ok(BaseField::Rationals),
        }
    }
}

impl From<BaseField> for RawField {
    fn from(f: BaseField) -> Self {
        match f {
            BaseField::FiniteField { q } => RawField::Fq { q },
            BaseField::RealClosed => RawField::R,
            BaseField::Rationals => RawField::Q,
        }
    }
}

/// A canonical representative of k*/(k*)^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SquareClass {
    /// Over F_q: `false` is the square class 1, `true` the non-square class u.
    Finite(bool),
    /// Over a real closed field: `false` is +1, `true` is -1.
    Real(bool),
    /// Over Q: a nonzero square-free integer.
    Rational(i64),
}

/// Ways of naming a nonzero field element for [`sq_class`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldValue {
    /// An integer, read in the prime field over F_q.
    Int(i64),
    /// A rational number `num / den`.
    Ratio(i64, i64),
    /// Over F_q: the power `g^k` of a fixed generator of the multiplicative group.
    GeneratorPower(u64),
    Square,
    NonSquare,
}

impl BaseField {
    pub fn finite(q: u64) -> Result<Self> {
        let (p, _) = arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if p == 2 {
            return Err(Error::EvenCharacteristic(q));
        }
        Ok(BaseField::FiniteField { q })
    }

    /// `(p, e)` with `q = p^e` for finite fields.
    pub fn char_exp(&self) -> Option<(u64, u32)> {
        match self {
            BaseField::FiniteField { q } => arith::prime_power(*q),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, BaseField::FiniteField { .. })
    }

    pub fn one(&self) -> SquareClass {
        match self {
            BaseField::FiniteField { .. } => SquareClass::Finite(false),
            BaseField::RealClosed => SquareClass::Real(false),
            BaseField::Rationals => SquareClass::Rational(1),
        }
    }

    /// Square class of the image of the integer `n`.
    pub fn class_of_int(&self, n: i64) -> Result<SquareClass> {
        if n == 0 {
            return Err(Error::ZeroElement);
        }
        match self {
            BaseField::FiniteField { .. } => {
                let (p, e) = self.char_exp().expect("finite field");
                let r = (n as i128).rem_euclid(p as i128);
                if r == 0 {
                    return Err(Error::ZeroElement);
                }
                if e % 2 == 0 {
                    Ok(SquareClass::Finite(false))
                } else {
                    Ok(SquareClass::Finite(arith::legendre(r, p) == -1))
                }
            }
            BaseField::RealClosed => Ok(SquareClass::Real(n < 0)),
            BaseField::Rationals => Ok(SquareClass::Rational(
                arith::square_free_part(n as i128) as i64,
            )),
        }
    }

    /// The class of -1.
    pub fn minus_one(&self) -> SquareClass {
        self.class_of_int(-1).expect("-1 is nonzero in odd characteristic")
    }

    pub fn contains(&self, c: &SquareClass) -> bool {
        matches!(
            (self, c),
            (BaseField::FiniteField { .. }, SquareClass::Finite(_))
                | (BaseField::RealClosed, SquareClass::Real(_))
                | (BaseField::Rationals, SquareClass::Rational(_))
        )
    }

    pub fn check_class(&self, c: &SquareClass) -> Result<()> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(Error::InvalidClass {
                class: c.to_string(),
                field: self.to_string(),
            })
        }
    }

    /// Parses a class written as an integer or `u`.
    pub fn parse_class(&self, s: &str) -> Result<SquareClass> {
        let t = s.trim();
        if self.is_finite() {
            match t {
                "u" | "+u" => return Ok(SquareClass::Finite(true)),
                "-u" => return Ok(self.minus_one().mul(SquareClass::Finite(true))),
                _ => {}
            }
        }
        let n: i64 = t
            .parse()
            .map_err(|_| Error::Parse(format!("bad square class {t:?} for {self}")))?;
        self.class_of_int(n)
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::FiniteField { q } => write!(f, "F_{q}"),
            BaseField::RealClosed => write!(f, "R"),
            BaseField::Rationals => write!(f, "Q"),
        }
    }
}

impl SquareClass {
    pub fn mul(self, other: SquareClass) -> SquareClass {
        match (self, other) {
            (SquareClass::Finite(a), SquareClass::Finite(b)) => SquareClass::Finite(a ^ b),
            (SquareClass::Real(a), SquareClass::Real(b)) => SquareClass::Real(a ^ b),
            (SquareClass::Rational(a), SquareClass::Rational(b)) => {
                SquareClass::Rational(arith::square_free_mul(a, b))
            }
            _ => panic!("square classes from different fields: {self} and {other}"),
        }
    }

    pub fn pow(self, k: u64) -> SquareClass {
        if k.is_multiple_of(2) {
            self.unit()
        } else {
            self
        }
    }

    /// The trivial class of the same field.
    pub fn unit(self) -> SquareClass {
        match self {
            SquareClass::Finite(_) => SquareClass::Finite(false),
            SquareClass::Real(_) => SquareClass::Real(false),
            SquareClass::Rational(_) => SquareClass::Rational(1),
        }
    }

    pub fn is_square(self) -> bool {
        self == self.unit()
    }

    /// Sign of the representative over ordered fields.
    pub fn sign(self) -> Option<i64> {
        match self {
            SquareClass::Finite(_) => None,
            SquareClass::Real(neg) => Some(if neg { -1 } else { 1 }),
            SquareClass::Rational(a) => Some(a.signum()),
        }
    }

    /// Integer representative over ordered fields.
    pub fn rep(self) -> Option<i64> {
        match self {
            SquareClass::Finite(_) => None,
            SquareClass::Real(neg) => Some(if neg { -1 } else { 1 }),
            SquareClass::Rational(a) => Some(a),
        }
    }

    /// Key ordering classes as 1, -1, 2, -2, 3, ... for printing.
    pub fn display_key(self) -> (u64, bool) {
        match self {
            SquareClass::Finite(u) => (u as u64, false),
            SquareClass::Real(neg) => (1, neg),
            SquareClass::Rational(a) => (a.unsigned_abs(), a < 0),
        }
    }
}

impl Serialize for SquareClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SquareClass::Finite(false) => write!(f, "1"),
            SquareClass::Finite(true) => write!(f, "u"),
            SquareClass::Real(false) => write!(f, "1"),
            SquareClass::Real(true) => write!(f, "-1"),
            SquareClass::Rational(a) => write!(f, "{a}"),
        }
    }
}

/// Canonical square class of a nonzero element.
pub fn sq_class(field: &BaseField, a: FieldValue) -> Result<SquareClass> {
    match (field, a) {
        (_, FieldValue::Int(n)) => field.class_of_int(n),
        (_, FieldValue::Ratio(_, 0)) => Err(Error::Invalid("zero denominator".into())),
        (_, FieldValue::Ratio(0, _)) => Err(Error::ZeroElement),
        (BaseField::FiniteField { .. }, FieldValue::Ratio(n, d)) => {
            Ok(field.class_of_int(n)?.mul(field.class_of_int(d)?))
        }
        (_, FieldValue::Ratio(n, d)) => {
            // n/d and n*d differ by the square d^2.
            let v = arith::square_free_part(n as i128 * d as i128);
            match field {
                BaseField::RealClosed => Ok(SquareClass::Real(v < 0)),
                _ => Ok(SquareClass::Rational(v as i64)),
            }
        }
        (BaseField::FiniteField { .. }, FieldValue::GeneratorPower(k)) => {
            Ok(SquareClass::Finite(k % 2 == 1))
        }
        (BaseField::FiniteField { .. }, FieldValue::Square) => Ok(SquareClass::Finite(false)),
        (BaseField::FiniteField { .. }, FieldValue::NonSquare) => Ok(SquareClass::Finite(true)),
        (BaseField::RealClosed, FieldValue::Square) => Ok(SquareClass::Real(false)),
        (BaseField::RealClosed, FieldValue::NonSquare) => Ok(SquareClass::Real(true)),
        _ => Err(Error::Invalid(format!("{a:?} does not name an element of {field}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_classes() {
        let q = BaseField::Rationals;
        assert_eq!(sq_class(&q, FieldValue::Int(8)).unwrap(), SquareClass::Rational(2));
        assert_eq!(sq_class(&q, FieldValue::Int(-12)).unwrap(), SquareClass::Rational(-3));
        assert_eq!(sq_class(&q, FieldValue::Ratio(3, 12)).unwrap(), SquareClass::Rational(1));
        assert_eq!(sq_class(&q, FieldValue::Int(0)), Err(Error::ZeroElement));
    }

    #[test]
    fn finite_classes() {
        let f7 = BaseField::finite(7).unwrap();
        // 3 is not among the squares {1, 2, 4} mod 7.
        assert_eq!(sq_class(&f7, FieldValue::Int(3)).unwrap(), SquareClass::Finite(true));
        assert_eq!(sq_class(&f7, FieldValue::Int(2)).unwrap(), SquareClass::Finite(false));
        assert_eq!(sq_class(&f7, FieldValue::Int(14)), Err(Error::ZeroElement));
        assert_eq!(BaseField::finite(8), Err(Error::EvenCharacteristic(8)));
        assert_eq!(BaseField::finite(6), Err(Error::NotPrimePower(6)));
        // Every prime-field element is a square in F_9.
        let f9 = BaseField::finite(9).unwrap();
        assert_eq!(f9.class_of_int(2).unwrap(), SquareClass::Finite(false));
        assert_eq!(f9.minus_one(), SquareClass::Finite(false));
        assert_eq!(BaseField::finite(3).unwrap().minus_one(), SquareClass::Finite(true));
    }

    #[test]
    fn field_json() {
        let f = BaseField::finite(5).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"kind":"Fq","q":5}"#);
        assert_eq!(serde_json::from_str::<BaseField>(&s).unwrap(), f);
        assert!(serde_json::from_str::<BaseField>(r#"{"kind":"Fq","q":4}"#).is_err());
        assert_eq!(
            serde_json::from_str::<BaseField>(r#"{"kind":"Q"}"#).unwrap(),
            BaseField::Rationals
        );
    }
}
