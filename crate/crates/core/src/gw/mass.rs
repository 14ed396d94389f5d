//! Masses of nodes and quadratic weights of curves.

use num_rational::Rational64;

use super::{sq_class, BaseField, FieldValue, GwElement, SquareClass};
use crate::etale::transfer_finite;
use crate::{Error, Result};

/// A node's residue field over the curve's field of definition k(u), with the
/// discriminant delta of its tangent directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeDelta {
    /// k(x) = k(u).
    Rational(SquareClass),
    /// k(x) = F_{Q^r} over k(u) = F_Q; delta is a square or a non-square there.
    FiniteExtension { degree: u32, nonsquare: bool },
    /// k(x) = k(u)(sqrt a) and delta = e0 + e1 sqrt a.
    Quadratic { a: i64, e0: Rational64, e1: Rational64 },
}

/// `<N_{k(x)/k(u)} delta>` in GW(k(u)).
pub fn mass(field: BaseField, node: NodeDelta) -> Result<GwElement> {
    match node {
        NodeDelta::Rational(c) => {
            field.check_class(&c)?;
            Ok(GwElement::class(field, c))
        }
        NodeDelta::FiniteExtension { degree, nonsquare } => {
            if !field.is_finite() {
                return Err(Error::UnsupportedExtension(format!("finite extension of {field}")));
            }
            if degree == 0 {
                return Err(Error::Invalid("extension of degree 0".into()));
            }
            // The norm of a cyclic extension of finite fields is onto, so it
            // maps non-squares to non-squares.
            Ok(GwElement::class(field, SquareClass::Finite(nonsquare)))
        }
        NodeDelta::Quadratic { a, e0, e1 } => {
            if field.is_finite() {
                return Err(Error::UnsupportedExtension(
                    "give finite extensions by degree".into(),
                ));
            }
            let norm = e0 * e0 - Rational64::from(a) * e1 * e1;
            if norm == Rational64::from(0) {
                return Err(Error::ZeroElement);
            }
            let c = sq_class(&field, FieldValue::Ratio(*norm.numer(), *norm.denom()))?;
            Ok(GwElement::class(field, c))
        }
    }
}

/// The extension k(u)/k(p) of a curve's field of definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveExtension {
    Trivial(BaseField),
    /// F_{q^m} over `base` = F_q.
    Finite { base: BaseField, m: u32 },
}

/// `Tr_{k(u)/k(p)}` of the product of the masses.
pub fn curve_weight(masses: &[GwElement], ext: CurveExtension) -> Result<GwElement> {
    let field = match ext {
        CurveExtension::Trivial(f) => f,
        CurveExtension::Finite { base, m } => {
            let BaseField::FiniteField { q } = base else {
                return Err(Error::UnsupportedExtension(format!("finite extension of {base}")));
            };
            let big = q
                .checked_pow(m)
                .ok_or_else(|| Error::UnsupportedExtension("extension too large".into()))?;
            BaseField::FiniteField { q: big }
        }
    };
    let mut prod = GwElement::one(field);
    for x in masses {
        prod = prod.try_mul(x)?;
    }
    match ext {
        CurveExtension::Trivial(_) => Ok(prod),
        CurveExtension::Finite { base, m } => transfer_finite(base, m, &prod),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::etale::ffield::GaloisField;
    use crate::gw::gw_eq;

    #[test]
    fn trivial_masses() {
        let q = BaseField::Rationals;
        assert_eq!(mass(q, NodeDelta::Rational(SquareClass::Rational(1))).unwrap(), GwElement::one(q));
        let d = SquareClass::Rational(-7);
        assert_eq!(mass(q, NodeDelta::Rational(d)).unwrap(), GwElement::class(q, d));
        // N(1 + sqrt 2) = -1
        let m = mass(q, NodeDelta::Quadratic { a: 2, e0: 1.into(), e1: 1.into() }).unwrap();
        assert_eq!(m, GwElement::int(q, -1).unwrap());
    }

    /// Norms by the product of Frobenius conjugates, compared with the power map.
    #[test]
    fn finite_norm_brute_force() {
        for q in [3u64, 5] {
            let f = BaseField::finite(q).unwrap();
            let gf = GaloisField::new(q, 2);
            let order = gf.order().unwrap();
            for k in 1..order {
                let e = gf.from_index(k);
                let conj = gf.pow(&e, q as u128);
                let norm = gf.mul(&e, &conj);
                assert!(norm[1] == 0, "norm lies in F_q");
                let norm_sq = crate::gw::arith::legendre(norm[0] as i128, q) == 1;
                let e_sq = gf.is_square_in(&e, order);
                let m = mass(f, NodeDelta::FiniteExtension { degree: 2, nonsquare: !e_sq }).unwrap();
                assert_eq!(m.mult(SquareClass::Finite(!norm_sq)), 1);
            }
        }
    }

    #[test]
    fn weights() {
        let q = BaseField::Rationals;
        assert_eq!(curve_weight(&[], CurveExtension::Trivial(q)).unwrap(), GwElement::one(q));
        let d = GwElement::int(q, 3).unwrap();
        assert_eq!(curve_weight(std::slice::from_ref(&d), CurveExtension::Trivial(q)).unwrap(), d);
        let f = BaseField::finite(5).unwrap();
        let f25 = BaseField::finite(25).unwrap();
        let w = curve_weight(&[GwElement::one(f25)], CurveExtension::Finite { base: f, m: 2 }).unwrap();
        let expect = &GwElement::one(f) + &GwElement::class(f, SquareClass::Finite(true));
        assert!(gw_eq(&w, &expect).unwrap());
    }
}
