use num_rational::Rational64;

use super::algebra::{EtaleAlgebra, FactorSpec};
use super::ffield::trace_form_nonsquares;
use crate::gw::{sq_class, BaseField, FieldValue, GwElement, SquareClass};
use crate::{Error, Result};

/// The scalar `e` in `(x, y) -> Tr(e x y)`, described up to squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleElement {
    /// An element of the base field (only for trivial factors).
    Base(SquareClass),
    /// A square (false) or non-square (true) of F_{q^m}.
    FiniteClass { nonsquare: bool },
    /// `e0 + e1 sqrt(a)` in k(sqrt a).
    Quadratic { e0: Rational64, e1: Rational64 },
}

fn finite_form(base: BaseField, m: u32, nonsquare: bool) -> Result<GwElement> {
    let BaseField::FiniteField { q } = base else {
        return Err(Error::Invalid(format!("F_q^{m} factor over {base}")));
    };
    let u = trace_form_nonsquares(q, m, nonsquare)? as i64;
    GwElement::from_terms(
        base,
        [
            (SquareClass::Finite(false), m as i64 - u),
            (SquareClass::Finite(true), u),
        ],
    )
}

/// Trace form of one factor.
pub fn factor_trace_form(base: BaseField, f: &FactorSpec) -> Result<GwElement> {
    match f {
        FactorSpec::Finite { m } => finite_form(base, *m, false),
        FactorSpec::Multiquad { classes } => {
            // The trace form of a tensor product is the product of trace forms.
            let two = GwElement::int(base, 2)?;
            let mut acc = GwElement::one(base);
            for a in classes {
                acc = &acc * &(&two + &two.twist(*a));
            }
            Ok(acc)
        }
    }
}

/// The class of `(x, y) -> Tr_{A/k}(xy)`.
pub fn trace_form(a: &EtaleAlgebra) -> GwElement {
    a.factors()
        .iter()
        .map(|f| factor_trace_form(a.base(), f).expect("factors are valid for their base"))
        .fold(GwElement::zero(a.base()), |acc, x| acc + x)
}

fn rational_class(base: BaseField, r: Rational64) -> Result<SquareClass> {
    sq_class(&base, FieldValue::Ratio(*r.numer(), *r.denom()))
}

/// The class of `(x, y) -> Tr_{E/k}(e x y)` for a field factor `E`.
pub fn scaled_trace(base: BaseField, e_field: &FactorSpec, e: ScaleElement) -> Result<GwElement> {
    match (e_field, e) {
        (FactorSpec::Finite { m }, ScaleElement::FiniteClass { nonsquare }) => {
            finite_form(base, *m, nonsquare)
        }
        (FactorSpec::Finite { m: 1 }, ScaleElement::Base(c)) => {
            base.check_class(&c)?;
            Ok(GwElement::class(base, c))
        }
        (FactorSpec::Multiquad { classes }, ScaleElement::Base(c)) if classes.is_empty() => {
            base.check_class(&c)?;
            Ok(GwElement::class(base, c))
        }
        (FactorSpec::Multiquad { classes }, ScaleElement::Quadratic { e0, e1 }) if classes.len() == 1 => {
            let a = classes[0].rep().expect("quadratic factors live over ordered fields");
            let a = Rational64::from(a);
            // Gram matrix in the basis {1, sqrt a}: [[2e0, 2a e1], [2a e1, 2a e0]].
            let zero = Rational64::from(0);
            if e0 == zero && e1 == zero {
                return Err(Error::ZeroElement);
            }
            if e0 == zero {
                return Ok(GwElement::hyperbolic(base));
            }
            let g00 = e0 * 2;
            let det = a * 4 * (e0 * e0 - a * e1 * e1);
            if det == zero {
                return Err(Error::ZeroElement);
            }
            let c0 = rational_class(base, g00)?;
            let c1 = rational_class(base, det / g00)?;
            Ok(&GwElement::class(base, c0) + &GwElement::class(base, c1))
        }
        (FactorSpec::Multiquad { classes }, _) if classes.len() > 1 => Err(
            Error::UnsupportedExtension("transfer along a nested multiquadratic extension".into()),
        ),
        (f, e) => Err(Error::Invalid(format!("scale {e:?} does not describe an element of {f:?}"))),
    }
}

/// Transfer `Tr_{F_{q^m}/F_q}` of an element of GW(F_{q^m}).
pub fn transfer_finite(base: BaseField, m: u32, x: &GwElement) -> Result<GwElement> {
    let BaseField::FiniteField { q } = base else {
        return Err(Error::UnsupportedExtension(format!("finite extension of {base}")));
    };
    let expect = q
        .checked_pow(m)
        .ok_or_else(|| Error::UnsupportedExtension(format!("F_{{{q}^{m}}} is too large")))?;
    if x.field() != (BaseField::FiniteField { q: expect }) {
        return Err(Error::FieldMismatch {
            left: x.field().to_string(),
            right: format!("F_{expect}"),
        });
    }
    let mut acc = GwElement::zero(base);
    for (c, k) in x.terms() {
        let SquareClass::Finite(nonsquare) = c else { unreachable!() };
        let t = scaled_trace(base, &FactorSpec::Finite { m }, ScaleElement::FiniteClass { nonsquare: *nonsquare })?;
        acc = &acc + &t.scale(*k);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gw::{gw_eq, gw_invariants};

    #[test]
    fn quadratic_trace_forms() {
        let q = BaseField::Rationals;
        let a = EtaleAlgebra::quadratic(q, &[2]).unwrap();
        let t = trace_form(&a);
        let expect = &GwElement::int(q, 2).unwrap() + &GwElement::int(q, 1).unwrap();
        assert_eq!(t, expect);
        let e = ScaleElement::Quadratic {
            e0: 1.into(),
            e1: 0.into(),
        };
        assert!(gw_eq(&scaled_trace(q, &a.factors()[0], e).unwrap(), &t).unwrap());
        let sqrt_a = ScaleElement::Quadratic {
            e0: 0.into(),
            e1: 1.into(),
        };
        let h = scaled_trace(q, &a.factors()[0], sqrt_a).unwrap();
        assert!(gw_eq(&h, &GwElement::hyperbolic(q)).unwrap());
    }

    /// Brute force over Q: diagonalize [[2e0, 2a e1], [2a e1, 2a e0]] by the
    /// determinant and first entry, compared through invariants.
    #[test]
    fn scaled_trace_determinant() {
        let q = BaseField::Rationals;
        for a in [2i64, 3, -1, 5] {
            let alg = EtaleAlgebra::quadratic(q, &[a]).unwrap();
            for (e0, e1) in [(1i64, 1i64), (3, -2), (1, 5), (-2, 1)] {
                let x = scaled_trace(
                    q,
                    &alg.factors()[0],
                    ScaleElement::Quadratic {
                        e0: e0.into(),
                        e1: e1.into(),
                    },
                )
                .unwrap();
                let det = 4 * a * (e0 * e0 - a * e1 * e1);
                let inv = gw_invariants(&x);
                assert_eq!(inv.det_class, q.class_of_int(det).unwrap());
                assert_eq!(inv.rank, 2);
            }
        }
    }

    #[test]
    fn finite_trace_forms() {
        for q in [3u64, 5, 7] {
            let f = BaseField::finite(q).unwrap();
            for m in 1..=6u32 {
                let t = trace_form(&EtaleAlgebra::finite(f, &[m]).unwrap());
                let inv = gw_invariants(&t);
                assert_eq!(inv.rank, m as i64);
                assert_eq!(inv.det_class, SquareClass::Finite(m % 2 == 0));
            }
        }
    }

    #[test]
    fn finite_scaled_by_nonsquare() {
        // det Tr(e x y) = N(e) det Tr(xy); the norm of a non-square is a non-square.
        for q in [3u64, 5] {
            let f = BaseField::finite(q).unwrap();
            for m in 1..=4u32 {
                let x = scaled_trace(f, &FactorSpec::Finite { m }, ScaleElement::FiniteClass { nonsquare: true }).unwrap();
                let inv = gw_invariants(&x);
                assert_eq!(inv.det_class, SquareClass::Finite(m % 2 == 1));
            }
        }
    }

    #[test]
    fn nested_extension_rejected() {
        let q = BaseField::Rationals;
        let a = EtaleAlgebra::parse(q, "multiquad:2:3").unwrap();
        let e = ScaleElement::Quadratic {
            e0: 1.into(),
            e1: 0.into(),
        };
        assert!(matches!(
            scaled_trace(q, &a.factors()[0], e),
            Err(Error::UnsupportedExtension(_))
        ));
    }
}
