use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{BaseField, SquareClass};
use crate::{Error, Result};

/// An element of GW(k) stored as a multiplicity map on square classes.
///
/// Two elements with equal term maps are equal in GW(k), but not conversely;
/// use [`super::gw_eq`] to decide equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GwElement {
    field: BaseField,
    terms: BTreeMap<SquareClass, i64>,
}

impl GwElement {
    pub fn zero(field: BaseField) -> Self {
        GwElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: BaseField) -> Self {
        Self::class(field, field.one())
    }

    /// The rank one element `<c>`. Panics if `c` does not belong to `field`.
    pub fn class(field: BaseField, c: SquareClass) -> Self {
        assert!(field.contains(&c), "class {c} does not belong to {field}");
        let mut terms = BTreeMap::new();
        terms.insert(c, 1);
        GwElement { field, terms }
    }

    /// `<n>` for a nonzero integer `n`.
    pub fn int(field: BaseField, n: i64) -> Result<Self> {
        Ok(Self::class(field, field.class_of_int(n)?))
    }

    /// The hyperbolic element `h = <1> + <-1>`.
    pub fn hyperbolic(field: BaseField) -> Self {
        let mut x = Self::one(field);
        x.add_term(field.minus_one(), 1);
        x
    }

    pub fn from_terms<I>(field: BaseField, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SquareClass, i64)>,
    {
        let mut x = Self::zero(field);
        for (c, m) in terms {
            field.check_class(&c)?;
            x.add_term(c, m);
        }
        Ok(x)
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<SquareClass, i64> {
        &self.terms
    }

    pub fn mult(&self, c: SquareClass) -> i64 {
        self.terms.get(&c).copied().unwrap_or(0)
    }

    pub fn rank(&self) -> i64 {
        self.terms.values().sum()
    }

    /// True if the term map is empty. This is stronger than being zero in GW(k).
    pub fn is_zero_map(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, c: SquareClass, m: i64) {
        if m == 0 {
            return;
        }
        let e = self.terms.entry(c).or_insert(0);
        *e += m;
        if *e == 0 {
            self.terms.remove(&c);
        }
    }

    fn same_field(&self, other: &GwElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &GwElement) -> Result<GwElement> {
        self.same_field(other)?;
        let mut out = self.clone();
        for (c, m) in &other.terms {
            out.add_term(*c, *m);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &GwElement) -> Result<GwElement> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &GwElement) -> Result<GwElement> {
        self.same_field(other)?;
        let mut out = GwElement::zero(self.field);
        for (a, m) in &self.terms {
            for (b, n) in &other.terms {
                out.add_term(a.mul(*b), m * n);
            }
        }
        Ok(out)
    }

    fn neg_ref(&self) -> GwElement {
        GwElement {
            field: self.field,
            terms: self.terms.iter().map(|(c, m)| (*c, -m)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> GwElement {
        let mut out = GwElement::zero(self.field);
        for (c, m) in &self.terms {
            out.add_term(*c, m * k);
        }
        out
    }

    /// Multiplication by the rank one element `<c>`.
    pub fn twist(&self, c: SquareClass) -> GwElement {
        let mut out = GwElement::zero(self.field);
        for (a, m) in &self.terms {
            out.add_term(a.mul(c), *m);
        }
        out
    }

    /// Field-canonical form.
    ///
    /// Over F_q this is `r<1>` or `(r-1)<1> + <u>`; over R it is `p<1> + n<-1>`;
    /// over Q the term map is returned unchanged.
    pub fn canonical(&self) -> GwElement {
        match self.field {
            BaseField::FiniteField { .. } => {
                let r = self.rank();
                let u = self.mult(SquareClass::Finite(true)).rem_euclid(2);
                let mut out = GwElement::zero(self.field);
                out.add_term(SquareClass::Finite(false), r - u);
                out.add_term(SquareClass::Finite(true), u);
                out
            }
            BaseField::RealClosed => {
                let r = self.rank();
                let s: i64 = self.terms.iter().map(|(c, m)| c.sign().unwrap() * m).sum();
                let mut out = GwElement::zero(self.field);
                out.add_term(SquareClass::Real(false), (r + s) / 2);
                out.add_term(SquareClass::Real(true), (r - s) / 2);
                out
            }
            BaseField::Rationals => self.clone(),
        }
    }

    /// Splits into the positive part and the negated negative part.
    pub fn split_signs(&self) -> (GwElement, GwElement) {
        let mut pos = GwElement::zero(self.field);
        let mut neg = GwElement::zero(self.field);
        for (c, m) in &self.terms {
            if *m > 0 {
                pos.add_term(*c, *m);
            } else {
                neg.add_term(*c, -m);
            }
        }
        (pos, neg)
    }
}

pub fn gw_add(x: &GwElement, y: &GwElement) -> Result<GwElement> {
    x.try_add(y)
}

pub fn gw_sub(x: &GwElement, y: &GwElement) -> Result<GwElement> {
    x.try_sub(y)
}

pub fn gw_neg(x: &GwElement) -> GwElement {
    x.neg_ref()
}

pub fn gw_mul(x: &GwElement, y: &GwElement) -> Result<GwElement> {
    x.try_mul(y)
}

// Operator forms panic on a field mismatch; library code uses them only where
// the fields are equal by construction.
impl Add<&GwElement> for &GwElement {
    type Output = GwElement;
    fn add(self, rhs: &GwElement) -> GwElement {
        self.try_add(rhs).expect("GW addition across fields")
    }
}

impl Sub<&GwElement> for &GwElement {
    type Output = GwElement;
    fn sub(self, rhs: &GwElement) -> GwElement {
        self.try_sub(rhs).expect("GW subtraction across fields")
    }
}

impl Mul<&GwElement> for &GwElement {
    type Output = GwElement;
    fn mul(self, rhs: &GwElement) -> GwElement {
        self.try_mul(rhs).expect("GW multiplication across fields")
    }
}

impl Neg for &GwElement {
    type Output = GwElement;
    fn neg(self) -> GwElement {
        self.neg_ref()
    }
}

impl Mul<i64> for &GwElement {
    type Output = GwElement;
    fn mul(self, k: i64) -> GwElement {
        self.scale(k)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<GwElement> for GwElement {
            type Output = GwElement;
            fn $m(self, rhs: GwElement) -> GwElement { (&self).$m(&rhs) }
        }
        impl $tr<&GwElement> for GwElement {
            type Output = GwElement;
            fn $m(self, rhs: &GwElement) -> GwElement { (&self).$m(rhs) }
        }
        impl $tr<GwElement> for &GwElement {
            type Output = GwElement;
            fn $m(self, rhs: GwElement) -> GwElement { self.$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for GwElement {
    type Output = GwElement;
    fn neg(self) -> GwElement {
        self.neg_ref()
    }
}

impl Mul<i64> for GwElement {
    type Output = GwElement;
    fn mul(self, k: i64) -> GwElement {
        self.scale(k)
    }
}

impl std::iter::Sum for GwElement {
    /// Panics on an empty iterator since the field is unknown; use `fold` instead.
    fn sum<I: Iterator<Item = GwElement>>(mut iter: I) -> GwElement {
        let first = iter.next().expect("sum of an empty GW iterator");
        iter.fold(first, |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    #[test]
    fn hyperbolic_from_classes() {
        let h = GwElement::int(q(), 1).unwrap() + GwElement::int(q(), -1).unwrap();
        assert_eq!(h, GwElement::hyperbolic(q()));
        assert_eq!(h.rank(), 2);
    }

    #[test]
    fn term_map_arithmetic() {
        let d = -1;
        let two = GwElement::int(q(), 2).unwrap();
        let two_d = GwElement::int(q(), 2 * d).unwrap();
        let x = &(&two + &two_d) - &(&two_d * 2);
        assert_eq!(x, &two - &two_d);
        assert_eq!(&x + &GwElement::zero(q()), x);
        // <2><2d> = <4d> = <d>
        assert_eq!(&two * &two_d, GwElement::int(q(), d).unwrap());
        // (<2> - <2d>)^2 = 2<1> - 2<d> as a term map
        let sq = &x * &x;
        let expect = GwElement::from_terms(
            q(),
            [(SquareClass::Rational(1), 2), (SquareClass::Rational(d), -2)],
        )
        .unwrap();
        assert_eq!(sq, expect);
    }

    #[test]
    fn twist_sign_pattern() {
        let d = 3;
        let diff = &GwElement::int(q(), 2).unwrap() - &GwElement::int(q(), 2 * d).unwrap();
        let dc = q().class_of_int(d).unwrap();
        assert_eq!(diff.twist(dc.pow(2)), diff);
        assert_eq!(diff.twist(dc.pow(3)), -&diff);
    }

    #[test]
    fn field_mismatch() {
        let f = BaseField::finite(3).unwrap();
        let e = GwElement::one(q()).try_add(&GwElement::one(f));
        assert!(matches!(e, Err(Error::FieldMismatch { .. })));
        let bad = GwElement::from_terms(q(), [(SquareClass::Finite(true), 1)]);
        assert!(matches!(bad, Err(Error::InvalidClass { .. })));
    }

    #[test]
    fn canonical_forms() {
        let f = BaseField::finite(5).unwrap();
        let u = GwElement::class(f, SquareClass::Finite(true));
        let c = (&u * 3).canonical();
        assert_eq!(c.mult(SquareClass::Finite(false)), 2);
        assert_eq!(c.mult(SquareClass::Finite(true)), 1);
        let r = BaseField::RealClosed;
        let x = &GwElement::hyperbolic(r) * 3 - GwElement::one(r);
        let c = x.canonical();
        assert_eq!(c.mult(SquareClass::Real(false)), 2);
        assert_eq!(c.mult(SquareClass::Real(true)), 3);
    }
}
