use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::arith::factorize;
use super::element::GwElement;
use super::field::{BaseField, SquareClass};
use super::hilbert::{hilbert_int, Place};
use crate::{Error, Result};

/// Complete invariants of an element of GW(k).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GwInvariants {
    pub rank: i64,
    /// Over R and Q only.
    pub signature: Option<i64>,
    pub det_class: SquareClass,
    /// Over Q only: the second Stiefel-Whitney class at each place of the prime set.
    pub hasse: Option<BTreeMap<Place, i8>>,
}

fn det_class(x: &GwElement) -> SquareClass {
    x.terms()
        .iter()
        .fold(x.field().one(), |acc, (c, m)| acc.mul(c.pow(m.rem_euclid(2) as u64)))
}

fn signature(x: &GwElement) -> Option<i64> {
    match x.field() {
        BaseField::FiniteField { .. } => None,
        _ => Some(x.terms().iter().map(|(c, m)| c.sign().unwrap() * m).sum()),
    }
}

/// Primes dividing 2 and any representative, plus infinity.
fn places_of<'a>(elems: impl IntoIterator<Item = &'a GwElement>) -> BTreeSet<Place> {
    let mut out = BTreeSet::new();
    out.insert(Place::Prime(2));
    out.insert(Place::Infinity);
    for x in elems {
        for c in x.terms().keys() {
            if let SquareClass::Rational(a) = c {
                for (p, _) in factorize(a.unsigned_abs()) {
                    out.insert(Place::Prime(p));
                }
            }
        }
    }
    out
}

/// Parity of `m(m-1)/2`, valid for negative `m` as well.
fn choose2_odd(m: i64) -> bool {
    matches!(m.rem_euclid(4), 2 | 3)
}

/// Local Hasse-Witt invariant `prod_{i<j} (a_i, a_j)_v` of a form given with
/// multiplicities. For negative multiplicities this is the degree two part of
/// the total Stiefel-Whitney class, which is additive-to-multiplicative on GW.
fn hasse_at(x: &GwElement, v: Place) -> i8 {
    let terms: Vec<(i128, i64)> = x
        .terms()
        .iter()
        .map(|(c, m)| (c.rep().expect("ordered field") as i128, *m))
        .collect();
    let mut odd = false;
    for (i, (a, m)) in terms.iter().enumerate() {
        if choose2_odd(*m) && hilbert_int(*a, *a, v).unwrap() == -1 {
            odd = !odd;
        }
        for (b, n) in &terms[i + 1..] {
            if (m * n) % 2 != 0 && hilbert_int(*a, *b, v).unwrap() == -1 {
                odd = !odd;
            }
        }
    }
    if odd {
        -1
    } else {
        1
    }
}

pub fn gw_invariants(x: &GwElement) -> GwInvariants {
    let hasse = match x.field() {
        BaseField::Rationals => Some(
            places_of([x])
                .into_iter()
                .map(|v| (v, hasse_at(x, v)))
                .collect(),
        ),
        _ => None,
    };
    GwInvariants {
        rank: x.rank(),
        signature: signature(x),
        det_class: det_class(x),
        hasse,
    }
}

/// Decides equality in GW(k).
pub fn gw_eq(x: &GwElement, y: &GwElement) -> Result<bool> {
    if x.field() != y.field() {
        return Err(Error::FieldMismatch {
            left: x.field().to_string(),
            right: y.field().to_string(),
        });
    }
    if x.rank() != y.rank() {
        return Ok(false);
    }
    Ok(match x.field() {
        BaseField::FiniteField { .. } => det_class(x) == det_class(y),
        BaseField::RealClosed => signature(x) == signature(y),
        BaseField::Rationals => {
            // Compare the genuine forms x+ + y- and y+ + x- (Witt cancellation).
            let (xp, xn) = x.split_signs();
            let (yp, yn) = y.split_signs();
            let left = &xp + &yn;
            let right = &yp + &xn;
            signature(&left) == signature(&right)
                && det_class(&left) == det_class(&right)
                && places_of([&left, &right])
                    .into_iter()
                    .all(|v| hasse_at(&left, v) == hasse_at(&right, v))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    fn c(n: i64) -> GwElement {
        GwElement::int(q(), n).unwrap()
    }

    #[test]
    fn invariants_serialize() {
        let x = &c(3) + &c(-7);
        let v = serde_json::to_value(gw_invariants(&x)).unwrap();
        assert_eq!(v["rank"], 2);
        assert!(v["hasse"]["inf"].is_number());
        assert!(v["hasse"]["7"].is_number());
    }

    #[test]
    fn invariants_examples() {
        let h = GwElement::hyperbolic(q());
        let inv = gw_invariants(&h);
        assert_eq!(inv.rank, 2);
        assert_eq!(inv.signature, Some(0));
        assert_eq!(inv.det_class, SquareClass::Rational(-1));

        // 6<1> + <2> + <2d> + 2h at d = -1: det = 2 * (-2) * (-1)^2 ~ -1,
        // signature = 6 + 1 - 1 + 0.
        let d = -1;
        let x = &c(1) * 6 + c(2) + c(2 * d) + &h * 2;
        let inv = gw_invariants(&x);
        assert_eq!(inv.rank, 12);
        assert_eq!(inv.signature, Some(6));
        assert_eq!(inv.det_class, SquareClass::Rational(-1));

        let inv = gw_invariants(&(&c(2) * 7));
        assert_eq!((inv.rank, inv.signature), (7, Some(7)));
        assert_eq!(inv.det_class, SquareClass::Rational(2));
    }

    #[test]
    fn equality_examples() {
        assert!(gw_eq(&(&c(1) * 2), &(&c(2) * 2)).unwrap());
        assert!(!gw_eq(&c(1), &c(2)).unwrap());
        let h = GwElement::hyperbolic(q());
        for d in [-1i64, 2, 3] {
            let lhs = &c(1) * 6 + c(2) + c(2 * d) + &h * 2;
            let rhs = &c(2) * 7 + c(2 * d) + &h * 2;
            assert!(gw_eq(&lhs, &rhs).unwrap(), "d = {d}");
        }
        // <1> + <1> and <-1> + <-1> differ in signature only.
        assert!(!gw_eq(&(&c(1) * 2), &(&c(-1) * 2)).unwrap());
        // <1> + <1> versus <3> + <3>: same rank, signature, det; differ at 3.
        assert!(!gw_eq(&(&c(1) * 2), &(&c(3) * 2)).unwrap());
    }

    #[test]
    fn finite_and_real() {
        let f = BaseField::finite(3).unwrap();
        let u = GwElement::class(f, SquareClass::Finite(true));
        assert!(gw_eq(&(&u * 2), &(&GwElement::one(f) * 2)).unwrap());
        assert!(!gw_eq(&u, &GwElement::one(f)).unwrap());
        let r = BaseField::RealClosed;
        let m = GwElement::class(r, SquareClass::Real(true));
        assert!(!gw_eq(&m, &GwElement::one(r)).unwrap());
        assert!(gw_eq(&(&m + &GwElement::one(r)), &GwElement::hyperbolic(r)).unwrap());
    }

    #[test]
    fn hasse_of_virtual_matches_equality() {
        // 2<1> - 2<2> is zero in GW(Q), so its invariants equal those of 0.
        let x = &c(1) * 2 - &c(2) * 2;
        let z = GwElement::zero(q());
        assert!(gw_eq(&x, &z).unwrap());
        let ix = gw_invariants(&x);
        let iz = gw_invariants(&z);
        assert_eq!(ix.rank, iz.rank);
        assert_eq!(ix.det_class, iz.det_class);
        assert!(ix.hasse.unwrap().values().all(|s| *s == 1));
    }
}
