//! Hilbert symbols over Q.

use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::arith::{legendre, split_valuation};
use crate::{Error, Result};

/// A place of Q, written `"2"`, `"3"`, ... or `"inf"` in JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        match s.as_str() {
            "inf" => Ok(Place::Infinity),
            p => p.parse().map(Place::Prime).map_err(serde::de::Error::custom),
        }
    }
}

fn eps(u: i128) -> u32 {
    // (u - 1)/2 mod 2 for odd u
    if u.rem_euclid(4) == 1 {
        0
    } else {
        1
    }
}

fn omega(u: i128) -> u32 {
    // (u^2 - 1)/8 mod 2 for odd u
    match u.rem_euclid(8) {
        1 | 7 => 0,
        _ => 1,
    }
}

/// Hilbert symbol `(a, b)_v` of nonzero integers. `place` must be a prime or infinity.
pub fn hilbert_int(a: i128, b: i128, place: Place) -> Result<i8> {
    if a == 0 || b == 0 {
        return Err(Error::ZeroElement);
    }
    Ok(match place {
        Place::Infinity => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = split_valuation(a, 2);
            let (beta, v) = split_valuation(b, 2);
            let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
            if e.is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split_valuation(a, p);
            let (beta, v) = split_valuation(b, p);
            let mut s: i8 = 1;
            if (alpha * beta) % 2 == 1 && (p % 4 == 3) {
                s = -s;
            }
            if beta % 2 == 1 {
                s *= legendre(u, p);
            }
            if alpha % 2 == 1 {
                s *= legendre(v, p);
            }
            s
        }
    })
}

/// Hilbert symbol `(a, b)_v` of integers.
pub fn hilbert_symbol(a: i64, b: i64, place: Place) -> Result<i8> {
    hilbert_int(a as i128, b as i128, place)
}

/// Hilbert symbol of nonzero rationals, via `(n/d, b) = (n, b)(d, b)`.
pub fn hilbert_symbol_q(a: Rational64, b: Rational64, place: Place) -> Result<i8> {
    if *a.numer() == 0 || *b.numer() == 0 {
        return Err(Error::ZeroElement);
    }
    let (an, ad) = (*a.numer() as i128, *a.denom() as i128);
    let (bn, bd) = (*b.numer() as i128, *b.denom() as i128);
    let mut s = 1;
    for x in [an, ad] {
        for y in [bn, bd] {
            s *= hilbert_int(x, y, place)?;
        }
    }
    Ok(s)
}
