//! Square classes of Q or R as vectors over F_2.

use crate::gw::arith::factorize;
use crate::gw::{BaseField, SquareClass};

/// Coordinates: bit 0 is the sign, bit k+1 is the k-th prime of `primes`.
#[derive(Debug, Clone)]
pub struct ClassSpace {
    primes: Vec<u64>,
    real: bool,
}

impl ClassSpace {
    /// A coordinate system large enough for all of `classes`.
    pub fn covering<'a>(field: BaseField, classes: impl IntoIterator<Item = &'a SquareClass>) -> Self {
        let mut primes = Vec::new();
        let real = field == BaseField::RealClosed;
        for c in classes {
            match c {
                SquareClass::Rational(a) => {
                    for (p, _) in factorize(a.unsigned_abs()) {
                        if !primes.contains(&p) {
                            primes.push(p);
                        }
                    }
                }
                SquareClass::Real(_) => {}
                SquareClass::Finite(_) => panic!("finite field classes have no F_2 coordinates here"),
            }
        }
        primes.sort_unstable();
        assert!(primes.len() < 127, "too many primes for a 128-bit coordinate vector");
        ClassSpace { primes, real }
    }

    pub fn bits(&self, c: SquareClass) -> u128 {
        match c {
            SquareClass::Real(neg) => neg as u128,
            SquareClass::Rational(a) => {
                let mut v = (a < 0) as u128;
                for (p, _) in factorize(a.unsigned_abs()) {
                    let k = self.primes.iter().position(|q| *q == p).expect("prime in space");
                    v |= 1 << (k + 1);
                }
                v
            }
            SquareClass::Finite(_) => unreachable!(),
        }
    }

    pub fn class(&self, bits: u128) -> SquareClass {
        if self.real {
            return SquareClass::Real(bits & 1 == 1);
        }
        let mut a: i64 = if bits & 1 == 1 { -1 } else { 1 };
        for (k, p) in self.primes.iter().enumerate() {
            if bits >> (k + 1) & 1 == 1 {
                a *= *p as i64;
            }
        }
        SquareClass::Rational(a)
    }
}

/// A basis of a subspace of F_2^128 kept in echelon form, remembering for each
/// echelon vector which original generators it combines.
#[derive(Debug, Clone, Default)]
pub struct F2Basis {
    /// (pivot bit, vector, combination of original basis indices)
    rows: Vec<(u32, u128, u64)>,
    /// Original inserted vectors that were independent, in insertion order.
    pub original: Vec<u128>,
}

impl F2Basis {
    /// Inserts `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: u128) -> bool {
        let (r, combo) = self.reduce(v);
        if r == 0 {
            return false;
        }
        let idx = self.original.len();
        self.original.push(v);
        let pivot = 127 - r.leading_zeros();
        self.rows.push((pivot, r, combo ^ (1 << idx)));
        true
    }

    /// Reduces `v` against the basis, returning the remainder and the
    /// combination of original vectors that was subtracted.
    fn reduce(&self, mut v: u128) -> (u128, u64) {
        let mut combo = 0u64;
        for (pivot, row, c) in &self.rows {
            if v >> pivot & 1 == 1 {
                v ^= row;
                combo ^= c;
            }
        }
        (v, combo)
    }

    pub fn dim(&self) -> usize {
        self.original.len()
    }

    /// Coordinates of `v` with respect to `original`, if `v` lies in the span.
    pub fn coords(&self, v: u128) -> Option<u64> {
        let (r, combo) = self.reduce(v);
        (r == 0).then_some(combo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_round_trip() {
        let cs = [2i64, 3, -5, 30].map(SquareClass::Rational);
        let space = ClassSpace::covering(BaseField::Rationals, cs.iter());
        for c in cs {
            assert_eq!(space.class(space.bits(c)), c);
        }
        let mut b = F2Basis::default();
        assert!(b.insert(space.bits(cs[0])));
        assert!(b.insert(space.bits(cs[1])));
        assert!(!b.insert(space.bits(SquareClass::Rational(6))));
        assert_eq!(b.coords(space.bits(SquareClass::Rational(6))), Some(0b11));
        assert_eq!(b.coords(space.bits(SquareClass::Rational(5))), None);
    }
}
