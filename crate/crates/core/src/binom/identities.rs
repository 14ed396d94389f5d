//! Closed-form identities between binomial coefficients, each checked against
//! the orbit enumeration.

use super::Binomials;
use crate::etale::EtaleAlgebra;
use crate::gw::{gw_eq, BaseField, GwElement, SquareClass};
use crate::{Error, Result};

fn two_plus(base: BaseField, d: SquareClass) -> Result<GwElement> {
    let two = GwElement::int(base, 2)?;
    Ok(&two + &two.twist(d))
}

fn two_minus(base: BaseField, d: SquareClass) -> Result<GwElement> {
    let two = GwElement::int(base, 2)?;
    Ok(&two - &two.twist(d))
}

fn half_degree(a: &EtaleAlgebra) -> Result<usize> {
    if !a.degree().is_multiple_of(2) {
        return Err(Error::DegreeMismatch {
            expected: a.degree() + 1,
            found: a.degree(),
        });
    }
    Ok(a.degree() / 2)
}

/// `sum_{l<j} (-1)^l binom(sigma, l)`
fn alternating_sum(b: &Binomials, sigma: &EtaleAlgebra, j: usize) -> Result<GwElement> {
    let mut acc = GwElement::zero(sigma.base());
    for l in 0..j {
        let t = b.binom(sigma, l)?;
        acc = if l % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    Ok(acc)
}

/// `binom(A, j) = binom(A, n - j)`
pub fn check_symmetry(b: &Binomials, a: &EtaleAlgebra, j: usize) -> Result<bool> {
    let n = a.degree();
    if j > n {
        return Err(Error::IndexOutOfRange { j, degree: n });
    }
    gw_eq(&b.binom(a, j)?, &b.binom(a, n - j)?)
}

/// `binom(A1 x A2, j) = sum_i binom(A1, i) binom(A2, j - i)`
pub fn check_product(b: &Binomials, a1: &EtaleAlgebra, a2: &EtaleAlgebra, j: usize) -> Result<bool> {
    let a = a1.product(a2)?;
    let lhs = b.binom(&a, j)?;
    let mut rhs = GwElement::zero(a.base());
    for i in 0..=j as i64 {
        let t = &b.binom_or_zero(a1, i)? * &b.binom_or_zero(a2, j as i64 - i)?;
        rhs = &rhs + &t;
    }
    gw_eq(&lhs, &rhs)
}

/// Twisted product formula with `[E:k] = 2m`:
/// `tbinom(E x F, j) = tbinom(E, m) tbinom(F, j - m) + (sum_{i<m} binom(E, i) binom(F, j - i)) (<2> + <2d>)`
pub fn check_twisted_product(
    b: &Binomials,
    e: &EtaleAlgebra,
    f: &EtaleAlgebra,
    j: usize,
    d: SquareClass,
) -> Result<bool> {
    let m = half_degree(e)?;
    let sigma = e.product(f)?;
    if sigma.degree() != 2 * j {
        return Err(Error::DegreeMismatch {
            expected: 2 * j,
            found: sigma.degree(),
        });
    }
    let lhs = b.tbinom(&sigma, j, d)?;
    let mut sum = GwElement::zero(sigma.base());
    for i in 0..m as i64 {
        sum = &sum + &(&b.binom_or_zero(e, i)? * &b.binom_or_zero(f, j as i64 - i)?);
    }
    let rhs = &(&b.tbinom(e, m, d)? * &b.tbinom(f, j - m, d)?) + &(&sum * &two_plus(sigma.base(), d)?);
    gw_eq(&lhs, &rhs)
}

/// `binom(sigma, j) <d^j> + (<2> - <2d>) sum_{l<j} (-1)^l binom(sigma, l)`
pub fn main_identity_rhs(b: &Binomials, sigma: &EtaleAlgebra, j: usize, d: SquareClass) -> Result<GwElement> {
    if sigma.degree() != 2 * j {
        return Err(Error::DegreeMismatch {
            expected: 2 * j,
            found: sigma.degree(),
        });
    }
    let base = sigma.base();
    let first = b.binom(sigma, j)?.twist(d.pow(j as u64));
    Ok(&first + &(&two_minus(base, d)? * &alternating_sum(b, sigma, j)?))
}

pub fn check_main_identity(b: &Binomials, sigma: &EtaleAlgebra, j: usize, d: SquareClass) -> Result<bool> {
    let rhs = main_identity_rhs(b, sigma, j, d)?;
    gw_eq(&b.tbinom(sigma, j, d)?, &rhs)
}

/// `binom(sigma, j) + (-1)^j (<2> - <2d>) sum_{l<j} (-1)^l binom(sigma, l)`,
/// which equals `tbinom(sigma, j, d) <d^j>`.
pub fn useful_identity_rhs(b: &Binomials, sigma: &EtaleAlgebra, j: usize, d: SquareClass) -> Result<GwElement> {
    if sigma.degree() != 2 * j {
        return Err(Error::DegreeMismatch {
            expected: 2 * j,
            found: sigma.degree(),
        });
    }
    let corr = &two_minus(sigma.base(), d)? * &alternating_sum(b, sigma, j)?;
    let corr = if j.is_multiple_of(2) { corr } else { -corr };
    Ok(&b.binom(sigma, j)? + &corr)
}

pub fn check_useful_identity(b: &Binomials, sigma: &EtaleAlgebra, j: usize, d: SquareClass) -> Result<bool> {
    let rhs = useful_identity_rhs(b, sigma, j, d)?;
    let lhs = b.tbinom(sigma, j, d)?.twist(d.pow(j as u64));
    gw_eq(&lhs, &rhs)
}

/// The inductive expression for `tbinom(E x F, j)` with `[F:k] = 2` and
/// `[E:k] = 2j - 2`, built from the closed forms for `E` and `F`:
/// `rhs(F, 1) rhs(E, j - 1) + binom(E, j) (<2> + <2d>)`.
pub fn lemma_step_value(b: &Binomials, e: &EtaleAlgebra, f: &EtaleAlgebra, j: usize, d: SquareClass) -> Result<GwElement> {
    if f.degree() != 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: f.degree(),
        });
    }
    if j == 0 || e.degree() != 2 * j - 2 {
        return Err(Error::DegreeMismatch {
            expected: (2 * j).saturating_sub(2),
            found: e.degree(),
        });
    }
    let rf = main_identity_rhs(b, f, 1, d)?;
    let re = main_identity_rhs(b, e, j - 1, d)?;
    let tail = &b.binom_or_zero(e, j as i64)? * &two_plus(e.base(), d)?;
    Ok(&(&rf * &re) + &tail)
}

/// The induction step: given the closed form for `E` and `F`, the inductive
/// expression agrees with both the closed form and the orbit count for `E x F`.
pub fn check_lemma_step(b: &Binomials, e: &EtaleAlgebra, f: &EtaleAlgebra, j: usize, d: SquareClass) -> Result<bool> {
    let step = lemma_step_value(b, e, f, j, d)?;
    if !check_main_identity(b, e, j - 1, d)? || !check_main_identity(b, f, 1, d)? {
        return Ok(false);
    }
    let sigma = e.product(f)?;
    Ok(gw_eq(&step, &main_identity_rhs(b, &sigma, j, d)?)?
        && gw_eq(&step, &b.tbinom(&sigma, j, d)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gw::parse_gw;

    fn fq(q: u64) -> BaseField {
        BaseField::finite(q).unwrap()
    }

    #[test]
    fn finite_examples() {
        let b = Binomials::new();
        let f = fq(3);
        let u = SquareClass::Finite(true);
        let a3 = EtaleAlgebra::finite(f, &[3]).unwrap();
        assert!(check_symmetry(&b, &a3, 1).unwrap());
        let a2 = EtaleAlgebra::finite(f, &[2]).unwrap();
        assert!(check_product(&b, &a2, &a2, 2).unwrap());
        assert_eq!(b.binom(&a2.product(&a2).unwrap(), 2).unwrap().rank(), 6);
        assert!(check_twisted_product(&b, &a2, &a2, 2, u).unwrap());
        let empty = EtaleAlgebra::empty(f);
        assert!(check_twisted_product(&b, &a2, &empty, 1, u).unwrap());
        let rhs = main_identity_rhs(&b, &a2, 1, u).unwrap();
        assert!(gw_eq(&rhs, &parse_gw("2", f, None).unwrap()).unwrap());
        let a4 = EtaleAlgebra::finite(f, &[4]).unwrap();
        let rhs = main_identity_rhs(&b, &a4, 2, u).unwrap();
        assert!(gw_eq(&rhs, &parse_gw("5+<u>", f, None).unwrap()).unwrap());
        assert!(check_useful_identity(&b, &a2, 1, u).unwrap());
        assert!(check_lemma_step(&b, &a2, &a2, 2, u).unwrap());
    }

    #[test]
    fn rational_examples() {
        let b = Binomials::new();
        let q = BaseField::Rationals;
        let c = |n: i64| q.class_of_int(n).unwrap();
        let a = EtaleAlgebra::parse(q, "quad:2,trivial").unwrap();
        assert!(check_symmetry(&b, &a, 1).unwrap());
        let q2 = EtaleAlgebra::parse(q, "quad:2").unwrap();
        let q3 = EtaleAlgebra::parse(q, "quad:3").unwrap();
        assert!(check_product(&b, &q2, &q3, 2).unwrap());
        let split2 = EtaleAlgebra::split(q, 2);
        assert!(check_twisted_product(&b, &q2, &split2, 2, c(-1)).unwrap());
        let s = q2.product(&q3).unwrap();
        assert!(check_main_identity(&b, &s, 2, c(-1)).unwrap());
        let s = EtaleAlgebra::parse(q, "quad:-1,trivial,trivial").unwrap();
        assert!(check_useful_identity(&b, &s, 2, c(2)).unwrap());
        // Square twist degenerates to the untwisted binomial.
        assert!(check_useful_identity(&b, &s, 2, c(1)).unwrap());
        assert!(matches!(
            check_main_identity(&b, &q2, 2, c(-1)),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn squared_difference() {
        let q = BaseField::Rationals;
        for d in [-1i64, 2, 3, 5, 30] {
            let dc = q.class_of_int(d).unwrap();
            let x = two_minus(q, dc).unwrap();
            let y = &(&GwElement::one(q) - &GwElement::class(q, dc)) * 2;
            assert!(gw_eq(&(&x * &x), &y).unwrap());
            assert!(gw_eq(&(&x * &x), &(&x * 2)).unwrap());
        }
    }
}
