//! Closed forms for quadrics and blow-ups, and the Euler characteristic identity.

use crate::gw::{BaseField, GwElement, SquareClass};
use crate::{Error, Result};

/// `<2> + <2d>`
pub fn two_plus(base: BaseField, d: SquareClass) -> Result<GwElement> {
    base.check_class(&d)?;
    let two = GwElement::int(base, 2)?;
    Ok(&two + &two.twist(d))
}

/// `<2> - <2d>`, the wall-crossing correction factor.
pub fn two_minus(base: BaseField, d: SquareClass) -> Result<GwElement> {
    base.check_class(&d)?;
    let two = GwElement::int(base, 2)?;
    Ok(&two - &two.twist(d))
}

fn half(x: i64, what: &str) -> Result<i64> {
    if x % 2 != 0 {
        return Err(Error::ParityViolation(format!("{what} = {x} is odd")));
    }
    Ok(x / 2)
}

/// `W<1> + ((GW - W) / 2) h` over Q, for split constraints.
pub fn quadric_split(gw: i64, w: i64) -> Result<GwElement> {
    if w < 0 || gw < w {
        return Err(Error::Invalid(format!("need GW >= W >= 0, got GW = {gw}, W = {w}")));
    }
    let q = BaseField::Rationals;
    let hyper = half(gw - w, "GW - W")?;
    Ok(&GwElement::one(q).scale(w) + &GwElement::hyperbolic(q).scale(hyper))
}

/// `W_-<1> + ((W_+ - W_-) / 2)(<2> + <2d>) + ((GW - W_+) / 2) h` over Q.
pub fn quadric_general(gw: i64, w_plus: i64, w_minus: i64, d: SquareClass) -> Result<GwElement> {
    let q = BaseField::Rationals;
    let pair = half(w_plus - w_minus, "W+ - W-")?;
    let hyper = half(gw - w_plus, "GW - W+")?;
    Ok(&(&GwElement::one(q).scale(w_minus) + &two_plus(q, d)?.scale(pair))
        + &GwElement::hyperbolic(q).scale(hyper))
}

/// The blow-up of P^2 in a degree-2 point: the same shape with `W_{0,1}` for
/// the conjugate-point count and `W_{2,0}` for the real-point count.
pub fn blowup_general(gw: i64, w_real_pts: i64, w_conj_pts: i64, d: SquareClass) -> Result<GwElement> {
    quadric_general(gw, w_real_pts, w_conj_pts, d)
}

/// `chi(Q(d)) = h + <2> + <-2d>`.
pub fn euler_char_quadric(base: BaseField, d: SquareClass) -> Result<GwElement> {
    base.check_class(&d)?;
    let two = GwElement::int(base, 2)?;
    Ok(&(&GwElement::hyperbolic(base) + &two) + &two.twist(d.mul(base.minus_one())))
}

/// `<-1>(<2> - <2d>)`.
pub fn euler_diff(base: BaseField, d: SquareClass) -> Result<GwElement> {
    Ok(two_minus(base, d)?.twist(base.minus_one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gw::{gw_eq, parse_gw};

    fn q(s: &str, d: i64) -> GwElement {
        let f = BaseField::Rationals;
        parse_gw(s, f, Some(f.class_of_int(d).unwrap())).unwrap()
    }

    #[test]
    fn split_examples() {
        assert_eq!(quadric_split(1, 1).unwrap(), q("<1>", 1));
        assert!(gw_eq(&quadric_split(12, 8).unwrap(), &q("8<1> + 2h", 1)).unwrap());
        assert!(quadric_split(0, 0).unwrap().is_zero_map());
        assert!(matches!(quadric_split(3, 0), Err(Error::ParityViolation(_))));
    }

    #[test]
    fn general_examples() {
        let f = BaseField::Rationals;
        for d in [-1i64, 2, 3] {
            let dc = f.class_of_int(d).unwrap();
            let n = quadric_general(3510, 1086, 576, dc).unwrap();
            assert!(gw_eq(&n, &q("576<1> + 255(<2> + <2d>) + 1212h", d)).unwrap());
            let n = blowup_general(6508640, 819200, 294336, dc).unwrap();
            assert!(gw_eq(&n, &q("294336<1> + 262432(<2> + <2d>) + 2844720h", d)).unwrap());
        }
        let one = f.one();
        assert!(gw_eq(&quadric_general(3510, 1086, 576, one).unwrap(), &quadric_split(3510, 1086).unwrap()).unwrap());
        assert!(quadric_general(0, 0, 0, one).unwrap().is_zero_map());
        assert!(matches!(quadric_general(4, 3, 0, one), Err(Error::ParityViolation(_))));
    }

    #[test]
    fn euler_identity() {
        let f = BaseField::Rationals;
        let one = f.one();
        assert!(gw_eq(&euler_char_quadric(f, one).unwrap(), &q("2h", 1)).unwrap());
        assert!(euler_diff(f, one).unwrap().is_zero_map());
        for d in [-1i64, 2, 3] {
            let dc = f.class_of_int(d).unwrap();
            let diff = &euler_char_quadric(f, one).unwrap() - &euler_char_quadric(f, dc).unwrap();
            assert!(gw_eq(&euler_diff(f, dc).unwrap(), &diff).unwrap());
            assert!(gw_eq(&euler_diff(f, dc).unwrap(), &q("<-2> - <-2d>", d)).unwrap());
        }
        let m1 = f.class_of_int(-1).unwrap();
        assert!(gw_eq(&euler_char_quadric(f, m1).unwrap(), &q("h + 2<2>", 1)).unwrap());
    }
}
