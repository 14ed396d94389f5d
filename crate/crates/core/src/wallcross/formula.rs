//! The wall-crossing formula and the Dehn twist invariance check.

use serde::Serialize;

use super::closed::two_minus;
use super::table::InvariantTable;
use crate::etale::{EtaleAlgebra, FactorSpec};
use crate::gw::{gw_eq, BaseField, GwElement, SquareClass};
use crate::picard::DivisorClass;
use crate::{Error, Result};

/// One summand `(-1)^j N_{D - j gamma}` of a wall-crossing sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallTerm {
    pub j: i64,
    pub class: DivisorClass,
    pub value: GwElement,
}

/// A computed invariant with the table lookups that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub value: GwElement,
    pub terms: Vec<WallTerm>,
    pub warnings: Vec<String>,
}

/// `N_{D} + (<2> - <2d>) sum_{j >= 1} (-1)^j N_{D - j gamma}` from a table of
/// invariants of the split surface, with the sum truncated by the genus bound.
pub fn wall_cross(
    table: &InvariantTable,
    class: &DivisorClass,
    sigma: &EtaleAlgebra,
    d: SquareClass,
) -> Result<Evaluation> {
    let model = table.model();
    let gamma = model.gamma()?;
    if model.dot(class, gamma)? != 0 {
        return Err(Error::NotPerpendicular(class.to_string()));
    }
    table.check_sigma(class, sigma)?;
    let base = table.field();
    let mut warnings = Vec::new();
    let top = table.lookup(class, sigma, &mut warnings)?;
    let mut terms = Vec::new();
    let mut alt = GwElement::zero(base);
    if let Some((_, hi)) = model.j_range(class)? {
        for j in 1..=hi {
            let c = class.add_scaled(gamma, -j);
            let v = table.lookup(&c, sigma, &mut warnings)?;
            alt = if j % 2 == 0 { &alt + &v } else { &alt - &v };
            terms.push(WallTerm { j, class: c, value: v });
        }
    }
    let value = &top + &(&two_minus(base, d)? * &alt);
    Ok(Evaluation { value, terms, warnings })
}

/// Compares the entries at `D` and at its Dehn twist `D + (D.gamma) gamma`.
/// Both entries must be present whatever the table's missing policy.
pub fn dehn_check(table: &InvariantTable, class: &DivisorClass, sigma: &EtaleAlgebra) -> Result<bool> {
    let twisted = table.model().dehn_twist(class)?;
    let a = required(table, class, sigma)?;
    let b = required(table, &twisted, sigma)?;
    gw_eq(a, b)
}

/// The invariant at `D` read off the entry at its Dehn twist.
pub fn dehn_transport(table: &InvariantTable, class: &DivisorClass, sigma: &EtaleAlgebra) -> Result<GwElement> {
    let twisted = table.model().dehn_twist(class)?;
    Ok(required(table, &twisted, sigma)?.clone())
}

fn required<'a>(table: &'a InvariantTable, class: &DivisorClass, sigma: &EtaleAlgebra) -> Result<&'a GwElement> {
    table
        .get(class, sigma)?
        .map(|e| &e.value)
        .ok_or_else(|| Error::MissingEntry {
            class: class.to_string(),
            sigma: sigma.to_string(),
        })
}

/// The quadratic algebra `k(sqrt d)`, which is `k x k` when `d` is a square.
pub fn quadratic_algebra(base: BaseField, d: SquareClass) -> Result<EtaleAlgebra> {
    base.check_class(&d)?;
    if d.is_square() {
        return Ok(EtaleAlgebra::split(base, 2));
    }
    let f = match base {
        BaseField::FiniteField { .. } => FactorSpec::Finite { m: 2 },
        _ => FactorSpec::Multiquad { classes: vec![d] },
    };
    EtaleAlgebra::new(base, vec![f])
}

/// `N_{P^2, a e0, sigma_d x sigma} = N_{P^2, a e0, sigma_1 x sigma} - (<2> - <2d>) N_{Bl, a e0 - 2 e1, sigma}`
/// with `p2` a table on P^2 and `bl1` a table on the blow-up of P^2 at one point.
/// The blow-up term vanishes when the class has negative arithmetic genus.
pub fn welschinger_reduction(
    p2: &InvariantTable,
    bl1: &InvariantTable,
    a: i64,
    sigma: &EtaleAlgebra,
    d: SquareClass,
) -> Result<Evaluation> {
    if p2.model().lattice().rank() != 1 || bl1.model().lattice().rank() != 2 {
        return Err(Error::Invalid("expected tables on P^2 and on its one-point blow-up".into()));
    }
    let base = p2.field();
    if bl1.field() != base {
        return Err(Error::FieldMismatch {
            left: base.to_string(),
            right: bl1.field().to_string(),
        });
    }
    let big = DivisorClass::new(&[a]);
    let sigma1 = EtaleAlgebra::split(base, 2).product(sigma)?;
    let mut warnings = Vec::new();
    let top = p2.lookup(&big, &sigma1, &mut warnings)?;
    let small = DivisorClass::new(&[a, -2]);
    bl1.check_sigma(&small, sigma)?;
    let low = if bl1.model().adjunction_genus(&small)? < 0.into() {
        GwElement::zero(base)
    } else {
        bl1.lookup(&small, sigma, &mut warnings)?
    };
    let value = &top - &(&two_minus(base, d)? * &low);
    Ok(Evaluation {
        value,
        terms: vec![WallTerm { j: 1, class: small, value: low }],
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gw::parse_gw;
    use crate::picard::SurfaceModel;
    use crate::wallcross::MissingPolicy;

    fn q(s: &str, d: i64) -> GwElement {
        let f = BaseField::Rationals;
        parse_gw(s, f, Some(f.class_of_int(d).unwrap())).unwrap()
    }

    fn quadric_table(model: SurfaceModel, entries: &[([i64; 2], &str)]) -> InvariantTable {
        let mut t = InvariantTable::new(model, BaseField::Rationals);
        for (c, v) in entries {
            let c = DivisorClass::new(c);
            let s = t.split_sigma(&c).unwrap();
            t.insert(c, s, q(v, 1), "test").unwrap();
        }
        t
    }

    #[test]
    fn quadric_row_two_both_gamma_signs() {
        let plus = quadric_table(
            SurfaceModel::quadric(),
            &[([2, 2], "8<1> + 2h"), ([1, 3], "<1>"), ([0, 4], "0")],
        );
        let minus_model = SurfaceModel::quadric().with_gamma(DivisorClass::new(&[-1, 1])).unwrap();
        let minus = quadric_table(minus_model, &[([2, 2], "8<1> + 2h"), ([3, 1], "<1>"), ([4, 0], "0")]);
        let c = DivisorClass::new(&[2, 2]);
        for t in [&plus, &minus] {
            let s = t.split_sigma(&c).unwrap();
            for d in [-1i64, 2, 3] {
                let dc = BaseField::Rationals.class_of_int(d).unwrap();
                let e = wall_cross(t, &c, &s, dc).unwrap();
                assert!(e.warnings.is_empty());
                assert!(gw_eq(&e.value, &q("6<1> + <2> + <2d> + 2h", d)).unwrap());
                assert!(gw_eq(&e.value, &q("7<2> + <2d> + 2h", d)).unwrap());
                assert_eq!(e.value.rank(), 12);
            }
            let e = wall_cross(t, &c, &s, BaseField::Rationals.one()).unwrap();
            assert!(gw_eq(&e.value, &q("8<1> + 2h", 1)).unwrap());
        }
    }

    #[test]
    fn quadric_row_one_and_errors() {
        let mut t = quadric_table(SurfaceModel::quadric(), &[([1, 1], "<1>")]);
        let c = DivisorClass::new(&[1, 1]);
        let s = t.split_sigma(&c).unwrap();
        let m1 = BaseField::Rationals.class_of_int(-1).unwrap();
        let e = wall_cross(&t, &c, &s, m1).unwrap();
        assert!(gw_eq(&e.value, &q("<1>", 1)).unwrap());
        // (0,2) has negative genus, so no correction entry is consulted.
        assert!(e.terms.is_empty() && e.warnings.is_empty());
        let c2 = DivisorClass::new(&[2, 2]);
        let s2 = t.split_sigma(&c2).unwrap();
        assert_eq!(wall_cross(&t, &c2, &s2, m1).unwrap().warnings.len(), 2);
        t.set_policy(MissingPolicy::Error);
        assert!(matches!(wall_cross(&t, &c2, &s2, m1), Err(Error::MissingEntry { .. })));
        let off = DivisorClass::new(&[2, 1]);
        let s = t.split_sigma(&off).unwrap();
        assert!(matches!(wall_cross(&t, &off, &s, m1), Err(Error::NotPerpendicular(_))));
    }

    #[test]
    fn dehn_examples() {
        let t = quadric_table(SurfaceModel::quadric(), &[([1, 3], "<1>"), ([3, 1], "<1>"), ([2, 2], "8<1> + 2h")]);
        for c in [[1, 3], [2, 2]] {
            let c = DivisorClass::new(&c);
            let s = t.split_sigma(&c).unwrap();
            assert!(dehn_check(&t, &c, &s).unwrap());
        }
        let c = DivisorClass::new(&[0, 4]);
        let s = t.split_sigma(&c).unwrap();
        assert!(matches!(dehn_check(&t, &c, &s), Err(Error::MissingEntry { .. })));
    }

    #[test]
    fn cubic_chain() {
        let mut t = InvariantTable::new(SurfaceModel::cubic(), BaseField::Rationals);
        let e6 = DivisorClass::new(&[0, 0, 0, 0, 0, 0, 1]);
        let empty = EtaleAlgebra::empty(BaseField::Rationals);
        t.insert(e6, empty.clone(), GwElement::one(BaseField::Rationals), "test").unwrap();
        let conic = DivisorClass::new(&[2, -1, -1, -1, -1, -1, 0]);
        let v = dehn_transport(&t, &conic, &empty).unwrap();
        assert_eq!(v, GwElement::one(BaseField::Rationals));
    }

    #[test]
    fn welschinger_lines() {
        let f = BaseField::Rationals;
        let mut p2 = InvariantTable::new(SurfaceModel::blowup(0), f);
        let line = DivisorClass::new(&[1]);
        let s = p2.split_sigma(&line).unwrap();
        p2.insert(line, s, GwElement::one(f), "test").unwrap();
        let bl1 = InvariantTable::new(SurfaceModel::blowup(1), f).with_policy(MissingPolicy::Error);
        let empty = EtaleAlgebra::empty(f);
        for d in [-1i64, 1, 2] {
            let e = welschinger_reduction(&p2, &bl1, 1, &empty, f.class_of_int(d).unwrap()).unwrap();
            assert_eq!(e.value, GwElement::one(f));
        }
        let k2 = quadratic_algebra(f, f.class_of_int(-1).unwrap()).unwrap();
        assert_eq!(k2.degree(), 2);
        assert_eq!(quadratic_algebra(f, f.one()).unwrap(), EtaleAlgebra::split(f, 2));
    }
}
