//! Synthetic intersection profiles and the degeneration sums built on them.
//!
//! A record stands for an opaque invariant `N^{sigma', ell}` of the resolved
//! surface at the lift `D0 - iE` of a class, where `ell` is the residue field
//! of the node and `sigma'` the intersection profile on E over `ell`. The
//! record meets the fiber over `D - l gamma` at the bidegree `(p + i + l, q + i - l)`
//! for the base pair `(p, q)` of the lift.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::closed::two_minus;
use crate::binom::Binomials;
use crate::etale::{transfer_finite, EtaleAlgebra, FactorSpec};
use crate::gw::{gw_eq, BaseField, GwElement, SquareClass};
use crate::{Error, Result};

/// One synthetic invariant `N^{sigma', ell}_{D0 - iE}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileRecord {
    /// The residue field `ell` as a field factor over the base.
    pub ell: FactorSpec,
    /// The intersection profile, an algebra over `ell`.
    pub sigma_prime: EtaleAlgebra,
    /// The multiple `i` of E in the lift.
    pub shift: i64,
    /// The invariant, an element of GW(ell).
    pub value: GwElement,
}

/// A validated list of records over one base field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileData {
    base: BaseField,
    base_pair: (i64, i64),
    records: Vec<ProfileRecord>,
}

/// The field `ell` as a base field of its own.
pub fn ell_field(base: BaseField, ell: &FactorSpec) -> Result<BaseField> {
    match (base, ell) {
        (BaseField::FiniteField { q }, FactorSpec::Finite { m }) => {
            let qm = q
                .checked_pow(*m)
                .ok_or_else(|| Error::UnsupportedExtension(format!("F_{{{q}^{m}}} is too large")))?;
            BaseField::finite(qm)
        }
        (_, f) if !base.is_finite() && f.is_trivial() => Ok(base),
        (_, f) => Err(Error::UnsupportedExtension(format!(
            "residue field {f:?} over {base}: only F_{{q^m}} over F_q and k itself over Q or R"
        ))),
    }
}

/// The class of `d` in `ell`. Over F_q the non-square class stays a
/// non-square exactly in the odd degree extensions.
pub fn restrict_class(base: BaseField, ell: &FactorSpec, d: SquareClass) -> Result<SquareClass> {
    base.check_class(&d)?;
    match (d, ell) {
        (SquareClass::Finite(u), FactorSpec::Finite { m }) => Ok(SquareClass::Finite(u && m % 2 == 1)),
        (c, f) if f.is_trivial() => Ok(c),
        _ => Err(Error::UnsupportedExtension(format!("restriction of {d} to {ell:?}"))),
    }
}

fn push_down(base: BaseField, ell: &FactorSpec, x: &GwElement) -> Result<GwElement> {
    match ell {
        FactorSpec::Finite { m } => transfer_finite(base, *m, x),
        _ => Ok(x.clone()),
    }
}

impl ProfileData {
    /// A profile with base pair `(p, q)`; every record must satisfy
    /// `deg sigma' = p + q + 2i` with `p + i, q + i >= 0`.
    pub fn new(base: BaseField, base_pair: (i64, i64), records: Vec<ProfileRecord>) -> Result<Self> {
        let (p, q) = base_pair;
        for (k, r) in records.iter().enumerate() {
            let field = ell_field(base, &r.ell)?;
            if r.sigma_prime.base() != field || r.value.field() != field {
                return Err(Error::ProfileInconsistent(format!(
                    "record {k}: sigma' and value must live over {field}"
                )));
            }
            if p + r.shift < 0 || q + r.shift < 0 {
                return Err(Error::ProfileInconsistent(format!(
                    "record {k}: bidegree ({}, {}) is negative",
                    p + r.shift,
                    q + r.shift
                )));
            }
            if r.sigma_prime.degree() as i64 != p + q + 2 * r.shift {
                return Err(Error::ProfileInconsistent(format!(
                    "record {k}: sigma' has degree {} but meets E in degree {}",
                    r.sigma_prime.degree(),
                    p + q + 2 * r.shift
                )));
            }
        }
        Ok(ProfileData { base, base_pair, records })
    }

    pub fn empty(base: BaseField) -> Self {
        ProfileData {
            base,
            base_pair: (0, 0),
            records: vec![],
        }
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn base_pair(&self) -> (i64, i64) {
        self.base_pair
    }

    pub fn records(&self) -> &[ProfileRecord] {
        &self.records
    }

    /// Largest `l` for which some record can contribute to `D - l gamma`.
    fn max_shift(&self) -> i64 {
        self.records
            .iter()
            .map(|r| self.base_pair.1 + r.shift)
            .max()
            .unwrap_or(0)
    }
}

/// The invariant of the class `D - l gamma`, assembled from the profile.
///
/// For square `d` the weight of a record is `binom(sigma', q + i - l)` over
/// `ell`. For non-square `d` only `l = 0` with `p = q` is meaningful, and the
/// weight is `tbinom(sigma', j, d) <d^j>` with `j = p + i`, computed with `d`
/// restricted to `ell`. Each weighted value is pushed down by `Tr_{ell/k}`.
pub fn degeneration_sum(b: &Binomials, prof: &ProfileData, d: SquareClass, l: i64) -> Result<GwElement> {
    let base = prof.base;
    base.check_class(&d)?;
    let (p, q) = prof.base_pair;
    let twisted = !d.is_square();
    if twisted && (l != 0 || p != q) {
        return Err(Error::ProfileInconsistent(format!(
            "a non-square twist needs l = 0 and a symmetric base pair, got l = {l}, ({p}, {q})"
        )));
    }
    let mut acc = GwElement::zero(base);
    for r in &prof.records {
        let weight = if twisted {
            let j = (p + r.shift) as usize;
            let dl = restrict_class(base, &r.ell, d)?;
            b.tbinom(&r.sigma_prime, j, dl)?.twist(dl.pow(j as u64))
        } else {
            b.binom_or_zero(&r.sigma_prime, q + r.shift - l)?
        };
        acc = &acc + &push_down(base, &r.ell, &(&weight * &r.value))?;
    }
    Ok(acc)
}

/// Both sides of the surgery identity
/// `sum(d, 0) = sum(1, 0) + (<2> - <2d>) sum_{l >= 1} (-1)^l sum(1, l)`.
pub fn surgery_sides(b: &Binomials, prof: &ProfileData, d: SquareClass) -> Result<(GwElement, GwElement)> {
    let base = prof.base;
    let one = base.one();
    let lhs = degeneration_sum(b, prof, d, 0)?;
    let mut alt = GwElement::zero(base);
    for l in 1..=prof.max_shift() {
        let s = degeneration_sum(b, prof, one, l)?;
        alt = if l % 2 == 0 { &alt + &s } else { &alt - &s };
    }
    let rhs = &degeneration_sum(b, prof, one, 0)? + &(&two_minus(base, d)? * &alt);
    Ok((lhs, rhs))
}

pub fn check_surgery_consistency(b: &Binomials, prof: &ProfileData, d: SquareClass) -> Result<bool> {
    let (lhs, rhs) = surgery_sides(b, prof, d)?;
    gw_eq(&lhs, &rhs)
}

/// Shape limits for [`random_profile`].
#[derive(Debug, Clone, Copy)]
pub struct ProfileShape {
    pub max_records: usize,
    /// Largest `j = p + i`; profiles have degree `2j`.
    pub max_half_degree: usize,
    pub max_coeff: i64,
}

impl Default for ProfileShape {
    fn default() -> Self {
        ProfileShape {
            max_records: 4,
            max_half_degree: 4,
            max_coeff: 3,
        }
    }
}

fn sample_classes(field: BaseField) -> Result<Vec<SquareClass>> {
    match field {
        BaseField::FiniteField { .. } => Ok(vec![SquareClass::Finite(false), SquareClass::Finite(true)]),
        BaseField::RealClosed => Ok(vec![SquareClass::Real(false), SquareClass::Real(true)]),
        BaseField::Rationals => [1i64, -1, 2, -2, 3, 5, 6, 10, 15, 30]
            .iter()
            .map(|a| field.class_of_int(*a))
            .collect(),
    }
}

fn random_element(rng: &mut ChaCha8Rng, field: BaseField, max_coeff: i64) -> Result<GwElement> {
    let classes = sample_classes(field)?;
    let mut x = GwElement::zero(field);
    for _ in 0..rng.gen_range(0..=3) {
        let c = *classes.choose(rng).unwrap();
        x = &x + &GwElement::class(field, c).scale(rng.gen_range(-max_coeff..=max_coeff));
    }
    Ok(x)
}

/// A random algebra of degree `n` over `field`: a partition into F_{q^m}
/// factors over a finite field, or a product of multiquadratic fields
/// generated by `quad_classes` otherwise.
fn random_algebra(rng: &mut ChaCha8Rng, field: BaseField, n: usize, quad_classes: &[SquareClass]) -> Result<EtaleAlgebra> {
    let mut factors = Vec::new();
    let mut left = n;
    while left > 0 {
        if field.is_finite() {
            let m = rng.gen_range(1..=left);
            factors.push(FactorSpec::Finite { m: m as u32 });
            left -= m;
        } else {
            let mut t = 0;
            while t < 2 && (2usize << t) <= left && rng.gen_bool(0.5) {
                t += 1;
            }
            let classes: Vec<SquareClass> = (0..t).map(|_| *quad_classes.choose(rng).unwrap()).collect();
            // Dependent classes split the factor; the algebra still has degree 2^t.
            let alg = EtaleAlgebra::new(field, vec![FactorSpec::Multiquad { classes }])?;
            left -= alg.degree();
            factors.extend(alg.factors().iter().cloned());
        }
    }
    EtaleAlgebra::new(field, factors)
}

/// A random profile with symmetric base pair, deterministic in `seed`.
///
/// Over F_q the residue fields are F_{q^m} with `m <= 3`; over Q the profiles
/// are multiquadratic in the classes `-1, 2, 3, 5`; over R in the class `-1`.
pub fn random_profile(base: BaseField, seed: u64, shape: ProfileShape) -> Result<ProfileData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let quad: Vec<SquareClass> = match base {
        BaseField::FiniteField { .. } => vec![],
        BaseField::RealClosed => vec![SquareClass::Real(true)],
        BaseField::Rationals => [-1i64, 2, 3, 5]
            .iter()
            .map(|a| base.class_of_int(*a))
            .collect::<Result<_>>()?,
    };
    let hd = shape.max_half_degree as i64;
    let p = rng.gen_range(0..=hd.min(2));
    let mut records = Vec::new();
    for _ in 0..rng.gen_range(0..=shape.max_records) {
        let ell = if base.is_finite() {
            FactorSpec::Finite { m: rng.gen_range(1..=3) }
        } else {
            FactorSpec::trivial()
        };
        let field = ell_field(base, &ell)?;
        let j = rng.gen_range(0..=hd);
        let sigma_prime = random_algebra(&mut rng, field, 2 * j as usize, &quad)?;
        let value = random_element(&mut rng, field, shape.max_coeff)?;
        records.push(ProfileRecord {
            ell,
            sigma_prime,
            shift: j - p,
            value,
        });
    }
    ProfileData::new(base, (p, p), records)
}
