//! Integer lattice models of Picard groups.
//!
//! A [`SurfaceModel`] is a unimodular lattice with a canonical class and,
//! for surfaces that arise from a nodal degeneration, a vanishing cycle
//! `gamma` with `gamma^2 = -2` and `K . gamma = 0`.

use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Coordinates of a divisor class in the lattice basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass(pub Vec<i64>);

impl DivisorClass {
    pub fn new(coords: &[i64]) -> Self {
        DivisorClass(coords.to_vec())
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: i64) -> DivisorClass {
        DivisorClass(self.0.iter().map(|a| a * k).collect())
    }

    /// `self + k * other`
    pub fn add_scaled(&self, other: &DivisorClass, k: i64) -> DivisorClass {
        self.add(&other.scale(k))
    }

    /// Parses `"2,2"` or `"[2, 2]"`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let coords = t
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad divisor class {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DivisorClass(coords))
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A lattice with a symmetric Gram matrix and a canonical class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeModel {
    gram: Vec<Vec<i64>>,
    labels: Vec<String>,
    canonical: DivisorClass,
}

impl LatticeModel {
    pub fn new(gram: Vec<Vec<i64>>, labels: Vec<String>, canonical: DivisorClass) -> Result<Self> {
        let n = gram.len();
        for row in &gram {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Invalid("Gram matrix is not symmetric".into()));
                }
            }
        }
        if labels.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: labels.len() });
        }
        if canonical.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: canonical.dim() });
        }
        Ok(LatticeModel { gram, labels, canonical })
    }

    /// P^1 x P^1 with the two rulings.
    pub fn quadric() -> Self {
        LatticeModel {
            gram: vec![vec![0, 1], vec![1, 0]],
            labels: vec!["e1".into(), "e2".into()],
            canonical: DivisorClass::new(&[-2, -2]),
        }
    }

    /// P^2 blown up in `m` points, basis `e0, e1, ..., em`.
    pub fn blowup(m: usize) -> Self {
        let n = m + 1;
        let mut gram = vec![vec![0; n]; n];
        gram[0][0] = 1;
        for (i, row) in gram.iter_mut().enumerate().skip(1) {
            row[i] = -1;
        }
        let mut k = vec![1; n];
        k[0] = -3;
        LatticeModel {
            gram,
            labels: (0..n).map(|i| format!("e{i}")).collect(),
            canonical: DivisorClass(k),
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    fn check(&self, d: &DivisorClass) -> Result<()> {
        if d.dim() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: d.dim() });
        }
        Ok(())
    }

    /// The intersection product `d1^T G d2`.
    pub fn dot(&self, d1: &DivisorClass, d2: &DivisorClass) -> Result<i64> {
        self.check(d1)?;
        self.check(d2)?;
        let mut s = 0;
        for (i, row) in self.gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                s += d1.0[i] * g * d2.0[j];
            }
        }
        Ok(s)
    }

    pub fn determinant(&self) -> i64 {
        let n = self.rank();
        let mut m: Vec<Vec<Rational64>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|x| Rational64::from(*x)).collect())
            .collect();
        let mut det = Rational64::from(1);
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| m[r][c] != Rational64::from(0)) else {
                return 0;
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= m[c][c];
            for r in c + 1..n {
                let f = m[r][c] / m[c][c];
                for k in c..n {
                    let v = m[c][k];
                    m[r][k] -= f * v;
                }
            }
        }
        det.to_integer()
    }
}

/// Which lattice a surface model is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Quadric,
    /// P^2 blown up in `m` points.
    Blowup(usize),
}

/// A lattice model together with an optional vanishing cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    preset: Preset,
    lattice: LatticeModel,
    gamma: Option<DivisorClass>,
    base_lift: Option<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct RawModel {
    model: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gamma: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base_lift: Option<Vec<i64>>,
}

impl SurfaceModel {
    /// The quadric with `gamma = e1 - e2`.
    pub fn quadric() -> Self {
        SurfaceModel {
            preset: Preset::Quadric,
            lattice: LatticeModel::quadric(),
            gamma: Some(DivisorClass::new(&[1, -1])),
            base_lift: None,
        }
    }

    /// P^2 blown up in `m` points. The vanishing cycle is `2e0 - e1 - ... - e6`
    /// for `m = 6` and `e1 - e2` for other `m >= 2`; there is none for `m < 2`.
    pub fn blowup(m: usize) -> Self {
        let n = m + 1;
        let gamma = match m {
            0 | 1 => None,
            6 => {
                let mut g = vec![-1; n];
                g[0] = 2;
                Some(DivisorClass(g))
            }
            _ => {
                let mut g = vec![0; n];
                g[1] = 1;
                g[2] = -1;
                Some(DivisorClass(g))
            }
        };
        SurfaceModel {
            preset: Preset::Blowup(m),
            lattice: LatticeModel::blowup(m),
            gamma,
            base_lift: None,
        }
    }

    /// The cubic surface preset, P^2 blown up in six points.
    pub fn cubic() -> Self {
        Self::blowup(6)
    }

    /// Replaces the vanishing cycle after checking `gamma^2 = -2` and `K . gamma = 0`.
    pub fn with_gamma(mut self, gamma: DivisorClass) -> Result<Self> {
        let g2 = self.lattice.dot(&gamma, &gamma)?;
        if g2 != -2 {
            return Err(Error::Invalid(format!("vanishing cycle {gamma} has square {g2}, not -2")));
        }
        let kg = self.lattice.dot(self.lattice.canonical(), &gamma)?;
        if kg != 0 {
            return Err(Error::Invalid(format!("vanishing cycle {gamma} has K-degree {kg}")));
        }
        self.gamma = Some(gamma);
        Ok(self)
    }

    pub fn with_base_lift(mut self, lift: Vec<i64>) -> Self {
        self.base_lift = Some(lift);
        self
    }

    pub fn preset(&self) -> Preset {
        self.preset
    }

    pub fn lattice(&self) -> &LatticeModel {
        &self.lattice
    }

    pub fn base_lift(&self) -> Option<&[i64]> {
        self.base_lift.as_deref()
    }

    pub fn gamma(&self) -> Result<&DivisorClass> {
        self.gamma
            .as_ref()
            .ok_or_else(|| Error::Invalid(format!("{} has no vanishing cycle", self.name())))
    }

    pub fn name(&self) -> String {
        match self.preset {
            Preset::Quadric => "quadric".into(),
            Preset::Blowup(m) => format!("blowup_p2({m})"),
        }
    }

    pub fn dot(&self, d1: &DivisorClass, d2: &DivisorClass) -> Result<i64> {
        self.lattice.dot(d1, d2)
    }

    /// `n` with `n + 1 = -K . D`, the number of point conditions.
    pub fn n_points(&self, d: &DivisorClass) -> Result<i64> {
        Ok(-self.dot(self.lattice.canonical(), d)? - 1)
    }

    /// Arithmetic genus `D . (K + D) / 2 + 1`.
    pub fn adjunction_genus(&self, d: &DivisorClass) -> Result<Rational64> {
        let kd = d.add(self.lattice.canonical());
        Ok(Rational64::new(self.dot(d, &kd)?, 2) + 1)
    }

    /// The integers `j` with `p_a(D - j gamma) >= 0`, as a closed interval.
    pub fn j_range(&self, d: &DivisorClass) -> Result<Option<(i64, i64)>> {
        let gamma = self.gamma()?.clone();
        let ok = |j: i64| -> Result<bool> {
            Ok(self.adjunction_genus(&d.add_scaled(&gamma, -j))? >= Rational64::from(0))
        };
        // p_a(D - j gamma) is a concave quadratic in j with vertex at -(D.gamma)/2.
        let c = self.dot(d, &gamma)?;
        let v = (-c).div_euclid(2);
        let start = if ok(v)? {
            v
        } else if ok(v + 1)? {
            v + 1
        } else {
            return Ok(None);
        };
        let mut lo = start;
        while ok(lo - 1)? {
            lo -= 1;
        }
        let mut hi = start;
        while ok(hi + 1)? {
            hi += 1;
        }
        Ok(Some((lo, hi)))
    }

    /// The reflection `D -> D + (D . gamma) gamma`.
    pub fn dehn_twist(&self, d: &DivisorClass) -> Result<DivisorClass> {
        let gamma = self.gamma()?;
        Ok(d.add_scaled(gamma, self.dot(d, gamma)?))
    }

    fn require_perp(&self, d: &DivisorClass) -> Result<()> {
        if self.dot(d, self.gamma()?)? != 0 {
            return Err(Error::NotPerpendicular(d.to_string()));
        }
        Ok(())
    }

    /// The pairs over `D - l gamma` for `D` in `gamma^perp`, lifted from the
    /// base pair `(D0, (0, 0))`: `(D0 - iE, (i + l, i - l))` for every `i`
    /// allowed by the genus bound `K.D + D^2 - 2 i^2 >= -2` on the resolution.
    pub fn phi_fiber(&self, d: &DivisorClass, l: i64) -> Result<Vec<FiberPair>> {
        self.require_perp(d)?;
        let bound = self.dot(self.lattice.canonical(), d)? + self.dot(d, d)? + 2;
        if bound < 0 {
            return Ok(vec![]);
        }
        let mut imax = 0;
        while 2 * (imax + 1) * (imax + 1) <= bound {
            imax += 1;
        }
        Ok((-imax..=imax)
            .map(|i| FiberPair { shift: i, bidegree: (i + l, i - l) })
            .collect())
    }

    /// The image of `(D0 - iE, (a, b))` where `D0` lifts `D` with `(0, 0)`.
    pub fn phi1(&self, d: &DivisorClass, pair: &FiberPair) -> Result<DivisorClass> {
        self.require_perp(d)?;
        let (a, b) = pair.bidegree;
        if a + b != 2 * pair.shift {
            return Err(Error::ProfileInconsistent(format!(
                "bidegree ({a},{b}) does not meet E in degree {}",
                2 * pair.shift
            )));
        }
        Ok(d.add_scaled(self.gamma()?, -(a - pair.shift)))
    }

    /// A basis of `gamma^perp`.
    pub fn perp_basis(&self) -> Result<Vec<DivisorClass>> {
        let gamma = self.gamma()?;
        match self.preset {
            Preset::Quadric if gamma.0 == [1, -1] || gamma.0 == [-1, 1] => {
                return Ok(vec![DivisorClass::new(&[1, 1])]);
            }
            Preset::Blowup(2) if gamma.0 == [0, 1, -1] || gamma.0 == [0, -1, 1] => {
                return Ok(vec![DivisorClass::new(&[1, 0, 0]), DivisorClass::new(&[0, 1, 1])]);
            }
            _ => {}
        }
        let n = self.lattice.rank();
        let w: Vec<i64> = (0..n)
            .map(|i| self.dot(&unit(n, i), gamma))
            .collect::<Result<_>>()?;
        Ok(integer_kernel(&w))
    }

    /// Coordinates of `D` in [`perp_basis`](Self::perp_basis).
    pub fn perp_project(&self, d: &DivisorClass) -> Result<Vec<i64>> {
        self.require_perp(d)?;
        let basis = self.perp_basis()?;
        solve_integral(&basis, d)
    }
}

fn unit(n: usize, i: usize) -> DivisorClass {
    let mut v = vec![0; n];
    v[i] = 1;
    DivisorClass(v)
}

/// A basis of `{x : w . x = 0}` from unimodular column operations reducing
/// `w` to `(g, 0, ..., 0)`.
fn integer_kernel(w: &[i64]) -> Vec<DivisorClass> {
    let n = w.len();
    let mut w = w.to_vec();
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i).0).collect(); // columns
    loop {
        let nz: Vec<usize> = (0..n).filter(|&i| w[i] != 0).collect();
        if nz.len() <= 1 {
            if let Some(&p) = nz.first() {
                w.swap(0, p);
                u.swap(0, p);
            }
            break;
        }
        let p = *nz.iter().min_by_key(|&&i| w[i].abs()).unwrap();
        for &i in &nz {
            if i != p {
                let q = w[i] / w[p];
                w[i] -= q * w[p];
                let col_p = u[p].clone();
                for (x, y) in u[i].iter_mut().zip(&col_p) {
                    *x -= q * y;
                }
            }
        }
    }
    u.into_iter().skip(1).map(DivisorClass).collect()
}

/// Solves `sum c_k basis_k = d` in integers.
fn solve_integral(basis: &[DivisorClass], d: &DivisorClass) -> Result<Vec<i64>> {
    let n = d.dim();
    let r = basis.len();
    // Augmented rows of the n x r system.
    let mut m: Vec<Vec<Rational64>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational64> = basis.iter().map(|b| Rational64::from(b.0[i])).collect();
            row.push(Rational64::from(d.0[i]));
            row
        })
        .collect();
    let zero = Rational64::from(0);
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..r {
        let Some(p) = (row..n).find(|&i| m[i][c] != zero) else {
            continue;
        };
        m.swap(row, p);
        let inv = Rational64::from(1) / m[row][c];
        for k in c..=r {
            m[row][k] *= inv;
        }
        for i in 0..n {
            if i != row && m[i][c] != zero {
                let f = m[i][c];
                for k in c..=r {
                    let v = m[row][k];
                    m[i][k] -= f * v;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    if m[row..].iter().any(|rw| rw[r] != zero) || pivots.len() != r {
        return Err(Error::Invalid(format!("{d} is not in the span of the basis")));
    }
    let mut out = vec![0; r];
    for (i, &c) in pivots.iter().enumerate() {
        let v = m[i][r];
        if !v.is_integer() {
            return Err(Error::Invalid(format!("{d} has non-integral coordinates")));
        }
        out[c] = v.to_integer();
    }
    Ok(out)
}

/// One element `(D0 - iE, bidegree)` of a fiber of the gluing map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FiberPair {
    pub shift: i64,
    pub bidegree: (i64, i64),
}

impl Serialize for SurfaceModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (model, m) = match self.preset {
            Preset::Quadric => ("quadric", None),
            Preset::Blowup(m) => ("blowup_p2", Some(m)),
        };
        RawModel {
            model: model.into(),
            m,
            gamma: self.gamma.as_ref().map(|g| g.0.clone()),
            base_lift: self.base_lift.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SurfaceModel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawModel::deserialize(d)?;
        SurfaceModel::from_raw(raw).map_err(serde::de::Error::custom)
    }
}

impl SurfaceModel {
    fn from_raw(raw: RawModel) -> Result<Self> {
        let mut model = match raw.model.as_str() {
            "quadric" => SurfaceModel::quadric(),
            "blowup_p2" | "blowup" => {
                let m = raw.m.ok_or_else(|| Error::Parse("blowup_p2 needs m".into()))?;
                SurfaceModel::blowup(m)
            }
            other => return Err(Error::Parse(format!("unknown surface model {other:?}"))),
        };
        if let Some(g) = raw.gamma {
            model = model.with_gamma(DivisorClass(g))?;
        }
        if let Some(b) = raw.base_lift {
            model = model.with_base_lift(b);
        }
        Ok(model)
    }

    /// Parses `quadric`, `blowup:m`, `cubic` or `p2`.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "quadric" => Ok(SurfaceModel::quadric()),
            "cubic" => Ok(SurfaceModel::cubic()),
            "p2" => Ok(SurfaceModel::blowup(0)),
            t => {
                let m = t
                    .strip_prefix("blowup:")
                    .or_else(|| t.strip_prefix("blowup_p2:"))
                    .and_then(|m| m.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown surface model {t:?}")))?;
                Ok(SurfaceModel::blowup(m))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dc(v: &[i64]) -> DivisorClass {
        DivisorClass::new(v)
    }

    #[test]
    fn presets() {
        let q = SurfaceModel::quadric();
        let k = q.lattice().canonical().clone();
        assert_eq!(q.dot(&k, &k).unwrap(), 8);
        assert_eq!(q.lattice().determinant(), -1);
        for m in 0..=8 {
            let b = SurfaceModel::blowup(m);
            let k = b.lattice().canonical().clone();
            assert_eq!(b.dot(&k, &k).unwrap(), 9 - m as i64);
            assert_eq!(b.lattice().determinant().abs(), 1);
            if let Ok(g) = b.gamma() {
                assert_eq!(b.dot(g, g).unwrap(), -2);
                assert_eq!(b.dot(&k, g).unwrap(), 0);
            }
        }
        assert!(SurfaceModel::blowup(1).gamma().is_err());
    }

    #[test]
    fn dots_and_points() {
        let q = SurfaceModel::quadric();
        assert_eq!(q.dot(&dc(&[1, 1]), &dc(&[1, 1])).unwrap(), 2);
        assert_eq!(q.dot(&dc(&[1, -1]), &dc(&[1, -1])).unwrap(), -2);
        let c = SurfaceModel::cubic();
        let g = c.gamma().unwrap().clone();
        assert_eq!(c.dot(&g, &g).unwrap(), -2);
        for a in 1..5 {
            assert_eq!(q.n_points(&dc(&[a, a])).unwrap(), 4 * a - 1);
        }
        let b2 = SurfaceModel::blowup(2);
        assert_eq!(b2.n_points(&dc(&[5, -2, -2])).unwrap(), 3 * 5 - 2 * 2 - 1);
        assert_eq!(q.n_points(&dc(&[0, 0])).unwrap(), -1);
        assert!(matches!(q.dot(&dc(&[1]), &dc(&[1, 1])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn genus() {
        let q = SurfaceModel::quadric();
        assert_eq!(q.adjunction_genus(&dc(&[1, 1])).unwrap(), 0.into());
        assert_eq!(q.adjunction_genus(&dc(&[2, 2])).unwrap(), 1.into());
        for a in -3..6 {
            for b in -3..6 {
                let want = (a - 1) * (b - 1);
                assert_eq!(q.adjunction_genus(&dc(&[a, b])).unwrap(), want.into());
            }
        }
        let b2 = SurfaceModel::blowup(2);
        assert_eq!(b2.adjunction_genus(&dc(&[0, 1, 0])).unwrap(), 0.into());
    }

    #[test]
    fn j_ranges() {
        let q = SurfaceModel::quadric();
        assert_eq!(q.j_range(&dc(&[2, 2])).unwrap(), Some((-1, 1)));
        assert_eq!(q.j_range(&dc(&[0, 0])).unwrap(), Some((-1, 1)));
        assert_eq!(q.j_range(&dc(&[3, 3])).unwrap(), Some((-2, 2)));
        assert_eq!(q.j_range(&dc(&[1, 1])).unwrap(), Some((0, 0)));
        for a in 1..7 {
            assert_eq!(q.j_range(&dc(&[a, a])).unwrap(), Some((1 - a, a - 1)));
        }
        let b2 = SurfaceModel::blowup(2);
        assert_eq!(b2.j_range(&dc(&[1, 0, 0])).unwrap(), Some((0, 0)));
        // Twice an exceptional curve: p_a < 0 all along the orbit.
        assert_eq!(b2.j_range(&dc(&[0, 2, 0])).unwrap(), None);
    }

    #[test]
    fn dehn() {
        let q = SurfaceModel::quadric();
        assert_eq!(q.dehn_twist(&dc(&[3, 1])).unwrap(), dc(&[1, 3]));
        assert_eq!(q.dehn_twist(&dc(&[2, 2])).unwrap(), dc(&[2, 2]));
        assert_eq!(q.dehn_twist(&dc(&[1, -1])).unwrap(), dc(&[-1, 1]));
        let c = SurfaceModel::cubic();
        let d = dc(&[2, -1, -1, -1, -1, -1, 0]);
        assert_eq!(c.dehn_twist(&d).unwrap(), dc(&[0, 0, 0, 0, 0, 0, 1]));
        let b2 = SurfaceModel::blowup(2);
        assert_eq!(b2.dehn_twist(&dc(&[4, -4, -1])).unwrap(), dc(&[4, -1, -4]));
    }

    #[test]
    fn fibers() {
        let q = SurfaceModel::quadric();
        let d = dc(&[2, 2]);
        let f = q.phi_fiber(&d, 0).unwrap();
        assert!(f.contains(&FiberPair { shift: 0, bidegree: (0, 0) }));
        assert!(f.iter().all(|p| p.bidegree == (p.shift, p.shift)));
        let f1 = q.phi_fiber(&d, 1).unwrap();
        assert!(f1.contains(&FiberPair { shift: 0, bidegree: (1, -1) }));
        for l in -2..=2 {
            for p in q.phi_fiber(&d, l).unwrap() {
                assert_eq!(q.phi1(&d, &p).unwrap(), d.add_scaled(q.gamma().unwrap(), -l));
            }
        }
        assert!(matches!(q.phi_fiber(&dc(&[1, 0]), 0), Err(Error::NotPerpendicular(_))));
    }

    #[test]
    fn perp() {
        let q = SurfaceModel::quadric();
        assert_eq!(q.perp_project(&dc(&[3, 3])).unwrap(), vec![3]);
        assert!(matches!(q.perp_project(&dc(&[1, 0])), Err(Error::NotPerpendicular(_))));
        let b2 = SurfaceModel::blowup(2);
        assert_eq!(b2.perp_project(&dc(&[5, -2, -2])).unwrap(), vec![5, -2]);
        let c = SurfaceModel::cubic();
        let basis = c.perp_basis().unwrap();
        assert_eq!(basis.len(), 6);
        let g = c.gamma().unwrap();
        for b in &basis {
            assert_eq!(c.dot(b, g).unwrap(), 0);
        }
        let k = c.lattice().canonical().clone();
        let coords = c.perp_project(&k).unwrap();
        let back = basis
            .iter()
            .zip(&coords)
            .fold(dc(&[0; 7]), |acc, (b, x)| acc.add_scaled(b, *x));
        assert_eq!(back, k);
    }

    #[test]
    fn model_json() {
        let m: SurfaceModel =
            serde_json::from_str(r#"{"model":"blowup_p2","m":2,"gamma":[0,-1,1]}"#).unwrap();
        assert_eq!(m.gamma().unwrap(), &dc(&[0, -1, 1]));
        let back: SurfaceModel = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<SurfaceModel>(r#"{"model":"quadric","gamma":[1,1]}"#).is_err());
    }
}
