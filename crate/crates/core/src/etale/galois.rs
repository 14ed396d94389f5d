use serde::Serialize;

use super::algebra::{EtaleAlgebra, FactorSpec};
use super::f2::{ClassSpace, F2Basis};
use crate::gw::{BaseField, SquareClass};
use crate::{Error, Result};

/// The acting group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum GroupKind {
    /// Generated by Frobenius.
    Cyclic,
    /// (Z/2)^s with generator k dual to `basis[k]`: it negates sqrt(basis[k])
    /// and fixes the square roots of the other basis classes.
    Elementary2 { basis: Vec<SquareClass> },
}

/// A finite set with a group action given by generator permutations.
#[derive(Debug, Clone, Serialize)]
pub struct GaloisSet {
    pub base: BaseField,
    pub size: usize,
    pub generators: Vec<Vec<usize>>,
    pub labels: Option<Vec<String>>,
    pub group: GroupKind,
}

/// One orbit and the fixed field of its stabilizer.
#[derive(Debug, Clone, Serialize)]
pub struct Orbit {
    pub points: Vec<usize>,
    #[serde(skip)]
    pub factor: FactorSpec,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitDecomposition {
    pub base: BaseField,
    pub orbits: Vec<Orbit>,
}

impl GaloisSet {
    pub fn new(
        base: BaseField,
        size: usize,
        generators: Vec<Vec<usize>>,
        group: GroupKind,
    ) -> Result<Self> {
        for g in &generators {
            if g.len() != size {
                return Err(Error::DimensionMismatch {
                    expected: size,
                    found: g.len(),
                });
            }
            let mut seen = vec![false; size];
            for &x in g {
                if x >= size || seen[x] {
                    return Err(Error::Invalid("generator is not a bijection".into()));
                }
                seen[x] = true;
            }
        }
        match &group {
            GroupKind::Cyclic => {
                if generators.len() != 1 {
                    return Err(Error::Invalid("cyclic action needs one generator".into()));
                }
            }
            GroupKind::Elementary2 { basis } => {
                if basis.len() != generators.len() {
                    return Err(Error::Invalid("one generator per basis class".into()));
                }
                for g in &generators {
                    if (0..size).any(|x| g[g[x]] != x) {
                        return Err(Error::Invalid("generator is not an involution".into()));
                    }
                    for h in &generators {
                        if (0..size).any(|x| g[h[x]] != h[g[x]]) {
                            return Err(Error::Invalid("generators do not commute".into()));
                        }
                    }
                }
            }
        }
        Ok(GaloisSet {
            base,
            size,
            generators,
            labels: None,
            group,
        })
    }

    /// The same action transported along the bijection `perm` (point x becomes perm[x]).
    pub fn relabel(&self, perm: &[usize]) -> GaloisSet {
        let mut inv = vec![0; self.size];
        for (x, &y) in perm.iter().enumerate() {
            inv[y] = x;
        }
        GaloisSet {
            base: self.base,
            size: self.size,
            generators: self
                .generators
                .iter()
                .map(|g| (0..self.size).map(|y| perm[g[inv[y]]]).collect())
                .collect(),
            labels: self.labels.as_ref().map(|l| (0..self.size).map(|y| l[inv[y]].clone()).collect()),
            group: self.group.clone(),
        }
    }
}

/// A Galois set together with, for each generator, whether the twist acts
/// through it (the generator is then composed with complementation on subsets).
#[derive(Debug, Clone)]
pub struct TwistedFiber {
    pub set: GaloisSet,
    pub complement: Vec<bool>,
}

/// The fiber functor image of `a`.
pub fn fiber_set(a: &EtaleAlgebra) -> GaloisSet {
    twisted_fiber(a, None).expect("untwisted fibers always exist").set
}

/// Fiber of `a` with the group enlarged, if necessary, so that the character
/// of `d` is defined on it.
pub fn twisted_fiber(a: &EtaleAlgebra, d: Option<SquareClass>) -> Result<TwistedFiber> {
    let base = a.base();
    if let Some(d) = d {
        base.check_class(&d)?;
    }
    match base {
        BaseField::FiniteField { .. } => {
            let mut perm = Vec::with_capacity(a.degree());
            let mut labels = Vec::new();
            for (fi, f) in a.factors().iter().enumerate() {
                let FactorSpec::Finite { m } = f else { unreachable!() };
                let start = perm.len();
                let m = *m as usize;
                for k in 0..m {
                    perm.push(start + (k + 1) % m);
                    labels.push(format!("f{fi}.{k}"));
                }
            }
            let mut set = GaloisSet::new(base, perm.len(), vec![perm], GroupKind::Cyclic)?;
            set.labels = Some(labels);
            let twist = d.map(|c| !c.is_square()).unwrap_or(false);
            Ok(TwistedFiber {
                set,
                complement: vec![twist],
            })
        }
        _ => {
            let mut all = a.classes();
            if let Some(d) = d {
                all.push(d);
            }
            let space = ClassSpace::covering(base, all.iter());
            let mut basis = F2Basis::default();
            for c in a.classes() {
                basis.insert(space.bits(c));
            }
            if let Some(d) = d {
                basis.insert(space.bits(d));
            }
            let s = basis.dim();
            let basis_classes: Vec<SquareClass> =
                basis.original.iter().map(|v| space.class(*v)).collect();
            // Points of a factor k(sqrt a_1..sqrt a_t): sign vectors in F_2^t.
            let mut gens: Vec<Vec<usize>> = vec![Vec::new(); s];
            let mut labels = Vec::new();
            for (fi, f) in a.factors().iter().enumerate() {
                let FactorSpec::Multiquad { classes } = f else { unreachable!() };
                let start = labels.len();
                let t = classes.len();
                let coords: Vec<u64> = classes
                    .iter()
                    .map(|c| basis.coords(space.bits(*c)).expect("class in span"))
                    .collect();
                for v in 0..1usize << t {
                    labels.push(format!("f{fi}.{v:0t$b}", t = t.max(1)));
                    for (k, g) in gens.iter_mut().enumerate() {
                        let mut w = v;
                        for (i, cc) in coords.iter().enumerate() {
                            if cc >> k & 1 == 1 {
                                w ^= 1 << i;
                            }
                        }
                        g.push(start + w);
                    }
                }
            }
            let complement = (0..s)
                .map(|k| match d {
                    Some(d) => basis.coords(space.bits(d)).expect("d in span") >> k & 1 == 1,
                    None => false,
                })
                .collect();
            let mut set = GaloisSet::new(
                base,
                labels.len(),
                gens,
                GroupKind::Elementary2 {
                    basis: basis_classes,
                },
            )?;
            set.labels = Some(labels);
            Ok(TwistedFiber { set, complement })
        }
    }
}

fn orbit_points(s: &GaloisSet, start: usize, seen: &mut [bool]) -> Vec<usize> {
    let mut pts = vec![start];
    seen[start] = true;
    let mut i = 0;
    while i < pts.len() {
        let x = pts[i];
        for g in &s.generators {
            let y = g[x];
            if !seen[y] {
                seen[y] = true;
                pts.push(y);
            }
        }
        i += 1;
    }
    pts.sort_unstable();
    pts
}

/// Orbits and the fixed fields of their stabilizers.
pub fn orbits(s: &GaloisSet) -> OrbitDecomposition {
    let mut seen = vec![false; s.size];
    let mut out = Vec::new();
    for x in 0..s.size {
        if seen[x] {
            continue;
        }
        let points = orbit_points(s, x, &mut seen);
        let factor = match &s.group {
            GroupKind::Cyclic => FactorSpec::Finite {
                m: points.len() as u32,
            },
            GroupKind::Elementary2 { basis } => stabilizer_field(s, basis, x, points.len()),
        };
        out.push(Orbit { points, factor });
    }
    OrbitDecomposition {
        base: s.base,
        orbits: out,
    }
}

fn stabilizer_field(s: &GaloisSet, basis: &[SquareClass], x: usize, orbit_len: usize) -> FactorSpec {
    let n = basis.len();
    assert!(n < 20, "elementary abelian group too large to enumerate");
    let stab: Vec<usize> = (0..1usize << n)
        .filter(|g| {
            let mut y = x;
            for (k, gen) in s.generators.iter().enumerate() {
                if g >> k & 1 == 1 {
                    y = gen[y];
                }
            }
            y == x
        })
        .collect();
    // Characters (coordinate vectors over the basis) trivial on the stabilizer.
    let space = ClassSpace::covering(s.base, basis.iter());
    let mut perp = F2Basis::default();
    for c in 0..1usize << n {
        if stab.iter().all(|g| (c & g).count_ones() % 2 == 0) {
            let mut bits = 0u128;
            for (k, b) in basis.iter().enumerate() {
                if c >> k & 1 == 1 {
                    bits ^= space.bits(*b);
                }
            }
            perp.insert(bits);
        }
    }
    assert_eq!(1 << perp.dim(), orbit_len, "orbit size must match the fixed field degree");
    let classes = perp.original.iter().map(|v| space.class(*v)).collect();
    let alg = EtaleAlgebra::new(s.base, vec![FactorSpec::Multiquad { classes }])
        .expect("independent classes form a field");
    alg.factors()[0].clone()
}

/// One factor per orbit.
pub fn algebra_of_decomposition(d: &OrbitDecomposition) -> EtaleAlgebra {
    EtaleAlgebra::new(d.base, d.orbits.iter().map(|o| o.factor.clone()).collect())
        .expect("orbit factors are normalized")
}

/// The action induced on j-element subsets, each generator optionally composed
/// with complementation. Subsets are labeled by bitmasks over the points.
pub fn subset_action(fiber: &TwistedFiber, j: usize) -> Result<GaloisSet> {
    let n = fiber.set.size;
    if j > n {
        return Err(Error::IndexOutOfRange { j, degree: n });
    }
    if n > 63 {
        return Err(Error::Invalid(format!("degree {n} too large for subset enumeration")));
    }
    let mut subsets: Vec<u64> = Vec::new();
    enumerate_subsets(n, j, 0, 0, &mut subsets);
    let index: std::collections::HashMap<u64, usize> =
        subsets.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let full: u64 = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let mut gens = Vec::with_capacity(fiber.set.generators.len());
    for (g, &comp) in fiber.set.generators.iter().zip(&fiber.complement) {
        let mut perm = Vec::with_capacity(subsets.len());
        for s in &subsets {
            let mut img = 0u64;
            for (x, gx) in g.iter().enumerate() {
                if s >> x & 1 == 1 {
                    img |= 1 << gx;
                }
            }
            if comp {
                img ^= full;
            }
            let k = *index.get(&img).ok_or(Error::DegreeMismatch {
                expected: 2 * j,
                found: n,
            })?;
            perm.push(k);
        }
        gens.push(perm);
    }
    let mut set = GaloisSet::new(fiber.set.base, subsets.len(), gens, fiber.set.group.clone())?;
    set.labels = Some(subsets.iter().map(|s| format!("{s:0n$b}", n = n.max(1))).collect());
    Ok(set)
}

fn enumerate_subsets(n: usize, j: usize, start: usize, acc: u64, out: &mut Vec<u64>) {
    if j == 0 {
        out.push(acc);
        return;
    }
    for x in start..n {
        if n - x < j {
            break;
        }
        enumerate_subsets(n, j - 1, x + 1, acc | 1 << x, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    #[test]
    fn finite_fibers() {
        let f = BaseField::finite(5).unwrap();
        let s = fiber_set(&EtaleAlgebra::finite(f, &[2]).unwrap());
        assert_eq!(s.generators, vec![vec![1, 0]]);
        let d = orbits(&fiber_set(&EtaleAlgebra::finite(f, &[6]).unwrap()));
        assert_eq!(d.orbits.len(), 1);
        assert_eq!(d.orbits[0].factor, FactorSpec::Finite { m: 6 });
    }

    #[test]
    fn shift_squared_has_two_orbits() {
        let f = BaseField::finite(3).unwrap();
        let s = GaloisSet::new(f, 4, vec![vec![2, 3, 0, 1]], GroupKind::Cyclic).unwrap();
        let d = orbits(&s);
        assert_eq!(d.orbits.iter().map(|o| o.points.len()).collect::<Vec<_>>(), vec![2, 2]);
        assert_eq!(
            algebra_of_decomposition(&d),
            EtaleAlgebra::finite(f, &[2, 2]).unwrap()
        );
    }

    #[test]
    fn quadratic_fibers() {
        let a = EtaleAlgebra::parse(q(), "quad:2,trivial").unwrap();
        let s = fiber_set(&a);
        assert_eq!(s.size, 3);
        assert_eq!(s.generators.len(), 1);
        // Trivial factors sort first, so the fixed point comes first.
        assert_eq!(s.generators[0], vec![0, 2, 1]);

        let b = EtaleAlgebra::quadratic(q(), &[2, 3]).unwrap();
        let s = fiber_set(&b);
        assert_eq!(s.size, 4);
        assert_eq!(s.generators, vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2]]);
    }

    #[test]
    fn one_subsets_of_two_quadratics() {
        let b = EtaleAlgebra::quadratic(q(), &[2, 3]).unwrap();
        let tf = twisted_fiber(&b, None).unwrap();
        let d = orbits(&subset_action(&tf, 1).unwrap());
        let mut fs: Vec<FactorSpec> = d.orbits.iter().map(|o| o.factor.clone()).collect();
        fs.sort();
        assert_eq!(
            fs,
            vec![
                FactorSpec::Multiquad { classes: vec![SquareClass::Rational(2)] },
                FactorSpec::Multiquad { classes: vec![SquareClass::Rational(3)] },
            ]
        );
    }

    #[test]
    fn stabilizer_of_product_character() {
        // Generators for basis {2, 3} acting together on a 2-point set: the
        // stabilizer is ker(chi_6), so the fixed field is Q(sqrt 6).
        let s = GaloisSet::new(
            q(),
            2,
            vec![vec![1, 0], vec![1, 0]],
            GroupKind::Elementary2 {
                basis: vec![SquareClass::Rational(2), SquareClass::Rational(3)],
            },
        )
        .unwrap();
        let d = orbits(&s);
        assert_eq!(
            algebra_of_decomposition(&d),
            EtaleAlgebra::quadratic(q(), &[6]).unwrap()
        );
    }

    #[test]
    fn rejects_bad_generators() {
        let f = BaseField::finite(3).unwrap();
        assert!(GaloisSet::new(f, 2, vec![vec![0, 0]], GroupKind::Cyclic).is_err());
        assert!(GaloisSet::new(f, 2, vec![], GroupKind::Cyclic).is_err());
        let e = GroupKind::Elementary2 { basis: vec![SquareClass::Rational(2)] };
        assert!(GaloisSet::new(q(), 3, vec![vec![1, 2, 0]], e).is_err());
    }
}
