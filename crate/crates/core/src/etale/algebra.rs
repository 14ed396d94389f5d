use std::fmt;

use serde::{Deserialize, Serialize};

use super::f2::ClassSpace;
use crate::gw::{BaseField, SquareClass};
use crate::{Error, Result};

/// A field factor of an étale algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorSpec {
    /// F_{q^m} over F_q.
    Finite { m: u32 },
    /// k(sqrt(a_1), ..., sqrt(a_t)) over Q or R for independent classes a_i,
    /// kept in a canonical basis of their span. `t = 0` is k itself.
    Multiquad { classes: Vec<SquareClass> },
}

impl FactorSpec {
    pub fn trivial() -> Self {
        FactorSpec::Multiquad { classes: vec![] }
    }

    pub fn degree(&self) -> usize {
        match self {
            FactorSpec::Finite { m } => *m as usize,
            FactorSpec::Multiquad { classes } => 1 << classes.len(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.degree() == 1
    }
}

/// Reduced echelon basis of the span of `classes` and the number of copies of
/// the resulting field inside the tensor product of the quadratic algebras.
fn normalize_multiquad(field: BaseField, classes: &[SquareClass]) -> (usize, Vec<SquareClass>) {
    let space = ClassSpace::covering(field, classes.iter());
    let mut rows: Vec<u128> = Vec::new();
    for c in classes {
        let mut v = space.bits(*c);
        for r in &rows {
            let pivot = 127 - r.leading_zeros();
            if v >> pivot & 1 == 1 {
                v ^= r;
            }
        }
        if v != 0 {
            let pivot = 127 - v.leading_zeros();
            for r in rows.iter_mut() {
                if *r >> pivot & 1 == 1 {
                    *r ^= v;
                }
            }
            rows.push(v);
        }
    }
    // Full reduction needs the rows sorted by pivot, then back-substitution.
    rows.sort_unstable_by_key(|r| std::cmp::Reverse(127 - r.leading_zeros()));
    for i in 0..rows.len() {
        let pivot = 127 - rows[i].leading_zeros();
        for j in 0..rows.len() {
            if j != i && rows[j] >> pivot & 1 == 1 {
                rows[j] ^= rows[i];
            }
        }
    }
    let mut basis: Vec<SquareClass> = rows.iter().map(|r| space.class(*r)).collect();
    basis.sort();
    (1 << (classes.len() - basis.len()), basis)
}

/// A finite étale algebra over a supported base field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EtaleAlgebra {
    base: BaseField,
    factors: Vec<FactorSpec>,
}

impl EtaleAlgebra {
    /// Builds the algebra, normalizing factors. A `Multiquad` factor with
    /// dependent classes is read as the tensor product of the quadratic
    /// algebras and split into copies of a field.
    pub fn new(base: BaseField, factors: Vec<FactorSpec>) -> Result<Self> {
        let mut out = Vec::new();
        for f in factors {
            match (&base, f) {
                (BaseField::FiniteField { .. }, FactorSpec::Finite { m }) => {
                    if m == 0 {
                        return Err(Error::Invalid("factor degree must be positive".into()));
                    }
                    out.push(FactorSpec::Finite { m });
                }
                (BaseField::FiniteField { .. }, FactorSpec::Multiquad { classes }) => {
                    for c in &classes {
                        base.check_class(c)?;
                    }
                    let t = classes.len();
                    if classes.iter().any(|c| !c.is_square()) {
                        out.extend((0..1usize << (t - 1)).map(|_| FactorSpec::Finite { m: 2 }));
                    } else {
                        out.extend((0..1usize << t).map(|_| FactorSpec::Finite { m: 1 }));
                    }
                }
                (_, FactorSpec::Finite { m }) => {
                    if m != 1 {
                        return Err(Error::Invalid(format!(
                            "F_q^{m} factor over {base}; use quad factors"
                        )));
                    }
                    out.push(FactorSpec::trivial());
                }
                (_, FactorSpec::Multiquad { classes }) => {
                    for c in &classes {
                        base.check_class(c)?;
                    }
                    let (copies, basis) = normalize_multiquad(base, &classes);
                    out.extend((0..copies).map(|_| FactorSpec::Multiquad {
                        classes: basis.clone(),
                    }));
                }
            }
        }
        out.sort();
        Ok(EtaleAlgebra { base, factors: out })
    }

    pub fn empty(base: BaseField) -> Self {
        EtaleAlgebra {
            base,
            factors: vec![],
        }
    }

    /// The split algebra k^n.
    pub fn split(base: BaseField, n: usize) -> Self {
        let f = if base.is_finite() {
            FactorSpec::Finite { m: 1 }
        } else {
            FactorSpec::trivial()
        };
        EtaleAlgebra {
            base,
            factors: vec![f; n],
        }
    }

    /// Product of F_{q^m_i} over F_q.
    pub fn finite(base: BaseField, degrees: &[u32]) -> Result<Self> {
        if !base.is_finite() {
            return Err(Error::Invalid(format!("{base} is not a finite field")));
        }
        Self::new(base, degrees.iter().map(|m| FactorSpec::Finite { m: *m }).collect())
    }

    /// Product of quadratic algebras k[x]/(x^2 - a); a square `a` gives k x k.
    pub fn quadratic(base: BaseField, classes: &[i64]) -> Result<Self> {
        let mut fs = Vec::new();
        for a in classes {
            let c = base.class_of_int(*a)?;
            fs.push(FactorSpec::Multiquad { classes: vec![c] });
        }
        Self::new(base, fs)
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn factors(&self) -> &[FactorSpec] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(FactorSpec::degree).sum()
    }

    pub fn product(&self, other: &EtaleAlgebra) -> Result<EtaleAlgebra> {
        if self.base != other.base {
            return Err(Error::FieldMismatch {
                left: self.base.to_string(),
                right: other.base.to_string(),
            });
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        factors.sort();
        Ok(EtaleAlgebra {
            base: self.base,
            factors,
        })
    }

    /// All classes appearing in multiquadratic factors.
    pub fn classes(&self) -> Vec<SquareClass> {
        let mut out: Vec<SquareClass> = self
            .factors
            .iter()
            .flat_map(|f| match f {
                FactorSpec::Multiquad { classes } => classes.clone(),
                FactorSpec::Finite { .. } => vec![],
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Every way of writing the algebra as `A1 x A2`, up to isomorphism of A1.
    pub fn splittings(&self) -> Vec<(EtaleAlgebra, EtaleAlgebra)> {
        // Group equal factors and choose how many of each go to A1.
        let mut groups: Vec<(FactorSpec, usize)> = Vec::new();
        for f in &self.factors {
            match groups.last_mut() {
                Some((g, n)) if g == f => *n += 1,
                _ => groups.push((f.clone(), 1)),
            }
        }
        let mut out = Vec::new();
        let mut counts = vec![0usize; groups.len()];
        loop {
            let mut a1 = Vec::new();
            let mut a2 = Vec::new();
            for ((f, n), k) in groups.iter().zip(&counts) {
                a1.extend(std::iter::repeat_n(f.clone(), *k));
                a2.extend(std::iter::repeat_n(f.clone(), n - k));
            }
            out.push((
                EtaleAlgebra {
                    base: self.base,
                    factors: a1,
                },
                EtaleAlgebra {
                    base: self.base,
                    factors: a2,
                },
            ));
            let mut i = 0;
            loop {
                if i == groups.len() {
                    return out;
                }
                if counts[i] < groups[i].1 {
                    counts[i] += 1;
                    break;
                }
                counts[i] = 0;
                i += 1;
            }
        }
    }

    pub fn to_inputs(&self) -> Vec<FactorInput> {
        self.factors
            .iter()
            .map(|f| match f {
                FactorSpec::Finite { m } => FactorInput::Ff { m: *m },
                FactorSpec::Multiquad { classes } => match classes.as_slice() {
                    [] => FactorInput::Trivial,
                    [a] => FactorInput::Quad {
                        a: ClassToken::from_class(*a),
                    },
                    many => FactorInput::Multiquad {
                        a: many.iter().map(|c| ClassToken::from_class(*c)).collect(),
                    },
                },
            })
            .collect()
    }

    pub fn from_inputs(base: BaseField, inputs: &[FactorInput]) -> Result<Self> {
        let mut fs = Vec::new();
        for inp in inputs {
            fs.push(match inp {
                FactorInput::Trivial => {
                    if base.is_finite() {
                        FactorSpec::Finite { m: 1 }
                    } else {
                        FactorSpec::trivial()
                    }
                }
                FactorInput::Quad { a } => FactorSpec::Multiquad {
                    classes: vec![a.to_class(base)?],
                },
                FactorInput::Multiquad { a } => FactorSpec::Multiquad {
                    classes: a.iter().map(|t| t.to_class(base)).collect::<Result<_>>()?,
                },
                FactorInput::Ff { m } => FactorSpec::Finite { m: *m },
            });
        }
        Self::new(base, fs)
    }

    /// Parses a comma separated factor list such as `ff:4,ff:2`,
    /// `quad:2,trivial`, `multiquad:2:3`, `split:3` or `empty`.
    pub fn parse(base: BaseField, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "empty" {
            return Ok(Self::empty(base));
        }
        let mut inputs = Vec::new();
        for tok in s.split([',', 'x', '*']).map(str::trim).filter(|t| !t.is_empty()) {
            let parts: Vec<&str> = tok.split(':').collect();
            let bad = || Error::Parse(format!("bad factor {tok:?}"));
            match parts.as_slice() {
                ["trivial"] | ["k"] => inputs.push(FactorInput::Trivial),
                ["split", n] => {
                    let n: usize = n.parse().map_err(|_| bad())?;
                    inputs.extend(std::iter::repeat_n(FactorInput::Trivial, n));
                }
                ["ff", m] => inputs.push(FactorInput::Ff {
                    m: m.parse().map_err(|_| bad())?,
                }),
                ["quad", a] => inputs.push(FactorInput::Quad {
                    a: ClassToken::Name(a.to_string()),
                }),
                ["multiquad", rest @ ..] if !rest.is_empty() => inputs.push(FactorInput::Multiquad {
                    a: rest.iter().map(|a| ClassToken::Name(a.to_string())).collect(),
                }),
                _ => return Err(bad()),
            }
        }
        Self::from_inputs(base, &inputs)
    }
}

impl fmt::Display for EtaleAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "empty");
        }
        let parts: Vec<String> = self
            .to_inputs()
            .iter()
            .map(|inp| match inp {
                FactorInput::Trivial => "trivial".to_string(),
                FactorInput::Ff { m } => format!("ff:{m}"),
                FactorInput::Quad { a } => format!("quad:{a}"),
                FactorInput::Multiquad { a } => {
                    let v: Vec<String> = a.iter().map(|t| t.to_string()).collect();
                    format!("multiquad:{}", v.join(":"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A class written in JSON either as an integer or as a string such as `"u"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassToken {
    Int(i64),
    Name(String),
}

impl ClassToken {
    pub fn from_class(c: SquareClass) -> Self {
        match c.rep() {
            Some(a) => ClassToken::Int(a),
            None => ClassToken::Name(c.to_string()),
        }
    }

    pub fn to_class(&self, base: BaseField) -> Result<SquareClass> {
        match self {
            ClassToken::Int(a) => base.class_of_int(*a),
            ClassToken::Name(s) => base.parse_class(s),
        }
    }
}

impl fmt::Display for ClassToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassToken::Int(a) => write!(f, "{a}"),
            ClassToken::Name(s) => write!(f, "{s}"),
        }
    }
}

/// JSON form of a factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FactorInput {
    Trivial,
    Quad { a: ClassToken },
    Ff { m: u32 },
    Multiquad { a: Vec<ClassToken> },
}

#[derive(Serialize, Deserialize)]
struct RawAlgebra {
    base: BaseField,
    factors: Vec<FactorInput>,
}

impl Serialize for EtaleAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawAlgebra {
            base: self.base,
            factors: self.to_inputs(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EtaleAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawAlgebra::deserialize(d)?;
        EtaleAlgebra::from_inputs(raw.base, &raw.factors).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_quad_splits() {
        let q = BaseField::Rationals;
        let a = EtaleAlgebra::quadratic(q, &[4]).unwrap();
        assert_eq!(a, EtaleAlgebra::split(q, 2));
        let r = BaseField::RealClosed;
        let c = EtaleAlgebra::quadratic(r, &[-3]).unwrap();
        assert_eq!(c.factors(), &[FactorSpec::Multiquad { classes: vec![SquareClass::Real(true)] }]);
        assert_eq!(EtaleAlgebra::quadratic(r, &[5]).unwrap(), EtaleAlgebra::split(r, 2));
    }

    #[test]
    fn multiquad_normalization() {
        let q = BaseField::Rationals;
        let a = EtaleAlgebra::parse(q, "multiquad:2:3").unwrap();
        let b = EtaleAlgebra::parse(q, "multiquad:6:3").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.degree(), 4);
        // Q(sqrt2) (x) Q(sqrt2) = Q(sqrt2) x Q(sqrt2)
        let c = EtaleAlgebra::parse(q, "multiquad:2:8").unwrap();
        assert_eq!(c, EtaleAlgebra::parse(q, "quad:2,quad:2").unwrap());
    }

    #[test]
    fn finite_inputs() {
        let f = BaseField::finite(3).unwrap();
        let a = EtaleAlgebra::parse(f, "quad:u,quad:1,trivial").unwrap();
        assert_eq!(a, EtaleAlgebra::finite(f, &[2, 1, 1, 1]).unwrap());
        assert_eq!(a.degree(), 5);
        assert!(EtaleAlgebra::parse(BaseField::Rationals, "ff:3").is_err());
    }

    #[test]
    fn json_and_text_round_trip() {
        let q = BaseField::Rationals;
        for s in ["quad:-1,trivial", "multiquad:2:3,quad:5", "empty"] {
            let a = EtaleAlgebra::parse(q, s).unwrap();
            assert_eq!(EtaleAlgebra::parse(q, &a.to_string()).unwrap(), a);
            let j = serde_json::to_string(&a).unwrap();
            assert_eq!(serde_json::from_str::<EtaleAlgebra>(&j).unwrap(), a);
        }
        let j = r#"{"base":{"kind":"Fq","q":5},"factors":[{"kind":"ff","m":3},{"kind":"quad","a":"u"}]}"#;
        let a: EtaleAlgebra = serde_json::from_str(j).unwrap();
        assert_eq!(a.degree(), 5);
    }

    #[test]
    fn splittings_cover_sub_multisets() {
        let f = BaseField::finite(3).unwrap();
        let a = EtaleAlgebra::finite(f, &[1, 1, 2]).unwrap();
        let s = a.splittings();
        // counts of ff:1 in {0,1,2} times ff:2 in {0,1}
        assert_eq!(s.len(), 6);
        for (x, y) in s {
            assert_eq!(x.product(&y).unwrap(), a);
        }
    }
}
