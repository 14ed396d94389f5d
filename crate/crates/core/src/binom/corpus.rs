//! Test corpora of étale algebras and the identity cases run over them.

use std::fmt;

use serde::Serialize;

use super::identities::{
    check_lemma_step, check_main_identity, check_product, check_symmetry, check_twisted_product,
    check_useful_identity,
};
use super::Binomials;
use crate::etale::{EtaleAlgebra, FactorSpec};
use crate::gw::{BaseField, SquareClass};
use crate::{Error, Result};

/// All multisets of `kinds` of total degree in `1..=max_deg`.
fn multisets(base: BaseField, kinds: &[FactorSpec], max_deg: usize) -> Result<Vec<EtaleAlgebra>> {
    fn go(
        base: BaseField,
        kinds: &[FactorSpec],
        start: usize,
        left: usize,
        cur: &mut Vec<FactorSpec>,
        out: &mut Vec<EtaleAlgebra>,
    ) -> Result<()> {
        if !cur.is_empty() {
            out.push(EtaleAlgebra::new(base, cur.clone())?);
        }
        for (i, k) in kinds.iter().enumerate().skip(start) {
            if k.degree() <= left {
                cur.push(k.clone());
                go(base, kinds, i, left - k.degree(), cur, out)?;
                cur.pop();
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(base, kinds, 0, max_deg, &mut Vec::new(), &mut out)?;
    out.sort_by(|a, b| (a.degree(), a).cmp(&(b.degree(), b)));
    out.dedup();
    Ok(out)
}

/// Every étale algebra over F_q of degree at most `max_deg`, one per partition.
pub fn finite_corpus(q: u64, max_deg: usize) -> Result<Vec<EtaleAlgebra>> {
    let base = BaseField::finite(q)?;
    let kinds: Vec<FactorSpec> = (1..=max_deg as u32).map(|m| FactorSpec::Finite { m }).collect();
    multisets(base, &kinds, max_deg)
}

/// Products of multiquadratic fields generated by subsets of `classes`, of
/// degree at most `max_deg`.
pub fn quadratic_corpus(base: BaseField, classes: &[i64], max_deg: usize) -> Result<Vec<EtaleAlgebra>> {
    if base.is_finite() {
        return Err(Error::Invalid("multiquadratic corpora need an ordered base".into()));
    }
    let cs = classes
        .iter()
        .map(|a| base.class_of_int(*a))
        .collect::<Result<Vec<_>>>()?;
    let mut kinds = Vec::new();
    for mask in 0u32..(1 << cs.len()) {
        let pick: Vec<SquareClass> = (0..cs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| cs[i])
            .collect();
        let alg = EtaleAlgebra::new(base, vec![FactorSpec::Multiquad { classes: pick }])?;
        for f in alg.factors() {
            if f.degree() <= max_deg && !kinds.contains(f) {
                kinds.push(f.clone());
            }
        }
    }
    kinds.sort();
    multisets(base, &kinds, max_deg)
}

/// One identity instance of the verification suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "identity", rename_all = "snake_case")]
pub enum IdentityCase {
    Symmetry { algebra: EtaleAlgebra, j: usize },
    Product { a1: EtaleAlgebra, a2: EtaleAlgebra, j: usize },
    TwistedProduct { e: EtaleAlgebra, f: EtaleAlgebra, j: usize, d: SquareClass },
    Main { sigma: EtaleAlgebra, j: usize, d: SquareClass },
    Useful { sigma: EtaleAlgebra, j: usize, d: SquareClass },
    LemmaStep { e: EtaleAlgebra, f: EtaleAlgebra, j: usize, d: SquareClass },
}

impl IdentityCase {
    pub fn name(&self) -> &'static str {
        match self {
            IdentityCase::Symmetry { .. } => "symmetry",
            IdentityCase::Product { .. } => "product",
            IdentityCase::TwistedProduct { .. } => "twisted_product",
            IdentityCase::Main { .. } => "main",
            IdentityCase::Useful { .. } => "useful",
            IdentityCase::LemmaStep { .. } => "lemma_step",
        }
    }

    pub fn run(&self, b: &Binomials) -> Result<bool> {
        match self {
            IdentityCase::Symmetry { algebra, j } => check_symmetry(b, algebra, *j),
            IdentityCase::Product { a1, a2, j } => check_product(b, a1, a2, *j),
            IdentityCase::TwistedProduct { e, f, j, d } => check_twisted_product(b, e, f, *j, *d),
            IdentityCase::Main { sigma, j, d } => check_main_identity(b, sigma, *j, *d),
            IdentityCase::Useful { sigma, j, d } => check_useful_identity(b, sigma, *j, *d),
            IdentityCase::LemmaStep { e, f, j, d } => check_lemma_step(b, e, f, *j, *d),
        }
    }
}

impl fmt::Display for IdentityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityCase::Symmetry { algebra, j } => write!(f, "symmetry [{algebra}] j={j}"),
            IdentityCase::Product { a1, a2, j } => write!(f, "product [{a1}] x [{a2}] j={j}"),
            IdentityCase::TwistedProduct { e, f: g, j, d } => {
                write!(f, "twisted_product [{e}] x [{g}] j={j} d={d}")
            }
            IdentityCase::Main { sigma, j, d } => write!(f, "main [{sigma}] j={j} d={d}"),
            IdentityCase::Useful { sigma, j, d } => write!(f, "useful [{sigma}] j={j} d={d}"),
            IdentityCase::LemmaStep { e, f: g, j, d } => {
                write!(f, "lemma_step [{e}] x [{g}] j={j} d={d}")
            }
        }
    }
}

/// The full suite over `algebras`: symmetry and products for every `j` and
/// splitting, and the twisted identities for every `d` at `j = deg / 2`.
pub fn identity_cases(algebras: &[EtaleAlgebra], twists: &[SquareClass]) -> Vec<IdentityCase> {
    let mut out = Vec::new();
    for a in algebras {
        let n = a.degree();
        let splits = a.splittings();
        for j in 0..=n {
            out.push(IdentityCase::Symmetry { algebra: a.clone(), j });
        }
        for (a1, a2) in &splits {
            if a1.degree() == 0 || a2.degree() == 0 {
                continue;
            }
            for j in 0..=n {
                out.push(IdentityCase::Product { a1: a1.clone(), a2: a2.clone(), j });
            }
        }
        if n % 2 != 0 {
            continue;
        }
        let j = n / 2;
        for &d in twists {
            out.push(IdentityCase::Main { sigma: a.clone(), j, d });
            out.push(IdentityCase::Useful { sigma: a.clone(), j, d });
            for (e, f) in &splits {
                if e.degree() % 2 == 0 {
                    out.push(IdentityCase::TwistedProduct { e: e.clone(), f: f.clone(), j, d });
                }
                if f.degree() == 2 && j >= 1 {
                    out.push(IdentityCase::LemmaStep { e: e.clone(), f: f.clone(), j, d });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_sizes() {
        // Partitions of 1..=6: 1 + 2 + 3 + 5 + 7 + 11.
        assert_eq!(finite_corpus(3, 6).unwrap().len(), 29);
        let c = quadratic_corpus(BaseField::Rationals, &[-1, 2], 2).unwrap();
        // trivial, trivial^2, quad(-1), quad(2)
        assert_eq!(c.len(), 4);
        let c = quadratic_corpus(BaseField::Rationals, &[-1, 2], 4).unwrap();
        assert!(c.iter().any(|a| a.factors().len() == 1 && a.degree() == 4));
    }

    #[test]
    fn small_suite_passes() {
        let b = Binomials::new();
        let algs = finite_corpus(3, 4).unwrap();
        let cases = identity_cases(&algs, &[SquareClass::Finite(true)]);
        for c in &cases {
            assert!(c.run(&b).unwrap(), "{c}");
        }
    }
}
