//! Enriched and twisted binomial coefficients.
//!
//! `binom(A, j)` is the trace form of the étale algebra whose Galois set is the
//! set of j-element subsets of the Galois set of `A`. The twisted version
//! composes each generator with complementation whenever the character of the
//! twist class is nontrivial on it.

mod corpus;
mod identities;

use std::collections::HashMap;
use std::sync::Mutex;

use serde::Serialize;

use crate::etale::{
    algebra_of_decomposition, orbits, subset_action, trace_form, twisted_fiber, EtaleAlgebra,
};
use crate::gw::{GwElement, SquareClass};
use crate::{Error, Result};

pub use corpus::{finite_corpus, identity_cases, quadratic_corpus, IdentityCase};
pub use identities::{
    check_lemma_step, check_main_identity, check_product, check_symmetry, check_twisted_product,
    check_useful_identity, lemma_step_value, main_identity_rhs, useful_identity_rhs,
};

/// Largest algebra degree handled by the orbit enumeration.
pub const MAX_DEGREE: usize = 12;

/// A twisted binomial together with the square-twist warning flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistedBinomial {
    pub value: GwElement,
    /// Set when `d` is a square; the value then equals the untwisted binomial.
    pub square_twist: bool,
}

fn orbit_trace(a: &EtaleAlgebra, j: usize, d: Option<SquareClass>) -> Result<GwElement> {
    if a.degree() > MAX_DEGREE {
        return Err(Error::Invalid(format!(
            "degree {} exceeds the enumeration cap {MAX_DEGREE}",
            a.degree()
        )));
    }
    let fiber = twisted_fiber(a, d)?;
    let set = subset_action(&fiber, j)?;
    Ok(trace_form(&algebra_of_decomposition(&orbits(&set))).canonical())
}

/// The enriched binomial coefficient `(A choose j)`.
pub fn binom(a: &EtaleAlgebra, j: usize) -> Result<GwElement> {
    if j > a.degree() {
        return Err(Error::IndexOutOfRange { j, degree: a.degree() });
    }
    orbit_trace(a, j, None)
}

/// The twisted binomial coefficient `(A[sqrt d] choose j)` for `deg A = 2j`.
pub fn tbinom(a: &EtaleAlgebra, j: usize, d: SquareClass) -> Result<TwistedBinomial> {
    if a.degree() != 2 * j {
        return Err(Error::DegreeMismatch {
            expected: 2 * j,
            found: a.degree(),
        });
    }
    Ok(TwistedBinomial {
        value: orbit_trace(a, j, Some(d))?,
        square_twist: d.is_square(),
    })
}

/// Rows `n = 0..=nmax` of `binom(F_{q^n}, j)` for `j = 0..=n`.
pub fn pascal(q: u64, nmax: usize) -> Result<Vec<Vec<GwElement>>> {
    let base = crate::gw::BaseField::finite(q)?;
    (0..=nmax)
        .map(|n| {
            let a = if n == 0 {
                EtaleAlgebra::empty(base)
            } else {
                EtaleAlgebra::finite(base, &[n as u32])?
            };
            (0..=n).map(|j| binom(&a, j)).collect()
        })
        .collect()
}

/// `tbinom(F_{q^{2j}}, j, u)` for `j = 1..=jmax`.
pub fn twisted_pascal(q: u64, jmax: usize) -> Result<Vec<GwElement>> {
    let base = crate::gw::BaseField::finite(q)?;
    (1..=jmax)
        .map(|j| {
            let a = EtaleAlgebra::finite(base, &[2 * j as u32])?;
            Ok(tbinom(&a, j, SquareClass::Finite(true))?.value)
        })
        .collect()
}

type Key = (EtaleAlgebra, usize, Option<SquareClass>);

/// Memoizing front end used by the identity suite.
#[derive(Debug, Default)]
pub struct Binomials {
    memo: Mutex<HashMap<Key, GwElement>>,
}

impl Binomials {
    pub fn new() -> Self {
        Self::default()
    }

    fn cached(&self, key: Key, f: impl FnOnce() -> Result<GwElement>) -> Result<GwElement> {
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = f()?;
        self.memo.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    pub fn binom(&self, a: &EtaleAlgebra, j: usize) -> Result<GwElement> {
        self.cached((a.clone(), j, None), || binom(a, j))
    }

    /// `binom(a, j)`, or zero when `j` exceeds the degree.
    pub fn binom_or_zero(&self, a: &EtaleAlgebra, j: i64) -> Result<GwElement> {
        if j < 0 || j as usize > a.degree() {
            Ok(GwElement::zero(a.base()))
        } else {
            self.binom(a, j as usize)
        }
    }

    pub fn tbinom(&self, a: &EtaleAlgebra, j: usize, d: SquareClass) -> Result<GwElement> {
        self.cached((a.clone(), j, Some(d)), || tbinom(a, j, d).map(|t| t.value))
    }
}
