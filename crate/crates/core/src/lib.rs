//! Grothendieck-Witt valued enumerative machinery.
//!
//! The crate is layered bottom-up:
//!
//! * [`gw`]: base fields, square classes and arithmetic in GW(k) with a
//!   complete equality test over finite fields, real closed fields and Q.
//! * [`etale`]: étale algebras, their Galois sets, orbit decompositions and
//!   trace forms.
//! * [`binom`]: enriched and twisted binomial coefficients together with the
//!   closed-form identities they satisfy.
//! * [`picard`]: integer lattice models of Picard groups.
//! * [`wallcross`]: invariant tables, the quadratic wall-crossing formula,
//!   degeneration sums and closed forms for quadrics and blow-ups.

pub mod binom;
pub mod error;
pub mod etale;
pub mod gw;
pub mod picard;
pub mod wallcross;

pub use error::{Error, Result};
pub use gw::{gw_eq, BaseField, GwElement, SquareClass};
