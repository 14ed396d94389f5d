//! Base fields, square classes and the Grothendieck-Witt ring.
//!
//! Equality in GW(k) is decided by complete invariants: rank and discriminant
//! over F_q, rank and signature over a real closed field, and rank, signature,
//! discriminant and local Hasse invariants over Q.

pub(crate) mod arith;
mod element;
mod field;
mod format;
mod hilbert;
mod invariants;
mod mass;

pub use element::{gw_add, gw_mul, gw_neg, gw_sub, GwElement};
pub use field::{sq_class, BaseField, FieldValue, SquareClass};
pub use format::{format_compact, format_gw, parse_gw, FormatOptions};
pub use hilbert::{hilbert_symbol, hilbert_symbol_q, Place};
pub use invariants::{gw_eq, gw_invariants, GwInvariants};
pub use mass::{curve_weight, mass, CurveExtension, NodeDelta};
