//! The invariant engine.
//!
//! Invariants `N_{S, D, sigma}` are read from an [`InvariantTable`]; the
//! wall-crossing formula expresses invariants of the twisted surface through
//! those of the split one, and the closed forms for quadrics and blow-ups of
//! P^2 assemble them from Gromov-Witten and Welschinger counts. Profiles are
//! synthetic inputs on which the degeneration sums and the surgery identity
//! are checked.

mod closed;
mod formula;
mod profile;
mod table;

pub use closed::{
    blowup_general, euler_char_quadric, euler_diff, quadric_general, quadric_split, two_minus,
    two_plus,
};
pub use formula::{
    dehn_check, dehn_transport, quadratic_algebra, wall_cross, welschinger_reduction, Evaluation,
    WallTerm,
};
pub use profile::{
    check_surgery_consistency, degeneration_sum, ell_field, random_profile, restrict_class,
    surgery_sides, ProfileData, ProfileRecord, ProfileShape,
};
pub use table::{InvariantTable, MissingPolicy, TableEntry};
