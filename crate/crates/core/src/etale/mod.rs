//! Finite étale algebras, their Galois sets and trace forms.
//!
//! Over F_q an algebra is a product of F_{q^m} and the Galois set is a union
//! of Frobenius cycles. Over Q and R only multiquadratic factors are modeled;
//! their Galois sets carry an action of (Z/2)^s dual to an F_2 basis of the
//! span of the square classes involved.

mod algebra;
mod f2;
pub mod ffield;
mod galois;
mod trace;

pub use algebra::{ClassToken, EtaleAlgebra, FactorInput, FactorSpec};
pub use galois::{
    algebra_of_decomposition, fiber_set, orbits, subset_action, twisted_fiber, GaloisSet,
    GroupKind, Orbit, OrbitDecomposition, TwistedFiber,
};
pub use trace::{factor_trace_form, scaled_trace, trace_form, transfer_finite, ScaleElement};
