//! Finite-dimensional systems of subspaces and the projection tuples that
//! generate them.
//!
//! The crate builds the standard catalogues (transitive systems of one, two
//! and three subspaces, Brenner's transitive quadruples, the irreducible
//! quadruples of projections summing to a scalar), decides transitivity,
//! indecomposability and isomorphism numerically, and implements the
//! reflection functors `T` and `S` between tuples of projections.

pub mod brenner;
pub mod endo;
pub mod error;
pub mod functors;
pub mod iso;
pub mod linalg;
pub mod par;
pub mod reps;
pub mod sigma;
pub mod subspace;
pub mod tolerance;
pub mod triple;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, C64};
pub use subspace::{ProjectionTuple, Subspace, SubspaceSystem};
pub use tolerance::TolerancePolicy;
