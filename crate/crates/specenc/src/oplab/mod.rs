//! Finite-dimensional validation laboratory.
//!
//! Builds desk-scale normal matrices with prescribed spectra, admissible
//! relatively-bounded or subordinate perturbations, computes eigenvalues and
//! smallest singular values with hand-rolled dense solvers, and runs the
//! soundness, resolvent-bound and multiplicity-homotopy checks against the
//! enclosure engine.

mod build;
mod eig;
mod jacobi;
mod matrix;
mod verify;

pub mod scenarios;

pub use build::{build_normal, build_relbounded, build_subordinate, Contraction, NormalModel};
pub use eig::{eig, EigError, EigResult};
pub use jacobi::smin;
pub use matrix::DenseMatrix;
pub use verify::{
    homotopy_multiplicity, strictly_inside_with_margin, verify_enclosure, verify_resolvent_bound,
    BoundVerdict, HomotopyOutcome, Verdict,
};
