//! Spectral enclosures for perturbed normal operators.
//!
//! Given a normal operator `T` whose spectrum satisfies a geometric hypothesis
//! (bounded imaginary part, a gapped strip, a bisector, a disk complement, ...)
//! and a perturbation `A` that is either relatively bounded (`‖Ax‖² ≤ a²‖x‖² +
//! b²‖Tx‖²`, `b < 1`) or p-subordinate (`‖Ax‖ ≤ c‖x‖^{1−p}‖Tx‖^p`), this crate
//! computes regions of the complex plane that are guaranteed to belong to the
//! resolvent set of `T + A`, together with explicit resolvent-norm bounds where
//! available.
//!
//! The crate is organised in five modules:
//!
//! * [`regions`] — exact membership predicates and boundary samplers for the
//!   primitive plane regions (hyperbola interiors, sectors, strips, disks,
//!   parabolic regions) and boolean combinations of them.
//! * [`bounds`] — the function `H_z(t) = (a² + b²|t|²)/|t−z|²`, closed-form
//!   suprema of `H_z` over lines, strips, sectors and gapped planes, and a
//!   brute-force sampling oracle used to validate every closed form.
//! * [`enclosures`] — the theorem engine mapping (hypothesis, perturbation)
//!   to [`enclosures::EnclosureReport`]s.
//! * [`oplab`] — a finite-dimensional laboratory: dense complex eigensolver,
//!   smallest-singular-value oracle, constructors for normal models and
//!   admissible perturbations, and soundness/homotopy verification.
//! * [`stargraph`] — Schrödinger operators on a star graph with a Robin
//!   condition at the central vertex: secular equation, root finding, a
//!   finite-difference discretization and gap-persistence reports.

pub mod bounds;
pub mod enclosures;
pub mod oplab;
pub mod regions;
pub mod stargraph;

pub use num_complex::Complex64;
