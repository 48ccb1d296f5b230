//! Constructors for normal models and admissible perturbations.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{RelBound, Subordinate};

use super::matrix::DenseMatrix;

/// Normal matrix with a prescribed spectrum, kept as the diagonal plus an
/// optional unitary conjugation.
#[derive(Debug, Clone)]
pub struct NormalModel {
    pub spectrum: Vec<Complex64>,
    pub basis: Option<DenseMatrix>,
}

impl NormalModel {
    pub fn n(&self) -> usize {
        self.spectrum.len()
    }

    /// The dense matrix `Q diag(spectrum) Qᴴ` (or the plain diagonal).
    pub fn matrix(&self) -> DenseMatrix {
        let d = DenseMatrix::diagonal(&self.spectrum);
        match &self.basis {
            None => d,
            Some(q) => q.mul(&d).mul(&q.adjoint()),
        }
    }

    /// `f(|λ|)` applied spectrally: `Q diag(f(|λ_i|)) Qᴴ`.
    fn spectral_abs_fn(&self, f: impl Fn(f64) -> f64) -> DenseMatrix {
        let d: Vec<Complex64> =
            self.spectrum.iter().map(|l| Complex64::new(f(l.norm()), 0.0)).collect();
        let dm = DenseMatrix::diagonal(&d);
        match &self.basis {
            None => dm,
            Some(q) => q.mul(&dm).mul(&q.adjoint()),
        }
    }

    /// Normality defect `‖MᴴM − MMᴴ‖_F` relative to `‖M‖_F²`.
    pub fn normality_defect(&self) -> f64 {
        let m = self.matrix();
        let lhs = m.adjoint().mul(&m);
        let rhs = m.mul(&m.adjoint());
        let mut diff = 0.0;
        for i in 0..m.n() {
            for j in 0..m.n() {
                diff += (lhs[(i, j)] - rhs[(i, j)]).norm_sqr();
            }
        }
        let nf = m.frobenius_norm();
        if nf == 0.0 {
            0.0
        } else {
            diff.sqrt() / (nf * nf)
        }
    }
}

/// Build a normal model with the given spectrum, optionally conjugated by a
/// seeded random unitary.
pub fn build_normal(spectrum: &[Complex64], conjugate: bool, seed: u64) -> NormalModel {
    assert!(!spectrum.is_empty(), "spectrum must be nonempty");
    let basis = if conjugate {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Some(DenseMatrix::random_unitary(spectrum.len(), &mut rng))
    } else {
        None
    };
    NormalModel { spectrum: spectrum.to_vec(), basis }
}

/// Choice of the contraction factor `C` in `A = C · G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contraction {
    /// Random unitary (extremal: `‖Ax‖ = ‖Gx‖`).
    Unitary,
    /// Random matrix scaled to operator norm at most the given factor (≤ 1).
    SubUnitary,
}

/// Admissible relatively bounded perturbation `A = C · sqrt(a²I + b²TᴴT)`
/// with `C` a seeded contraction, so `‖Ax‖² ≤ a²‖x‖² + b²‖Tx‖²` for all `x`.
pub fn build_relbounded(
    t: &NormalModel,
    m: &RelBound,
    contraction: Contraction,
    seed: u64,
) -> DenseMatrix {
    let g = t.spectral_abs_fn(|r| (m.a * m.a + m.b * m.b * r * r).sqrt());
    let c = make_contraction(t.n(), contraction, seed);
    c.mul(&g)
}

/// Admissible p-subordinate perturbation `A = C · c·|T|^p` (diagonal
/// fractional power in the eigenbasis), so `‖Ax‖ ≤ c‖x‖^{1−p}‖Tx‖^p`.
pub fn build_subordinate(
    t: &NormalModel,
    s: &Subordinate,
    contraction: Contraction,
    seed: u64,
) -> DenseMatrix {
    let g = t.spectral_abs_fn(|r| s.c * if r == 0.0 && s.p > 0.0 { 0.0 } else { r.powf(s.p) });
    let c = make_contraction(t.n(), contraction, seed);
    c.mul(&g)
}

fn make_contraction(n: usize, kind: Contraction, seed: u64) -> DenseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    match kind {
        Contraction::Unitary => DenseMatrix::random_unitary(n, &mut rng),
        Contraction::SubUnitary => {
            let g = DenseMatrix::random_gaussian(n, &mut rng);
            let sigma = g.norm2_est(80).max(f64::MIN_POSITIVE);
            let rho: f64 = rng.gen_range(0.2..1.0);
            g.scale(Complex64::new(rho / (sigma * (1.0 + 1e-12)), 0.0))
        }
    }
}
