//! Smallest singular value via cyclic Jacobi diagonalization of the Hermitian
//! matrix `MᴴM`.

use super::matrix::DenseMatrix;

/// `σ_min(M)`: square root of the smallest eigenvalue of `MᴴM`, computed by
/// cyclic complex Jacobi sweeps until the off-diagonal Frobenius norm drops
/// below `1e-14 · ‖MᴴM‖_F` (or 30 sweeps).
pub fn smin(m: &DenseMatrix) -> f64 {
    let n = m.n();
    if n == 0 {
        return 0.0;
    }
    let mut b = m.adjoint().mul(m);
    let scale = b.frobenius_norm().max(f64::MIN_POSITIVE);
    let tol = 1e-14 * scale;

    for _sweep in 0..30 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += b[(p, q)].norm_sqr();
            }
        }
        if (2.0 * off).sqrt() <= tol {
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = b[(p, q)];
                if apq.norm() <= tol / (n as f64) {
                    continue;
                }
                let app = b[(p, p)].re;
                let aqq = b[(q, q)].re;
                // phase of the off-diagonal entry and classical 2x2 rotation
                let abs_apq = apq.norm();
                let phase = apq / abs_apq;
                let theta = 0.5 * (2.0 * abs_apq).atan2(app - aqq);
                let c = theta.cos();
                let s_abs = theta.sin();
                let s = phase * s_abs;
                // B <- J^H B J with J acting on the (p, q) plane:
                // col_p' = c col_p + s col_q ... derived for Hermitian B.
                for i in 0..n {
                    let bip = b[(i, p)];
                    let biq = b[(i, q)];
                    b[(i, p)] = bip * c + biq * s.conj();
                    b[(i, q)] = -bip * s + biq * c;
                }
                for j in 0..n {
                    let bpj = b[(p, j)];
                    let bqj = b[(q, j)];
                    b[(p, j)] = bpj * c + bqj * s;
                    b[(q, j)] = -bpj * s.conj() + bqj * c;
                }
                // keep the matrix numerically Hermitian on the pivot entries
                let sym = (b[(p, q)] + b[(q, p)].conj()) * 0.5;
                b[(p, q)] = sym;
                b[(q, p)] = sym.conj();
            }
        }
    }

    let min_diag = (0..n).map(|i| b[(i, i)].re).fold(f64::INFINITY, f64::min);
    min_diag.max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unitary_has_smin_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let q = DenseMatrix::random_unitary(13, &mut rng);
        assert!((smin(&q) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_smin() {
        let m = DenseMatrix::diagonal(&[Complex64::new(3.0, 0.0), Complex64::new(1e-3, 0.0)]);
        assert!((smin(&m) - 1e-3).abs() < 1e-12);
    }

    #[test]
    fn resolvent_identity_for_diagonal_normal() {
        // 1/smin(T - z) = 1/dist(z, sigma(T)) for diagonal T.
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        use rand::Rng;
        let d: Vec<Complex64> =
            (0..12).map(|_| Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-2.0..2.0))).collect();
        let t = DenseMatrix::diagonal(&d);
        for _ in 0..100 {
            let z = Complex64::new(rng.gen_range(-8.0..8.0), rng.gen_range(-4.0..4.0));
            let dist = d.iter().map(|&l| (l - z).norm()).fold(f64::INFINITY, f64::min);
            if dist < 1e-6 {
                continue;
            }
            let s = smin(&t.shift(z));
            assert!(
                (1.0 / s - 1.0 / dist).abs() <= 1e-10 * (1.0 / dist),
                "smin mismatch: {s} vs {dist}"
            );
        }
    }

    #[test]
    fn matches_eigensolver_on_hermitian_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let m = DenseMatrix::random_gaussian(10, &mut rng);
        let s = smin(&m);
        // cross-check against eigenvalues of M^H M from the QR solver
        let b = m.adjoint().mul(&m);
        let ev = crate::oplab::eig(&b).unwrap();
        let min_ev = ev.eigenvalues.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
        assert!((s - min_ev.max(0.0).sqrt()).abs() < 1e-8 * (1.0 + s));
    }
}
