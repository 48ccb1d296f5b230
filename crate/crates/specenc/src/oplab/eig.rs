//! Dense complex eigensolver: balancing, Householder reduction to upper
//! Hessenberg form, implicitly single-shifted QR with Wilkinson shifts,
//! deflation, and exceptional shifts every 10 stalled iterations. Residuals
//! come from inverse-iteration eigenvectors on the original matrix.

use num_complex::Complex64;

use super::matrix::{norm, normalize, DenseMatrix};

pub const MAX_DIM: usize = 400;

#[derive(Debug, Clone)]
pub struct EigResult {
    pub eigenvalues: Vec<Complex64>,
    pub residuals: Vec<f64>,
}

impl EigResult {
    /// Eigenvalues sorted by real part, then imaginary part.
    pub fn sorted_by_re(&self) -> Vec<Complex64> {
        let mut v = self.eigenvalues.clone();
        v.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        v
    }
}

#[derive(Debug, thiserror::Error)]
pub enum EigError {
    #[error("matrix dimension {0} exceeds the desk-scale cap {MAX_DIM}")]
    TooLarge(usize),
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("QR iteration failed to converge after {iterations} iterations")]
    NoConvergence { iterations: usize, partial: Vec<Complex64> },
}

/// Complex Givens rotation `[[c, s], [-conj(s), c]]` (c real) mapping
/// `(f, g)` to `(r, 0)`.
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    let fa = f.norm();
    let ga = g.norm();
    if ga == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if fa == 0.0 {
        return (0.0, g.conj() / ga);
    }
    let d = (fa * fa + ga * ga).sqrt();
    let c = fa / d;
    let s = (f / fa) * g.conj() / d;
    (c, s)
}

/// All eigenvalues of a dense complex matrix with residuals.
pub fn eig(m: &DenseMatrix) -> Result<EigResult, EigError> {
    let n = m.n();
    if n > MAX_DIM {
        return Err(EigError::TooLarge(n));
    }
    if !m.is_finite() {
        return Err(EigError::NonFinite);
    }
    if n == 0 {
        return Ok(EigResult { eigenvalues: vec![], residuals: vec![] });
    }
    let mut h = m.clone();
    balance(&mut h);
    hessenberg(&mut h);
    let eigenvalues = qr_eigenvalues(&mut h)?;
    let residuals = residuals_by_inverse_iteration(m, &eigenvalues);
    Ok(EigResult { eigenvalues, residuals })
}

/// Parlett-Reinsch balancing (radix 2) via diagonal similarity.
fn balance(m: &mut DenseMatrix) {
    let n = m.n();
    let radix = 2.0_f64;
    let sqrdx = radix * radix;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].norm();
                    r += m[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let mut f = 1.0;
            let mut cc = c;
            let g = r / radix;
            while cc < g {
                f *= radix;
                cc *= sqrdx;
            }
            let g = r * radix;
            while cc > g {
                f /= radix;
                cc /= sqrdx;
            }
            if (cc + r) / f < 0.95 * (c + r) {
                done = false;
                let ginv = 1.0 / f;
                for j in 0..n {
                    let v = m[(i, j)] * ginv;
                    m[(i, j)] = v;
                }
                for j in 0..n {
                    let v = m[(j, i)] * f;
                    m[(j, i)] = v;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// In-place Householder reduction to upper Hessenberg form.
fn hessenberg(m: &mut DenseMatrix) {
    let n = m.n();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let mut normx = 0.0;
        for i in (k + 1)..n {
            normx += m[(i, k)].norm_sqr();
        }
        let normx = normx.sqrt();
        if normx == 0.0 {
            continue;
        }
        let x0 = m[(k + 1, k)];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { Complex64::new(1.0, 0.0) };
        let alpha = -phase * normx;
        let mut v: Vec<Complex64> = ((k + 1)..n).map(|i| m[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // left: rows k+1..n
        for j in k..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for i in (k + 1)..n {
                dot += v[i - k - 1].conj() * m[(i, j)];
            }
            let f = dot * 2.0 / vnorm2;
            for i in (k + 1)..n {
                let d = f * v[i - k - 1];
                m[(i, j)] -= d;
            }
        }
        // right: cols k+1..n
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for j in (k + 1)..n {
                dot += m[(i, j)] * v[j - k - 1];
            }
            let f = dot * 2.0 / vnorm2;
            for j in (k + 1)..n {
                let d = f * v[j - k - 1].conj();
                m[(i, j)] -= d;
            }
        }
        // clean the annihilated part
        m[(k + 1, k)] = alpha;
        for i in (k + 2)..n {
            m[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

/// Eigenvalues of an upper Hessenberg matrix by implicitly shifted QR.
fn qr_eigenvalues(h: &mut DenseMatrix) -> Result<Vec<Complex64>, EigError> {
    let n = h.n();
    let mut eigs: Vec<Complex64> = Vec::with_capacity(n);
    if n == 1 {
        return Ok(vec![h[(0, 0)]]);
    }
    let hnorm = h.frobenius_norm().max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;
    let max_iters = 30 * n;
    let mut total_iters = 0usize;
    let mut hi = n - 1;
    let mut stalls = 0usize;
    loop {
        // deflate converged subdiagonals
        let mut lo = hi;
        while lo > 0 {
            let s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            let s = if s == 0.0 { hnorm } else { s };
            if h[(lo, lo - 1)].norm() <= eps * s {
                h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eigs.push(h[(hi, hi)]);
            if hi == 0 {
                break;
            }
            hi -= 1;
            stalls = 0;
            if hi == 0 {
                eigs.push(h[(0, 0)]);
                break;
            }
            continue;
        }
        if total_iters >= max_iters {
            let mut partial = eigs.clone();
            for i in 0..=hi {
                partial.push(h[(i, i)]);
            }
            return Err(EigError::NoConvergence { iterations: total_iters, partial });
        }
        total_iters += 1;
        stalls += 1;

        // shift selection
        let shift = if stalls > 0 && stalls % 10 == 0 {
            // exceptional shift to break symmetry-induced stalls
            let s = h[(hi, hi - 1)].norm()
                + if hi >= 2 { h[(hi - 1, hi - 2)].norm() } else { 0.0 };
            h[(hi, hi)] + Complex64::from_polar(1.5 * s, 0.7 * stalls as f64)
        } else {
            wilkinson_shift(h, hi)
        };

        // implicit single-shift sweep on [lo, hi]
        let mut x = h[(lo, lo)] - shift;
        let mut y = h[(lo + 1, lo)];
        for k in lo..hi {
            let (c, s) = givens(x, y);
            let kp = k + 1;
            // left rotation on rows k, k+1
            let jstart = k.saturating_sub(1).max(lo);
            for j in jstart..n {
                let a = h[(k, j)];
                let b = h[(kp, j)];
                h[(k, j)] = a * c + b * s;
                h[(kp, j)] = -a * s.conj() + b * c;
            }
            // right rotation on cols k, k+1
            let iend = (k + 2).min(hi);
            for i in 0..=iend {
                let a = h[(i, k)];
                let b = h[(i, kp)];
                h[(i, k)] = a * c + b * s.conj();
                h[(i, kp)] = -a * s + b * c;
            }
            if k < hi - 1 {
                x = h[(k + 1, k)];
                y = h[(k + 2, k)];
            }
        }
    }
    Ok(eigs)
}

/// Eigenvalue of the trailing 2x2 block closest to the corner entry.
fn wilkinson_shift(h: &DenseMatrix, hi: usize) -> Complex64 {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let tr2 = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powu(2) + b * c;
    let root = disc.sqrt();
    let l1 = tr2 + root;
    let l2 = tr2 - root;
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Residual `‖Mv − λv‖ / ‖M‖_F` with `v` from two steps of inverse iteration.
fn residuals_by_inverse_iteration(m: &DenseMatrix, eigenvalues: &[Complex64]) -> Vec<f64> {
    let n = m.n();
    let mnorm = m.frobenius_norm().max(f64::MIN_POSITIVE);
    eigenvalues
        .iter()
        .map(|&lambda| {
            let mut best = f64::INFINITY;
            // progressively larger shift perturbations if the solve is singular
            for attempt in 0..4 {
                let delta = 10.0_f64.powi(-12 + 2 * attempt) * mnorm;
                let shifted = m.shift(lambda + Complex64::new(delta, delta * 0.5));
                let mut v: Vec<Complex64> = (0..n)
                    .map(|i| {
                        Complex64::new(
                            (0.7 + i as f64 * 0.3183).sin(),
                            (0.2 + i as f64 * 0.7273).cos(),
                        )
                    })
                    .collect();
                normalize(&mut v);
                let mut ok = true;
                for _ in 0..3 {
                    match shifted.solve(&v) {
                        Some(mut w) => {
                            normalize(&mut w);
                            v = w;
                        }
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    continue;
                }
                let mv = m.matvec(&v);
                let r: Vec<Complex64> =
                    mv.iter().zip(&v).map(|(a, b)| a - lambda * b).collect();
                best = best.min(norm(&r) / mnorm);
                if best < 1e-10 {
                    break;
                }
            }
            best
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oplab::matrix::DenseMatrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sort_c(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        v
    }

    #[test]
    fn diagonal_matrix() {
        let d = vec![
            Complex64::new(1.0, 2.0),
            Complex64::new(-3.0, 0.5),
            Complex64::new(0.0, -1.0),
            Complex64::new(4.0, 0.0),
        ];
        let m = DenseMatrix::diagonal(&d);
        let r = eig(&m).unwrap();
        let got = sort_c(r.eigenvalues);
        let want = sort_c(d);
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).norm() < 1e-13);
        }
        assert!(r.residuals.iter().all(|&x| x < 1e-13));
    }

    #[test]
    fn symmetric_2x2_closed_form() {
        let a = 0.8;
        let m = DenseMatrix::from_rows(vec![
            vec![Complex64::new(2.0, 0.0), Complex64::new(a, 0.0)],
            vec![Complex64::new(a, 0.0), Complex64::new(-2.0, 0.0)],
        ]);
        let r = eig(&m).unwrap();
        let want = (4.0 + a * a).sqrt();
        let got = sort_c(r.eigenvalues);
        assert!((got[0].re + want).abs() < 1e-12);
        assert!((got[1].re - want).abs() < 1e-12);
    }

    #[test]
    fn random_normal_matrix_matches_prescribed_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let d: Vec<Complex64> = (0..24)
            .map(|i| Complex64::new((i as f64 * 0.917).sin() * 5.0, (i as f64 * 0.37).cos() * 2.0))
            .collect();
        let q = DenseMatrix::random_unitary(24, &mut rng);
        let m = q.mul(&DenseMatrix::diagonal(&d)).mul(&q.adjoint());
        let r = eig(&m).unwrap();
        let got = sort_c(r.eigenvalues);
        let want = sort_c(d);
        let scale = m.frobenius_norm();
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).norm() < 1e-8 * scale, "got {g}, want {w}");
        }
    }

    #[test]
    fn residuals_small_for_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for &n in &[4usize, 9, 17, 33] {
            let m = DenseMatrix::random_gaussian(n, &mut rng);
            let r = eig(&m).unwrap();
            assert_eq!(r.eigenvalues.len(), n);
            let worst = r.residuals.iter().cloned().fold(0.0, f64::max);
            assert!(worst < 1e-8, "n={n}: residual {worst}");
        }
    }

    #[test]
    fn dimension_cap() {
        let m = DenseMatrix::zeros(MAX_DIM + 1);
        assert!(matches!(eig(&m), Err(EigError::TooLarge(_))));
    }
}
