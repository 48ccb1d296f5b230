//! Dense square complex matrices, row-major, with the handful of operations
//! the lab needs: products, adjoints, norms, LU solves and Householder QR for
//! random unitaries.

use num_complex::Complex64;
use rand::Rng;

/// Dense square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "matrix must be square");
            data.extend(r);
        }
        Self { n, data }
    }

    pub fn diagonal(d: &[Complex64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> DenseMatrix {
        let n = self.n;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn add(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (o, v) in out.data.iter_mut().zip(&other.data) {
            *o += v;
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> DenseMatrix {
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v *= s;
        }
        out
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, other: &DenseMatrix, s: Complex64) -> DenseMatrix {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (o, v) in out.data.iter_mut().zip(&other.data) {
            *o += s * v;
        }
        out
    }

    /// `self - z I`.
    pub fn shift(&self, z: Complex64) -> DenseMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            out[(i, i)] -= z;
        }
        out
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.n);
        let n = self.n;
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                acc += self[(i, j)] * x[j];
            }
            y[i] = acc;
        }
        y
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Operator 2-norm estimate by power iteration on `MᴴM`.
    pub fn norm2_est(&self, iters: usize) -> f64 {
        let n = self.n;
        if n == 0 {
            return 0.0;
        }
        let mut x: Vec<Complex64> =
            (0..n).map(|i| Complex64::new(1.0 + (i as f64 * 0.137).sin(), (i as f64 * 0.29).cos())).collect();
        normalize(&mut x);
        let at = self.adjoint();
        let mut sigma = 0.0;
        for _ in 0..iters {
            let y = self.matvec(&x);
            let mut z = at.matvec(&y);
            sigma = norm(&z).sqrt();
            if norm(&z) == 0.0 {
                return 0.0;
            }
            normalize(&mut z);
            x = z;
        }
        let y = self.matvec(&x);
        norm(&y).max(sigma)
    }

    /// Solve `(self) x = b` by LU with partial pivoting. Returns `None` for a
    /// numerically singular pivot.
    pub fn solve(&self, b: &[Complex64]) -> Option<Vec<Complex64>> {
        let n = self.n;
        let mut lu = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut pivot = k;
            let mut best = lu[perm[k] * n + k].norm_sqr();
            for r in (k + 1)..n {
                let v = lu[perm[r] * n + k].norm_sqr();
                if v > best {
                    best = v;
                    pivot = r;
                }
            }
            if best == 0.0 {
                return None;
            }
            perm.swap(k, pivot);
            let pk = perm[k];
            let diag = lu[pk * n + k];
            for r in (k + 1)..n {
                let pr = perm[r];
                let factor = lu[pr * n + k] / diag;
                lu[pr * n + k] = factor;
                for j in (k + 1)..n {
                    let v = lu[pk * n + j];
                    lu[pr * n + j] -= factor * v;
                }
            }
        }
        // forward substitution
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = b[perm[i]];
            for j in 0..i {
                acc -= lu[perm[i] * n + j] * y[j];
            }
            y[i] = acc;
        }
        // back substitution
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for i in (0..n).rev() {
            let mut acc = y[i];
            for j in (i + 1)..n {
                acc -= lu[perm[i] * n + j] * x[j];
            }
            x[i] = acc / lu[perm[i] * n + i];
        }
        Some(x)
    }

    /// Random unitary from Householder QR of a seeded Gaussian matrix, with
    /// the R diagonal phases absorbed so the factor is deterministic.
    pub fn random_unitary(n: usize, rng: &mut impl Rng) -> DenseMatrix {
        let mut g = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = Complex64::new(gauss(rng), gauss(rng));
            }
        }
        let (q, r) = g.qr();
        // normalize column phases: Q <- Q * diag(conj(r_ii)/|r_ii|)
        let mut q = q;
        for j in 0..n {
            let d = r[(j, j)];
            let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
            for i in 0..n {
                let v = q[(i, j)] * phase;
                q[(i, j)] = v;
            }
        }
        q
    }

    /// Random matrix with iid complex Gaussian entries.
    pub fn random_gaussian(n: usize, rng: &mut impl Rng) -> DenseMatrix {
        let mut g = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = Complex64::new(gauss(rng), gauss(rng));
            }
        }
        g
    }

    /// Householder QR decomposition, `self = Q R` with `Q` unitary.
    pub fn qr(&self) -> (DenseMatrix, DenseMatrix) {
        let n = self.n;
        let mut r = self.clone();
        let mut q = DenseMatrix::identity(n);
        for k in 0..n {
            // Householder vector for column k below the diagonal.
            let mut normx = 0.0;
            for i in k..n {
                normx += r[(i, k)].norm_sqr();
            }
            let normx = normx.sqrt();
            if normx == 0.0 {
                continue;
            }
            let x0 = r[(k, k)];
            let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { Complex64::new(1.0, 0.0) };
            let alpha = -phase * normx;
            let mut v: Vec<Complex64> = (k..n).map(|i| r[(i, k)]).collect();
            v[0] -= alpha;
            let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            if vnorm2 == 0.0 {
                continue;
            }
            // apply H = I - 2 v v^H / |v|^2 from the left to R, right to Q^H.
            for j in k..n {
                let mut dot = Complex64::new(0.0, 0.0);
                for i in k..n {
                    dot += v[i - k].conj() * r[(i, j)];
                }
                let f = dot * 2.0 / vnorm2;
                for i in k..n {
                    let d = f * v[i - k];
                    r[(i, j)] -= d;
                }
            }
            for j in 0..n {
                let mut dot = Complex64::new(0.0, 0.0);
                for i in k..n {
                    dot += v[i - k].conj() * q[(j, i)].conj();
                }
                let f = dot * 2.0 / vnorm2;
                for i in k..n {
                    let d = (f * v[i - k]).conj();
                    q[(j, i)] -= d;
                }
            }
        }
        (q, r)
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        let n = self.n;
        &mut self.data[i * n + j]
    }
}

pub(crate) fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn normalize(x: &mut [Complex64]) {
    let n = norm(x);
    if n > 0.0 {
        for v in x.iter_mut() {
            *v /= n;
        }
    }
}

/// Standard normal via Box-Muller on the generic `Rng`.
pub(crate) fn gauss(rng: &mut impl Rng) -> f64 {
    loop {
        let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let v: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let g = (-2.0 * u.ln()).sqrt() * v.cos();
        if g.is_finite() {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn qr_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = DenseMatrix::random_gaussian(12, &mut rng);
        let (q, r) = m.qr();
        let qr = q.mul(&r);
        let mut diff = 0.0_f64;
        for i in 0..12 {
            for j in 0..12 {
                diff = diff.max((qr[(i, j)] - m[(i, j)]).norm());
            }
        }
        assert!(diff < 1e-12, "QR reconstruction error {diff}");
        // unitarity
        let qtq = q.adjoint().mul(&q);
        let mut u = 0.0_f64;
        for i in 0..12 {
            for j in 0..12 {
                let target = if i == j { 1.0 } else { 0.0 };
                u = u.max((qtq[(i, j)] - Complex64::new(target, 0.0)).norm());
            }
        }
        assert!(u < 1e-13, "unitarity error {u}");
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let q = DenseMatrix::random_unitary(17, &mut rng);
        let qtq = q.adjoint().mul(&q);
        for i in 0..17 {
            for j in 0..17 {
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((qtq[(i, j)] - Complex64::new(target, 0.0)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn solve_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = DenseMatrix::random_gaussian(20, &mut rng);
        let x: Vec<Complex64> = (0..20).map(|i| Complex64::new(i as f64, -(i as f64) / 3.0)).collect();
        let b = m.matvec(&x);
        let got = m.solve(&b).unwrap();
        for (a, b) in x.iter().zip(&got) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn norm2_of_unitary_is_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let q = DenseMatrix::random_unitary(15, &mut rng);
        let s = q.norm2_est(60);
        assert!((s - 1.0).abs() < 1e-10, "sigma_max of unitary = {s}");
    }
}
