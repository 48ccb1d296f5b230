//! Schrödinger operators on a star graph: `n` edges of lengths `a_j` with
//! Dirichlet conditions at the outer vertices and, at the central vertex,
//! continuity plus the Robin-type condition `Σ_j (ψ_j(0) + c ψ_j'(0)) = 0`
//! (Neumann–Kirchhoff for `c = ∞`).
//!
//! With `ψ_j(x) = C_j sin(k(a_j − x))` the vertex conditions reduce to the
//! secular equation
//!
//! ```text
//! F(k) = n Π_j sin(k a_j) − c k Σ_j cos(k a_j) Π_{i≠j} sin(k a_i) = 0
//! ```
//!
//! whose nonzero roots give the eigenvalues `λ = k²`. For `c = ∞` the factor
//! in front of `c` must vanish instead. `F` is entire, so root counts inside
//! a rectangle can be cross-checked by the argument principle.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::Subordinate;
use crate::enclosures::psub_strip;
use crate::oplab::DenseMatrix;
use crate::regions::Window;

/// Central-vertex coupling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coupling {
    /// `Σ_j (ψ_j(0) + c ψ_j'(0)) = 0`.
    Robin(Complex64),
    /// Neumann–Kirchhoff: `Σ_j ψ_j'(0) = 0` (the `c = ∞` limit).
    Kirchhoff,
}

impl Coupling {
    pub fn is_real(&self) -> bool {
        match self {
            Coupling::Robin(c) => c.im == 0.0,
            Coupling::Kirchhoff => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarGraph {
    pub lengths: Vec<f64>,
    pub coupling: Coupling,
}

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("invalid graph: {0}")]
    Invalid(&'static str),
    #[error("grid too coarse: need at least 8 intervals per edge")]
    TooCoarse,
    #[error("discretization exceeds the size cap of {0} unknowns")]
    TooLarge(usize),
    #[error("vertex elimination is singular at this grid; change the resolution")]
    SingularVertex,
    #[error("the secular function nearly vanishes on the window boundary; nudge the window")]
    WindowTouchesRoot,
}

impl StarGraph {
    pub fn new(lengths: Vec<f64>, coupling: Coupling) -> Result<Self, GraphError> {
        if lengths.is_empty() {
            return Err(GraphError::Invalid("needs at least one edge"));
        }
        if lengths.iter().any(|&a| !(a > 0.0) || !a.is_finite()) {
            return Err(GraphError::Invalid("edge lengths must be positive and finite"));
        }
        Ok(Self { lengths, coupling })
    }

    pub fn n_edges(&self) -> usize {
        self.lengths.len()
    }

    /// `|Γ| = Σ a_j`.
    pub fn total_length(&self) -> f64 {
        self.lengths.iter().sum()
    }

    /// `c_Γ = n (Σ 1/a_j)^{-1}`: zero is an eigenvalue exactly for `c = c_Γ`.
    pub fn c_gamma(&self) -> f64 {
        self.n_edges() as f64 / self.lengths.iter().map(|a| 1.0 / a).sum::<f64>()
    }

    /// Whether `λ = 0` is an eigenvalue.
    pub fn zero_is_eigenvalue(&self) -> bool {
        match self.coupling {
            Coupling::Robin(c) => (c - self.c_gamma()).norm() < 1e-14 * (1.0 + c.norm()),
            Coupling::Kirchhoff => false,
        }
    }
}

/// The secular function `F(k)`.
pub fn secular(g: &StarGraph, k: Complex64) -> Complex64 {
    let n = g.n_edges();
    let sines: Vec<Complex64> = g.lengths.iter().map(|&a| (k * a).sin()).collect();
    let cosines: Vec<Complex64> = g.lengths.iter().map(|&a| (k * a).cos()).collect();
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let mut prod = cosines[j];
        for i in 0..n {
            if i != j {
                prod *= sines[i];
            }
        }
        sum += prod;
    }
    match g.coupling {
        Coupling::Kirchhoff => sum,
        Coupling::Robin(c) => {
            let full: Complex64 = sines.iter().product();
            full * n as f64 - c * k * sum
        }
    }
}

/// Analytic derivative `F'(k)`.
pub fn secular_derivative(g: &StarGraph, k: Complex64) -> Complex64 {
    let n = g.n_edges();
    let s: Vec<Complex64> = g.lengths.iter().map(|&a| (k * a).sin()).collect();
    let co: Vec<Complex64> = g.lengths.iter().map(|&a| (k * a).cos()).collect();
    let prod_skip = |skip: &[usize]| -> Complex64 {
        let mut p = Complex64::new(1.0, 0.0);
        for i in 0..n {
            if !skip.contains(&i) {
                p *= s[i];
            }
        }
        p
    };
    // d/dk of S = sum_j cos_j prod_{i != j} sin_i
    let mut ds = Complex64::new(0.0, 0.0);
    for j in 0..n {
        ds -= g.lengths[j] * s[j] * prod_skip(&[j]);
        for l in 0..n {
            if l != j {
                ds += g.lengths[l] * co[j] * co[l] * prod_skip(&[j, l]);
            }
        }
    }
    let sum: Complex64 = (0..n).map(|j| co[j] * prod_skip(&[j])).sum();
    match g.coupling {
        Coupling::Kirchhoff => ds,
        Coupling::Robin(c) => {
            let dp: Complex64 = (0..n).map(|j| g.lengths[j] * co[j] * prod_skip(&[j])).sum();
            dp * n as f64 - c * sum - c * k * ds
        }
    }
}

/// Local scale against which a root residual of `F` is measured: the sum of
/// the magnitudes of the additive terms of `F(k)`, floored by
/// `|F'(k)|(1 + |k|)` so that resonance-type roots (where every term of `F`
/// itself vanishes) still get a meaningful relative residual.
pub fn secular_scale(g: &StarGraph, k: Complex64) -> f64 {
    let n = g.n_edges();
    let s: Vec<f64> = g.lengths.iter().map(|&a| (k * a).sin().norm()).collect();
    let co: Vec<f64> = g.lengths.iter().map(|&a| (k * a).cos().norm()).collect();
    let mut sum = 0.0;
    for j in 0..n {
        let mut prod = co[j];
        for i in 0..n {
            if i != j {
                prod *= s[i];
            }
        }
        sum += prod;
    }
    let terms = match g.coupling {
        Coupling::Kirchhoff => sum,
        Coupling::Robin(c) => n as f64 * s.iter().product::<f64>() + c.norm() * k.norm() * sum,
    };
    let slope = secular_derivative(g, k).norm() * (1.0 + k.norm());
    terms.max(slope).max(f64::MIN_POSITIVE)
}

/// Computed spectrum: `k` values, eigenvalues `λ = k²` ordered by real part,
/// secular residuals, and the argument-principle completeness cross-check.
#[derive(Debug, Clone, Serialize)]
pub struct GraphSpectrum {
    pub ks: Vec<Complex64>,
    pub eigenvalues: Vec<Complex64>,
    pub residuals: Vec<f64>,
    /// True when the winding count over the search window matches the number
    /// of returned roots (the `k = 0` zero of order `n` is discounted).
    pub complete: bool,
    pub winding_count: Option<i64>,
    pub found_count: usize,
}

/// Root-search options.
#[derive(Debug, Clone, Copy)]
pub struct FindOpts {
    /// Real-axis scan step as a fraction of `π/|Γ|` (default 0.02).
    pub grid_fraction: f64,
    /// Relative residual acceptance per root.
    pub residual_tol: f64,
    /// Newton iterations per seed (complex coupling).
    pub max_newton: usize,
    /// Seeds per unit length along each window axis (complex coupling).
    pub seeds_per_unit: f64,
}

impl Default for FindOpts {
    fn default() -> Self {
        Self { grid_fraction: 0.02, residual_tol: 1e-9, max_newton: 60, seeds_per_unit: 8.0 }
    }
}

/// Find the eigenvalues with `k` in the given window. Roots come in `±k`
/// pairs with equal `λ = k²`, so only the canonical representatives are
/// returned: `Re k > 0`, plus the upper imaginary axis (negative eigenvalues
/// of Robin couplings) when the window reaches `Re k ≤ 0`. Real couplings are
/// handled by bracketing on the two axes, complex couplings by Newton
/// iteration from a seeded grid. Completeness is cross-checked by the winding
/// number of `F` over the searched subwindows; `k = 0` (a zero of `F` of
/// order `n` that is an eigenvalue only for `c = c_Γ`) is excluded.
pub fn find_eigs(g: &StarGraph, window: &Window, opts: &FindOpts) -> Result<GraphSpectrum, GraphError> {
    let xi = 1e-3 / g.total_length().max(1.0);
    let scan_axis = window.x0 <= 0.0 && window.y1 > 2.0 * xi;
    let w_pos = if window.x1 > window.x0.max(xi) {
        Some(Window {
            x0: window.x0.max(xi),
            x1: window.x1,
            y0: window.y0,
            y1: window.y1,
        })
    } else {
        None
    };
    let w_axis =
        if scan_axis { Some(Window { x0: -xi, x1: xi, y0: 2.0 * xi, y1: window.y1 }) } else { None };

    let mut ks: Vec<Complex64> = Vec::new();
    if g.coupling.is_real() {
        if let Some(w) = &w_pos {
            let step = opts.grid_fraction * std::f64::consts::PI / g.total_length();
            let fr = |x: f64| secular(g, Complex64::new(x, 0.0)).re;
            ks.extend(
                scan_real_roots(fr, w.x0, w.x1, step).into_iter().map(|x| Complex64::new(x, 0.0)),
            );
        }
        if let Some(w) = &w_axis {
            // k = i kappa: F(i kappa) = i^n G(kappa) with G real for real c
            let n = g.n_edges() as i32;
            let rot = Complex64::new(0.0, 1.0).powi(n);
            let gr = |kappa: f64| (secular(g, Complex64::new(0.0, kappa)) / rot).re;
            let step = (0.05 / g.total_length().max(1.0)).max(0.01);
            ks.extend(
                scan_real_roots(gr, w.y0, w.y1, step)
                    .into_iter()
                    .map(|kappa| Complex64::new(0.0, kappa)),
            );
        }
    } else {
        let mut seeds = Vec::new();
        if let Some(w) = &w_pos {
            let nx = (((w.x1 - w.x0) * opts.seeds_per_unit * g.total_length()).ceil() as usize)
                .clamp(8, 4000);
            let ny = (((w.y1 - w.y0) * opts.seeds_per_unit * g.total_length()).ceil() as usize)
                .clamp(4, 200);
            for i in 0..=nx {
                for j in 0..=ny {
                    seeds.push(Complex64::new(
                        w.x0 + (w.x1 - w.x0) * i as f64 / nx as f64,
                        w.y0 + (w.y1 - w.y0) * j as f64 / ny as f64,
                    ));
                }
            }
        }
        if let Some(w) = &w_axis {
            let ny = (((w.y1 - w.y0) * opts.seeds_per_unit * g.total_length()).ceil() as usize)
                .clamp(8, 400);
            for j in 0..=ny {
                seeds.push(Complex64::new(0.0, w.y0 + (w.y1 - w.y0) * j as f64 / ny as f64));
            }
        }
        for seed in seeds {
            if let Some(root) = newton(g, seed, opts.max_newton) {
                // canonical representative: Re k > 0 or on the upper
                // imaginary axis
                let root = if root.re < 0.0 || (root.re == 0.0 && root.im < 0.0) { -root } else { root };
                let in_pos = w_pos.as_ref().is_some_and(|w| w.contains(root));
                let in_axis = w_axis.as_ref().is_some_and(|w| w.contains(root));
                if in_pos || in_axis {
                    push_dedup(&mut ks, root);
                }
            }
        }
    }

    // polish (complex path) and filter by the relative residual
    let mut roots: Vec<Complex64> = Vec::new();
    let mut residuals: Vec<f64> = Vec::new();
    for &k0 in &ks {
        let k = if g.coupling.is_real() { k0 } else { newton(g, k0, 30).unwrap_or(k0) };
        let r = secular(g, k).norm() / secular_scale(g, k);
        let in_pos = w_pos.as_ref().is_some_and(|w| w.contains(k));
        let in_axis = w_axis.as_ref().is_some_and(|w| w.contains(k));
        if r <= opts.residual_tol && (in_pos || in_axis) && push_dedup(&mut roots, k) {
            residuals.push(r);
        }
    }

    // order by Re(lambda)
    let mut order: Vec<usize> = (0..roots.len()).collect();
    let lambdas: Vec<Complex64> = roots.iter().map(|k| k * k).collect();
    order.sort_by(|&i, &j| {
        (lambdas[i].re, lambdas[i].im).partial_cmp(&(lambdas[j].re, lambdas[j].im)).unwrap()
    });
    let ks: Vec<Complex64> = order.iter().map(|&i| roots[i]).collect();
    let eigenvalues: Vec<Complex64> = order.iter().map(|&i| lambdas[i]).collect();
    let residuals: Vec<f64> = order.iter().map(|&i| residuals[i]).collect();

    // completeness by the argument principle over each searched subwindow
    let mut complete = true;
    let mut total_winding: i64 = 0;
    let mut winding_ok = true;
    for (w, label_axis) in
        [(&w_pos, false), (&w_axis, true)].iter().filter_map(|(w, l)| w.as_ref().map(|w| (w, *l)))
    {
        match winding_count(g, w) {
            Ok(wc) => {
                total_winding += wc;
                let found = ks.iter().filter(|k| w.contains(**k)).count() as i64;
                if wc != found {
                    complete = false;
                }
                let _ = label_axis;
            }
            Err(_) => {
                complete = false;
                winding_ok = false;
            }
        }
    }

    Ok(GraphSpectrum {
        found_count: ks.len(),
        ks,
        eigenvalues,
        residuals,
        complete,
        winding_count: winding_ok.then_some(total_winding),
    })
}

fn push_dedup(roots: &mut Vec<Complex64>, k: Complex64) -> bool {
    let tol = 1e-7 * (1.0 + k.norm());
    if roots.iter().any(|r| (r - k).norm() < tol) {
        return false;
    }
    roots.push(k);
    true
}

fn scan_real_roots(f: impl Fn(f64) -> f64, lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let n = ((hi - lo) / step).ceil() as usize;
    let mut prev_x = lo;
    let mut prev_f = f(lo);
    for i in 1..=n {
        let x = lo + (hi - lo) * i as f64 / n as f64;
        let fx = f(x);
        if prev_f == 0.0 {
            out.push(prev_x);
        } else if prev_f * fx < 0.0 {
            // bisection then a secant polish
            let (mut a, mut b, mut fa) = (prev_x, x, prev_f);
            for _ in 0..80 {
                let m = 0.5 * (a + b);
                let fm = f(m);
                if fa * fm <= 0.0 {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            out.push(0.5 * (a + b));
        }
        prev_x = x;
        prev_f = fx;
    }
    out
}

fn newton(g: &StarGraph, seed: Complex64, iters: usize) -> Option<Complex64> {
    let mut k = seed;
    for _ in 0..iters {
        let f = secular(g, k);
        let df = secular_derivative(g, k);
        if df.norm() == 0.0 {
            return None;
        }
        let delta = f / df;
        k -= delta;
        if !k.re.is_finite() || !k.im.is_finite() {
            return None;
        }
        if delta.norm() < 1e-14 * (1.0 + k.norm()) {
            return Some(k);
        }
    }
    let r = secular(g, k).norm() / secular_scale(g, k);
    if r < 1e-8 {
        Some(k)
    } else {
        None
    }
}

/// Winding number of `F` along the window boundary, by phase tracking with
/// adaptive bisection of segments whose phase jump exceeds `π/2`.
pub fn winding_count(g: &StarGraph, window: &Window) -> Result<i64, GraphError> {
    let corners = [
        Complex64::new(window.x0, window.y0),
        Complex64::new(window.x1, window.y0),
        Complex64::new(window.x1, window.y1),
        Complex64::new(window.x0, window.y1),
    ];
    let mut pts: Vec<Complex64> = Vec::new();
    let per_side = 256;
    for s in 0..4 {
        let a = corners[s];
        let b = corners[(s + 1) % 4];
        for i in 0..per_side {
            pts.push(a + (b - a) * (i as f64 / per_side as f64));
        }
    }
    pts.push(corners[0]);

    let scale_floor = |k: Complex64| 1e-12 * secular_scale(g, k);
    let mut total = 0.0;
    let mut prev = secular(g, pts[0]);
    if prev.norm() < scale_floor(pts[0]) {
        return Err(GraphError::WindowTouchesRoot);
    }
    for w in pts.windows(2) {
        total += phase_step(g, w[0], w[1], prev, &mut |k, v| {
            if v.norm() < scale_floor(k) {
                Err(GraphError::WindowTouchesRoot)
            } else {
                Ok(())
            }
        })?;
        prev = secular(g, w[1]);
    }
    Ok((total / (2.0 * std::f64::consts::PI)).round() as i64)
}

/// Phase change of `F` along the segment, bisecting until each step turns by
/// less than `π/2`.
fn phase_step(
    g: &StarGraph,
    a: Complex64,
    b: Complex64,
    fa: Complex64,
    guard: &mut impl FnMut(Complex64, Complex64) -> Result<(), GraphError>,
) -> Result<f64, GraphError> {
    fn rec(
        g: &StarGraph,
        a: Complex64,
        b: Complex64,
        fa: Complex64,
        fb: Complex64,
        depth: usize,
        guard: &mut impl FnMut(Complex64, Complex64) -> Result<(), GraphError>,
    ) -> Result<f64, GraphError> {
        let d = (fb / fa).arg();
        if d.abs() < std::f64::consts::FRAC_PI_2 || depth >= 40 {
            return Ok(d);
        }
        let mid = (a + b) * 0.5;
        let fm = secular(g, mid);
        guard(mid, fm)?;
        Ok(rec(g, a, mid, fa, fm, depth + 1, guard)? + rec(g, mid, b, fm, fb, depth + 1, guard)?)
    }
    let fb = secular(g, b);
    guard(b, fb)?;
    rec(g, a, b, fa, fb, 0, guard)
}

// ---------------------------------------------------------------------------
// finite differences
// ---------------------------------------------------------------------------

/// Potential term added to `−ψ″` on the edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Potential {
    Zero,
    Constant(Complex64),
    /// One constant per edge.
    PerEdge(Vec<Complex64>),
    /// Sampled at the interior nodes of each edge (lengths must match the
    /// grid: `m_j − 1` values on edge `j`).
    Sampled(Vec<Vec<Complex64>>),
}

impl Potential {
    fn value(&self, edge: usize, node: usize) -> Result<Complex64, GraphError> {
        match self {
            Potential::Zero => Ok(Complex64::new(0.0, 0.0)),
            Potential::Constant(v) => Ok(*v),
            Potential::PerEdge(vs) => {
                vs.get(edge).copied().ok_or(GraphError::Invalid("potential/edge count mismatch"))
            }
            Potential::Sampled(vs) => vs
                .get(edge)
                .and_then(|col| col.get(node - 1))
                .copied()
                .ok_or(GraphError::Invalid("sampled potential does not match the grid")),
        }
    }
}

/// Number of intervals per edge for a resolution of `points_per_unit`.
pub fn grid_intervals(g: &StarGraph, points_per_unit: f64) -> Vec<usize> {
    g.lengths.iter().map(|&a| (points_per_unit * a).round().max(8.0) as usize).collect()
}

/// Second-order finite-difference discretization of `−ψ″ + Vψ` on the graph:
/// central differences on edge interiors, Dirichlet elimination at the outer
/// vertices, one shared central value with continuity built in, and the
/// vertex condition discretized by one-sided second-order differences
/// `ψ'(0) ≈ (−3ψ(0) + 4ψ(h) − ψ(2h))/(2h)` and eliminated.
pub fn discretize(
    g: &StarGraph,
    potential: &Potential,
    points_per_unit: f64,
) -> Result<DenseMatrix, GraphError> {
    let n = g.n_edges();
    let ms = grid_intervals(g, points_per_unit);
    if g.lengths.iter().any(|&a| points_per_unit * a < 8.0 - 1e-9) {
        return Err(GraphError::TooCoarse);
    }
    let hs: Vec<f64> = g.lengths.iter().zip(&ms).map(|(&a, &m)| a / m as f64).collect();
    let sizes: Vec<usize> = ms.iter().map(|&m| m - 1).collect();
    let dim: usize = sizes.iter().sum();
    if dim > 400 {
        return Err(GraphError::TooLarge(400));
    }
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0usize, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();

    // vertex elimination: u_c = Σ_l w_l (4 u_{l,1} − u_{l,2})
    let ws: Vec<Complex64> = match g.coupling {
        Coupling::Kirchhoff => {
            let denom: f64 = hs.iter().map(|&h| 3.0 / (2.0 * h)).sum();
            hs.iter().map(|&h| Complex64::new(1.0 / (2.0 * h) / denom, 0.0)).collect()
        }
        Coupling::Robin(c) => {
            let denom = Complex64::new(n as f64, 0.0)
                - c * hs.iter().map(|&h| 3.0 / (2.0 * h)).sum::<f64>();
            let scale: f64 = hs.iter().map(|&h| 3.0 / (2.0 * h)).sum();
            if denom.norm() < 1e-10 * (n as f64 + c.norm() * scale) {
                return Err(GraphError::SingularVertex);
            }
            hs.iter().map(|&h| -c / (2.0 * h) / denom).collect()
        }
    };

    let mut mat = DenseMatrix::zeros(dim);
    for j in 0..n {
        let h2 = hs[j] * hs[j];
        let o = offsets[j];
        for i in 1..ms[j] {
            let r = o + i - 1;
            mat[(r, r)] = Complex64::new(2.0 / h2, 0.0) + potential.value(j, i)?;
            if i > 1 {
                mat[(r, r - 1)] = Complex64::new(-1.0 / h2, 0.0);
            }
            if i < ms[j] - 1 {
                mat[(r, r + 1)] = Complex64::new(-1.0 / h2, 0.0);
            }
        }
        // the i = 1 equation couples to u_c = Σ_l w_l (4u_{l,1} − u_{l,2})
        let r = o;
        for l in 0..n {
            let ol = offsets[l];
            let wl = ws[l];
            mat[(r, ol)] += -wl * 4.0 / h2;
            if sizes[l] >= 2 {
                mat[(r, ol + 1)] += wl / h2;
            }
        }
    }
    Ok(mat)
}

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

/// Least-squares fit of `Re λ_m` against `(m², m, 1)` plus the gap sequence.
#[derive(Debug, Clone, Serialize)]
pub struct WeylReport {
    pub slope: f64,
    pub linear: f64,
    pub constant: f64,
    pub expected_slope: f64,
    pub rel_slope_err: f64,
    /// `Re λ_{m+1} − Re λ_m`.
    pub gaps: Vec<f64>,
    /// Fitted linear growth rate of the gap sequence (reported, not asserted).
    pub gap_trend: f64,
}

/// Weyl-law fit: needs at least 20 eigenvalues.
pub fn weyl_gap_report(s: &GraphSpectrum, total_length: f64) -> Result<WeylReport, GraphError> {
    let m_count = s.eigenvalues.len();
    if m_count < 20 {
        return Err(GraphError::Invalid("need at least 20 eigenvalues for the Weyl fit"));
    }
    // normal equations for y = slope m^2 + linear m + constant
    let mut ata = [[0.0_f64; 3]; 3];
    let mut atb = [0.0_f64; 3];
    for (i, l) in s.eigenvalues.iter().enumerate() {
        let m = (i + 1) as f64;
        let row = [m * m, m, 1.0];
        for p in 0..3 {
            for q in 0..3 {
                ata[p][q] += row[p] * row[q];
            }
            atb[p] += row[p] * l.re;
        }
    }
    let sol = solve3(ata, atb).ok_or(GraphError::Invalid("degenerate Weyl fit"))?;
    let expected = std::f64::consts::PI.powi(2) / (total_length * total_length);
    let gaps: Vec<f64> =
        s.eigenvalues.windows(2).map(|w| w[1].re - w[0].re).collect();
    // linear trend of the gaps: fit gap_m = t m + u
    let (mut sxx, mut sx, mut sxy, mut sy, mut cnt) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (i, gp) in gaps.iter().enumerate() {
        let x = (i + 1) as f64;
        sxx += x * x;
        sx += x;
        sxy += x * gp;
        sy += gp;
        cnt += 1.0;
    }
    let gap_trend = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    Ok(WeylReport {
        slope: sol[0],
        linear: sol[1],
        constant: sol[2],
        expected_slope: expected,
        rel_slope_err: (sol[0] - expected).abs() / expected,
        gaps,
        gap_trend,
    })
}

fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let det = |m: [[f64; 3]; 3]| -> f64 {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(a);
    if d.abs() < 1e-30 {
        return None;
    }
    let mut out = [0.0; 3];
    for col in 0..3 {
        let mut m = a;
        for row in 0..3 {
            m[row][col] = b[row];
        }
        out[col] = det(m) / d;
    }
    Some(out)
}

/// Gap persistence of one consecutive eigenvalue gap.
#[derive(Debug, Clone, Serialize)]
pub struct GraphGapVerdict {
    pub index: usize,
    pub lo: f64,
    pub hi: f64,
    pub width: f64,
    pub shrink: f64,
    pub open: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphGapReport {
    pub verdicts: Vec<GraphGapVerdict>,
    /// `(M, fraction of open gaps with index in [M, 2M])`.
    pub open_fractions: Vec<(usize, f64)>,
}

/// Apply the subordinate-strip theorem to every consecutive gap
/// `(Re λ_m, Re λ_{m+1})` with the given imaginary bound. The effective
/// subordination constant (absorbing the similarity transform and the
/// Gagliardo–Nirenberg factor) is supplied by the caller.
pub fn graph_gap_persistence(
    s: &GraphSpectrum,
    subordination: &Subordinate,
    gamma_t: f64,
) -> GraphGapReport {
    let mut verdicts = Vec::new();
    for (i, w) in s.eigenvalues.windows(2).enumerate() {
        let (lo, hi) = (w[0].re, w[1].re);
        if !(hi > lo) {
            verdicts.push(GraphGapVerdict {
                index: i + 1,
                lo,
                hi,
                width: 0.0,
                shrink: f64::INFINITY,
                open: false,
            });
            continue;
        }
        let rep = psub_strip(lo, hi, gamma_t, subordination);
        verdicts.push(GraphGapVerdict {
            index: i + 1,
            lo,
            hi,
            width: hi - lo,
            shrink: rep.constants.get("k").copied().unwrap_or(f64::INFINITY),
            open: rep.applicable,
        });
    }
    let mut open_fractions = Vec::new();
    for m_lo in [10usize, 20, 40] {
        let in_range: Vec<&GraphGapVerdict> =
            verdicts.iter().filter(|v| v.index >= m_lo && v.index <= 2 * m_lo).collect();
        if !in_range.is_empty() {
            let open = in_range.iter().filter(|v| v.open).count();
            open_fractions.push((m_lo, open as f64 / in_range.len() as f64));
        }
    }
    GraphGapReport { verdicts, open_fractions }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn window(x1: f64, y1: f64) -> Window {
        Window::new(0.05, x1, -y1, y1).unwrap()
    }

    #[test]
    fn single_edge_dirichlet_center() {
        // n=1, a=pi, c=0: F ~ sin(k pi), roots at integers, lambda = m^2.
        let g = StarGraph::new(vec![std::f64::consts::PI], Coupling::Robin(c(0.0, 0.0))).unwrap();
        let s = find_eigs(&g, &window(5.5, 0.2), &FindOpts::default()).unwrap();
        assert!(s.complete, "winding {:?} vs {}", s.winding_count, s.found_count);
        let expect = [1.0, 4.0, 9.0, 16.0, 25.0];
        assert_eq!(s.eigenvalues.len(), 5);
        for (got, want) in s.eigenvalues.iter().zip(expect) {
            assert!((got.re - want).abs() < 1e-9 && got.im.abs() < 1e-12);
        }
    }

    #[test]
    fn single_edge_kirchhoff() {
        // n=1, a=pi, c=inf: roots at m + 1/2.
        let g = StarGraph::new(vec![std::f64::consts::PI], Coupling::Kirchhoff).unwrap();
        let s = find_eigs(&g, &window(4.7, 0.2), &FindOpts::default()).unwrap();
        assert!(s.complete);
        let expect = [0.25, 2.25, 6.25, 12.25];
        assert_eq!(s.eigenvalues.len(), 4);
        for (got, want) in s.eigenvalues.iter().zip(expect) {
            assert!((got.re - want).abs() < 1e-9);
        }
    }

    #[test]
    fn robin_negative_eigenvalue_found() {
        let g = StarGraph::new(vec![1.0, 0.83, 0.61], Coupling::Robin(c(0.7, 0.0))).unwrap();
        let w = Window::new(-0.1, 8.0, -3.0, 3.0).unwrap();
        let s = find_eigs(&g, &w, &FindOpts::default()).unwrap();
        assert!(s.complete, "winding {:?} found {}", s.winding_count, s.found_count);
        assert!(s.eigenvalues[0].re < 0.0, "expected a negative eigenvalue first");
        assert!(s.residuals.iter().all(|&r| r <= 1e-9));
    }

    #[test]
    fn selfadjoint_spectra_are_real() {
        let g = StarGraph::new(vec![1.0, 0.83, 0.61], Coupling::Robin(c(0.7, 0.0))).unwrap();
        let m = discretize(&g, &Potential::Zero, 40.0).unwrap();
        let res = crate::oplab::eig(&m).unwrap();
        let worst = res.eigenvalues.iter().map(|l| l.im.abs()).fold(0.0, f64::max);
        assert!(worst <= 1e-8, "max |Im| = {worst}");
    }

    #[test]
    fn secular_matches_discretization_for_three_edges() {
        let g = StarGraph::new(vec![1.0, 0.83, 0.61], Coupling::Robin(c(0.7, 0.0))).unwrap();
        let w = Window::new(-0.1, 8.0, -3.0, 3.0).unwrap();
        let s = find_eigs(&g, &w, &FindOpts::default()).unwrap();
        let m = discretize(&g, &Potential::Zero, 160.0).unwrap();
        let res = crate::oplab::eig(&m).unwrap();
        let mut disc: Vec<f64> = res.eigenvalues.iter().map(|l| l.re).collect();
        disc.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (i, l) in s.eigenvalues.iter().take(5).enumerate() {
            assert!(
                (disc[i] - l.re).abs() < 2e-3 * (1.0 + l.re.abs()),
                "eig {i}: secular {} vs discretized {}",
                l.re,
                disc[i]
            );
        }
    }

    #[test]
    fn weyl_exact_for_single_dirichlet_edge() {
        let g = StarGraph::new(vec![std::f64::consts::PI], Coupling::Robin(c(0.0, 0.0))).unwrap();
        let s = find_eigs(&g, &window(30.5, 0.2), &FindOpts::default()).unwrap();
        assert!(s.eigenvalues.len() >= 30);
        let rep = weyl_gap_report(&s, g.total_length()).unwrap();
        // lambda_m = m^2 exactly: slope 1 = pi^2/|Gamma|^2.
        assert!(rep.rel_slope_err < 1e-9, "slope {} vs {}", rep.slope, rep.expected_slope);
    }

    #[test]
    fn gap_persistence_c_zero_all_open() {
        let g = StarGraph::new(vec![std::f64::consts::PI], Coupling::Robin(c(0.0, 0.0))).unwrap();
        let s = find_eigs(&g, &window(12.5, 0.2), &FindOpts::default()).unwrap();
        let rep = graph_gap_persistence(&s, &Subordinate::new(0.0, 0.5).unwrap(), 0.0);
        assert!(rep.verdicts.iter().all(|v| v.open));
    }

    #[test]
    fn discretization_guards() {
        let g = StarGraph::new(vec![1.0], Coupling::Kirchhoff).unwrap();
        assert!(matches!(discretize(&g, &Potential::Zero, 4.0), Err(GraphError::TooCoarse)));
        let g2 = StarGraph::new(vec![1.0, 1.0], Coupling::Kirchhoff).unwrap();
        assert!(matches!(
            discretize(&g2, &Potential::Zero, 400.0),
            Err(GraphError::TooLarge(_))
        ));
    }
}
