//! The function `H_z(t) = (a² + b²|t|²)/|t−z|²` and closed-form bounds for its
//! supremum over lines, strips, sectors, gapped planes and parabolic regions,
//! plus a brute-force sampling oracle.
//!
//! `H_z` has no local maxima away from its pole and tends to `b²` at infinity,
//! so suprema over filled sets reduce to suprema over boundaries plus the
//! limit value; the oracle exploits exactly that. Sup bounds for sector-type
//! sets return `+∞` when `z` violates the geometric precondition so callers
//! can take minima over candidate estimates; line/strip/gap bounds report the
//! pole as an error instead.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Relative bound constants: `‖Ax‖² ≤ a²‖x‖² + b²‖Tx‖²` with `b < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelBound {
    pub a: f64,
    pub b: f64,
}

impl RelBound {
    pub fn new(a: f64, b: f64) -> Result<Self, BoundsError> {
        if !(a >= 0.0) || !(0.0..1.0).contains(&b) {
            return Err(BoundsError::InvalidModel("relative bound requires a >= 0 and 0 <= b < 1"));
        }
        Ok(Self { a, b })
    }
}

/// Subordination constants: `‖Ax‖ ≤ c‖x‖^{1−p}‖Tx‖^p` with `0 ≤ p ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Subordinate {
    pub c: f64,
    pub p: f64,
}

impl Subordinate {
    pub fn new(c: f64, p: f64) -> Result<Self, BoundsError> {
        if !(c >= 0.0) || !(0.0..=1.0).contains(&p) {
            return Err(BoundsError::InvalidModel("subordination requires c >= 0 and 0 <= p <= 1"));
        }
        Ok(Self { c, p })
    }
}

/// Either perturbation model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PerturbationModel {
    RelBound(RelBound),
    Subordinate(Subordinate),
}

/// Result of a supremum estimate. `exact` is true when the underlying lemma
/// states equality rather than an upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupBound {
    pub value: f64,
    pub exact: bool,
}

impl SupBound {
    fn upper(value: f64) -> Self {
        Self { value, exact: false }
    }

    fn inapplicable() -> Self {
        Self { value: f64::INFINITY, exact: false }
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum BoundsError {
    #[error("invalid perturbation model: {0}")]
    InvalidModel(&'static str),
    #[error("H_z has a pole at t = z")]
    PoleAtZ,
    #[error("z lies on the set; the estimate has a pole")]
    PoleOnSet,
    #[error("mu must lie strictly inside the gap (alpha, beta)")]
    OutsideGap,
    #[error("z lies on the wrong side of the vertex")]
    WrongSide,
    #[error("subordination exponent p = 1 cannot be converted to a relative bound")]
    ExponentOne,
    #[error("conversion requires 0 < eps < 1")]
    InvalidEps,
}

/// `H_z(t) = (a² + b²|t|²)/|t−z|²`.
pub fn h_value(m: &RelBound, z: Complex64, t: Complex64) -> Result<f64, BoundsError> {
    let d2 = (t - z).norm_sqr();
    if d2 == 0.0 {
        return Err(BoundsError::PoleAtZ);
    }
    Ok((m.a * m.a + m.b * m.b * t.norm_sqr()) / d2)
}

/// Supremum of `H_z` over the horizontal line `Im t = gamma`:
/// `b² + (b²(Re z)² + a² + b²γ²)/(Im z − γ)²` (upper bound).
pub fn sup_h_line(m: &RelBound, z: Complex64, gamma: f64) -> Result<SupBound, BoundsError> {
    let d = z.im - gamma;
    if d == 0.0 {
        return Err(BoundsError::PoleOnSet);
    }
    let b2 = m.b * m.b;
    let value = b2 + (b2 * z.re * z.re + m.a * m.a + b2 * gamma * gamma) / (d * d);
    Ok(SupBound::upper(value))
}

/// Supremum of `H_z` over the closed strip `g1 ≤ Im t ≤ g2`:
/// `b² + max_{γ∈{g1,g2}} (b²(Re z)² + a² + b²γ²)/(Im z − γ)²`.
pub fn sup_h_strip(m: &RelBound, z: Complex64, g1: f64, g2: f64) -> Result<SupBound, BoundsError> {
    if g1 <= z.im && z.im <= g2 {
        return Err(BoundsError::PoleOnSet);
    }
    let b2 = m.b * m.b;
    let edge = |gamma: f64| {
        let d = z.im - gamma;
        (b2 * z.re * z.re + m.a * m.a + b2 * gamma * gamma) / (d * d)
    };
    Ok(SupBound::upper(b2 + edge(g1).max(edge(g2))))
}

/// Half-plane estimate in the frame rotated by `-frame_angle` around `vertex`:
/// requires `Im(e^{−i·frame}(z−vertex)) ≠ 0`.
fn sector_frame_value(m: &RelBound, z: Complex64, vertex: f64, frame_angle: f64) -> Option<f64> {
    let u = (z - vertex) * Complex64::from_polar(1.0, -frame_angle);
    if u.im == 0.0 {
        return None;
    }
    let b2 = m.b * m.b;
    Some(b2 + (b2 * u.re * u.re + m.a * m.a + b2 * vertex * vertex) / (u.im * u.im))
}

/// Supremum bound of `H_z` over the closed sector `S_θ(vertex)` (or its
/// mirror `−S_θ(−vertex)`). Two half-planes through the vertex contain the
/// sector; each applies on one side of its boundary line and the minimum of
/// the applicable estimates is returned. `+∞` with `exact = false` signals
/// that `z` lies inside the sector (no estimate applies).
pub fn sup_h_sector(m: &RelBound, z: Complex64, vertex: f64, theta: f64, mirrored: bool) -> SupBound {
    if mirrored {
        return sup_h_sector(m, -z, -vertex, theta, false);
    }
    let mut best = f64::INFINITY;
    // Upper half of the frame rotated by theta: applies when
    // Im(e^{-i theta}(z - vertex)) > 0.
    let u = (z - vertex) * Complex64::from_polar(1.0, -theta);
    if u.im > 0.0 {
        if let Some(v) = sector_frame_value(m, z, vertex, theta) {
            best = best.min(v);
        }
    }
    let l = (z - vertex) * Complex64::from_polar(1.0, theta);
    if l.im < 0.0 {
        if let Some(v) = sector_frame_value(m, z, vertex, -theta) {
            best = best.min(v);
        }
    }
    if best.is_finite() {
        SupBound::upper(best)
    } else {
        SupBound::inapplicable()
    }
}

/// Alternative half-plane estimate for the same frame: the boundary line is
/// identical but `|t|²` is kept exact along it, giving
/// `b² + (b²(Re(e^{−iθ}z))² + a² + b²·vertex²sin²θ)/(Im(e^{−iθ}(z−vertex)))²`.
fn sector_alt_frame_value(m: &RelBound, z: Complex64, vertex: f64, frame_angle: f64) -> Option<f64> {
    let u = (z - vertex) * Complex64::from_polar(1.0, -frame_angle);
    if u.im == 0.0 {
        return None;
    }
    let b2 = m.b * m.b;
    let x = (z * Complex64::from_polar(1.0, -frame_angle)).re;
    let s = frame_angle.sin();
    Some(b2 + (b2 * x * x + m.a * m.a + b2 * vertex * vertex * s * s) / (u.im * u.im))
}

/// Alternative sector bound; same applicability as [`sup_h_sector`] with
/// `vertex²sin²θ` in place of `vertex²` and `Re(e^{∓iθ}z)` in place of
/// `Re(e^{∓iθ}(z−vertex))`.
pub fn sup_h_sector_alt(
    m: &RelBound,
    z: Complex64,
    vertex: f64,
    theta: f64,
    mirrored: bool,
) -> SupBound {
    if mirrored {
        return sup_h_sector_alt(m, -z, -vertex, theta, false);
    }
    let mut best = f64::INFINITY;
    let u = (z - vertex) * Complex64::from_polar(1.0, -theta);
    if u.im > 0.0 {
        if let Some(v) = sector_alt_frame_value(m, z, vertex, theta) {
            best = best.min(v);
        }
    }
    let l = (z - vertex) * Complex64::from_polar(1.0, theta);
    if l.im < 0.0 {
        if let Some(v) = sector_alt_frame_value(m, z, vertex, -theta) {
            best = best.min(v);
        }
    }
    if best.is_finite() {
        SupBound::upper(best)
    } else {
        SupBound::inapplicable()
    }
}

/// Exact supremum of `H_μ` (real `μ`) over the vertical line `Re t = x`:
/// `max{b², (a² + b²x²)/(μ − x)²}`.
pub fn sup_h_vertical_exact(m: &RelBound, mu: f64, x: f64) -> Result<SupBound, BoundsError> {
    if mu == x {
        return Err(BoundsError::PoleOnSet);
    }
    let b2 = m.b * m.b;
    let value = b2.max((m.a * m.a + b2 * x * x) / ((mu - x) * (mu - x)));
    Ok(SupBound { value, exact: true })
}

/// Exact supremum of `H_μ` over the complement of the open vertical strip
/// `(alpha, beta) + iR`: `max{b², (a²+b²α²)/(μ−α)², (a²+b²β²)/(β−μ)²}`.
pub fn sup_h_gapped_plane_exact(
    m: &RelBound,
    mu: f64,
    alpha: f64,
    beta: f64,
) -> Result<SupBound, BoundsError> {
    if !(alpha < mu && mu < beta) {
        return Err(BoundsError::OutsideGap);
    }
    let b2 = m.b * m.b;
    let left = (m.a * m.a + b2 * alpha * alpha) / ((mu - alpha) * (mu - alpha));
    let right = (m.a * m.a + b2 * beta * beta) / ((beta - mu) * (beta - mu));
    Ok(SupBound { value: b2.max(left).max(right), exact: true })
}

/// Sector bound through the vertical-line estimate:
/// `max{b², (a²+b²·vertex²)/(vertex−Re z)²} + b²tan²θ` for `Re z < vertex`
/// (mirrored: `Re z > vertex`). `+∞` on the wrong side of the vertex.
pub fn sup_h_sector_tan(
    m: &RelBound,
    z: Complex64,
    vertex: f64,
    theta: f64,
    mirrored: bool,
) -> SupBound {
    let d = if mirrored { z.re - vertex } else { vertex - z.re };
    if d <= 0.0 {
        return SupBound::inapplicable();
    }
    let b2 = m.b * m.b;
    let t = theta.tan();
    SupBound::upper(b2.max((m.a * m.a + b2 * vertex * vertex) / (d * d)) + b2 * t * t)
}

/// Lower bound for the distance from `z` to the parabolic region `Π(λ)`
/// (mirrored: `−Π(−λ)`), valid on the respective outer side:
/// `sqrt((λ−Re z)² + (Im z)²)` for `|Im z| ≤ 1/2`, otherwise
/// `sqrt((λ−Re z)² + |Im z| − 1/4)`.
pub fn dist_parabola(z: Complex64, lambda: f64, mirrored: bool) -> Result<f64, BoundsError> {
    let d = if mirrored { z.re - lambda } else { lambda - z.re };
    if d <= 0.0 {
        return Err(BoundsError::WrongSide);
    }
    let nu = z.im.abs();
    let value = if nu <= 0.5 { (d * d + nu * nu).sqrt() } else { (d * d + nu - 0.25).sqrt() };
    Ok(value)
}

/// Brute-force supremum oracle: the maximum of `H_z` over `n` sampled points
/// together with the limit value `b²` at infinity. Sample points equal to `z`
/// are skipped. Monotone nondecreasing in `n` for nested samplers.
pub fn oracle_sup(
    m: &RelBound,
    z: Complex64,
    sampler: impl Fn(usize) -> Complex64,
    n: usize,
) -> f64 {
    let mut best = m.b * m.b;
    for i in 0..n {
        let t = sampler(i);
        if let Ok(v) = h_value(m, z, t) {
            if v > best {
                best = v;
            }
        }
    }
    best
}

/// Convert a p-subordinate model (`p < 1`) into relative-bound constants
/// `(a_ε, b = ε)` with the optimal Young split
/// `a_ε = (1−p)·c^{1/(1−p)}·(p/ε)^{p/(1−p)}`, so that
/// `c·u^{1−p}·v^p ≤ a_ε·u + ε·v` for all `u, v ≥ 0`. For `p = 0` the exact
/// conversion `(c, 0)` is returned.
pub fn subordination_to_relbound(s: &Subordinate, eps: f64) -> Result<RelBound, BoundsError> {
    if s.p >= 1.0 {
        return Err(BoundsError::ExponentOne);
    }
    if s.p == 0.0 {
        return RelBound::new(s.c, 0.0);
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(BoundsError::InvalidEps);
    }
    let q = s.p / (1.0 - s.p);
    let a = (1.0 - s.p) * s.c.powf(1.0 / (1.0 - s.p)) * (s.p / eps).powf(q);
    RelBound::new(a, eps)
}

/// Deterministic low-discrepancy samplers for the oracle.
pub mod samplers {
    use super::Complex64;

    const PHI_CONJ: f64 = 0.618_033_988_749_894_9;

    /// Additive-recurrence (Kronecker) sequence in `[0, 1)`, phase-shifted by
    /// the seed.
    #[derive(Debug, Clone, Copy)]
    pub struct Kronecker {
        phase: f64,
    }

    impl Kronecker {
        pub fn new(seed: u64) -> Self {
            Self { phase: ((seed % 1_000_003) as f64 * PHI_CONJ).fract() }
        }

        pub fn unit(&self, i: usize) -> f64 {
            (self.phase + (i as f64 + 1.0) * PHI_CONJ).fract()
        }

        /// Symmetric map of the unit sample onto `[-1, 1]`, concentrated near
        /// zero via an odd power; index 0 hits the centre exactly.
        pub fn symmetric(&self, i: usize, power: i32) -> f64 {
            if i == 0 {
                return 0.0;
            }
            let u = 2.0 * self.unit(i) - 1.0;
            u.signum() * u.abs().powi(power)
        }
    }

    /// Points on the horizontal line `Im t = gamma`, `|Re t| ≤ half_width`,
    /// concentrated around `Re t = center`.
    pub fn horizontal_line(
        gamma: f64,
        center: f64,
        half_width: f64,
        power: i32,
        seed: u64,
    ) -> impl Fn(usize) -> Complex64 {
        let k = Kronecker::new(seed);
        move |i| Complex64::new(center + half_width * k.symmetric(i, power), gamma)
    }

    /// Points on the vertical line `Re t = x`, `|Im t| ≤ half_width`.
    pub fn vertical_line(
        x: f64,
        half_width: f64,
        power: i32,
        seed: u64,
    ) -> impl Fn(usize) -> Complex64 {
        let k = Kronecker::new(seed);
        move |i| Complex64::new(x, half_width * k.symmetric(i, power))
    }

    /// Alternating points on the two edges of the strip `g1 ≤ Im t ≤ g2`.
    pub fn strip_boundary(
        g1: f64,
        g2: f64,
        center: f64,
        half_width: f64,
        power: i32,
        seed: u64,
    ) -> impl Fn(usize) -> Complex64 {
        let k = Kronecker::new(seed);
        move |i| {
            let gamma = if i % 2 == 0 { g1 } else { g2 };
            Complex64::new(center + half_width * k.symmetric(i / 2, power), gamma)
        }
    }

    /// Alternating points on the two vertical lines `Re t ∈ {alpha, beta}`.
    pub fn gapped_plane_boundary(
        alpha: f64,
        beta: f64,
        half_height: f64,
        power: i32,
        seed: u64,
    ) -> impl Fn(usize) -> Complex64 {
        let k = Kronecker::new(seed);
        move |i| {
            let x = if i % 2 == 0 { alpha } else { beta };
            Complex64::new(x, half_height * k.symmetric(i / 2, power))
        }
    }

    /// Alternating points on the two boundary rays of `S_θ(vertex)` (or its
    /// mirror), radius up to `rmax`, concentrated near the vertex.
    pub fn sector_boundary(
        vertex: f64,
        theta: f64,
        mirrored: bool,
        rmax: f64,
        seed: u64,
    ) -> impl Fn(usize) -> Complex64 {
        let k = Kronecker::new(seed);
        move |i| {
            let ang = if i % 2 == 0 { theta } else { -theta };
            let dir = if mirrored {
                Complex64::from_polar(1.0, std::f64::consts::PI - ang)
            } else {
                Complex64::from_polar(1.0, ang)
            };
            let u = if i < 2 { 0.0 } else { k.unit(i / 2) };
            Complex64::new(vertex, 0.0) + dir * (rmax * u * u)
        }
    }

    /// Points on the circle `|t| = radius`.
    pub fn circle(radius: f64, seed: u64) -> impl Fn(usize) -> Complex64 {
        let k = Kronecker::new(seed);
        move |i| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k.unit(i))
    }

    /// Points on the boundary of `Π(λ)` (mirrored: `−Π(−λ)`), both arcs.
    pub fn parabola_boundary(
        lambda: f64,
        mirrored: bool,
        extent: f64,
        seed: u64,
    ) -> impl Fn(usize) -> Complex64 {
        let k = Kronecker::new(seed);
        move |i| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            let u = if i < 2 { 0.0 } else { k.unit(i / 2) };
            let d = extent * u * u;
            if mirrored {
                Complex64::new(lambda - d, sign * d * d)
            } else {
                Complex64::new(lambda + d, sign * d * d)
            }
        }
    }

    /// Two-coordinate Kronecker sampler filling the rectangle
    /// `[x0, x1] × [y0, y1]`.
    pub fn rectangle_fill(
        x0: f64,
        x1: f64,
        y0: f64,
        y1: f64,
        seed: u64,
    ) -> impl Fn(usize) -> Complex64 {
        let k = Kronecker::new(seed);
        const SILVER: f64 = 0.414_213_562_373_095_1;
        move |i| {
            let u = k.unit(i);
            let v = (0.5 + (i as f64 + 1.0) * SILVER).fract();
            Complex64::new(x0 + (x1 - x0) * u, y0 + (y1 - y0) * v)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn h_value_examples() {
        let m = RelBound::new(1.0, 0.0).unwrap();
        assert_eq!(h_value(&m, c(0.0, 2.0), c(0.0, 0.0)).unwrap(), 0.25);
        let m = RelBound::new(0.0, 0.999_999).unwrap();
        let v = h_value(&m, c(0.0, 0.0), c(5.0, 0.0)).unwrap();
        assert!((v - 0.999_999_f64.powi(2)).abs() < 1e-12);
        let m = RelBound::new(1.0, 0.5).unwrap();
        assert_eq!(h_value(&m, c(3.0, 0.0), c(1.0, 0.0)).unwrap(), 0.3125);
        assert_eq!(h_value(&m, c(1.0, 1.0), c(1.0, 1.0)), Err(BoundsError::PoleAtZ));
    }

    #[test]
    fn sup_line_examples() {
        let m = RelBound::new(1.0, 0.0).unwrap();
        let s = sup_h_line(&m, c(0.0, 2.0), 0.0).unwrap();
        assert_eq!(s.value, 0.25);
        assert!(!s.exact);
        let m0 = RelBound::new(0.0, 0.0).unwrap();
        assert_eq!(sup_h_line(&m0, c(3.0, -1.0), 0.5).unwrap().value, 0.0);
        assert_eq!(sup_h_line(&m, c(1.0, 0.5), 0.5), Err(BoundsError::PoleOnSet));
    }

    #[test]
    fn sup_strip_examples() {
        let m = RelBound::new(1.0, 0.0).unwrap();
        assert_eq!(sup_h_strip(&m, c(0.0, 3.0), -1.0, 1.0).unwrap().value, 0.25);
        // symmetric strip with Re z = 0 equals the line bound at the nearer
        // edge with the same |gamma|.
        let m = RelBound::new(0.7, 0.4).unwrap();
        let z = c(0.0, 2.5);
        let strip = sup_h_strip(&m, z, -1.2, 1.2).unwrap().value;
        let line = sup_h_line(&m, z, 1.2).unwrap().value;
        assert!((strip - line).abs() < 1e-15);
    }

    #[test]
    fn sector_theta_zero_matches_formula() {
        let m = RelBound::new(0.8, 0.25).unwrap();
        let beta = 1.5;
        let z = c(-2.0, 1.0);
        let s = sup_h_sector(&m, z, beta, 0.0, false);
        let b2 = m.b * m.b;
        let expect = b2
            + (b2 * (z.re - beta) * (z.re - beta) + m.a * m.a + b2 * beta * beta) / (z.im * z.im);
        assert!((s.value - expect).abs() < 1e-14);
    }

    #[test]
    fn sector_inside_is_inapplicable() {
        let m = RelBound::new(1.0, 0.1).unwrap();
        let s = sup_h_sector(&m, c(3.0, 0.1), 1.0, 0.5, false);
        assert!(s.value.is_infinite());
        assert!(!s.exact);
    }

    #[test]
    fn sector_mirror_identity() {
        let m = RelBound::new(0.5, 0.3).unwrap();
        for k in 0..100 {
            let z = c(-5.0 + 0.11 * k as f64, 3.0 - 0.07 * k as f64);
            let a = sup_h_sector(&m, z, -1.0, 0.6, true);
            let b = sup_h_sector(&m, -z, 1.0, 0.6, false);
            assert_eq!(a.value.to_bits(), b.value.to_bits());
        }
    }

    #[test]
    fn sector_alt_vertex_zero_coincides() {
        let m = RelBound::new(0.5, 0.3).unwrap();
        for k in 0..100 {
            let z = c(-5.0 + 0.13 * k as f64, 4.0 - 0.09 * k as f64);
            let p = sup_h_sector(&m, z, 0.0, 0.7, false);
            let alt = sup_h_sector_alt(&m, z, 0.0, 0.7, false);
            if p.value.is_finite() {
                assert!((p.value - alt.value).abs() < 1e-12 * (1.0 + p.value.abs()));
            } else {
                assert!(alt.value.is_infinite());
            }
        }
    }

    #[test]
    fn sector_alt_theta_zero_is_line_bound() {
        let m = RelBound::new(0.9, 0.35).unwrap();
        let z = c(2.0, -3.0);
        let alt = sup_h_sector_alt(&m, z, 1.2, 0.0, false);
        let line = sup_h_line(&m, z, 0.0).unwrap();
        assert!((alt.value - line.value).abs() < 1e-14);
    }

    #[test]
    fn vertical_exact_examples() {
        let m = RelBound::new(1.0, 0.0).unwrap();
        let s = sup_h_vertical_exact(&m, 2.0, 0.0).unwrap();
        assert_eq!(s.value, 0.25);
        assert!(s.exact);
        let m = RelBound::new(1.0, 0.5).unwrap();
        assert_eq!(sup_h_vertical_exact(&m, 3.0, 1.0).unwrap().value, 0.3125);
    }

    #[test]
    fn gapped_plane_exact_examples() {
        let m = RelBound::new(1.0, 0.0).unwrap();
        let s = sup_h_gapped_plane_exact(&m, 0.0, -2.0, 2.0).unwrap();
        assert_eq!(s.value, 0.25);
        let m = RelBound::new(1.0, 0.3).unwrap();
        let s = sup_h_gapped_plane_exact(&m, 0.0, -2.0, 3.0).unwrap();
        assert!((s.value - 0.34).abs() < 1e-15);
        assert_eq!(
            sup_h_gapped_plane_exact(&m, 5.0, -2.0, 3.0),
            Err(BoundsError::OutsideGap)
        );
    }

    #[test]
    fn sector_tan_examples() {
        let m = RelBound::new(1.0, 0.3).unwrap();
        let theta = std::f64::consts::FRAC_PI_6;
        let s = sup_h_sector_tan(&m, c(0.0, 0.7), 2.0, theta, false);
        assert!((s.value - 0.37).abs() < 1e-15);
        // theta = 0 equals the exact vertical-line supremum.
        let s0 = sup_h_sector_tan(&m, c(0.0, 0.7), 2.0, 0.0, false);
        let v = sup_h_vertical_exact(&m, 0.0, 2.0).unwrap();
        assert_eq!(s0.value, v.value);
        // wrong side is inapplicable.
        assert!(sup_h_sector_tan(&m, c(3.0, 0.0), 2.0, theta, false).value.is_infinite());
    }

    #[test]
    fn dist_parabola_examples() {
        assert_eq!(dist_parabola(c(-1.0, 0.0), 0.0, false).unwrap(), 1.0);
        let d = dist_parabola(c(-1.0, 0.4), 0.0, false).unwrap();
        assert!((d - 1.16_f64.sqrt()).abs() < 1e-15);
        let d = dist_parabola(c(-1.0, 2.0), 0.0, false).unwrap();
        assert!((d - 2.75_f64.sqrt()).abs() < 1e-15);
        assert_eq!(dist_parabola(c(1.0, 0.0), 0.0, false), Err(BoundsError::WrongSide));
        // mirrored symmetry
        let a = dist_parabola(c(3.0, 0.7), 2.0, true).unwrap();
        let b = dist_parabola(c(-3.0, 0.7), -2.0, false).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn oracle_basics() {
        let m = RelBound::new(1.0, 0.0).unwrap();
        let v = oracle_sup(&m, c(0.0, 2.0), |_| c(0.0, 0.0), 10);
        assert_eq!(v, 0.25);
        // limit value b^2 is always included.
        let m = RelBound::new(0.0, 0.7).unwrap();
        let v = oracle_sup(&m, c(0.0, 1.0), |i| c(i as f64 * 1e3, 0.0), 100);
        assert!((v - 0.49).abs() < 1e-6);
    }

    #[test]
    fn oracle_monotone_in_n() {
        let m = RelBound::new(0.9, 0.4).unwrap();
        let z = c(0.3, 2.0);
        let sampler = samplers::horizontal_line(0.0, 0.0, 100.0, 1, 7);
        let mut last = 0.0;
        for n in [10, 100, 1000, 10000] {
            let v = oracle_sup(&m, z, &sampler, n);
            assert!(v >= last);
            last = v;
        }
    }

    #[test]
    fn subordination_conversion() {
        let s = Subordinate::new(2.5, 0.0).unwrap();
        let rb = subordination_to_relbound(&s, 0.3).unwrap();
        assert_eq!((rb.a, rb.b), (2.5, 0.0));

        let s = Subordinate::new(1.0, 0.5).unwrap();
        let rb = subordination_to_relbound(&s, 0.5).unwrap();
        assert!((rb.a - 0.5).abs() < 1e-15);
        assert_eq!(rb.b, 0.5);

        let s = Subordinate::new(1.0, 1.0).unwrap();
        assert_eq!(subordination_to_relbound(&s, 0.5), Err(BoundsError::ExponentOne));
    }

    #[test]
    fn subordination_young_inequality_grid() {
        // c u^{1-p} v^p <= a_eps u + eps v on a grid, including c > 1.
        for &(cc, p, eps) in &[(1.0, 0.5, 0.5), (2.0, 0.5, 0.25), (4.0, 0.75, 0.6), (0.3, 0.2, 0.1)]
        {
            let s = Subordinate::new(cc, p).unwrap();
            let rb = subordination_to_relbound(&s, eps).unwrap();
            for i in 1..=100 {
                for j in 1..=100 {
                    let u = i as f64;
                    let v = j as f64;
                    let lhs = cc * u.powf(1.0 - p) * v.powf(p);
                    let rhs = rb.a * u + rb.b * v;
                    assert!(
                        lhs <= rhs * (1.0 + 1e-12),
                        "young violated: c={cc} p={p} eps={eps} u={u} v={v}"
                    );
                }
            }
        }
    }
}
