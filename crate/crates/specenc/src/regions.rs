//! Complex-plane regions: membership predicates, rigid transforms, boolean
//! expression trees and boundary sampling.
//!
//! The primitives mirror the sets produced by the enclosure theorems:
//! hyperbola interiors `Hyp` (open), closed sectors, closed strips, closed
//! disks, parabolic regions and half-planes. Hyperbola-interior regions are
//! open (strict inequality); sectors, strips, disks, half-planes and parabolic
//! regions are closed. Transformed regions compose a point reflection, a
//! rotation and a translation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Region above a hyperbola branch in the upper half-plane:
/// `(a² + b²γ²)/(1−b²) + b²(Re z)²/(1−b²) < (Im z)²` and `Im z > 0`.
///
/// Apex height is `sqrt((a²+b²γ²)/(1−b²))`, the asymptotic slope is
/// `b/sqrt(1−b²)`. With `b = 0` the set degenerates to the half-plane
/// `Im z > sqrt(a²)` and the same formula applies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperbolaUpper {
    pub a: f64,
    pub b: f64,
    pub gamma: f64,
}

impl HyperbolaUpper {
    pub fn new(a: f64, b: f64, gamma: f64) -> Result<Self, RegionError> {
        if !(a >= 0.0) || !(0.0..1.0).contains(&b) || !gamma.is_finite() {
            return Err(RegionError::InvalidParameter(
                "hyperbola requires a >= 0, 0 <= b < 1, finite gamma",
            ));
        }
        Ok(Self { a, b, gamma })
    }

    /// `(a² + b²γ²)/(1−b²)`, the squared apex height.
    pub fn apex_sq(&self) -> f64 {
        (self.a * self.a + self.b * self.b * self.gamma * self.gamma) / (1.0 - self.b * self.b)
    }

    /// Squared asymptotic slope `b²/(1−b²)`.
    pub fn slope_sq(&self) -> f64 {
        self.b * self.b / (1.0 - self.b * self.b)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.im > 0.0 && self.apex_sq() + self.slope_sq() * z.re * z.re < z.im * z.im
    }
}

/// Closed sector `S_θ(v) = {v} ∪ {|arg(z − v)| ≤ θ}`; the mirrored variant is
/// the pointwise negation `−S_θ(−v)`, a sector opening to the left with apex
/// at `v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sector {
    pub vertex: f64,
    pub theta: f64,
    pub mirrored: bool,
}

impl Sector {
    pub fn new(vertex: f64, theta: f64, mirrored: bool) -> Result<Self, RegionError> {
        if !vertex.is_finite() || !(0.0..std::f64::consts::FRAC_PI_2).contains(&theta) {
            return Err(RegionError::InvalidParameter(
                "sector requires finite vertex and theta in [0, pi/2)",
            ));
        }
        Ok(Self { vertex, theta, mirrored })
    }

    pub fn contains(&self, z: Complex64) -> bool {
        let w = if self.mirrored {
            Complex64::new(self.vertex - z.re, -z.im)
        } else {
            z - self.vertex
        };
        if w == Complex64::new(0.0, 0.0) {
            return true;
        }
        w.im.atan2(w.re).abs() <= self.theta
    }
}

/// Parabolic region `Π(λ) = {Re z ≥ λ, |Im z| ≤ (Re z − λ)²}`; mirrored is
/// `−Π(−λ) = {Re z ≤ λ, |Im z| ≤ (λ − Re z)²}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParabolaRegion {
    pub lambda: f64,
    pub mirrored: bool,
}

impl ParabolaRegion {
    pub fn contains(&self, z: Complex64) -> bool {
        let d = if self.mirrored { self.lambda - z.re } else { z.re - self.lambda };
        d >= 0.0 && z.im.abs() <= d * d
    }
}

/// A primitive region with a closed-form membership predicate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PrimitiveRegion {
    Hyperbola(HyperbolaUpper),
    Sector(Sector),
    Parabola(ParabolaRegion),
    /// Closed half-plane `{z : Re(e^{−iφ} z) ≤ offset}` where `φ` is the
    /// angle of the outward unit normal.
    HalfPlane { normal_angle: f64, offset: f64 },
    /// Closed strip `g1 ≤ Im z ≤ g2`.
    HorizontalStrip { g1: f64, g2: f64 },
    /// Closed strip `v1 ≤ Re z ≤ v2`.
    VerticalStrip { v1: f64, v2: f64 },
    /// Closed disk `|z − center| ≤ radius`.
    Disk { center: Complex64, radius: f64 },
}

impl PrimitiveRegion {
    pub fn contains(&self, z: Complex64) -> bool {
        match *self {
            PrimitiveRegion::Hyperbola(h) => h.contains(z),
            PrimitiveRegion::Sector(s) => s.contains(z),
            PrimitiveRegion::Parabola(p) => p.contains(z),
            PrimitiveRegion::HalfPlane { normal_angle, offset } => {
                let (s, c) = normal_angle.sin_cos();
                z.re * c + z.im * s <= offset
            }
            PrimitiveRegion::HorizontalStrip { g1, g2 } => g1 <= z.im && z.im <= g2,
            PrimitiveRegion::VerticalStrip { v1, v2 } => v1 <= z.re && z.re <= v2,
            PrimitiveRegion::Disk { center, radius } => (z - center).norm() <= radius,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            PrimitiveRegion::Hyperbola(_) => "hyperbola",
            PrimitiveRegion::Sector(_) => "sector",
            PrimitiveRegion::Parabola(_) => "parabola",
            PrimitiveRegion::HalfPlane { .. } => "halfplane",
            PrimitiveRegion::HorizontalStrip { .. } => "hstrip",
            PrimitiveRegion::VerticalStrip { .. } => "vstrip",
            PrimitiveRegion::Disk { .. } => "disk",
        }
    }
}

/// Rigid transform applied to a base region: `z` belongs to the transformed
/// region iff `reflect · e^{−i·rotation} · (z − translate)` belongs to the
/// base, where `reflect` is `−1` when the flag is set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Transform {
    pub rotation: f64,
    pub reflect: bool,
    pub translate: Complex64,
}

impl Transform {
    pub const IDENTITY: Transform = Transform {
        rotation: 0.0,
        reflect: false,
        translate: Complex64 { re: 0.0, im: 0.0 },
    };

    fn sign(&self) -> f64 {
        if self.reflect {
            -1.0
        } else {
            1.0
        }
    }

    /// Map a point from ambient coordinates to base coordinates.
    pub fn to_base(&self, z: Complex64) -> Complex64 {
        (z - self.translate) * Complex64::from_polar(1.0, -self.rotation) * self.sign()
    }

    /// Map a point from base coordinates back to ambient coordinates.
    pub fn from_base(&self, w: Complex64) -> Complex64 {
        self.translate + w * Complex64::from_polar(1.0, self.rotation) * self.sign()
    }

    /// The single transform equivalent to applying `inner` first (in base
    /// coordinates) and then `self`.
    pub fn compose(&self, inner: &Transform) -> Transform {
        Transform {
            rotation: self.rotation + inner.rotation,
            reflect: self.reflect ^ inner.reflect,
            translate: self.translate
                + inner.translate * Complex64::from_polar(1.0, self.rotation) * self.sign(),
        }
    }
}

/// A primitive region under a rigid transform.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformedRegion {
    pub base: PrimitiveRegion,
    pub transform: Transform,
}

impl TransformedRegion {
    pub fn plain(base: PrimitiveRegion) -> Self {
        Self { base, transform: Transform::IDENTITY }
    }

    pub fn new(base: PrimitiveRegion, rotation: f64, reflect: bool, translate: Complex64) -> Self {
        Self { base, transform: Transform { rotation, reflect, translate } }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.base.contains(self.transform.to_base(z))
    }
}

/// Membership test for a transformed region; equals
/// `base.contains(reflect · e^{−i·rotation}(z − translate))`.
pub fn transformed_membership(t: &TransformedRegion, z: Complex64) -> bool {
    t.contains(z)
}

/// Boolean combination of transformed primitive regions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RegionExpr {
    Union(Box<RegionExpr>, Box<RegionExpr>),
    Intersection(Box<RegionExpr>, Box<RegionExpr>),
    Complement(Box<RegionExpr>),
    Leaf(TransformedRegion),
    Empty,
    Full,
}

impl RegionExpr {
    pub fn leaf(t: TransformedRegion) -> Self {
        RegionExpr::Leaf(t)
    }

    pub fn primitive(p: PrimitiveRegion) -> Self {
        RegionExpr::Leaf(TransformedRegion::plain(p))
    }

    pub fn union(a: RegionExpr, b: RegionExpr) -> Self {
        RegionExpr::Union(Box::new(a), Box::new(b))
    }

    pub fn intersection(a: RegionExpr, b: RegionExpr) -> Self {
        RegionExpr::Intersection(Box::new(a), Box::new(b))
    }

    pub fn complement(a: RegionExpr) -> Self {
        RegionExpr::Complement(Box::new(a))
    }

    /// Left fold of `Union`; `Empty` for an empty iterator.
    pub fn union_all<I: IntoIterator<Item = RegionExpr>>(parts: I) -> Self {
        let mut it = parts.into_iter();
        match it.next() {
            None => RegionExpr::Empty,
            Some(first) => it.fold(first, RegionExpr::union),
        }
    }

    /// Left fold of `Intersection`; `Full` for an empty iterator.
    pub fn intersect_all<I: IntoIterator<Item = RegionExpr>>(parts: I) -> Self {
        let mut it = parts.into_iter();
        match it.next() {
            None => RegionExpr::Full,
            Some(first) => it.fold(first, RegionExpr::intersection),
        }
    }

    fn eval(&self, z: Complex64) -> bool {
        match self {
            RegionExpr::Union(a, b) => a.eval(z) || b.eval(z),
            RegionExpr::Intersection(a, b) => a.eval(z) && b.eval(z),
            RegionExpr::Complement(a) => !a.eval(z),
            RegionExpr::Leaf(t) => t.contains(z),
            RegionExpr::Empty => false,
            RegionExpr::Full => true,
        }
    }

    /// All leaves of the tree in depth-first order.
    pub fn leaves(&self) -> Vec<&TransformedRegion> {
        let mut out = Vec::new();
        fn walk<'a>(e: &'a RegionExpr, out: &mut Vec<&'a TransformedRegion>) {
            match e {
                RegionExpr::Union(a, b) | RegionExpr::Intersection(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                RegionExpr::Complement(a) => walk(a, out),
                RegionExpr::Leaf(t) => out.push(t),
                RegionExpr::Empty | RegionExpr::Full => {}
            }
        }
        walk(self, &mut out);
        out
    }
}

/// Membership of `z` in the boolean evaluation of `expr`. Non-finite points
/// are never members.
pub fn contains(expr: &RegionExpr, z: Complex64) -> bool {
    if !z.re.is_finite() || !z.im.is_finite() {
        return false;
    }
    expr.eval(z)
}

#[derive(Debug, thiserror::Error)]
pub enum RegionError {
    #[error("invalid region parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("invalid sampling window or step")]
    InvalidWindow,
}

/// Axis-aligned sampling window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Window {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self, RegionError> {
        if !(x0 < x1 && y0 < y1) {
            return Err(RegionError::InvalidWindow);
        }
        Ok(Self { x0, x1, y0, y1 })
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.x0 <= z.re && z.re <= self.x1 && self.y0 <= z.im && z.im <= self.y1
    }

    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.x0, self.y0),
            Complex64::new(self.x1, self.y0),
            Complex64::new(self.x1, self.y1),
            Complex64::new(self.x0, self.y1),
        ]
    }

    fn diagonal(&self) -> f64 {
        ((self.x1 - self.x0).powi(2) + (self.y1 - self.y0).powi(2)).sqrt()
    }
}

/// Sampled boundary curve of one primitive leaf, clipped to a window.
///
/// `source` identifies the originating leaf (`leaf<k>:<kind>`); the suffix
/// `#masked` marks runs whose points lie on the leaf boundary but are interior
/// to (or exterior of) the full expression, so 4-direction probing found no
/// membership change there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPolyline {
    pub points: Vec<Complex64>,
    pub source: String,
}

/// Boundary curves of each primitive leaf of `expr` clipped to `window`.
///
/// Consecutive points are at most `max_step` apart. Each point is probed in
/// the four axis directions at `ε = max_step/100` against the full
/// expression; points where the probe finds both a member and a non-member
/// form regular polylines, the rest are flagged via the `#masked` source
/// suffix. `Empty`/`Full` yield no output.
pub fn boundary_samples(
    expr: &RegionExpr,
    window: Window,
    max_step: f64,
) -> Result<Vec<BoundaryPolyline>, RegionError> {
    if !(max_step > 0.0) || !max_step.is_finite() {
        return Err(RegionError::InvalidWindow);
    }
    let eps = max_step / 100.0;
    let mut out = Vec::new();
    for (idx, leaf) in expr.leaves().iter().enumerate() {
        let source = format!("leaf{}:{}", idx, leaf.base.kind());
        // Bounding box of the window in base coordinates (the transform is an
        // isometry, so steps are preserved).
        let corners = window.corners().map(|c| leaf.transform.to_base(c));
        let bx0 = corners.iter().map(|c| c.re).fold(f64::INFINITY, f64::min) - max_step;
        let bx1 = corners.iter().map(|c| c.re).fold(f64::NEG_INFINITY, f64::max) + max_step;
        let by0 = corners.iter().map(|c| c.im).fold(f64::INFINITY, f64::min) - max_step;
        let by1 = corners.iter().map(|c| c.im).fold(f64::NEG_INFINITY, f64::max) + max_step;
        let diag = window.diagonal() + 2.0 * max_step;

        for curve in base_boundary_curves(&leaf.base, bx0, bx1, by0, by1, diag, max_step) {
            let mapped: Vec<Complex64> =
                curve.into_iter().map(|w| leaf.transform.from_base(w)).collect();
            emit_clipped(&mapped, expr, window, eps, &source, &mut out);
        }
    }
    Ok(out)
}

/// Parametric boundary curves of a primitive inside a base-frame bounding box.
fn base_boundary_curves(
    p: &PrimitiveRegion,
    bx0: f64,
    bx1: f64,
    by0: f64,
    by1: f64,
    diag: f64,
    step: f64,
) -> Vec<Vec<Complex64>> {
    let mut curves = Vec::new();
    match *p {
        PrimitiveRegion::Hyperbola(h) => {
            let apex_sq = h.apex_sq();
            let slope_sq = h.slope_sq();
            let mut pts = Vec::new();
            let mut x = bx0;
            loop {
                let y = (apex_sq + slope_sq * x * x).sqrt();
                pts.push(Complex64::new(x, y));
                if x >= bx1 {
                    break;
                }
                let dydx = if y > 0.0 { slope_sq * x / y } else { 0.0 };
                let dx = step / (1.0 + dydx * dydx).sqrt();
                x = (x + dx).min(bx1);
            }
            curves.push(pts);
        }
        PrimitiveRegion::Sector(s) => {
            let angles: &[f64] = if s.theta == 0.0 { &[0.0] } else { &[s.theta, -s.theta] };
            for &ang in angles {
                let dir = if s.mirrored {
                    Complex64::from_polar(1.0, std::f64::consts::PI - ang)
                } else {
                    Complex64::from_polar(1.0, ang)
                };
                let origin = Complex64::new(s.vertex, 0.0);
                let rmax = [
                    Complex64::new(bx0, by0),
                    Complex64::new(bx1, by0),
                    Complex64::new(bx1, by1),
                    Complex64::new(bx0, by1),
                ]
                .iter()
                .map(|c| (c - origin).norm())
                .fold(0.0, f64::max);
                let n = (rmax / step).ceil() as usize + 1;
                curves.push((0..=n).map(|i| origin + dir * (i as f64 * step)).collect());
            }
        }
        PrimitiveRegion::Parabola(pr) => {
            for sign in [1.0, -1.0] {
                let mut pts = Vec::new();
                let mut x = pr.lambda;
                loop {
                    let d = if pr.mirrored { pr.lambda - x } else { x - pr.lambda };
                    pts.push(Complex64::new(x, sign * d * d));
                    let done = if pr.mirrored { x <= bx0 } else { x >= bx1 };
                    if done || pts.len() > 4_000_000 {
                        break;
                    }
                    let dydx = 2.0 * d;
                    let dx = step / (1.0 + dydx * dydx).sqrt();
                    x = if pr.mirrored { (x - dx).max(bx0) } else { (x + dx).min(bx1) };
                }
                curves.push(pts);
            }
        }
        PrimitiveRegion::HalfPlane { normal_angle, offset } => {
            let normal = Complex64::from_polar(1.0, normal_angle);
            let along = normal * Complex64::new(0.0, 1.0);
            let base = normal * offset;
            let n = (2.0 * diag / step).ceil() as usize + 1;
            curves.push(
                (0..=n).map(|i| base + along * (i as f64 * step - diag)).collect(),
            );
        }
        PrimitiveRegion::HorizontalStrip { g1, g2 } => {
            let levels: Vec<f64> = if g1 == g2 { vec![g1] } else { vec![g1, g2] };
            for g in levels {
                let n = ((bx1 - bx0) / step).ceil() as usize + 1;
                curves.push((0..=n).map(|i| Complex64::new(bx0 + i as f64 * step, g)).collect());
            }
        }
        PrimitiveRegion::VerticalStrip { v1, v2 } => {
            let levels: Vec<f64> = if v1 == v2 { vec![v1] } else { vec![v1, v2] };
            for v in levels {
                let n = ((by1 - by0) / step).ceil() as usize + 1;
                curves.push((0..=n).map(|i| Complex64::new(v, by0 + i as f64 * step)).collect());
            }
        }
        PrimitiveRegion::Disk { center, radius } => {
            if radius <= 0.0 {
                curves.push(vec![center]);
            } else {
                let dphi = (step / radius).min(std::f64::consts::FRAC_PI_4);
                let n = (2.0 * std::f64::consts::PI / dphi).ceil() as usize;
                curves.push(
                    (0..=n)
                        .map(|i| {
                            center
                                + Complex64::from_polar(
                                    radius,
                                    2.0 * std::f64::consts::PI * i as f64 / n as f64,
                                )
                        })
                        .collect(),
                );
            }
        }
    }
    curves
}

/// Clip a mapped curve to the window, probe against the full expression and
/// append the resulting polylines (regular and masked runs separately).
fn emit_clipped(
    points: &[Complex64],
    expr: &RegionExpr,
    window: Window,
    eps: f64,
    source: &str,
    out: &mut Vec<BoundaryPolyline>,
) {
    let mut current: Vec<Complex64> = Vec::new();
    let mut current_masked = false;
    let flush = |pts: &mut Vec<Complex64>, masked: bool, out: &mut Vec<BoundaryPolyline>| {
        if !pts.is_empty() {
            out.push(BoundaryPolyline {
                points: std::mem::take(pts),
                source: if masked { format!("{source}#masked") } else { source.to_string() },
            });
        }
    };
    for &z in points {
        if !window.contains(z) {
            flush(&mut current, current_masked, out);
            continue;
        }
        let probes = [
            Complex64::new(z.re + eps, z.im),
            Complex64::new(z.re - eps, z.im),
            Complex64::new(z.re, z.im + eps),
            Complex64::new(z.re, z.im - eps),
        ];
        let inside = probes.iter().filter(|&&p| contains(expr, p)).count();
        let masked = inside == 0 || inside == probes.len();
        if masked != current_masked {
            flush(&mut current, current_masked, out);
            current_masked = masked;
        }
        current.push(z);
    }
    flush(&mut current, current_masked, out);
}

/// CSV serialization: header `re,im,source`, one row per point, polylines
/// separated by a blank line.
pub fn polylines_to_csv(polylines: &[BoundaryPolyline]) -> String {
    let mut s = String::from("re,im,source\n");
    for (i, pl) in polylines.iter().enumerate() {
        if i > 0 {
            s.push('\n');
        }
        for p in &pl.points {
            s.push_str(&format!("{},{},{}\n", p.re, p.im, pl.source));
        }
    }
    s
}

/// JSON mirror of the CSV output: `[{"source": ..., "points": [[re,im],...]}]`.
pub fn polylines_to_json(polylines: &[BoundaryPolyline]) -> serde_json::Value {
    serde_json::Value::Array(
        polylines
            .iter()
            .map(|pl| {
                serde_json::json!({
                    "source": pl.source,
                    "points": pl.points.iter().map(|p| vec![p.re, p.im]).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hyperbola_membership_basic() {
        // a=1, b=0, gamma=0: reduces to Im z > 1.
        let h = HyperbolaUpper::new(1.0, 0.0, 0.0).unwrap();
        assert!(h.contains(c(0.0, 2.0)));
        assert!(!h.contains(c(0.0, 0.5)));
        // a=0, b=0.6: slope b/sqrt(1-b^2) = 0.75, so 1+i is above.
        let h = HyperbolaUpper::new(0.0, 0.6, 0.0).unwrap();
        assert!(h.contains(c(1.0, 1.0)));
        assert!(!h.contains(c(1.0, 0.74)));
    }

    #[test]
    fn transformed_membership_examples() {
        // e^{i pi/2}(0 + Hyp_0) with a=1,b=0: z = -2 maps to 2i.
        let t = TransformedRegion::new(
            PrimitiveRegion::Hyperbola(HyperbolaUpper { a: 1.0, b: 0.0, gamma: 0.0 }),
            std::f64::consts::FRAC_PI_2,
            false,
            c(0.0, 0.0),
        );
        assert!(transformed_membership(&t, c(-2.0, 0.0)));
        assert!(!transformed_membership(&t, c(2.0, 0.0)));

        // i*gamma - Hyp with gamma=0, a=1, b=0: z = -2i is a member.
        let t = TransformedRegion::new(
            PrimitiveRegion::Hyperbola(HyperbolaUpper { a: 1.0, b: 0.0, gamma: 0.0 }),
            0.0,
            true,
            c(0.0, 0.0),
        );
        assert!(transformed_membership(&t, c(0.0, -2.0)));
        assert!(!transformed_membership(&t, c(0.0, 2.0)));
    }

    #[test]
    fn sector_membership_and_mirror() {
        let s = Sector::new(1.0, 0.4, false).unwrap();
        assert!(s.contains(c(1.0, 0.0)));
        assert!(s.contains(c(3.0, 0.5)));
        assert!(!s.contains(c(3.0, 1.5)));
        assert!(!s.contains(c(-1.0, 0.0)));
        let m = Sector::new(-1.0, 0.4, true).unwrap();
        // mirrored sector at -1 contains the negation of points of S_0.4(1).
        assert!(m.contains(c(-3.0, -0.5)));
        assert!(!m.contains(c(1.0, 0.0)));
    }

    #[test]
    fn transform_composition() {
        let outer = Transform { rotation: 0.7, reflect: true, translate: c(1.0, -2.0) };
        let inner = Transform { rotation: -0.3, reflect: false, translate: c(0.5, 0.25) };
        let composed = outer.compose(&inner);
        for k in 0..50 {
            let z = c((k as f64) * 0.37 - 8.0, (k as f64) * 0.11 - 2.0);
            let nested = inner.to_base(outer.to_base(z));
            let direct = composed.to_base(z);
            assert!((nested - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn contains_rejects_nonfinite() {
        let expr = RegionExpr::Full;
        assert!(!contains(&expr, c(f64::NAN, 0.0)));
        assert!(!contains(&expr, c(0.0, f64::INFINITY)));
    }

    #[test]
    fn boundary_line_for_degenerate_hyperbola() {
        // Hyp_0 with a=1,b=0: boundary should approximate Im z = 1.
        let expr = RegionExpr::primitive(PrimitiveRegion::Hyperbola(HyperbolaUpper {
            a: 1.0,
            b: 0.0,
            gamma: 0.0,
        }));
        let window = Window::new(-3.0, 3.0, -3.0, 3.0).unwrap();
        let polys = boundary_samples(&expr, window, 0.05).unwrap();
        assert!(!polys.is_empty());
        let mut count = 0;
        for pl in &polys {
            assert!(!pl.source.ends_with("#masked"));
            for p in &pl.points {
                assert!((p.im - 1.0).abs() < 1e-9);
                count += 1;
            }
        }
        assert!(count > 50);
    }

    #[test]
    fn boundary_disk_on_circle() {
        let expr = RegionExpr::primitive(PrimitiveRegion::Disk { center: c(0.0, 0.0), radius: 1.0 });
        let window = Window::new(-2.0, 2.0, -2.0, 2.0).unwrap();
        let polys = boundary_samples(&expr, window, 0.02).unwrap();
        for pl in &polys {
            for p in &pl.points {
                assert!((p.norm() - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn boundary_sector_rays() {
        let expr = RegionExpr::primitive(PrimitiveRegion::Sector(Sector {
            vertex: 0.0,
            theta: std::f64::consts::FRAC_PI_6,
            mirrored: false,
        }));
        let window = Window::new(-1.0, 4.0, -3.0, 3.0).unwrap();
        let polys = boundary_samples(&expr, window, 0.05).unwrap();
        let t = (std::f64::consts::FRAC_PI_6).tan();
        let mut seen_upper = false;
        let mut seen_lower = false;
        for pl in &polys {
            for p in &pl.points {
                if p.re > 0.1 {
                    assert!((p.im.abs() - t * p.re).abs() < 1e-9);
                    if p.im > 0.0 {
                        seen_upper = true;
                    } else {
                        seen_lower = true;
                    }
                }
            }
        }
        assert!(seen_upper && seen_lower);
    }

    #[test]
    fn masked_points_flagged_inside_union() {
        // Two overlapping disks: the part of one circle interior to the other
        // must be flagged as masked.
        let d1 = RegionExpr::primitive(PrimitiveRegion::Disk { center: c(0.0, 0.0), radius: 1.0 });
        let d2 = RegionExpr::primitive(PrimitiveRegion::Disk { center: c(1.0, 0.0), radius: 1.0 });
        let expr = RegionExpr::union(d1, d2);
        let window = Window::new(-3.0, 3.0, -3.0, 3.0).unwrap();
        let polys = boundary_samples(&expr, window, 0.02).unwrap();
        let masked: usize =
            polys.iter().filter(|p| p.source.ends_with("#masked")).map(|p| p.points.len()).sum();
        let regular: usize =
            polys.iter().filter(|p| !p.source.ends_with("#masked")).map(|p| p.points.len()).sum();
        assert!(masked > 0, "expected interior-masked samples");
        assert!(regular > masked, "most of the circles remain true boundary");
    }

    #[test]
    fn csv_format() {
        let pl = BoundaryPolyline { points: vec![c(1.0, 2.0), c(3.0, 4.0)], source: "leaf0:disk".into() };
        let csv = polylines_to_csv(&[pl]);
        assert!(csv.starts_with("re,im,source\n1,2,leaf0:disk\n"));
    }
}
