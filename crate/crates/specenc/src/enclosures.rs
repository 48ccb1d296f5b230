//! The theorem engine: maps a spectrum hypothesis and a perturbation model to
//! guaranteed resolvent-set regions, derived constants, gap verdicts and
//! resolvent-norm bound functions.
//!
//! Every operation returns a report rather than erroring on a failed theorem
//! hypothesis: `applicable = false` carries a machine-readable reason and the
//! region is reduced to whatever part remains guaranteed (possibly `Empty`).

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::{subordination_to_relbound, PerturbationModel, RelBound, Subordinate};
use crate::regions::{contains, HyperbolaUpper, PrimitiveRegion, RegionExpr, TransformedRegion};

/// Planted eigenvalue for the finite-eigenvalue hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlantedEig {
    pub lambda: Complex64,
    pub multiplicity: usize,
}

/// Which side of `bound` the spectrum's real part lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumSide {
    /// `Re σ(T) ≤ bound`.
    LeftOf,
    /// `Re σ(T) ≥ bound`.
    RightOf,
}

/// Assumption on the spectrum of the unperturbed normal operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SpectrumHypothesis {
    /// `Im σ(T) ≤ gamma`.
    ImUpperBounded { gamma: f64 },
    /// `σ(T) ⊆ R + i[g1, g2]`.
    HorizontalStrip { g1: f64, g2: f64 },
    /// `σ(T) ⊆ R + i[g1, g2]` with the vertical gap `(alpha_t, beta_t)` free.
    HorizontalStripWithGap { g1: f64, g2: f64, alpha_t: f64, beta_t: f64 },
    /// Strip hypothesis plus `Re σ(T)` on one side of `bound`.
    SemiBounded { g1: f64, g2: f64, side: SpectrumSide, bound: f64 },
    /// `σ(T) ⊆ S_θ(vertex)` (or the mirrored sector).
    SectorOnly { vertex: f64, theta: f64, mirrored: bool },
    /// `σ(T) ⊆ S_θ(beta_t) ∪ −S_θ(−alpha_t)`.
    Bisector { alpha_t: f64, beta_t: f64, theta: f64 },
    /// Bisector united with the horizontal strip `|Im| ≤ gamma_t`.
    BisectorPlusStrip { alpha_t: f64, beta_t: f64, theta: f64, gamma_t: f64 },
    /// `(v1, v2) + iR ⊆ ρ(T)`, no bound on the imaginary part.
    VerticalGap { v1: f64, v2: f64 },
    /// `σ(T)` avoids the open axis-aligned rectangle `(v1,v2) × (e1,e2)`.
    RectComplement { v1: f64, v2: f64, e1: f64, e2: f64 },
    /// `σ(T) ⊆ {|z| ≥ radius}`.
    DiskComplement { radius: f64 },
    /// Strip spectrum with the ordered free gaps `(alpha_n, beta_n)`;
    /// `im_bounds` present for the bounded-imaginary-part theorem.
    GapSequence { gaps: Vec<(f64, f64)>, im_bounds: Option<(f64, f64)> },
    /// Gapped strip plus finitely many planted eigenvalues off the strip.
    FiniteEigsPlusStrip {
        g1: f64,
        g2: f64,
        alpha_t: f64,
        beta_t: f64,
        eigs: Vec<PlantedEig>,
    },
    /// `σ(T) ⊆ Π(beta_t) ∪ −Π(−alpha_t)` (parabolic envelopes).
    ParabolicBisector { alpha_t: f64, beta_t: f64 },
}

impl SpectrumHypothesis {
    pub fn validate(&self) -> Result<(), EncloseError> {
        use SpectrumHypothesis::*;
        let bad = |msg: &str| Err(EncloseError::InvalidHypothesis(msg.to_string()));
        match self {
            ImUpperBounded { gamma } if !gamma.is_finite() => bad("gamma must be finite"),
            HorizontalStrip { g1, g2 } if !(g1 <= g2) => bad("requires g1 <= g2"),
            HorizontalStripWithGap { g1, g2, alpha_t, beta_t } => {
                if !(g1 <= g2) {
                    bad("requires g1 <= g2")
                } else if !(alpha_t < beta_t) {
                    bad("requires alpha_t < beta_t")
                } else {
                    Ok(())
                }
            }
            SemiBounded { g1, g2, bound, .. } => {
                if !(g1 <= g2) {
                    bad("requires g1 <= g2")
                } else if !bound.is_finite() {
                    bad("bound must be finite")
                } else {
                    Ok(())
                }
            }
            SectorOnly { theta, .. } | Bisector { theta, .. } | BisectorPlusStrip { theta, .. }
                if !(0.0..std::f64::consts::FRAC_PI_2).contains(theta) =>
            {
                bad("requires theta in [0, pi/2)")
            }
            Bisector { alpha_t, beta_t, .. } | BisectorPlusStrip { alpha_t, beta_t, .. }
                if !(alpha_t < beta_t) =>
            {
                bad("requires alpha_t < beta_t")
            }
            BisectorPlusStrip { gamma_t, .. } if !(*gamma_t >= 0.0) => {
                bad("requires gamma_t >= 0")
            }
            VerticalGap { v1, v2 } if !(v1 < v2) => bad("requires v1 < v2"),
            RectComplement { v1, v2, e1, e2 } if !(v1 < v2 && e1 < e2) => {
                bad("requires v1 < v2 and e1 < e2")
            }
            DiskComplement { radius } if !(*radius > 0.0) => bad("requires radius > 0"),
            GapSequence { gaps, im_bounds } => {
                if gaps.is_empty() {
                    return bad("requires at least one gap");
                }
                for w in gaps.windows(2) {
                    if !(w[0].1 <= w[1].0) {
                        return bad("gaps must be ordered with beta_n <= alpha_{n+1}");
                    }
                }
                if gaps.iter().any(|&(a, b)| !(a < b)) {
                    return bad("each gap requires alpha_n < beta_n");
                }
                if let Some((g1, g2)) = im_bounds {
                    if !(g1 <= g2) {
                        return bad("requires g1 <= g2");
                    }
                }
                Ok(())
            }
            FiniteEigsPlusStrip { g1, g2, alpha_t, beta_t, eigs } => {
                if !(g1 <= g2 && alpha_t < beta_t) {
                    return bad("requires g1 <= g2 and alpha_t < beta_t");
                }
                for e in eigs {
                    if e.multiplicity == 0 {
                        return bad("eigenvalue multiplicities must be positive");
                    }
                    let in_strip = (e.lambda.re <= *alpha_t || e.lambda.re >= *beta_t)
                        && *g1 <= e.lambda.im
                        && e.lambda.im <= *g2;
                    if in_strip {
                        return bad("planted eigenvalues must be disjoint from the gapped strip");
                    }
                }
                Ok(())
            }
            ParabolicBisector { alpha_t, beta_t } if !(alpha_t < beta_t) => {
                bad("requires alpha_t < beta_t")
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum EncloseError {
    #[error("invalid hypothesis: {0}")]
    InvalidHypothesis(String),
    #[error("perturbation model mismatch: {0}")]
    ModelMismatch(&'static str),
}

/// Closed-form resolvent-norm bound attached to a report. Evaluates to `+∞`
/// outside its domain of validity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResolventBound {
    /// `1/(Im z − γ − sqrt(a² + 2b²γ² − 2b²γ Im z + b²|z|²))`.
    ImUpper { gamma: f64, a: f64, b: f64 },
    /// Two-sided strip estimate with `γ` chosen by the side of the strip.
    StripTwoSided { g1: f64, g2: f64, gamma_tilde: f64, a: f64, b: f64 },
    /// Gapped-strip estimate inside the surviving strip, falling back to the
    /// two-sided hyperbola estimate where that is applicable; the minimum of
    /// the applicable values is returned.
    StripGap {
        g1: f64,
        g2: f64,
        gamma_tilde: f64,
        alpha_t: f64,
        beta_t: f64,
        alpha_prime: f64,
        beta_prime: f64,
        a: f64,
        b: f64,
    },
    /// Bisector strip estimate `dist(z, Ω)⁻¹ / (1 − sqrt(b²tan²θ + max{...}))`.
    Bisector {
        alpha_t: f64,
        beta_t: f64,
        theta: f64,
        alpha_ta: f64,
        beta_ta: f64,
        a: f64,
        b: f64,
        /// Exact point-to-sector distance when set; otherwise the looser
        /// `min{Re z − α_T, β_T − Re z}` simplification.
        exact_dist: bool,
    },
}

impl ResolventBound {
    pub fn eval(&self, z: Complex64) -> f64 {
        match *self {
            ResolventBound::ImUpper { gamma, a, b } => {
                let rad = a * a + 2.0 * b * b * gamma * gamma - 2.0 * b * b * gamma * z.im
                    + b * b * z.norm_sqr();
                let denom = z.im - gamma - rad.max(0.0).sqrt();
                if denom > 0.0 {
                    1.0 / denom
                } else {
                    f64::INFINITY
                }
            }
            ResolventBound::StripTwoSided { g1, g2, gamma_tilde, a, b } => {
                strip_two_sided_eval(z, g1, g2, gamma_tilde, a, b)
            }
            ResolventBound::StripGap {
                g1,
                g2,
                gamma_tilde,
                alpha_t,
                beta_t,
                alpha_prime,
                beta_prime,
                a,
                b,
            } => {
                let mut best = strip_two_sided_eval(z, g1, g2, gamma_tilde, a, b);
                if alpha_prime < z.re && z.re < beta_prime {
                    let da = z.re - alpha_t;
                    let db = beta_t - z.re;
                    let denom = 1.0
                        - b.max(
                            ((a * a + b * b * gamma_tilde * gamma_tilde + b * b * alpha_t * alpha_t)
                                .sqrt()
                                / da)
                                .max(
                                    (a * a
                                        + b * b * gamma_tilde * gamma_tilde
                                        + b * b * beta_t * beta_t)
                                        .sqrt()
                                        / db,
                                ),
                        );
                    if denom > 0.0 {
                        let vert = (g2 - z.im).min(z.im - g1).min(0.0);
                        let dist = (da.min(db).powi(2) + vert * vert).sqrt();
                        if dist > 0.0 {
                            best = best.min(1.0 / (dist * denom));
                        }
                    }
                }
                best
            }
            ResolventBound::Bisector { alpha_t, beta_t, theta, alpha_ta, beta_ta, a, b, exact_dist } => {
                if !(alpha_ta < z.re && z.re < beta_ta) {
                    return f64::INFINITY;
                }
                let t = theta.tan();
                let inner = b * b * t * t
                    + (b * b)
                        .max((a * a + b * b * beta_t * beta_t) / (beta_t - z.re).powi(2))
                        .max((a * a + b * b * alpha_t * alpha_t) / (z.re - alpha_t).powi(2));
                let denom = 1.0 - inner.sqrt();
                if denom <= 0.0 {
                    return f64::INFINITY;
                }
                let dist = if exact_dist {
                    dist_to_bisector(z, alpha_t, beta_t, theta)
                } else {
                    (z.re - alpha_t).min(beta_t - z.re)
                };
                if dist > 0.0 {
                    1.0 / (dist * denom)
                } else {
                    f64::INFINITY
                }
            }
        }
    }
}

fn strip_two_sided_eval(z: Complex64, g1: f64, g2: f64, gamma_tilde: f64, a: f64, b: f64) -> f64 {
    let gamma = if z.im > g2 {
        g2
    } else if z.im < g1 {
        g1
    } else {
        return f64::INFINITY;
    };
    let d = (z.im - gamma).abs();
    let rad = b * b * (d * d + z.re * z.re) + a * a + b * b * gamma_tilde * gamma_tilde;
    let denom = d - rad.max(0.0).sqrt();
    if denom > 0.0 {
        1.0 / denom
    } else {
        f64::INFINITY
    }
}

/// Exact distance from `z` to the closed sector `S_θ(vertex)` (or mirror).
pub fn dist_to_sector(z: Complex64, vertex: f64, theta: f64, mirrored: bool) -> f64 {
    let w = if mirrored {
        Complex64::new(vertex - z.re, -z.im)
    } else {
        z - vertex
    };
    if w == Complex64::new(0.0, 0.0) || w.im.atan2(w.re).abs() <= theta {
        return 0.0;
    }
    let mut best = w.norm();
    for ang in [theta, -theta] {
        let dir = Complex64::from_polar(1.0, ang);
        let along = (dir.conj() * w).re;
        if along > 0.0 {
            best = best.min((dir.conj() * w).im.abs());
        }
    }
    best
}

/// Exact distance from `z` to `Ω(α, β, θ) = S_θ(β) ∪ −S_θ(−α)`.
pub fn dist_to_bisector(z: Complex64, alpha_t: f64, beta_t: f64, theta: f64) -> f64 {
    dist_to_sector(z, beta_t, theta, false).min(dist_to_sector(z, alpha_t, theta, true))
}

/// Outcome of an enclosure operation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnclosureReport {
    pub hypothesis: SpectrumHypothesis,
    pub perturbation: PerturbationModel,
    pub applicable: bool,
    pub reason: Option<String>,
    pub constants: BTreeMap<String, f64>,
    /// Guaranteed subset of the resolvent set of `T + A` (may be `Empty`).
    pub region: RegionExpr,
    pub bound: Option<ResolventBound>,
}

impl EnclosureReport {
    /// Evaluate the attached resolvent bound; `+∞` when absent or outside
    /// the bound's domain.
    pub fn bound_value(&self, z: Complex64) -> f64 {
        self.bound.as_ref().map_or(f64::INFINITY, |b| b.eval(z))
    }

    /// JSON form per the report schema: `{hypothesis, perturbation,
    /// applicable, reason?, constants, region, bound_samples?}`.
    pub fn to_json(&self, bound_samples: Option<&[(Complex64, f64)]>) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        obj.insert("hypothesis".into(), serde_json::to_value(&self.hypothesis).unwrap());
        obj.insert("perturbation".into(), serde_json::to_value(&self.perturbation).unwrap());
        obj.insert("applicable".into(), self.applicable.into());
        if let Some(r) = &self.reason {
            obj.insert("reason".into(), r.clone().into());
        }
        obj.insert("constants".into(), serde_json::to_value(&self.constants).unwrap());
        obj.insert("region".into(), serde_json::to_value(&self.region).unwrap());
        if let Some(samples) = bound_samples {
            obj.insert(
                "bound_samples".into(),
                serde_json::Value::Array(
                    samples
                        .iter()
                        .map(|(z, v)| serde_json::json!([z.re, z.im, v]))
                        .collect(),
                ),
            );
        }
        serde_json::Value::Object(obj)
    }

    fn new(h: SpectrumHypothesis, m: PerturbationModel) -> Self {
        Self {
            hypothesis: h,
            perturbation: m,
            applicable: true,
            reason: None,
            constants: BTreeMap::new(),
            region: RegionExpr::Empty,
            bound: None,
        }
    }

    fn set(&mut self, key: &str, value: f64) {
        self.constants.insert(key.to_string(), value);
    }
}

// ---------------------------------------------------------------------------
// region constructors
// ---------------------------------------------------------------------------

fn hyp(m: &RelBound, gamma: f64) -> PrimitiveRegion {
    PrimitiveRegion::Hyperbola(HyperbolaUpper { a: m.a, b: m.b, gamma })
}

/// `i·g + Hyp_γ` — the region above the upper hyperbola shifted to level `g`.
fn hyp_above(m: &RelBound, gamma: f64, g: f64) -> RegionExpr {
    RegionExpr::leaf(TransformedRegion::new(hyp(m, gamma), 0.0, false, Complex64::new(0.0, g)))
}

/// `i·g − Hyp_γ` — the mirror image below level `g`.
fn hyp_below(m: &RelBound, gamma: f64, g: f64) -> RegionExpr {
    RegionExpr::leaf(TransformedRegion::new(hyp(m, gamma), 0.0, true, Complex64::new(0.0, g)))
}

/// Region right of the left boundary hyperbola of a vertical gap at `v`:
/// `Re z > v + sqrt((a²+b²γ² + b²(Im z)²)/(1−b²))`.
fn hyp_right_of(m: &RelBound, gamma: f64, v: f64) -> RegionExpr {
    RegionExpr::leaf(TransformedRegion::new(
        hyp(m, gamma),
        -std::f64::consts::FRAC_PI_2,
        false,
        Complex64::new(v, 0.0),
    ))
}

/// Region left of the right boundary hyperbola of a vertical gap at `v`.
fn hyp_left_of(m: &RelBound, gamma: f64, v: f64) -> RegionExpr {
    RegionExpr::leaf(TransformedRegion::new(
        hyp(m, gamma),
        std::f64::consts::FRAC_PI_2,
        false,
        Complex64::new(v, 0.0),
    ))
}

/// The pair `e^{iθ}(v + Hyp_v) ∪ e^{−iθ}(v − Hyp_v)` excluding a right-opening
/// sector at `v`; `mirrored` gives the analogous pair for the left-opening
/// sector.
fn sector_hyperbola_pair(m: &RelBound, vertex: f64, theta: f64, mirrored: bool) -> RegionExpr {
    let base = hyp(m, vertex);
    let v = Complex64::new(vertex, 0.0);
    if !mirrored {
        RegionExpr::union(
            RegionExpr::leaf(TransformedRegion::new(base, theta, false, v)),
            RegionExpr::leaf(TransformedRegion::new(base, -theta, true, v)),
        )
    } else {
        RegionExpr::union(
            RegionExpr::leaf(TransformedRegion::new(base, -theta, false, v)),
            RegionExpr::leaf(TransformedRegion::new(base, theta, true, v)),
        )
    }
}

fn half_plane_left_of(x: f64) -> RegionExpr {
    RegionExpr::primitive(PrimitiveRegion::HalfPlane { normal_angle: 0.0, offset: x })
}

fn half_plane_right_of(x: f64) -> RegionExpr {
    RegionExpr::primitive(PrimitiveRegion::HalfPlane {
        normal_angle: std::f64::consts::PI,
        offset: -x,
    })
}

fn vstrip(v1: f64, v2: f64) -> RegionExpr {
    RegionExpr::primitive(PrimitiveRegion::VerticalStrip { v1, v2 })
}

fn sqrt_term(m: &RelBound, gamma_tilde: f64, x: f64) -> f64 {
    (m.a * m.a + m.b * m.b * gamma_tilde * gamma_tilde + m.b * m.b * x * x).sqrt()
}

// ---------------------------------------------------------------------------
// the thirteen enclosure operations
// ---------------------------------------------------------------------------

/// `Im σ(T) ≤ gamma` ⇒ `iγ + Hyp_γ ⊆ ρ(T+A)` with an explicit resolvent
/// estimate on that region.
pub fn enclose_im_upper(gamma: f64, m: &RelBound) -> EnclosureReport {
    let h = SpectrumHypothesis::ImUpperBounded { gamma };
    let mut rep = EnclosureReport::new(h, PerturbationModel::RelBound(*m));
    rep.region = hyp_above(m, gamma, gamma);
    rep.set("gamma", gamma);
    rep.set("apex", HyperbolaUpper { a: m.a, b: m.b, gamma }.apex_sq().sqrt());
    rep.bound = Some(ResolventBound::ImUpper { gamma, a: m.a, b: m.b });
    rep
}

/// `σ(T) ⊆ R + i[g1, g2]` ⇒ the exterior of two shifted hyperbolas belongs
/// to `ρ(T+A)`.
pub fn enclose_strip(g1: f64, g2: f64, m: &RelBound) -> EnclosureReport {
    let h = SpectrumHypothesis::HorizontalStrip { g1, g2 };
    let mut rep = EnclosureReport::new(h, PerturbationModel::RelBound(*m));
    let gamma_tilde = g1.abs().max(g2.abs());
    rep.region = RegionExpr::union(hyp_below(m, gamma_tilde, g1), hyp_above(m, gamma_tilde, g2));
    rep.set("gamma_tilde", gamma_tilde);
    rep.bound = Some(ResolventBound::StripTwoSided { g1, g2, gamma_tilde, a: m.a, b: m.b });
    rep
}

/// Gapped strip: the spectral free strip `(alpha_t, beta_t)` survives as
/// `(α', β')` when `α' < β'`; the hyperbola exterior is guaranteed either way.
pub fn enclose_strip_gap(g1: f64, g2: f64, alpha_t: f64, beta_t: f64, m: &RelBound) -> EnclosureReport {
    let h = SpectrumHypothesis::HorizontalStripWithGap { g1, g2, alpha_t, beta_t };
    let mut rep = EnclosureReport::new(h, PerturbationModel::RelBound(*m));
    let gamma_tilde = g1.abs().max(g2.abs());
    let alpha_prime = alpha_t + sqrt_term(m, gamma_tilde, alpha_t);
    let beta_prime = beta_t - sqrt_term(m, gamma_tilde, beta_t);
    rep.set("gamma_tilde", gamma_tilde);
    rep.set("alpha_prime", alpha_prime);
    rep.set("beta_prime", beta_prime);
    let hyps = RegionExpr::union(hyp_below(m, gamma_tilde, g1), hyp_above(m, gamma_tilde, g2));
    if alpha_prime < beta_prime {
        rep.region = RegionExpr::union(vstrip(alpha_prime, beta_prime), hyps);
        rep.bound = Some(ResolventBound::StripGap {
            g1,
            g2,
            gamma_tilde,
            alpha_t,
            beta_t,
            alpha_prime,
            beta_prime,
            a: m.a,
            b: m.b,
        });
    } else {
        rep.applicable = false;
        rep.reason = Some("strip closes: alpha_prime >= beta_prime".to_string());
        rep.region = hyps;
        rep.bound = Some(ResolventBound::StripTwoSided { g1, g2, gamma_tilde, a: m.a, b: m.b });
    }
    rep
}

/// Semibounded real part: `Re σ(T) ≥ bound` keeps `{Re z < β'}` resolvent
/// (`Re σ(T) ≤ bound` keeps `{Re z > α'}`).
pub fn enclose_semibounded(
    g1: f64,
    g2: f64,
    side: SpectrumSide,
    bound: f64,
    m: &RelBound,
) -> EnclosureReport {
    let h = SpectrumHypothesis::SemiBounded { g1, g2, side, bound };
    let mut rep = EnclosureReport::new(h, PerturbationModel::RelBound(*m));
    let gamma_tilde = g1.abs().max(g2.abs());
    rep.set("gamma_tilde", gamma_tilde);
    match side {
        SpectrumSide::RightOf => {
            let beta_prime = bound - sqrt_term(m, gamma_tilde, bound);
            rep.set("beta_prime", beta_prime);
            rep.region = half_plane_left_of(beta_prime);
        }
        SpectrumSide::LeftOf => {
            let alpha_prime = bound + sqrt_term(m, gamma_tilde, bound);
            rep.set("alpha_prime", alpha_prime);
            rep.region = half_plane_right_of(alpha_prime);
        }
    }
    rep
}

/// Sectorial spectrum `σ(T) ⊆ S_θ(vertex)` (or mirrored): rotated-hyperbola
/// pair, plus a half-plane when `b < cos θ`.
pub fn enclose_sector(vertex: f64, theta: f64, mirrored: bool, m: &RelBound) -> EnclosureReport {
    let h = SpectrumHypothesis::SectorOnly { vertex, theta, mirrored };
    let mut rep = EnclosureReport::new(h, PerturbationModel::RelBound(*m));
    let mut region = sector_hyperbola_pair(m, vertex, theta, mirrored);
    rep.set("phi_b", (m.b / (1.0 - m.b * m.b).sqrt()).atan());
    if m.b < theta.cos() {
        let t = theta.tan();
        let shift = (m.a * m.a + m.b * m.b * vertex * vertex).sqrt()
            / (1.0 - m.b * m.b * t * t).sqrt();
        if mirrored {
            let alpha_ta = vertex + shift;
            rep.set("alpha_ta", alpha_ta);
            region = RegionExpr::union(region, half_plane_right_of(alpha_ta));
        } else {
            let beta_ta = vertex - shift;
            rep.set("beta_ta", beta_ta);
            region = RegionExpr::union(region, half_plane_left_of(beta_ta));
        }
    }
    rep.region = region;
    rep
}

fn bisector_constants(alpha_t: f64, beta_t: f64, theta: f64, m: &RelBound) -> Option<(f64, f64)> {
    if m.b < theta.cos() {
        let t = theta.tan();
        let denom = (1.0 - m.b * m.b * t * t).sqrt();
        let alpha_ta = alpha_t + (m.a * m.a + m.b * m.b * alpha_t * alpha_t).sqrt() / denom;
        let beta_ta = beta_t - (m.a * m.a + m.b * m.b * beta_t * beta_t).sqrt() / denom;
        Some((alpha_ta, beta_ta))
    } else {
        None
    }
}

/// Bisectorial spectrum: intersection of the two rotated-hyperbola pairs,
/// united with the surviving vertical strip when `b < cos θ`.
pub fn enclose_bisector(alpha_t: f64, beta_t: f64, theta: f64, m: &RelBound) -> EnclosureReport {
    let h = SpectrumHypothesis::Bisector { alpha_t, beta_t, theta };
    let mut rep = EnclosureReport::new(h, PerturbationModel::RelBound(*m));
    let pair = RegionExpr::intersection(
        sector_hyperbola_pair(m, beta_t, theta, false),
        sector_hyperbola_pair(m, alpha_t, theta, true),
    );
    rep.set("phi_b", (m.b / (1.0 - m.b * m.b).sqrt()).atan());
    match bisector_constants(alpha_t, beta_t, theta, m) {
        Some((alpha_ta, beta_ta)) => {
            rep.set("alpha_ta", alpha_ta);
            rep.set("beta_ta", beta_ta);
            if alpha_ta < beta_ta {
                rep.region = RegionExpr::union(pair, vstrip(alpha_ta, beta_ta));
                rep.bound = Some(ResolventBound::Bisector {
                    alpha_t,
                    beta_t,
                    theta,
                    alpha_ta,
                    beta_ta,
                    a: m.a,
                    b: m.b,
                    exact_dist: true,
                });
            } else {
                rep.region = pair;
            }
        }
        None => {
            rep.region = pair;
        }
    }
    rep
}

/// The strip resolvent estimate of the bisector theorem as a standalone bound
/// function. Requires `b < cos θ` and a nonempty strip.
pub fn resolvent_bound_bisector(
    alpha_t: f64,
    beta_t: f64,
    theta: f64,
    m: &RelBound,
    exact_dist: bool,
) -> Result<ResolventBound, EncloseError> {
    let (alpha_ta, beta_ta) = bisector_constants(alpha_t, beta_t, theta, m)
        .ok_or(EncloseError::ModelMismatch("requires b < cos(theta)"))?;
    if !(alpha_ta < beta_ta) {
        return Err(EncloseError::ModelMismatch("strip is empty: alpha_ta >= beta_ta"));
    }
    Ok(ResolventBound::Bisector {
        alpha_t,
        beta_t,
        theta,
        alpha_ta,
        beta_ta,
        a: m.a,
        b: m.b,
        exact_dist,
    })
}

/// Bisector plus central strip: triple intersection of the two rotated pairs
/// and the shifted-hyperbola exterior of the strip. Requires `b < cos θ`.
pub fn enclose_bisector_strip(
    alpha_t: f64,
    beta_t: f64,
    theta: f64,
    gamma_t: f64,
    m: &RelBound,
) -> EnclosureReport {
    let h = SpectrumHypothesis::BisectorPlusStrip { alpha_t, beta_t, theta, gamma_t };
    let mut rep = EnclosureReport::new(h, PerturbationModel::RelBound(*m));
    if m.b >= theta.cos() {
        rep.applicable = false;
        rep.reason = Some("requires b < cos(theta)".to_string());
        return rep;
    }
    rep.region = RegionExpr::intersect_all([
        sector_hyperbola_pair(m, beta_t, theta, false),
        sector_hyperbola_pair(m, alpha_t, theta, true),
        RegionExpr::union(hyp_above(m, gamma_t, gamma_t), hyp_below(m, gamma_t, -gamma_t)),
    ]);
    if let Some((alpha_ta, beta_ta)) = bisector_constants(alpha_t, beta_t, theta, m) {
        rep.set("alpha_ta", alpha_ta);
        rep.set("beta_ta", beta_ta);
    }
    rep
}

/// Interior vertical gap `(v1, v2) + iR ⊆ ρ(T)`: the region between the two
/// inward-bending hyperbolas survives.
pub fn enclose_interior_strip(v1: f64, v2: f64, m: &RelBound) -> EnclosureReport {
    let h = SpectrumHypothesis::VerticalGap { v1, v2 };
    let mut rep = EnclosureReport::new(h, PerturbationModel::RelBound(*m));
    let gamma_tilde = v1.abs().max(v2.abs());
    rep.set("gamma_tilde", gamma_tilde);
    rep.region = RegionExpr::intersection(
        hyp_right_of(m, gamma_tilde, v1),
        hyp_left_of(m, gamma_tilde, v2),
    );
    rep
}

/// Spectrum avoiding an open rectangle: fourfold hyperbola intersection.
pub fn enclose_rect_complement(v1: f64, v2: f64, e1: f64, e2: f64, m: &RelBound) -> EnclosureReport {
    let h = SpectrumHypothesis::RectComplement { v1, v2, e1, e2 };
    let mut rep = EnclosureReport::new(h, PerturbationModel::RelBound(*m));
    let gamma_tilde = v1.abs().max(v2.abs());
    let eta_tilde = e1.abs().max(e2.abs());
    rep.set("gamma_tilde", gamma_tilde);
    rep.set("eta_tilde", eta_tilde);
    // spectrum below e1 keeps the region above its hyperbola, spectrum above
    // e2 keeps the region below; together with the vertical pair this is the
    // pinched open rectangle.
    rep.region = RegionExpr::intersect_all([
        hyp_right_of(m, gamma_tilde, v1),
        hyp_left_of(m, gamma_tilde, v2),
        hyp_above(m, eta_tilde, e1),
        hyp_below(m, eta_tilde, e2),
    ]);
    rep
}

/// Spectrum outside the disk of radius `R`: the disk of radius
/// `r = R − sqrt(a² + b²R²)` survives when `r > 0`.
pub fn enclose_disk_complement(radius: f64, m: &RelBound) -> EnclosureReport {
    let h = SpectrumHypothesis::DiskComplement { radius };
    let mut rep = EnclosureReport::new(h, PerturbationModel::RelBound(*m));
    let r = radius - (m.a * m.a + m.b * m.b * radius * radius).sqrt();
    rep.set("r", r);
    if r > 0.0 {
        rep.region = RegionExpr::primitive(PrimitiveRegion::Disk {
            center: Complex64::new(0.0, 0.0),
            radius: r,
        });
    } else {
        rep.applicable = false;
        rep.reason = Some("perturbation too large: r <= 0".to_string());
    }
    rep
}

// ---------------------------------------------------------------------------
// gap sequences
// ---------------------------------------------------------------------------

/// Verdict for one spectral gap.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapVerdict {
    pub index: usize,
    pub alpha: f64,
    pub beta: f64,
    pub alpha_prime: f64,
    pub beta_prime: f64,
    pub open: bool,
    /// Interior pinched region (unbounded-imaginary-part theorem only).
    pub interior_region: Option<RegionExpr>,
}

/// Per-gap verdicts plus the sequence-level thresholds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapSequenceReport {
    pub applicable: bool,
    pub reason: Option<String>,
    pub per_gap: Vec<GapVerdict>,
    /// `b = 0` criterion: gaps of width above `2a` stay open.
    pub width_threshold: Option<f64>,
    /// `b > 0` criterion on `β_n/α_n`: `(1+b)/(1−b)` in the bounded case,
    /// `1 + 2b/(sqrt(1−b²) − 2b)` in the unbounded case.
    pub ratio_threshold: Option<f64>,
}

/// Infinitely many gaps with bounded imaginary part: per-gap gapped-strip
/// constants and the `(1+b)/(1−b)` ratio criterion.
pub fn gaps_bdd(gaps: &[(f64, f64)], g1: f64, g2: f64, m: &RelBound) -> GapSequenceReport {
    let gamma_tilde = g1.abs().max(g2.abs());
    let per_gap = gaps
        .iter()
        .enumerate()
        .map(|(i, &(alpha, beta))| {
            let ap = alpha + sqrt_term(m, gamma_tilde, alpha);
            let bp = beta - sqrt_term(m, gamma_tilde, beta);
            GapVerdict {
                index: i,
                alpha,
                beta,
                alpha_prime: ap,
                beta_prime: bp,
                open: bp > ap,
                interior_region: None,
            }
        })
        .collect();
    GapSequenceReport {
        applicable: true,
        reason: None,
        per_gap,
        width_threshold: if m.b == 0.0 { Some(2.0 * m.a) } else { None },
        ratio_threshold: if m.b > 0.0 { Some((1.0 + m.b) / (1.0 - m.b)) } else { None },
    }
}

/// Infinitely many gaps without an imaginary bound: requires `b < 1/sqrt(5)`;
/// per-gap constants use `sqrt((a² + b²β_n²)/(1−b²))` on both sides and each
/// open gap carries the pinched interior region.
pub fn gaps_unbdd(gaps: &[(f64, f64)], m: &RelBound) -> GapSequenceReport {
    if m.b >= 1.0 / 5.0_f64.sqrt() {
        return GapSequenceReport {
            applicable: false,
            reason: Some("requires b < 1/sqrt(5)".to_string()),
            per_gap: vec![],
            width_threshold: None,
            ratio_threshold: None,
        };
    }
    let per_gap = gaps
        .iter()
        .enumerate()
        .map(|(i, &(alpha, beta))| {
            let s = ((m.a * m.a + m.b * m.b * beta * beta) / (1.0 - m.b * m.b)).sqrt();
            let ap = alpha + s;
            let bp = beta - s;
            let open = bp > ap;
            GapVerdict {
                index: i,
                alpha,
                beta,
                alpha_prime: ap,
                beta_prime: bp,
                open,
                interior_region: open.then(|| enclose_interior_strip(alpha, beta, m).region),
            }
        })
        .collect();
    GapSequenceReport {
        applicable: true,
        reason: None,
        per_gap,
        width_threshold: if m.b == 0.0 { Some(2.0 * m.a) } else { None },
        ratio_threshold: if m.b > 0.0 {
            Some(1.0 + 2.0 * m.b / ((1.0 - m.b * m.b).sqrt() - 2.0 * m.b))
        } else {
            None
        },
    }
}

// ---------------------------------------------------------------------------
// finite eigenvalues, disks and contours
// ---------------------------------------------------------------------------

/// Integration contour for multiplicity homotopies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Contour {
    Circle { center: Complex64, radius: f64 },
    Rectangle { x0: f64, x1: f64, y0: f64, y1: f64 },
}

impl Contour {
    /// `n` points along the contour.
    pub fn sample(&self, n: usize) -> Vec<Complex64> {
        match *self {
            Contour::Circle { center, radius } => (0..n)
                .map(|i| {
                    center
                        + Complex64::from_polar(
                            radius,
                            2.0 * std::f64::consts::PI * i as f64 / n as f64,
                        )
                })
                .collect(),
            Contour::Rectangle { x0, x1, y0, y1 } => {
                let per = (x1 - x0).abs() + (y1 - y0).abs();
                let total = 2.0 * per;
                (0..n)
                    .map(|i| {
                        let mut t = total * i as f64 / n as f64;
                        if t < x1 - x0 {
                            return Complex64::new(x0 + t, y0);
                        }
                        t -= x1 - x0;
                        if t < y1 - y0 {
                            return Complex64::new(x1, y0 + t);
                        }
                        t -= y1 - y0;
                        if t < x1 - x0 {
                            return Complex64::new(x1 - t, y1);
                        }
                        t -= x1 - x0;
                        Complex64::new(x0, y1 - t)
                    })
                    .collect()
            }
        }
    }

    /// Strict interior test.
    pub fn strictly_inside(&self, z: Complex64) -> bool {
        match *self {
            Contour::Circle { center, radius } => (z - center).norm() < radius,
            Contour::Rectangle { x0, x1, y0, y1 } => {
                x0 < z.re && z.re < x1 && y0 < z.im && z.im < y1
            }
        }
    }
}

/// Homotopy plan executed by the lab: contours plus the `s` grid for `T + sA`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomotopyPlan {
    pub contours: Vec<Contour>,
    pub s_grid: Vec<f64>,
}

/// Report of the finite-eigenvalue enclosure: region, per-disk radii, which
/// disks pass the inflation containment check and the resulting homotopy plan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvDisksReport {
    pub report: EnclosureReport,
    pub radii: Vec<f64>,
    /// Largest inflation `2ε_k` such that `K_{r_k + 2ε_k}(λ_k)` stays inside
    /// the region with disk `k` removed (0 when the check fails).
    pub inflation: Vec<f64>,
    pub stable: Vec<bool>,
    pub plan: HomotopyPlan,
}

/// Gapped strip plus finitely many eigenvalues: the surviving region minus the
/// perturbation disks `K_{r_j}(λ_j)`, the per-disk inflation check of the
/// multiplicity theorem, and the homotopy plan for the lab.
pub fn ev_disks(
    g1: f64,
    g2: f64,
    alpha_t: f64,
    beta_t: f64,
    eigs: &[PlantedEig],
    m: &RelBound,
) -> Result<EvDisksReport, EncloseError> {
    let h = SpectrumHypothesis::FiniteEigsPlusStrip {
        g1,
        g2,
        alpha_t,
        beta_t,
        eigs: eigs.to_vec(),
    };
    h.validate()?;
    let mut rep = EnclosureReport::new(h, PerturbationModel::RelBound(*m));
    let gamma_tilde = g1.abs().max(g2.abs());
    let alpha_prime = alpha_t + sqrt_term(m, gamma_tilde, alpha_t);
    let beta_prime = beta_t - sqrt_term(m, gamma_tilde, beta_t);
    rep.set("gamma_tilde", gamma_tilde);
    rep.set("alpha_prime", alpha_prime);
    rep.set("beta_prime", beta_prime);

    let radii: Vec<f64> =
        eigs.iter().map(|e| (m.a * m.a + m.b * m.b * e.lambda.norm_sqr()).sqrt()).collect();

    let base_parts = {
        let mut parts =
            vec![RegionExpr::union(hyp_below(m, gamma_tilde, g1), hyp_above(m, gamma_tilde, g2))];
        if alpha_prime <= beta_prime {
            parts.push(vstrip(alpha_prime, beta_prime));
        }
        RegionExpr::union_all(parts)
    };
    let disks = |skip: Option<usize>| {
        RegionExpr::union_all(eigs.iter().enumerate().filter(|(j, _)| Some(*j) != skip).map(
            |(j, e)| {
                RegionExpr::primitive(PrimitiveRegion::Disk { center: e.lambda, radius: radii[j] })
            },
        ))
    };
    rep.region = if eigs.is_empty() {
        base_parts.clone()
    } else {
        RegionExpr::intersection(base_parts.clone(), RegionExpr::complement(disks(None)))
    };

    // Inflation containment check per disk: largest rho with the circle of
    // radius r_k + rho inside the region-without-k, found by bisection on
    // sampled circles.
    let mut inflation = Vec::with_capacity(eigs.len());
    let mut stable = Vec::with_capacity(eigs.len());
    let mut contours = Vec::new();
    let span = (beta_t - alpha_t).max(1.0);
    for (k, e) in eigs.iter().enumerate() {
        let region_wo_k = if eigs.len() > 1 {
            RegionExpr::intersection(base_parts.clone(), RegionExpr::complement(disks(Some(k))))
        } else {
            base_parts.clone()
        };
        let circle_inside = |rho: f64|

            (0..256).all(|i| {
                let p = e.lambda
                    + Complex64::from_polar(
                        radii[k] + rho,
                        2.0 * std::f64::consts::PI * i as f64 / 256.0,
                    );
                contains(&region_wo_k, p)
            });
        let mut lo = 0.0_f64;
        let mut hi = span;
        if circle_inside(1e-9 * span) {
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if circle_inside(mid) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
        }
        inflation.push(lo);
        let ok = lo > 1e-9 * span;
        stable.push(ok);
        if ok {
            contours.push(Contour::Circle { center: e.lambda, radius: radii[k] + lo / 2.0 });
        }
    }
    let plan = HomotopyPlan { contours, s_grid: (0..=10).map(|i| i as f64 / 10.0).collect() };
    Ok(EvDisksReport { report: rep, radii, inflation, stable, plan })
}

/// Rectangle-contour construction around all planted eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RectContourReport {
    pub r1: f64,
    pub r_n: f64,
    pub r_tilde1: f64,
    pub r_tilde2: f64,
    pub eta_min: f64,
    pub eta: f64,
    pub valid: bool,
    pub reason: Option<String>,
    pub contour: Option<Contour>,
}

/// Rectangular contour with corners `R̃₁ ± iη`, `R̃₂ ± iη` isolating all
/// planted eigenvalues inside `ρ(T + sA)` for every `s ∈ [0,1]`. The side
/// positions default to interval midpoints and `η` to 1.05 times the minimal
/// feasible value.
pub fn rect_contour(
    g1: f64,
    g2: f64,
    alpha_t: f64,
    beta_t: f64,
    eigs: &[PlantedEig],
    m: &RelBound,
    eta: Option<f64>,
) -> Result<RectContourReport, EncloseError> {
    if eigs.is_empty() {
        return Err(EncloseError::InvalidHypothesis("needs at least one eigenvalue".into()));
    }
    let mut sorted = eigs.to_vec();
    sorted.sort_by(|x, y| x.lambda.re.partial_cmp(&y.lambda.re).unwrap());
    if sorted.iter().any(|e| !(g1 < e.lambda.im && e.lambda.im < g2)) {
        return Err(EncloseError::InvalidHypothesis(
            "eigenvalues must satisfy g1 < Im lambda < g2".into(),
        ));
    }
    let gamma_tilde = g1.abs().max(g2.abs());
    let alpha_prime = alpha_t + sqrt_term(m, gamma_tilde, alpha_t);
    let beta_prime = beta_t - sqrt_term(m, gamma_tilde, beta_t);
    let re1 = sorted.first().unwrap().lambda.re;
    let re_n = sorted.last().unwrap().lambda.re;
    let r1 = re1 - sqrt_term(m, gamma_tilde, re1);
    let r_n = re_n + sqrt_term(m, gamma_tilde, re_n);

    let mut report = RectContourReport {
        r1,
        r_n,
        r_tilde1: 0.5 * (alpha_prime + r1),
        r_tilde2: 0.5 * (r_n + beta_prime),
        eta_min: f64::NAN,
        eta: f64::NAN,
        valid: true,
        reason: None,
        contour: None,
    };
    if !(alpha_prime < r1) || !(r_n < beta_prime) {
        report.valid = false;
        report.reason =
            Some("vertical sides do not fit: requires alpha_prime < R1 and R_N < beta_prime".into());
        return Ok(report);
    }
    // Horizontal segments at +/- eta must lie inside the shifted hyperbola
    // regions; the worst abscissa is the larger |R~|.
    let x = report.r_tilde1.abs().max(report.r_tilde2.abs());
    let rise = ((m.a * m.a + m.b * m.b * gamma_tilde * gamma_tilde + m.b * m.b * x * x)
        / (1.0 - m.b * m.b))
        .sqrt();
    let eta_min = g2.max(-g1) + rise;
    report.eta_min = eta_min;
    let eta = eta.unwrap_or(1.05 * eta_min);
    report.eta = eta;
    if !(eta > eta_min) {
        report.valid = false;
        report.reason = Some(format!("eta = {eta} must exceed the minimal feasible {eta_min}"));
        return Ok(report);
    }
    report.contour = Some(Contour::Rectangle {
        x0: report.r_tilde1,
        x1: report.r_tilde2,
        y0: -eta,
        y1: eta,
    });
    Ok(report)
}

/// Essential-spectrum-free region: the same region expressions as the gapped
/// strip / bisector enclosures, reinterpreted (metadata only) as
/// `C \ σ_ess(T+A)` where at most countably many isolated eigenvalues live.
pub fn essgap_regions(h: &SpectrumHypothesis, m: &RelBound) -> Result<RegionExpr, EncloseError> {
    h.validate()?;
    match *h {
        SpectrumHypothesis::HorizontalStripWithGap { g1, g2, alpha_t, beta_t } => {
            Ok(enclose_strip_gap(g1, g2, alpha_t, beta_t, m).region)
        }
        SpectrumHypothesis::Bisector { alpha_t, beta_t, theta } => {
            Ok(enclose_bisector(alpha_t, beta_t, theta, m).region)
        }
        _ => Err(EncloseError::InvalidHypothesis(
            "essential-gap regions are defined for gapped strips and bisectors".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// p-subordinate enclosures
// ---------------------------------------------------------------------------

/// Subordinate perturbation of a gapped strip with `|Im σ(T)| ≤ gamma_t`:
/// the strip shrinks by `K = c·max{|α_T+iγ_T|^p, |β_T+iγ_T|^p}` on each side
/// and survives iff `2K < β_T − α_T`.
pub fn psub_strip(alpha_t: f64, beta_t: f64, gamma_t: f64, s: &Subordinate) -> EnclosureReport {
    let h = SpectrumHypothesis::HorizontalStripWithGap {
        g1: -gamma_t,
        g2: gamma_t,
        alpha_t,
        beta_t,
    };
    let mut rep = EnclosureReport::new(h, PerturbationModel::Subordinate(*s));
    if !gamma_t.is_finite() || gamma_t < 0.0 {
        rep.applicable = false;
        rep.reason = Some("requires a finite imaginary bound gamma_t >= 0".to_string());
        return rep;
    }
    let k = s.c
        * Complex64::new(alpha_t, gamma_t)
            .norm()
            .powf(s.p)
            .max(Complex64::new(beta_t, gamma_t).norm().powf(s.p));
    rep.set("k", k);
    let alpha_p = alpha_t + k;
    let beta_p = beta_t - k;
    rep.set("alpha_prime", alpha_p);
    rep.set("beta_prime", beta_p);
    if alpha_p < beta_p {
        rep.region = vstrip(alpha_p, beta_p);
    } else {
        rep.applicable = false;
        rep.reason = Some("strip closes: 2K >= beta_t - alpha_t".to_string());
    }
    rep
}

/// The gapped-strip enclosure reached through the Young conversion of the
/// subordinate model into relative-bound constants: used to compare the
/// direct route with the converted one. `eps` defaults to a golden-section
/// search maximizing the surviving strip width.
pub fn psub_strip_via_relbound(
    alpha_t: f64,
    beta_t: f64,
    gamma_t: f64,
    s: &Subordinate,
    eps: Option<f64>,
) -> Result<(RelBound, EnclosureReport), EncloseError> {
    if s.p >= 1.0 {
        return Err(EncloseError::ModelMismatch("requires p < 1"));
    }
    let width = |eps: f64| -> f64 {
        match subordination_to_relbound(s, eps) {
            Ok(rb) => {
                let r = enclose_strip_gap(-gamma_t, gamma_t, alpha_t, beta_t, &rb);
                r.constants["beta_prime"] - r.constants["alpha_prime"]
            }
            Err(_) => f64::NEG_INFINITY,
        }
    };
    let chosen = match eps {
        Some(e) => e,
        None => {
            // golden-section maximization over (0, 1)
            let phi = 0.618_033_988_749_894_9;
            let (mut lo, mut hi) = (1e-6, 1.0 - 1e-6);
            let (mut x1, mut x2) = (hi - phi * (hi - lo), lo + phi * (hi - lo));
            let (mut f1, mut f2) = (width(x1), width(x2));
            for _ in 0..80 {
                if f1 < f2 {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + phi * (hi - lo);
                    f2 = width(x2);
                } else {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - phi * (hi - lo);
                    f1 = width(x1);
                }
            }
            0.5 * (lo + hi)
        }
    };
    let rb = subordination_to_relbound(s, chosen)
        .map_err(|_| EncloseError::ModelMismatch("invalid eps for the Young conversion"))?;
    Ok((rb, enclose_strip_gap(-gamma_t, gamma_t, alpha_t, beta_t, &rb)))
}

/// Parabolic bisector with a `p`-subordinate perturbation, `p < 1/2`: finds
/// the tail threshold `ν₀` and the smallest margin `M` with
/// `c(M + sqrt(ζ_T² + ν₀²))^p / M < 1`, keeping the strip
/// `(α_T + M, β_T − M)` in the resolvent set.
pub fn psub_parabola(alpha_t: f64, beta_t: f64, s: &Subordinate) -> EnclosureReport {
    let h = SpectrumHypothesis::ParabolicBisector { alpha_t, beta_t };
    let mut rep = EnclosureReport::new(h, PerturbationModel::Subordinate(*s));
    if s.p >= 0.5 {
        rep.applicable = false;
        rep.reason = Some("requires p < 1/2".to_string());
        return rep;
    }
    let zeta = alpha_t.abs().max(beta_t.abs());
    rep.set("zeta", zeta);
    if s.c == 0.0 {
        rep.set("nu0", 0.5);
        rep.set("m", 0.0);
        rep.region = vstrip(alpha_t, beta_t);
        return rep;
    }
    let g = |nu: f64| -> f64 {
        let root = (nu - 0.25).sqrt();
        s.c * (root + (zeta * zeta + nu * nu).sqrt()).powf(s.p) / root
    };
    // Find the last crossing of g = 1 on a geometric grid; g -> 0 like
    // c·nu^{p - 1/2} since p < 1/2, so a crossing exists.
    let mut grid = vec![0.5 + 1e-9];
    while *grid.last().unwrap() < 1e12 {
        let next = grid.last().unwrap() * 1.5;
        grid.push(next);
    }
    let mut nu0 = 0.5;
    let mut last_bad: Option<usize> = None;
    for (i, &nu) in grid.iter().enumerate() {
        if g(nu) >= 1.0 {
            last_bad = Some(i);
        }
    }
    if let Some(i) = last_bad {
        if i + 1 >= grid.len() {
            rep.applicable = false;
            rep.reason = Some("no tail threshold nu0 found below 1e12".to_string());
            return rep;
        }
        let (mut lo, mut hi) = (grid[i], grid[i + 1]);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) >= 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        nu0 = hi.max(0.5);
    }
    // heuristic tail verification on nu0 * 2^k plus the analytic limit
    for k in 0..=30 {
        let nu = nu0 * (1u64 << k.min(40)) as f64;
        if g(nu.max(nu0 * (1.0 + 1e-12))) >= 1.0 {
            rep.applicable = false;
            rep.reason = Some(format!("tail check failed at nu = {nu}"));
            return rep;
        }
    }
    rep.set("nu0", nu0);

    let f = |mval: f64| s.c * (mval + (zeta * zeta + nu0 * nu0).sqrt()).powf(s.p) / mval;
    let half_gap = 0.5 * (beta_t - alpha_t);
    if f(half_gap * (1.0 - 1e-12)) >= 1.0 {
        rep.applicable = false;
        rep.reason = Some("no admissible margin M below the half gap".to_string());
        return rep;
    }
    // f is strictly decreasing; bisect for the crossing and take the smallest
    // admissible M just above it (widest strip).
    let mut lo = half_gap * 1e-15;
    let mut hi = half_gap;
    if f(lo) < 1.0 {
        hi = lo;
    } else {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) >= 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    let m_margin = hi * (1.0 + 1e-12);
    rep.set("m", m_margin);
    rep.region = vstrip(alpha_t + m_margin, beta_t - m_margin);
    rep
}

// ---------------------------------------------------------------------------
// dispatcher
// ---------------------------------------------------------------------------

/// Map a hypothesis and perturbation model to the matching enclosure.
pub fn enclose(
    h: &SpectrumHypothesis,
    m: &PerturbationModel,
) -> Result<EnclosureReport, EncloseError> {
    h.validate()?;
    use SpectrumHypothesis::*;
    match (h, m) {
        (ImUpperBounded { gamma }, PerturbationModel::RelBound(rb)) => {
            Ok(enclose_im_upper(*gamma, rb))
        }
        (HorizontalStrip { g1, g2 }, PerturbationModel::RelBound(rb)) => {
            Ok(enclose_strip(*g1, *g2, rb))
        }
        (HorizontalStripWithGap { g1, g2, alpha_t, beta_t }, PerturbationModel::RelBound(rb)) => {
            Ok(enclose_strip_gap(*g1, *g2, *alpha_t, *beta_t, rb))
        }
        (HorizontalStripWithGap { g1, g2, alpha_t, beta_t }, PerturbationModel::Subordinate(s)) => {
            Ok(psub_strip(*alpha_t, *beta_t, g1.abs().max(g2.abs()), s))
        }
        (SemiBounded { g1, g2, side, bound }, PerturbationModel::RelBound(rb)) => {
            Ok(enclose_semibounded(*g1, *g2, *side, *bound, rb))
        }
        (SectorOnly { vertex, theta, mirrored }, PerturbationModel::RelBound(rb)) => {
            Ok(enclose_sector(*vertex, *theta, *mirrored, rb))
        }
        (Bisector { alpha_t, beta_t, theta }, PerturbationModel::RelBound(rb)) => {
            Ok(enclose_bisector(*alpha_t, *beta_t, *theta, rb))
        }
        (BisectorPlusStrip { alpha_t, beta_t, theta, gamma_t }, PerturbationModel::RelBound(rb)) => {
            Ok(enclose_bisector_strip(*alpha_t, *beta_t, *theta, *gamma_t, rb))
        }
        (VerticalGap { v1, v2 }, PerturbationModel::RelBound(rb)) => {
            Ok(enclose_interior_strip(*v1, *v2, rb))
        }
        (RectComplement { v1, v2, e1, e2 }, PerturbationModel::RelBound(rb)) => {
            Ok(enclose_rect_complement(*v1, *v2, *e1, *e2, rb))
        }
        (DiskComplement { radius }, PerturbationModel::RelBound(rb)) => {
            Ok(enclose_disk_complement(*radius, rb))
        }
        (FiniteEigsPlusStrip { g1, g2, alpha_t, beta_t, eigs }, PerturbationModel::RelBound(rb)) => {
            Ok(ev_disks(*g1, *g2, *alpha_t, *beta_t, eigs, rb)?.report)
        }
        (ParabolicBisector { alpha_t, beta_t }, PerturbationModel::Subordinate(s)) => {
            Ok(psub_parabola(*alpha_t, *beta_t, s))
        }
        (ParabolicBisector { .. }, PerturbationModel::RelBound(_)) => Err(
            EncloseError::ModelMismatch("the parabolic enclosure needs a subordinate perturbation"),
        ),
        (GapSequence { .. }, _) => Err(EncloseError::ModelMismatch(
            "gap sequences are handled by gaps_bdd / gaps_unbdd",
        )),
        (_, PerturbationModel::Subordinate(_)) => Err(EncloseError::ModelMismatch(
            "this hypothesis needs a relative bound; convert with subordination_to_relbound",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn im_upper_basic() {
        let m = RelBound::new(1.0, 0.0).unwrap();
        let rep = enclose_im_upper(0.0, &m);
        assert!(contains(&rep.region, c(0.0, 2.0)));
        assert!(!contains(&rep.region, c(0.0, 0.5)));
        assert!((rep.bound_value(c(0.0, 2.0)) - 1.0).abs() < 1e-15);

        // unperturbed: bound is 1/(Im z - gamma)
        let m0 = RelBound::new(0.0, 0.0).unwrap();
        let rep = enclose_im_upper(1.0, &m0);
        assert!((rep.bound_value(c(3.0, 4.0)) - 1.0 / 3.0).abs() < 1e-15);
        assert!(rep.bound_value(c(0.0, 0.5)).is_infinite());
    }

    #[test]
    fn im_upper_radicand_identity() {
        // a^2 + 2b^2 g^2 - 2 b^2 g Im z + b^2 |z|^2 = a^2 + b^2 g^2 + b^2 |z - ig|^2
        let m = RelBound::new(0.7, 0.45).unwrap();
        let gamma = -1.3;
        for k in 0..1000 {
            let z = c((k as f64 * 0.377).sin() * 20.0, (k as f64 * 0.713).cos() * 20.0);
            let lhs = m.a * m.a + 2.0 * m.b * m.b * gamma * gamma
                - 2.0 * m.b * m.b * gamma * z.im
                + m.b * m.b * z.norm_sqr();
            let rhs = m.a * m.a
                + m.b * m.b * gamma * gamma
                + m.b * m.b * (z - c(0.0, gamma)).norm_sqr();
            assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
            assert!(lhs >= 0.0);
        }
    }

    #[test]
    fn strip_symmetric_matches_closed_form() {
        // g1 = -g2: membership equals the symmetric two-hyperbola formula.
        let m = RelBound::new(0.8, 0.35).unwrap();
        let gamma = 1.1;
        let rep = enclose_strip(-gamma, gamma, &m);
        for i in 0..60 {
            for j in 0..60 {
                let z = c(-6.0 + 0.2 * i as f64, -6.0 + 0.2 * j as f64);
                let sym = z.im.abs() > gamma
                    && (m.a * m.a + m.b * m.b * (z.re * z.re + gamma * gamma))
                        / (1.0 - m.b * m.b)
                        < (z.im.abs() - gamma) * (z.im.abs() - gamma);
                assert_eq!(contains(&rep.region, z), sym, "mismatch at {z}");
            }
        }
    }

    #[test]
    fn strip_gap_constants() {
        let m = RelBound::new(1.0, 0.0).unwrap();
        let rep = enclose_strip_gap(-0.5, 0.5, -2.0, 3.0, &m);
        assert_eq!(rep.constants["alpha_prime"], -1.0);
        assert_eq!(rep.constants["beta_prime"], 2.0);

        let m = RelBound::new(0.6, 0.3).unwrap();
        let rep = enclose_strip_gap(-1.0, 1.0, -2.0, 2.0, &m);
        assert!((rep.constants["beta_prime"] - 1.1).abs() < 1e-12);
    }

    #[test]
    fn strip_gap_closes_when_too_wide() {
        let m = RelBound::new(3.0, 0.0).unwrap();
        let rep = enclose_strip_gap(-0.5, 0.5, -1.0, 1.0, &m);
        assert!(!rep.applicable);
        assert!(rep.reason.as_deref().unwrap_or("").contains("strip closes"));
        // hyperbola exterior still guaranteed
        assert!(contains(&rep.region, c(0.0, 30.0)));
    }

    #[test]
    fn semibounded_examples() {
        let m = RelBound::new(1.0, 0.0).unwrap();
        let rep = enclose_semibounded(-0.5, 0.5, SpectrumSide::RightOf, 0.0, &m);
        assert_eq!(rep.constants["beta_prime"], -1.0);
        assert!(contains(&rep.region, c(-2.0, 5.0)));
        assert!(!contains(&rep.region, c(0.0, 0.0)));

        let m0 = RelBound::new(0.0, 0.0).unwrap();
        let rep = enclose_semibounded(-0.5, 0.5, SpectrumSide::RightOf, 2.0, &m0);
        assert_eq!(rep.constants["beta_prime"], 2.0);
    }

    #[test]
    fn semibounded_is_strip_gap_limit() {
        let m = RelBound::new(0.7, 0.2).unwrap();
        let semi = enclose_semibounded(-1.0, 1.0, SpectrumSide::RightOf, 3.0, &m);
        let far = enclose_strip_gap(-1.0, 1.0, -1e9, 3.0, &m);
        assert!(
            (semi.constants["beta_prime"] - far.constants["beta_prime"]).abs() < 1e-9,
            "beta_prime should agree in the far-gap limit"
        );
    }

    #[test]
    fn sector_constants_and_gates() {
        let m = RelBound::new(1.0, 0.0).unwrap();
        let rep = enclose_sector(2.0, std::f64::consts::FRAC_PI_4, false, &m);
        assert!((rep.constants["beta_ta"] - 1.0).abs() < 1e-15);
        assert!(contains(&rep.region, c(0.0, 0.0)));

        // b >= cos(theta): no half-plane term.
        let m = RelBound::new(0.1, 0.8).unwrap();
        let rep = enclose_sector(0.0, 0.7, false, &m);
        assert!(!rep.constants.contains_key("beta_ta"));
        assert!(!contains(&rep.region, c(-1e6, 0.0)));
    }

    #[test]
    fn bisector_theta_zero_matches_strip_gap_constants() {
        let m = RelBound::new(0.9, 0.4).unwrap();
        let rep = enclose_bisector(-2.0, 3.0, 0.0, &m);
        let sg = enclose_strip_gap(0.0, 0.0, -2.0, 3.0, &m);
        assert!((rep.constants["alpha_ta"] - sg.constants["alpha_prime"]).abs() < 1e-14);
        assert!((rep.constants["beta_ta"] - sg.constants["beta_prime"]).abs() < 1e-14);
    }

    #[test]
    fn bisector_asymptote_angle() {
        // phi_b for b = 0.5 is 30 degrees.
        let m = RelBound::new(0.0, 0.5).unwrap();
        let rep = enclose_bisector(-1.0, 1.0, 0.2, &m);
        assert!((rep.constants["phi_b"] - std::f64::consts::PI / 6.0).abs() < 1e-12);
    }

    #[test]
    fn bisector_strip_consistency() {
        let m = RelBound::new(0.5, 0.2).unwrap();
        // gamma_t = 0 keeps exactly the bisector pair intersection behaviour
        // away from the real axis.
        let bs = enclose_bisector_strip(-2.0, 2.0, 0.3, 0.0, &m);
        let bi = enclose_bisector(-2.0, 2.0, 0.3, &m);
        for i in 0..40 {
            for j in 1..40 {
                let z = c(-8.0 + 0.4 * i as f64, 0.2 * j as f64);
                if contains(&bs.region, z) {
                    assert!(contains(&bi.region, z), "bisector+strip must refine bisector at {z}");
                }
            }
        }
    }

    #[test]
    fn interior_strip_b_zero() {
        let m = RelBound::new(1.0, 0.0).unwrap();
        let rep = enclose_interior_strip(-2.0, 2.0, &m);
        for j in -30..=30 {
            let y = j as f64 * 0.5;
            assert!(contains(&rep.region, c(0.0, y)));
            assert!(contains(&rep.region, c(0.99, y)));
            assert!(!contains(&rep.region, c(1.01, y)));
        }
    }

    #[test]
    fn interior_strip_pinches_for_positive_b() {
        let m = RelBound::new(0.2, 0.4).unwrap();
        let rep = enclose_interior_strip(-2.0, 2.0, &m);
        assert!(contains(&rep.region, c(0.0, 0.0)));
        assert!(!contains(&rep.region, c(0.0, 100.0)), "region must pinch for large Im z");
    }

    #[test]
    fn rect_complement_degenerate_to_rectangle() {
        let m = RelBound::new(0.0, 0.0).unwrap();
        let rep = enclose_rect_complement(-1.0, 1.0, -2.0, 2.0, &m);
        assert!(contains(&rep.region, c(0.0, 0.0)));
        assert!(!contains(&rep.region, c(1.5, 0.0)));
        assert!(!contains(&rep.region, c(0.0, 2.5)));
    }

    #[test]
    fn disk_complement_example() {
        let m = RelBound::new(0.5, 0.25).unwrap();
        let rep = enclose_disk_complement(2.0, &m);
        assert!((rep.constants["r"] - (2.0 - 0.5_f64.sqrt())).abs() < 1e-12);
        assert!(contains(&rep.region, c(1.0, 0.0)));
        assert!(!contains(&rep.region, c(1.5, 0.0)));

        let m = RelBound::new(2.0, 0.0).unwrap();
        let rep = enclose_disk_complement(2.0, &m);
        assert!(!rep.applicable);
    }

    #[test]
    fn gaps_bdd_threshold() {
        let m = RelBound::new(0.1, 0.2).unwrap();
        let rep = gaps_bdd(&[(1.0, 2.0)], -0.5, 0.5, &m);
        assert!((rep.ratio_threshold.unwrap() - 1.5).abs() < 1e-15);
        let m0 = RelBound::new(0.7, 0.0).unwrap();
        let rep = gaps_bdd(&[(0.0, 2.0)], -0.5, 0.5, &m0);
        assert_eq!(rep.width_threshold.unwrap(), 1.4);
        assert!(rep.per_gap[0].open); // width 2 > 1.4
        let rep = gaps_bdd(&[(0.0, 1.0)], -0.5, 0.5, &m0);
        assert!(!rep.per_gap[0].open); // width 1 < 1.4
    }

    #[test]
    fn gaps_unbdd_threshold_and_gate() {
        let m = RelBound::new(0.1, 0.2).unwrap();
        let rep = gaps_unbdd(&[(1.0, 2.0)], &m);
        assert!((rep.ratio_threshold.unwrap() - 1.689_897_948_556_635_6).abs() < 1e-6);
        let m = RelBound::new(0.1, 0.5).unwrap();
        let rep = gaps_unbdd(&[(1.0, 2.0)], &m);
        assert!(!rep.applicable);
    }

    #[test]
    fn ev_disks_radii_and_region() {
        let m = RelBound::new(0.3, 0.0).unwrap();
        let eigs = vec![PlantedEig { lambda: c(0.0, 0.0), multiplicity: 1 }];
        let rep = ev_disks(-0.5, 0.5, -4.0, 4.0, &eigs, &m).unwrap();
        assert!((rep.radii[0] - 0.3).abs() < 1e-15);
        assert!(rep.stable[0]);
        // inside the disk is not guaranteed; outside in the strip is.
        assert!(!contains(&rep.report.region, c(0.1, 0.0)));
        assert!(contains(&rep.report.region, c(1.0, 0.0)));
    }

    #[test]
    fn ev_disks_zero_perturbation() {
        let m = RelBound::new(0.0, 0.0).unwrap();
        let eigs = vec![PlantedEig { lambda: c(1.0, 0.0), multiplicity: 2 }];
        let rep = ev_disks(-0.5, 0.5, -4.0, 4.0, &eigs, &m).unwrap();
        assert_eq!(rep.radii[0], 0.0);
        // region = gap minus a point
        assert!(contains(&rep.report.region, c(1.2, 0.0)));
        assert!(!contains(&rep.report.region, c(1.0, 0.0)));
    }

    #[test]
    fn ev_disks_overlap_rejected() {
        let m = RelBound::new(1.2, 0.0).unwrap();
        let eigs = vec![
            PlantedEig { lambda: c(-1.0, 0.0), multiplicity: 1 },
            PlantedEig { lambda: c(1.0, 0.0), multiplicity: 1 },
        ];
        let rep = ev_disks(-0.5, 0.5, -8.0, 8.0, &eigs, &m).unwrap();
        // disks of radius 1.2 centred at +/-1 overlap, so the inflation
        // containment must fail for both.
        assert!(!rep.stable[0] && !rep.stable[1]);
        assert!(rep.plan.contours.is_empty());
    }

    #[test]
    fn rect_contour_construction() {
        let m = RelBound::new(0.0, 0.0).unwrap();
        let eigs = vec![PlantedEig { lambda: c(0.3, 0.0), multiplicity: 1 }];
        let rep = rect_contour(-0.5, 0.5, -4.0, 4.0, &eigs, &m, None).unwrap();
        assert!(rep.valid);
        assert_eq!(rep.r1, 0.3);
        assert_eq!(rep.r_n, 0.3);
        // with a = b = 0 any eta > max(g2, -g1) works
        assert!((rep.eta_min - 0.5).abs() < 1e-15);

        let m = RelBound::new(0.2, 0.0).unwrap();
        let rep = rect_contour(-0.5, 0.5, -4.0, 4.0, &eigs, &m, None).unwrap();
        assert!((rep.eta_min - 0.7).abs() < 1e-12); // g2 + a for b = 0
    }

    #[test]
    fn essgap_matches_enclosures() {
        let m = RelBound::new(0.4, 0.3).unwrap();
        let h = SpectrumHypothesis::HorizontalStripWithGap {
            g1: -1.0,
            g2: 0.5,
            alpha_t: -3.0,
            beta_t: 3.0,
        };
        let r1 = essgap_regions(&h, &m).unwrap();
        let r2 = enclose_strip_gap(-1.0, 0.5, -3.0, 3.0, &m).region;
        assert_eq!(r1, r2);
    }

    #[test]
    fn psub_strip_examples() {
        // p = 0: K = c.
        let s = Subordinate::new(0.5, 0.0).unwrap();
        let rep = psub_strip(-2.0, 2.0, 1.0, &s);
        assert!((rep.constants["k"] - 0.5).abs() < 1e-15);
        assert!(rep.applicable);

        // c=1, p=1/2, gap (-4,4), gamma=3: K = sqrt(5).
        let s = Subordinate::new(1.0, 0.5).unwrap();
        let rep = psub_strip(-4.0, 4.0, 3.0, &s);
        assert!((rep.constants["k"] - 5.0_f64.sqrt()).abs() < 1e-12);
        assert!(rep.applicable);
        assert!(contains(&rep.region, c(0.0, 100.0)));
        assert!(!contains(&rep.region, c(-3.9, 0.0)));

        // unbounded imaginary part: refused.
        let rep = psub_strip(-1.0, 1.0, f64::INFINITY, &s);
        assert!(!rep.applicable);
    }

    #[test]
    fn psub_parabola_examples() {
        // c = 0: full gap survives.
        let s = Subordinate::new(0.0, 0.25).unwrap();
        let rep = psub_parabola(-10.0, 10.0, &s);
        assert!(rep.applicable);
        assert_eq!(rep.constants["m"], 0.0);

        // p = 0, c = 1: need M > 1, so a gap of width 2 closes ...
        let s = Subordinate::new(1.0, 0.0).unwrap();
        let rep = psub_parabola(-1.0, 1.0, &s);
        assert!(!rep.applicable);
        // ... and a wider gap survives with M slightly above 1.
        let rep = psub_parabola(-3.0, 3.0, &s);
        assert!(rep.applicable);
        assert!((rep.constants["m"] - 1.0).abs() < 1e-6);

        // p >= 1/2 rejected
        let s = Subordinate::new(0.5, 0.5).unwrap();
        assert!(!psub_parabola(-1.0, 1.0, &s).applicable);
    }

    #[test]
    fn psub_parabola_margin_is_admissible() {
        let s = Subordinate::new(0.5, 0.25).unwrap();
        let rep = psub_parabola(-10.0, 10.0, &s);
        assert!(rep.applicable);
        let m = rep.constants["m"];
        let nu0 = rep.constants["nu0"];
        let zeta = rep.constants["zeta"];
        assert!(s.c * (m + (zeta * zeta + nu0 * nu0).sqrt()).powf(s.p) / m < 1.0);
        assert!(2.0 * m < 20.0);
    }

    #[test]
    fn monotonicity_in_a_and_b() {
        // growing (a, b) never enlarges the region
        let small = RelBound::new(0.3, 0.2).unwrap();
        let large = RelBound::new(0.5, 0.4).unwrap();
        let cases: Vec<(RegionExpr, RegionExpr)> = vec![
            (enclose_im_upper(0.7, &small).region, enclose_im_upper(0.7, &large).region),
            (
                enclose_strip(-1.0, 0.5, &small).region,
                enclose_strip(-1.0, 0.5, &large).region,
            ),
            (
                enclose_strip_gap(-1.0, 1.0, -4.0, 4.0, &small).region,
                enclose_strip_gap(-1.0, 1.0, -4.0, 4.0, &large).region,
            ),
            (
                enclose_bisector(-3.0, 3.0, 0.3, &small).region,
                enclose_bisector(-3.0, 3.0, 0.3, &large).region,
            ),
            (
                enclose_disk_complement(3.0, &small).region,
                enclose_disk_complement(3.0, &large).region,
            ),
        ];
        for (rs, rl) in &cases {
            for i in 0..50 {
                for j in 0..50 {
                    let z = c(-6.0 + 0.25 * i as f64, -6.0 + 0.25 * j as f64);
                    if contains(rl, z) {
                        assert!(contains(rs, z), "monotonicity violated at {z}");
                    }
                }
            }
        }
    }

    #[test]
    fn dispatcher_covers_variants() {
        let rb = PerturbationModel::RelBound(RelBound::new(0.2, 0.1).unwrap());
        let sp = PerturbationModel::Subordinate(Subordinate::new(0.2, 0.25).unwrap());
        let hs = [
            SpectrumHypothesis::ImUpperBounded { gamma: 0.0 },
            SpectrumHypothesis::HorizontalStrip { g1: -1.0, g2: 1.0 },
            SpectrumHypothesis::HorizontalStripWithGap { g1: -1.0, g2: 1.0, alpha_t: -3.0, beta_t: 3.0 },
            SpectrumHypothesis::SemiBounded { g1: -1.0, g2: 1.0, side: SpectrumSide::RightOf, bound: 0.0 },
            SpectrumHypothesis::SectorOnly { vertex: 0.5, theta: 0.3, mirrored: false },
            SpectrumHypothesis::Bisector { alpha_t: -2.0, beta_t: 2.0, theta: 0.3 },
            SpectrumHypothesis::BisectorPlusStrip { alpha_t: -2.0, beta_t: 2.0, theta: 0.3, gamma_t: 1.0 },
            SpectrumHypothesis::VerticalGap { v1: -1.0, v2: 1.0 },
            SpectrumHypothesis::RectComplement { v1: -1.0, v2: 1.0, e1: -1.0, e2: 1.0 },
            SpectrumHypothesis::DiskComplement { radius: 2.0 },
        ];
        for h in &hs {
            assert!(enclose(h, &rb).is_ok(), "dispatch failed for {h:?}");
        }
        let hp = SpectrumHypothesis::ParabolicBisector { alpha_t: -4.0, beta_t: 4.0 };
        assert!(enclose(&hp, &sp).is_ok());
        assert!(enclose(&hp, &rb).is_err());
    }

    #[test]
    fn dist_to_sector_cases() {
        let theta = 0.5;
        // inside
        assert_eq!(dist_to_sector(c(2.0, 0.3), 1.0, theta, false), 0.0);
        // beyond the vertex: distance to the vertex itself
        let d = dist_to_sector(c(0.0, 0.0), 1.0, theta, false);
        assert!((d - 1.0).abs() < 1e-15);
        // above the upper ray: perpendicular foot
        let z = c(2.0, 2.0);
        let w = z - 1.0;
        let expect = (Complex64::from_polar(1.0, theta).conj() * w).im.abs();
        assert!((dist_to_sector(z, 1.0, theta, false) - expect).abs() < 1e-15);
    }
}
