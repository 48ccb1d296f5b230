//! Seeded scenario batches: for each enclosure operation, generate a
//! hypothesis-conforming random normal model and an admissible perturbation,
//! run the enclosure, and check that no eigenvalue of `T + A` enters the
//! guaranteed region. Batches run as a parallel map over scenario indices
//! with per-scenario seeds and are reduced in index order.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{PerturbationModel, RelBound, Subordinate};
use crate::enclosures::{enclose, EnclosureReport, PlantedEig, SpectrumHypothesis, SpectrumSide};
use crate::regions::{PrimitiveRegion, RegionExpr};

use super::build::{build_normal, build_relbounded, build_subordinate, Contraction, NormalModel};
use super::matrix::DenseMatrix;
use super::verify::verify_enclosure;

/// The thirteen enclosure operations exercised by the soundness batches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioClass {
    ImUpper,
    Strip,
    StripGap,
    SemiBounded,
    Sector,
    Bisector,
    BisectorStrip,
    InteriorStrip,
    RectComplement,
    DiskComplement,
    EvDisks,
    PsubStrip,
    PsubParabola,
}

pub const ALL_CLASSES: [ScenarioClass; 13] = [
    ScenarioClass::ImUpper,
    ScenarioClass::Strip,
    ScenarioClass::StripGap,
    ScenarioClass::SemiBounded,
    ScenarioClass::Sector,
    ScenarioClass::Bisector,
    ScenarioClass::BisectorStrip,
    ScenarioClass::InteriorStrip,
    ScenarioClass::RectComplement,
    ScenarioClass::DiskComplement,
    ScenarioClass::EvDisks,
    ScenarioClass::PsubStrip,
    ScenarioClass::PsubParabola,
];

impl ScenarioClass {
    pub fn name(&self) -> &'static str {
        match self {
            ScenarioClass::ImUpper => "im_upper",
            ScenarioClass::Strip => "strip",
            ScenarioClass::StripGap => "strip_gap",
            ScenarioClass::SemiBounded => "semibounded",
            ScenarioClass::Sector => "sector",
            ScenarioClass::Bisector => "bisector",
            ScenarioClass::BisectorStrip => "bisector_strip",
            ScenarioClass::InteriorStrip => "interior_strip",
            ScenarioClass::RectComplement => "rect_complement",
            ScenarioClass::DiskComplement => "disk_complement",
            ScenarioClass::EvDisks => "ev_disks",
            ScenarioClass::PsubStrip => "psub_strip",
            ScenarioClass::PsubParabola => "psub_parabola",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        ALL_CLASSES.iter().copied().find(|c| c.name() == s)
    }
}

/// A fully specified scenario: hypothesis, model, conforming spectrum.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub id: usize,
    pub seed: u64,
    pub hypothesis: SpectrumHypothesis,
    pub model: PerturbationModel,
    pub spectrum: Vec<Complex64>,
    pub conjugate: bool,
    pub contraction: Contraction,
    /// Deterministic extremal perturbation instead of a random contraction.
    pub crafted_diag_phases: Option<Vec<Complex64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioResult {
    pub scenario_id: usize,
    pub seed: u64,
    pub class: ScenarioClass,
    pub n: usize,
    pub hypothesis: SpectrumHypothesis,
    pub model: PerturbationModel,
    pub applicable: bool,
    pub pass: bool,
    pub offenders: Vec<[f64; 2]>,
    pub max_residual: f64,
    pub timing_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchResult {
    pub class: ScenarioClass,
    pub count: usize,
    pub base_seed: u64,
    pub all_pass: bool,
    pub violations: usize,
    pub results: Vec<ScenarioResult>,
}

fn scenario_seed(base: u64, id: usize) -> u64 {
    // splitmix64 step over (base, id)
    let mut x = base ^ (id as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn dim(rng: &mut ChaCha8Rng, dims: (usize, usize)) -> usize {
    rng.gen_range(dims.0..=dims.1)
}

/// Generate the scenario with index `id` for a class. Deterministic in
/// `(class, base_seed, id, dims)`.
pub fn generate(class: ScenarioClass, id: usize, base_seed: u64, dims: (usize, usize)) -> Scenario {
    let seed = scenario_seed(base_seed ^ (class as u64) << 56, id);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = dim(&mut rng, dims);
    let conjugate = rng.gen_bool(0.5);
    let contraction =
        if rng.gen_bool(0.7) { Contraction::Unitary } else { Contraction::SubUnitary };
    let rel = RelBound {
        a: rng.gen_range(0.0..1.2),
        b: rng.gen_range(0.0..0.85),
    };

    let (hypothesis, model, spectrum) = match class {
        ScenarioClass::ImUpper => {
            let gamma = rng.gen_range(-2.0..2.0);
            let spec = (0..n)
                .map(|_| {
                    let drop = if rng.gen_bool(0.7) { 0.0 } else { rng.gen_range(0.0..4.0) };
                    Complex64::new(rng.gen_range(-8.0..8.0), gamma - drop)
                })
                .collect();
            (
                SpectrumHypothesis::ImUpperBounded { gamma },
                PerturbationModel::RelBound(rel),
                spec,
            )
        }
        ScenarioClass::Strip => {
            let (g1, g2) = sorted_pair(&mut rng, -3.0, 3.0);
            let spec = (0..n).map(|_| strip_point(&mut rng, g1, g2, -8.0, 8.0)).collect();
            (
                SpectrumHypothesis::HorizontalStrip { g1, g2 },
                PerturbationModel::RelBound(rel),
                spec,
            )
        }
        ScenarioClass::StripGap => {
            let (g1, g2) = sorted_pair(&mut rng, -2.0, 2.0);
            let alpha_t = rng.gen_range(-5.0..-0.5);
            let beta_t = rng.gen_range(0.5..5.0);
            let spec =
                (0..n).map(|_| gapped_strip_point(&mut rng, g1, g2, alpha_t, beta_t)).collect();
            (
                SpectrumHypothesis::HorizontalStripWithGap { g1, g2, alpha_t, beta_t },
                PerturbationModel::RelBound(rel),
                spec,
            )
        }
        ScenarioClass::SemiBounded => {
            let (g1, g2) = sorted_pair(&mut rng, -2.0, 2.0);
            let bound = rng.gen_range(-2.0..2.0);
            let side = if rng.gen_bool(0.5) { SpectrumSide::RightOf } else { SpectrumSide::LeftOf };
            let spec = (0..n)
                .map(|_| {
                    let off = if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(0.0..8.0) };
                    let re = match side {
                        SpectrumSide::RightOf => bound + off,
                        SpectrumSide::LeftOf => bound - off,
                    };
                    Complex64::new(re, rng.gen_range(g1..=g2))
                })
                .collect();
            (
                SpectrumHypothesis::SemiBounded { g1, g2, side, bound },
                PerturbationModel::RelBound(rel),
                spec,
            )
        }
        ScenarioClass::Sector => {
            let vertex = rng.gen_range(-2.0..2.0);
            let theta = rng.gen_range(0.0..1.2);
            let mirrored = rng.gen_bool(0.5);
            let spec = (0..n).map(|_| sector_point(&mut rng, vertex, theta, mirrored)).collect();
            (
                SpectrumHypothesis::SectorOnly { vertex, theta, mirrored },
                PerturbationModel::RelBound(rel),
                spec,
            )
        }
        ScenarioClass::Bisector => {
            let alpha_t = rng.gen_range(-5.0..-0.5);
            let beta_t = rng.gen_range(0.5..5.0);
            let theta = rng.gen_range(0.0..1.2);
            let spec = (0..n)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        sector_point(&mut rng, beta_t, theta, false)
                    } else {
                        sector_point(&mut rng, alpha_t, theta, true)
                    }
                })
                .collect();
            (
                SpectrumHypothesis::Bisector { alpha_t, beta_t, theta },
                PerturbationModel::RelBound(rel),
                spec,
            )
        }
        ScenarioClass::BisectorStrip => {
            let alpha_t = rng.gen_range(-5.0..-0.5);
            let beta_t = rng.gen_range(0.5..5.0);
            let theta = rng.gen_range(0.0..1.2);
            let gamma_t = rng.gen_range(0.0..1.5);
            let spec = (0..n)
                .map(|_| match rng.gen_range(0..3) {
                    0 => sector_point(&mut rng, beta_t, theta, false),
                    1 => sector_point(&mut rng, alpha_t, theta, true),
                    _ => strip_point(&mut rng, -gamma_t, gamma_t, -8.0, 8.0),
                })
                .collect();
            (
                SpectrumHypothesis::BisectorPlusStrip { alpha_t, beta_t, theta, gamma_t },
                PerturbationModel::RelBound(rel),
                spec,
            )
        }
        ScenarioClass::InteriorStrip => {
            let (v1, v2) = sorted_pair_strict(&mut rng, -4.0, 4.0);
            let spec = (0..n)
                .map(|_| {
                    let off = if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(0.0..6.0) };
                    let re = if rng.gen_bool(0.5) { v1 - off } else { v2 + off };
                    Complex64::new(re, rng.gen_range(-10.0..10.0))
                })
                .collect();
            (
                SpectrumHypothesis::VerticalGap { v1, v2 },
                PerturbationModel::RelBound(rel),
                spec,
            )
        }
        ScenarioClass::RectComplement => {
            let (v1, v2) = sorted_pair_strict(&mut rng, -4.0, 4.0);
            let (e1, e2) = sorted_pair_strict(&mut rng, -3.0, 3.0);
            let spec = (0..n)
                .map(|_| match rng.gen_range(0..4) {
                    0 => Complex64::new(v1, rng.gen_range(e1 - 4.0..e2 + 4.0)),
                    1 => Complex64::new(v2, rng.gen_range(e1 - 4.0..e2 + 4.0)),
                    2 => Complex64::new(rng.gen_range(v1 - 4.0..v2 + 4.0), e1),
                    _ => Complex64::new(rng.gen_range(v1 - 4.0..v2 + 4.0), e2),
                })
                .collect();
            (
                SpectrumHypothesis::RectComplement { v1, v2, e1, e2 },
                PerturbationModel::RelBound(rel),
                spec,
            )
        }
        ScenarioClass::DiskComplement => {
            let radius = rng.gen_range(1.0..4.0);
            let spec = (0..n)
                .map(|_| {
                    let r = if rng.gen_bool(0.7) { radius } else { radius + rng.gen_range(0.0..4.0) };
                    Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
                })
                .collect();
            (
                SpectrumHypothesis::DiskComplement { radius },
                PerturbationModel::RelBound(rel),
                spec,
            )
        }
        ScenarioClass::EvDisks => {
            let rel = RelBound { a: rng.gen_range(0.0..0.4), b: rng.gen_range(0.0..0.2) };
            let (g1, g2) = sorted_pair(&mut rng, -0.5, 0.5);
            let alpha_t = rng.gen_range(-6.0..-2.0);
            let beta_t = rng.gen_range(2.0..6.0);
            let k = rng.gen_range(1..=2usize.min(n.saturating_sub(2)).max(1));
            let mut eigs = Vec::new();
            let mut spectrum = Vec::new();
            for _ in 0..k {
                let lambda = Complex64::new(
                    rng.gen_range(alpha_t + 1.0..beta_t - 1.0),
                    rng.gen_range(g1..=g2) * 0.5,
                );
                let mult = rng.gen_range(1..=2usize);
                eigs.push(PlantedEig { lambda, multiplicity: mult });
                for _ in 0..mult {
                    spectrum.push(lambda);
                }
            }
            while spectrum.len() < n {
                spectrum.push(gapped_strip_point(&mut rng, g1, g2, alpha_t, beta_t));
            }
            spectrum.truncate(n.max(spectrum.len()));
            (
                SpectrumHypothesis::FiniteEigsPlusStrip { g1, g2, alpha_t, beta_t, eigs },
                PerturbationModel::RelBound(rel),
                spectrum,
            )
        }
        ScenarioClass::PsubStrip => {
            let gamma_t = rng.gen_range(0.0..2.0);
            let alpha_t = rng.gen_range(-6.0..-1.0);
            let beta_t = rng.gen_range(1.0..6.0);
            let sub = Subordinate { c: rng.gen_range(0.0..1.0), p: rng.gen_range(0.0..1.0) };
            let spec = (0..n)
                .map(|_| gapped_strip_point(&mut rng, -gamma_t, gamma_t, alpha_t, beta_t))
                .collect();
            (
                SpectrumHypothesis::HorizontalStripWithGap {
                    g1: -gamma_t,
                    g2: gamma_t,
                    alpha_t,
                    beta_t,
                },
                PerturbationModel::Subordinate(sub),
                spec,
            )
        }
        ScenarioClass::PsubParabola => {
            let alpha_t = rng.gen_range(-8.0..-2.0);
            let beta_t = rng.gen_range(2.0..8.0);
            let sub = Subordinate { c: rng.gen_range(0.0..0.8), p: rng.gen_range(0.0..0.45) };
            let spec = (0..n)
                .map(|_| {
                    let d = rng.gen_range(0.0..4.0);
                    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                    if rng.gen_bool(0.5) {
                        Complex64::new(beta_t + d, sign * d * d)
                    } else {
                        Complex64::new(alpha_t - d, sign * d * d)
                    }
                })
                .collect();
            (
                SpectrumHypothesis::ParabolicBisector { alpha_t, beta_t },
                PerturbationModel::Subordinate(sub),
                spec,
            )
        }
    };

    Scenario {
        id,
        seed,
        hypothesis,
        model,
        spectrum,
        conjugate,
        contraction,
        crafted_diag_phases: None,
    }
}

fn sorted_pair(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> (f64, f64) {
    let a = rng.gen_range(lo..hi);
    let b = rng.gen_range(lo..hi);
    (a.min(b), a.max(b))
}

fn sorted_pair_strict(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> (f64, f64) {
    loop {
        let (a, b) = sorted_pair(rng, lo, hi);
        if b - a > 0.2 {
            return (a, b);
        }
    }
}

fn strip_point(rng: &mut ChaCha8Rng, g1: f64, g2: f64, re_lo: f64, re_hi: f64) -> Complex64 {
    let im = if rng.gen_bool(0.75) {
        if rng.gen_bool(0.5) {
            g1
        } else {
            g2
        }
    } else {
        rng.gen_range(g1..=g2)
    };
    Complex64::new(rng.gen_range(re_lo..re_hi), im)
}

fn gapped_strip_point(
    rng: &mut ChaCha8Rng,
    g1: f64,
    g2: f64,
    alpha_t: f64,
    beta_t: f64,
) -> Complex64 {
    let off = if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(0.0..6.0) };
    let re = if rng.gen_bool(0.5) { alpha_t - off } else { beta_t + off };
    let im = if rng.gen_bool(0.6) {
        if rng.gen_bool(0.5) {
            g1
        } else {
            g2
        }
    } else {
        rng.gen_range(g1..=g2)
    };
    Complex64::new(re, im)
}

fn sector_point(rng: &mut ChaCha8Rng, vertex: f64, theta: f64, mirrored: bool) -> Complex64 {
    let r = if rng.gen_bool(0.1) { 0.0 } else { rng.gen_range(0.0..10.0) };
    let phi = if rng.gen_bool(0.7) {
        if rng.gen_bool(0.5) {
            theta
        } else {
            -theta
        }
    } else {
        rng.gen_range(-theta..=theta.max(1e-12))
    };
    let w = Complex64::from_polar(r, phi);
    if mirrored {
        Complex64::new(vertex - w.re, -w.im)
    } else {
        Complex64::new(vertex + w.re, w.im)
    }
}

/// Build `T` and `A` for a scenario.
pub fn realize(s: &Scenario) -> (NormalModel, DenseMatrix) {
    let t = build_normal(&s.spectrum, s.conjugate, s.seed ^ 0x5851_f42d_4c95_7f2d);
    let a = match (&s.model, &s.crafted_diag_phases) {
        (_, Some(phases)) => {
            // A = diag(phase_k) * G with G the spectral factor: extremal,
            // unitary when all |phase_k| = 1.
            let g: Vec<Complex64> = s
                .spectrum
                .iter()
                .zip(phases)
                .map(|(t, ph)| {
                    let gk = match &s.model {
                        PerturbationModel::RelBound(m) => {
                            (m.a * m.a + m.b * m.b * t.norm_sqr()).sqrt()
                        }
                        PerturbationModel::Subordinate(sub) => sub.c * t.norm().powf(sub.p),
                    };
                    ph * gk
                })
                .collect();
            DenseMatrix::diagonal(&g)
        }
        (PerturbationModel::RelBound(m), None) => build_relbounded(&t, m, s.contraction, s.seed),
        (PerturbationModel::Subordinate(sub), None) => {
            build_subordinate(&t, sub, s.contraction, s.seed)
        }
    };
    (t, a)
}

/// How a negative-control run tampers with the guaranteed region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Corruption {
    /// Shrink the defining margins by this fraction toward the spectrum
    /// (0.25 inflates a disk radius to 1.25 r, narrows strip margins to 0.75
    /// of their value, and so on).
    ShrinkMargin(f64),
}

/// Replace the report region by a deliberately over-optimistic one. Returns
/// false when the class has no corruption rule.
pub fn corrupt_report(report: &mut EnclosureReport, how: Corruption) -> bool {
    let Corruption::ShrinkMargin(frac) = how;
    let keep = 1.0 - frac;
    match (&report.hypothesis, &report.perturbation) {
        (SpectrumHypothesis::DiskComplement { .. }, _) => {
            let r = report.constants["r"];
            if r <= 0.0 {
                return false;
            }
            report.region = RegionExpr::primitive(PrimitiveRegion::Disk {
                center: Complex64::new(0.0, 0.0),
                radius: (1.0 + frac) * r,
            });
            true
        }
        (
            SpectrumHypothesis::HorizontalStripWithGap { alpha_t, beta_t, .. },
            PerturbationModel::RelBound(_),
        ) => {
            let (alpha_t, beta_t) = (*alpha_t, *beta_t);
            let ap = report.constants["alpha_prime"];
            let bp = report.constants["beta_prime"];
            let ap2 = alpha_t + keep * (ap - alpha_t);
            let bp2 = beta_t - keep * (beta_t - bp);
            if !(ap2 < bp2) {
                return false;
            }
            report.region =
                RegionExpr::primitive(PrimitiveRegion::VerticalStrip { v1: ap2, v2: bp2 });
            true
        }
        (SpectrumHypothesis::Bisector { alpha_t, beta_t, .. }, _) => {
            let (alpha_t, beta_t) = (*alpha_t, *beta_t);
            let (Some(ap), Some(bp)) =
                (report.constants.get("alpha_ta"), report.constants.get("beta_ta"))
            else {
                return false;
            };
            let ap2 = alpha_t + keep * (ap - alpha_t);
            let bp2 = beta_t - keep * (beta_t - bp);
            if !(ap2 < bp2) {
                return false;
            }
            report.region =
                RegionExpr::primitive(PrimitiveRegion::VerticalStrip { v1: ap2, v2: bp2 });
            true
        }
        _ => false,
    }
}

/// A deterministic extremal scenario whose eigenvalues sit exactly on the
/// guaranteed boundary, so any margin-shrinking corruption must produce a
/// violation. Available for the disk, gapped-strip and bisector classes.
pub fn crafted_extremal(class: ScenarioClass, base_seed: u64) -> Option<Scenario> {
    let seed = scenario_seed(base_seed ^ 0xabcd_ef12, 0);
    match class {
        ScenarioClass::DiskComplement => {
            let radius = 2.0;
            let spectrum: Vec<Complex64> = (0..4)
                .map(|k| Complex64::from_polar(radius, k as f64 * std::f64::consts::FRAC_PI_2))
                .collect();
            let phases = spectrum.iter().map(|t| -(t / t.norm())).collect();
            Some(Scenario {
                id: 0,
                seed,
                hypothesis: SpectrumHypothesis::DiskComplement { radius },
                model: PerturbationModel::RelBound(RelBound { a: 0.5, b: 0.25 }),
                spectrum,
                conjugate: false,
                contraction: Contraction::Unitary,
                crafted_diag_phases: Some(phases),
            })
        }
        ScenarioClass::StripGap => {
            let (g1, g2, alpha_t, beta_t) = (-0.5, 0.5, -2.0, 2.0);
            let spectrum = vec![
                Complex64::new(beta_t, g2),
                Complex64::new(alpha_t, g2),
                Complex64::new(beta_t + 3.0, g1),
                Complex64::new(alpha_t - 3.0, g1),
            ];
            // push the two gap-edge states straight toward the gap
            let phases = vec![
                Complex64::new(-1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(-1.0, 0.0),
            ];
            Some(Scenario {
                id: 0,
                seed,
                hypothesis: SpectrumHypothesis::HorizontalStripWithGap { g1, g2, alpha_t, beta_t },
                model: PerturbationModel::RelBound(RelBound { a: 0.4, b: 0.3 }),
                spectrum,
                conjugate: false,
                contraction: Contraction::Unitary,
                crafted_diag_phases: Some(phases),
            })
        }
        ScenarioClass::Bisector => {
            let (alpha_t, beta_t, theta) = (-2.0, 2.0, 0.3);
            let spectrum = vec![
                Complex64::new(beta_t, 0.0),
                Complex64::new(alpha_t, 0.0),
                Complex64::new(beta_t + 4.0, 0.0),
                Complex64::new(alpha_t - 4.0, 0.0),
            ];
            let phases = vec![
                Complex64::new(-1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(-1.0, 0.0),
            ];
            Some(Scenario {
                id: 0,
                seed,
                hypothesis: SpectrumHypothesis::Bisector { alpha_t, beta_t, theta },
                model: PerturbationModel::RelBound(RelBound { a: 0.4, b: 0.2 }),
                spectrum,
                conjugate: false,
                contraction: Contraction::Unitary,
                crafted_diag_phases: Some(phases),
            })
        }
        _ => None,
    }
}

/// Run one scenario: build the model, run the enclosure, check soundness.
pub fn run_scenario(class: ScenarioClass, s: &Scenario, corrupt: Option<Corruption>) -> ScenarioResult {
    let started = std::time::Instant::now();
    let (t, a) = realize(s);
    let mut report = enclose(&s.hypothesis, &s.model).expect("generated hypothesis must dispatch");
    if let Some(how) = corrupt {
        corrupt_report(&mut report, how);
    }
    let verdict = verify_enclosure(&t, &a, &report);
    let (pass, offenders, max_residual) = match verdict {
        Ok(v) => (
            v.pass,
            v.offenders.iter().map(|z| [z.re, z.im]).collect(),
            v.max_residual,
        ),
        Err(_) => (false, vec![], f64::NAN),
    };
    ScenarioResult {
        scenario_id: s.id,
        seed: s.seed,
        class,
        n: s.spectrum.len(),
        hypothesis: s.hypothesis.clone(),
        model: s.model,
        applicable: report.applicable,
        pass,
        offenders,
        max_residual,
        timing_ms: started.elapsed().as_secs_f64() * 1e3,
    }
}

/// Run `count` seeded scenarios of a class in parallel. With a corruption
/// rule, scenario 0 is replaced by the crafted extremal case when available.
pub fn run_batch(
    class: ScenarioClass,
    count: usize,
    base_seed: u64,
    dims: (usize, usize),
    corrupt: Option<Corruption>,
) -> BatchResult {
    let results: Vec<ScenarioResult> = (0..count)
        .into_par_iter()
        .map(|id| {
            let scenario = if id == 0 && corrupt.is_some() {
                crafted_extremal(class, base_seed)
                    .unwrap_or_else(|| generate(class, id, base_seed, dims))
            } else {
                generate(class, id, base_seed, dims)
            };
            run_scenario(class, &scenario, corrupt)
        })
        .collect();
    let violations = results.iter().filter(|r| !r.pass).count();
    BatchResult {
        class,
        count,
        base_seed,
        all_pass: violations == 0,
        violations,
        results,
    }
}

/// Rejection-sample points where the report's bound is finite.
pub fn sample_bound_points(report: &EnclosureReport, seed: u64, count: usize) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0bad_cafe);
    let extent = 4.0
        + report
            .constants
            .values()
            .filter(|v| v.is_finite())
            .fold(0.0_f64, |acc, &v| acc.max(v.abs()));
    let mut out = Vec::with_capacity(count);
    for _ in 0..200 * count {
        if out.len() >= count {
            break;
        }
        let z = Complex64::new(
            rng.gen_range(-2.0 * extent..2.0 * extent),
            rng.gen_range(-2.0 * extent..2.0 * extent),
        );
        if report.bound_value(z).is_finite() {
            out.push(z);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let a = generate(ScenarioClass::Strip, 7, 123, (4, 16));
        let b = generate(ScenarioClass::Strip, 7, 123, (4, 16));
        assert_eq!(a.spectrum, b.spectrum);
        assert_eq!(a.seed, b.seed);
    }

    #[test]
    fn small_batches_pass_for_every_class() {
        for class in ALL_CLASSES {
            let batch = run_batch(class, 8, 2024, (4, 12), None);
            assert!(
                batch.all_pass,
                "class {:?} violations: {:?}",
                class,
                batch
                    .results
                    .iter()
                    .filter(|r| !r.pass)
                    .map(|r| (r.scenario_id, r.offenders.clone()))
                    .collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn crafted_extremal_boundary_cases_pass_uncorrupted() {
        for class in [ScenarioClass::DiskComplement, ScenarioClass::StripGap, ScenarioClass::Bisector] {
            let s = crafted_extremal(class, 1).unwrap();
            let r = run_scenario(class, &s, None);
            assert!(r.pass, "{class:?} crafted case must be sound: {:?}", r.offenders);
        }
    }

    #[test]
    fn corruption_produces_violation_on_crafted_cases() {
        for class in [ScenarioClass::DiskComplement, ScenarioClass::StripGap, ScenarioClass::Bisector] {
            let s = crafted_extremal(class, 1).unwrap();
            let r = run_scenario(class, &s, Some(Corruption::ShrinkMargin(0.25)));
            assert!(!r.pass, "{class:?} corrupted case must fail");
        }
    }
}
