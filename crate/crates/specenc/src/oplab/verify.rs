//! Soundness checks of enclosure reports against computed spectra, resolvent
//! bound validation against the σ_min oracle, and multiplicity homotopies.

use num_complex::Complex64;

use crate::bounds::RelBound;
use crate::enclosures::{ev_disks, Contour, EnclosureReport, SpectrumHypothesis};
use crate::regions::contains;

use super::build::NormalModel;
use super::eig::{eig, EigError};
use super::jacobi::smin;
use super::matrix::DenseMatrix;

/// Result of a soundness check.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub pass: bool,
    /// Eigenvalues strictly inside the guaranteed region (beyond the margin).
    pub offenders: Vec<Complex64>,
    pub max_residual: f64,
}

/// `λ` counts as inside the region only if the whole probe circle of radius
/// `1e-8 (1 + |λ|)` around it stays inside: eigenvalues grazing the boundary
/// within the relative margin are tolerated.
pub fn strictly_inside_with_margin(region: &crate::regions::RegionExpr, lambda: Complex64) -> bool {
    if !contains(region, lambda) {
        return false;
    }
    let margin = 1e-8 * (1.0 + lambda.norm());
    (0..8).all(|k| {
        let probe = lambda + Complex64::from_polar(margin, k as f64 * std::f64::consts::FRAC_PI_4);
        contains(region, probe)
    })
}

/// Check that no eigenvalue of `T + A` lies inside the guaranteed
/// resolvent-set region of the report.
pub fn verify_enclosure(
    t: &NormalModel,
    a: &DenseMatrix,
    report: &EnclosureReport,
) -> Result<Verdict, EigError> {
    let m = t.matrix().add(a);
    let res = eig(&m)?;
    let offenders: Vec<Complex64> = res
        .eigenvalues
        .iter()
        .copied()
        .filter(|&l| strictly_inside_with_margin(&report.region, l))
        .collect();
    Ok(Verdict {
        pass: offenders.is_empty(),
        offenders,
        max_residual: res.residuals.iter().cloned().fold(0.0, f64::max),
    })
}

/// Result of a resolvent-bound check.
#[derive(Debug, Clone)]
pub struct BoundVerdict {
    pub pass: bool,
    pub checked: usize,
    /// `(z, 1/σ_min(T+A−z), bound(z))` for each violated point.
    pub failures: Vec<(Complex64, f64, f64)>,
}

/// Check `1/σ_min(T+A−z) ≤ bound(z)(1+1e−6) + 1e−8` at each finite-bound `z`.
pub fn verify_resolvent_bound(
    t: &NormalModel,
    a: &DenseMatrix,
    report: &EnclosureReport,
    zs: &[Complex64],
) -> BoundVerdict {
    let m = t.matrix().add(a);
    let mut failures = Vec::new();
    let mut checked = 0;
    for &z in zs {
        let bound = report.bound_value(z);
        if !bound.is_finite() {
            continue;
        }
        checked += 1;
        let s = smin(&m.shift(z));
        let lhs = if s > 0.0 { 1.0 / s } else { f64::INFINITY };
        if lhs > bound * (1.0 + 1e-6) + 1e-8 {
            failures.push((z, lhs, bound));
        }
    }
    BoundVerdict { pass: failures.is_empty(), checked, failures }
}

/// Result of a multiplicity homotopy along `T + sA`.
#[derive(Debug, Clone)]
pub struct HomotopyOutcome {
    pub precondition_ok: bool,
    /// `(s, contour point)` pairs where the contour left the guaranteed
    /// region of the scaled perturbation.
    pub violations: Vec<(f64, Complex64)>,
    /// Eigenvalue count strictly inside the contour, per `s` grid point.
    pub counts: Vec<usize>,
    pub constant: bool,
}

/// Count eigenvalues of `T + sA` inside a contour along an `s`-grid. The
/// contour is first checked to lie inside the guaranteed region of the
/// finite-eigenvalue enclosure with the scaled constants `(√s·a, √s·b)` for
/// every `s`; scaling by `s` keeps the perturbation admissible for those.
pub fn homotopy_multiplicity(
    t: &NormalModel,
    a: &DenseMatrix,
    hypothesis: &SpectrumHypothesis,
    m: &RelBound,
    contour: &Contour,
    s_grid: &[f64],
) -> Result<HomotopyOutcome, EigError> {
    let (g1, g2, alpha_t, beta_t, eigs) = match hypothesis {
        SpectrumHypothesis::FiniteEigsPlusStrip { g1, g2, alpha_t, beta_t, eigs } => {
            (*g1, *g2, *alpha_t, *beta_t, eigs.clone())
        }
        _ => {
            return Ok(HomotopyOutcome {
                precondition_ok: false,
                violations: vec![],
                counts: vec![],
                constant: false,
            })
        }
    };

    let samples = contour.sample(512);
    let mut violations = Vec::new();
    for &s in s_grid {
        let ms = RelBound { a: s.sqrt() * m.a, b: s.sqrt() * m.b };
        let region = match ev_disks(g1, g2, alpha_t, beta_t, &eigs, &ms) {
            Ok(r) => r.report.region,
            Err(_) => {
                return Ok(HomotopyOutcome {
                    precondition_ok: false,
                    violations: vec![],
                    counts: vec![],
                    constant: false,
                })
            }
        };
        for &p in &samples {
            if !contains(&region, p) {
                violations.push((s, p));
            }
        }
    }
    if !violations.is_empty() {
        return Ok(HomotopyOutcome {
            precondition_ok: false,
            violations,
            counts: vec![],
            constant: false,
        });
    }

    let tm = t.matrix();
    let mut counts = Vec::with_capacity(s_grid.len());
    for &s in s_grid {
        let msum = tm.add_scaled(a, Complex64::new(s, 0.0));
        let res = eig(&msum)?;
        counts.push(res.eigenvalues.iter().filter(|&&l| contour.strictly_inside(l)).count());
    }
    let constant = counts.windows(2).all(|w| w[0] == w[1]);
    Ok(HomotopyOutcome { precondition_ok: true, violations: vec![], counts, constant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::RelBound;
    use crate::enclosures::{enclose_strip_gap, PlantedEig};
    use crate::oplab::build::{build_normal, build_relbounded, Contraction};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn two_by_two_witness() {
        // T = diag(2, -2), A = [[0, a], [a, 0]]: eigenvalues +/- sqrt(4 + a^2)
        // stay outside {|Re z| < 2 - a}.
        let aa = 0.7;
        let t = build_normal(&[c(2.0, 0.0), c(-2.0, 0.0)], false, 0);
        let a = DenseMatrix::from_rows(vec![
            vec![c(0.0, 0.0), c(aa, 0.0)],
            vec![c(aa, 0.0), c(0.0, 0.0)],
        ]);
        let m = RelBound::new(aa, 0.0).unwrap();
        let report = enclose_strip_gap(0.0, 0.0, -2.0, 2.0, &m);
        let v = verify_enclosure(&t, &a, &report).unwrap();
        assert!(v.pass, "offenders: {:?}", v.offenders);
    }

    #[test]
    fn zero_perturbation_always_sound() {
        let t = build_normal(&[c(3.0, 0.2), c(-3.0, -0.2), c(4.0, 0.0), c(-5.0, 0.1)], true, 9);
        let a = DenseMatrix::zeros(4);
        let m = RelBound::new(0.0, 0.0).unwrap();
        let report = enclose_strip_gap(-0.5, 0.5, -2.5, 2.5, &m);
        let v = verify_enclosure(&t, &a, &report).unwrap();
        assert!(v.pass);
    }

    #[test]
    fn conjugation_invariance_of_verdicts() {
        let spec: Vec<Complex64> =
            (0..12).map(|i| c(3.0 + (i % 4) as f64, ((i as f64) * 0.7).sin() * 0.4)).collect();
        let m = RelBound::new(0.4, 0.1).unwrap();
        let report = enclose_strip_gap(-0.5, 0.5, -7.0, 3.0 - 1e-9, &m);
        for conj in [false, true] {
            let t = build_normal(&spec, conj, 31);
            let a = build_relbounded(&t, &m, Contraction::Unitary, 17);
            let v = verify_enclosure(&t, &a, &report).unwrap();
            assert!(v.pass, "conjugated={conj} offenders {:?}", v.offenders);
        }
    }

    #[test]
    fn resolvent_bound_scalar_case() {
        // 1x1: T = 0, A = i a, gamma = 0, b = 0: |1/(ia - z)| <= 1/(Im z - a).
        let aa = 0.3;
        let t = build_normal(&[c(0.0, 0.0)], false, 0);
        let a = DenseMatrix::from_rows(vec![vec![c(0.0, aa)]]);
        let m = RelBound::new(aa, 0.0).unwrap();
        let report = crate::enclosures::enclose_im_upper(0.0, &m);
        let zs: Vec<Complex64> = (1..40).map(|i| c(0.3 * i as f64 - 6.0, aa + 0.2 * i as f64)).collect();
        let v = verify_resolvent_bound(&t, &a, &report, &zs);
        assert!(v.pass, "failures: {:?}", v.failures);
        assert!(v.checked > 0);
    }

    #[test]
    fn homotopy_counts_constant_on_constructed_scenario() {
        // 8x8, eigenvalue 0 with multiplicity 2, the rest in the gapped strip.
        let spec = vec![
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(4.5, 0.1),
            c(-4.6, -0.1),
            c(5.5, 0.05),
            c(-5.2, 0.15),
            c(6.5, -0.18),
            c(7.0, 0.0),
        ];
        let m = RelBound::new(0.3, 0.05).unwrap();
        let eigs = vec![PlantedEig { lambda: c(0.0, 0.0), multiplicity: 2 }];
        let h = SpectrumHypothesis::FiniteEigsPlusStrip {
            g1: -0.2,
            g2: 0.2,
            alpha_t: -4.0,
            beta_t: 4.0,
            eigs: eigs.clone(),
        };
        let t = build_normal(&spec, true, 3);
        let a = build_relbounded(&t, &m, Contraction::Unitary, 5);
        let plan = ev_disks(-0.2, 0.2, -4.0, 4.0, &eigs, &m).unwrap();
        assert!(plan.stable[0]);
        let s_grid: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
        let out =
            homotopy_multiplicity(&t, &a, &h, &m, &plan.plan.contours[0], &s_grid).unwrap();
        assert!(out.precondition_ok);
        assert!(out.constant, "counts: {:?}", out.counts);
        assert_eq!(out.counts[0], 2);
    }
}
