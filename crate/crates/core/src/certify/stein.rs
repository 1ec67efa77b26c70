use alloc::vec::Vec;

use crate::error::Result;
use crate::profiles::{check_log_convex, delta, linspace, second_difference, ConvexityScan, RhoProfile};
use crate::tolerances;

use super::curve::curve_submean;
use super::delta::{delta_report, DeltaReport};
use super::submean::{submean_at, submean_probe, InvariantFunction, ProbeParams, ProbeSite, SubmeanReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SteinStatus {
    CertifiedStein,
    RefutedStein,
    Inconclusive,
}

impl SteinStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::CertifiedStein => "CertifiedStein",
            Self::RefutedStein => "RefutedStein",
            Self::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SteinReason {
    /// `m = 0` and `log ρ` is convex.
    LogConvex,
    NotLogConvex,
    DeltaDecreasing,
    /// `δ` nondecreasing and midpoint convex.
    DeltaConvexMonotone,
    CurveSubmeanViolation,
    SubmeanViolation,
    NoViolationFound,
}

impl SteinReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::LogConvex => "log_convex",
            Self::NotLogConvex => "not_log_convex",
            Self::DeltaDecreasing => "delta_decreasing",
            Self::DeltaConvexMonotone => "delta_convex_monotone",
            Self::CurveSubmeanViolation => "curve_submean_violation",
            Self::SubmeanViolation => "submean_violation",
            Self::NoViolationFound => "no_violation_found",
        }
    }
}

/// Concrete evidence behind a refutation; [`Violation::recheck`] replays it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Violation {
    /// Triple of `h` values where `log ρ` has a negative second difference.
    LogConvexity { h: [f64; 3], margin: f64 },
    /// `τ₀ < τ₁` with `δ(τ₁) < δ(τ₀)`.
    DeltaDecrease { tau: [f64; 2], delta: [f64; 2] },
    /// Negative submean on the disc `x + iy ↦ (1 0; e^{x+iy} 1)`.
    Curve { x0: f64, radius: f64, points: usize, margin: f64 },
    /// Negative submean of the log-norm at a sampled `(g, V)`.
    Submean { site: ProbeSite, radius: f64, circle_points: usize },
}

impl Violation {
    /// Re-evaluates the stored evidence from scratch.
    pub fn recheck(&self, rho: &RhoProfile, m: i32) -> Result<bool> {
        let m = m.abs();
        Ok(match *self {
            Violation::LogConvexity { h, .. } => {
                let f = [rho.log_eval(h[0]), rho.log_eval(h[1]), rho.log_eval(h[2])];
                second_difference(h, f) < -tolerances::GRID
            }
            Violation::DeltaDecrease { tau, .. } => delta(rho, m, tau[1])? < delta(rho, m, tau[0])? - tolerances::GRID,
            Violation::Curve { x0, radius, points, .. } => {
                curve_submean(rho, m, x0, radius, points)? < -tolerances::REFUTE
            }
            Violation::Submean { site, radius, circle_points } => {
                let f = InvariantFunction::LogNorm { rho, m };
                submean_at(&f, &site.g, &site.direction.to_matrix(), radius, circle_points)? < -tolerances::REFUTE
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertifyParams {
    /// `log ρ` is checked on `h_check_steps + 1` points of `[−h_check_max, h_check_max]`.
    pub h_check_max: f64,
    pub h_check_steps: usize,
    pub tau_max: f64,
    pub tau_steps: usize,
    /// Centers of the distinguished-curve probes.
    pub curve_x: Vec<f64>,
    pub probe: ProbeParams,
    pub tol_refute: f64,
}

impl Default for CertifyParams {
    fn default() -> Self {
        Self {
            h_check_max: 5.0,
            h_check_steps: 200,
            tau_max: 20.0,
            tau_steps: 400,
            curve_x: linspace(-3.0, 3.0, 24),
            probe: ProbeParams::default(),
            tol_refute: tolerances::REFUTE,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SteinVerdict {
    pub status: SteinStatus,
    pub reason: SteinReason,
    /// Weight after the duality reduction `m ↦ |m|`.
    pub m: i32,
    pub log_convexity: ConvexityScan,
    pub delta: Option<DeltaReport>,
    pub submean: Option<SubmeanReport>,
    pub violation: Option<Violation>,
}

impl SteinVerdict {
    /// Smallest submean margin seen, if any probe ran.
    pub fn worst_margin(&self) -> Option<f64> {
        match (&self.violation, &self.submean) {
            (Some(Violation::Curve { margin, .. }), _) => Some(*margin),
            (_, Some(r)) => Some(r.worst_margin),
            _ => None,
        }
    }
}

/// Three-valued Stein test for the normalized profile `rho` in `L^m`.
pub fn certify_stein(rho: &RhoProfile, m: i32, params: &CertifyParams) -> Result<SteinVerdict> {
    certify_stein_with(rho, m, params, submean_probe)
}

/// [`certify_stein`] with a caller-supplied log-norm probe, e.g. a parallel one.
/// The probe must return the same report as [`submean_probe`].
pub fn certify_stein_with<P>(rho: &RhoProfile, m: i32, params: &CertifyParams, probe: P) -> Result<SteinVerdict>
where
    P: FnOnce(&InvariantFunction<'_>, &ProbeParams) -> Result<SubmeanReport>,
{
    rho.require_normalized()?;
    let m = m.abs();
    let h_grid = linspace(-params.h_check_max, params.h_check_max, params.h_check_steps);
    let log_convexity = check_log_convex(rho, &h_grid)?;
    let mut verdict = SteinVerdict {
        status: SteinStatus::RefutedStein,
        reason: SteinReason::NotLogConvex,
        m,
        log_convexity,
        delta: None,
        submean: None,
        violation: None,
    };

    if !log_convexity.pass {
        let i = log_convexity.worst_index.expect("grid has interior points");
        verdict.violation = Some(Violation::LogConvexity {
            h: [h_grid[i - 1], h_grid[i], h_grid[i + 1]],
            margin: log_convexity.worst_margin,
        });
        return Ok(verdict);
    }
    if m == 0 {
        verdict.status = SteinStatus::CertifiedStein;
        verdict.reason = SteinReason::LogConvex;
        return Ok(verdict);
    }

    let report = delta_report(rho, m, params.tau_max, params.tau_steps)?;
    if let Some(i) = report.first_decrease {
        verdict.reason = SteinReason::DeltaDecreasing;
        verdict.violation = Some(Violation::DeltaDecrease {
            tau: [report.tau_grid[i], report.tau_grid[i + 1]],
            delta: [report.delta_values[i], report.delta_values[i + 1]],
        });
        verdict.delta = Some(report);
        return Ok(verdict);
    }
    if report.midpoint_convex {
        verdict.status = SteinStatus::CertifiedStein;
        verdict.reason = SteinReason::DeltaConvexMonotone;
        verdict.delta = Some(report);
        return Ok(verdict);
    }
    verdict.delta = Some(report);

    let radius = params.probe.radius;
    let points = params.probe.circle_points;
    for &x0 in &params.curve_x {
        let margin = curve_submean(rho, m, x0, radius, points)?;
        if margin < -params.tol_refute {
            verdict.reason = SteinReason::CurveSubmeanViolation;
            verdict.violation = Some(Violation::Curve { x0, radius, points, margin });
            return Ok(verdict);
        }
    }

    let probe = probe(&InvariantFunction::LogNorm { rho, m }, &params.probe)?;
    verdict.submean = Some(probe);
    match probe.worst_site {
        Some(site) if probe.worst_margin < -params.tol_refute => {
            verdict.reason = SteinReason::SubmeanViolation;
            verdict.violation = Some(Violation::Submean { site, radius, circle_points: site.circle_points });
        }
        _ => {
            verdict.status = SteinStatus::Inconclusive;
            verdict.reason = SteinReason::NoViolationFound;
        }
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use alloc::vec;

    fn fast() -> CertifyParams {
        CertifyParams { probe: ProbeParams { samples: 200, ..ProbeParams::default() }, ..CertifyParams::default() }
    }

    #[test]
    fn maximal_profile_is_certified() {
        let v = certify_stein(&RhoProfile::maximal(2), 2, &fast()).unwrap();
        assert_eq!(v.status, SteinStatus::CertifiedStein);
        assert!(v.delta.unwrap().identically_zero);
    }

    #[test]
    fn sub_maximal_power_is_refuted_by_decrease() {
        let rho = RhoProfile::CoshPower { alpha: 0.5 };
        let v = certify_stein(&rho, 2, &fast()).unwrap();
        assert_eq!(v.status, SteinStatus::RefutedStein);
        assert_eq!(v.reason, SteinReason::DeltaDecreasing);
        assert!(v.violation.unwrap().recheck(&rho, 2).unwrap());
    }

    #[test]
    fn trivial_bundle_is_certified() {
        let v = certify_stein(&RhoProfile::Constant { c: 1.0 }, 0, &fast()).unwrap();
        assert_eq!((v.status, v.reason), (SteinStatus::CertifiedStein, SteinReason::LogConvex));
    }

    #[test]
    fn concave_profile_is_refuted_for_every_weight() {
        let hs = linspace(0.0, 4.0, 40);
        let rho = RhoProfile::grid(4.0, hs.iter().map(|h| -h * h).collect()).unwrap();
        for m in [0, 1, -2] {
            let v = certify_stein(&rho, m, &fast()).unwrap();
            assert_eq!(v.reason, SteinReason::NotLogConvex);
            assert!(v.violation.unwrap().recheck(&rho, m).unwrap());
        }
    }

    #[test]
    fn negative_weight_reduces_by_duality() {
        let a = certify_stein(&RhoProfile::CoshPower { alpha: 1.5 }, -2, &fast()).unwrap();
        let b = certify_stein(&RhoProfile::CoshPower { alpha: 1.5 }, 2, &fast()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn concave_delta_goes_to_probes() {
        // log ρ = 3|h|: log-convex, δ = 3·h(τ) − τ/2 is increasing but concave.
        let m = 2;
        let hs = linspace(0.0, 6.0, 600);
        let rho = RhoProfile::grid(6.0, hs.iter().map(|h| 3.0 * h).collect()).unwrap();
        let v = certify_stein(&rho, m, &fast()).unwrap();
        let report = v.delta.as_ref().unwrap();
        assert!(v.log_convexity.pass);
        assert!(report.monotone && !report.midpoint_convex);
        assert_eq!(v.status, SteinStatus::RefutedStein);
        assert!(v.violation.unwrap().recheck(&rho, m).unwrap());
    }

    #[test]
    fn unnormalized_profile_is_rejected() {
        let err = certify_stein(&RhoProfile::Constant { c: 2.0 }, 1, &fast()).unwrap_err();
        assert!(matches!(err, Error::UnnormalizedProfile { .. }));
        let g = RhoProfile::grid(1.0, vec![0.5, 1.0]).unwrap();
        assert!(certify_stein(&g, 1, &fast()).is_err());
    }
}
