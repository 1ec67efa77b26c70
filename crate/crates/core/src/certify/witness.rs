//! Boundedness constants for the covering of a non-maximal punctured bundle.
//!
//! Over a ball `B_ε(z3, z4)` compactly inside the punctured unit ball, a cover
//! member satisfies `−C < log t` and `δ(log s + log t) < (m/2)·C`. Since `δ`
//! is nondecreasing and unbounded this forces `log s + log t < D`, hence
//! `s < e^{D + C}`.

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::algebra::{GroupElement, Matrix2, C64};
use crate::bundles::cover_membership;
use crate::error::{Error, Result};
use crate::mostow::coords;
use crate::profiles::{check_log_convex, delta, linspace, RhoProfile};
use crate::sampling::substream;

use super::delta::delta_report;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessParams {
    /// The level `(m/2)·C` must be reached before this `τ`.
    pub tau_scan_max: f64,
    pub scan_steps: usize,
    pub bisection_steps: usize,
}

impl Default for WitnessParams {
    fn default() -> Self {
        Self { tau_scan_max: 400.0, scan_steps: 8000, bisection_steps: 200 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub m: i32,
    pub center: (C64, C64),
    pub eps: f64,
    pub t_min: f64,
    pub t_max: f64,
    /// `−log t_min`.
    pub c: f64,
    /// Smallest `τ` with `δ(τ) ≥ (m/2)·C`.
    pub d: f64,
    /// `e^{D + C}`.
    pub s_bound: f64,
}

pub fn hyperbolicity_witness(
    rho: &RhoProfile,
    m: i32,
    center: (C64, C64),
    eps: f64,
    params: &WitnessParams,
) -> Result<Witness> {
    if m <= 0 {
        return Err(Error::InvalidWeight { m });
    }
    rho.require_normalized()?;
    let r = (center.0.norm_sqr() + center.1.norm_sqr()).sqrt();
    if !(eps > 0.0 && r - eps > 0.0 && r + eps < 1.0) {
        return Err(Error::BallOutsidePuncturedBall);
    }
    let (t_min, t_max) = ((r - eps).powi(2), (r + eps).powi(2));

    let scan = delta_report(rho, m, params.tau_scan_max, params.scan_steps)?;
    let h_grid = linspace(-5.0, 5.0, 200);
    if !scan.monotone || !check_log_convex(rho, &h_grid)?.pass {
        return Err(Error::NotStein);
    }
    if scan.identically_zero {
        return Err(Error::WitnessImpossible);
    }

    let c = -t_min.ln();
    let level = 0.5 * m as f64 * c;
    let i = scan
        .delta_values
        .iter()
        .position(|&d| d >= level)
        .ok_or(Error::ThresholdNotReached { tau_max: params.tau_scan_max })?;
    // δ(0) = 0 < level, so i ≥ 1; bisect keeping δ(hi) ≥ level.
    let (mut lo, mut hi) = (scan.tau_grid[i - 1], scan.tau_grid[i]);
    for _ in 0..params.bisection_steps {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if delta(rho, m, mid)? >= level {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let d = hi;
    Ok(Witness { m, center, eps, t_min, t_max, c, d, s_bound: (d + c).exp() })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessCheck {
    pub accepted: usize,
    pub attempts: usize,
    pub max_s: f64,
    pub violations: usize,
}

impl WitnessCheck {
    pub fn holds(&self, rel_tol: f64, s_bound: f64) -> bool {
        self.violations == 0 && self.max_s <= s_bound * (1.0 + rel_tol)
    }
}

fn uniform_in_ball<R: Rng + ?Sized>(rng: &mut R, center: (C64, C64), eps: f64) -> (C64, C64) {
    let mut dir = [0.0f64; 4];
    for d in dir.iter_mut() {
        *d = StandardNormal.sample(rng);
    }
    let n = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
    let radius = eps * rng.random::<f64>().powf(0.25) / n;
    (center.0 + C64::new(dir[0], dir[1]) * radius, center.1 + C64::new(dir[2], dir[3]) * radius)
}

/// Rejection-samples cover members whose second column lies in the ball and
/// checks `s ≤ s_bound·(1 + 1e−9)` on each.
///
/// Every `g` with second column `v = (z3, z4)` is `(p + λv | v)` with
/// `p = (z̄4, −z̄3)/|v|²`, so `s = 1/t + |λ|²t`; `λ` is drawn from a disc twice
/// as wide as the bound allows.
pub fn verify_witness(
    rho: &RhoProfile,
    witness: &Witness,
    seed: u64,
    accept_target: usize,
    max_attempts: usize,
) -> Result<WitnessCheck> {
    let lambda_max = 2.0 * (witness.s_bound / witness.t_min).sqrt();
    let mut check = WitnessCheck { accepted: 0, attempts: 0, max_s: 0.0, violations: 0 };
    while check.accepted < accept_target && check.attempts < max_attempts {
        let mut rng = substream(seed, check.attempts as u64);
        check.attempts += 1;
        let (z3, z4) = uniform_in_ball(&mut rng, witness.center, witness.eps);
        let t = z3.norm_sqr() + z4.norm_sqr();
        let p = (z4.conj() / t, -z3.conj() / t);
        let lambda =
            C64::from_polar(lambda_max * rng.random::<f64>().sqrt(), 2.0 * core::f64::consts::PI * rng.random::<f64>());
        let g = GroupElement::new(Matrix2::new(p.0 + lambda * z3, p.1 + lambda * z4, z3, z4))?;
        if !cover_membership(&g, rho, witness.m)? {
            continue;
        }
        check.accepted += 1;
        let s = coords(&g).s;
        check.max_s = check.max_s.max(s);
        if s > witness.s_bound * (1.0 + 1e-9) {
            check.violations += 1;
        }
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn center(r: f64) -> (C64, C64) {
        (C64::new(r, 0.0), C64::new(0.0, 0.0))
    }

    #[test]
    fn linear_delta_witness() {
        let rho = RhoProfile::CoshPower { alpha: 1.5 };
        let w = hyperbolicity_witness(&rho, 2, center(0.5), 0.1, &WitnessParams::default()).unwrap();
        let c = -(0.16f64).ln();
        assert!((w.c - c).abs() < 1e-12);
        assert!((w.c - 1.83258).abs() < 1e-5);
        assert!((w.d - 4.0 * c).abs() < 1e-9);
        assert!((w.s_bound / (5.0 * c).exp() - 1.0).abs() < 1e-6);
        assert!((w.s_bound - 9536.74).abs() < 0.01);
        let check = verify_witness(&rho, &w, 3, 500, 1_000_000).unwrap();
        assert_eq!(check.accepted, 500);
        assert!(check.holds(1e-9, w.s_bound));
    }

    #[test]
    fn maximal_profile_has_no_witness() {
        let err = hyperbolicity_witness(&RhoProfile::maximal(2), 2, center(0.5), 0.1, &WitnessParams::default());
        assert_eq!(err, Err(Error::WitnessImpossible));
    }

    #[test]
    fn ball_must_avoid_puncture_and_sphere() {
        let rho = RhoProfile::CoshPower { alpha: 1.5 };
        let p = WitnessParams::default();
        assert_eq!(hyperbolicity_witness(&rho, 2, center(0.5), 0.5, &p), Err(Error::BallOutsidePuncturedBall));
        assert_eq!(hyperbolicity_witness(&rho, 2, center(0.95), 0.1, &p), Err(Error::BallOutsidePuncturedBall));
        assert_eq!(hyperbolicity_witness(&rho, 2, center(0.5), 0.0, &p), Err(Error::BallOutsidePuncturedBall));
    }

    #[test]
    fn non_stein_profile_is_rejected() {
        let rho = RhoProfile::CoshPower { alpha: 0.5 };
        let p = WitnessParams::default();
        assert_eq!(hyperbolicity_witness(&rho, 2, center(0.5), 0.1, &p), Err(Error::NotStein));
    }

    #[test]
    fn slow_delta_may_not_reach_level() {
        let rho = RhoProfile::CoshPower { alpha: 1.0 + 1e-6 };
        let p = WitnessParams { tau_scan_max: 10.0, scan_steps: 100, ..WitnessParams::default() };
        assert!(matches!(hyperbolicity_witness(&rho, 2, center(0.5), 0.1, &p), Err(Error::ThresholdNotReached { .. })));
    }
}
