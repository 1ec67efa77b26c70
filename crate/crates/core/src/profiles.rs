//! Radial profiles `ρ` and the transforms `θ`, `δ`.
//!
//! With `τ = log(st)` and `√(st) = cosh 2h` one has `τ = 2·log cosh 2h`,
//! `θ(τ) = log ρ(h(τ))` and `δ(τ) = θ(τ) − (m/4)·τ`. The maximal profile
//! `(cosh 2h)^{|m|/2}` is exactly the one with `δ ≡ 0`.

use alloc::vec::Vec;
use core::f64::consts::LN_2;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::tolerances;

/// `log cosh x` without overflow.
pub(crate) fn log_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - LN_2
}

/// `log(1 + e^x)` without overflow.
pub(crate) fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Log-profile sampled on a uniform grid over `[0, h_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridProfile {
    h_max: f64,
    log_rho: Vec<f64>,
}

impl GridProfile {
    pub fn new(h_max: f64, log_rho: Vec<f64>) -> Result<Self> {
        if !(h_max.is_finite() && h_max > 0.0) {
            return Err(Error::InvalidProfile("grid h_max must be positive"));
        }
        if log_rho.len() < 2 {
            return Err(Error::InvalidProfile("grid needs at least two values"));
        }
        if log_rho.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidProfile("grid values must be finite"));
        }
        Ok(Self { h_max, log_rho })
    }

    pub fn h_max(&self) -> f64 {
        self.h_max
    }

    pub fn log_rho(&self) -> &[f64] {
        &self.log_rho
    }

    fn spacing(&self) -> f64 {
        self.h_max / (self.log_rho.len() - 1) as f64
    }

    /// Piecewise-linear `log ρ` at `|h|`, continued past `h_max` with the last slope.
    fn log_eval(&self, h: f64) -> f64 {
        let a = h.abs();
        let n = self.log_rho.len();
        let dh = self.spacing();
        if a >= self.h_max {
            let slope = (self.log_rho[n - 1] - self.log_rho[n - 2]) / dh;
            return self.log_rho[n - 1] + slope * (a - self.h_max);
        }
        let i = ((a / dh) as usize).min(n - 2);
        let frac = (a - i as f64 * dh) / dh;
        self.log_rho[i] + frac * (self.log_rho[i + 1] - self.log_rho[i])
    }
}

/// Even, positive profile `ρ: ℝ → ℝ^{>0}`.
#[derive(Debug, Clone, PartialEq)]
pub enum RhoProfile {
    /// `(cosh 2h)^α`.
    CoshPower {
        alpha: f64,
    },
    Constant {
        c: f64,
    },
    Grid(GridProfile),
}

impl RhoProfile {
    pub fn cosh_power(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::InvalidProfile("alpha must be finite and nonnegative"));
        }
        Ok(Self::CoshPower { alpha })
    }

    pub fn constant(c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidProfile("constant must be positive"));
        }
        Ok(Self::Constant { c })
    }

    pub fn grid(h_max: f64, log_rho: Vec<f64>) -> Result<Self> {
        GridProfile::new(h_max, log_rho).map(Self::Grid)
    }

    /// The maximal Stein profile `(cosh 2h)^{|m|/2}`.
    pub fn maximal(m: i32) -> Self {
        Self::CoshPower { alpha: 0.5 * m.unsigned_abs() as f64 }
    }

    /// `log ρ(h)`; even by construction.
    pub fn log_eval(&self, h: f64) -> f64 {
        match self {
            Self::CoshPower { alpha } => alpha * log_cosh(2.0 * h),
            Self::Constant { c } => c.ln(),
            Self::Grid(g) => g.log_eval(h),
        }
    }

    pub fn eval(&self, h: f64) -> f64 {
        match self {
            Self::Constant { c } => *c,
            _ => self.log_eval(h).exp(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.log_eval(0.0).abs() <= tolerances::NORMALIZED
    }

    pub fn normalize(&self) -> Self {
        match self {
            Self::CoshPower { .. } => self.clone(),
            Self::Constant { .. } => Self::Constant { c: 1.0 },
            Self::Grid(g) => {
                let shift = g.log_rho[0];
                Self::Grid(GridProfile { h_max: g.h_max, log_rho: g.log_rho.iter().map(|v| v - shift).collect() })
            }
        }
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::UnnormalizedProfile { rho0: self.eval(0.0) })
        }
    }
}

pub fn eval_rho(p: &RhoProfile, h: f64) -> f64 {
    p.eval(h)
}

pub fn normalize(p: &RhoProfile) -> RhoProfile {
    p.normalize()
}

/// `(cosh 2h)^{|m|/2}`.
pub fn rho_max(m: i32, h: f64) -> f64 {
    RhoProfile::maximal(m).eval(h)
}

/// `τ = 2·log cosh 2h = log(st)`.
pub fn tau_of_h(h: f64) -> f64 {
    2.0 * log_cosh(2.0 * h)
}

/// Inverse of [`tau_of_h`] on `[0, ∞)`: `½·arccosh(e^{τ/2})`, evaluated as
/// `½·(τ/2 + log(1 + √(1 − e^{−τ})))`.
pub fn h_of_tau(tau: f64) -> f64 {
    let tau = tau.max(0.0);
    0.5 * (0.5 * tau + (-(-tau).exp_m1()).sqrt().ln_1p())
}

/// `θ(τ) = log ρ(½·arccosh e^{τ/2})`.
pub fn theta(p: &RhoProfile, tau: f64) -> Result<f64> {
    if !(tau >= 0.0) {
        return Err(Error::NegativeTau { tau });
    }
    Ok(match p {
        RhoProfile::CoshPower { alpha } => 0.5 * alpha * tau,
        RhoProfile::Constant { c } => c.ln(),
        RhoProfile::Grid(_) => p.log_eval(h_of_tau(tau)),
    })
}

/// `δ(τ) = θ(τ) − (m/4)·τ`, for `m > 0`.
pub fn delta(p: &RhoProfile, m: i32, tau: f64) -> Result<f64> {
    if m <= 0 {
        return Err(Error::InvalidWeight { m });
    }
    Ok(theta(p, tau)? - 0.25 * m as f64 * tau)
}

/// Midpoint-convexity scan of a sampled function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexityScan {
    pub pass: bool,
    /// Smallest normalized second difference; `0` for fewer than three points.
    pub worst_margin: f64,
    /// Middle index of the worst triple.
    pub worst_index: Option<usize>,
}

/// Second difference of `f` at the triple `(a, b, c)`, normalized so that it
/// equals `f(a) − 2f(b) + f(c)` on a uniform grid.
pub fn second_difference(x: [f64; 3], f: [f64; 3]) -> f64 {
    let [a, b, c] = x;
    2.0 * ((c - b) * f[0] + (b - a) * f[2] - (c - a) * f[1]) / (c - a)
}

pub(crate) fn check_grid(xs: &[f64], min_len: usize) -> Result<()> {
    if xs.len() < min_len {
        return Err(Error::InvalidGrid("too few points"));
    }
    if xs.iter().any(|x| !x.is_finite()) || xs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid("points must be finite and strictly increasing"));
    }
    Ok(())
}

/// Scans consecutive triples; passes iff every second difference ≥ −1e−10.
pub fn convexity_scan(xs: &[f64], fs: &[f64]) -> ConvexityScan {
    let mut scan = ConvexityScan { pass: true, worst_margin: 0.0, worst_index: None };
    for i in 1..xs.len().saturating_sub(1) {
        let margin = second_difference([xs[i - 1], xs[i], xs[i + 1]], [fs[i - 1], fs[i], fs[i + 1]]);
        if scan.worst_index.is_none() || margin < scan.worst_margin {
            scan.worst_margin = margin;
            scan.worst_index = Some(i);
        }
    }
    scan.pass = scan.worst_margin >= -tolerances::GRID;
    scan
}

/// Midpoint convexity of `log ρ` on a sorted grid of at least three points.
pub fn check_log_convex(p: &RhoProfile, h_grid: &[f64]) -> Result<ConvexityScan> {
    check_grid(h_grid, 3)?;
    let values: Vec<f64> = h_grid.iter().map(|&h| p.log_eval(h)).collect();
    Ok(convexity_scan(h_grid, &values))
}

/// `n + 1` evenly spaced points from `a` to `b`.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    let step = (b - a) / n as f64;
    (0..=n).map(|i| if i == n { b } else { a + step * i as f64 }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn eval_examples() {
        assert_eq!(RhoProfile::Constant { c: 1.0 }.eval(5.0), 1.0);
        let p = RhoProfile::cosh_power(1.0).unwrap();
        assert!((p.eval(1.0) - 2f64.cosh()).abs() < 1e-14);
        assert!((p.eval(1.0) - 3.76220).abs() < 1e-5);
        for h in [0.1, 0.7, 2.5, 12.0] {
            assert_eq!(p.eval(h), p.eval(-h));
        }
    }

    #[test]
    fn grid_interpolation_and_extension() {
        let g = RhoProfile::grid(2.0, vec![0.0, 0.5, 2.0]).unwrap();
        assert_eq!(g.log_eval(0.5), 0.25);
        assert_eq!(g.log_eval(-1.5), 1.25);
        // last slope (2.0 - 0.5) / 1.0 = 1.5
        assert_eq!(g.log_eval(3.0), 3.5);
        assert_eq!(g.eval(-3.0), g.eval(3.0));
    }

    #[test]
    fn grid_validation() {
        assert!(RhoProfile::grid(-1.0, vec![0.0, 1.0]).is_err());
        assert!(RhoProfile::grid(1.0, vec![0.0]).is_err());
        assert!(RhoProfile::grid(1.0, vec![0.0, f64::NAN]).is_err());
        assert!(RhoProfile::cosh_power(-0.5).is_err());
        assert!(RhoProfile::constant(0.0).is_err());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(RhoProfile::Constant { c: 3.0 }.normalize(), RhoProfile::Constant { c: 1.0 });
        let p = RhoProfile::CoshPower { alpha: 0.7 };
        assert_eq!(p.normalize(), p);
        let g = RhoProfile::grid(1.0, vec![0.7, 1.0, 2.0]).unwrap().normalize();
        match &g {
            RhoProfile::Grid(gp) => {
                let expected = [0.0, 1.0 - 0.7, 2.0 - 0.7];
                for (a, b) in gp.log_rho().iter().zip(expected) {
                    assert!((a - b).abs() < 1e-15);
                }
            }
            _ => unreachable!(),
        }
        assert!((g.eval(0.0) - 1.0).abs() <= 1e-15);
        assert_eq!(g.normalize(), g);
    }

    #[test]
    fn rho_max_examples() {
        assert_eq!(rho_max(2, 0.0), 1.0);
        assert!((rho_max(2, 1.0) - 2f64.cosh()).abs() < 1e-14);
        assert_eq!(rho_max(0, 3.3), 1.0);
        assert_eq!(rho_max(-3, 0.4), rho_max(3, 0.4));
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau_of_h(0.0), 0.0);
        assert!((tau_of_h(1.0) - 2.0 * 2f64.cosh().ln()).abs() < 1e-15);
        assert!((tau_of_h(1.0) - 2.65000).abs() < 1e-5);
        for h in linspace(0.0, 10.0, 99) {
            assert!((h_of_tau(tau_of_h(h)) - h).abs() <= 1e-12, "h = {h}");
        }
        // closed-form inverse on moderate values
        for tau in [0.01, 1.0, 5.0] {
            let direct = 0.5 * (0.5 * tau).exp().acosh();
            assert!((h_of_tau(tau) - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn theta_and_delta_examples() {
        let p = RhoProfile::CoshPower { alpha: 1.3 };
        assert_eq!(theta(&p, 0.0).unwrap(), 0.0);
        assert!((theta(&p, 2.0).unwrap() - 1.3).abs() < 1e-15);
        assert!(theta(&p, -0.1).is_err());
        for m in 1..5 {
            let max = RhoProfile::maximal(m);
            for tau in linspace(0.0, 30.0, 30) {
                assert_eq!(delta(&max, m, tau).unwrap(), 0.0);
                let d = delta(&p, m, tau).unwrap();
                assert!((d - (0.65 - 0.25 * m as f64) * tau).abs() < 1e-13);
            }
        }
        assert!(delta(&p, 0, 1.0).is_err());
        let g = RhoProfile::grid(2.0, vec![0.0, 0.4, 1.1]).unwrap();
        assert_eq!(delta(&g, 2, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn theta_is_log_rho_after_change_of_variable() {
        let profiles = [
            RhoProfile::CoshPower { alpha: 0.75 },
            RhoProfile::Constant { c: 1.0 },
            RhoProfile::grid(3.0, vec![0.0, 0.2, 0.9, 2.0]).unwrap(),
        ];
        for p in &profiles {
            for h in linspace(0.0, 6.0, 60) {
                let lhs = theta(p, tau_of_h(h)).unwrap();
                assert!((lhs - p.log_eval(h)).abs() <= 1e-12 * (1.0 + lhs.abs()));
            }
        }
    }

    #[test]
    fn log_convexity_examples() {
        let grid = linspace(-5.0, 5.0, 200);
        let c = check_log_convex(&RhoProfile::Constant { c: 1.0 }, &grid).unwrap();
        assert!(c.pass);
        assert_eq!(c.worst_margin, 0.0);
        assert!(check_log_convex(&RhoProfile::CoshPower { alpha: 1.0 }, &grid).unwrap().pass);
        let hs = linspace(0.0, 4.0, 40);
        let concave = RhoProfile::grid(4.0, hs.iter().map(|h| -h * h).collect()).unwrap();
        let scan = check_log_convex(&concave, &grid).unwrap();
        assert!(!scan.pass && scan.worst_margin < 0.0);
        assert!(check_log_convex(&concave, &[0.0, 1.0]).is_err());
        assert!(check_log_convex(&concave, &[0.0, 2.0, 1.0]).is_err());
    }

    #[test]
    fn second_difference_on_nonuniform_grid() {
        // f = x^2 has second derivative 2; normalized difference = 2 * h_avg^2 analog
        let d = second_difference([0.0, 1.0, 3.0], [0.0, 1.0, 9.0]);
        assert!(d > 0.0);
        let lin = second_difference([0.0, 1.0, 3.0], [1.0, 3.0, 7.0]);
        assert!(lin.abs() < 1e-15);
    }
}
