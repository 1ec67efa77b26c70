use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::profiles::{check_grid, convexity_scan, delta, linspace, rho_max, RhoProfile};
use crate::tolerances;

/// `δ` sampled on `[0, τ_max]` with its shape flags.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaReport {
    pub m: i32,
    pub tau_grid: Vec<f64>,
    pub delta_values: Vec<f64>,
    /// Every step `δ[i+1] − δ[i] ≥ −1e−10`.
    pub monotone: bool,
    /// Every step `δ[i+1] − δ[i] > 1e−10`.
    pub strictly_increasing: bool,
    /// Every second difference `≥ −1e−10`.
    pub midpoint_convex: bool,
    /// Last value exceeds the first by `10·1e−10` and the final step is positive.
    pub divergent: bool,
    /// `max |δ| ≤ 1e−12`.
    pub identically_zero: bool,
    /// First step with `δ[i+1] < δ[i] − 1e−10`.
    pub first_decrease: Option<usize>,
    /// Middle index of the worst second difference.
    pub worst_convexity_index: Option<usize>,
    pub worst_convexity_margin: f64,
}

/// `δ` on `steps + 1` uniform points of `[0, τ_max]`, for `m > 0`.
pub fn delta_report(rho: &RhoProfile, m: i32, tau_max: f64, steps: usize) -> Result<DeltaReport> {
    if m <= 0 {
        return Err(Error::InvalidWeight { m });
    }
    if !(tau_max.is_finite() && tau_max > 0.0) || steps < 2 {
        return Err(Error::InvalidGrid("tau_max must be positive with at least two steps"));
    }
    let tau_grid = linspace(0.0, tau_max, steps);
    let delta_values = tau_grid.iter().map(|&tau| delta(rho, m, tau)).collect::<Result<Vec<_>>>()?;

    let tol = tolerances::GRID;
    let first_decrease = delta_values.windows(2).position(|w| w[1] < w[0] - tol);
    let strictly_increasing = delta_values.windows(2).all(|w| w[1] - w[0] > tol);
    let scan = convexity_scan(&tau_grid, &delta_values);
    let n = delta_values.len();
    let divergent =
        delta_values[n - 1] > delta_values[0] + 10.0 * tol && delta_values[n - 1] - delta_values[n - 2] > 0.0;
    let identically_zero = delta_values.iter().all(|d| d.abs() <= tolerances::DELTA_ZERO);

    Ok(DeltaReport {
        m,
        tau_grid,
        delta_values,
        monotone: first_decrease.is_none(),
        strictly_increasing,
        midpoint_convex: scan.pass,
        divergent,
        identically_zero,
        first_decrease,
        worst_convexity_index: scan.worst_index,
        worst_convexity_margin: scan.worst_margin,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Containment {
    pub pass: bool,
    /// `min (ρ(h) − ρ_max(h))` over the grid.
    pub worst_gap: f64,
    pub worst_h: f64,
}

/// `ρ ≥ ρ_max − 1e−10` on the grid, i.e. `Ω_ρ ⊂ Ω_max`.
pub fn check_containment_max(rho: &RhoProfile, m: i32, h_grid: &[f64]) -> Result<Containment> {
    rho.require_normalized()?;
    check_grid(h_grid, 1)?;
    let mut worst = Containment { pass: true, worst_gap: f64::INFINITY, worst_h: h_grid[0] };
    for &h in h_grid {
        let gap = rho.eval(h) - rho_max(m, h);
        if gap < worst.worst_gap {
            worst.worst_gap = gap;
            worst.worst_h = h;
        }
    }
    worst.pass = worst.worst_gap >= -tolerances::GRID;
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn maximal_profile_has_zero_delta() {
        for m in 1..4 {
            let r = delta_report(&RhoProfile::maximal(m), m, 20.0, 200).unwrap();
            assert!(r.identically_zero && r.monotone && r.midpoint_convex);
            assert!(!r.divergent && !r.strictly_increasing);
            assert_eq!(r.tau_grid.len(), 201);
        }
    }

    #[test]
    fn steeper_profile_diverges() {
        for m in 1..4 {
            let rho = RhoProfile::CoshPower { alpha: 0.5 * m as f64 + 0.5 };
            let r = delta_report(&rho, m, 20.0, 200).unwrap();
            assert!(r.monotone && r.strictly_increasing && r.divergent && r.midpoint_convex);
            assert!((r.delta_values[200] - 0.25 * 20.0).abs() < 1e-12);
        }
    }

    #[test]
    fn log_concave_dip_is_not_monotone() {
        // log ρ dips below zero before rising: δ decreases at first.
        let rho = RhoProfile::grid(4.0, vec![0.0, -0.3, -0.2, 0.5, 2.0]).unwrap();
        let r = delta_report(&rho, 1, 15.0, 300).unwrap();
        assert!(!r.monotone);
        assert!(r.first_decrease.is_some());
    }

    #[test]
    fn delta_report_rejects_bad_input() {
        let rho = RhoProfile::maximal(1);
        assert!(delta_report(&rho, 0, 1.0, 10).is_err());
        assert!(delta_report(&rho, 1, -1.0, 10).is_err());
        assert!(delta_report(&rho, 1, 1.0, 1).is_err());
    }

    #[test]
    fn containment_examples() {
        let grid = linspace(0.0, 5.0, 100);
        for m in 1..4 {
            let max = check_containment_max(&RhoProfile::maximal(m), m, &grid).unwrap();
            assert!(max.pass && max.worst_gap == 0.0);
            let above = RhoProfile::CoshPower { alpha: 0.5 * m as f64 + 0.25 };
            assert!(check_containment_max(&above, m, &grid).unwrap().pass);
            let below = RhoProfile::CoshPower { alpha: 0.5 * m as f64 - 0.25 };
            let c = check_containment_max(&below, m, &grid).unwrap();
            assert!(!c.pass && c.worst_gap < 0.0);
        }
        assert!(check_containment_max(&RhoProfile::Constant { c: 2.0 }, 1, &grid).is_err());
    }
}
