//! `δ` along the disc `x + iy ↦ (1 0; e^{x+iy} 1)`, where the log-norm
//! restricts to `x ↦ δ(log(1 + e^{2x}))`.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::profiles::{check_grid, convexity_scan, delta, softplus, ConvexityScan, RhoProfile};

#[derive(Debug, Clone, PartialEq)]
pub struct CurveProfile {
    pub x_grid: Vec<f64>,
    pub values: Vec<f64>,
    pub convex: bool,
    pub scan: ConvexityScan,
}

fn curve_value(rho: &RhoProfile, m: i32, x: f64) -> Result<f64> {
    delta(rho, m, softplus(2.0 * x))
}

pub fn distinguished_curve(rho: &RhoProfile, m: i32, x_grid: &[f64]) -> Result<CurveProfile> {
    if m <= 0 {
        return Err(Error::InvalidWeight { m });
    }
    check_grid(x_grid, 3)?;
    let values = x_grid.iter().map(|&x| curve_value(rho, m, x)).collect::<Result<Vec<_>>>()?;
    let scan = convexity_scan(x_grid, &values);
    Ok(CurveProfile { x_grid: x_grid.to_vec(), values, convex: scan.pass, scan })
}

/// Circle submean of the curve function at `x0`; it depends only on
/// `Re w`, so the mean is over `x0 + r·cos φ`.
pub fn curve_submean(rho: &RhoProfile, m: i32, x0: f64, radius: f64, points: usize) -> Result<f64> {
    if points == 0 {
        return Err(Error::InvalidProbe("need at least one circle point"));
    }
    let center = curve_value(rho, m, x0)?;
    let mut sum = 0.0;
    for j in 0..points {
        let phi = 2.0 * PI * j as f64 / points as f64;
        sum += curve_value(rho, m, x0 + radius * phi.cos())?;
    }
    Ok(sum / points as f64 - center)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::linspace;

    #[test]
    fn maximal_profile_gives_zero_curve() {
        let c = distinguished_curve(&RhoProfile::maximal(2), 2, &linspace(-5.0, 5.0, 50)).unwrap();
        assert!(c.values.iter().all(|&v| v == 0.0));
        assert!(c.convex);
    }

    #[test]
    fn sub_maximal_profile_is_concave_along_curve() {
        let m = 2;
        let rho = RhoProfile::CoshPower { alpha: 0.5 * m as f64 - 0.5 };
        let c = distinguished_curve(&rho, m, &linspace(-5.0, 5.0, 50)).unwrap();
        assert!(!c.convex);
        // δ(τ) = −τ/4; d²/dx² of −¼·log(1 + e^{2x}) at 0 is −¼·4·σ(0)(1 − σ(0)) = −¼.
        let r = 0.1;
        let margin = curve_submean(&rho, m, 0.0, r, 256).unwrap();
        assert!((margin - (-0.25) * r * r / 4.0).abs() < 1e-6, "margin {margin}");
        assert!((margin + 6.25e-4).abs() < 1e-6);
        // limit x → −∞
        assert!(curve_value(&rho, m, -40.0).unwrap().abs() < 1e-30);
    }

    #[test]
    fn curve_second_derivative_matches_symbolic() {
        let rho = RhoProfile::CoshPower { alpha: 1.5 };
        let m = 2; // δ = τ/4
        let c = 0.25;
        for &x in &[-2.0, -0.5, 0.0, 0.7, 3.0] {
            let e = 1e-4;
            let fd = (curve_value(&rho, m, x + e).unwrap() - 2.0 * curve_value(&rho, m, x).unwrap()
                + curve_value(&rho, m, x - e).unwrap())
                / (e * e);
            let sig = 1.0 / (1.0 + (-2.0 * x).exp());
            let symbolic = 4.0 * c * sig * (1.0 - sig);
            assert!((fd - symbolic).abs() < 1e-5, "x = {x}");
        }
    }
}
