//! The decomposition `SL(2,ℂ) = SU(2)·exp(iℝH)·ℂ*` and the invariant
//! coordinates on `SU(2)\SL(2,ℂ)/K`.
//!
//! `gram_slice` realizes the left quotient `g ↦ σ_U(g)⁻¹g = g†g` onto the
//! slice of positive Hermitian matrices `(s b; b̄ t)` with `st − |b|² = 1`;
//! `slice_coords` forgets `b`, which is the quotient by the `K`-conjugation
//! `b ↦ e^{2iy} b`.

use core::f64::consts::{FRAC_PI_2, PI};

#[allow(unused_imports)]
use num_traits::Float;

use crate::algebra::{exp_k, exp_radial, sigma_u, GroupElement, Matrix2, C64};
use crate::error::{Error, Result};
use crate::tolerances;

/// Point `(s b; b̄ t)` of the slice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceElement {
    pub s: f64,
    pub t: f64,
    pub b: C64,
}

impl SliceElement {
    pub fn new(s: f64, t: f64, b: C64) -> Result<Self> {
        let q = Self { s, t, b };
        let residual = q.residual();
        if !(s > 0.0 && t > 0.0 && residual <= tolerances::SLICE * (s * t).max(1.0)) {
            return Err(Error::SliceViolation { residual });
        }
        Ok(q)
    }

    /// `|st − |b|² − 1|`.
    pub fn residual(&self) -> f64 {
        (self.s * self.t - self.b.norm_sqr() - 1.0).abs()
    }

    pub fn matrix(&self) -> Matrix2 {
        Matrix2::from_rows(C64::new(self.s, 0.0), self.b, self.b.conj(), C64::new(self.t, 0.0))
    }

    /// Action of `exp(yC)` by conjugation: `b ↦ e^{2iy} b`.
    pub fn rotate(&self, y: f64) -> Self {
        Self { b: self.b * C64::new(0.0, 2.0 * y).exp(), ..*self }
    }
}

/// Coordinates `(s, t)` with `st ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantCoords {
    pub s: f64,
    pub t: f64,
}

impl InvariantCoords {
    pub fn new(s: f64, t: f64) -> Result<Self> {
        let st = s * t;
        if !(s > 0.0 && t > 0.0 && st >= 1.0 - tolerances::COORDS) || !st.is_finite() {
            return Err(Error::InvalidCoordinates { st });
        }
        Ok(Self { s, t })
    }

    /// `log(st)`, the variable `τ` of the profile transforms.
    pub fn tau(&self) -> f64 {
        self.s.ln() + self.t.ln()
    }
}

/// `g = u·exp(ihH)·diag(ζ⁻¹, ζ)` with `h ≥ 0` and `arg ζ ∈ (−π/2, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MostowFactors {
    pub u: GroupElement,
    pub h: f64,
    pub zeta: C64,
}

impl MostowFactors {
    pub fn reconstruct(&self) -> GroupElement {
        self.u * exp_radial(self.h) * GroupElement::diag(self.zeta.inv())
    }

    /// `‖u·exp(ihH)·diag(ζ⁻¹, ζ) − g‖_F`.
    pub fn residual(&self, g: &GroupElement) -> f64 {
        (*self.reconstruct().matrix() - *g.matrix()).frobenius_norm()
    }
}

/// `Π₁(g) = σ_U(g)⁻¹·g`, computed as `g†g`.
pub fn gram_slice(g: &GroupElement) -> Result<SliceElement> {
    let m = g.matrix();
    let s = m.z1.norm_sqr() + m.z2.norm_sqr();
    let t = m.z3.norm_sqr() + m.z4.norm_sqr();
    let b = m.z1.conj() * m.z3 + m.z2.conj() * m.z4;
    SliceElement::new(s, t, b)
}

/// `σ_U(g)⁻¹·g` evaluated literally through the involution; used to check
/// that it agrees with the Gram form.
pub fn quotient_by_sigma(g: &GroupElement) -> Matrix2 {
    *(sigma_u(g).inverse() * *g).matrix()
}

/// `Π₂`: forgets `b`.
pub fn slice_coords(q: &SliceElement) -> InvariantCoords {
    InvariantCoords { s: q.s, t: q.t }
}

/// `(s, t) = (|z1|² + |z2|², |z3|² + |z4|²)`: squared column norms.
pub fn coords(g: &GroupElement) -> InvariantCoords {
    let m = g.matrix();
    InvariantCoords { s: m.z1.norm_sqr() + m.z2.norm_sqr(), t: m.z3.norm_sqr() + m.z4.norm_sqr() }
}

/// `|ζ| = (t/s)^{1/4}`.
pub fn zeta_modulus(c: &InvariantCoords) -> f64 {
    (c.t / c.s).powf(0.25)
}

/// `h = ½·arccosh √(st)`, evaluated as `½·log(√(st) + √(st − 1))`.
pub fn radial(c: &InvariantCoords) -> Result<f64> {
    let st = c.s * c.t;
    if !(st >= 1.0 - tolerances::COORDS) {
        return Err(Error::InvalidCoordinates { st });
    }
    let st = st.max(1.0);
    Ok(0.5 * (st.sqrt() + (st - 1.0).sqrt()).ln())
}

/// Canonical decomposition `g = u·exp(ihH)·diag(ζ⁻¹, ζ)`.
///
/// From `g†g = (s b; b̄ t)`: `sinh 2h = |b|`, `|ζ| = (t/s)^{1/4}` and
/// `b = −i·sinh 2h·e^{2i·arg ζ}`. The phase is fixed in `(−π/2, π/2]` and set
/// to zero when `sinh 2h ≤ 1e−8`; `u` is then read off as
/// `g·diag(ζ, ζ⁻¹)·exp(−ihH)`.
pub fn decompose(g: &GroupElement) -> Result<MostowFactors> {
    let q = gram_slice(g)?;
    let sinh_2h = q.b.norm();
    let h = 0.5 * sinh_2h.asinh();
    let x = 0.25 * (q.t / q.s).ln();
    let y = if sinh_2h > tolerances::DEGENERATE_H {
        let mut y = 0.5 * (q.b * C64::new(0.0, 1.0)).arg();
        if y <= -FRAC_PI_2 {
            y += PI;
        }
        y
    } else {
        0.0
    };
    let zeta = C64::new(x, y).exp();
    let u = *g * GroupElement::diag(zeta) * exp_radial(-h);
    let factors = MostowFactors { u, h, zeta };
    let residual = factors.residual(g);
    if !(residual <= tolerances::RECONSTRUCTION) {
        return Err(Error::IllConditioned { residual });
    }
    Ok(factors)
}

/// `k·q·k⁻¹` for `k = exp(yC)`, as a matrix product.
pub fn conjugate_slice(q: &SliceElement, y: f64) -> Matrix2 {
    let k = exp_k(y);
    *k.matrix() * q.matrix() * *k.inverse().matrix()
}
