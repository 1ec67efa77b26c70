//! Points of the homogeneous line bundle `L^m = SL(2,ℂ) ×_{χ^m} ℂ`.
//!
//! A class `[g, z]` is represented by any pair with
//! `(g, z) ~ (g·diag(κ⁻¹, κ), κ^{−m}·z)`, `κ ∈ ℂ*`. Under this rule the fiber
//! norm `|z|·|ζ|^m·ρ(h)` does not depend on the representative.

#[allow(unused_imports)]
use num_traits::Float;

use crate::algebra::{conjugate_by_w, GroupElement, Matrix2, C64};
use crate::error::{Error, Result};
use crate::mostow::{coords, decompose};
use crate::profiles::RhoProfile;
use crate::tolerances;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BundlePoint {
    pub g: GroupElement,
    pub z: C64,
    pub m: i32,
}

impl BundlePoint {
    pub fn new(g: GroupElement, z: C64, m: i32) -> Self {
        Self { g, z, m }
    }

    /// Another representative of the same class: `(g·diag(κ⁻¹, κ), κ^{−m}·z)`.
    pub fn rerepresent(&self, kappa: C64) -> Self {
        Self { g: self.g * GroupElement::diag(kappa.inv()), z: self.z * kappa.powi(-self.m), m: self.m }
    }
}

/// Second column `(z3, z4)` of a covering representative, modulo `Γ_m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberClass {
    pub z3: C64,
    pub z4: C64,
    pub m: i32,
}

impl FiberClass {
    /// `γ·(z3, z4) = (γ z3, γ z4)`.
    pub fn act(&self, gamma: C64) -> Self {
        Self { z3: gamma * self.z3, z4: gamma * self.z4, m: self.m }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.z3.norm_sqr() + self.z4.norm_sqr()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Interior,
    Boundary,
    Exterior,
}

/// `e^{2πi j/m}`.
pub fn root_of_unity(m: i32, j: i32) -> C64 {
    C64::from_polar(1.0, 2.0 * core::f64::consts::PI * j as f64 / m as f64)
}

/// Whether `p` and `q` represent the same class: `p.g⁻¹·q.g = diag(κ⁻¹, κ)` and
/// `q.z = κ^{−m}·p.z`, both within `tol`.
pub fn same_point(p: &BundlePoint, q: &BundlePoint, tol: f64) -> Result<bool> {
    if p.m != q.m {
        return Err(Error::WeightMismatch { left: p.m, right: q.m });
    }
    let d = *(p.g.inverse() * q.g).matrix();
    if d.z2.norm() > tol || d.z3.norm() > tol {
        return Ok(false);
    }
    let kappa = d.z4;
    if kappa.norm() == 0.0 || (d.z1 * kappa - 1.0).norm() > tol {
        return Ok(false);
    }
    Ok((q.z - p.z * kappa.powi(-p.m)).norm() <= tol)
}

/// `|z|·|ζ|^m·ρ(h)` with `(ζ, h)` from the decomposition of `g`.
pub fn fiber_norm(p: &BundlePoint, rho: &RhoProfile) -> Result<f64> {
    let f = decompose(&p.g)?;
    Ok(p.z.norm() * f.zeta.norm().powi(p.m) * rho.eval(f.h))
}

pub fn membership(p: &BundlePoint, rho: &RhoProfile, punctured: bool) -> Result<Membership> {
    if punctured && p.z == C64::new(0.0, 0.0) {
        return Ok(Membership::Exterior);
    }
    let n = fiber_norm(p, rho)?;
    Ok(if n < 1.0 - tolerances::BOUNDARY {
        Membership::Interior
    } else if (n - 1.0).abs() <= tolerances::BOUNDARY {
        Membership::Boundary
    } else {
        Membership::Exterior
    })
}

/// Membership in the universal cover `{g : |ζ|^m·ρ(h) < 1}`.
pub fn cover_membership(g: &GroupElement, rho: &RhoProfile, m: i32) -> Result<bool> {
    if m == 0 {
        return Err(Error::InvalidWeight { m });
    }
    let f = decompose(g)?;
    Ok(f.zeta.norm().powi(m) * rho.eval(f.h) < 1.0)
}

/// Covering map `g ↦ [g, 1]`; its fibers are the orbits of `Γ_m`.
pub fn cover_project(g: &GroupElement, m: i32) -> Result<BundlePoint> {
    if m == 0 {
        return Err(Error::InvalidWeight { m });
    }
    Ok(BundlePoint::new(*g, C64::new(1.0, 0.0), m))
}

/// `φ̂ = Ad(W)` on the group, fiber coordinate unchanged, weight negated.
pub fn dual_group(g: &GroupElement) -> GroupElement {
    GroupElement::from_matrix_unchecked(conjugate_by_w(g.matrix()))
}

pub fn dual_map(p: &BundlePoint) -> BundlePoint {
    BundlePoint::new(dual_group(&p.g), p.z, -p.m)
}

/// `(z3, z4)` of the supplied representative.
pub fn project_fiber(p: &BundlePoint) -> FiberClass {
    let m = p.g.matrix();
    FiberClass { z3: m.z3, z4: m.z4, m: p.m }
}

/// `[z, w] ↦ (z^m, z^{m−1}w, w^m)`, for `m ≥ 1`.
pub fn embed_iota(f: &FiberClass) -> Result<[C64; 3]> {
    if f.m < 1 {
        return Err(Error::InvalidWeight { m: f.m });
    }
    let m = f.m;
    Ok([f.z3.powi(m), f.z3.powi(m - 1) * f.z4, f.z4.powi(m)])
}

/// Image of `[g, z] ∈ L^{−1}` in the tautological bundle over `ℙ¹`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TautologicalPoint {
    /// Homogeneous coordinates of `g·[0:1]`.
    pub line: [C64; 2],
    /// `z·g·(0, 1)ᵀ`.
    pub vector: [C64; 2],
}

impl TautologicalPoint {
    /// `|ℓ₀ v₁ − ℓ₁ v₀|`: zero iff the vector lies on the line.
    pub fn incidence_residual(&self) -> f64 {
        (self.line[0] * self.vector[1] - self.line[1] * self.vector[0]).norm()
    }
}

pub fn taut_map(p: &BundlePoint) -> Result<TautologicalPoint> {
    if p.m != -1 {
        return Err(Error::InvalidWeight { m: p.m });
    }
    let g = p.g.matrix();
    Ok(TautologicalPoint { line: [g.z3, g.z4], vector: [p.z * g.z3, p.z * g.z4] })
}

/// `w·g = g·(1 0; w 1)`. The second column, hence `t`, is untouched.
pub fn c_action(g: &GroupElement, w: C64) -> GroupElement {
    let m = g.matrix();
    GroupElement::from_matrix_unchecked(Matrix2::new(m.z1 + w * m.z3, m.z2 + w * m.z4, m.z3, m.z4))
}

/// `t`-coordinate of `g`, the quantity preserved by [`c_action`].
pub fn t_coordinate(g: &GroupElement) -> f64 {
    coords(g).t
}
