//! Small exact complex algebra for `SL(2,ℂ)` and `su(2)`.
//!
//! Matrices are stored column-major: the first column is `(z1, z2)` and the
//! second `(z3, z4)`, i.e.
//!
//! ```text
//!     ( z1  z3 )
//!     ( z2  z4 )
//! ```
//!
//! Everything that reads off invariant coordinates relies on this layout.

use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::tolerances;

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// `C = diag(i, −i)`, generator of `K`.
pub const BASIS_C: Matrix2 = Matrix2::from_rows(I, ZERO, ZERO, C64::new(0.0, -1.0));
/// `H = (0 −1; 1 0)`, generator of the maximal abelian subalgebra.
pub const BASIS_H: Matrix2 = Matrix2::from_rows(ZERO, C64::new(-1.0, 0.0), ONE, ZERO);
/// `W = (0 i; i 0)`.
pub const BASIS_W: Matrix2 = Matrix2::from_rows(ZERO, I, I, ZERO);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    pub z1: C64,
    pub z2: C64,
    pub z3: C64,
    pub z4: C64,
}

impl Matrix2 {
    /// Column-major constructor.
    pub const fn new(z1: C64, z2: C64, z3: C64, z4: C64) -> Self {
        Self { z1, z2, z3, z4 }
    }

    /// Row-major constructor: `(a b; c d)`.
    pub const fn from_rows(a: C64, b: C64, c: C64, d: C64) -> Self {
        Self { z1: a, z2: c, z3: b, z4: d }
    }

    pub const fn identity() -> Self {
        Self::from_rows(ONE, ZERO, ZERO, ONE)
    }

    pub const fn zero() -> Self {
        Self::from_rows(ZERO, ZERO, ZERO, ZERO)
    }

    pub const fn diag(a: C64, d: C64) -> Self {
        Self::from_rows(a, ZERO, ZERO, d)
    }

    /// Entries as rows `[[a, b], [c, d]]`.
    pub fn rows(&self) -> [[C64; 2]; 2] {
        [[self.z1, self.z3], [self.z2, self.z4]]
    }

    pub fn det(&self) -> C64 {
        self.z1 * self.z4 - self.z3 * self.z2
    }

    pub fn trace(&self) -> C64 {
        self.z1 + self.z4
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_rows(self.z1.conj(), self.z2.conj(), self.z3.conj(), self.z4.conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_rows(self.z1, self.z2, self.z3, self.z4)
    }

    /// Adjugate `(d −b; −c a)`; equals the inverse when `det = 1`.
    pub fn adjugate(&self) -> Self {
        Self::from_rows(self.z4, -self.z3, -self.z2, self.z1)
    }

    /// Inverse, or `None` when the determinant vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det == ZERO {
            return None;
        }
        Some(self.adjugate().scale(det.inv()))
    }

    pub fn scale(&self, k: C64) -> Self {
        Self::new(self.z1 * k, self.z2 * k, self.z3 * k, self.z4 * k)
    }

    pub fn frobenius_norm(&self) -> f64 {
        (self.z1.norm_sqr() + self.z2.norm_sqr() + self.z3.norm_sqr() + self.z4.norm_sqr()).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        [self.z1, self.z2, self.z3, self.z4].iter().all(|z| z.is_finite())
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let d = *self - *other;
        [d.z1, d.z2, d.z3, d.z4].iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;
    fn add(self, rhs: Matrix2) -> Matrix2 {
        Matrix2::new(self.z1 + rhs.z1, self.z2 + rhs.z2, self.z3 + rhs.z3, self.z4 + rhs.z4)
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;
    fn sub(self, rhs: Matrix2) -> Matrix2 {
        Matrix2::new(self.z1 - rhs.z1, self.z2 - rhs.z2, self.z3 - rhs.z3, self.z4 - rhs.z4)
    }
}

impl Neg for Matrix2 {
    type Output = Matrix2;
    fn neg(self) -> Matrix2 {
        Matrix2::new(-self.z1, -self.z2, -self.z3, -self.z4)
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, rhs: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.z1 * rhs.z1 + self.z3 * rhs.z2,
            self.z2 * rhs.z1 + self.z4 * rhs.z2,
            self.z1 * rhs.z3 + self.z3 * rhs.z4,
            self.z2 * rhs.z3 + self.z4 * rhs.z4,
        )
    }
}

impl Mul<C64> for Matrix2 {
    type Output = Matrix2;
    fn mul(self, k: C64) -> Matrix2 {
        self.scale(k)
    }
}

/// Element of `SL(2,ℂ)`: a matrix with `|det − 1| ≤ 1e−10`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement(Matrix2);

impl GroupElement {
    pub fn new(m: Matrix2) -> Result<Self> {
        Self::with_tolerance(m, tolerances::DET)
    }

    pub fn with_tolerance(m: Matrix2, tol: f64) -> Result<Self> {
        let residual = (m.det() - ONE).norm();
        if !m.is_finite() || !(residual <= tol) {
            return Err(Error::NotUnimodular { residual });
        }
        Ok(Self(m))
    }

    /// Divides by a square root of the determinant. Never applied implicitly.
    pub fn renormalized(m: Matrix2) -> Result<Self> {
        let det = m.det();
        if det == ZERO || !m.is_finite() {
            return Err(Error::NotUnimodular { residual: (det - ONE).norm() });
        }
        Self::new(m.scale(det.sqrt().inv()))
    }

    /// Wraps a matrix known to be unimodular by construction.
    pub(crate) const fn from_matrix_unchecked(m: Matrix2) -> Self {
        Self(m)
    }

    pub const fn identity() -> Self {
        Self(Matrix2::identity())
    }

    /// `diag(a, a⁻¹)`.
    pub fn diag(a: C64) -> Self {
        Self(Matrix2::diag(a, a.inv()))
    }

    pub const fn matrix(&self) -> &Matrix2 {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix2 {
        self.0
    }

    /// Exact inverse through the adjugate.
    pub fn inverse(&self) -> Self {
        Self(self.0.adjugate())
    }

    pub fn det_residual(&self) -> f64 {
        (self.0.det() - ONE).norm()
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: GroupElement) -> GroupElement {
        GroupElement(self.0 * rhs.0)
    }
}

/// Coefficients of `a·C + b·H + c·W` with complex `a, b, c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraVector {
    pub c: C64,
    pub h: C64,
    pub w: C64,
}

impl AlgebraVector {
    pub const fn new(c: C64, h: C64, w: C64) -> Self {
        Self { c, h, w }
    }

    pub fn to_matrix(&self) -> Matrix2 {
        BASIS_C.scale(self.c) + BASIS_H.scale(self.h) + BASIS_W.scale(self.w)
    }

    /// Coefficients of a traceless matrix in the `{C, H, W}` basis.
    pub fn from_matrix(a: &Matrix2) -> Result<Self> {
        check_traceless(a)?;
        // C: diag part, H: antisymmetric, W: symmetric off-diagonal.
        let c = (a.z1 - a.z4) * C64::new(0.0, -0.5);
        let h = (a.z2 - a.z3) * 0.5;
        let w = (a.z2 + a.z3) * C64::new(0.0, -0.5);
        Ok(Self { c, h, w })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.to_matrix().frobenius_norm()
    }
}

fn check_traceless(a: &Matrix2) -> Result<()> {
    let trace = a.trace().norm();
    if !(trace <= tolerances::TRACE * (1.0 + a.frobenius_norm())) {
        return Err(Error::NotTraceless { trace });
    }
    Ok(())
}

/// `sinh λ / λ`, with the even series near zero.
pub(crate) fn sinhc(lambda: C64) -> C64 {
    if lambda.norm() < tolerances::SINHC_SERIES {
        let l2 = lambda * lambda;
        ONE + l2 * (1.0 / 6.0) + l2 * l2 * (1.0 / 120.0) + l2 * l2 * l2 * (1.0 / 5040.0)
    } else {
        lambda.sinh() / lambda
    }
}

/// Exponential of a traceless matrix: `cosh λ·I + (sinh λ / λ)·A` with
/// `λ² = −det A`. Both coefficients are even in `λ`, so the square-root branch
/// does not matter.
pub fn exp_traceless(a: &Matrix2) -> Result<GroupElement> {
    check_traceless(a)?;
    let lambda = (-a.det()).sqrt();
    let m = Matrix2::identity().scale(lambda.cosh()) + a.scale(sinhc(lambda));
    Ok(GroupElement(m))
}

/// `exp(ihH) = (cosh h, −i sinh h; i sinh h, cosh h)`.
pub fn exp_radial(h: f64) -> GroupElement {
    let (c, s) = (h.cosh(), h.sinh());
    GroupElement(Matrix2::from_rows(C64::new(c, 0.0), C64::new(0.0, -s), C64::new(0.0, s), C64::new(c, 0.0)))
}

/// `exp(yC) = diag(e^{iy}, e^{−iy})`.
pub fn exp_k(y: f64) -> GroupElement {
    let e = C64::new(0.0, y).exp();
    GroupElement(Matrix2::diag(e, e.conj()))
}

/// `σ_U(g) = (ḡᵀ)⁻¹`; the fixed points are exactly `SU(2)`.
pub fn sigma_u(g: &GroupElement) -> GroupElement {
    GroupElement(g.0.adjoint().adjugate())
}

/// True iff `‖g†g − I‖_F ≤ tol` and `|det g − 1| ≤ tol`.
pub fn is_special_unitary(g: &GroupElement, tol: f64) -> bool {
    let gram = g.0.adjoint() * g.0;
    (gram - Matrix2::identity()).frobenius_norm() <= tol && g.det_residual() <= tol
}

/// `Ad(W)`: conjugation by `W`, with `W⁻¹ = −W`.
pub fn conjugate_by_w(a: &Matrix2) -> Matrix2 {
    BASIS_W * *a * (-BASIS_W)
}
