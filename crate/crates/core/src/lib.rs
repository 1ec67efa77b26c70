//! Numerical kernel for SU(2)-equivariant disc bundles over the complex affine
//! quadric `Q² = SL(2,ℂ)/ℂ*`.
//!
//! The crate is `no_std` (it needs `alloc` for grids and reports) and covers:
//!
//! * [`algebra`]: 2×2 complex matrices, `SL(2,ℂ)` elements, the `{C, H, W}`
//!   basis of `su(2)`, the closed-form exponential and the involution `σ_U`.
//! * [`sampling`]: seeded, per-index substreams for Haar `SU(2)` and for
//!   `u·exp(ihH)·diag(ζ⁻¹, ζ)` group samples.
//! * [`mostow`]: the decomposition `g = u·exp(ihH)·diag(ζ⁻¹, ζ)`, the quotient
//!   maps onto the slice `{st − |b|² = 1}` and onto the invariant coordinates
//!   `(s, t)`.
//! * [`profiles`]: radial profiles `ρ`, their normalization, the maximal profile
//!   `(cosh 2h)^{|m|/2}` and the transforms `θ`, `δ`.
//! * [`bundles`]: points `[g, z]` of the line bundle `L^m`, the invariant fiber
//!   norm, membership, covering, duality and the `Γ_m` quotient embedding.
//! * [`certify`]: Stein certification, plurisubharmonicity probes and
//!   hyperbolicity witnesses.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod algebra;
pub mod bundles;
pub mod certify;
mod error;
pub mod mostow;
pub mod profiles;
pub mod sampling;
pub mod tolerances;

pub use algebra::{AlgebraVector, GroupElement, Matrix2, C64};
pub use error::{Error, Result};
pub use mostow::{InvariantCoords, MostowFactors, SliceElement};
pub use profiles::RhoProfile;
