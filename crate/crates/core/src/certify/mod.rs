//! Stein certification and hyperbolicity witnesses.
//!
//! A disc bundle `Ω_ρ ⊂ L^m` is Stein iff `g ↦ log(|ζ|^m ρ(h))` is
//! plurisubharmonic on `SL(2,ℂ)`. In the coordinates `(s, t)` this function is
//! `δ(log s + log t) + (m/2)·log t`, so:
//!
//! * `m = 0`: log-convexity of `ρ` decides.
//! * `m > 0`: log-convexity and monotonicity of `δ` are necessary; a convex,
//!   nondecreasing `δ` is sufficient. In between, the verdict falls back on
//!   submean probes and may stay inconclusive.

mod curve;
mod delta;
mod stein;
mod submean;
mod witness;

pub use curve::{curve_submean, distinguished_curve, CurveProfile};
pub use delta::{check_containment_max, delta_report, Containment, DeltaReport};
pub use stein::{certify_stein, certify_stein_with, CertifyParams, SteinReason, SteinStatus, SteinVerdict, Violation};
pub use submean::{
    probe_site, submean_adaptive, submean_at, submean_probe, FunctionId, InvariantFunction, LeviSummary, ProbeParams,
    ProbeSite, SubmeanReport,
};
pub use witness::{hyperbolicity_witness, verify_witness, Witness, WitnessCheck, WitnessParams};
