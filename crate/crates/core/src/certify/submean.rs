//! Circle submean probes along holomorphic discs `w ↦ g·exp(wV)`.
//!
//! For a plurisubharmonic `f`, the mean of `f(g·exp(r e^{iφ} V))` over the
//! circle is at least `f(g)`. A negative margin is a concrete refutation; for
//! smooth `f` the margin is `r²·∂∂̄f(V, V̄) + O(r⁴)`.

use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::algebra::{exp_traceless, AlgebraVector, GroupElement, Matrix2, C64};
use crate::error::{Error, Result};
use crate::mostow::{radial, InvariantCoords};
use crate::profiles::RhoProfile;
use crate::sampling::{random_direction, substream, GroupSampler};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionId {
    LogS,
    LogT,
    LogNorm,
}

impl FunctionId {
    pub fn parse(id: &str) -> Result<Self> {
        match id {
            "log_s" => Ok(Self::LogS),
            "log_t" => Ok(Self::LogT),
            "log_norm" => Ok(Self::LogNorm),
            _ => Err(Error::UnknownFunction),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::LogS => "log_s",
            Self::LogT => "log_t",
            Self::LogNorm => "log_norm",
        }
    }
}

/// `U × K`-invariant functions on `SL(2,ℂ)`.
#[derive(Debug, Clone, Copy)]
pub enum InvariantFunction<'a> {
    LogS,
    LogT,
    /// `log(|ζ|^m ρ(h)) = (m/4)(log t − log s) + log ρ(h)`.
    LogNorm {
        rho: &'a RhoProfile,
        m: i32,
    },
}

impl<'a> InvariantFunction<'a> {
    pub fn id(&self) -> FunctionId {
        match self {
            Self::LogS => FunctionId::LogS,
            Self::LogT => FunctionId::LogT,
            Self::LogNorm { .. } => FunctionId::LogNorm,
        }
    }

    pub fn eval(&self, g: &Matrix2) -> f64 {
        let s = g.z1.norm_sqr() + g.z2.norm_sqr();
        let t = g.z3.norm_sqr() + g.z4.norm_sqr();
        match self {
            Self::LogS => s.ln(),
            Self::LogT => t.ln(),
            Self::LogNorm { rho, m } => {
                // st ≥ 1 up to rounding on SL(2,ℂ); clamp rather than fail.
                let h = radial(&InvariantCoords { s, t: t.max(1.0 / s) }).unwrap_or(0.0);
                0.25 * *m as f64 * (t.ln() - s.ln()) + rho.log_eval(h)
            }
        }
    }
}

fn circle_point(f: &InvariantFunction<'_>, g: &GroupElement, v: &Matrix2, w: C64) -> Result<f64> {
    let p = *g * exp_traceless(&v.scale(w))?;
    Ok(f.eval(p.matrix()))
}

/// `(1/K)·Σ_j f(g·exp(r e^{2πij/K} V)) − f(g)`.
pub fn submean_at(
    f: &InvariantFunction<'_>,
    g: &GroupElement,
    v: &Matrix2,
    radius: f64,
    circle_points: usize,
) -> Result<f64> {
    let center = f.eval(g.matrix());
    let mut sum = 0.0;
    for j in 0..circle_points {
        let w = C64::from_polar(radius, 2.0 * PI * j as f64 / circle_points as f64);
        sum += circle_point(f, g, v, w)?;
    }
    Ok(sum / circle_points as f64 - center)
}

/// Circle submean with the number of nodes doubled from `min_points` until two
/// successive means agree to `1e−12` or `max_points` is reached. Badly
/// conditioned `g` put a complex singularity of the pulled-back function close
/// to the circle, where a fixed rule converges slowly.
///
/// Returns the margin and the number of nodes used.
pub fn submean_adaptive(
    f: &InvariantFunction<'_>,
    g: &GroupElement,
    v: &Matrix2,
    radius: f64,
    min_points: usize,
    max_points: usize,
) -> Result<(f64, usize)> {
    let center = f.eval(g.matrix());
    let mut points = min_points;
    let mut sum = 0.0;
    for j in 0..points {
        sum += circle_point(f, g, v, C64::from_polar(radius, 2.0 * PI * j as f64 / points as f64))?;
    }
    let mut mean = sum / points as f64;
    while points < max_points {
        // the refined rule adds the midpoints of the current nodes
        for j in 0..points {
            let phi = PI * (2 * j + 1) as f64 / points as f64;
            sum += circle_point(f, g, v, C64::from_polar(radius, phi))?;
        }
        points *= 2;
        let refined = sum / points as f64;
        let converged = (refined - mean).abs() <= 1e-12;
        mean = refined;
        if converged {
            break;
        }
    }
    Ok((mean - center, points))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeParams {
    pub seed: u64,
    pub samples: usize,
    pub radius: f64,
    /// Minimum number of circle nodes.
    pub circle_points: usize,
    /// Cap for the adaptive refinement.
    pub max_circle_points: usize,
    pub h_max: f64,
    pub x_max: f64,
}

impl Default for ProbeParams {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 2000,
            radius: 0.05,
            circle_points: 64,
            max_circle_points: 1 << 16,
            h_max: 3.0,
            x_max: 2.0,
        }
    }
}

impl ProbeParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 1e-4 && self.radius < 0.5) {
            return Err(Error::InvalidProbe("radius must lie in (1e-4, 0.5)"));
        }
        if self.circle_points < 16 {
            return Err(Error::InvalidProbe("need at least 16 circle points"));
        }
        if self.max_circle_points < self.circle_points {
            return Err(Error::InvalidProbe("max_circle_points below circle_points"));
        }
        if self.samples == 0 {
            return Err(Error::InvalidProbe("need at least one sample"));
        }
        GroupSampler::new(self.seed, self.h_max, self.x_max).map(|_| ())
    }
}

/// One sampled `(g, V)` and its margin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeSite {
    pub index: u64,
    pub g: GroupElement,
    pub direction: AlgebraVector,
    pub margin: f64,
    /// Nodes used on the circle.
    pub circle_points: usize,
}

/// Probe at sample `index`: `g` and `V` come from substream `index`.
pub fn probe_site(f: &InvariantFunction<'_>, params: &ProbeParams, index: u64) -> Result<ProbeSite> {
    let sampler = GroupSampler::new(params.seed, params.h_max, params.x_max)?;
    let mut rng = substream(params.seed, index);
    let g = sampler.draw(&mut rng).g;
    let direction = random_direction(&mut rng);
    let (margin, circle_points) =
        submean_adaptive(f, &g, &direction.to_matrix(), params.radius, params.circle_points, params.max_circle_points)?;
    Ok(ProbeSite { index, g, direction, margin, circle_points })
}

/// Statistics of `margin / r²`, an estimate of the Levi form on `V`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeviSummary {
    pub min: f64,
    pub max: f64,
    pub sum: f64,
    pub count: usize,
}

impl LeviSummary {
    fn empty() -> Self {
        Self { min: f64::INFINITY, max: f64::NEG_INFINITY, sum: 0.0, count: 0 }
    }

    pub fn mean(&self) -> f64 {
        self.sum / self.count as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubmeanReport {
    pub function: FunctionId,
    pub samples: usize,
    pub radius: f64,
    pub worst_margin: f64,
    pub worst_site: Option<ProbeSite>,
    pub levi: LeviSummary,
}

impl SubmeanReport {
    pub fn empty(function: FunctionId, radius: f64) -> Self {
        Self { function, samples: 0, radius, worst_margin: f64::INFINITY, worst_site: None, levi: LeviSummary::empty() }
    }

    pub fn push(&mut self, site: ProbeSite) {
        let levi = site.margin / (self.radius * self.radius);
        self.samples += 1;
        self.levi.min = self.levi.min.min(levi);
        self.levi.max = self.levi.max.max(levi);
        self.levi.sum += levi;
        self.levi.count += 1;
        if self.is_worse(&site) {
            self.worst_margin = site.margin;
            self.worst_site = Some(site);
        }
    }

    fn is_worse(&self, site: &ProbeSite) -> bool {
        match &self.worst_site {
            None => true,
            Some(w) => site.margin < w.margin || (site.margin == w.margin && site.index < w.index),
        }
    }

    /// Combines two partial reports; the worst site does not depend on order.
    pub fn merge(mut self, other: Self) -> Self {
        self.samples += other.samples;
        self.levi.min = self.levi.min.min(other.levi.min);
        self.levi.max = self.levi.max.max(other.levi.max);
        self.levi.sum += other.levi.sum;
        self.levi.count += other.levi.count;
        if let Some(site) = other.worst_site {
            if self.is_worse(&site) {
                self.worst_margin = site.margin;
                self.worst_site = Some(site);
            }
        }
        self
    }
}

/// Sequential probe over sample indices `0..samples`.
pub fn submean_probe(f: &InvariantFunction<'_>, params: &ProbeParams) -> Result<SubmeanReport> {
    params.validate()?;
    let mut report = SubmeanReport::empty(f.id(), params.radius);
    for index in 0..params.samples as u64 {
        report.push(probe_site(f, params, index)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn upper() -> Matrix2 {
        Matrix2::from_rows(C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0))
    }

    #[test]
    fn levi_of_log_t_in_upper_direction() {
        // pullback w ↦ log(1 + |w|²), whose ∂∂̄ at 0 equals 1.
        let r = 1e-2;
        let margin = submean_at(&InvariantFunction::LogT, &GroupElement::identity(), &upper(), r, 64).unwrap();
        let exact = (1.0 + r * r).ln();
        assert!((margin - exact).abs() < 1e-15);
        assert!((margin / (r * r) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn log_t_is_constant_in_lower_direction() {
        let lower = upper().transpose();
        let m = submean_at(&InvariantFunction::LogT, &GroupElement::identity(), &lower, 0.1, 32).unwrap();
        assert_eq!(m, 0.0);
    }

    #[test]
    fn log_s_probe_has_no_violation() {
        let params = ProbeParams { samples: 300, ..ProbeParams::default() };
        let r = submean_probe(&InvariantFunction::LogS, &params).unwrap();
        assert_eq!(r.samples, 300);
        assert!(r.worst_margin >= -1e-7, "worst {}", r.worst_margin);
    }

    #[test]
    fn split_and_merge_matches_sequential() {
        let params = ProbeParams { samples: 40, ..ProbeParams::default() };
        let f = InvariantFunction::LogT;
        let seq = submean_probe(&f, &params).unwrap();
        let mut a = SubmeanReport::empty(f.id(), params.radius);
        let mut b = SubmeanReport::empty(f.id(), params.radius);
        for i in (0..40u64).rev() {
            let site = probe_site(&f, &params, i).unwrap();
            if i % 2 == 0 {
                a.push(site)
            } else {
                b.push(site)
            }
        }
        let merged = b.merge(a);
        assert_eq!(merged.worst_site, seq.worst_site);
        assert_eq!(merged.samples, seq.samples);
        assert_eq!(merged.levi.min, seq.levi.min);
    }

    #[test]
    fn invalid_params_and_ids() {
        let f = InvariantFunction::LogS;
        let bad = |p: ProbeParams| submean_probe(&f, &p).is_err();
        assert!(bad(ProbeParams { radius: 0.5, ..ProbeParams::default() }));
        assert!(bad(ProbeParams { radius: 1e-5, ..ProbeParams::default() }));
        assert!(bad(ProbeParams { circle_points: 8, ..ProbeParams::default() }));
        assert!(bad(ProbeParams { h_max: 0.0, ..ProbeParams::default() }));
        assert_eq!(FunctionId::parse("log_q"), Err(Error::UnknownFunction));
        assert_eq!(FunctionId::parse("log_norm"), Ok(FunctionId::LogNorm));
    }
}
