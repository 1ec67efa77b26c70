//! Seeded group sampling.
//!
//! Every draw is addressed by `(seed, index)`: index `i` reads from ChaCha
//! stream `i`, so parallel loops give the same samples in any order.

use core::f64::consts::{FRAC_PI_2, PI};

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::algebra::{exp_radial, AlgebraVector, GroupElement, Matrix2, C64};
use crate::error::{Error, Result};

/// Independent generator for one sample index.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

/// Haar-uniform `SU(2)` element from a normalized 4-Gaussian quaternion.
pub fn haar_su2<R: Rng + ?Sized>(rng: &mut R) -> GroupElement {
    loop {
        let q = [gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng)];
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n < 1e-12 {
            continue;
        }
        let a = C64::new(q[0] / n, q[3] / n);
        let b = C64::new(q[2] / n, q[1] / n);
        return GroupElement::from_matrix_unchecked(Matrix2::from_rows(a, b, -b.conj(), a.conj()));
    }
}

/// Random direction in `sl(2,ℂ) = span_ℂ{C, H, W}` with unit Frobenius norm.
pub fn random_direction<R: Rng + ?Sized>(rng: &mut R) -> AlgebraVector {
    loop {
        let mut coeff = || C64::new(gaussian(rng), gaussian(rng));
        let v = AlgebraVector::new(coeff(), coeff(), coeff());
        let n = v.frobenius_norm();
        if n < 1e-12 {
            continue;
        }
        let k = C64::new(1.0 / n, 0.0);
        return AlgebraVector::new(v.c * k, v.h * k, v.w * k);
    }
}

/// A sample together with the factors it was built from.
#[derive(Debug, Clone, Copy)]
pub struct GroupSample {
    pub g: GroupElement,
    pub u: GroupElement,
    pub h: f64,
    pub zeta: C64,
}

/// Draws `g = u·exp(ihH)·diag(ζ⁻¹, ζ)` with `u` Haar on `SU(2)`,
/// `h ~ U[0, h_max]`, `ζ = e^{x+iy}`, `x ~ U[−x_max, x_max]`, `y ~ U(−π/2, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupSampler {
    seed: u64,
    h_max: f64,
    x_max: f64,
}

impl GroupSampler {
    pub fn new(seed: u64, h_max: f64, x_max: f64) -> Result<Self> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !ok(h_max) || !ok(x_max) {
            return Err(Error::InvalidBounds);
        }
        Ok(Self { seed, h_max, x_max })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Sample with index `index`.
    pub fn sample(&self, index: u64) -> GroupSample {
        self.draw(&mut substream(self.seed, index))
    }

    /// Draws one sample from an arbitrary generator.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupSample {
        let u = haar_su2(rng);
        let h = self.h_max * rng.random::<f64>();
        let x = self.x_max * (2.0 * rng.random::<f64>() - 1.0);
        // PI * [0, 1) maps to (−π/2, π/2].
        let y = FRAC_PI_2 - PI * rng.random::<f64>();
        let zeta = C64::new(x, y).exp();
        let g = u * exp_radial(h) * GroupElement::diag(zeta.inv());
        GroupSample { g, u, h, zeta }
    }
}

/// First sample of the stream `seed`.
pub fn sample_group(seed: u64, h_max: f64, x_max: f64) -> Result<GroupElement> {
    Ok(GroupSampler::new(seed, h_max, x_max)?.sample(0).g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_special_unitary;

    #[test]
    fn deterministic_per_seed() {
        let a = sample_group(42, 3.0, 2.0).unwrap();
        let b = sample_group(42, 3.0, 2.0).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, sample_group(43, 3.0, 2.0).unwrap());
    }

    #[test]
    fn substreams_are_order_independent() {
        let s = GroupSampler::new(9, 3.0, 2.0).unwrap();
        let forward: alloc::vec::Vec<_> = (0..5).map(|i| s.sample(i).g).collect();
        let backward: alloc::vec::Vec<_> = (0..5).rev().map(|i| s.sample(i).g).collect();
        for (i, g) in forward.iter().enumerate() {
            assert_eq!(*g, backward[4 - i]);
        }
    }

    #[test]
    fn rejects_bad_bounds() {
        assert_eq!(GroupSampler::new(0, 0.0, 1.0), Err(Error::InvalidBounds));
        assert_eq!(GroupSampler::new(0, 1.0, -1.0), Err(Error::InvalidBounds));
        assert!(GroupSampler::new(0, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn samples_are_unimodular_and_factors_in_range() {
        let s = GroupSampler::new(1, 3.0, 2.0).unwrap();
        for i in 0..10_000 {
            let d = s.sample(i);
            assert!(d.g.det_residual() <= 1e-12);
            assert!(is_special_unitary(&d.u, 1e-12));
            assert!((0.0..=3.0).contains(&d.h));
            let y = d.zeta.arg();
            assert!(y > -FRAC_PI_2 - 1e-12 && y <= FRAC_PI_2 + 1e-12);
        }
    }

    #[test]
    fn haar_mean_is_near_zero() {
        let mut sum = Matrix2::zero();
        let n = 100_000u64;
        for i in 0..n {
            sum = sum + *haar_su2(&mut substream(5, i)).matrix();
        }
        let mean = sum.scale(C64::new(1.0 / n as f64, 0.0));
        assert!(mean.frobenius_norm() <= 0.02, "mean norm {}", mean.frobenius_norm());
    }

    #[test]
    fn random_direction_is_unit_and_traceless() {
        for i in 0..100 {
            let v = random_direction(&mut substream(3, i)).to_matrix();
            assert!((v.frobenius_norm() - 1.0).abs() < 1e-14);
            assert!(v.trace().norm() < 1e-15);
        }
    }
}
