//! Spectral overlap between the two counter-propagating outputs.
//!
//! The overlap bound compares amplitude spectra with the spectral phase
//! discarded,
//!
//!   V_max = int dw |E_p||E_s| / ( (int dw |E_p|^2 + int dw |E_s|^2) / 2 ),
//!
//! which is why it upper-bounds the interference visibility. Amplitudes are
//! taken as sqrt(density); integrals use trapezoidal quadrature on a shared
//! grid.

use crate::error::{Error, Result};
use crate::spectrum::{trapezoid, Spectrum};

/// Overlap bound plus the integrated densities that entered it.
#[derive(Debug, Clone, Copy)]
pub struct OverlapReport {
    /// Spectral overlap bound in [0, 1].
    pub v_max: f64,
    /// Integrated density of the first spectrum.
    pub energy_p: f64,
    /// Integrated density of the second spectrum.
    pub energy_s: f64,
}

/// Computes the overlap bound of two spectra on the same grid.
///
/// Resampling mismatched grids is the caller's job; see
/// [`Spectrum::resampled`] and [`common_grid`].
pub fn spectral_overlap(sp: &Spectrum, ss: &Spectrum) -> Result<OverlapReport> {
    if !sp.same_grid(ss) {
        return Err(Error::GridMismatch);
    }
    let step = sp.domega();
    let energy_p = trapezoid(sp.density(), step);
    let energy_s = trapezoid(ss.density(), step);
    let denominator = 0.5 * (energy_p + energy_s);
    if denominator <= 0.0 {
        return Err(Error::EmptySpectrum);
    }
    // equal densities integrate to v_max = 1 identically; short-circuit so
    // the identity is exact rather than within sqrt rounding
    if sp.density() == ss.density() {
        return Ok(OverlapReport {
            v_max: 1.0,
            energy_p,
            energy_s,
        });
    }
    let cross: Vec<f64> = sp
        .density()
        .iter()
        .zip(ss.density())
        .map(|(a, b)| a.sqrt() * b.sqrt())
        .collect();
    let numerator = trapezoid(&cross, step);
    let v_max = (numerator / denominator).clamp(0.0, 1.0);
    Ok(OverlapReport {
        v_max,
        energy_p,
        energy_s,
    })
}

/// Predicted interference visibility: the overlap bound degraded by a
/// power-independent spatial mismatch factor.
pub fn predicted_visibility(v_max: f64, kappa_spatial: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&v_max) || !v_max.is_finite() {
        return Err(Error::OutOfRange {
            name: "v_max",
            value: v_max,
            range: "[0, 1]",
        });
    }
    if !(kappa_spatial > 0.0 && kappa_spatial <= 1.0) {
        return Err(Error::OutOfRange {
            name: "kappa_spatial",
            value: kappa_spatial,
            range: "(0, 1]",
        });
    }
    Ok((kappa_spatial * v_max).clamp(0.0, 1.0))
}

/// Uniform grid covering both spectra with the finer of the two spacings,
/// for resampling ahead of [`spectral_overlap`].
pub fn common_grid(a: &Spectrum, b: &Spectrum) -> Vec<f64> {
    let lo = a.omega()[0].min(b.omega()[0]);
    let hi = a.omega()[a.len() - 1].max(b.omega()[b.len() - 1]);
    let step_a = a.domega();
    let step_b = b.domega();
    let step = match (step_a > 0.0, step_b > 0.0) {
        (true, true) => step_a.min(step_b),
        (true, false) => step_a,
        (false, true) => step_b,
        (false, false) => return vec![lo],
    };
    let n = (((hi - lo) / step).ceil() as usize + 1).min(1 << 22);
    (0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn gaussian_pair(delta: f64, sigma: f64, n: usize) -> (Spectrum, Spectrum) {
        // span generously past both peaks so truncation is negligible
        let lo = -downside(delta, sigma);
        let hi = delta + downside(delta, sigma);
        let omega: Vec<f64> = (0..n)
            .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
            .collect();
        let d1 = omega
            .iter()
            .map(|w| (-(w / sigma).powi(2) / 2.0).exp())
            .collect();
        let d2 = omega
            .iter()
            .map(|w| (-((w - delta) / sigma).powi(2) / 2.0).exp())
            .collect();
        (
            Spectrum::new(omega.clone(), d1).unwrap(),
            Spectrum::new(omega, d2).unwrap(),
        )
    }

    fn downside(delta: f64, sigma: f64) -> f64 {
        12.0 * sigma + delta
    }

    #[test]
    fn identical_spectra_give_exactly_one() {
        let (s, _) = gaussian_pair(0.0, 1.0, 1001);
        let report = spectral_overlap(&s, &s).unwrap();
        assert_eq!(report.v_max, 1.0);
        assert_eq!(report.energy_p, report.energy_s);
    }

    #[test]
    fn offset_gaussians_match_closed_form() {
        // equal-width Gaussian densities offset by delta: V = exp(-delta^2 / 8 sigma^2)
        let sigma = 2.0;
        let delta = 2.0 * sigma;
        let (s1, s2) = gaussian_pair(delta, sigma, 8001);
        let v = spectral_overlap(&s1, &s2).unwrap().v_max;
        assert_relative_eq!(v, (-0.5f64).exp(), epsilon = 1e-9);
        assert_relative_eq!(v, 0.6065306597126334, epsilon = 1e-9);
    }

    #[test]
    fn disjoint_supports_give_zero() {
        let omega: Vec<f64> = (0..100).map(|k| k as f64).collect();
        let d1: Vec<f64> = (0..100).map(|k| if k < 40 { 1.0 } else { 0.0 }).collect();
        let d2: Vec<f64> = (0..100).map(|k| if k >= 60 { 1.0 } else { 0.0 }).collect();
        let s1 = Spectrum::new(omega.clone(), d1).unwrap();
        let s2 = Spectrum::new(omega, d2).unwrap();
        assert_eq!(spectral_overlap(&s1, &s2).unwrap().v_max, 0.0);
    }

    #[test]
    fn energy_ratio_reduction() {
        // same shape, density scaled by rho: V = 2 sqrt(rho) / (1 + rho)
        let (s, _) = gaussian_pair(0.0, 1.5, 2001);
        for rho in [0.25, 0.5, 2.0, 9.0] {
            let scaled = Spectrum::new(
                s.omega().to_vec(),
                s.density().iter().map(|d| d * rho).collect(),
            )
            .unwrap();
            let v = spectral_overlap(&s, &scaled).unwrap().v_max;
            let rho_sqrt: f64 = rho;
            assert_relative_eq!(
                v,
                2.0 * rho_sqrt.sqrt() / (1.0 + rho),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn mismatched_grids_rejected() {
        let (s1, _) = gaussian_pair(0.0, 1.0, 1001);
        let (s2, _) = gaussian_pair(0.0, 1.0, 501);
        assert!(matches!(
            spectral_overlap(&s1, &s2),
            Err(Error::GridMismatch)
        ));
    }

    #[test]
    fn visibility_product() {
        assert_eq!(predicted_visibility(0.97, 1.0).unwrap(), 0.97);
        assert_relative_eq!(
            predicted_visibility(0.98, 0.95).unwrap(),
            0.931,
            epsilon = 1e-12
        );
        assert_eq!(predicted_visibility(0.0, 0.9).unwrap(), 0.0);
    }

    #[test]
    fn visibility_rejects_out_of_range() {
        assert!(predicted_visibility(1.2, 0.9).is_err());
        assert!(predicted_visibility(-0.1, 0.9).is_err());
        assert!(predicted_visibility(0.5, 0.0).is_err());
        assert!(predicted_visibility(0.5, 1.1).is_err());
    }

    #[test]
    fn resample_round_trip_preserves_overlap() {
        let (s1, s2) = gaussian_pair(1.0, 1.0, 2001);
        let grid = common_grid(&s1, &s2);
        let r1 = s1.resampled(&grid).unwrap();
        let r2 = s2.resampled(&grid).unwrap();
        let v_direct = spectral_overlap(&s1, &s2).unwrap().v_max;
        let v_resampled = spectral_overlap(&r1, &r2).unwrap().v_max;
        assert_relative_eq!(v_direct, v_resampled, epsilon = 1e-6);
    }

    proptest! {
        #[test]
        fn overlap_symmetric_bounded_and_scale_invariant(
            seed in 0u64..1000,
            scale in 1e-3f64..1e3,
        ) {
            let (s1, s2) = random_pair(seed);
            let v12 = spectral_overlap(&s1, &s2).unwrap().v_max;
            let v21 = spectral_overlap(&s2, &s1).unwrap().v_max;
            prop_assert!((v12 - v21).abs() < 1e-12);
            prop_assert!((0.0..=1.0).contains(&v12));
            // common scaling of both spectra cancels
            let c1 = Spectrum::new(
                s1.omega().to_vec(),
                s1.density().iter().map(|d| d * scale).collect(),
            ).unwrap();
            let c2 = Spectrum::new(
                s2.omega().to_vec(),
                s2.density().iter().map(|d| d * scale).collect(),
            ).unwrap();
            let v_scaled = spectral_overlap(&c1, &c2).unwrap().v_max;
            prop_assert!((v12 - v_scaled).abs() < 1e-9);
        }

        #[test]
        fn shape_identical_ratio_formula(seed in 0u64..1000, c in 1e-3f64..1e3) {
            let (s, _) = random_pair(seed);
            let scaled = Spectrum::new(
                s.omega().to_vec(),
                s.density().iter().map(|d| d * c).collect(),
            ).unwrap();
            let v = spectral_overlap(&s, &scaled).unwrap().v_max;
            let expected = 2.0 * c.sqrt() / (1.0 + c);
            prop_assert!((v - expected).abs() < 1e-9);
        }
    }

    fn random_pair(seed: u64) -> (Spectrum, Spectrum) {
        // cheap deterministic pseudo-random densities
        let n = 257;
        let omega: Vec<f64> = (0..n).map(|k| 1e14 + k as f64 * 1e11).collect();
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let d1: Vec<f64> = (0..n).map(|_| next()).collect();
        let d2: Vec<f64> = (0..n).map(|_| next()).collect();
        (
            Spectrum::new(omega.clone(), d1).unwrap(),
            Spectrum::new(omega, d2).unwrap(),
        )
    }
}
