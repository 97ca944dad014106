//! Linearized Gaussian model of Kerr squeezing and the dark-mode detection
//! chain.
//!
//! Covariances are expressed in shot-noise units (vacuum = identity) for the
//! (amplitude, phase) quadrature pair of the dark polarization mode. The
//! Kerr interaction is the shear X -> X, Y -> Y + 2rX with r the nonlinear
//! phase accumulated over the fiber, so a single pass maps vacuum to
//!
//!   C(r) = [[1, 2r], [2r, 1 + 4r^2]],    det C = 1.
//!
//! Excess phase noise (GAWBS, Raman) enters additively on the phase
//! quadrature, losses as beam-splitter admixture of vacuum, and the Sagnac
//! recombination as the average of the two arm covariances.

use crate::error::{Error, Result};
use crate::pulse::{FiberParams, PulseEnvelope};

/// 2x2 shot-noise-normalized covariance of the dark-plane quadratures.
///
/// Stored as the three independent entries of a symmetric matrix, so the
/// symmetry invariant holds by construction. Constructors reject matrices
/// that are not positive definite or that beat the Heisenberg bound
/// det C >= 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadCovariance {
    xx: f64,
    xy: f64,
    yy: f64,
}

/// Slack allowed below det = 1 for rounding.
const DET_TOLERANCE: f64 = 1e-9;

impl QuadCovariance {
    pub fn new(xx: f64, xy: f64, yy: f64) -> Result<Self> {
        let c = Self { xx, xy, yy };
        if !(xx > 0.0 && yy > 0.0) || !c.det().is_finite() {
            return Err(Error::BadCovariance(format!(
                "not positive definite: diag ({xx:.6e}, {yy:.6e})"
            )));
        }
        if c.det() <= 0.0 {
            return Err(Error::BadCovariance(format!(
                "not positive definite: det = {:.6e}",
                c.det()
            )));
        }
        if c.det() < 1.0 - DET_TOLERANCE {
            return Err(Error::BadCovariance(format!(
                "violates the Heisenberg bound: det = {:.12}",
                c.det()
            )));
        }
        Ok(c)
    }

    pub fn identity() -> Self {
        Self {
            xx: 1.0,
            xy: 0.0,
            yy: 1.0,
        }
    }

    pub fn xx(&self) -> f64 {
        self.xx
    }

    pub fn xy(&self) -> f64 {
        self.xy
    }

    pub fn yy(&self) -> f64 {
        self.yy
    }

    pub fn det(&self) -> f64 {
        self.xx * self.yy - self.xy * self.xy
    }

    pub fn trace(&self) -> f64 {
        self.xx + self.yy
    }

    /// Matrix form [[xx, xy], [xy, yy]].
    pub fn as_matrix(&self) -> [[f64; 2]; 2] {
        [[self.xx, self.xy], [self.xy, self.yy]]
    }

    /// Eigenvalues (min, max) of the symmetric matrix, in closed form.
    pub fn eigenvalues(&self) -> (f64, f64) {
        if self.xy == 0.0 {
            return (self.xx.min(self.yy), self.xx.max(self.yy));
        }
        let mean = 0.5 * (self.xx + self.yy);
        let disc = (0.25 * (self.xx - self.yy).powi(2) + self.xy * self.xy).sqrt();
        (mean - disc, mean + disc)
    }

    /// Variance of the quadrature at angle `theta`:
    /// u^T C u with u = (cos theta, sin theta).
    pub fn projected(&self, theta: f64) -> f64 {
        let (c, s) = (theta.cos(), theta.sin());
        c * c * self.xx + 2.0 * c * s * self.xy + s * s * self.yy
    }
}

/// Detection efficiency bookkeeping: eta_total = eta_prop * eta_det * eta_vis
/// with eta_vis = visibility^2.
#[derive(Debug, Clone, Copy)]
pub struct EfficiencyChain {
    pub eta_prop: f64,
    pub eta_det: f64,
    pub eta_vis: f64,
}

impl EfficiencyChain {
    /// Builds the chain from the interference visibility (squared internally).
    pub fn from_visibility(eta_prop: f64, eta_det: f64, visibility: f64) -> Result<Self> {
        for (name, value) in [
            ("eta_prop", eta_prop),
            ("eta_det", eta_det),
            ("visibility", visibility),
        ] {
            if !(value > 0.0 && value <= 1.0) {
                return Err(Error::OutOfRange {
                    name,
                    value,
                    range: "(0, 1]",
                });
            }
        }
        Ok(Self {
            eta_prop,
            eta_det,
            eta_vis: visibility * visibility,
        })
    }

    pub fn eta_total(&self) -> f64 {
        self.eta_prop * self.eta_det * self.eta_vis
    }
}

/// Extremal dark-plane variances with their angle and the state purity.
#[derive(Debug, Clone, Copy)]
pub struct SqueezingResult {
    /// Smaller eigenvalue of the covariance (shot-noise units).
    pub v_sqz: f64,
    /// Larger eigenvalue.
    pub v_antisqz: f64,
    /// 10 log10 of the variances.
    pub sqz_db: f64,
    pub antisqz_db: f64,
    /// Quadrature angle of the squeezed direction, in [0, pi);
    /// 0 for an isotropic covariance.
    pub theta_min: f64,
    /// (v_sqz * v_antisqz)^(-1/2); 1 for a pure Gaussian state.
    pub purity: f64,
}

/// Nonlinear phase r = gamma * P0 * L_eff from the peak power of the input
/// pulse and the loss-corrected effective length.
pub fn nonlinear_phase(pulse: &PulseEnvelope, fiber: &FiberParams) -> f64 {
    fiber.gamma * pulse.peak_power() * fiber.effective_length()
}

/// Covariance of vacuum sheared by the Kerr interaction with nonlinear
/// phase `r`.
pub fn kerr_covariance(r: f64) -> Result<QuadCovariance> {
    if r < 0.0 || !r.is_finite() {
        return Err(Error::OutOfRange {
            name: "r",
            value: r,
            range: "[0, inf)",
        });
    }
    QuadCovariance::new(1.0, 2.0 * r, 1.0 + 4.0 * r * r)
}

/// Adds uncorrelated excess noise `n_ex` to the phase quadrature.
pub fn add_phase_noise(c: &QuadCovariance, n_ex: f64) -> Result<QuadCovariance> {
    if n_ex < 0.0 || !n_ex.is_finite() {
        return Err(Error::OutOfRange {
            name: "n_ex",
            value: n_ex,
            range: "[0, inf)",
        });
    }
    QuadCovariance::new(c.xx(), c.xy(), c.yy() + n_ex)
}

/// Dark-mode covariance after Sagnac recombination of two independent arms,
/// delta_dark = (delta_a - e^{i phi} delta_b) / sqrt(2):
/// C = (C_a + R(phi) C_b R(phi)^T) / 2.
pub fn combine_sagnac(
    ca: &QuadCovariance,
    cb: &QuadCovariance,
    phi_rel: f64,
) -> Result<QuadCovariance> {
    let (cos, sin) = (phi_rel.cos(), phi_rel.sin());
    // R C R^T for R = [[cos, -sin], [sin, cos]]
    let b = cb.as_matrix();
    let rxx = cos * cos * b[0][0] - 2.0 * cos * sin * b[0][1] + sin * sin * b[1][1];
    let rxy = cos * sin * (b[0][0] - b[1][1]) + (cos * cos - sin * sin) * b[0][1];
    let ryy = sin * sin * b[0][0] + 2.0 * cos * sin * b[0][1] + cos * cos * b[1][1];
    QuadCovariance::new(
        0.5 * (ca.xx() + rxx),
        0.5 * (ca.xy() + rxy),
        0.5 * (ca.yy() + ryy),
    )
}

/// Beam-splitter loss channel: C -> eta C + (1 - eta) I.
pub fn apply_loss(c: &QuadCovariance, eta: f64) -> Result<QuadCovariance> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::OutOfRange {
            name: "eta",
            value: eta,
            range: "(0, 1]",
        });
    }
    QuadCovariance::new(
        eta * c.xx() + (1.0 - eta),
        eta * c.xy(),
        eta * c.yy() + (1.0 - eta),
    )
}

/// Extremal variances, squeezed-quadrature angle, and purity of a dark-plane
/// covariance.
pub fn extremal_variances(c: &QuadCovariance) -> SqueezingResult {
    let (v_sqz, v_antisqz) = c.eigenvalues();
    let theta_min = if c.xy() == 0.0 && c.xx() == c.yy() {
        0.0
    } else {
        // variance along theta is mean + disc * cos(2 theta - phi0)
        let phi0 = (2.0 * c.xy()).atan2(c.xx() - c.yy());
        let theta = 0.5 * (phi0 + std::f64::consts::PI);
        theta.rem_euclid(std::f64::consts::PI)
    };
    SqueezingResult {
        v_sqz,
        v_antisqz,
        sqz_db: 10.0 * v_sqz.log10(),
        antisqz_db: 10.0 * v_antisqz.log10(),
        theta_min,
        purity: 1.0 / (v_sqz * v_antisqz).sqrt(),
    }
}

/// Inverts the loss channel on a single variance:
/// v_inf = 1 + (v_meas - 1) / eta.
pub fn infer_lossless(v_meas: f64, eta: f64) -> Result<f64> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::OutOfRange {
            name: "eta",
            value: eta,
            range: "(0, 1]",
        });
    }
    let floor = 1.0 - eta;
    if v_meas <= floor {
        return Err(Error::UnphysicalVariance { v_meas, floor });
    }
    Ok(1.0 + (v_meas - 1.0) / eta)
}

/// Phenomenological excess phase noise from guided acoustic-wave Brillouin
/// scattering: n_ex = kappa_g * pulse_energy * L, linear in both the pulse
/// energy and the fiber length.
pub fn gawbs_noise(pulse_energy: f64, fiber: &FiberParams, kappa_g: f64) -> Result<f64> {
    if pulse_energy < 0.0 {
        return Err(Error::OutOfRange {
            name: "pulse_energy",
            value: pulse_energy,
            range: "[0, inf)",
        });
    }
    if kappa_g < 0.0 {
        return Err(Error::OutOfRange {
            name: "kappa_g",
            value: kappa_g,
            range: "[0, inf)",
        });
    }
    Ok(kappa_g * pulse_energy * fiber.length)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::TimeGrid;
    use crate::pulse::make_sech_pulse;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn kerr_at_zero_is_vacuum() {
        let c = kerr_covariance(0.0).unwrap();
        assert_eq!(c, QuadCovariance::identity());
    }

    #[test]
    fn kerr_unit_r_eigenvalues() {
        let c = kerr_covariance(1.0).unwrap();
        let (lo, hi) = c.eigenvalues();
        // 3 -/+ 2 sqrt(2)
        assert_relative_eq!(lo, 3.0 - 2.0 * std::f64::consts::SQRT_2, epsilon = 1e-12);
        assert_relative_eq!(hi, 3.0 + 2.0 * std::f64::consts::SQRT_2, epsilon = 1e-12);
        let res = extremal_variances(&c);
        assert_relative_eq!(res.sqz_db, -7.6555, epsilon = 1e-3);
        assert_relative_eq!(res.antisqz_db, 7.6555, epsilon = 1e-3);
        assert_relative_eq!(res.purity, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn kerr_is_unimodular() {
        let mut r = 0.0;
        while r <= 20.0 {
            let c = kerr_covariance(r).unwrap();
            assert!((c.det() - 1.0).abs() < 1e-10, "det drift at r = {r}");
            r += 0.1;
        }
    }

    #[test]
    fn kerr_closed_form_variances() {
        // v = 1 + 2r^2 -/+ 2r sqrt(1 + r^2)
        for r in [0.1, 0.5, 1.0, 2.5, 7.0, 19.9] {
            let (lo, hi) = kerr_covariance(r).unwrap().eigenvalues();
            let root = 2.0 * r * (1.0 + r * r).sqrt();
            assert_relative_eq!(lo, 1.0 + 2.0 * r * r - root, max_relative = 1e-9);
            assert_relative_eq!(hi, 1.0 + 2.0 * r * r + root, max_relative = 1e-9);
        }
    }

    #[test]
    fn kerr_rejects_negative_r() {
        assert!(kerr_covariance(-0.1).is_err());
    }

    #[test]
    fn kerr_variances_monotone_in_r() {
        let mut prev = extremal_variances(&kerr_covariance(0.0).unwrap());
        for k in 1..=100 {
            let r = k as f64 * 0.2;
            let cur = extremal_variances(&kerr_covariance(r).unwrap());
            assert!(cur.v_sqz < prev.v_sqz);
            assert!(cur.v_antisqz > prev.v_antisqz);
            prev = cur;
        }
    }

    #[test]
    fn phase_noise_examples() {
        let c = QuadCovariance::identity();
        assert_eq!(add_phase_noise(&c, 0.0).unwrap(), c);
        let noisy = add_phase_noise(&c, 3.0).unwrap();
        let (lo, hi) = noisy.eigenvalues();
        assert_eq!((lo, hi), (1.0, 4.0));
        assert_relative_eq!(extremal_variances(&noisy).purity, 0.5, epsilon = 1e-12);
        assert!(noisy.det() > c.det());
        assert!(add_phase_noise(&c, -0.5).is_err());
    }

    #[test]
    fn phase_noise_never_decreases_extremal_variances() {
        for k in 0..200 {
            let r = (k % 20) as f64 * 0.3;
            let n = (k / 20) as f64 * 0.7;
            let c = kerr_covariance(r).unwrap();
            let before = extremal_variances(&c);
            let after = extremal_variances(&add_phase_noise(&c, n).unwrap());
            assert!(after.v_antisqz >= before.v_antisqz - 1e-12);
            assert!(after.v_sqz >= before.v_sqz - 1e-12);
        }
    }

    #[test]
    fn sagnac_equal_arms_is_identity_map() {
        let c = kerr_covariance(1.3).unwrap();
        let combined = combine_sagnac(&c, &c, 0.0).unwrap();
        assert_relative_eq!(combined.xx(), c.xx(), epsilon = 1e-15);
        assert_relative_eq!(combined.xy(), c.xy(), epsilon = 1e-15);
        assert_relative_eq!(combined.yy(), c.yy(), epsilon = 1e-15);
    }

    #[test]
    fn sagnac_vacuum_is_rotation_invariant() {
        let id = QuadCovariance::identity();
        for phi in [0.0, 0.3, 1.0, 2.2, std::f64::consts::PI] {
            let c = combine_sagnac(&id, &id, phi).unwrap();
            assert_relative_eq!(c.xx(), 1.0, epsilon = 1e-12);
            assert_relative_eq!(c.yy(), 1.0, epsilon = 1e-12);
            assert!(c.xy().abs() < 1e-12);
        }
    }

    #[test]
    fn sagnac_averages_diagonals() {
        let ca = QuadCovariance::new(0.5, 0.0, 2.0).unwrap();
        let cb = QuadCovariance::new(2.0, 0.0, 0.5).unwrap();
        let c = combine_sagnac(&ca, &cb, 0.0).unwrap();
        assert_relative_eq!(c.xx(), 1.25, epsilon = 1e-15);
        assert_relative_eq!(c.yy(), 1.25, epsilon = 1e-15);
        assert_eq!(c.xy(), 0.0);
    }

    #[test]
    fn loss_examples() {
        let c = QuadCovariance::new(0.5, 0.0, 2.0).unwrap();
        let same = apply_loss(&c, 1.0).unwrap();
        assert_eq!(same, c);
        let half = apply_loss(&c, 0.5).unwrap();
        assert_relative_eq!(half.xx(), 0.75, epsilon = 1e-15);
        // eta -> 0 approaches vacuum
        let tiny = apply_loss(&c, 1e-12).unwrap();
        assert_relative_eq!(tiny.xx(), 1.0, epsilon = 1e-9);
        assert_relative_eq!(tiny.yy(), 1.0, epsilon = 1e-9);
        assert!(apply_loss(&c, 0.0).is_err());
        assert!(apply_loss(&c, 1.5).is_err());
    }

    #[test]
    fn sequential_losses_compose_multiplicatively() {
        let c = kerr_covariance(2.0).unwrap();
        let a = apply_loss(&apply_loss(&c, 0.9).unwrap(), 0.8).unwrap();
        let b = apply_loss(&c, 0.72).unwrap();
        assert_relative_eq!(a.xx(), b.xx(), epsilon = 1e-12);
        assert_relative_eq!(a.xy(), b.xy(), epsilon = 1e-12);
        assert_relative_eq!(a.yy(), b.yy(), epsilon = 1e-12);
    }

    #[test]
    fn extremal_variances_identity() {
        let res = extremal_variances(&QuadCovariance::identity());
        assert_eq!(res.sqz_db, 0.0);
        assert_eq!(res.antisqz_db, 0.0);
        assert_eq!(res.purity, 1.0);
        assert_eq!(res.theta_min, 0.0);
    }

    #[test]
    fn purity_of_paper_variances() {
        // -3.9 dB / 16.2 dB
        let v_sqz = 10f64.powf(-0.39);
        let v_antisqz = 10f64.powf(1.62);
        let c = QuadCovariance::new(v_sqz, 0.0, v_antisqz).unwrap();
        let res = extremal_variances(&c);
        assert_relative_eq!(res.purity, 0.2427, epsilon = 1e-3);
        assert_relative_eq!(res.v_sqz, v_sqz, max_relative = 1e-12);
        assert!(res.v_sqz <= res.v_antisqz);
    }

    #[test]
    fn theta_min_points_at_squeezed_direction() {
        let c = QuadCovariance::new(0.5, 0.0, 2.0).unwrap();
        let res = extremal_variances(&c);
        assert_relative_eq!(res.theta_min, 0.0, epsilon = 1e-12);
        let c = QuadCovariance::new(2.0, 0.0, 0.5).unwrap();
        let res = extremal_variances(&c);
        assert_relative_eq!(res.theta_min, std::f64::consts::FRAC_PI_2, epsilon = 1e-12);
        // projection at theta_min equals the minimum eigenvalue
        let c = kerr_covariance(0.7).unwrap();
        let res = extremal_variances(&c);
        assert_relative_eq!(c.projected(res.theta_min), res.v_sqz, epsilon = 1e-12);
        assert!(res.theta_min >= 0.0 && res.theta_min < std::f64::consts::PI);
    }

    #[test]
    fn infer_examples() {
        assert_eq!(infer_lossless(0.4, 1.0).unwrap(), 0.4);
        let v = infer_lossless(10f64.powf(-0.39), 0.6855).unwrap();
        assert_relative_eq!(10.0 * v.log10(), -8.7, epsilon = 0.1);
        assert!(matches!(
            infer_lossless(0.2, 0.5),
            Err(Error::UnphysicalVariance { .. })
        ));
    }

    #[test]
    fn infer_inverts_loss() {
        for (v, eta) in [(0.4f64, 0.7), (2.5, 0.3), (1.0, 0.9), (0.05, 0.99)] {
            let lost = eta * v + (1.0 - eta);
            let back = infer_lossless(lost, eta).unwrap();
            assert_relative_eq!(back, v, epsilon = 1e-12);
        }
    }

    #[test]
    fn gawbs_scaling() {
        let fiber = FiberParams::new(1.0, -1e-26, 0.0, 0.08, 0.0).unwrap();
        assert_eq!(gawbs_noise(7.3e-12, &fiber, 0.0).unwrap(), 0.0);
        let double = FiberParams::new(2.0, -1e-26, 0.0, 0.08, 0.0).unwrap();
        let n1 = gawbs_noise(7.3e-12, &fiber, 1e13).unwrap();
        let n2 = gawbs_noise(7.3e-12, &double, 1e13).unwrap();
        assert_relative_eq!(n2, 2.0 * n1, epsilon = 1e-15);
        assert!(gawbs_noise(-1.0, &fiber, 1e13).is_err());
        assert!(gawbs_noise(7.3e-12, &fiber, -1.0).is_err());
    }

    #[test]
    fn nonlinear_phase_from_pulse() {
        let grid = TimeGrid::new(4096, 10e-12).unwrap();
        let pulse = make_sech_pulse(7.3e-12, 120e-15, 810e-9, grid).unwrap();
        let fiber = FiberParams::new(1.0, -1e-26, 0.0, 0.079, 0.0).unwrap();
        let r = nonlinear_phase(&pulse, &fiber);
        assert_relative_eq!(r, 4.23, epsilon = 0.02);
        let linear = FiberParams::new(1.0, -1e-26, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(nonlinear_phase(&pulse, &linear), 0.0);
        // strong loss saturates L_eff at 1/alpha
        let lossy = FiberParams::new(1.0, -1e-26, 0.0, 0.079, 50.0).unwrap();
        assert_relative_eq!(
            nonlinear_phase(&pulse, &lossy),
            0.079 * pulse.peak_power() / 50.0,
            max_relative = 1e-9
        );
    }

    #[test]
    fn efficiency_chain() {
        let chain = EfficiencyChain::from_visibility(0.95, 0.95, 0.9).unwrap();
        assert_relative_eq!(chain.eta_vis, 0.81, epsilon = 1e-12);
        assert_relative_eq!(chain.eta_total(), 0.95 * 0.95 * 0.81, epsilon = 1e-12);
        assert!(EfficiencyChain::from_visibility(0.0, 0.95, 0.9).is_err());
        assert!(EfficiencyChain::from_visibility(0.95, 1.1, 0.9).is_err());
    }

    #[test]
    fn covariance_rejects_unphysical() {
        assert!(QuadCovariance::new(-1.0, 0.0, 1.0).is_err());
        assert!(QuadCovariance::new(1.0, 2.0, 1.0).is_err()); // det < 0
        assert!(QuadCovariance::new(0.5, 0.0, 0.5).is_err()); // det < 1
    }

    proptest! {
        #[test]
        fn loss_preserves_uncertainty(r in 0.0f64..10.0, n in 0.0f64..20.0, eta in 0.01f64..1.0) {
            let c = add_phase_noise(&kerr_covariance(r).unwrap(), n).unwrap();
            let lost = apply_loss(&c, eta).unwrap();
            let (lo, hi) = lost.eigenvalues();
            prop_assert!(lo * hi >= 1.0 - 1e-9);
            let res = extremal_variances(&lost);
            prop_assert!(res.purity <= 1.0 + 1e-9);
        }

        #[test]
        fn infer_lossless_round_trip(v in 0.05f64..40.0, eta in 0.05f64..1.0) {
            let lost = eta * v + (1.0 - eta);
            let back = infer_lossless(lost, eta).unwrap();
            prop_assert!((back - v).abs() < 1e-12 * v.max(1.0));
        }
    }
}
