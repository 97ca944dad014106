//! Symmetric split-step Fourier propagation of the scalar nonlinear
//! Schroedinger equation
//!
//!   dA/dz = -i (beta2/2) d2A/dt2 + (beta3/6) d3A/dt3 + i gamma |A|^2 A - (alpha/2) A
//!
//! Dispersion and loss act in the frequency domain, the Kerr term in the
//! time domain. Strang splitting (half linear, full nonlinear, half linear)
//! gives second-order accuracy in the step size; adjacent half steps are
//! merged so each step costs one FFT round trip.
//!
//! Spectral multipliers use the analysis kernel e^{-i w t}, under which
//! d/dt maps to +i w.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::pulse::{FiberParams, PulseEnvelope};

/// Minimum accepted step count.
pub const MIN_STEPS: usize = 100;

/// Relative edge magnitude above which the propagated field is rejected.
const OUTPUT_EDGE_LIMIT: f64 = 1e-3;

/// Propagates `pulse` over the full fiber length in `n_steps` uniform steps.
pub fn propagate(
    pulse: &PulseEnvelope,
    fiber: &FiberParams,
    n_steps: usize,
) -> Result<PulseEnvelope> {
    if n_steps < MIN_STEPS {
        return Err(Error::StepCount(n_steps, MIN_STEPS));
    }
    let input_edge = pulse.edge_ratio();
    if input_edge >= 1e-6 {
        return Err(Error::Wraparound {
            context: "input envelope",
            edge_ratio: input_edge,
        });
    }

    let grid = pulse.grid();
    let n = grid.n_samples();
    let dz = fiber.length / n_steps as f64;

    // Linear factor over dz/2: exp([i(b2/2 w^2 - b3/6 w^3) - alpha/2] dz/2).
    let half: Vec<Complex64> = grid
        .fft_omega()
        .iter()
        .map(|&w| {
            let phase = (fiber.beta2 / 2.0) * w * w - (fiber.beta3 / 6.0) * w * w * w;
            (Complex64::new(-fiber.alpha / 2.0, phase) * (dz / 2.0)).exp()
        })
        .collect();
    let full: Vec<Complex64> = half.iter().map(|h| h * h).collect();

    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let scale = 1.0 / n as f64;

    let mut field = pulse.samples().to_vec();

    // L(dz/2) [N(dz) L(dz)]^(n-1) N(dz) L(dz/2)
    fwd.process(&mut field);
    apply(&mut field, &half);
    inv.process(&mut field);
    for a in field.iter_mut() {
        *a *= scale;
    }
    for step in 0..n_steps {
        for a in field.iter_mut() {
            let phi = fiber.gamma * a.norm_sqr() * dz;
            *a *= Complex64::new(0.0, phi).exp();
        }
        fwd.process(&mut field);
        apply(&mut field, if step + 1 < n_steps { &full } else { &half });
        inv.process(&mut field);
        for a in field.iter_mut() {
            *a *= scale;
        }
    }

    let out = PulseEnvelope::from_samples_unchecked(grid, field, pulse.center_wavelength());
    let edge = out.edge_ratio();
    if edge >= OUTPUT_EDGE_LIMIT {
        return Err(Error::Wraparound {
            context: "propagated envelope",
            edge_ratio: edge,
        });
    }
    Ok(out)
}

fn apply(field: &mut [Complex64], factor: &[Complex64]) {
    for (a, f) in field.iter_mut().zip(factor) {
        *a *= f;
    }
}
