//! Fundamental-soliton check of the split-step solver: a sech pulse with
//! P0 = |beta2| / (gamma T0^2) in anomalous dispersion keeps its shape.

use pcf_squeeze::grid::TimeGrid;
use pcf_squeeze::pulse::{make_sech_pulse, sech_fwhm_factor, FiberParams};
use pcf_squeeze::ssfm::propagate;

fn main() -> pcf_squeeze::Result<()> {
    let grid = TimeGrid::new(8192, 10e-12)?;
    let fwhm = 120e-15;
    let t0 = fwhm / sech_fwhm_factor();
    let gamma = 0.0793;
    let beta2: f64 = -1.0e-26;

    let p0 = beta2.abs() / (gamma * t0 * t0);
    let energy = 2.0 * p0 * t0;
    println!("soliton: P0 = {p0:.2} W, energy = {:.2} pJ", energy * 1e12);

    let pulse = make_sech_pulse(energy, fwhm, 810e-9, grid)?;
    let fiber = FiberParams::new(1.0, beta2, 0.0, gamma, 0.0)?;

    for n_steps in [250, 500, 1000, 2000] {
        let out = propagate(&pulse, &fiber, n_steps)?;
        let num: f64 = pulse
            .samples()
            .iter()
            .zip(out.samples())
            .map(|(a, b)| (a.norm() - b.norm()).powi(2))
            .sum();
        let den: f64 = pulse.samples().iter().map(|a| a.norm_sqr()).sum();
        println!(
            "n_steps = {n_steps:5}: |A| profile RMS deviation over 1 m = {:.3e}",
            (num / den).sqrt()
        );
    }
    Ok(())
}
