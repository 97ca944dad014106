//! Spectral broadening versus pulse energy: propagate the default pulse at
//! the three published energies and compare input/output RMS widths.

use pcf_squeeze::config::ExperimentConfig;
use pcf_squeeze::pulse::make_sech_pulse;
use pcf_squeeze::spectrum::spectrum;
use pcf_squeeze::ssfm::propagate;

fn main() -> pcf_squeeze::Result<()> {
    let config = ExperimentConfig::default();
    let fiber = config.fiber()?;
    let grid = config.grid()?;

    println!("energy_pJ  width_in (THz)  width_out (THz)  broadening");
    for energy_pj in [7.3, 14.6, 21.9] {
        let pulse = make_sech_pulse(
            energy_pj * 1e-12,
            config.fwhm_s,
            config.center_wavelength_m,
            grid,
        )?;
        let out = propagate(&pulse, &fiber, config.n_steps)?;
        let w_in = spectrum(&pulse)?.rms_width()? / (2.0 * std::f64::consts::PI) * 1e-12;
        let w_out = spectrum(&out)?.rms_width()? / (2.0 * std::f64::consts::PI) * 1e-12;
        println!(
            "{energy_pj:9.1}  {w_in:14.3}  {w_out:15.3}  {:.2}x",
            w_out / w_in
        );
    }
    Ok(())
}
