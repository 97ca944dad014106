//! The dark-mode noise pipeline for one pulse energy, stage by stage:
//! Kerr shear per arm, excess phase noise, Sagnac recombination, and the
//! loss chain down to the detected variances.

use pcf_squeeze::config::ExperimentConfig;
use pcf_squeeze::noise::{
    add_phase_noise, apply_loss, combine_sagnac, extremal_variances, gawbs_noise,
    kerr_covariance, nonlinear_phase, EfficiencyChain,
};
use pcf_squeeze::pulse::make_sech_pulse;

fn report(label: &str, c: &pcf_squeeze::QuadCovariance) {
    let r = extremal_variances(c);
    println!(
        "{label:32} sqz {:7.2} dB, antisqz {:6.2} dB, purity {:.4}",
        r.sqz_db, r.antisqz_db, r.purity
    );
}

fn main() -> pcf_squeeze::Result<()> {
    let config = ExperimentConfig::default();
    let fiber = config.fiber()?;
    let grid = config.grid()?;
    let energy = 14.6e-12;

    let energy_a = energy * (1.0 + config.epsilon / 2.0);
    let energy_b = energy * (1.0 - config.epsilon / 2.0);
    let pulse_a = make_sech_pulse(energy_a, config.fwhm_s, config.center_wavelength_m, grid)?;
    let pulse_b = make_sech_pulse(energy_b, config.fwhm_s, config.center_wavelength_m, grid)?;
    let r_a = nonlinear_phase(&pulse_a, &fiber);
    let r_b = nonlinear_phase(&pulse_b, &fiber);
    println!("nonlinear phases: r_a = {r_a:.3}, r_b = {r_b:.3}");

    let ca = kerr_covariance(r_a)?;
    report("arm a, pure Kerr:", &ca);
    let ca = add_phase_noise(&ca, gawbs_noise(energy_a, &fiber, config.kappa_g_per_j_m)?)?;
    report("arm a, with excess phase noise:", &ca);
    let cb = add_phase_noise(
        &kerr_covariance(r_b)?,
        gawbs_noise(energy_b, &fiber, config.kappa_g_per_j_m)?,
    )?;

    let dark = combine_sagnac(&ca, &cb, config.phi_rel_rad)?;
    report("dark mode after the loop:", &dark);

    // a representative visibility for this energy; the sweep derives it
    // from the actual output spectra
    let chain = EfficiencyChain::from_visibility(config.eta_prop, config.eta_det, 0.92)?;
    let detected = apply_loss(
        &apply_loss(&apply_loss(&dark, chain.eta_vis)?, chain.eta_prop)?,
        chain.eta_det,
    )?;
    report("detected (after loss chain):", &detected);
    println!("total detection efficiency = {:.4}", chain.eta_total());
    Ok(())
}
