//! Calibrates the excess-phase-noise strength kappa_g so the sweep's best
//! squeezing matches a target, then reports the resulting noise levels.

use pcf_squeeze::config::ExperimentConfig;
use pcf_squeeze::noise::gawbs_noise;
use pcf_squeeze::sweep::SweepPlan;

fn main() -> pcf_squeeze::Result<()> {
    let config = ExperimentConfig {
        energies_pj: (3..=30).map(|e| e as f64).collect(),
        n_samples: 4096,
        n_steps: 400,
        ..ExperimentConfig::default()
    };
    println!("propagating {} energies...", config.energies_pj.len());
    let plan = SweepPlan::prepare(&config)?;

    let target_db = -3.9;
    let calibration = plan.calibrate_kappa_g(target_db)?;
    println!(
        "kappa_g = {:.4e} 1/(J m) puts the best squeezing at {:.2} dB ({} pJ)",
        calibration.kappa_g_per_j_m, calibration.best_sqz_db, calibration.best_energy_pj
    );

    let fiber = config.fiber()?;
    for energy_pj in [7.3, 14.6, 21.9] {
        let n_ex = gawbs_noise(energy_pj * 1e-12, &fiber, calibration.kappa_g_per_j_m)?;
        println!("excess phase noise at {energy_pj:5.1} pJ: {n_ex:8.2} shot-noise units");
    }
    Ok(())
}
