//! The full experiment sweep at default settings, printed as CSV.
//! Equivalent to `pcf-squeeze sweep` with no configuration file.

use pcf_squeeze::config::ExperimentConfig;
use pcf_squeeze::sweep::{run_sweep, write_csv, SweepEntry};

fn main() -> pcf_squeeze::Result<()> {
    let config = ExperimentConfig {
        energies_pj: (3..=30).step_by(3).map(|e| e as f64).collect(),
        ..ExperimentConfig::default()
    };
    let entries = run_sweep(&config)?;
    for entry in &entries {
        if let SweepEntry::Failed { energy_pj, message } = entry {
            eprintln!("# {energy_pj} pJ failed: {message}");
        }
    }
    write_csv(&entries, std::io::stdout().lock())?;
    Ok(())
}
