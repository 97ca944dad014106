//! Command-line front end: energy sweeps to CSV, spectral overlap of
//! measured spectra, loss inference, and single-pulse propagation.
//!
//! Exit codes: 0 success, 2 input error, 3 numerical failure.

// `!(x > 0.0)` also rejects NaN, unlike `x <= 0.0`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pcf_squeeze::config::{load_config, ExperimentConfig};
use pcf_squeeze::error::Error;
use pcf_squeeze::noise::infer_lossless;
use pcf_squeeze::overlap::{common_grid, spectral_overlap};
use pcf_squeeze::pulse::make_sech_pulse;
use pcf_squeeze::spectrum::{load_spectrometer_file, save_spectrometer_file, spectrum};
use pcf_squeeze::ssfm::propagate;
use pcf_squeeze::sweep::{run_sweep, write_csv, SweepEntry};

#[derive(Parser)]
#[command(name = "pcf-squeeze", version, about = "Sagnac-loop polarization squeezing simulator")]
struct Cli {
    /// Print the default configuration template and exit.
    #[arg(long, global = true)]
    print_default_config: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the pulse-energy sweep and write a CSV table.
    Sweep {
        /// Configuration file (key = value); defaults apply when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spectral overlap bound of two spectrometer files.
    Overlap {
        file_p: PathBuf,
        file_s: PathBuf,
    },
    /// Loss-correct measured squeezing/anti-squeezing variances.
    Infer {
        /// Measured squeezing in dB (negative below shot noise).
        #[arg(long, allow_hyphen_values = true)]
        sqz: f64,
        /// Measured anti-squeezing in dB.
        #[arg(long, allow_hyphen_values = true)]
        antisqz: f64,
        /// Total detection efficiency in (0, 1].
        #[arg(long)]
        eta: f64,
    },
    /// Propagate one pulse and write its output spectrum.
    Propagate {
        /// Pulse energy in picojoules.
        #[arg(long)]
        energy_pj: f64,
        /// Output spectrometer-format file.
        #[arg(long)]
        out: PathBuf,
        /// Configuration file for fiber/grid settings.
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.print_default_config {
        print!("{}", ExperimentConfig::template());
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("error: no subcommand given (try --help)");
        return ExitCode::from(2);
    };
    match run(command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

/// Input-shaped errors exit 2, numerical failures exit 3.
fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Wraparound { .. } | Error::Calibration(_) => 3,
        _ => 2,
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Sweep { config, out } => {
            let config = match config {
                Some(path) => load_config(path)?,
                None => ExperimentConfig::default(),
            };
            let entries = run_sweep(&config)?;
            let mut failed = 0usize;
            for entry in &entries {
                if let SweepEntry::Failed { energy_pj, message } = entry {
                    eprintln!("row {energy_pj} pJ failed: {message}");
                    failed += 1;
                }
            }
            match out {
                Some(path) => {
                    let file = std::fs::File::create(path)?;
                    write_csv(&entries, std::io::BufWriter::new(file))?;
                }
                None => {
                    let stdout = std::io::stdout();
                    write_csv(&entries, stdout.lock())?;
                }
            }
            Ok(if failed > 0 {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Overlap { file_p, file_s } => {
            let sp = load_spectrometer_file(&file_p)?;
            let ss = load_spectrometer_file(&file_s)?;
            warn_clamped(&file_p, sp.clamped_rows);
            warn_clamped(&file_s, ss.clamped_rows);
            let (sp, ss) = (sp.spectrum, ss.spectrum);
            let report = if sp.same_grid(&ss) {
                spectral_overlap(&sp, &ss)?
            } else {
                let grid = common_grid(&sp, &ss);
                spectral_overlap(&sp.resampled(&grid)?, &ss.resampled(&grid)?)?
            };
            println!("v_max = {:.4}", report.v_max);
            Ok(ExitCode::SUCCESS)
        }
        Command::Infer { sqz, antisqz, eta } => {
            // the two variances are corrected independently: the published
            // measured/inferred pairs imply different efficiencies, so one
            // of them can sit below the 1 - eta vacuum floor at the other's
            // eta and only the physical one is reported
            let v_sqz = 10f64.powf(sqz / 10.0);
            let v_antisqz = 10f64.powf(antisqz / 10.0);
            let inf_sqz = infer_lossless(v_sqz, eta);
            let inf_antisqz = infer_lossless(v_antisqz, eta);
            if let (Err(e), Err(_)) = (&inf_sqz, &inf_antisqz) {
                return Err(Error::UnphysicalVariance {
                    v_meas: match e {
                        Error::UnphysicalVariance { v_meas, .. } => *v_meas,
                        _ => v_sqz,
                    },
                    floor: 1.0 - eta,
                });
            }
            print_inferred("inferred_sqz_db", &inf_sqz);
            print_inferred("inferred_antisqz_db", &inf_antisqz);
            match (&inf_sqz, &inf_antisqz) {
                (Ok(lo), Ok(hi)) => println!("inferred_purity = {:.4}", 1.0 / (lo * hi).sqrt()),
                _ => println!("inferred_purity = n/a"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Propagate {
            energy_pj,
            out,
            config,
        } => {
            let config = match config {
                Some(path) => load_config(path)?,
                None => ExperimentConfig::default(),
            };
            config.validate()?;
            if !(energy_pj > 0.0) {
                return Err(Error::NonpositiveEnergy(energy_pj * 1e-12));
            }
            let pulse = make_sech_pulse(
                energy_pj * 1e-12,
                config.fwhm_s,
                config.center_wavelength_m,
                config.grid()?,
            )?;
            let output = propagate(&pulse, &config.fiber()?, config.n_steps)?;
            let spec = spectrum(&output)?.trimmed(1e-12);
            save_spectrometer_file(&spec, &out)?;
            let mut stdout = std::io::stdout().lock();
            writeln!(
                stdout,
                "wrote {} bins spanning {:.1}-{:.1} nm",
                spec.len(),
                1e9 * 2.0 * std::f64::consts::PI * pcf_squeeze::spectrum::SPEED_OF_LIGHT
                    / spec.omega()[spec.len() - 1],
                1e9 * 2.0 * std::f64::consts::PI * pcf_squeeze::spectrum::SPEED_OF_LIGHT
                    / spec.omega()[0],
            )?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_inferred(label: &str, inferred: &Result<f64, Error>) {
    match inferred {
        Ok(v) => println!("{label} = {:.2}", 10.0 * v.log10()),
        Err(_) => println!("{label} = unphysical (measured variance below the 1 - eta vacuum floor)"),
    }
}

fn warn_clamped(path: &std::path::Path, clamped: usize) {
    if clamped > 0 {
        eprintln!(
            "warning: {} negative intensity rows clamped to zero in {}",
            clamped,
            path.display()
        );
    }
}
