//! HWP-angle-resolved dark-plane noise trace, written as CSV to stdout.
//! The minimum and maximum of the trace bracket the covariance eigenvalues.

use pcf_squeeze::noise::{extremal_variances, kerr_covariance};
use pcf_squeeze::stokes::{sweep_hwp, StokesState};

fn main() -> pcf_squeeze::Result<()> {
    let dark_cov = kerr_covariance(1.0)?;
    let state = StokesState::circular(1.0, dark_cov)?;
    let trace = sweep_hwp(&state, 90)?;

    trace.write_csv(std::io::stdout().lock())?;

    let result = extremal_variances(&dark_cov);
    eprintln!(
        "# trace min {:.4} / max {:.4}; eigenvalues {:.4} / {:.4}",
        trace.min_variance(),
        trace.max_variance(),
        result.v_sqz,
        result.v_antisqz
    );
    eprintln!(
        "# metadata: detection at {:.0} MHz, RBW {:.0} kHz, VBW {:.0} Hz",
        trace.metadata.detection_frequency_hz / 1e6,
        trace.metadata.resolution_bandwidth_hz / 1e3,
        trace.metadata.video_bandwidth_hz
    );
    Ok(())
}
