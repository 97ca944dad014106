//! Squeezing and anti-squeezing of the bare Kerr state versus the
//! accumulated nonlinear phase r.

use pcf_squeeze::noise::{extremal_variances, kerr_covariance};

fn main() -> pcf_squeeze::Result<()> {
    println!("    r    sqz_dB  antisqz_dB  theta_min (rad)  purity");
    for r in [0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0] {
        let result = extremal_variances(&kerr_covariance(r)?);
        println!(
            "{r:5.2}  {:8.2}  {:10.2}  {:15.4}  {:.6}",
            result.sqz_db, result.antisqz_db, result.theta_min, result.purity
        );
    }
    println!("\nthe Kerr state is pure: det(C) = 1 and the dB values are symmetric");
    Ok(())
}
