//! Mean number of real eigenvalues and their local density near the
//! origin, against the square-root laws sqrt(2n/pi) and 1/sqrt(pi t).

use ginevo::estimators::{estimate_local_real_density, estimate_real_count, McConfig};
use ginevo::rng::SeedSpec;

fn main() -> ginevo::error::Result<()> {
    println!("{:>6} {:>12} {:>10} {:>12}", "n", "mean count", "stderr", "sqrt(2n/pi)");
    for (n, samples) in [(25usize, 400), (50, 200), (100, 100)] {
        let cfg = McConfig::new(samples, SeedSpec::new(5, n as u64))?;
        let est = estimate_real_count(n, 1.0, &cfg)?;
        let law = (2.0 * n as f64 / std::f64::consts::PI).sqrt();
        println!("{n:>6} {:>12.3} {:>10.3} {law:>12.3}", est.mean, est.stderr);
    }

    let n = 200;
    let cfg = McConfig::new(150, SeedSpec::new(6, 0))?;
    let est = estimate_local_real_density(n, 1.0, 0.5, &cfg)?;
    println!(
        "\nlocal density near 0 at n = {n}, t = 1: {:.4} ± {:.4} (law 1/sqrt(pi) = {:.4})",
        est.mean,
        est.stderr,
        1.0 / std::f64::consts::PI.sqrt()
    );
    Ok(())
}
