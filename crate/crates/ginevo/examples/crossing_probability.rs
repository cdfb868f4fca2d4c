//! Probability that the spin at the origin flips over a short lag tau,
//! i.e. that an odd number of real eigenvalues crosses zero, against the
//! small-lag law sqrt(n tau / (2 pi t)).

use ginevo::estimators::{estimate_crossing_parity, McConfig};
use ginevo::exact::crossing_probability_approx;
use ginevo::rng::SeedSpec;

fn main() -> ginevo::error::Result<()> {
    let (n, t) = (100, 1.0);
    println!("spin-flip probability over lag tau at n = {n}, t = {t}");
    println!("{:>10} {:>12} {:>10} {:>12}", "tau", "estimate", "stderr", "sqrt law");
    for (i, tau) in [1e-3, 4e-4, 1e-4].into_iter().enumerate() {
        let cfg = McConfig::new(20_000, SeedSpec::new(31, i as u64))?;
        let est = estimate_crossing_parity(n, t, tau, &cfg)?;
        println!(
            "{tau:>10.0e} {:>12.5} {:>10.5} {:>12.5}",
            est.mean,
            est.stderr,
            crossing_probability_approx(n, t, tau)
        );
    }
    Ok(())
}
