//! Monte Carlo two-time spin correlation at large dimension against the
//! closed-form limit erfc(sqrt((x - y)^2 / t + T / (2t))).

use ginevo::estimators::{estimate_spin_corr_two_time_multi, McConfig};
use ginevo::exact::{spin_corr_limit, ScaledLagParams};
use ginevo::rng::SeedSpec;

fn main() -> ginevo::error::Result<()> {
    let n = 150;
    let (t, big_t) = (1.0, 1.0);
    let tau = big_t / n as f64;
    let xs = [0.0, 0.5, 1.0, 1.5];
    let cfg = McConfig::new(4_000, SeedSpec::new(7, 0))?;

    println!("spin correlation E[s_0(t) s_x(t + T/n)] at n = {n}, t = {t}, T = {big_t}");
    let ests = estimate_spin_corr_two_time_multi(n, t, tau, 0.0, &xs, &cfg)?;
    let p = ScaledLagParams::new(t, big_t)?;
    println!("{:>6} {:>12} {:>10} {:>12} {:>8}", "x", "estimate", "stderr", "limit law", "z");
    for (x, e) in xs.iter().zip(&ests) {
        let reference = spin_corr_limit(&p, 0.0, *x);
        println!(
            "{x:>6.2} {:>12.5} {:>10.5} {:>12.5} {:>8.2}",
            e.mean,
            e.stderr,
            reference,
            e.z_score(reference)
        );
    }
    Ok(())
}
