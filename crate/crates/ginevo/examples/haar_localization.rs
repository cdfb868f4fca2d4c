//! Localization of a Haar-unitary group average: the Monte Carlo mean of
//! exp(-1/2 Tr (H - H^R)^2) over Haar unitaries, multiplied by the
//! Vandermonde of the eigenvalues, matches the Pfaffian of the kernel
//! (x_i - x_j) exp(-(x_i - x_j)^2) up to a constant sign.

use ginevo::pfaffian::{mc_group_integral, vandermonde_ln, Involution, SkewMatrix};
use ginevo::rng::SeedSpec;

fn main() -> ginevo::error::Result<()> {
    let seed = SeedSpec::new(99, 0);
    println!("{:>14} {:>14} {:>12} {:>10}", "points", "group mean", "stderr", "ratio");
    for (i, pts) in [[0.0, 0.4], [0.0, 0.8], [-0.6, 0.9]].iter().enumerate() {
        let (mean, stderr) =
            mc_group_integral(pts, Involution::JtFlavor, 50_000, &seed.stream(i as u64))?;
        let (vs, vl) = vandermonde_ln(pts);
        let kernel = SkewMatrix::from_upper(2, |a, b| {
            let d = pts[a] - pts[b];
            d * (-d * d).exp()
        })?;
        let ratio = mean * vs * vl.exp() / kernel.pfaffian_value();
        println!(
            "{:>14} {mean:>14.7} {stderr:>12.2e} {ratio:>10.5}",
            format!("{pts:?}")
        );
    }
    println!("\nthe ratio is the same constant for every configuration,");
    println!("which is the localization identity in Monte Carlo form");
    Ok(())
}
