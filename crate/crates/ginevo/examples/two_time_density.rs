//! Evaluates the exact finite-dimension two-time modified density at
//! y = 0 for growing matrix dimension and compares it with the limiting
//! law under the scaled lag tau = T / n.

use ginevo::exact::{
    modified_density_finite_n_y0, modified_density_limit, ScaledLagParams,
};
use ginevo::quad::QuadratureConfig;

fn main() -> ginevo::error::Result<()> {
    let p = ScaledLagParams::new(1.0, 1.0)?;
    let cfg = QuadratureConfig::default();
    let xs = [0.0, 0.25, 0.5, 1.0, 1.5];

    println!("two-time modified density at y = 0, t = 1, scaled lag T = 1");
    print!("{:>8}", "x");
    for n in [10usize, 50, 200] {
        print!("{:>14}", format!("n = {n}"));
    }
    println!("{:>14}", "limit");

    for &x in &xs {
        print!("{x:>8.2}");
        for n in [10usize, 50, 200] {
            let v = modified_density_finite_n_y0(n, &p, x, &cfg)?;
            print!("{:>14.8}", v.value);
        }
        println!("{:>14.8}", modified_density_limit(&p, x));
    }
    Ok(())
}
