//! Samples a matrix-valued Brownian path, extracts the real spectrum at
//! each time, and prints how the real eigenvalues and the spin function
//! evolve.

use ginevo::process::{sample_path, PathTimes};
use ginevo::rng::SeedSpec;
use ginevo::spectral::{real_schur_spectrum, spin_at, SpinProfile};

fn main() -> ginevo::error::Result<()> {
    let n = 12;
    let times = PathTimes::new(vec![0.25, 0.5, 1.0, 2.0])?;
    let path = sample_path(n, &times, SeedSpec::new(2024, 0))?;

    for m in &path {
        let spec = real_schur_spectrum(m)?;
        let reals: Vec<String> = spec.real_eigs().iter().map(|l| format!("{l:+.3}")).collect();
        println!(
            "t = {:4.2}: {} real eigenvalue(s) of {n}: [{}]",
            m.time(),
            spec.num_real(),
            reals.join(", ")
        );
        let profile = SpinProfile::from_spectrum(&spec);
        let probes = [-2.0, 0.0, 2.0];
        let spins: Vec<String> = probes
            .iter()
            .map(|&x| format!("s({x:+.0}) = {:+}", spin_at(&spec, x)))
            .collect();
        println!(
            "          spin jumps at {} point(s); {}",
            profile.jump_points().len(),
            spins.join(", ")
        );
    }
    Ok(())
}
