//! Averages the learner over many runs at ρ = 1..4 and prints converged
//! utility, rate, energy and ICI per density.
//!
//! ```bash
//! cargo run --release -p vlc-udn --example density_sweep -- [runs]
//! ```

use vlc_udn::harness::{sweep_density, ExperimentConfig};

fn main() -> vlc_udn::Result<()> {
    let mut cfg = ExperimentConfig::default();
    cfg.experiment.runs = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    println!("{} runs per density, last-500-slot means", cfg.experiment.runs);
    println!("rho   utility   rate [Mbps]  energy [mW]  ici [W]");
    for s in sweep_density(&cfg, &[1, 2, 3, 4])? {
        let t = s.tail_mean(500);
        println!(
            "{:3}  {:8.4}  {:11.3}  {:11.3}  {:.3e}",
            s.metadata.ue_density,
            t.utility,
            t.mean_rate / 1e6,
            t.energy * 1e3,
            t.ici
        );
    }
    Ok(())
}
