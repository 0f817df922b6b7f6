//! Sweeps the energy and interference weights and reports how the three
//! utility terms compare at half power, and what the learner converges to.
//!
//! ```bash
//! cargo run --release -p vlc-udn --example calibrate_weights -- [runs]
//! ```

use vlc_udn::harness::{run_experiment, ExperimentConfig, Policy};

fn main() -> vlc_udn::Result<()> {
    let runs: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let base = ExperimentConfig::default();

    println!("term magnitudes under fixed_half (L/2 level on every UE):");
    for rho in 1..=3 {
        let mut c = base.with_density(rho).with_policy(Policy::FixedHalf);
        c.experiment.runs = runs;
        let s = run_experiment(&c)?.tail_mean(500);
        println!(
            "  rho={rho}: rate {:.3} Mbps, energy {:.3} mW, ici {:.3e} W (C_E·E={:.3}, C_I·ICI={:.3})",
            s.mean_rate / 1e6,
            s.energy * 1e3,
            s.ici,
            c.utility.energy_weight_per_w * s.energy,
            c.utility.interference_weight_per_w * s.ici
        );
    }

    println!("\nweights sweep at rho=3 (last-500 means, first-50 means in brackets):");
    for (ce, ci) in [(500.0, 5e7), (1000.0, 1e8), (1000.0, 3e8), (1000.0, 4e8), (1500.0, 1.5e8), (2000.0, 2e8)] {
        let mut c = base.with_density(3);
        c.experiment.runs = runs;
        c.utility.energy_weight_per_w = ce;
        c.utility.interference_weight_per_w = ci;
        let line = |p: Policy| -> vlc_udn::Result<String> {
            let s = run_experiment(&c.with_policy(p))?;
            let (h, t) = (s.head_mean(50), s.tail_mean(500));
            Ok(format!(
                "{p}: u {:.3} [{:.3}] rate {:.2} energy {:.3} [{:.3}] mW ici {:.3e} [{:.3e}]",
                t.utility,
                h.utility,
                t.mean_rate / 1e6,
                t.energy * 1e3,
                h.energy * 1e3,
                t.ici,
                h.ici
            ))
        };
        println!("C_E={ce} C_I={ci:e}");
        for p in [Policy::Rpic, Policy::FixedHalf, Policy::GreedyMyopic] {
            println!("  {}", line(p)?);
        }
    }
    Ok(())
}
