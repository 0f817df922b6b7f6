//! Runs every policy on the same seeds at one density and compares the
//! opening and converged windows.

use vlc_udn::harness::{run_experiment, ExperimentConfig, Policy};

fn main() -> vlc_udn::Result<()> {
    let mut cfg = ExperimentConfig::default();
    cfg.experiment.runs = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let rho = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(3);
    let cfg = cfg.with_density(rho);
    println!("ρ={rho}, {} runs; first-50 → last-500 means", cfg.experiment.runs);
    for policy in [Policy::Rpic, Policy::FixedMax, Policy::FixedHalf, Policy::Random, Policy::GreedyMyopic] {
        let s = run_experiment(&cfg.with_policy(policy))?;
        let (h, t) = (s.head_mean(50), s.tail_mean(500));
        println!(
            "{:14} u {:7.3} → {:7.3}   rate {:6.2} → {:6.2} Mbps   energy {:5.2} → {:5.2} mW",
            policy.name(),
            h.utility,
            t.utility,
            h.mean_rate / 1e6,
            t.mean_rate / 1e6,
            h.energy * 1e3,
            t.energy * 1e3
        );
    }
    Ok(())
}
