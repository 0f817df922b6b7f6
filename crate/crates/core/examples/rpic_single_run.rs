//! One learning episode with a slot observer: prints the ε schedule, chosen
//! power levels and utility as learning proceeds, then exports and reloads
//! the learned Q-table.
//!
//! ```bash
//! cargo run --release -p vlc-udn --example rpic_single_run -- [config.toml]
//! ```

use std::io::BufReader;

use vlc_udn::agent::{epsilon_at, QTable};
use vlc_udn::harness::{run_scenario_episode, ExperimentConfig, Scenario};

fn main() -> vlc_udn::Result<()> {
    let cfg = match std::env::args().nth(1) {
        Some(path) => ExperimentConfig::from_file(path)?,
        None => ExperimentConfig::default(),
    };
    let scenario = Scenario::new(&cfg)?;
    println!(
        "ρ={} UEs, {} interferers, {} joint actions, {} slots",
        scenario.ue_density,
        scenario.topology.interferer_count(),
        (scenario.agent.power_levels + 1).pow(scenario.ue_density as u32),
        scenario.agent.max_slots
    );

    let mut window = Vec::new();
    let result = run_scenario_episode(&scenario, cfg.experiment.seed, None, |t| {
        window.push(t.evaluation.utility);
        if (t.slot + 1) % 250 == 0 {
            let mean = window.iter().sum::<f64>() / window.len() as f64;
            let mw: Vec<String> = t.powers.iter().map(|p| format!("{:.1}", p * 1e3)).collect();
            println!(
                "slot {:5}  ε={:.3}  mean u {:8.4}  last powers [{}] mW  state {}",
                t.slot + 1,
                epsilon_at(t.slot, &scenario.agent),
                mean,
                mw.join(", "),
                t.state
            );
            window.clear();
        }
    })?;

    let q = result.qtable.expect("learning policy returns its Q-table");
    let mut buf = Vec::new();
    q.export(&scenario.bins, &mut buf)?;
    let (bins, back) = QTable::import(BufReader::new(buf.as_slice()))?;
    assert_eq!(bins, scenario.bins);
    assert_eq!(back.len(), q.len());
    println!("Q-table: {} states, {} entries, {} bytes exported and reloaded", q.state_count(), q.len(), buf.len());
    Ok(())
}
