use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use vlc_udn::agent::QTable;
use vlc_udn::harness::output::{self, write_series};
use vlc_udn::harness::{run_experiment_with, run_scenario_episode, ExperimentConfig, Policy, RunOptions, Scenario};
use vlc_udn::{Error, Result};

#[derive(Parser)]
#[command(name = "vlc-udn", version, about = "VLC ultra-dense network power-control simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one Monte-Carlo experiment and write its averaged CSV.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        runs: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        policy: Option<String>,
        #[arg(long)]
        density: Option<usize>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Also write one CSV per run under `<out>/runs/`.
        #[arg(long)]
        raw_runs: bool,
        /// Dump served-UE positions of run 0 to `<out>/trajectories.csv`.
        #[arg(long)]
        trajectories: bool,
        /// Write the final Q-table of run 0 to this path.
        #[arg(long)]
        export_q: Option<PathBuf>,
        /// Start every run from this Q-table.
        #[arg(long)]
        warm_start: Option<PathBuf>,
    },
    /// Run one experiment per UE density.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        densities: Vec<usize>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Summarize an exported Q-table.
    InspectQ {
        #[arg(long)]
        qtable: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Simulate { config, runs, seed, policy, density, out, raw_runs, trajectories, export_q, warm_start } => {
            let mut cfg = ExperimentConfig::from_file(&config)?;
            if let Some(r) = runs {
                cfg.experiment.runs = r;
            }
            if let Some(s) = seed {
                cfg.experiment.seed = s;
            }
            if let Some(p) = policy {
                cfg.experiment.policy = p.parse::<Policy>()?;
            }
            if let Some(d) = density {
                cfg.experiment.ue_density = d;
            }
            cfg.validate()?;
            simulate(&cfg, &out, raw_runs, trajectories, export_q, warm_start)
        }
        Command::Sweep { config, densities, out } => {
            let cfg = ExperimentConfig::from_file(&config)?;
            for d in densities {
                let c = cfg.with_density(d);
                c.validate()?;
                let series = run_experiment_with(&c, RunOptions::default(), |_, _| {})?;
                let path = write_series(&out, &c, &series)?;
                summarize(&series, &path);
            }
            Ok(())
        }
        Command::InspectQ { qtable } => inspect(&qtable),
    }
}

fn simulate(
    cfg: &ExperimentConfig,
    out: &std::path::Path,
    raw_runs: bool,
    trajectories: bool,
    export_q: Option<PathBuf>,
    warm_start: Option<PathBuf>,
) -> Result<()> {
    let warm = match warm_start {
        Some(p) => Some(QTable::import(BufReader::new(File::open(p)?))?.1),
        None => None,
    };
    let runs_dir = out.join("runs");
    if raw_runs {
        std::fs::create_dir_all(&runs_dir)?;
    }
    let mut first_q = None;
    let mut io_err = None;
    let opts = RunOptions { warm_start: warm.as_ref(), ..RunOptions::default() };
    let series = run_experiment_with(cfg, opts, |i, result| {
        if i == 0 {
            first_q = result.qtable.clone();
        }
        if raw_runs && io_err.is_none() {
            let path = runs_dir.join(format!("run{i:04}.csv"));
            let res = File::create(&path)
                .map_err(Error::from)
                .and_then(|f| output::write_metrics_csv(&result.metrics, BufWriter::new(f)));
            if let Err(e) = res {
                io_err = Some(e);
            }
        }
    })?;
    if let Some(e) = io_err {
        return Err(e);
    }
    let path = write_series(out, cfg, &series)?;
    summarize(&series, &path);

    if trajectories {
        let scenario = Scenario::new(cfg)?;
        let mut w = BufWriter::new(File::create(out.join("trajectories.csv"))?);
        writeln!(w, "slot,ue_id,x,y")?;
        let mut err = None;
        run_scenario_episode(&scenario, cfg.experiment.seed, warm.as_ref(), |t| {
            if err.is_none() {
                err = output::write_trajectory_rows(&mut w, t.slot, t.ues).err();
            }
        })?;
        if let Some(e) = err {
            return Err(e);
        }
        w.flush()?;
    }
    if let (Some(path), Some(q)) = (export_q, first_q) {
        let mut w = BufWriter::new(File::create(&path)?);
        q.export(&cfg.state_bins(), &mut w)?;
        w.flush()?;
        println!("Q-table of run 0 written to {}", path.display());
    }
    Ok(())
}

fn summarize(series: &vlc_udn::harness::RunSeries, path: &std::path::Path) {
    let tail = series.tail_mean(500);
    println!(
        "{} rho={} runs={}: last-500 utility {:.4}, mean rate {:.3} Mbps, energy {:.4} mW, ICI {:.4e} W -> {}",
        series.metadata.policy,
        series.metadata.ue_density,
        series.metadata.runs,
        tail.utility,
        tail.mean_rate / 1e6,
        tail.energy * 1e3,
        tail.ici,
        path.display()
    );
}

fn inspect(path: &std::path::Path) -> Result<()> {
    let (bins, q) = QTable::import(BufReader::new(File::open(path)?))?;
    println!("bins: rate={} gain={} zeta_cap={}", bins.rate_bins, bins.gain_bins, bins.zeta_cap);
    println!("actions per state: {}", q.action_count());
    println!("states visited: {}", q.state_count());
    println!("stored entries: {}", q.len());
    let values: Vec<f64> = q.iter().map(|(_, _, v)| v).collect();
    if !values.is_empty() {
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        println!("q range: [{min}, {max}], mean {mean}");
    }
    let mut rows: Vec<_> = q.iter().collect();
    rows.sort_by(|a, b| b.2.total_cmp(&a.2));
    println!("top entries:");
    for (s, a, v) in rows.into_iter().take(10) {
        println!("  {s}\t{a}\t{v}");
    }
    Ok(())
}
