use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qtransistor::checks::run_checks;
use qtransistor::config::{Preset, RunConfig};
use qtransistor::output::{emit, labelled_path, write_records, Format};
use qtransistor::sweep::{SweepContext, SweepRecord};
use qtransistor::Error;

#[derive(Parser)]
#[command(version, about = "Steady states and heat currents of a three-qubit thermal transistor")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a single modulator temperature and print the state and currents.
    Ness {
        /// Modulator temperature.
        #[arg(long)]
        tm: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep the modulator temperature over the configured grid.
    Sweep {
        #[command(flatten)]
        common: Common,
    },
    /// Run the invariant suite on the configuration.
    Check {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// TOML run configuration.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in parameter set: fig2, fig3a or fig3b (default fig2).
    #[arg(long)]
    preset: Option<String>,
    /// Output format: csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
    /// Output file; presets with several configurations write <stem>-<label>.<ext>.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Number of grid points, overriding the configuration.
    #[arg(long)]
    points: Option<usize>,
    /// Modulator temperature range lo:hi, overriding the configuration.
    #[arg(long, value_name = "LO:HI")]
    tm_range: Option<String>,
}

enum Failure {
    Config(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config { .. } | Error::Parameter { .. } | Error::Io(_) | Error::Csv(_) | Error::Json(_) => {
                Failure::Config(e.to_string())
            }
            other => Failure::Numerical(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Ness { tm, common } => ness(tm, &common),
        Command::Sweep { common } => sweep(&common),
        Command::Check { common } => check(&common),
    }
}

fn parse_range(s: &str) -> Result<(f64, f64), Failure> {
    let bad = || Failure::Config(format!("--tm-range expects LO:HI, got `{s}`"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

fn load(common: &Common) -> Result<Vec<RunConfig>, Failure> {
    let mut configs = match (&common.config, &common.preset) {
        (Some(path), _) => vec![RunConfig::from_file(path)?],
        (None, Some(name)) => name.parse::<Preset>()?.configs(),
        (None, None) => Preset::Fig2.configs(),
    };
    for c in configs.iter_mut() {
        if let Some(n) = common.points {
            *c = c.clone().with_points(n)?;
        }
        if let Some(r) = &common.tm_range {
            let (lo, hi) = parse_range(r)?;
            *c = c.clone().with_range(lo, hi)?;
        }
    }
    Ok(configs)
}

fn format_of(common: &Common) -> Result<Format, Failure> {
    Ok(common.format.parse::<Format>()?)
}

fn write_out(records: &[SweepRecord], label: &str, multiple: bool, format: Format, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(base) => {
            let path = if multiple { labelled_path(base, label, format) } else { base.to_path_buf() };
            emit(records, format, &path)?;
            log::info!("wrote {}", path.display());
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            if multiple {
                writeln!(lock, "# {label}")?;
            }
            write_records(records, format, &mut lock)?;
        }
    }
    Ok(())
}

fn sweep(common: &Common) -> Result<(), Failure> {
    let format = format_of(common)?;
    let configs = load(common)?;
    let multiple = configs.len() > 1;
    let mut flagged = 0;
    for c in configs {
        let label = c.label.clone();
        let records = SweepContext::new(c)?.run();
        flagged += records.iter().filter(|r| !r.is_ok()).count();
        write_out(&records, &label, multiple, format, common.out.as_deref())?;
    }
    if flagged > 0 {
        return Err(Failure::Numerical(format!("{flagged} grid point(s) without a unique steady state")));
    }
    Ok(())
}

fn ness(tm: f64, common: &Common) -> Result<(), Failure> {
    let format = format_of(common)?;
    let configs = load(common)?;
    let multiple = configs.len() > 1;
    for c in configs {
        let label = c.label.clone();
        let ctx = SweepContext::new(c)?;
        let p = ctx.solve(tm)?;
        let i = &p.currents;
        println!("[{label}] T_M = {tm}");
        println!("currents   I_S = {:+.6e}  I_M = {:+.6e}  I_D = {:+.6e}", i.source, i.modulator, i.drain);
        println!("first law  |sum|/max|I| = {:.3e}", i.conservation_defect());
        println!(
            "solver     residual {:.3e}, singular values {:.3e} / {:.3e}",
            p.steady.residual, p.steady.smallest_singular, p.steady.second_singular
        );
        let pops: Vec<String> = (0..8).map(|k| format!("{:.6}", p.steady.energy_state[(k, k)].re)).collect();
        println!("energy populations (ascending E): {}", pops.join(" "));
        println!("density matrix, computational basis |j_S j_M j_D> (re, im):");
        let rho = p.steady.state.matrix();
        for r in 0..8 {
            let row: Vec<String> = (0..8).map(|c| format!("{:+.4e},{:+.4e}", rho[(r, c)].re, rho[(r, c)].im)).collect();
            println!("  {}", row.join("  "));
        }
        if common.out.is_some() {
            let record = ctx.record(tm);
            write_out(&[record], &label, multiple, format, common.out.as_deref())?;
        }
    }
    Ok(())
}

fn check(common: &Common) -> Result<(), Failure> {
    let mut failed = 0;
    for c in load(common)? {
        println!("[{}]", c.label);
        for o in run_checks(&c)? {
            let tag = if o.passed() { "PASS" } else { "FAIL" };
            println!("{tag}  {:<45} {:>11.3e}  (tol {:.0e})", o.name, o.value, o.tolerance);
            if !o.passed() {
                failed += 1;
            }
        }
    }
    if failed > 0 {
        return Err(Failure::Numerical(format!("{failed} invariant check(s) failed")));
    }
    Ok(())
}
