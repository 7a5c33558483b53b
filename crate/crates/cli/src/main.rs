use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use remsim::experiments::{
    calibrate, default_p2_grid, dissociation, dissociation_csv, dissociation_svg, noise_sweep, noise_sweep_csv, noise_sweep_svg,
    single_point, AnsatzChoice, BackendKind, ConfusionSource, Mitigation, OptimizerChoice, Reference, RunConfig, Source,
    DEVICE_P2,
};
use remsim::Error;

#[derive(Parser)]
#[command(name = "remsim", version, about = "Noisy VQE with reference-state error mitigation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Energy and error curves over every geometry of a molecule.
    Dissociation(RunArgs),
    /// Errors at one geometry as the two-qubit error rate grows (p1 = 0.1·p2).
    NoiseSweep {
        #[command(flatten)]
        run: RunArgs,
        /// Comma-separated, strictly increasing p2 values.
        #[arg(long, value_delimiter = ',')]
        p2_grid: Option<Vec<f64>>,
    },
    /// Reference evaluation, VQE and REM at one geometry; prints a JSON report.
    SinglePoint(RunArgs),
    /// Estimates the readout confusion matrix by sampling basis states.
    Calibrate {
        #[command(flatten)]
        run: RunArgs,
        /// Preparations of each basis state per repeat.
        #[arg(long, default_value_t = 1000)]
        cal_shots: u64,
        #[arg(long, default_value_t = 100)]
        repeats: usize,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Built-in dataset: h2, heh+, lih.
    #[arg(long, conflicts_with = "hamiltonian")]
    molecule: Option<String>,
    /// Hamiltonian text file instead of a built-in molecule.
    #[arg(long)]
    hamiltonian: Option<PathBuf>,
    #[arg(long, default_value = "ideal")]
    backend: BackendKind,
    #[arg(long)]
    p2: Option<f64>,
    /// Defaults to 0.1·p2.
    #[arg(long)]
    p1: Option<f64>,
    /// Total shots per energy evaluation; exact expectations when omitted.
    #[arg(long)]
    shots: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "none")]
    mitigation: Mitigation,
    /// ideal, figure-s2, calibrate, or a confusion CSV path.
    #[arg(long, default_value = "ideal")]
    confusion: ConfusionSource,
    #[arg(long)]
    ansatz: Option<AnsatzChoice>,
    #[arg(long)]
    optimizer: Option<OptimizerChoice>,
    /// hf or none.
    #[arg(long, default_value = "hf")]
    reference: Reference,
    /// Alpha,beta electron counts for Hamiltonian files.
    #[arg(long, value_parser = parse_pair)]
    electrons: Option<(usize, usize)>,
    /// Bond length (built-in molecules).
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected <alpha>,<beta>")?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

impl RunArgs {
    fn config(&self) -> RunConfig {
        let source = match &self.hamiltonian {
            Some(p) => Source::File(p.clone()),
            None => Source::Builtin(self.molecule.clone().unwrap_or_else(|| "h2".into())),
        };
        RunConfig {
            source,
            backend: self.backend,
            p2: self.p2,
            p1: self.p1,
            shots: self.shots,
            seed: self.seed,
            mitigation: self.mitigation,
            confusion: self.confusion.clone(),
            ansatz: self.ansatz,
            optimizer: self.optimizer,
            reference: self.reference,
            electrons: self.electrons,
            r: self.r,
            ..RunConfig::default()
        }
    }
}

enum Failure {
    Config(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(m) => Failure::Config(m),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Runtime(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_svg(path: Option<&Path>, svg: impl FnOnce() -> String) -> Result<(), Failure> {
    if let Some(p) = path {
        std::fs::write(p, svg()).map_err(|e| Failure::Runtime(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

/// Returns whether every optimization converged.
fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Dissociation(args) => {
            let res = args.config().resolve()?;
            if res.problems.len() < 2 {
                return Err(Failure::Config("a dissociation curve needs at least two geometries".into()));
            }
            let rows = dissociation(&res)?;
            emit(args.out.as_deref(), &dissociation_csv(&rows, res.mitigation))?;
            write_svg(args.svg.as_deref(), || dissociation_svg(&res.name, &rows))?;
            Ok(rows.iter().all(|r| r.converged))
        }
        Command::NoiseSweep { run, p2_grid } => {
            if run.p2.is_some() || run.p1.is_some() {
                return Err(Failure::Config("noise-sweep takes --p2-grid; p1 is fixed at 0.1·p2".into()));
            }
            let mut cfg = run.config();
            cfg.backend = BackendKind::Noisy;
            let res = cfg.resolve()?;
            let grid = p2_grid.unwrap_or_else(default_p2_grid);
            let rows = noise_sweep(&res, &grid)?;
            emit(run.out.as_deref(), &noise_sweep_csv(&rows))?;
            write_svg(run.svg.as_deref(), || noise_sweep_svg(&res.name, &rows, DEVICE_P2))?;
            Ok(rows.iter().all(|r| r.point.converged))
        }
        Command::SinglePoint(args) => {
            let res = args.config().resolve()?;
            let report = single_point(&res)?;
            let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
            json.push('\n');
            if let Some(p) = &args.out {
                emit(Some(p), &json)?;
            }
            print!("{json}");
            Ok(report.converged)
        }
        Command::Calibrate { run, cal_shots, repeats } => {
            let res = run.config().resolve()?;
            let c = calibrate(&res, cal_shots, repeats)?;
            emit(run.out.as_deref(), &c.to_csv())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("warning: optimizer stopped at its evaluation limit before converging");
            ExitCode::from(3)
        }
        Err(Failure::Config(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
