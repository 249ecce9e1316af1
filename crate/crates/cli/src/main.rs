use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use epolar::coherent::{
    maximize_coherent_information, maximize_over_diagonal_inputs, theorem1_certificate, theorem2_certificate,
    SearchStrategy,
};
use epolar::families::{Family, PauliProbs};
use epolar::linalg::hermitian_eig;
use epolar::verify::{run_all, Fault, VerifyOptions};
use epolar::{Error, KrausChannel};
use epolar_cli::sweep::{write_csv, DeltaPolicy, SweepSpec, SweepTarget};
use epolar_cli::{exit_code, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use serde_json::json;

#[derive(Parser)]
#[command(name = "epolar", version, about = "Depolarizing-complement channel toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep a family parameter and write coherent information as CSV.
    Sweep(SweepArgs),
    /// Print a positivity certificate as JSON.
    Certificate {
        #[command(subcommand)]
        kind: CertificateKind,
    },
    /// Run every invariant suite.
    Verify(VerifyArgs),
    /// List built-in channel families.
    Families,
    /// Search for the input with the largest coherent information.
    Optimize(OptimizeArgs),
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, required_unless_present = "channel_file", conflicts_with = "channel_file")]
    family: Option<String>,
    /// Kraus channel JSON; the swept parameter becomes delta.
    #[arg(long)]
    channel_file: Option<PathBuf>,
    #[arg(long = "min")]
    param_min: f64,
    #[arg(long = "max")]
    param_max: f64,
    #[arg(long)]
    steps: usize,
    /// threshold, optimize or fixed:<delta>.
    #[arg(long, conflicts_with = "channel_file")]
    delta: Option<String>,
    /// Output path; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CertificateKind {
    Theorem1 {
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        delta: f64,
    },
    Theorem2 {
        /// Four comma-separated Pauli probabilities.
        #[arg(long)]
        p: String,
        #[arg(long)]
        delta: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    DepolarizingWeight,
}

#[derive(Args)]
struct VerifyArgs {
    /// Tolerance for numeric spectra against closed forms.
    #[arg(long, default_value_t = VerifyOptions::default().spectra_tol)]
    spectra_tol: f64,
    /// Deliberately break a channel to exercise the failure path.
    #[arg(long, value_enum)]
    inject_fault: Option<FaultArg>,
    /// Emit the reports as JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OptimizeArgs {
    #[arg(long, required_unless_present = "channel_file", conflicts_with = "channel_file", requires = "param")]
    family: Option<String>,
    #[arg(long)]
    param: Option<f64>,
    #[arg(long)]
    channel_file: Option<PathBuf>,
    /// Random-state samples instead of the Bloch grid (needed for d_in > 2).
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also search diagonal inputs and exit 1 if the general search beats them.
    #[arg(long)]
    check_diagonal: bool,
}

/// An error plus the exit code it maps to.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(exit_code(&e), e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(args) => sweep(args),
        Command::Certificate { kind } => certificate(kind),
        Command::Verify(args) => verify(args),
        Command::Families => families(),
        Command::Optimize(args) => optimize(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("epolar: {msg}");
            ExitCode::from(code)
        }
    }
}

fn load_channel(path: &Path) -> Result<KrausChannel, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    KrausChannel::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_family(name: &str) -> Result<Family, Failure> {
    name.parse().map_err(|e: Error| usage(e.to_string()))
}

fn sweep(args: SweepArgs) -> Result<u8, Failure> {
    let target = match (&args.family, &args.channel_file) {
        (_, Some(path)) => SweepTarget::Channel {
            label: path.file_stem().map_or("channel".into(), |s| s.to_string_lossy().into_owned()),
            channel: load_channel(path)?,
        },
        (Some(name), None) => SweepTarget::Family(parse_family(name)?),
        (None, None) => return Err(usage("either --family or --channel-file is required")),
    };
    let delta_policy = match &args.delta {
        Some(s) => s.parse::<DeltaPolicy>().map_err(|e| usage(e.to_string()))?,
        None if matches!(target, SweepTarget::Channel { .. }) => DeltaPolicy::Threshold,
        None => return Err(usage("--delta is required with --family")),
    };
    let spec = SweepSpec {
        target,
        param_min: args.param_min,
        param_max: args.param_max,
        steps: args.steps,
        delta_policy,
    };
    let rows = spec.run().map_err(|e| usage(e.to_string()))?;
    let written = match &args.output {
        Some(path) => File::create(path)
            .and_then(|f| write_csv(&rows, BufWriter::new(f)))
            .map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => write_csv(&rows, io::stdout().lock()).map_err(|e| usage(e.to_string())),
    };
    written.map(|_| EXIT_OK)
}

fn print_json(value: &impl serde::Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| usage(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn certificate(kind: CertificateKind) -> Result<u8, Failure> {
    let violations = match kind {
        CertificateKind::Theorem1 { eta, delta } => {
            let c = theorem1_certificate(eta, delta)?;
            print_json(&c)?;
            c.violations()
        }
        CertificateKind::Theorem2 { p, delta } => {
            let probs: PauliProbs = p.parse().map_err(|e: Error| usage(e.to_string()))?;
            let c = theorem2_certificate(probs, delta)?;
            print_json(&c)?;
            c.violations()
        }
    };
    for v in &violations {
        eprintln!("epolar: certificate invariant failed: {v}");
    }
    Ok(if violations.is_empty() { EXIT_OK } else { EXIT_FAILED })
}

fn verify(args: VerifyArgs) -> Result<u8, Failure> {
    let opts = VerifyOptions {
        spectra_tol: args.spectra_tol,
        fault: args.inject_fault.map(|FaultArg::DepolarizingWeight| Fault::PerturbDepolarizingWeight),
    };
    let reports = run_all(&opts);
    if args.json {
        print_json(&reports)?;
    } else {
        let mut out = io::stdout().lock();
        for r in &reports {
            let status = if r.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{status} {:<9} {:>3} checks  worst {:.3e} (tol {:.1e})  {}",
                r.name, r.checks, r.worst_deviation, r.tolerance, r.worst_check
            );
            for f in &r.failures {
                let _ = writeln!(out, "     failed: {f}");
            }
        }
    }
    Ok(if reports.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_FAILED })
}

fn families() -> Result<u8, Failure> {
    for f in Family::ALL {
        println!("{:<18} {}", f.name(), f.parameters());
    }
    Ok(EXIT_OK)
}

fn optimize(args: OptimizeArgs) -> Result<u8, Failure> {
    let (label, param, ch) = match (&args.family, &args.channel_file) {
        (_, Some(path)) => (path.display().to_string(), None, load_channel(path)?),
        (Some(name), None) => {
            let family = parse_family(name)?;
            let param = args.param.ok_or_else(|| usage("--param is required with --family"))?;
            (family.name().to_string(), Some(param), family.channel(param).map_err(|e| usage(e.to_string()))?)
        }
        (None, None) => return Err(usage("either --family or --channel-file is required")),
    };
    let strategy = match args.samples {
        Some(samples) => SearchStrategy::RandomStates {
            samples,
            seed: args.seed,
        },
        None => SearchStrategy::default(),
    };
    let best = maximize_coherent_information(&ch, &strategy).map_err(|e| usage(e.to_string()))?;
    let spectrum = hermitian_eig(&best.argmax_state)?.eigenvalues;
    let argmax: Vec<Vec<[f64; 2]>> = (0..best.argmax_state.rows())
        .map(|r| {
            (0..best.argmax_state.cols())
                .map(|c| {
                    let z = best.argmax_state[(r, c)];
                    [z.re, z.im]
                })
                .collect()
        })
        .collect();
    let mut doc = json!({
        "channel": label,
        "param": param,
        "value": best.value,
        "strategy": best.strategy,
        "evaluations": best.evaluations,
        "argmax_state": argmax,
        "argmax_spectrum": spectrum,
    });
    let mut code = EXIT_OK;
    if args.check_diagonal {
        let (delta, value) = maximize_over_diagonal_inputs(&ch).map_err(|e| usage(e.to_string()))?;
        let holds = best.value <= value + 1e-9;
        doc["diagonal"] = json!({ "delta": delta, "value": value, "hypothesis_holds": holds });
        if !holds {
            code = EXIT_FAILED;
        }
    }
    print_json(&doc)?;
    Ok(code)
}
