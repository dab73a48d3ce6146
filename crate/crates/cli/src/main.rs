//! `slocc`: classify two-qubit operators, analyse CHSH behaviour, run the
//! I(3322) scan and emit figure geometry.
//!
//! Exit codes: 0 success, 1 usage, 2 parse, 3 domain violation, 4 I/O.

mod output;
mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use slocc::pauli::HermitianOp;

use output::Format;
use report::Settings;

#[derive(Parser, Debug)]
#[command(name = "slocc", version, about = "Two-qubit SLOCC geometry")]
struct Cli {
    /// Format of reports written to stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Override a tolerance, e.g. `--tol-override membership=1e-6`.
    #[arg(long = "tol-override", global = true, value_name = "KEY=VAL", value_parser = parse_override)]
    tol_override: Vec<(String, f64)>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cone memberships, singular values and class coordinates of an operator.
    Classify { input: PathBuf },
    /// Optimal CHSH witness value and filtered violation of a state.
    Chsh { input: PathBuf },
    /// Random I(3322) witnesses against the hull of the CHSH circles.
    #[command(name = "i3322-scan")]
    I3322Scan {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Polytopes, circles, cylinders and the corner-witness plane.
    Geometry {
        #[arg(long)]
        out: PathBuf,
    },
    /// Infimum of the pairing of two witnesses over local filters.
    Duality { first: PathBuf, second: PathBuf },
}

fn parse_override(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected KEY=VAL, got `{s}`"))?;
    if !Settings::KEYS.contains(&k) {
        return Err(format!(
            "unknown tolerance `{k}` (known: {})",
            Settings::KEYS.join(", ")
        ));
    }
    let v: f64 = v.parse().map_err(|e| format!("bad value for `{k}`: {e}"))?;
    if !(v.is_finite() && v >= 0.0) {
        return Err(format!("tolerance `{k}` must be finite and non-negative"));
    }
    Ok((k.to_string(), v))
}

#[derive(Debug)]
enum Failure {
    Parse(String),
    Domain(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Domain(_) => 3,
            Failure::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Domain(m) | Failure::Io(m) => m,
        }
    }
}

impl From<slocc::Error> for Failure {
    fn from(e: slocc::Error) -> Self {
        match e {
            slocc::Error::Parse(_) => Failure::Parse(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Failure + '_ {
    move |e| Failure::Io(format!("{}: {e}", path.display()))
}

fn read_operator(path: &Path) -> Result<HermitianOp<f64>, Failure> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    slocc::io::parse_operator(&text).map_err(|e| match Failure::from(e) {
        Failure::Parse(m) => Failure::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(io_err(&path))
}

fn print(s: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    out.write_all(s.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Failure::Io(format!("stdout: {e}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut settings = Settings::default();
    for (k, v) in &cli.tol_override {
        settings.set(k, *v);
    }
    match cli.command {
        Command::Classify { input } => {
            let w = read_operator(&input)?;
            print(&output::render(
                &report::classify(&w, &settings)?,
                cli.format,
            ))
        }
        Command::Chsh { input } => {
            let rho = read_operator(&input)?;
            print(&output::render(&report::chsh(&rho, &settings)?, cli.format))
        }
        Command::Duality { first, second } => {
            let w1 = read_operator(&first)?;
            let w2 = read_operator(&second)?;
            print(&output::render(
                &report::duality(&w1, &w2, &settings)?,
                cli.format,
            ))
        }
        Command::Geometry { out } => write_file(
            &out,
            "geometry.json",
            &slocc::io::to_json_compact(&slocc::geometry::geometry()),
        ),
        Command::I3322Scan { n, seed, out } => {
            let scan = slocc::i3322::scan::<f64>(n, seed);
            let s = &scan.summary;
            let summary = json!({
                "n": s.n,
                "seed": seed,
                "min_margin": s.min_margin,
                "skipped_complex": s.skipped_complex,
                "skipped_degenerate": s.skipped_degenerate,
                "inplane_max_radius": s.inplane_max_radius,
                "inplane_count": s.inplane_count,
            });
            write_file(&out, "i3322_scan.csv", &output::scan_csv(&scan.records))?;
            write_file(&out, "i3322_summary.json", &slocc::io::to_json(&summary))?;
            print(&output::render(&summary, cli.format))?;
            if s.min_margin >= -settings.hull {
                Ok(())
            } else {
                Err(Failure::Domain(format!(
                    "scan left the CHSH hull: min margin {:e}",
                    s.min_margin
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
