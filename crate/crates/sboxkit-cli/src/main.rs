//! `sboxkit` command line: generate, analyze, sweep, compare.
//!
//! Exit codes: 0 success, 1 I/O or other failure, 2 input parse failure,
//! 3 parameter validation failure, 4 generation pipeline failure.

use clap::{Parser, Subcommand, ValueEnum};
use sboxkit::chaos::{f64_from_hex, ChaosError, ChaosParams};
use sboxkit::compare::{comparison_table, row_from_report};
use sboxkit::gridfile::{parse_grid, write_grid, GridParseError, Radix};
use sboxkit::metrics::{analyze, MetricsReport};
use sboxkit::pipeline::{generate_sbox, PipelineError};
use sboxkit::sbox::SBox;
use sboxkit::sweep::{param_grid, run_sweep};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Pipeline(#[from] PipelineError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Pipeline(_) => 4,
        }
    }
}

impl From<GridParseError> for CliError {
    fn from(err: GridParseError) -> Self {
        CliError::Parse(err.to_string())
    }
}

impl From<ChaosError> for CliError {
    fn from(err: ChaosError) -> Self {
        match err {
            ChaosError::BadHexLiteral(_) => CliError::Parse(err.to_string()),
            _ => CliError::Validation(err.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "sboxkit",
    version,
    about = "Chaotic TSP S-box generation and analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    /// 16x16 whitespace-separated grid, `#` comment lines allowed
    #[default]
    Grid,
    /// JSON array of 256 byte values
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an S-box from chaotic parameters and print its metrics
    Generate {
        /// Initial state in (0,1); decimal, or 16 hex digits with --x0-hex
        #[arg(long)]
        x0: String,
        /// Control parameter in (0,1); decimal, or 16 hex digits with --p-hex
        #[arg(long)]
        p: String,
        /// Treat --x0 as an IEEE-754 bit pattern
        #[arg(long)]
        x0_hex: bool,
        /// Treat --p as an IEEE-754 bit pattern
        #[arg(long)]
        p_hex: bool,
        /// Where to write the generated grid
        #[arg(long)]
        out: PathBuf,
        /// Write grid values as two-digit hex instead of decimal
        #[arg(long)]
        hex: bool,
        /// Also write the JSON generation trace
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Keep the per-pass S-box snapshots in the trace
        #[arg(long, requires = "trace")]
        snapshots: bool,
    },
    /// Score an S-box file against all strength criteria
    Analyze {
        path: PathBuf,
        /// Print the report as JSON instead of text
        #[arg(long)]
        json: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Grid values are two-digit hex
        #[arg(long)]
        hex: bool,
    },
    /// Generate and score many parameter pairs, ranked best first
    Sweep {
        /// Size of the built-in low-discrepancy parameter grid
        #[arg(long, required_unless_present = "params")]
        count: Option<usize>,
        /// Keep only the best K entries
        #[arg(long)]
        top: Option<usize>,
        /// Where to write the ranked JSON-lines output
        #[arg(long)]
        out: PathBuf,
        /// Explicit "x0,p" decimal pairs used instead of the grid
        #[arg(long = "params", value_name = "X0,P")]
        params: Vec<String>,
    },
    /// Print an S-box's nonlinearity row next to published designs
    Compare {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Grid values are two-digit hex
        #[arg(long)]
        hex: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Generate {
            x0,
            p,
            x0_hex,
            p_hex,
            out,
            hex,
            trace,
            snapshots,
        } => cmd_generate(
            &x0,
            &p,
            x0_hex,
            p_hex,
            &out,
            hex,
            trace.as_deref(),
            snapshots,
        ),
        Command::Analyze {
            path,
            json,
            format,
            hex,
        } => cmd_analyze(&path, json, format, hex),
        Command::Sweep {
            count,
            top,
            out,
            params,
        } => cmd_sweep(count, top, &out, &params),
        Command::Compare { path, format, hex } => cmd_compare(&path, format, hex),
    }
}

fn parse_param(value: &str, as_hex: bool, name: &str) -> Result<f64, CliError> {
    if as_hex {
        Ok(f64_from_hex(value)?)
    } else {
        value
            .parse::<f64>()
            .map_err(|_| CliError::Parse(format!("{name}: {value:?} is not a decimal number")))
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn grid_radix(hex: bool) -> Radix {
    if hex {
        Radix::Hex
    } else {
        Radix::Decimal
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    x0: &str,
    p: &str,
    x0_hex: bool,
    p_hex: bool,
    out: &Path,
    hex: bool,
    trace_path: Option<&Path>,
    snapshots: bool,
) -> Result<(), CliError> {
    let x0 = parse_param(x0, x0_hex, "--x0")?;
    let p = parse_param(p, p_hex, "--p")?;
    let params = ChaosParams::new(x0, p)?;

    let (sbox, trace) = generate_sbox(params)?;
    write_file(out, &write_grid(&sbox, grid_radix(hex)))?;

    if let Some(path) = trace_path {
        let trace = if snapshots {
            trace.clone()
        } else {
            trace.clone().without_snapshots()
        };
        let json = serde_json::to_string_pretty(&trace).expect("trace serializes");
        write_file(path, &json)?;
    }

    println!(
        "generated {} from x0_hex={} p_hex={}",
        out.display(),
        params.x0_hex(),
        params.p_hex()
    );
    print!("{}", analyze(&sbox).render_text());
    Ok(())
}

fn load_sbox(path: &Path, format: Format, hex: bool) -> Result<SBox, CliError> {
    let text = read_file(path)?;
    match format {
        Format::Grid => Ok(parse_grid(&text, grid_radix(hex))?),
        Format::Json => serde_json::from_str(&text)
            .map_err(|err| CliError::Parse(format!("{}: {err}", path.display()))),
    }
}

fn report_for(path: &Path, format: Format, hex: bool) -> Result<MetricsReport, CliError> {
    let sbox = load_sbox(path, format, hex)?;
    let report = analyze(&sbox);
    if !report.bijective {
        eprintln!(
            "warning: {} is not bijective; metrics remain defined but the box is unusable as a permutation",
            path.display()
        );
    }
    Ok(report)
}

fn cmd_analyze(path: &Path, json: bool, format: Format, hex: bool) -> Result<(), CliError> {
    let report = report_for(path, format, hex)?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else {
        print!("{}", report.render_text());
    }
    Ok(())
}

fn cmd_sweep(
    count: Option<usize>,
    top: Option<usize>,
    out: &Path,
    explicit: &[String],
) -> Result<(), CliError> {
    let params = if explicit.is_empty() {
        let count = count.expect("clap enforces count unless params are given");
        if count == 0 {
            return Err(CliError::Validation("--count must be at least 1".into()));
        }
        param_grid(count)
    } else {
        explicit
            .iter()
            .map(|pair| parse_pair(pair))
            .collect::<Result<Vec<_>, _>>()?
    };

    let result = run_sweep(&params, top);
    write_file(out, &result.to_jsonl())?;

    println!(
        "swept {} seed(s): {} ranked, {} failed -> {}",
        params.len(),
        result.entries.len(),
        result.failures.len(),
        out.display()
    );
    for entry in result.entries.iter().take(10) {
        println!(
            "#{} x0_hex={} p_hex={} nl_min={} nl_mean={:.4} sac_avg={:.4} du={}",
            entry.rank,
            entry.x0_hex,
            entry.p_hex,
            entry.nl_min,
            entry.nl_mean,
            entry.sac_avg,
            entry.du
        );
    }
    for failure in &result.failures {
        eprintln!(
            "warning: seed x0_hex={} p_hex={} failed: {}",
            failure.x0_hex, failure.p_hex, failure.error
        );
    }
    Ok(())
}

fn parse_pair(pair: &str) -> Result<ChaosParams, CliError> {
    let (x0, p) = pair
        .split_once(',')
        .ok_or_else(|| CliError::Parse(format!("--params {pair:?} is not of the form X0,P")))?;
    let x0 = parse_param(x0.trim(), false, "--params x0")?;
    let p = parse_param(p.trim(), false, "--params p")?;
    Ok(ChaosParams::new(x0, p)?)
}

fn cmd_compare(path: &Path, format: Format, hex: bool) -> Result<(), CliError> {
    let report = report_for(path, format, hex)?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "analyzed".to_owned());
    print!("{}", comparison_table(row_from_report(&label, &report)));
    Ok(())
}
