use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use discrete_curves::cli::{self, AnalyzeOptions, CliError, CliResult, CommandOutput, WindingRule};
use discrete_curves::io::read_curve;
use discrete_curves::{FlowConfig, LineElementScheme, OffsetVariant, Sigma, VolumeCorrection};

#[derive(Parser)]
#[command(name = "dcurve", version, about = "Discrete curvature, offsets, stability and flows of polygonal curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the main data file here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the main data to stdout.
    #[arg(long)]
    stdout: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Write the regular polygon with vertices a*exp(2 pi i m k / n).
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phase: f64,
        /// Normal convention, +1 or -1.
        #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
        sigma: i32,
        #[command(flatten)]
        output: Output,
    },
    /// Per-vertex curvature table and equilibrium verdict.
    Analyze {
        input: PathBuf,
        /// Comma-separated line-element schemes, or `all`.
        #[arg(long, default_value = "all")]
        scheme: String,
        /// Multiplier for the equilibrium test; estimated when omitted.
        #[arg(long, allow_negative_numbers = true)]
        kappa: Option<f64>,
        /// Relative residual tolerance for the equilibrium test.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Write the equilibrium report as JSON here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Offset family at the given distances.
    Offset {
        input: PathBuf,
        /// Comma-separated offset distances.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        t: Vec<f64>,
        /// segment, arc or wedge.
        #[arg(long, default_value = "wedge")]
        variant: String,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Spectral stability table of regular polygons.
    Stability {
        /// A single n or an inclusive range `lo..hi`.
        #[arg(long)]
        n: String,
        /// all, convex, star or a single m.
        #[arg(long, default_value = "all")]
        m: WindingRule,
        #[command(flatten)]
        output: Output,
    },
    /// Area-preserving length descent.
    Flow {
        input: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 1)]
        record_every: usize,
        /// Skip the rescaling that restores the volume after each step.
        #[arg(long)]
        project_only: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
}

fn parse_range(s: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::input(format!("invalid n range `{s}`"));
    match s.split_once("..") {
        Some((lo, hi)) => Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?)),
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            Ok((n, n))
        }
    }
}

fn parse_schemes(s: &str) -> CliResult<Vec<LineElementScheme>> {
    if s == "all" {
        return Ok(LineElementScheme::NAMED.to_vec());
    }
    s.split(',')
        .map(|name| {
            LineElementScheme::from_name(name.trim()).ok_or_else(|| {
                CliError::input(format!(
                    "unknown scheme `{name}` (expected vertex-osculating, arclength, hatakeyama, half-edge-sum or all)"
                ))
            })
        })
        .collect()
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn emit(result: CommandOutput, output: &Output, svg: Option<&Path>, report: Option<&Path>) -> CliResult<()> {
    for message in &result.messages {
        eprintln!("{message}");
    }
    if let Some(path) = &output.out {
        write_file(path, &result.data)?;
    }
    if output.stdout {
        print!("{}", result.data);
    }
    if let (Some(path), Some(contents)) = (svg, &result.svg) {
        write_file(path, contents)?;
    }
    if let (Some(path), Some(contents)) = (report, &result.report) {
        write_file(path, contents)?;
    }
    Ok(())
}

fn require_target(output: &Output) -> CliResult<()> {
    if output.out.is_none() && !output.stdout {
        return Err(CliError::input("no output target: pass --out <path> or --stdout"));
    }
    Ok(())
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Generate { n, m, a, phase, sigma, output } => {
            require_target(&output)?;
            let sigma = Sigma::from_i32(sigma).ok_or_else(|| CliError::input(format!("--sigma must be 1 or -1, got {sigma}")))?;
            emit(cli::generate(n, m, a, phase, sigma)?, &output, None, None)
        }
        Command::Analyze { input, scheme, kappa, tol, report, output } => {
            require_target(&output)?;
            let curve = read_curve(&input)?;
            let options = AnalyzeOptions {
                schemes: parse_schemes(&scheme)?,
                kappa,
                tolerance: tol,
            };
            emit(cli::analyze(&curve, &options)?, &output, None, report.as_deref())
        }
        Command::Offset { input, t, variant, svg, output } => {
            require_target(&output)?;
            let curve = read_curve(&input)?;
            let variant = OffsetVariant::from_name(&variant)
                .ok_or_else(|| CliError::input(format!("unknown variant `{variant}` (expected segment, arc or wedge)")))?;
            emit(cli::offset(&curve, &t, variant)?, &output, svg.as_deref(), None)
        }
        Command::Stability { n, m, output } => {
            require_target(&output)?;
            let (lo, hi) = parse_range(&n)?;
            emit(cli::stability(lo, hi, m)?, &output, None, None)
        }
        Command::Flow { input, step, max_steps, tol, record_every, project_only, svg, output } => {
            require_target(&output)?;
            let curve = read_curve(&input)?;
            let config = FlowConfig {
                step_size: step,
                max_steps,
                grad_tolerance: tol,
                volume_correction: if project_only {
                    VolumeCorrection::ProjectOnly
                } else {
                    VolumeCorrection::ProjectAndRescale
                },
                record_every,
            };
            emit(cli::flow(&curve, &config)?, &output, svg.as_deref(), None)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
