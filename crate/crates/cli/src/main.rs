use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use homcurve::{parse_exact, parse_float, Backend, Tolerance};
use homcurve_cli::render::render;
use homcurve_cli::{analyze, enumerate_reports, plot_svg, CliError, Depth, Options, PlotOptions};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BackendArg {
    Exact,
    Float,
}

#[derive(Parser, Debug)]
#[command(
    name = "homcurve",
    version,
    about = "Analyze binary forms and their special homogeneous curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Coefficient arithmetic.
    #[arg(long, value_enum, default_value = "exact", global = true)]
    backend: BackendArg,

    /// Tolerance of the float backend.
    #[arg(long, default_value_t = 1e-9, global = true)]
    epsilon: f64,

    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report: verdict, components, symmetries, boundary behaviour.
    Analyze {
        #[arg(allow_hyphen_values = true)]
        polynomial: String,
    },
    /// Verdict and normal form only.
    Classify {
        #[arg(allow_hyphen_values = true)]
        polynomial: String,
    },
    /// Reports for every special form of the given degree.
    Enumerate {
        #[arg(long)]
        degree: usize,
    },
    /// Draw {h = 1} as SVG (requires --out).
    Plot {
        #[arg(allow_hyphen_values = true)]
        polynomial: String,
        /// Half-width of the square viewport.
        #[arg(long, default_value_t = 3.0)]
        range: f64,
    },
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let opts = Options {
        backend: match cli.backend {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Float => Backend::Float,
        },
        epsilon: cli.epsilon,
    };
    if !(opts.epsilon > 0.0 && opts.epsilon < 1.0) {
        return Err(CliError::Unsupported(format!(
            "epsilon must lie in (0, 1), got {}",
            opts.epsilon
        )));
    }
    let out = cli.out.as_deref();
    match cli.command {
        Command::Analyze { polynomial } => {
            let report = analyze(&polynomial, &opts, Depth::Full)?;
            emit(
                &if cli.json {
                    report.to_json() + "\n"
                } else {
                    render(&report)
                },
                out,
            )
        }
        Command::Classify { polynomial } => {
            let report = analyze(&polynomial, &opts, Depth::Classify)?;
            emit(
                &if cli.json {
                    report.to_json() + "\n"
                } else {
                    render(&report)
                },
                out,
            )
        }
        Command::Enumerate { degree } => {
            let reports = enumerate_reports(degree, &opts)?;
            let text = if cli.json {
                serde_json::to_string_pretty(&reports).expect("reports always serialize") + "\n"
            } else {
                reports.iter().map(render).collect::<Vec<_>>().join("\n")
            };
            emit(&text, out)
        }
        Command::Plot { polynomial, range } => {
            let path =
                out.ok_or_else(|| CliError::Unsupported("plot needs --out <file.svg>".into()))?;
            if !(range > 0.0 && range.is_finite()) {
                return Err(CliError::Unsupported(format!(
                    "range must be positive, got {range}"
                )));
            }
            let tol = Tolerance::new(opts.epsilon);
            let popts = PlotOptions {
                range,
                ..PlotOptions::default()
            };
            let source = polynomial.replace('\u{2212}', "-");
            let plot = match opts.backend {
                Backend::Exact => {
                    let h = parse_exact(&source).map_err(|e| CliError::parse(&source, e))?;
                    h.ensure_nonzero()?;
                    plot_svg(&h, &tol, &popts)?
                }
                Backend::Float => {
                    let h = parse_float(&source).map_err(|e| CliError::parse(&source, e))?;
                    h.ensure_nonzero()?;
                    plot_svg(&h, &tol, &popts)?
                }
            };
            fs::write(path, &plot.svg).map_err(|e| CliError::io(path, e))?;
            eprintln!(
                "wrote {} ({} component groups, {} visible)",
                path.display(),
                plot.groups,
                plot.visible
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
