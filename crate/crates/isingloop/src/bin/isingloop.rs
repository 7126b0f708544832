//! Command-line front end. Exit codes: 0 success, 1 runtime/check failure,
//! 2 usage error, 3 degenerate loop where a definite answer was requested.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use isingloop::edoracle::{cross_validate, order_parameter_matrix};
use isingloop::export;
use isingloop::freefermion::{self, ChainSize};
use isingloop::loopgeo::{sample_loop, winding_number};
use isingloop::model::{preset_lookup, presets, ModelParams};
use isingloop::scan::{classify_loop, phase_diagram, sweep, SweepSpec};
use isingloop::{Error, Result};

/// Loop-based exact solver for an extended quantum Ising chain.
///
/// Couplings resolve with precedence: explicit flag > preset field > 0.
#[derive(Parser)]
#[command(name = "isingloop", version, arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// The five couplings, assembled from an optional preset plus overrides.
#[derive(Args, Clone)]
struct ParamArgs {
    /// Named starting point; list them with the `presets` subcommand.
    #[arg(long)]
    preset: Option<String>,
    /// Two-site XY coupling strength.
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    /// Three-site coupling strength.
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    /// Two-site anisotropy.
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// Three-site anisotropy.
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
    /// Transverse field.
    #[arg(long, allow_negative_numbers = true)]
    g: Option<f64>,
}

impl ParamArgs {
    fn resolve(&self) -> Result<ModelParams> {
        let mut p = match &self.preset {
            Some(name) => preset_lookup(name)?.params,
            None => ModelParams { a: 0.0, b: 0.0, gamma: 0.0, delta: 0.0, g: 0.0 },
        };
        if let Some(a) = self.a {
            p.a = a;
        }
        if let Some(b) = self.b {
            p.b = b;
        }
        if let Some(gamma) = self.gamma {
            p.gamma = gamma;
        }
        if let Some(delta) = self.delta {
            p.delta = delta;
        }
        if let Some(g) = self.g {
            p.g = g;
        }
        Ok(p)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LoopFormat {
    Csv,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PhaseFormat {
    Csv,
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the auxiliary-plane loop as CSV points or an SVG drawing.
    Loop {
        #[command(flatten)]
        params: ParamArgs,
        /// Number of samples around the loop.
        #[arg(long, default_value_t = 201)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = LoopFormat::Csv)]
        format: LoopFormat,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Winding number of the loop around the origin (exit 3 if degenerate).
    Winding {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ground-state energy: per-site density, or the total for a finite
    /// chain when --n is given.
    Energy {
        #[command(flatten)]
        params: ParamArgs,
        /// Chain length; omit for the thermodynamic limit.
        #[arg(long)]
        n: Option<usize>,
        /// Quadrature tolerance for the density.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Excitation gap: thermodynamic, or on the momentum grid of a finite
    /// chain when --n is given.
    Gap {
        #[command(flatten)]
        params: ParamArgs,
        /// Chain length; omit for the thermodynamic limit.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan one coupling over a range: energy density, derivatives, winding,
    /// and minimum loop radius per row.
    Sweep {
        #[command(flatten)]
        params: ParamArgs,
        /// Coupling to vary: a, b, gamma, delta, or g.
        #[arg(long)]
        param: String,
        #[arg(long, allow_negative_numbers = true)]
        start: f64,
        #[arg(long, allow_negative_numbers = true)]
        end: f64,
        #[arg(long, default_value_t = 201)]
        steps: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
        format: SweepFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Winding number over a two-coupling grid.
    PhaseDiagram {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        x_param: String,
        #[arg(long, allow_negative_numbers = true)]
        x_start: f64,
        #[arg(long, allow_negative_numbers = true)]
        x_end: f64,
        #[arg(long, default_value_t = 41)]
        x_steps: usize,
        #[arg(long)]
        y_param: String,
        #[arg(long, allow_negative_numbers = true)]
        y_start: f64,
        #[arg(long, allow_negative_numbers = true)]
        y_end: f64,
        #[arg(long, default_value_t = 41)]
        y_steps: usize,
        /// csv writes <out>.csv plus <out>.meta.json; json and svg emit one
        /// document.
        #[arg(long, value_enum, default_value_t = PhaseFormat::Csv)]
        format: PhaseFormat,
        /// Output file, or basename for csv format (required there).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check the closed-form energy against brute-force
    /// diagonalization on a small chain (exit 1 on residual failure).
    EdCheck {
        #[command(flatten)]
        params: ParamArgs,
        /// Chain length (even, at most 12).
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Expectation matrix of the five limit-case Hamiltonians in the five
    /// reference ground states.
    OrderMatrix {
        /// Chain length (4, 8, or 12).
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the built-in parameter presets as JSON.
    Presets {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    let text = if text.ends_with('\n') { text.to_string() } else { format!("{text}\n") };
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::DegenerateLoop { .. } => 3,
        Error::Io(_) | Error::Json(_) | Error::NoConvergence(_) => 1,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Loop { params, steps, format, out } => {
            let p = params.resolve()?;
            let samples = sample_loop(&p, steps)?;
            let text = match format {
                LoopFormat::Csv => export::loop_csv(&samples),
                LoopFormat::Svg => {
                    let label = match winding_number(&p) {
                        Ok(w) if !w.degenerate => format!("{:+}", w.number),
                        Ok(_) | Err(Error::DegenerateLoop { .. }) => "undefined".to_string(),
                        Err(e) => return Err(e),
                    };
                    export::render_loop_svg(&samples, &label)?
                }
            };
            emit(&out, &text)?;
            Ok(0)
        }
        Command::Winding { params, out } => {
            let p = params.resolve()?;
            let class = classify_loop(&p)?;
            emit(&out, &serde_json::to_string_pretty(&class)?)?;
            if class.degenerate {
                eprintln!(
                    "the loop passes through the origin (min_radius {:.3e}); \
                     no winding number exists here",
                    class.min_radius
                );
                Ok(3)
            } else {
                Ok(0)
            }
        }
        Command::Energy { params, n, tol, out } => {
            let p = params.resolve()?;
            let result = match n {
                Some(n) => freefermion::finite_ground_energy(&p, n)?,
                None => freefermion::energy_density(&p, tol)?,
            };
            emit(&out, &export::energy_json(&p, n, &result)?)?;
            Ok(0)
        }
        Command::Gap { params, n, out } => {
            let p = params.resolve()?;
            let size = match n {
                Some(n) => ChainSize::Finite(n),
                None => ChainSize::Thermodynamic,
            };
            let value = freefermion::gap(&p, size)?;
            // evaluated in closed form, no quadrature error involved
            let result =
                freefermion::EnergyResult { value, quadrature_error_estimate: 0.0 };
            emit(&out, &export::energy_json(&p, n, &result)?)?;
            Ok(0)
        }
        Command::Sweep { params, param, start, end, steps, tol, format, out } => {
            let spec = SweepSpec {
                varied: param.parse()?,
                start,
                end,
                steps,
                fixed: params.resolve()?,
                quad_tol: tol,
            };
            let rows = sweep(&spec)?;
            let text = match format {
                SweepFormat::Csv => export::sweep_csv(&rows),
                SweepFormat::Json => export::sweep_json(&rows)?,
            };
            emit(&out, &text)?;
            Ok(0)
        }
        Command::PhaseDiagram {
            params,
            x_param,
            x_start,
            x_end,
            x_steps,
            y_param,
            y_start,
            y_end,
            y_steps,
            format,
            out,
        } => {
            let fixed = params.resolve()?;
            let spec_x = SweepSpec {
                varied: x_param.parse()?,
                start: x_start,
                end: x_end,
                steps: x_steps,
                fixed,
                quad_tol: 1e-8,
            };
            let spec_y = SweepSpec {
                varied: y_param.parse()?,
                start: y_start,
                end: y_end,
                steps: y_steps,
                fixed,
                quad_tol: 1e-8,
            };
            let pd = phase_diagram(&spec_x, &spec_y)?;
            match format {
                PhaseFormat::Csv => {
                    let base = out.ok_or_else(|| {
                        Error::InvalidSweep(
                            "csv phase output writes two files; pass --out BASENAME".into(),
                        )
                    })?;
                    let base = base.as_os_str().to_string_lossy().into_owned();
                    std::fs::write(format!("{base}.csv"), export::phase_csv(&pd))?;
                    std::fs::write(
                        format!("{base}.meta.json"),
                        export::phase_sidecar_json(&pd)?,
                    )?;
                }
                PhaseFormat::Json => emit(&out, &export::phase_json(&pd)?)?,
                PhaseFormat::Svg => emit(&out, &export::render_phase_svg(&pd))?,
            }
            Ok(0)
        }
        Command::EdCheck { params, n } => {
            let p = params.resolve()?;
            let cv = cross_validate(&p, n)?;
            emit(&None, &serde_json::to_string_pretty(&cv)?)?;
            if cv.passed() {
                Ok(0)
            } else {
                eprintln!(
                    "cross-validation failed: residual {:.3e} exceeds {:.0e}",
                    cv.residual,
                    isingloop::edoracle::CROSS_VALIDATION_TOL
                );
                Ok(1)
            }
        }
        Command::OrderMatrix { n, out } => {
            let m = order_parameter_matrix(n)?;
            emit(&out, &serde_json::to_string_pretty(&m)?)?;
            Ok(0)
        }
        Command::Presets { out } => {
            emit(&out, &serde_json::to_string_pretty(presets())?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
