//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 on argument errors, 1 on runtime errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::atoms::{atoms_table, find_atom, tau_min_for_atom_with, REFERENCE_LAYERS};
use crate::clock::PhysicalConstants;
use crate::config::ConfigFile;
use crate::error::Error;
use crate::estimation::{crb_report, limit_sigma, locate_min_exact, time_marks};
use crate::measurement::{phase_povm_fisher, run_estimation, OutcomeModel, PhasePovm};
use crate::report::{emit_fig2, emit_fig4, format_value, render_svg, write_atoms_csv, write_curve_csv, write_simulation_csv};

#[derive(Debug, Parser)]
#[command(name = "gravclock", version, about = "Cramér–Rao bounds for layered optical lattice clocks")]
struct Cli {
    /// Key = value file with clock parameters and constant overrides.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal interrogation time for every catalogued species.
    AtomsTable {
        #[arg(long, default_value_t = REFERENCE_LAYERS)]
        layers: u64,
        #[arg(long)]
        g: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Optimal interrogation time for one species.
    TauMin {
        #[arg(long)]
        atom: String,
        #[arg(long)]
        layers: u64,
        #[arg(long)]
        g: Option<f64>,
    },
    /// Bound on Var[V]·N_site/c⁴ against ΔEτ/ħ.
    QfiCurve {
        #[arg(long, default_value_t = 1)]
        layers: u64,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1000)]
        points: usize,
        #[arg(long, default_value_t = 20.0)]
        a_max: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also render an SVG line plot to this path.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Monte Carlo phase estimation with the phase POVM.
    Simulate {
        /// True reduced phase; taken from --config when omitted.
        #[arg(long, allow_hyphen_values = true)]
        psi: Option<f64>,
        /// Known visibility D; taken from --config when omitted.
        #[arg(long)]
        visibility: Option<f64>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 400)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classical Fisher information of the phase POVM against the SLD bound.
    PovmFisher {
        #[arg(long)]
        visibility: f64,
        #[arg(long, default_value_t = crate::measurement::DEFAULT_RESOLUTION)]
        resolution: usize,
    },
    /// Cramér–Rao report for the clock described by --config.
    Report {
        #[arg(long)]
        tau: Option<f64>,
        #[arg(long)]
        ell: Option<u32>,
        #[arg(long)]
        n_site: Option<u64>,
        #[arg(long)]
        g: Option<f64>,
        #[arg(long, default_value_t = 4)]
        k_max: u64,
    },
}

enum CliError {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Runtime(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.into())
    }
}

type CliResult = std::result::Result<(), CliError>;

/// Parses `argv` (including the program name) and runs the command with
/// the process's stdout and stderr.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run_cli`] with explicit output streams.
pub fn run_cli_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                2
            } else {
                let _ = write!(out, "{}", e.render());
                0
            };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Runtime(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn load_config(path: Option<&Path>) -> Result<Option<ConfigFile>, CliError> {
    path.map(ConfigFile::load).transpose().map_err(CliError::from)
}

fn constants_of(cfg: Option<&ConfigFile>) -> Result<PhysicalConstants, CliError> {
    match cfg {
        Some(c) => Ok(c.constants()?),
        None => Ok(PhysicalConstants::default()),
    }
}

/// Flag, then config file, then default.
fn resolve_g(flag: Option<f64>, cfg: Option<&ConfigFile>, k: &PhysicalConstants) -> Result<f64, CliError> {
    let g = flag.or_else(|| cfg.and_then(|c| c.g)).unwrap_or(k.g_default);
    if !(g.is_finite() && g > 0.0) {
        return Err(CliError::Usage(format!("--g must be positive, got {g}")));
    }
    Ok(g)
}

fn with_output<F>(path: Option<&Path>, out: &mut dyn Write, f: F) -> CliResult
where
    F: FnOnce(&mut dyn Write) -> crate::error::Result<()>,
{
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            f(&mut w)?;
            w.flush()?;
        }
        None => f(out)?,
    }
    Ok(())
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let file = load_config(cli.config.as_deref())?;
    let file = file.as_ref();
    match cli.command {
        Command::AtomsTable { layers, g, out: path } => {
            if layers == 0 {
                return Err(CliError::Usage("--layers must be at least 1".into()));
            }
            let k = constants_of(file)?;
            let g = resolve_g(g, file, &k)?;
            let rows = atoms_table(layers, g, &k)?;
            with_output(path.as_deref(), out, |w| write_atoms_csv(w, &rows))
        }
        Command::TauMin { atom, layers, g } => {
            if layers == 0 {
                return Err(CliError::Usage("--layers must be at least 1".into()));
            }
            let spec = find_atom(&atom).map_err(|e| CliError::Usage(e.to_string()))?;
            let k = constants_of(file)?;
            let g = resolve_g(g, file, &k)?;
            let tau = tau_min_for_atom_with(spec, layers, g, &k)?;
            writeln!(out, "{} {} s ({:.1} h)", spec.name, format_value(tau), tau / 3600.0)?;
            Ok(())
        }
        Command::QfiCurve {
            layers,
            alpha,
            points,
            a_max,
            out: path,
            svg,
        } => {
            if layers == 0 || layers % 2 == 0 {
                return Err(CliError::Usage(format!("--layers must be odd and positive, got {layers}")));
            }
            if !(alpha.is_finite() && alpha > 0.0) {
                return Err(CliError::Usage(format!("--alpha must be positive, got {alpha}")));
            }
            if points < 2 || !(a_max.is_finite() && a_max > 0.0) {
                return Err(CliError::Usage("--points must be >= 2 and --a-max positive".into()));
            }
            let curve = if layers == 1 {
                emit_fig2(a_max, points)?
            } else {
                emit_fig4(layers, alpha, a_max, points)?
            };
            with_output(path.as_deref(), out, |w| write_curve_csv(w, &curve))?;
            if let Some(svg_path) = svg {
                let title = if layers == 1 {
                    "single layer".to_string()
                } else {
                    format!("{layers} layers, alpha = {alpha}")
                };
                std::fs::write(svg_path, render_svg(&curve, &title))?;
            }
            Ok(())
        }
        Command::Simulate {
            psi,
            visibility,
            samples,
            trials,
            seed,
            out: path,
        } => {
            if samples == 0 || trials == 0 {
                return Err(CliError::Usage("--samples and --trials must be positive".into()));
            }
            let clock = file.map(ConfigFile::to_clock_config).transpose()?;
            let from_clock = clock.as_ref().map(OutcomeModel::from_config);
            let psi = psi
                .or(from_clock.map(|m| m.psi()))
                .ok_or_else(|| CliError::Usage("--psi is required without --config".into()))?;
            let d = visibility.or(from_clock.map(|m| m.visibility())).unwrap_or(1.0);
            let model = OutcomeModel::new(psi, d).map_err(|e| CliError::Usage(e.to_string()))?;
            let run = run_estimation(&model, samples, trials, seed)?;

            let report: &mut dyn Write = if path.is_some() { &mut *out } else { &mut *err };
            let i_psi = phase_povm_fisher(d);
            let crb = 1.0 / (samples as f64 * i_psi);
            writeln!(
                report,
                "mse {} crb {} ratio {} circular_mean {} circular_variance {}",
                format_value(run.summary.mse),
                format_value(crb),
                format_value(run.summary.mse / crb),
                format_value(run.summary.circular_mean),
                format_value(run.summary.circular_variance)
            )?;
            if let Some(c) = clock.as_ref() {
                // local, fringe-unambiguous potential resolution: δV₀ = (ħc²/ΔEτ) δψ
                if c.a() > 0.0 {
                    let dv = c.constants.c_squared() * run.summary.mse.sqrt() / c.a();
                    writeln!(report, "sigma_v0_per_run {} m^2/s^2", format_value(dv))?;
                }
            }
            with_output(path.as_deref(), out, |w| write_simulation_csv(w, &run))
        }
        Command::PovmFisher { visibility, resolution } => {
            let model = OutcomeModel::new(0.0, visibility).map_err(|e| CliError::Usage(e.to_string()))?;
            if resolution < 2 {
                return Err(CliError::Usage("--resolution must be at least 2".into()));
            }
            let quad = PhasePovm::new(resolution).fisher_information(&model);
            let sld = visibility * visibility;
            writeln!(out, "visibility,i_psi_quadrature,i_psi_closed_form,sld_psi,ratio")?;
            let ratio = if sld > 0.0 { quad / sld } else { f64::NAN };
            writeln!(
                out,
                "{},{},{},{},{}",
                format_value(visibility),
                format_value(quad),
                format_value(phase_povm_fisher(visibility)),
                format_value(sld),
                format_value(ratio)
            )?;
            Ok(())
        }
        Command::Report {
            tau,
            ell,
            n_site,
            g,
            k_max,
        } => {
            let file = file.ok_or_else(|| CliError::Usage("report needs --config".into()))?;
            let mut cfg = file.to_clock_config()?;
            if let Some(t) = tau {
                cfg.tau = t;
            }
            if let Some(l) = ell {
                cfg.ell = l;
            }
            if let Some(n) = n_site {
                cfg.n_site = n;
            }
            if let Some(g) = g {
                cfg.g = g;
            }
            cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;

            let r = crb_report(&cfg);
            writeln!(out, "layers {}", cfg.n_layer())?;
            writeln!(out, "A {}", format_value(cfg.a()))?;
            writeln!(out, "alpha {}", format_value(cfg.alpha()))?;
            writeln!(out, "visibility {}", format_value(cfg.visibility().value()))?;
            writeln!(out, "qfi_per_atom {}", format_value(r.qfi_per_atom))?;
            writeln!(out, "var_v0_lower_over_c4 {}", format_value(r.var_v0_lower_over_c4))?;
            writeln!(out, "sigma_v0_lower {} m^2/s^2", format_value(r.sigma_v0_lower))?;
            writeln!(out, "diverged {}", r.diverged)?;
            if cfg.ell > 0 {
                let marks = time_marks(&cfg, k_max.max(1))?;
                let (tau_star, bound_star) = locate_min_exact(&cfg)?;
                let (by_dv, by_aspect) = limit_sigma(&cfg);
                let divs: Vec<String> = marks.tau_div.iter().map(|&t| format_value(t)).collect();
                writeln!(out, "tau_div {}", divs.join(" "))?;
                writeln!(out, "tau_min {} s", format_value(marks.tau_min))?;
                writeln!(out, "bound_at_tau_min_over_c4 {}", format_value(marks.bound_at_min_over_c4))?;
                writeln!(out, "tau_min_exact {} s", format_value(tau_star))?;
                writeln!(out, "bound_at_tau_min_exact_over_c4 {}", format_value(bound_star))?;
                writeln!(out, "limit_sigma_over_c2 {} {}", format_value(by_dv), format_value(by_aspect))?;
            }
            Ok(())
        }
    }
}
