//! Command-line front end: `bubres minnaert|coated|sweep --config <path>`.
//!
//! Exit codes are 0 on success, 2 for configuration errors and 3 for
//! numerical failures.

mod config;
mod records;

pub use config::{
    with_delta, MethodChoice, PhysicsSpec, RunConfig, ShapeSpec, Spacing, SweepSpec, SweepVariable, DEFAULT_N,
};
pub use records::{read_csv, write_csv, CsvMeta, Reference, SweepRecord, HEADER};

use crate::geometry::DiscreteBoundary;
use crate::layerpot::{spectral_quantities, SpectralQuantities};
use crate::resonance::{
    assemble_coated_system, assemble_uncoated_system, bem_resonance, coated_shift, minnaert_uncoated,
    multipole_resonance, seeds_around, PhysicalConfig, ResonanceResult,
};
use crate::rootfind::CharOptions;
use crate::{Error, C64};
use clap::{Args, Parser, Subcommand};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "bubres", version, about = "Minnaert resonances of coated 2D bubbles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Uncoated resonance.
    Minnaert(CommonArgs),
    /// Resonance of the coated bubble at the configured `epsilon`.
    Coated(CommonArgs),
    /// Sweep over `eps` or `delta`; writes a CSV and a gnuplot script.
    Sweep(CommonArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// JSON run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Output CSV (overrides `output` in the config).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Overrides `method` in the config.
    #[arg(long, value_enum)]
    pub method: Option<MethodChoice>,
    /// Write the boundary element matrix at each computed root.
    #[arg(long)]
    pub dump_matrices: bool,
}

/// Failure of a command.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

fn numerical(e: Error) -> CliError {
    CliError::Numerical(e.to_string())
}

fn config_err(e: impl std::fmt::Display) -> CliError {
    CliError::Config(e.to_string())
}

/// Runs a parsed command line, printing the report or the error, and
/// returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let out = match &cli.command {
        Command::Minnaert(a) => load(a).and_then(|c| cmd_minnaert(&c, a)),
        Command::Coated(a) => load(a).and_then(|c| cmd_coated(&c, a)),
        Command::Sweep(a) => load(a).and_then(|c| cmd_sweep(&c, a)),
    };
    match out {
        Ok(report) => {
            print!("{report}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Reads and parses the config named in `args`, applying the `--method`
/// override.
pub fn load(args: &CommonArgs) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", args.config.display())))?;
    let mut c = RunConfig::from_json(&text).map_err(CliError::Config)?;
    if let Some(m) = args.method {
        c.method = m;
    }
    Ok(c)
}

fn fmt_c(z: C64) -> String {
    format!("{:.10e} {} {:.10e}i", z.re, if z.im < 0.0 { '-' } else { '+' }, z.im.abs())
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}

struct Setup {
    cfg: PhysicalConfig,
    boundary: DiscreteBoundary,
    q: SpectralQuantities,
    radius: Option<f64>,
    opts: CharOptions,
}

fn setup(c: &RunConfig) -> Result<Setup, CliError> {
    let cfg = c.physics.config().map_err(config_err)?;
    let boundary = c.shape.boundary().map_err(config_err)?;
    let q = spectral_quantities(&boundary).map_err(numerical)?;
    let opts = CharOptions { mode: c.char_mode, tolerances: c.tolerances, parallel: false };
    Ok(Setup { cfg, boundary, q, radius: c.shape.circle_radius(), opts })
}

fn out_path(c: &RunConfig, args: &CommonArgs) -> Option<PathBuf> {
    args.out.clone().or_else(|| c.output.as_ref().map(PathBuf::from))
}

fn dump_matrix(base: &Path, tag: &str, m: &faer::Mat<C64>) -> Result<PathBuf, CliError> {
    let path = base.with_extension(format!("{tag}.csv"));
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(&path)
        .map_err(config_err)?;
    w.write_record(["row", "col", "re", "im"]).map_err(config_err)?;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let z = m[(i, j)];
            let row = [i.to_string(), j.to_string(), format!("{:.16e}", z.re), format!("{:.16e}", z.im)];
            w.write_record(&row).map_err(config_err)?;
        }
    }
    w.flush().map_err(config_err)?;
    Ok(path)
}

struct Solved {
    multipole: Option<ResonanceResult>,
    bem: Option<ResonanceResult>,
}

fn reference_of(s: &Solved) -> (Reference, Option<C64>) {
    if let Some(m) = &s.multipole {
        (Reference::Multipole, Some(m.omega))
    } else if let Some(b) = &s.bem {
        (Reference::Bem, Some(b.omega))
    } else {
        (Reference::None, None)
    }
}

fn solve_reference(
    c: &RunConfig,
    s: &Setup,
    cfg: &PhysicalConfig,
    eps: f64,
    mp_seed: C64,
    bem_seed: C64,
) -> Result<Solved, CliError> {
    let multipole = match s.radius {
        Some(r) if c.method.multipole() => Some(multipole_resonance(r, eps, cfg, seeds_around(mp_seed)).map_err(numerical)?),
        _ => None,
    };
    let bem = if c.method.bem() {
        Some(bem_resonance(&s.boundary, cfg, eps, seeds_around(bem_seed), s.opts).map_err(numerical)?)
    } else {
        None
    };
    Ok(Solved { multipole, bem })
}

fn report_line(out: &mut String, label: &str, r: &ResonanceResult) {
    let _ = writeln!(out, "{label:<22} = {}   (residual {:.2e}, {} iterations)", fmt_c(r.omega), r.residual, r.iterations);
}

fn single_record(param: f64, wm: C64, formula: C64, solved: &Solved) -> (Reference, SweepRecord) {
    let (reference, rv) = reference_of(solved);
    let rec = SweepRecord {
        param,
        omega_m: Some(wm),
        omega_formula: Some(formula),
        omega_multipole: solved.multipole.as_ref().map(|r| r.omega),
        omega_bem: solved.bem.as_ref().map(|r| r.omega),
        relative_error: rv.map(|v| rel(formula, v)),
        status: "ok".into(),
    };
    (reference, rec)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    c: &RunConfig,
    args: &CommonArgs,
    s: &Setup,
    eps: f64,
    variable: &str,
    rec: SweepRecord,
    reference: Reference,
    solved: &Solved,
    mut out: String,
) -> Result<String, CliError> {
    let base = out_path(c, args);
    if let Some(p) = &base {
        let f = std::fs::File::create(p).map_err(|e| config_err(format!("cannot write {}: {e}", p.display())))?;
        write_csv(std::io::BufWriter::new(f), variable, reference, &c.hash(), &[rec]).map_err(config_err)?;
        let _ = writeln!(out, "wrote {}", p.display());
    }
    if args.dump_matrices {
        if let Some(b) = &solved.bem {
            let base = base.unwrap_or_else(|| PathBuf::from("bubres"));
            let (tag, m) = if eps == 0.0 {
                ("M0", assemble_uncoated_system(b.omega, &s.boundary, &s.cfg))
            } else {
                ("A", assemble_coated_system(b.omega, &s.boundary, eps, &s.cfg))
            };
            let p = dump_matrix(&base, tag, &m.map_err(numerical)?)?;
            let _ = writeln!(out, "wrote {}", p.display());
        } else {
            log::warn!("--dump-matrices has no effect without a boundary element solve");
        }
    }
    Ok(out)
}

/// Uncoated resonance from the Minnaert equation, with the multipole
/// and/or boundary element solution as selected.
pub fn cmd_minnaert(c: &RunConfig, args: &CommonArgs) -> Result<String, CliError> {
    if c.epsilon.is_some() {
        return Err(CliError::Config("`minnaert` takes no `epsilon`; use `coated`".into()));
    }
    let s = setup(c)?;
    let wm = minnaert_uncoated(&s.q, &s.cfg).map_err(numerical)?;
    let solved = solve_reference(c, &s, &s.cfg, 0.0, wm.omega, wm.omega)?;
    let mut out = String::new();
    report_line(&mut out, "omega_M (formula)", &wm);
    if let Some(r) = &solved.multipole {
        report_line(&mut out, "omega (multipole)", r);
    }
    if let Some(r) = &solved.bem {
        report_line(&mut out, "omega (bem)", r);
    }
    let (reference, rec) = single_record(0.0, wm.omega, wm.omega, &solved);
    if let Some(e) = rec.relative_error {
        let _ = writeln!(out, "relative gap vs {:<6} = {e:.6e}", reference.as_str());
    }
    finish(c, args, &s, 0.0, "minnaert", rec, reference, &solved, out)
}

/// Coated resonance at the configured thickness.
pub fn cmd_coated(c: &RunConfig, args: &CommonArgs) -> Result<String, CliError> {
    let eps = c.epsilon.ok_or_else(|| CliError::Config("`coated` needs `epsilon`".into()))?;
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(CliError::Config(format!("epsilon must be finite and non-negative, got {eps}")));
    }
    let s = setup(c)?;
    let wm = minnaert_uncoated(&s.q, &s.cfg).map_err(numerical)?;
    let we = coated_shift(wm.omega, &s.q, &s.cfg, eps).map_err(numerical)?;
    let solved = solve_reference(c, &s, &s.cfg, eps, we.omega, we.omega)?;
    let mut out = String::new();
    report_line(&mut out, "omega_M (formula)", &wm);
    report_line(&mut out, "omega_eps (formula)", &we);
    let _ = writeln!(out, "{:<22} = {}", "shift (formula)", fmt_c(we.omega - wm.omega));
    if let Some(r) = &solved.multipole {
        report_line(&mut out, "omega_eps (multipole)", r);
    }
    if let Some(r) = &solved.bem {
        report_line(&mut out, "omega_eps (bem)", r);
    }
    let (reference, rec) = single_record(eps, wm.omega, we.omega, &solved);
    if let Some(e) = rec.relative_error {
        let _ = writeln!(out, "relative error vs {:<6} = {e:.6e}", reference.as_str());
    }
    finish(c, args, &s, eps, "eps", rec, reference, &solved, out)
}

/// gnuplot script for a sweep CSV: `Re omega` against `eps`, or a log-log
/// relative error against `delta`.
pub fn plot_script(csv_name: &str, variable: SweepVariable, reference: Reference) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator ','\nset datafile missing ''\n");
    match variable {
        SweepVariable::Eps => {
            let png = Path::new(csv_name).with_extension("png");
            let _ = writeln!(s, "set terminal pngcairo size 800,600\nset output '{}'", png.display());
            s.push_str("set xlabel 'epsilon'\nset ylabel 'Re omega'\nset key left top\n");
            let _ = write!(s, "plot '{csv_name}' skip 2 using 1:4 with linespoints title 'formula'");
            let _ = write!(s, ", \\\n     '' skip 2 using 1:6 with linespoints title 'multipole'");
            let _ = writeln!(s, ", \\\n     '' skip 2 using 1:8 with linespoints title 'bem'");
        }
        SweepVariable::Delta => {
            let png = Path::new(csv_name).with_extension("png");
            let _ = writeln!(s, "set terminal pngcairo size 800,600\nset output '{}'", png.display());
            let _ = writeln!(s, "set logscale xy\nset xlabel 'delta'\nset ylabel 'relative error vs {}'", reference.as_str());
            let _ = writeln!(s, "plot '{csv_name}' skip 2 using 1:10 with linespoints notitle");
        }
    }
    s
}

/// Sweep over the configured grid; writes the CSV and the plot script.
/// On a failed point the rows so far and a failure row are written and the
/// command reports a numerical failure.
pub fn cmd_sweep(c: &RunConfig, args: &CommonArgs) -> Result<String, CliError> {
    let spec = c.sweep.as_ref().ok_or_else(|| CliError::Config("`sweep` needs a `sweep` section".into()))?;
    let grid = spec.grid().map_err(CliError::Config)?;
    let path = out_path(c, args).unwrap_or_else(|| PathBuf::from("sweep.csv"));
    let s = setup(c)?;
    let mut records = Vec::with_capacity(grid.len());
    let mut reference = Reference::None;
    let mut failure = None;
    let mut prev: Option<(Option<C64>, Option<C64>)> = None;
    let eps_fixed = c.epsilon.unwrap_or(0.0);
    if spec.variable == SweepVariable::Delta && !(eps_fixed.is_finite() && eps_fixed >= 0.0) {
        return Err(CliError::Config(format!("epsilon must be finite and non-negative, got {eps_fixed}")));
    }
    let wm_fixed = match spec.variable {
        SweepVariable::Eps => Some(minnaert_uncoated(&s.q, &s.cfg).map_err(numerical)?.omega),
        SweepVariable::Delta => None,
    };
    for &p in &grid {
        let point = (|| -> Result<(SweepRecord, Reference, Solved), CliError> {
            let (cfg, eps, wm) = match spec.variable {
                SweepVariable::Eps => (s.cfg, p, wm_fixed.unwrap()),
                SweepVariable::Delta => {
                    let cfg = with_delta(&s.cfg, p).map_err(config_err)?;
                    let wm = minnaert_uncoated(&s.q, &cfg).map_err(numerical)?.omega;
                    (cfg, eps_fixed, wm)
                }
            };
            let formula = coated_shift(wm, &s.q, &cfg, eps).map_err(numerical)?.omega;
            let (mp_seed, bem_seed) = match (spec.variable, prev) {
                (SweepVariable::Eps, Some((m, b))) => (m.unwrap_or(formula), b.unwrap_or(formula)),
                _ => (formula, formula),
            };
            let solved = solve_reference(c, &s, &cfg, eps, mp_seed, bem_seed)?;
            let (r, mut rec) = single_record(p, wm, formula, &solved);
            rec.param = p;
            Ok((rec, r, solved))
        })();
        match point {
            Ok((rec, r, solved)) => {
                reference = r;
                prev = Some((solved.multipole.map(|x| x.omega), solved.bem.map(|x| x.omega)));
                log::info!("{p:e}: formula {}", fmt_c(rec.omega_formula.unwrap_or_default()));
                records.push(rec);
            }
            Err(e) => {
                records.push(SweepRecord::failed(p, &e.to_string()));
                failure = Some(e);
                break;
            }
        }
    }
    let variable = match spec.variable {
        SweepVariable::Eps => "eps",
        SweepVariable::Delta => "delta",
    };
    let f = std::fs::File::create(&path).map_err(|e| config_err(format!("cannot write {}: {e}", path.display())))?;
    write_csv(std::io::BufWriter::new(f), variable, reference, &c.hash(), &records).map_err(config_err)?;
    let gp = path.with_extension("gp");
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    std::fs::write(&gp, plot_script(&name, spec.variable, reference)).map_err(config_err)?;
    if let Some(e) = failure {
        return Err(e);
    }
    if args.dump_matrices {
        log::warn!("--dump-matrices is ignored by `sweep`");
    }
    let mut out = String::new();
    let _ = writeln!(out, "{:>12}  {:>40}  {:>14}", variable, "omega (formula)", "rel. error");
    for r in &records {
        let e = r.relative_error.map(|e| format!("{e:.6e}")).unwrap_or_else(|| "-".into());
        let _ = writeln!(out, "{:>12.6e}  {:>40}  {:>14}", r.param, fmt_c(r.omega_formula.unwrap()), e);
    }
    let _ = writeln!(out, "wrote {} and {}", path.display(), gp.display());
    Ok(out)
}
