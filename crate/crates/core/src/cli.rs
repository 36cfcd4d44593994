//! Command-line interface.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or
//! configuration error, 3 numerical failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::asymptotics::{local_log_slope, verify_tables, Fixtures};
use crate::atom_file::load_atom;
use crate::curve::Grid;
use crate::error::{Error, Result};
use crate::green::PlateKind;
use crate::output::{self, Metadata};
use crate::potentials::{Channel, Engine};
use crate::selftest::{self, run_selftest};
use crate::units::UnitSystem;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "dispersion",
    version,
    about = "Casimir-Polder and van der Waals potentials of electric, paramagnetic and diamagnetic atoms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Atom in front of a perfect mirror: all channels over a distance grid.
    Mirror(MirrorArgs),
    /// Two atoms in free space: all nine channels over a separation grid.
    Pair(PairArgs),
    /// Local log-log slope of one channel (or the total) of a computed curve.
    Slopes(SlopesArgs),
    /// Check the sign and power-law tables on built-in fixture atoms.
    Tables(TablesArgs),
    /// Run the built-in verification checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Unit system (default: si, natural for tables and selftest).
    #[arg(long)]
    pub units: Option<UnitSystem>,
    /// Relative tolerance of every quadrature, in (0, 1e-2].
    #[arg(long)]
    pub rel_tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MirrorArgs {
    #[arg(long)]
    pub atom: PathBuf,
    #[arg(long, default_value = "conducting")]
    pub plate: PlateKind,
    /// `min:max:points[:lin|geo]`, geometric by default.
    #[arg(long)]
    pub grid: Grid,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub atom: PathBuf,
    #[arg(long)]
    pub atom_b: PathBuf,
    #[arg(long)]
    pub grid: Grid,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SlopesArgs {
    #[arg(long)]
    pub atom: PathBuf,
    /// Second atom; without it the mirror geometry is used.
    #[arg(long)]
    pub atom_b: Option<PathBuf>,
    #[arg(long, default_value = "conducting")]
    pub plate: PlateKind,
    /// Geometric grid, at least 5 points.
    #[arg(long)]
    pub grid: Grid,
    /// Channel name such as `d` or `ed`; the total when absent.
    #[arg(long)]
    pub channel: Option<Channel>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    #[command(flatten)]
    pub common: Common,
    /// Replaces the diamagnetic fixture's beta_d.
    #[arg(long, hide = true, allow_hyphen_values = true)]
    pub fixture_beta_d: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[command(flatten)]
    pub common: Common,
}

enum Outcome {
    Done(String),
    CheckFailed(String),
}

fn engine(common: &Common, default_units: UnitSystem) -> Result<Engine> {
    let engine = Engine::new(common.units.unwrap_or(default_units));
    match common.rel_tol {
        Some(tol) => engine.with_rel_tol(tol),
        None => Ok(engine),
    }
}

fn render_curve(curve: &crate::curve::PotentialCurve, grid: &Grid, format: Format) -> String {
    match format {
        Format::Csv => output::curve_csv(curve, Some(grid)),
        Format::Json => output::curve_json(curve, Some(grid)),
    }
}

fn cmd_mirror(args: &MirrorArgs) -> Result<Outcome> {
    let engine = engine(&args.common, UnitSystem::SI)?;
    let atom = load_atom(&args.atom)?;
    let curve = engine.mirror_curve(&atom, args.plate, &args.grid.distances())?;
    Ok(Outcome::Done(render_curve(
        &curve,
        &args.grid,
        args.common.format,
    )))
}

fn cmd_pair(args: &PairArgs) -> Result<Outcome> {
    let engine = engine(&args.common, UnitSystem::SI)?;
    let a = load_atom(&args.atom)?;
    let b = load_atom(&args.atom_b)?;
    let curve = engine.pair_curve(&a, &b, &args.grid.distances())?;
    Ok(Outcome::Done(render_curve(
        &curve,
        &args.grid,
        args.common.format,
    )))
}

fn cmd_slopes(args: &SlopesArgs) -> Result<Outcome> {
    let engine = engine(&args.common, UnitSystem::SI)?;
    if args.grid.spacing != crate::curve::Spacing::Geometric {
        return Err(Error::Config("slopes need a geometric grid".into()));
    }
    let a = load_atom(&args.atom)?;
    let distances = args.grid.distances();
    let curve = match &args.atom_b {
        Some(path) => engine.pair_curve(&a, &load_atom(path)?, &distances)?,
        None => engine.mirror_curve(&a, args.plate, &distances)?,
    };
    let profile = local_log_slope(&curve, args.channel)?;
    let mut meta = Metadata::for_curve(&curve, Some(&args.grid));
    meta.channel = Some(args.channel.map_or("total".to_string(), |c| c.name()));
    Ok(Outcome::Done(match args.common.format {
        Format::Csv => output::slopes_csv(&profile, &meta),
        Format::Json => output::slopes_json(&profile, &meta),
    }))
}

fn cmd_tables(args: &TablesArgs) -> Result<Outcome> {
    let engine = engine(&args.common, UnitSystem::Natural)?;
    let hbar = engine.constants().hbar;
    let fixtures = match args.fixture_beta_d {
        Some(beta) => Fixtures::with_beta_d(hbar, beta)?,
        None => Fixtures::standard(hbar)?,
    };
    let report = verify_tables(&engine, &fixtures)?;
    let text = match args.common.format {
        Format::Csv => output::table_report_text(&report),
        Format::Json => {
            let meta = Metadata::new(engine.units(), engine.quadrature());
            output::table_report_json(&report, &meta)
        }
    };
    Ok(if report.all_passed() {
        Outcome::Done(text)
    } else {
        Outcome::CheckFailed(text)
    })
}

fn cmd_selftest(args: &SelftestArgs) -> Result<Outcome> {
    let engine = engine(&args.common, UnitSystem::Natural)?;
    let report = run_selftest(&engine)?;
    let text = match args.common.format {
        Format::Csv => selftest::render_text(&report),
        Format::Json => output::to_json(&report),
    };
    Ok(if report.all_passed() {
        Outcome::Done(text)
    } else {
        Outcome::CheckFailed(text)
    })
}

fn emit(text: &str, out_path: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match out_path {
        Some(path) => fs::write(path, text).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| Error::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn exit_code(err: &Error) -> i32 {
    if err.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_CONFIG
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_CONFIG
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    let (outcome, out_path) = match &cli.command {
        Command::Mirror(a) => (cmd_mirror(a), a.common.out.as_deref()),
        Command::Pair(a) => (cmd_pair(a), a.common.out.as_deref()),
        Command::Slopes(a) => (cmd_slopes(a), a.common.out.as_deref()),
        Command::Tables(a) => (cmd_tables(a), a.common.out.as_deref()),
        Command::Selftest(a) => (cmd_selftest(a), a.common.out.as_deref()),
    };
    let (text, code) = match outcome {
        Ok(Outcome::Done(text)) => (text, EXIT_OK),
        Ok(Outcome::CheckFailed(text)) => (text, EXIT_CHECK_FAILED),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    if let Err(e) = emit(&text, out_path, stdout) {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_CONFIG;
    }
    code
}
