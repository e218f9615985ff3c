//! `fsusy`: build fractional supersymmetric systems, verify their relations,
//! print spectra and coherent-state tables.

mod parse;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fsusy_core::constructions::{Construction, Structure, SusySystem};
use fsusy_core::spectra::{self, CLUSTER_TOLERANCE};
use fsusy_core::verifier::{
    read_suite_file, write_suite_file, CheckReport, Suite, SuiteFileEntry, SuiteName, SuiteParams, Tolerances,
    DEFAULT_TOLERANCE,
};
use fsusy_core::{Grading64, System64, C64};

use parse::{parse_complex, parse_structure};

/// Failure kinds mapped to exit statuses 1 and 2.
enum Failure {
    Checks,
    Error(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Error(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructionArg {
    Quon,
    Gwh,
    Uqsl2,
}

impl From<ConstructionArg> for Construction {
    fn from(c: ConstructionArg) -> Self {
        match c {
            ConstructionArg::Quon => Construction::Quon,
            ConstructionArg::Gwh => Construction::Gwh,
            ConstructionArg::Uqsl2 => Construction::Uqsl2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Quon,
    Gwh,
    Uqsl2,
    Cross,
}

impl From<SuiteArg> for SuiteName {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Quon => SuiteName::Quon,
            SuiteArg::Gwh => SuiteName::Gwh,
            SuiteArg::Uqsl2 => SuiteName::Uqsl2,
            SuiteArg::Cross => SuiteName::Cross,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoherentKind {
    Quon,
    Fractional,
}

#[derive(Debug, Parser)]
#[command(name = "fsusy", version, about = "Fractional supersymmetric oscillator: matrices, relation checks, spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every command.
#[derive(Debug, Args)]
struct Common {
    /// Construction: quon, gwh or uqsl2.
    #[arg(long, value_enum, default_value = "quon")]
    construction: ConstructionArg,
    /// Order of the Z_k grading.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Boson truncation (default 6k).
    #[arg(long)]
    nmax: Option<usize>,
    /// Spin of the U_q(sl_2) module (default: largest integer j with 2j+1 <= k).
    #[arg(long)]
    j: Option<usize>,
    /// gwh structure: ones, affine:c, kpoly:c0,c1,... or a K-polynomial like 1+0.5K.
    #[arg(long, default_value = "ones")]
    structure: String,
    /// Tolerance applied to every check (overrides FSUSY_TOLERANCE and structural bounds).
    #[arg(long)]
    tolerance: Option<f64>,
    /// Interior margin (ad-hoc relations and spectra).
    #[arg(long)]
    margin: Option<usize>,
    /// Output file for the data stream.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

impl Common {
    fn nmax(&self) -> usize {
        self.nmax.unwrap_or(6 * self.k)
    }

    fn j(&self) -> usize {
        self.j.unwrap_or(self.k.saturating_sub(1) / 2)
    }

    fn grading(&self) -> Result<Grading64, Failure> {
        Ok(Grading64::new(self.k)?)
    }

    fn structure(&self) -> Result<Structure<f64>, Failure> {
        Ok(parse_structure(&self.structure, &self.grading()?)?)
    }

    fn system(&self) -> Result<System64, Failure> {
        Ok(match Construction::from(self.construction) {
            Construction::Quon => SusySystem::quon(self.k, self.nmax())?,
            Construction::Gwh => SusySystem::gwh(self.k, self.nmax(), &self.structure()?)?,
            Construction::Uqsl2 => SusySystem::uqsl2(self.k, self.j())?,
        })
    }

    fn tolerances(&self) -> Result<Tolerances, Failure> {
        let default = match std::env::var("FSUSY_TOLERANCE") {
            Ok(v) => v
                .trim()
                .parse::<f64>()
                .map_err(|_| Failure::Error(format!("FSUSY_TOLERANCE is not a number: `{v}`")))?,
            Err(_) => DEFAULT_TOLERANCE,
        };
        for t in std::iter::once(default).chain(self.tolerance) {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(Failure::Error(format!("tolerance must be a finite nonnegative number, got {t}")));
            }
        }
        Ok(Tolerances {
            default,
            all: self.tolerance,
        })
    }

    /// Writes the data stream to `--out` or stdout.
    fn emit(&self, text: &str) -> CmdResult {
        match &self.out {
            Some(path) => std::fs::write(path, text)?,
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                if !text.ends_with('\n') {
                    out.write_all(b"\n")?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a system and write its operator bundle as JSON.
    Build {
        #[command(flatten)]
        common: Common,
        /// Also write one JSON file per operator into this directory.
        #[arg(long)]
        split: Option<PathBuf>,
    },
    /// Run a relation suite, a suite file, or a single relation.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Packaged suite (defaults to the construction's own suite).
        #[arg(long, value_enum)]
        suite: Option<SuiteArg>,
        /// Single relation `expr` (checked as expr = 0) or `lhs = rhs`.
        #[arg(long, conflicts_with = "suite_file")]
        relation: Option<String>,
        /// JSON list of {"relation", "margin", "tolerance"} evaluated against the suite's operators.
        #[arg(long)]
        suite_file: Option<PathBuf>,
        /// Write the selected suite as a suite file before running it.
        #[arg(long)]
        emit_suite: Option<PathBuf>,
    },
    /// Energy levels and degeneracy pattern of H on the interior.
    Spectrum {
        #[command(flatten)]
        common: Common,
        /// Number of levels in the degeneracy pattern.
        #[arg(long, default_value_t = 5)]
        levels: usize,
        /// Width within which eigenvalues count as degenerate.
        #[arg(long, default_value_t = CLUSTER_TOLERANCE)]
        cluster_tol: f64,
    },
    /// Coherent-state coefficient tables.
    Coherent {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "fractional")]
        kind: CoherentKind,
        /// z of the fractional supercoherent state, as a+bi.
        #[arg(long, default_value = "1")]
        z: String,
        /// Z of the quon coherent state, as a+bi.
        #[arg(long = "Z", default_value = "1")]
        big_z: String,
        /// Quon deformation Q.
        #[arg(long = "Q", default_value_t = 1.0, allow_negative_numbers = true)]
        deformation: f64,
        /// Highest boson index of the fractional table.
        #[arg(long, default_value_t = 10)]
        rmax: usize,
    },
}

fn cmd_build(common: &Common, split: Option<&Path>) -> CmdResult {
    let sys = common.system()?;
    let bundle = sys.to_bundle();
    if let Some(dir) = split {
        std::fs::create_dir_all(dir)?;
        for m in sys.operators() {
            m.write_json(dir.join(format!("{}.json", m.label())))?;
        }
    }
    let json = serde_json::to_string(&bundle)?;
    match (&common.out, common.format) {
        (Some(_), Format::Table) => {
            common.emit(&json)?;
            println!("{} k={} dim={}", sys.construction(), sys.k(), sys.dim());
            for label in bundle.operators.keys() {
                println!("  {label}");
            }
        }
        _ => common.emit(&json)?,
    }
    Ok(())
}

fn print_reports(common: &Common, reports: &[CheckReport]) -> CmdResult {
    match common.format {
        Format::Json => common.emit(&serde_json::to_string_pretty(reports)?)?,
        Format::Table => {
            let mut text = String::new();
            for r in reports {
                let status = match (&r.skipped, r.pass) {
                    (Some(_), _) => "SKIP",
                    (None, true) => "PASS",
                    (None, false) => "FAIL",
                };
                text.push_str(&format!(
                    "{status}  residual={:<10.3e} tol={:<8.1e} margin={:<3} {}\n",
                    r.residual, r.tolerance, r.margin, r.relation
                ));
                if let Some(why) = &r.skipped {
                    text.push_str(&format!("      {why}\n"));
                }
            }
            let passed = reports.iter().filter(|r| r.pass).count();
            text.push_str(&format!("{passed}/{} relations hold\n", reports.len()));
            common.emit(&text)?;
        }
    }
    if reports.iter().all(|r| r.pass) {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn cmd_verify(
    common: &Common,
    suite: Option<SuiteArg>,
    relation: Option<&str>,
    suite_file: Option<&Path>,
    emit_suite: Option<&Path>,
) -> CmdResult {
    let tol = common.tolerances()?;
    let name = suite.map(SuiteName::from).unwrap_or(match Construction::from(common.construction) {
        Construction::Quon => SuiteName::Quon,
        Construction::Gwh => SuiteName::Gwh,
        Construction::Uqsl2 => SuiteName::Uqsl2,
    });
    let mut params = SuiteParams::new(common.k, common.nmax()).with_j(common.j());
    if name == SuiteName::Gwh {
        params = params.with_structure(common.structure()?);
    }
    let built = Suite::build(name, &params)?;
    if let Some(path) = emit_suite {
        write_suite_file(path, &built.file_entries())?;
    }
    let reports = if let Some(text) = relation {
        let entry = SuiteFileEntry {
            relation: text.to_string(),
            margin: common.margin.unwrap_or(0),
            tolerance: DEFAULT_TOLERANCE,
        };
        built.run_file(&[entry], &tol)
    } else if let Some(path) = suite_file {
        built.run_file(&read_suite_file(path)?, &tol)
    } else {
        built.run(&tol)
    };
    print_reports(common, &reports)
}

fn cmd_spectrum(common: &Common, levels: usize, cluster_tol: f64) -> CmdResult {
    let construction = Construction::from(common.construction);
    if construction != Construction::Uqsl2 && common.nmax() < 4 * common.k {
        return Err(Failure::Error(format!(
            "nmax = {} is below 4k = {}: the interior is too small for a reliable spectrum",
            common.nmax(),
            4 * common.k
        )));
    }
    let sys = common.system()?;
    let mask = sys.mask(common.margin.unwrap_or(2 * common.k));
    let rep = spectra::spectrum(&sys.hamiltonian, &mask, cluster_tol)?;
    if levels > rep.levels.len() {
        return Err(Failure::Error(format!(
            "requested {levels} levels but only {} distinct levels lie in the interior",
            rep.levels.len()
        )));
    }
    let pattern = spectra::degeneracy_pattern(&rep, levels);
    match common.format {
        Format::Json => common.emit(&serde_json::to_string(&rep.to_json(levels))?),
        Format::Table => {
            let mut text = String::new();
            for (e, d) in &rep.levels {
                text.push_str(&format!("{e:>14.8}  x{d}\n"));
            }
            text.push_str(&format!("pattern: {pattern}\n"));
            common.emit(&text)
        }
    }
}

fn cmd_coherent(common: &Common, kind: CoherentKind, z: &str, big_z: &str, deformation: f64, rmax: usize) -> CmdResult {
    let json = match kind {
        CoherentKind::Quon => {
            let z = parse_complex(big_z)?;
            spectra::q_coherent_coeffs(z, deformation, common.nmax.unwrap_or(10))?.to_json()
        }
        CoherentKind::Fractional => {
            let z: C64 = parse_complex(z)?;
            spectra::fractional_supercoherent_coeffs(z, &common.grading()?, rmax).to_json()
        }
    };
    match common.format {
        Format::Json => common.emit(&serde_json::to_string(&json)?),
        Format::Table => {
            let mut text = String::new();
            for (r, s, re, im) in &json.coeffs {
                text.push_str(&format!("{r:>4} {s:>3}  {re:>22.15e} {im:>22.15e}\n"));
            }
            common.emit(&text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Build { common, split } => cmd_build(common, split.as_deref()),
        Command::Verify {
            common,
            suite,
            relation,
            suite_file,
            emit_suite,
        } => cmd_verify(common, *suite, relation.as_deref(), suite_file.as_deref(), emit_suite.as_deref()),
        Command::Spectrum {
            common,
            levels,
            cluster_tol,
        } => cmd_spectrum(common, *levels, *cluster_tol),
        Command::Coherent {
            common,
            kind,
            z,
            big_z,
            deformation,
            rmax,
        } => cmd_coherent(common, *kind, z, big_z, *deformation, *rmax),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
