//! `cfid` command line: analyze, simulate, verify and fixture.
//!
//! Exit codes: 0 success, 1 validation error (including a failed
//! verification), 2 I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::full_report;
use crate::channel::{
    average_fidelity_from_process, average_fidelity_mc, sample_counts, truth_table,
    verify_identities,
};
use crate::error::{Error, Result};
use crate::fixture;
use crate::gatelib::{basis_family, BasisKind};
use crate::iofmt::{
    emit_count_table, emit_report, emit_truth_table, parse_model, parse_truth_table,
};
use crate::iofmt::{ReportFormat, TableFormat};

/// Tolerance on the algebraic identities checked by `verify`.
pub const ALGEBRAIC_TOLERANCE: f64 = 1e-9;
/// Monte-Carlo agreement is required within this many standard errors.
pub const MC_SIGMAS: f64 = 3.0;
/// Absolute floor added to the Monte-Carlo window so an exactly-known
/// average (zero spread) is not failed by rounding.
pub const MC_FLOOR: f64 = 1e-12;

#[derive(Parser, Debug)]
#[command(
    name = "cfid",
    version,
    about = "Controlled-NOT fidelity bounds from complementary truth tables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bound the process fidelity and derived fidelities from Z and X tables.
    Analyze {
        #[arg(long)]
        z_table: PathBuf,
        #[arg(long)]
        x_table: PathBuf,
        /// Separable-state overlap of the entanglement witness (1/M).
        #[arg(long, default_value_t = 0.5)]
        b: f64,
        /// Write the full report here (JSON, or markdown with --markdown).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        markdown: bool,
    },
    /// Simulate a noise model on one input family.
    Simulate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum)]
        basis: BasisArg,
        /// Draw this many shots per input instead of exact probabilities.
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Check the simulator identities and the average-fidelity relation.
    Verify {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        mc_samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write the bundled measurement tables and example models.
    Fixture {
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    Z,
    X,
    Zx,
    Xz,
    Bell,
}

impl From<BasisArg> for BasisKind {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::Z => BasisKind::ZProduct,
            BasisArg::X => BasisKind::XProduct,
            BasisArg::Zx => BasisKind::ZxEigen,
            BasisArg::Xz => BasisKind::XzEigen,
            BasisArg::Bell => BasisKind::Bell,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for TableFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => TableFormat::Json,
            FormatArg::Csv => TableFormat::Csv,
        }
    }
}

/// Runs with the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_io() {
                2
            } else {
                1
            }
        }
    }
}

fn table_format(path: &Path) -> TableFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("csv") => TableFormat::Csv,
        _ => TableFormat::Json,
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn emit(bytes: &[u8], dest: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match dest {
        Some(path) => std::fs::write(path, bytes)?,
        None => out.write_all(bytes)?,
    }
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Analyze {
            z_table,
            x_table,
            b,
            out: dest,
            markdown,
        } => {
            let z = parse_truth_table(&read(&z_table)?, table_format(&z_table))?;
            let x = parse_truth_table(&read(&x_table)?, table_format(&x_table))?;
            let report = full_report(&z, &x, b)?;
            let format = if markdown {
                ReportFormat::Markdown
            } else {
                ReportFormat::Json
            };
            match dest {
                Some(path) => {
                    std::fs::write(&path, emit_report(&report, format))?;
                    out.write_all(&emit_report(&report, ReportFormat::Text))?;
                }
                None if markdown => out.write_all(&emit_report(&report, ReportFormat::Markdown))?,
                None => out.write_all(&emit_report(&report, ReportFormat::Text))?,
            }
            Ok(0)
        }
        Command::Simulate {
            model,
            basis,
            shots,
            seed,
            out: dest,
            format,
        } => {
            let model = parse_model(&read(&model)?)?;
            let table = truth_table(&model, &basis_family(basis.into()))?;
            let bytes = match shots {
                Some(n) => emit_count_table(&sample_counts(&table, n, seed)?, format.into()),
                None => emit_truth_table(&table, format.into()),
            };
            emit(&bytes, dest.as_deref(), out)?;
            Ok(0)
        }
        Command::Verify {
            model,
            mc_samples,
            seed,
        } => {
            let model = parse_model(&read(&model)?)?;
            let r = verify_identities(&model)?;
            let mc = average_fidelity_mc(&model, mc_samples, seed)?;
            let expected = average_fidelity_from_process(r.f_qp_chi, model.dim());
            let mc_dev = (mc.mean - expected).abs();
            let mc_ok = mc_dev <= MC_SIGMAS * mc.stderr + MC_FLOOR;
            let alg_ok = r.max() <= ALGEBRAIC_TOLERANCE;

            writeln!(
                out,
                "F_Z       table {:.12}  chi {:.12}  residual {:.3e}",
                r.f_z_table, r.f_z_chi, r.f_z
            )?;
            writeln!(
                out,
                "F_X       table {:.12}  chi {:.12}  residual {:.3e}",
                r.f_x_table, r.f_x_chi, r.f_x
            )?;
            writeln!(out, "sum rule  residual {:.3e}", r.sum_rule)?;
            writeln!(
                out,
                "F_qp      reconstruction residual {:.3e}",
                r.reconstruction
            )?;
            writeln!(
                out,
                "choi      {:.12}  chi_II,II {:.12}  residual {:.3e}",
                r.choi, r.f_qp_chi, r.choi_vs_chi
            )?;
            writeln!(
                out,
                "identities: max residual {:.3e} (tolerance {:.0e}) {}",
                r.max(),
                ALGEBRAIC_TOLERANCE,
                if alg_ok { "ok" } else { "FAIL" }
            )?;
            writeln!(
                out,
                "average fidelity: {:.6} +- {:.6} over {} samples, expected {:.6}, deviation {:.2} stderr {}",
                mc.mean,
                mc.stderr,
                mc.samples,
                expected,
                if mc.stderr > 0.0 { mc_dev / mc.stderr } else { 0.0 },
                if mc_ok { "ok" } else { "FAIL" }
            )?;
            Ok(if alg_ok && mc_ok { 0 } else { 1 })
        }
        Command::Fixture { dir } => {
            std::fs::create_dir_all(&dir)?;
            for (name, contents) in fixture::FILES {
                let path = dir.join(name);
                std::fs::write(&path, contents)?;
                writeln!(out, "wrote {}", path.display())?;
            }
            Ok(0)
        }
    }
}
