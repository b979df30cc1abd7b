//! The `liaison` command line: computations on ideal files and the quadric scenarios, with
//! deterministic reports.

mod commands;
mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use liaison_core::Error;

pub use report::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "liaison", version, about = "Liaison computations for curves on quadric threefolds")]
struct Cli {
    /// Characteristic of the coefficient field (overrides ideal file headers).
    #[arg(long, global = true)]
    prime: Option<u32>,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Degree window `jmin:jmax` for Hilbert and Rao tables.
    #[arg(long, global = true, value_parser = parse_window, allow_hyphen_values = true)]
    window: Option<(i64, i64)>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert function, degree and genus.
    Hilbert { file: PathBuf },
    /// Minimal free resolution and graded Betti numbers.
    Betti { file: PathBuf },
    /// Dimensions of the Rao module `H^1_*(I_C)`.
    Rao { file: PathBuf },
    /// Liaison addition `F2·I_1 + F1·I_2 + I_X`.
    Add {
        #[arg(allow_hyphen_values = true)]
        f1: String,
        #[arg(allow_hyphen_values = true)]
        f2: String,
        ideal1: PathBuf,
        ideal2: PathBuf,
        /// Write the resulting ideal file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Residual of the ideal in the complete intersection `(F, G) + I_X`.
    Link {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        ideal: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Link a liaison addition with a licci companion back down to `C1`.
    Chain {
        #[arg(long)]
        companion: PathBuf,
        #[arg(long, default_value = "smooth-quadric")]
        scenario: String,
        /// Ideal of `C1` (default: the scenario's line).
        #[arg(long)]
        c1: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
    },
    /// Check that linking `G·I_1 + F·I_2` by `(AF, BG)` gives `A·I_1' + B·I_2'`.
    #[command(name = "verify-prop41")]
    VerifyProp41 {
        #[arg(long, default_value = "smooth-quadric")]
        scenario: String,
        #[arg(long)]
        c1: Option<PathBuf>,
        #[arg(long)]
        c2: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
    },
    /// Build one of the example curves.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Numerical invariants of a divisor class on a surface.
    Divisor {
        /// `q:(a,b)`, `dp:(d;m1,m2,m3,m4,m5)` or `sc:(a;b)`.
        class: String,
        /// Also report the class `C + kH`.
        #[arg(long, allow_hyphen_values = true)]
        step: Option<i64>,
    },
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// The curve `C_{0,a2,...,ar}` on the smooth quadric.
    C0 {
        /// Comma-separated `a2,...,ar`; empty for the line.
        #[arg(long, default_value = "")]
        a: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plane curves of degrees `d` and `e` through the vertex of the singular quadric.
    VertexUnion {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A plane curve of degree `d - 1` and a disjoint line.
    MinimalRao {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value = "singular-quadric")]
        scenario: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or("expected jmin:jmax")?;
    let a: i64 = a.trim().parse().map_err(|_| format!("bad jmin {a:?}"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad jmax {b:?}"))?;
    if a > b {
        return Err("jmin exceeds jmax".into());
    }
    Ok((a, b))
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Input problems exit with 2; failed or inconclusive computations with 1.
fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Verification(_) | Error::RetriesExhausted { .. } | Error::SaturationCap(_) => EXIT_VERIFICATION,
        _ => EXIT_USAGE,
    }
}

/// Runs one invocation; `argv[0]` is the program name. Returns the exit code and the output.
pub fn run_command<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (EXIT_OK, e.to_string()),
                _ => {
                    let msg = e.to_string();
                    let first = msg.lines().next().unwrap_or("usage error").to_string();
                    (EXIT_USAGE, format!("{first}\n"))
                }
            };
        }
    };
    let mut report = Report::default();
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    report.text("command", echo.join(" "));
    report.int("seed", cli.seed as i64);
    let format = cli.format;
    match commands::dispatch(&cli, &mut report) {
        Ok(()) => {
            let code = if report.passed() { EXIT_OK } else { EXIT_VERIFICATION };
            (code, report.render(format))
        }
        Err(e) => {
            let code = exit_code_for(&e);
            if code == EXIT_USAGE {
                (code, format!("error: {e}\n"))
            } else {
                report.fail("error", e.to_string());
                (code, report.render(format))
            }
        }
    }
}
