//! The `ripple` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification or table mismatch,
//! 3 I/O or parse failure. Everything written to stdout is deterministic;
//! notices and errors go to stderr.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::builders::{build, Function, Style, VariantSpec};
use crate::circuit::Circuit;
use crate::diagram::diagram;
use crate::lowering::lower_circuit;
use crate::oracle::{check_exhaustive, check_random};
use crate::schedule::{report, reschedule, CommutationPolicy};
use crate::table::{render_table, ReferenceTable, MIN_TABLE_WIDTH};
use crate::text::{parse, render};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "ripple",
    about = "One-ancilla ripple-carry adder circuits",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct VariantArgs {
    /// add, add-mod, high-bit, compare or subtract
    #[arg(long, value_parser = parse_function)]
    variant: Function,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    incoming_carry: bool,
}

impl VariantArgs {
    fn spec(&self) -> VariantSpec {
        VariantSpec::new(self.variant, self.n).with_incoming_carry(self.incoming_carry)
    }
}

fn parse_function(name: &str) -> Result<Function, String> {
    Function::from_name(name).ok_or_else(|| {
        let known: Vec<_> = Function::ALL.iter().map(|f| f.name()).collect();
        format!("expected one of {}", known.join(", "))
    })
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a circuit and write it in text form
    Build {
        #[command(flatten)]
        variant: VariantArgs,
        /// One Toffoli or CNOT per slice, two-CNOT UMA
        #[arg(long)]
        simple: bool,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a circuit file against the arithmetic oracle
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        variant: VariantArgs,
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0, requires = "samples")]
        seed: u64,
        /// Mismatch lines to print
        #[arg(long, default_value_t = 20)]
        max_listed: usize,
    },
    /// Print gate and slice counts
    Count {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Replace Toffolis by controlled-V networks and reschedule
    Lower {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Repack gates into moments greedily
    Schedule {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        diagonal_aware: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw the circuit
    Diagram {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Closed-form counts next to measured counts
    Table {
        #[arg(long)]
        n: usize,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn read_circuit(path: &Path) -> Result<Circuit, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| fail(EXIT_IO, format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| fail(EXIT_IO, format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| fail(EXIT_IO, format!("{}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| fail(EXIT_IO, e.to_string())),
    }
}

fn say(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    emit(out, None, text)
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Build {
            variant,
            simple,
            out: path,
        } => {
            let style = if simple {
                Style::Simple
            } else {
                Style::Optimized
            };
            let spec = variant.spec().with_style(style);
            let circuit = build(&spec).map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
            if spec.effective_style() != style {
                let _ = writeln!(
                    err,
                    "notice: optimized slicing of {} needs n >= {}; built the simple circuit",
                    spec.function,
                    spec.min_optimized_width()
                );
            }
            emit(out, path.as_deref(), &render(&circuit))?;
        }
        Command::Verify {
            input,
            variant,
            exhaustive: _,
            samples,
            seed,
            max_listed,
        } => {
            let circuit = read_circuit(&input)?;
            if !circuit.is_classical() {
                return Err(fail(
                    EXIT_USAGE,
                    "circuit contains controlled-V gates; verify needs a classical circuit",
                ));
            }
            let spec = variant.spec();
            let result = match samples {
                Some(k) => check_random(&circuit, &spec, k, seed),
                None => check_exhaustive(&circuit, &spec),
            };
            let report = result.map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
            say(out, &report.to_kv(max_listed))?;
            if !report.passed() {
                return Ok(EXIT_MISMATCH);
            }
        }
        Command::Count { input } => {
            let circuit = read_circuit(&input)?;
            say(out, &report(&circuit).to_kv())?;
        }
        Command::Lower { input, out: path } => {
            let circuit = read_circuit(&input)?;
            let lowered = lower_circuit(&circuit).map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
            if let Some(p) = path.as_deref() {
                emit(out, Some(p), &render(&lowered.circuit))?;
            }
            let summary = format!(
                "toffoli_before {}\ncnot_before {}\ncancelled_cnots {}\ntwo_qubit {}\ndepth {}\n",
                lowered.original_toffoli_count,
                lowered.original_cnot_count,
                lowered.cancelled_cnots,
                lowered.two_qubit_count(),
                lowered.lowered_depth
            );
            match path {
                Some(_) => say(out, &summary)?,
                None => {
                    say(out, &render(&lowered.circuit))?;
                    let _ = err.write_all(summary.as_bytes());
                }
            }
        }
        Command::Schedule {
            input,
            diagonal_aware,
            out: path,
        } => {
            let circuit = read_circuit(&input)?;
            let policy = if diagonal_aware {
                CommutationPolicy::DiagonalAware
            } else {
                CommutationPolicy::Disjoint
            };
            emit(out, path.as_deref(), &render(&reschedule(&circuit, policy)))?;
        }
        Command::Diagram { input } => {
            let circuit = read_circuit(&input)?;
            say(out, &diagram(&circuit))?;
        }
        Command::Table { n } => {
            if n < MIN_TABLE_WIDTH {
                return Err(fail(
                    EXIT_USAGE,
                    format!("the table is stated for n >= {MIN_TABLE_WIDTH}"),
                ));
            }
            let results = ReferenceTable::default().evaluate(n);
            say(out, &render_table(n, &results))?;
            if results.iter().any(|r| !r.matches()) {
                return Ok(EXIT_MISMATCH);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
