//! The `congruence` command-line tool.
//!
//! Exit codes: 0 on success, 1 when a verification or scan finds a
//! violation, 2 on usage and bounds errors.

mod commands;
pub mod record;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use congruence_core::{ExponentVariant, Family, GuardHandling, Span};

pub use record::{parse_csv, parse_jsonl, Emitter, FlatRecord, Format, OutputRecord, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "congruence",
    version,
    about = "Reduced residue products, iterated-gcd chains and congruence sweeps"
)]
pub struct Cli {
    /// Output format for records.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write records to FILE; summaries still go to standard output.
    #[arg(long, value_name = "FILE", global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Membership of m in the primitive-root class and its Gauss sign.
    Classify(ModulusArg),
    /// The reduced residue system of m and φ(m).
    Residues(ModulusArg),
    /// L(x, m) next to its predicted value.
    #[command(name = "L")]
    L(PointArgs),
    /// The predicted value of L(x, m) and the split it comes from.
    Predict(PointArgs),
    /// The iterated-gcd chain of (x, m).
    Chain(PointArgs),
    /// Evaluate one theorem at one point.
    Verify(VerifyArgs),
    /// Sweep a theorem over a parameter rectangle.
    Scan(ScanArgs),
    /// Run the brute-force oracle and lemma suites.
    Selfcheck,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ModulusArg {
    #[arg(value_name = "M", required_unless_present = "m")]
    pub modulus: Option<i64>,
    #[arg(long, conflicts_with = "modulus")]
    pub m: Option<i64>,
}

impl ModulusArg {
    fn value(&self) -> i64 {
        self.modulus.or(self.m).expect("clap enforces presence")
    }
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct PointArgs {
    #[arg(long)]
    pub x: i64,
    #[arg(long)]
    pub m: i64,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: congruence_core::Error| e.to_string())
}

fn parse_variant(s: &str) -> Result<ExponentVariant, String> {
    s.parse().map_err(|e: congruence_core::Error| e.to_string())
}

fn parse_guard(s: &str) -> Result<GuardHandling, String> {
    match s {
        "respect" => Ok(GuardHandling::Respect),
        "include" => Ok(GuardHandling::Include),
        _ => Err(format!("unknown guard handling `{s}` (respect|include)")),
    }
}

fn parse_span(s: &str) -> Result<Span, String> {
    s.parse().map_err(|e: congruence_core::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct TheoremSelect {
    /// gauss, l-theorems, euler-gen, lagrange-ext, moser, fermat-wilson, leibniz
    #[arg(value_name = "THEOREM", value_parser = parse_family, required_unless_present = "theorem")]
    pub theorem_pos: Option<Family>,
    #[arg(long, value_parser = parse_family, conflicts_with = "theorem_pos")]
    pub theorem: Option<Family>,
}

impl TheoremSelect {
    fn family(&self) -> Family {
        self.theorem_pos
            .or(self.theorem)
            .expect("clap enforces presence")
    }
}

#[derive(Debug, Args)]
pub struct VariantArgs {
    /// Exponent used by the Moser/Sierpinski forms.
    #[arg(long, value_parser = parse_variant, default_value = "chain-phi")]
    pub variant: ExponentVariant,
    /// Skip (respect) or evaluate (include) points the hypotheses exclude.
    #[arg(long, value_parser = parse_guard, default_value = "respect")]
    pub guard: GuardHandling,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub select: TheoremSelect,
    #[arg(long)]
    pub m: i64,
    #[arg(long)]
    pub x: Option<i64>,
    #[arg(long)]
    pub a: Option<i64>,
    #[command(flatten)]
    pub variant: VariantArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub select: TheoremSelect,
    /// Inclusive modulus range, e.g. `2..3000`.
    #[arg(long = "m-range", visible_alias = "m", value_parser = parse_span, allow_hyphen_values = true)]
    pub m_range: Span,
    /// x values; bounds may refer to m, e.g. `0..m-1` or `0,1,5`.
    #[arg(long = "x-range", visible_alias = "x", value_parser = parse_span, allow_hyphen_values = true)]
    pub x_range: Option<Span>,
    /// a values; bounds may refer to m.
    #[arg(long = "a-range", visible_alias = "a", value_parser = parse_span, allow_hyphen_values = true)]
    pub a_range: Option<Span>,
    #[command(flatten)]
    pub variant: VariantArgs,
    /// Worker threads (default: available processors).
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Emit every evaluated report and excluded point, not only violations.
    #[arg(long)]
    pub all: bool,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match commands::execute(&cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}
