//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when an identity fails to verify, 2 on any
//! usage error (bad flags, malformed rationals, unknown families, trivial or
//! excluded parameters).

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufRead, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::arith::Rational;
use crate::construct::build_tuple;
use crate::enumerate::{enumerate_perfect, enumerate_super_perfect, prime_filter, EnumerationReport};
use crate::error::Error;
use crate::families::{discover, DiscoverConfig, FamilyName, FamilySpec};
use crate::identity::{classify, verify_tuple, AnyIdentity, IdentityTuple};
use crate::render::{render_json, render_latex, render_text};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the worker count of parallel commands.
pub const THREADS_ENV: &str = "RAMID_THREADS";

fn rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

fn int_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("range {s:?} must look like LO:HI"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

#[derive(Parser, Debug)]
#[command(name = "ramid", version, about = "Exact Ramanujan-type product identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify and classify a tuple (t, A, x, y, z).
    #[command(allow_negative_numbers = true)]
    Verify(VerifyArgs),
    /// Build (x, y) from (t, A, z, k) and report every side condition.
    #[command(allow_negative_numbers = true)]
    Solve(SolveArgs),
    /// Exhaustively list perfect or super-perfect identities.
    Enumerate(EnumerateArgs),
    /// Generate a member of a parametric family.
    #[command(allow_negative_numbers = true)]
    Family(FamilyArgs),
    /// Seeded random search for identities with a fixed t.
    #[command(allow_negative_numbers = true)]
    Discover(DiscoverArgs),
    /// Render identity JSON read from standard input.
    Render(RenderArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// The five values t A x y z, as an alternative to the flags.
    #[arg(value_parser = rational, num_args = 5, allow_hyphen_values = true, conflicts_with_all = ["t", "a", "x", "y", "z"])]
    values: Vec<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    t: Option<Rational>,
    #[arg(long = "A", id = "a", value_parser = rational, allow_hyphen_values = true)]
    a: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    x: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    y: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    z: Option<Rational>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    t: Rational,
    #[arg(long = "A", id = "a", value_parser = rational, allow_hyphen_values = true)]
    a: Rational,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    z: Rational,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    k: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EnumClass {
    SuperPerfect,
    Perfect,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long, value_enum)]
    class: EnumClass,
    /// Keep only identities whose A, x, y, z are all prime.
    #[arg(long)]
    primes_only: bool,
    /// JSON-lines output file (standard output when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Summary JSON file. Defaults to `<out>.summary.json` when --out is
    /// given, otherwise the summary goes to standard error.
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Latex,
    Text,
    Json,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// rebak | rebak-variant | general-infinite | long-identity | surd-high | surd-low
    name: String,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    a: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    k: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    b: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    n: Option<Rational>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct DiscoverArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    trials: u64,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    t: Rational,
    /// Inclusive range LO:HI for A.
    #[arg(long = "A-range", value_parser = int_range, allow_hyphen_values = true)]
    a_range: Option<RangeInclusive<i64>>,
    #[arg(long, value_parser = int_range, allow_hyphen_values = true)]
    z_range: Option<RangeInclusive<i64>>,
    #[arg(long, value_parser = int_range, allow_hyphen_values = true)]
    k_num_range: Option<RangeInclusive<i64>>,
    #[arg(long, value_parser = int_range, allow_hyphen_values = true)]
    k_den_range: Option<RangeInclusive<i64>>,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[arg(long, value_enum)]
    format: Format,
    /// Render identities that do not verify.
    #[arg(long)]
    unchecked: bool,
}

/// Why a command stopped early.
enum Failure {
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(format!("invalid identity JSON: {e}"))
    }
}

type CmdResult = Result<i32, Failure>;

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{text}");
                EXIT_OK
            } else {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            };
        }
    };
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(a, out),
        Command::Solve(a) => cmd_solve(a, out),
        Command::Enumerate(a) => cmd_enumerate(a, out, err),
        Command::Family(a) => cmd_family(a, out),
        Command::Discover(a) => cmd_discover(a, out),
        Command::Render(a) => cmd_render(a, stdin, out, err),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::Usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start worker pool: {e}")))
}

fn cmd_verify(args: VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let [t, a, x, y, z] = if args.values.is_empty() {
        let missing = |name: &str| Failure::Usage(format!("missing --{name} (or give five positional values)"));
        [
            args.t.ok_or_else(|| missing("t"))?,
            args.a.ok_or_else(|| missing("A"))?,
            args.x.ok_or_else(|| missing("x"))?,
            args.y.ok_or_else(|| missing("y"))?,
            args.z.ok_or_else(|| missing("z"))?,
        ]
    } else {
        args.values
            .try_into()
            .map_err(|_| Failure::Usage("expected exactly five values".into()))?
    };
    let id = IdentityTuple::new(t, a, x, y, z)?;
    let verified = verify_tuple(&id);
    let class = verified.then(|| classify(&id)).transpose()?;
    let mut value = serde_json::to_value(&id)?;
    value["verified"] = json!(verified);
    value["class"] = json!(class);
    writeln!(out, "{value}")?;
    Ok(if verified { EXIT_OK } else { EXIT_FALSE })
}

fn cmd_solve(args: SolveArgs, out: &mut dyn Write) -> CmdResult {
    let result = build_tuple(&args.t, &args.a, &args.z, &args.k)?;
    let mut value = serde_json::to_value(&result)?;
    let identity = result.identity();
    value["identity"] = match &identity {
        Some(id) => serde_json::to_value(id)?,
        None => serde_json::Value::Null,
    };
    writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
    Ok(if identity.is_some() { EXIT_OK } else { EXIT_FALSE })
}

fn write_report(report: &EnumerationReport, sink: &mut dyn Write) -> std::io::Result<()> {
    for rec in &report.identities {
        writeln!(sink, "{}", serde_json::to_string(rec).expect("records serialize"))?;
    }
    sink.flush()
}

fn summary_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".summary.json");
    PathBuf::from(name)
}

fn cmd_enumerate(args: EnumerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let pool = thread_pool()?;
    let (label, report) = pool.install(|| match args.class {
        EnumClass::SuperPerfect => ("super-perfect", enumerate_super_perfect()),
        EnumClass::Perfect => ("perfect", enumerate_perfect()),
    });
    let report = if args.primes_only { prime_filter(&report) } else { report };
    let label = if args.primes_only { format!("{label}+prime") } else { label.to_string() };
    let summary = serde_json::to_string(&report.summary(&label))?;

    match &args.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            write_report(&report, &mut file)?;
        }
        None => write_report(&report, out)?,
    }
    match (args.summary, &args.out) {
        (Some(path), _) => std::fs::write(path, format!("{summary}\n"))?,
        (None, Some(out_path)) => std::fs::write(summary_path(out_path), format!("{summary}\n"))?,
        (None, None) => writeln!(err, "{summary}")?,
    }
    Ok(EXIT_OK)
}

fn emit(id: &AnyIdentity, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    let text = match format {
        Format::Latex => render_latex(id),
        Format::Text => render_text(id),
        Format::Json => render_json(id),
    };
    writeln!(out, "{text}")
}

fn cmd_family(args: FamilyArgs, out: &mut dyn Write) -> CmdResult {
    let name: FamilyName = args.name.parse()?;
    let given = [("a", args.a), ("k", args.k), ("b", args.b), ("n", args.n)];
    let spec = FamilySpec::new(
        name,
        given
            .into_iter()
            .filter_map(|(key, v)| v.map(|v| (key.to_string(), v))),
    );
    if let Some(missing) = name.parameters().iter().find(|p| !spec.parameters.contains_key(**p)) {
        return Err(Failure::Usage(format!("family {name} needs --{missing}")));
    }
    let identity = spec.generate()?;
    emit(&identity, args.format, out)?;
    Ok(EXIT_OK)
}

fn cmd_discover(args: DiscoverArgs, out: &mut dyn Write) -> CmdResult {
    let mut config = DiscoverConfig::new(args.seed, args.trials, args.t);
    if let Some(r) = args.a_range {
        config.a_range = r;
    }
    if let Some(r) = args.z_range {
        config.z_range = r;
    }
    if let Some(r) = args.k_num_range {
        config.k_numerator_range = r;
    }
    if let Some(r) = args.k_den_range {
        config.k_denominator_range = r;
    }
    let pool = thread_pool()?;
    let found = pool.install(|| discover(&config))?;
    for id in &found {
        emit(&AnyIdentity::Tuple(id.clone()), Format::Json, out)?;
    }
    Ok(EXIT_OK)
}

fn cmd_render(args: RenderArgs, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let mut input = String::new();
    stdin.read_to_string(&mut input)?;
    let trimmed = input.trim();
    if trimmed.is_empty() {
        return Err(Failure::Usage("no identity JSON on standard input".into()));
    }
    // a single (possibly multi-line) document, or one document per line
    let identities: Vec<AnyIdentity> = match serde_json::from_str(trimmed) {
        Ok(one) => vec![one],
        Err(_) => trimmed
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<Result<_, _>>()?,
    };
    let mut code = EXIT_OK;
    for id in &identities {
        if !args.unchecked && !id.verify()? {
            writeln!(err, "identity does not verify; pass --unchecked to render anyway")?;
            code = EXIT_FALSE;
            continue;
        }
        emit(id, args.format, out)?;
    }
    Ok(code)
}
