//! The `qint` command line front-end.
//!
//! One verb per library operation. Machine-readable results go to standard
//! output (JSON for reports and tables, the requested format for
//! polynomials); diagnostics go to standard error. Exit codes: 0 success or
//! verified, 1 verification failure, 2 malformed input or usage error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use qint::{
    admissibility, check_degree_bound, check_functional_equation, classify,
    decompose_zero_identity, generate_sequence, named_rule, parse_poly, rat_from_str, render_poly,
    rules, spot_check_rule, verify_rule, verify_zero_identity, zero_identity_from_uv, Error, Poly,
    PolyFormat, QuadRule, Rat, RuleName, SolutionSeq, UvTables, ZeroIdentity,
};

#[derive(Parser)]
#[command(
    name = "qint",
    version,
    about = "Exact computation with quantum integers and their quadratic addition rules",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quadratic addition rules: verify, normalize, classify, apply.
    Rule {
        #[command(subcommand)]
        cmd: RuleCmd,
    },
    /// Quadratic zero identities.
    Zero {
        #[command(subcommand)]
        cmd: ZeroCmd,
    },
    /// Solution sequences of the associated functional equation.
    Seq {
        #[command(subcommand)]
        cmd: SeqCmd,
    },
    /// Seed polynomials: the necessary condition and the empirical probe.
    Seed {
        #[command(subcommand)]
        cmd: SeedCmd,
    },
    /// Polynomial utilities.
    Poly {
        #[command(subcommand)]
        cmd: PolyCmd,
    },
}

/// A rule given either by built-in name or by a QuadRule JSON file.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct RuleSource {
    /// Built-in rule: fundamental, rule1, rule2 or linear_example.
    #[arg(long, value_name = "NAME")]
    name: Option<String>,
    /// Path to a QuadRule JSON file {"N", "r", "s", "t"}.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

impl RuleSource {
    /// Load the rule; built-ins are tabulated to `horizon` (defaulting to
    /// `default`), file rules use their own tables and `horizon` defaults
    /// to the file's N.
    fn load(&self, horizon: Option<usize>, default: usize) -> Result<(QuadRule, usize), Error> {
        if horizon == Some(0) {
            return Err(Error::MalformedTables("horizon must be positive".into()));
        }
        match (&self.name, &self.file) {
            (Some(name), None) => {
                let name: RuleName = name.parse()?;
                let horizon = horizon.unwrap_or(default);
                Ok((named_rule(name, horizon), horizon))
            }
            (None, Some(path)) => {
                let rule: QuadRule = read_json(path)?;
                let horizon = horizon.unwrap_or(rule.horizon());
                if horizon > rule.horizon() {
                    return Err(Error::MalformedTables(format!(
                        "requested horizon {horizon} exceeds the file's N = {}",
                        rule.horizon()
                    )));
                }
                Ok((rule, horizon))
            }
            _ => unreachable!("clap enforces exactly one source"),
        }
    }
}

#[derive(Subcommand)]
enum RuleCmd {
    /// Check [m+n]_q = r'_n [m]_q + s'_m [n]_q + t'_{m,n} [m]_q [n]_q for
    /// all pairs up to the horizon.
    Verify {
        #[command(flatten)]
        source: RuleSource,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Run the division-algorithm standard form; the residual of a verified
    /// rule is the fundamental rule.
    Normalize {
        #[command(flatten)]
        source: RuleSource,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Build the rule determined by a (U, V) pair.
    FromUv {
        /// Path to a JSON file {"U": [Poly...], "V": [Poly...]}.
        #[arg(long, value_name = "PATH")]
        uv_file: PathBuf,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Recover the (U, V) pair of a verified rule.
    ExtractUv {
        #[command(flatten)]
        source: RuleSource,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Apply the rule's combination to two polynomials at indices (m, n).
    Apply {
        #[command(flatten)]
        source: RuleSource,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// First operand, in the polynomial grammar.
        #[arg(long, value_parser = poly_arg)]
        a: Poly,
        /// Second operand.
        #[arg(long, value_parser = poly_arg)]
        b: Poly,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long, default_value = "plain", value_parser = format_arg)]
        format: PolyFormat,
    },
    /// Randomized evaluation cross-check of the addition identity.
    SpotCheck {
        #[command(flatten)]
        source: RuleSource,
        #[arg(long)]
        horizon: Option<usize>,
        /// Number of random rational points.
        #[arg(long, default_value_t = 5)]
        trials: usize,
        /// RNG seed for reproducibility.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ZeroCmd {
    /// Check u'_n [m]_q + v'_m [n]_q + w'_{m,n} [m]_q [n]_q = 0 for all
    /// pairs up to the horizon.
    Verify {
        /// Path to a ZeroIdentity JSON file {"N", "u", "v", "w"}.
        #[arg(long, value_name = "PATH")]
        file: PathBuf,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Build the zero identity determined by a (U, V) pair.
    FromUv {
        #[arg(long, value_name = "PATH")]
        uv_file: PathBuf,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Recover the (U, V) pair of a verified zero identity.
    Decompose {
        #[arg(long, value_name = "PATH")]
        file: PathBuf,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Check the degree bound: deg(u'_n) < n - 1 forces u'_n = 0 (and
    /// symmetrically for v'_m).
    DegreeBound {
        #[arg(long, value_name = "PATH")]
        file: PathBuf,
        #[arg(long)]
        horizon: Option<usize>,
    },
}

#[derive(Subcommand)]
enum SeqCmd {
    /// Generate f_1 = h, f_n = h (+) f_{n-1} up to the horizon.
    Generate {
        #[command(flatten)]
        source: RuleSource,
        /// Seed polynomial h = f_1.
        #[arg(long, value_parser = poly_arg)]
        h: Poly,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Check f_{m+n} = r'_n f_m + s'_m f_n + t'_{m,n} f_m f_n over all
    /// m + n <= horizon for a stored sequence.
    Check {
        #[command(flatten)]
        source: RuleSource,
        /// Path to a SolutionSeq JSON file {"h", "N", "f"}.
        #[arg(long, value_name = "PATH")]
        seq_file: PathBuf,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Closed-form solution entry f_n for a built-in rule and seed.
    ClosedForm {
        /// fundamental, rule1 or rule2.
        #[arg(long)]
        name: String,
        #[arg(long, value_parser = poly_arg)]
        h: Poly,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, default_value = "plain", value_parser = format_arg)]
        format: PolyFormat,
    },
}

#[derive(Subcommand)]
enum SeedCmd {
    /// Evaluate the necessary condition A h = B on candidate seeds from a
    /// (U, V) pair. The verdict is a necessary-condition classification
    /// only; the seeds 0 and 1 always generate solutions.
    Admissible {
        #[arg(long, value_name = "PATH")]
        uv_file: PathBuf,
    },
    /// Generate from a seed and check the functional equation
    /// (the empirical sufficiency probe).
    Test {
        #[command(flatten)]
        source: RuleSource,
        #[arg(long, value_parser = poly_arg)]
        h: Poly,
        #[arg(long)]
        horizon: Option<usize>,
    },
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Exact evaluation at a rational point.
    Eval {
        #[arg(long, value_parser = poly_arg)]
        p: Poly,
        /// Evaluation point, as `n` or `n/d`.
        #[arg(long, value_parser = rat_arg)]
        x: Rat,
    },
    /// Render a polynomial as plain text, LaTeX or canonical JSON.
    Render {
        #[arg(long, value_parser = poly_arg)]
        p: Poly,
        #[arg(long, default_value = "plain", value_parser = format_arg)]
        format: PolyFormat,
    },
}

fn poly_arg(s: &str) -> Result<Poly, String> {
    parse_poly(s).map_err(|e| e.to_string())
}

fn rat_arg(s: &str) -> Result<Rat, String> {
    rat_from_str(s).map_err(|e| e.to_string())
}

fn format_arg(s: &str) -> Result<PolyFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::MalformedTables(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::MalformedTables(format!("{}: {e}", path.display())))
}

fn read_uv(path: &Path) -> Result<UvTables, Error> {
    read_json::<UvTables>(path)?.validate()
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serialization is infallible")
    );
}

/// Print a verification report and turn it into the exit-code contract.
fn report_code(report: &rules::VerifyReport) -> u8 {
    print_json(report);
    if report.passed() {
        0
    } else {
        1
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Rule { cmd } => run_rule(cmd),
        Command::Zero { cmd } => run_zero(cmd),
        Command::Seq { cmd } => run_seq(cmd),
        Command::Seed { cmd } => run_seed(cmd),
        Command::Poly { cmd } => run_poly(cmd),
    }
}

fn run_rule(cmd: RuleCmd) -> Result<u8, Error> {
    match cmd {
        RuleCmd::Verify { source, horizon } => {
            let (rule, horizon) = source.load(horizon, rules::DEFAULT_HORIZON)?;
            Ok(report_code(&verify_rule(&rule, horizon)))
        }
        RuleCmd::Normalize { source, horizon } => {
            let (rule, horizon) = source.load(horizon, rules::DEFAULT_HORIZON)?;
            let result = classify::normalize(&rule, horizon);
            print_json(&result);
            Ok(if result.is_fundamental { 0 } else { 1 })
        }
        RuleCmd::FromUv { uv_file, horizon } => {
            let uv = read_uv(&uv_file)?;
            let horizon = resolve_uv_horizon(&uv, horizon)?;
            let rule = classify::rule_from_uv(&uv.u, &uv.v, horizon);
            print_json(&rule);
            Ok(0)
        }
        RuleCmd::ExtractUv { source, horizon } => {
            let (rule, horizon) = source.load(horizon, rules::DEFAULT_HORIZON)?;
            let (u, v) = classify::extract_uv(&rule, horizon)?;
            print_json(&UvTables::new(u, v)?);
            Ok(0)
        }
        RuleCmd::Apply {
            source,
            m,
            n,
            a,
            b,
            horizon,
            format,
        } => {
            let default = rules::DEFAULT_HORIZON.max(m).max(n);
            let (rule, _) = source.load(horizon, default)?;
            let result = rules::apply_rule(&rule, m, n, &a, &b)?;
            println!("{}", render_poly(&result, format));
            Ok(0)
        }
        RuleCmd::SpotCheck {
            source,
            horizon,
            trials,
            seed,
        } => {
            let (rule, horizon) = source.load(horizon, rules::DEFAULT_HORIZON)?;
            Ok(report_code(&spot_check_rule(&rule, horizon, trials, seed)))
        }
    }
}

fn run_zero(cmd: ZeroCmd) -> Result<u8, Error> {
    match cmd {
        ZeroCmd::Verify { file, horizon } => {
            let zi: ZeroIdentity = read_json(&file)?;
            let horizon = resolve_zi_horizon(&zi, horizon)?;
            Ok(report_code(&verify_zero_identity(&zi, horizon)))
        }
        ZeroCmd::FromUv { uv_file, horizon } => {
            let uv = read_uv(&uv_file)?;
            let horizon = resolve_uv_horizon(&uv, horizon)?;
            let zi = zero_identity_from_uv(&uv.u, &uv.v, horizon);
            print_json(&zi);
            Ok(0)
        }
        ZeroCmd::Decompose { file, horizon } => {
            let zi: ZeroIdentity = read_json(&file)?;
            let horizon = resolve_zi_horizon(&zi, horizon)?;
            let (u, v) = decompose_zero_identity(&zi, horizon)?;
            print_json(&UvTables::new(u, v)?);
            Ok(0)
        }
        ZeroCmd::DegreeBound { file, horizon } => {
            let zi: ZeroIdentity = read_json(&file)?;
            let horizon = resolve_zi_horizon(&zi, horizon)?;
            let holds = check_degree_bound(&zi, horizon);
            print_json(&serde_json::json!({ "horizon": horizon, "holds": holds }));
            Ok(if holds { 0 } else { 1 })
        }
    }
}

fn run_seq(cmd: SeqCmd) -> Result<u8, Error> {
    match cmd {
        SeqCmd::Generate { source, h, horizon } => {
            let (rule, horizon) = source.load(horizon, rules::DEFAULT_HORIZON)?;
            let seq = generate_sequence(&rule, &h, horizon)?;
            print_json(&seq);
            Ok(0)
        }
        SeqCmd::Check {
            source,
            seq_file,
            horizon,
        } => {
            let seq: SolutionSeq = read_json(&seq_file)?;
            let horizon = match horizon {
                Some(h) if h > seq.horizon() => {
                    return Err(Error::MalformedTables(format!(
                        "requested horizon {h} exceeds the sequence's N = {}",
                        seq.horizon()
                    )))
                }
                Some(h) => h,
                None => seq.horizon(),
            };
            let (rule, _) = source.load(Some(horizon.saturating_sub(1).max(1)), 1)?;
            Ok(report_code(&check_functional_equation(
                &rule, &seq, horizon,
            )))
        }
        SeqCmd::ClosedForm { name, h, n, format } => {
            let name: RuleName = name.parse()?;
            let value = qint::closed_form(name, &h, n as usize)?;
            println!("{}", render_poly(&value, format));
            Ok(0)
        }
    }
}

fn run_seed(cmd: SeedCmd) -> Result<u8, Error> {
    match cmd {
        SeedCmd::Admissible { uv_file } => {
            let uv = read_uv(&uv_file)?;
            if uv.horizon() < 2 {
                return Err(Error::MalformedTables(
                    "the necessary condition reads (U, V) at indices 1 and 2".into(),
                ));
            }
            print_json(&admissibility(&uv.u, &uv.v));
            Ok(0)
        }
        SeedCmd::Test { source, h, horizon } => {
            let (rule, horizon) = source.load(horizon, qint::DEFAULT_SEED_TEST_HORIZON)?;
            let seq = generate_sequence(&rule, &h, horizon)?;
            Ok(report_code(&check_functional_equation(
                &rule, &seq, horizon,
            )))
        }
    }
}

fn run_poly(cmd: PolyCmd) -> Result<u8, Error> {
    match cmd {
        PolyCmd::Eval { p, x } => {
            println!("{}", p.eval_at(&x));
            Ok(0)
        }
        PolyCmd::Render { p, format } => {
            println!("{}", render_poly(&p, format));
            Ok(0)
        }
    }
}

fn resolve_uv_horizon(uv: &UvTables, horizon: Option<usize>) -> Result<usize, Error> {
    match horizon {
        Some(h) if h > uv.horizon() => Err(Error::MalformedTables(format!(
            "requested horizon {h} exceeds the (U, V) tables' length {}",
            uv.horizon()
        ))),
        Some(0) => Err(Error::MalformedTables("horizon must be positive".into())),
        Some(h) => Ok(h),
        None => Ok(uv.horizon()),
    }
}

fn resolve_zi_horizon(zi: &ZeroIdentity, horizon: Option<usize>) -> Result<usize, Error> {
    match horizon {
        Some(h) if h > zi.horizon() => Err(Error::MalformedTables(format!(
            "requested horizon {h} exceeds the identity's N = {}",
            zi.horizon()
        ))),
        Some(h) => Ok(h),
        None => Ok(zi.horizon()),
    }
}

/// Exit-code mapping for library errors: negative classification verdicts
/// are verification failures, everything else is malformed input.
fn error_code(err: &Error) -> u8 {
    match err {
        Error::NotAZeroIdentity(_)
        | Error::NotAQuantumAdditionRule(_)
        | Error::InternalDivisibilityViolation(_) => 1,
        _ => 2,
    }
}

/// Restore default SIGPIPE handling so piping into `head` and friends
/// terminates the process quietly instead of panicking on write.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(error_code(&err))
        }
    }
}
