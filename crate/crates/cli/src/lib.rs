//! Command-line front end for the `autoseq` library.
//!
//! Every subcommand produces an [`Outcome`]: an exit status plus either
//! plain text or a JSON value. The binary prints it; `batch` collects one
//! [`Report`] per entry and emits them as newline-delimited JSON.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use autoseq::algebra::{classify_form, parse_poly, series_residue};
use autoseq::automaton::Dfao;
use autoseq::bounds::{
    cor41_report, eq5_check, eq6_check, legendre_report, paperfold_check, pattern_corollary_check,
    theorem1_check, theorem2_check, theorem2_from_poly, theorem4_check, w_check, BoundReport,
    Theorem2Params,
};
use autoseq::measures::{
    bm_profile, corr2_measure, corrk_oracle, lincomp_oracle, wd_measure, wd_oracle, Method,
    OracleCaps,
};
use autoseq::sequences::{BitSeq, PatternSpec, SequenceDescriptor};
use autoseq::statecomplexity::state_complexity_report;
use autoseq::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "autoseq",
    version,
    about = "Automatic sequences: generation, measures, bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Emit the first N terms of a sequence.
    Generate(GenerateArgs),
    /// Compute a pseudorandomness measure.
    Measure(MeasureArgs),
    /// Check h(x, G(x)) = 0 mod x^N.
    VerifyFunctional(VerifyFunctionalArgs),
    /// Classify a polynomial into one of the supported shapes.
    Classify(ClassifyArgs),
    /// Build a bound report with its proof witness.
    VerifyBounds(VerifyBoundsArgs),
    /// Upper and lower bounds on the state complexity.
    StateComplexity(StateComplexityArgs),
    /// Run a JSON list of commands and emit one report per line.
    Batch(BatchArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct Source {
    /// Sequence descriptor, e.g. thue-morse, pattern:2:3, legendre:101.
    #[arg(long, conflicts_with_all = ["automaton", "bits"])]
    pub seq: Option<String>,
    /// Automaton JSON file.
    #[arg(long, conflicts_with = "bits")]
    pub automaton: Option<PathBuf>,
    /// Literal 0/1 string.
    #[arg(long)]
    pub bits: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Raw,
    Csv,
    Json,
}

#[derive(Debug, Args, Serialize)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "raw")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureKind {
    Wd,
    Corr2,
    Corrk,
    Lincomp,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Optimized,
    Oracle,
}

#[derive(Debug, Args, Serialize)]
pub struct MeasureArgs {
    #[arg(long, value_enum)]
    pub measure: MeasureKind,
    #[command(flatten)]
    pub source: Source,
    /// Prefix length; defaults to the full `--bits` literal.
    #[arg(long)]
    pub n: Option<usize>,
    /// Correlation order for `corrk`.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, value_enum, default_value = "optimized")]
    pub method: MethodArg,
    /// Include the full linear complexity profile.
    #[arg(long)]
    pub profile: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyFunctionalArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub poly: String,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub poly: String,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremArg {
    Eq5,
    Eq6,
    Thm1,
    Thm2,
    Pattern,
    Paperfold,
    W,
    Thm4,
    Cor4,
    Legendre,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyBoundsArgs {
    #[arg(long, value_enum)]
    pub theorem: TheoremArg,
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub poly: Option<String>,
    #[arg(long)]
    pub ell: Option<u32>,
    #[arg(long)]
    pub a0: Option<u8>,
    #[arg(long)]
    pub a1: Option<u8>,
    #[arg(long)]
    pub gamma0: Option<i64>,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Prime for `legendre`.
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct StateComplexityArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Write the synthesized automaton as JSON to this file.
    #[arg(long)]
    pub dump: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct BatchArgs {
    /// JSON file holding a list of argument arrays.
    pub file: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Add wall-clock timing to every report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Text(String),
    Json(Value),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: i32,
    pub output: Output,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub status: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            status: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            status: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::FunctionalEquation(_)
            | Error::IdentityViolated(_)
            | Error::FormMismatch(_)
            | Error::Consistency(_) => EXIT_VERIFY_FAILED,
            Error::Parse { .. }
            | Error::ExponentOverflow
            | Error::InvalidAutomaton(_)
            | Error::UnknownAutomaton(_)
            | Error::InvalidDigit { .. }
            | Error::NotNormalized => EXIT_INPUT,
            _ => EXIT_USAGE,
        };
        CliError {
            status,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn json_outcome(value: impl Serialize, ok: bool) -> CliResult<Outcome> {
    let value = serde_json::to_value(value).map_err(|e| CliError::input(e.to_string()))?;
    Ok(Outcome {
        status: if ok { EXIT_OK } else { EXIT_VERIFY_FAILED },
        output: Output::Json(value),
    })
}

fn load_automaton(path: &Path) -> CliResult<Dfao> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let dfao = Dfao::from_json(&text)?;
    Ok(if dfao.is_normalized() {
        dfao
    } else {
        log::warn!("{}: normalizing leading zeros", path.display());
        dfao.normalize_leading_zeros()
    })
}

impl Source {
    fn describe(&self) -> String {
        if let Some(seq) = &self.seq {
            seq.clone()
        } else if let Some(path) = &self.automaton {
            format!("automaton:{}", path.display())
        } else {
            "bits".to_string()
        }
    }

    fn descriptor(&self) -> CliResult<Option<SequenceDescriptor>> {
        self.seq
            .as_deref()
            .map(|s| s.parse().map_err(CliError::from))
            .transpose()
    }

    /// The prefix of length `n`; `n` may be omitted only for `--bits`.
    fn load(&self, n: Option<usize>) -> CliResult<BitSeq> {
        if let Some(desc) = self.descriptor()? {
            let n = n.ok_or_else(|| CliError::usage("--n is required"))?;
            return Ok(desc.generate(n)?);
        }
        if let Some(path) = &self.automaton {
            let n = n.ok_or_else(|| CliError::usage("--n is required"))?;
            return Ok(load_automaton(path)?.generate(n)?);
        }
        if let Some(bits) = &self.bits {
            let s = BitSeq::from_bit_str(bits).map_err(|e| CliError::input(e.to_string()))?;
            return match n {
                None => Ok(s),
                Some(n) => Ok(s.prefix(n)?),
            };
        }
        Err(CliError::usage(
            "one of --seq, --automaton or --bits is required",
        ))
    }

    fn load_dfao(&self) -> CliResult<Dfao> {
        if let Some(path) = &self.automaton {
            return load_automaton(path);
        }
        let desc = self
            .descriptor()?
            .ok_or_else(|| CliError::usage("--seq or --automaton is required"))?;
        desc.automaton()
            .ok_or_else(|| CliError::usage(format!("no built-in automaton for {desc}")))
    }
}

fn cmd_generate(args: &GenerateArgs) -> CliResult<Outcome> {
    if args.n == 0 {
        return Err(CliError::usage("--n must be at least 1"));
    }
    let s = args.source.load(Some(args.n))?;
    let output = match args.format {
        Format::Raw => Output::Text(s.to_bit_string()),
        Format::Csv => {
            let mut text = String::from("index,bit\n");
            for (i, b) in s.bits().iter().enumerate() {
                let _ = writeln!(text, "{i},{b}");
            }
            Output::Text(text.trim_end().to_string())
        }
        Format::Json => Output::Json(json!({
            "sequence": args.source.describe(),
            "N": s.len(),
            "bits": s.to_bit_string(),
        })),
    };
    Ok(Outcome {
        status: EXIT_OK,
        output,
    })
}

fn cmd_measure(args: &MeasureArgs) -> CliResult<Outcome> {
    let s = args.source.load(args.n)?;
    let caps = || OracleCaps::from_env().map_err(|e| CliError::usage(e.to_string()));
    let oracle = matches!(args.method, MethodArg::Oracle);
    let name = match args.measure {
        MeasureKind::Wd => "wd",
        MeasureKind::Corr2 => "corr2",
        MeasureKind::Corrk => "corrk",
        MeasureKind::Lincomp => "lincomp",
    };
    let mut report = json!({ "measure": name, "N": s.len() });
    match args.measure {
        MeasureKind::Lincomp => {
            let profile = bm_profile(&s);
            let value = if oracle {
                lincomp_oracle(&s, &caps()?)?
            } else {
                profile.last().copied().unwrap_or(0)
            };
            report["value"] = json!(value);
            report["witness"] = Value::Null;
            report["method"] = json!(if oracle {
                Method::Oracle
            } else {
                Method::Optimized
            });
            if args.profile {
                report["profile"] = json!(profile);
            }
        }
        kind => {
            let result = match (kind, oracle) {
                (MeasureKind::Wd, false) => wd_measure(&s),
                (MeasureKind::Wd, true) => wd_oracle(&s, &caps()?)?,
                (MeasureKind::Corr2, false) => corr2_measure(&s)?,
                (MeasureKind::Corr2, true) => corrk_oracle(&s, 2, &caps()?)?,
                (_, false) if args.k == 2 => corr2_measure(&s)?,
                (_, false) => {
                    return Err(CliError::usage(
                        "corrk with k > 2 has no optimized kernel; use --method oracle",
                    ))
                }
                (_, true) => corrk_oracle(&s, args.k, &caps()?)?,
            };
            if matches!(kind, MeasureKind::Corrk) {
                report["k"] = json!(args.k);
            }
            report["value"] = json!(result.value);
            report["witness"] = serde_json::to_value(&result.witness).unwrap_or(Value::Null);
            report["method"] = json!(result.method);
        }
    }
    json_outcome(report, true)
}

fn parse_poly_arg(text: &str) -> CliResult<autoseq::algebra::BivarPoly> {
    parse_poly(text).map_err(|e| CliError::input(format!("polynomial `{text}`: {e}")))
}

fn cmd_verify_functional(args: &VerifyFunctionalArgs) -> CliResult<Outcome> {
    let h = parse_poly_arg(&args.poly)?;
    let s = args.source.load(args.n)?;
    let first = series_residue(&h, &s).first_nonzero();
    json_outcome(
        json!({
            "sequence": args.source.describe(),
            "poly": h.to_string(),
            "N": s.len(),
            "ok": first.is_none(),
            "first_nonzero": first,
        }),
        first.is_none(),
    )
}

fn cmd_classify(args: &ClassifyArgs) -> CliResult<Outcome> {
    let h = parse_poly_arg(&args.poly)?;
    let c = classify_form(&h);
    json_outcome(json!({ "poly": h.to_string(), "classification": c }), true)
}

fn require_n(n: Option<usize>) -> CliResult<usize> {
    n.ok_or_else(|| CliError::usage("--n is required"))
}

fn bound_report(args: &VerifyBoundsArgs) -> CliResult<BoundReport> {
    let poly = || {
        args.poly
            .as_deref()
            .ok_or_else(|| CliError::usage("--poly is required"))
            .and_then(parse_poly_arg)
    };
    let report = match args.theorem {
        TheoremArg::Eq5 => eq5_check(require_n(args.n)?)?,
        TheoremArg::Eq6 => eq6_check(require_n(args.n)?)?,
        TheoremArg::Thm1 => theorem1_check(&args.source.load(args.n)?, &poly()?)?,
        TheoremArg::Thm2 => {
            let s = args.source.load(args.n)?;
            if args.poly.is_some() {
                theorem2_from_poly(&s, &poly()?)?
            } else {
                let (Some(ell), Some(a0), Some(a1)) = (args.ell, args.a0, args.a1) else {
                    return Err(CliError::usage("thm2 needs --poly or --ell, --a0 and --a1"));
                };
                let mut params = Theorem2Params::new(ell, a0, a1)?;
                params.gamma0 = args.gamma0;
                theorem2_check(&s, params)?
            }
        }
        TheoremArg::Pattern => {
            let spec = match args.source.descriptor()? {
                Some(SequenceDescriptor::Pattern(spec)) => spec,
                Some(SequenceDescriptor::ThueMorse) => PatternSpec::new(1, 1)?,
                Some(SequenceDescriptor::RudinShapiro) => PatternSpec::new(2, 3)?,
                _ => return Err(CliError::usage("pattern needs --seq pattern:<ell>:<a>")),
            };
            pattern_corollary_check(spec, require_n(args.n)?)?
        }
        TheoremArg::Paperfold => {
            let v0 = match args.source.descriptor()? {
                None => 0,
                Some(SequenceDescriptor::Paperfolding { v0 }) => v0,
                Some(_) => return Err(CliError::usage("paperfold needs --seq paperfolding[:v0]")),
            };
            paperfold_check(require_n(args.n)?, v0)?
        }
        TheoremArg::W => w_check(require_n(args.n)?)?,
        TheoremArg::Thm4 => theorem4_check(&args.source.load_dfao()?, require_n(args.n)?)?,
        TheoremArg::Cor4 => cor41_report(&args.source.load(args.n)?, args.k)?,
        TheoremArg::Legendre => {
            let p = match (args.p, args.source.descriptor()?) {
                (Some(p), _) => p,
                (None, Some(SequenceDescriptor::Legendre { p })) => p,
                _ => return Err(CliError::usage("legendre needs --p or --seq legendre:<p>")),
            };
            legendre_report(p, args.n.unwrap_or(p as usize))?
        }
    };
    Ok(report)
}

fn cmd_verify_bounds(args: &VerifyBoundsArgs) -> CliResult<Outcome> {
    let report = bound_report(args)?;
    let pass = report.pass;
    json_outcome(report, pass)
}

fn cmd_state_complexity(args: &StateComplexityArgs) -> CliResult<Outcome> {
    let s = args.source.load(args.n)?;
    let (mut report, dfao) = state_complexity_report(&s, args.k)?;
    report.sequence = args.source.describe();
    if let Some(path) = &args.dump {
        std::fs::write(path, dfao.to_json())
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    }
    let ok = report.bracket_holds();
    json_outcome(report, ok)
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: String,
    pub command: Vec<String>,
    pub inputs: Value,
    pub exit: i32,
    pub result: Value,
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

pub fn tool_version() -> String {
    format!("autoseq {}", env!("CARGO_PKG_VERSION"))
}

fn run_entry(argv: &[String], timing: bool) -> Report {
    let start = Instant::now();
    let full = std::iter::once("autoseq".to_string()).chain(argv.iter().cloned());
    let (inputs, outcome) = match Cli::try_parse_from(full) {
        Err(e) => (Value::Null, Err(CliError::usage(e.to_string().trim_end()))),
        Ok(Cli {
            command: Command::Batch(_),
        }) => (
            Value::Null,
            Err(CliError::usage("batch entries cannot nest batch")),
        ),
        Ok(cli) => (
            serde_json::to_value(&cli.command).unwrap_or(Value::Null),
            execute(&cli.command),
        ),
    };
    let (exit, result, error) = match outcome {
        Ok(Outcome { status, output }) => {
            let result = match output {
                Output::Text(t) => Value::String(t),
                Output::Json(v) => v,
            };
            (status, result, None)
        }
        Err(e) => (e.status, Value::Null, Some(e.message)),
    };
    Report {
        tool: tool_version(),
        command: argv.to_vec(),
        inputs,
        exit,
        result,
        error,
        timing_ms: timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    }
}

/// Runs every entry on a pool of `jobs` threads; the reports keep the input
/// order.
pub fn run_batch(entries: &[Vec<String>], jobs: usize, timing: bool) -> CliResult<Vec<Report>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::input(e.to_string()))?;
    Ok(pool.install(|| {
        entries
            .par_iter()
            .map(|argv| run_entry(argv, timing))
            .collect()
    }))
}

fn cmd_batch(args: &BatchArgs) -> CliResult<Outcome> {
    if args.jobs == 0 {
        return Err(CliError::usage("--jobs must be at least 1"));
    }
    let text = std::fs::read_to_string(&args.file)
        .map_err(|e| CliError::input(format!("{}: {e}", args.file.display())))?;
    let entries: Vec<Vec<String>> = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("{}: {e}", args.file.display())))?;
    let reports = run_batch(&entries, args.jobs, args.timing)?;
    let mut out = String::new();
    for r in &reports {
        let line = serde_json::to_string(r).map_err(|e| CliError::input(e.to_string()))?;
        out.push_str(&line);
        out.push('\n');
    }
    Ok(Outcome {
        status: EXIT_OK,
        output: Output::Text(out.trim_end_matches('\n').to_string()),
    })
}

pub fn execute(command: &Command) -> CliResult<Outcome> {
    match command {
        Command::Generate(a) => cmd_generate(a),
        Command::Measure(a) => cmd_measure(a),
        Command::VerifyFunctional(a) => cmd_verify_functional(a),
        Command::Classify(a) => cmd_classify(a),
        Command::VerifyBounds(a) => cmd_verify_bounds(a),
        Command::StateComplexity(a) => cmd_state_complexity(a),
        Command::Batch(a) => cmd_batch(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> CliResult<Outcome> {
        let cli = Cli::try_parse_from(std::iter::once("autoseq").chain(args.iter().copied()))
            .map_err(|e| CliError::usage(e.to_string()))?;
        execute(&cli.command)
    }

    fn text(o: Outcome) -> String {
        match o.output {
            Output::Text(t) => t,
            Output::Json(v) => v.to_string(),
        }
    }

    #[test]
    fn generate_formats() {
        let o = run(&["generate", "--seq", "thue-morse", "--n", "8"]).unwrap();
        assert_eq!(text(o), "01101001");
        let o = run(&["generate", "--seq", "legendre:7", "--n", "7"]).unwrap();
        assert_eq!(text(o), "1001011");
        let o = run(&[
            "generate",
            "--seq",
            "thue-morse",
            "--n",
            "3",
            "--format",
            "csv",
        ])
        .unwrap();
        assert_eq!(text(o), "index,bit\n0,0\n1,1\n2,1");
        assert_eq!(
            run(&["generate", "--seq", "thue-morse", "--n", "0"])
                .unwrap_err()
                .status,
            2
        );
        assert_eq!(
            run(&["generate", "--seq", "nope", "--n", "4"])
                .unwrap_err()
                .status,
            2
        );
    }

    #[test]
    fn error_classes() {
        let e = run(&[
            "verify-functional",
            "--seq",
            "thue-morse",
            "--n",
            "8",
            "--poly",
            "x + * y",
        ]);
        let e = e.unwrap_err();
        assert_eq!(e.status, 3);
        assert!(e.message.contains('4'), "{}", e.message);
        let o = run(&[
            "verify-functional",
            "--seq",
            "thue-morse",
            "--n",
            "64",
            "--poly",
            "y^4+x*y^2+y",
        ]);
        assert_eq!(o.unwrap().status, 1);
        let e = run(&[
            "verify-bounds",
            "--theorem",
            "thm1",
            "--seq",
            "thue-morse",
            "--n",
            "64",
        ]);
        assert_eq!(e.unwrap_err().status, 2);
    }

    #[test]
    fn batch_entries_are_isolated() {
        let entries = vec![
            vec![
                "generate".into(),
                "--seq".into(),
                "thue-morse".into(),
                "--n".into(),
                "4".into(),
            ],
            vec![
                "generate".into(),
                "--seq".into(),
                "bogus".into(),
                "--n".into(),
                "4".into(),
            ],
            vec!["batch".into(), "x.json".into()],
        ];
        let reports = run_batch(&entries, 2, false).unwrap();
        assert_eq!(reports[0].exit, 0);
        assert_eq!(reports[0].result, Value::String("0110".into()));
        assert_eq!(reports[1].exit, 2);
        assert!(reports[1].error.as_ref().unwrap().contains("bogus"));
        assert_eq!(reports[2].exit, 2);
        assert!(run_batch(&[], 3, false).unwrap().is_empty());
    }
}
