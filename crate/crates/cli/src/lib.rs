//! Command-line surface for the semiflow verifiers.
//!
//! Exit codes: 0 verified, 2 refuted / bounded / precondition unmet, 64 usage,
//! 65 feasibility cap, 66 I/O.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use semiflow::monoid::{classify, ClassificationVerdict, SubsetDesc};
use semiflow::schedule::{GrowthSchedule, Space, Window};
use semiflow::sensitivity::{
    diam_series, verify_example1, verify_example2, DiamSeries, Example1Config, Example2Config, SensitivityReport,
    System, Verdict,
};
use semiflow::{ClosedInterval, Error, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNVERIFIED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_CAP: i32 = 65;
pub const EXIT_IO: i32 = 66;

#[derive(Debug, Parser)]
#[command(name = "semiflow", version, about = "Exact verification of sensitivity claims for two semi-flows")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,

    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Omit the generation timestamp from JSON output
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Example1,
    Example2,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verifier and report one verdict per claim
    Verify {
        target: Target,
        #[arg(long, default_value = "1/2", value_parser = parse_rational)]
        epsilon: Rational,
        #[arg(long, default_value_t = 272153)]
        horizon: u64,
        #[arg(long = "kmax", default_value_t = 3)]
        k_max: u64,
        /// Use `diam ≥ ε` instead of `diam > ε`
        #[arg(long = "no-strict", action = clap::ArgAction::SetFalse)]
        strict: bool,
        /// Accepted for symmetry with --no-strict; strict is the default
        #[arg(long = "strict", overrides_with = "strict")]
        _strict_flag: bool,
        /// Exit 0 when the worst verdict is bounded evidence
        #[arg(long)]
        allow_bounded: bool,
    },
    /// Export the exact diameter series of a seed
    Series {
        /// example1, example2-X or example2-Y
        #[arg(value_parser = parse_system)]
        system: System,
        /// Seed interval, e.g. "[1/2, 3/2]"
        #[arg(long, value_parser = parse_interval)]
        seed: Option<ClosedInterval>,
        #[arg(long, default_value_t = 0)]
        from: u64,
        #[arg(long, default_value_t = 20)]
        to: u64,
        /// Raise the orbit index cap (at most 2000000)
        #[arg(long)]
        index_cap: Option<u64>,
    },
    /// Classify a subset description
    Classify {
        /// e.g. "ambient=G; finite={}; T=0; p=1; R={0}; inf=no"
        #[arg(long, value_parser = parse_subset)]
        subset: SubsetDesc,
    },
    /// Inspect the growth schedule
    Schedule {
        /// Print L_n and 𝓛_n
        #[arg(long)]
        n: Option<usize>,
        /// Print the descriptor of this block (needs --space)
        #[arg(long)]
        block: Option<usize>,
        /// Locate I_n / J_n (needs --space)
        #[arg(long)]
        index: Option<u64>,
        #[arg(long, value_parser = parse_space)]
        space: Option<Space>,
        /// Classify an index into its window
        #[arg(long)]
        window: Option<u64>,
        /// Validate a custom schedule given as L_0,L_1,...
        #[arg(long)]
        validate: Option<String>,
        /// Raise the orbit index cap (at most 2000000)
        #[arg(long)]
        index_cap: Option<u64>,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse::<Rational>().map_err(|e| e.to_string())
}

fn parse_system(s: &str) -> Result<System, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_space(s: &str) -> Result<Space, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_interval(s: &str) -> Result<ClosedInterval, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_subset(s: &str) -> Result<SubsetDesc, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// `"0,2,16"` as big naturals.
fn parse_biguint_list(s: &str) -> Result<Vec<BigUint>, Error> {
    s.split(',').map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("not a natural number: {t:?}")))).collect()
}

/// Failure while producing or writing an artifact.
enum Failure {
    Usage(String),
    Cap(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded(_) => Failure::Cap(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_at: Option<u64>,
    #[serde(flatten)]
    body: &'a T,
}

fn timestamp(out: &OutputArgs) -> Option<u64> {
    if out.no_timestamp {
        None
    } else {
        SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs())
    }
}

fn json<T: Serialize>(out: &OutputArgs, body: &T) -> Result<String, Failure> {
    let env = Envelope { generated_at: timestamp(out), body };
    let mut s = serde_json::to_string_pretty(&env).map_err(|e| Failure::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Io(e.to_string()))
}

fn render_report(out: &OutputArgs, r: &SensitivityReport) -> Result<String, Failure> {
    match out.format {
        Format::Json => json(out, r),
        Format::Csv => csv_text(
            &["claim", "verdict", "epsilon", "strict", "horizon", "k_max", "witnesses"],
            r.claims
                .iter()
                .map(|c| {
                    vec![
                        c.claim.clone(),
                        c.verdict.to_string(),
                        c.epsilon.to_string(),
                        c.strict.to_string(),
                        c.horizon.to_string(),
                        c.k_max.map(|k| k.to_string()).unwrap_or_default(),
                        c.witnesses.join(" | "),
                    ]
                })
                .collect(),
        ),
        Format::Human => {
            Ok(r.claims.iter().map(|c| format!("{} {} [{}]\n", c.verdict.symbol(), c.claim, c.verdict)).collect())
        }
    }
}

fn render_series(out: &OutputArgs, s: &DiamSeries) -> Result<String, Failure> {
    match out.format {
        Format::Json => json(out, s),
        Format::Csv => csv_text(
            &["n", "diam_exact", "diam_decimal"],
            s.entries.iter().map(|(n, d)| vec![n.to_string(), d.to_string(), d.to_decimal_string(15)]).collect(),
        ),
        Format::Human => {
            let mut text = format!("{} seed {}\n", s.system, s.seed);
            for (n, d) in &s.entries {
                text.push_str(&format!("{n}\t{d}\t≈ {}\n", d.to_decimal_string(15)));
            }
            if let Some(d) = &s.infinity_diam {
                text.push_str(&format!("∞\t{d}\n"));
            }
            Ok(text)
        }
    }
}

fn render_verdict(out: &OutputArgs, v: &ClassificationVerdict) -> Result<String, Failure> {
    let flags = [
        ("compact", v.compact),
        ("syndetic", v.syndetic),
        ("thick", v.thick),
        ("thickly_syndetic", v.thickly_syndetic),
        ("periodic", v.periodic),
        ("thickly_periodic", v.thickly_periodic),
    ];
    match out.format {
        Format::Json => json(out, v),
        Format::Csv => {
            let mut header: Vec<&str> = flags.iter().map(|f| f.0).collect();
            header.push("witness");
            let mut row: Vec<String> = flags.iter().map(|f| f.1.to_string()).collect();
            row.push(v.witness.clone());
            csv_text(&header, vec![row])
        }
        Format::Human => {
            let mut text: String =
                flags.iter().map(|(k, b)| format!("{} {k}: {b}\n", if *b { "✓" } else { "✗" })).collect();
            text.push_str(&format!("witness: {}\n", v.witness));
            Ok(text)
        }
    }
}

fn render_value(out: &OutputArgs, v: &serde_json::Value, human: String) -> Result<String, Failure> {
    match out.format {
        Format::Json => json(out, v),
        Format::Csv => {
            let obj = v.as_object().cloned().unwrap_or_default();
            let header: Vec<&str> = obj.keys().map(String::as_str).collect();
            let row = obj.values().map(|x| x.as_str().map_or_else(|| x.to_string(), str::to_string)).collect();
            csv_text(&header, vec![row])
        }
        Format::Human => Ok(human),
    }
}

fn exit_for(verdict: Verdict, allow_bounded: bool) -> i32 {
    match verdict {
        Verdict::Verified => EXIT_OK,
        Verdict::BoundedEvidence if allow_bounded => EXIT_OK,
        _ => EXIT_UNVERIFIED,
    }
}

fn schedule_with_cap(cap: Option<u64>) -> Result<GrowthSchedule, Failure> {
    let s = GrowthSchedule::paper();
    Ok(match cap {
        Some(c) => s.with_index_cap(c)?,
        None => s,
    })
}

#[allow(clippy::too_many_arguments)]
fn schedule_cmd(
    out: &OutputArgs,
    n: Option<usize>,
    block: Option<usize>,
    index: Option<u64>,
    space: Option<Space>,
    window: Option<u64>,
    validate: Option<String>,
    index_cap: Option<u64>,
) -> Result<String, Failure> {
    let s = schedule_with_cap(index_cap)?;
    let need_space = || space.ok_or_else(|| Failure::Usage("--space X|Y is required here".into()));
    if let Some(n) = n {
        let (l, sl) = s.growth_values(n)?;
        let v = serde_json::json!({ "n": n, "L": l.to_string(), "scriptL": sl.to_string() });
        return render_value(out, &v, format!("L_{n} = {l}\n𝓛_{n} = {sl}\n"));
    }
    if let Some(b) = block {
        let d = s.block_descriptor(need_space()?, b)?;
        let v = serde_json::to_value(&d).map_err(|e| Failure::Io(e.to_string()))?;
        let human = format!(
            "{} block {}: base {}, {} intervals of length {}, stride {}\n",
            d.space, d.block, d.base, d.count, d.piece_length, d.stride
        );
        return render_value(out, &v, human);
    }
    if let Some(i) = index {
        let o = s.block_locate(need_space()?, i)?;
        let v = serde_json::to_value(&o).map_err(|e| Failure::Io(e.to_string()))?;
        let name = if o.space == Space::X { "I" } else { "J" };
        return render_value(
            out,
            &v,
            format!("{name}_{i} = {} (block {}, offset {})\n", o.interval, o.block, o.offset),
        );
    }
    if let Some(n) = window {
        let w = s.window_of(n)?;
        let v = serde_json::to_value(w).map_err(|e| Failure::Io(e.to_string()))?;
        let human = match w {
            Window::EnumeratedHead => format!("{n}: head (n < a_1)\n"),
            Window::XSlow { k, anchor } => format!("{n}: slow window k={k}, a_{k} = {anchor}, offset {}\n", n - anchor),
            Window::XFast { k, anchor } => format!("{n}: fast window k={k}, b_{k} = {anchor}, offset {}\n", n - anchor),
        };
        return render_value(out, &v, human);
    }
    if let Some(list) = validate {
        let custom = GrowthSchedule::custom(parse_biguint_list(&list)?)?;
        let check = custom.validate();
        let v = serde_json::to_value(&check).map_err(|e| Failure::Io(e.to_string()))?;
        let mark = if check.valid { "✓" } else { "✗" };
        return render_value(out, &v, format!("{mark} {}\n", check.reason));
    }
    Err(Failure::Usage("schedule needs one of --n, --block, --index, --window, --validate".into()))
}

fn execute(cli: &Cli) -> Result<(String, i32), Failure> {
    let out = &cli.output;
    match &cli.command {
        Command::Verify { target, epsilon, horizon, k_max, strict, allow_bounded, .. } => {
            let report = match target {
                Target::Example1 => verify_example1(&Example1Config {
                    epsilon: epsilon.clone(),
                    horizon: *horizon,
                    strict: *strict,
                    ..Default::default()
                })?,
                Target::Example2 => verify_example2(&Example2Config {
                    epsilon: epsilon.clone(),
                    horizon: *horizon,
                    k_max: *k_max,
                    strict: *strict,
                    ..Default::default()
                })?,
            };
            Ok((render_report(out, &report)?, exit_for(report.worst(), *allow_bounded)))
        }
        Command::Series { system, seed, from, to, index_cap } => {
            let seed = seed.clone().unwrap_or_else(|| {
                let text = if *system == System::Example1 { "[0, 1]" } else { "[1/2, 3/2]" };
                text.parse().expect("default seed")
            });
            let s = schedule_with_cap(*index_cap)?;
            let series = diam_series(&s, *system, &seed, *from..=*to)?;
            Ok((render_series(out, &series)?, EXIT_OK))
        }
        Command::Classify { subset } => Ok((render_verdict(out, &classify(subset))?, EXIT_OK)),
        Command::Schedule { n, block, index, space, window, validate, index_cap } => {
            Ok((schedule_cmd(out, *n, *block, *index, *space, *window, validate.clone(), *index_cap)?, EXIT_OK))
        }
    }
}

/// Parses `args` (including the program name), runs the command, writes the
/// artifact to `--out` or `stdout`, and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    let (text, code) = match execute(&cli) {
        Ok(v) => v,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            return EXIT_USAGE;
        }
        Err(Failure::Cap(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            return EXIT_CAP;
        }
        Err(Failure::Io(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            return EXIT_IO;
        }
    };
    let written = match &cli.output.out {
        Some(path) => File::create(path).and_then(|mut f| f.write_all(text.as_bytes())),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_IO;
    }
    code
}

pub fn main_entry() -> i32 {
    run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_worst_verdict() {
        assert_eq!(exit_for(Verdict::Verified, false), EXIT_OK);
        assert_eq!(exit_for(Verdict::BoundedEvidence, false), EXIT_UNVERIFIED);
        assert_eq!(exit_for(Verdict::BoundedEvidence, true), EXIT_OK);
        assert_eq!(exit_for(Verdict::PreconditionUnmet, true), EXIT_UNVERIFIED);
        assert_eq!(exit_for(Verdict::Refuted, true), EXIT_UNVERIFIED);
    }

    #[test]
    fn strict_flags() {
        let strict = |args: &[&str]| match Cli::try_parse_from(args).unwrap().command {
            Command::Verify { strict, .. } => strict,
            _ => unreachable!(),
        };
        assert!(strict(&["semiflow", "verify", "example1"]));
        assert!(strict(&["semiflow", "verify", "example1", "--strict"]));
        assert!(!strict(&["semiflow", "verify", "example1", "--no-strict"]));
    }
}
