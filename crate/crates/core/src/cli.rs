//! Command-line front end. [`run_command`] does all the work and returns the
//! exit code and output, so it can be tested without spawning a process.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::limits::{
    builtin_families, check_limit, default_depths, limit_birthday, birthday_probe, Exactness,
    LimitConfig, LimitVerdict, Note, Policy, Sequence,
};
use crate::notation::{parse_ordinal, parse_surreal, tail_text, ParseError, SetDisplay};
use crate::ordinal::Ordinal;
use crate::surreal::{
    add, from_rational, left_options, right_options, simplest_between, to_dyadic, Rational,
    SignExpansion,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "surreal", version, about = "Surreal numbers as sign expansions")]
struct Cli {
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonicalize an expansion and print its birthday.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Compare two expansions: less, equal or greater.
    Cmp {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Add two finite expansions.
    Add {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Dyadic value of a finite expansion.
    Value {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Sign expansion of a rational P/Q.
    Rat {
        #[arg(allow_hyphen_values = true)]
        q: String,
        /// Also print the first N signs.
        #[arg(long)]
        prefix: Option<u64>,
    },
    /// Left and right options of a finite expansion.
    Options {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Simplest expansion strictly between the bounds.
    Simplest {
        /// Lower bounds, repeated or comma separated.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        lo: Vec<String>,
        /// Upper bounds, repeated or comma separated.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        hi: Vec<String>,
    },
    /// Check a built-in sequence family for convergence.
    Limit {
        family: String,
        #[arg(long, value_enum, default_value_t = PolicyArg::Strict)]
        policy: PolicyArg,
        #[arg(long, default_value_t = 64)]
        horizon: u64,
        /// `A..B` for finite depths A to B, or a comma-separated list of ordinals.
        #[arg(long)]
        depth_samples: Option<String>,
        /// Candidate pool for the literal policy, repeated or comma separated.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        candidates: Vec<String>,
    },
    /// Partial sums of a series.
    Series {
        #[arg(value_enum)]
        kind: SeriesKind,
        #[arg(long, default_value_t = 8)]
        n: u64,
    },
    /// Birthdays of a family and its limit birthday.
    Birthday {
        family: String,
        #[arg(long, default_value_t = 16)]
        horizon: u64,
    },
    /// List the built-in families.
    Families,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PolicyArg {
    Strict,
    Literal,
}

impl From<PolicyArg> for Policy {
    fn from(p: PolicyArg) -> Policy {
        match p {
            PolicyArg::Strict => Policy::Strict,
            PolicyArg::Literal => Policy::Literal,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SeriesKind {
    Ones,
    Harmonic,
}

enum Failure {
    Usage(String),
    Math(Error),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownFamily(_) | Error::InvalidConfig(_) => Failure::Usage(e.to_string()),
            e => Failure::Math(e),
        }
    }
}

/// What a command produced: human text and the equivalent JSON.
struct Report {
    text: String,
    json: Value,
}

/// Runs the CLI on `argv` (including the program name).
pub fn run_command<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if e.use_stderr() {
                Output {
                    code: if code == 0 { EXIT_OK } else { EXIT_USAGE },
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let as_json = cli.json;
    match dispatch(cli.command) {
        Ok(r) => Output {
            code: EXIT_OK,
            stdout: if as_json {
                format!("{}\n", r.json)
            } else {
                r.text
            },
            stderr: String::new(),
        },
        Err(f) => {
            let (code, kind, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, "usage_error", m),
                Failure::Math(e) => (EXIT_MATH, "math_error", e.to_string()),
            };
            Output {
                code,
                stdout: if as_json {
                    format!("{}\n", json!({ "kind": kind, "message": msg }))
                } else {
                    String::new()
                },
                stderr: format!("error: {msg}\n"),
            }
        }
    }
}

fn dispatch(cmd: Command) -> Result<Report, Failure> {
    match cmd {
        Command::Eval { expr } => {
            let x = parse_surreal(&expr)?;
            Ok(Report {
                text: format!("{x}\nbirthday {}\n", x.dom()),
                json: surreal_json(&x),
            })
        }
        Command::Cmp { a, b } => {
            let (x, y) = (parse_surreal(&a)?, parse_surreal(&b)?);
            let word = match x.cmp(&y) {
                std::cmp::Ordering::Less => "less",
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Greater => "greater",
            };
            let pos = x.first_difference(&y);
            Ok(Report {
                text: format!("{word}\n"),
                json: json!({
                    "kind": "comparison",
                    "result": word,
                    "first_difference": pos.map(|p| p.to_string()),
                }),
            })
        }
        Command::Add { a, b } => {
            let z = add(&parse_surreal(&a)?, &parse_surreal(&b)?)?;
            Ok(surreal_report(&z))
        }
        Command::Value { a } => {
            let d = to_dyadic(&parse_surreal(&a)?)?;
            Ok(Report {
                text: format!("{d}\n"),
                json: json!({
                    "kind": "dyadic",
                    "value": d.to_string(),
                    "numerator": d.numerator().to_string(),
                    "exponent": d.exponent(),
                }),
            })
        }
        Command::Rat { q, prefix } => {
            let r: Rational = q.trim().parse().map_err(Failure::from)?;
            let x = from_rational(&r);
            let mut rep = surreal_report(&x);
            if let Some(n) = prefix {
                let signs: String = (0..n)
                    .map_while(|i| x.sign_at(&Ordinal::finite(i)))
                    .map(|s| s.as_char())
                    .collect();
                let _ = writeln!(rep.text, "prefix {signs}");
                rep.json["prefix"] = Value::String(signs);
            }
            rep.json["value"] = Value::String(r.to_string());
            Ok(rep)
        }
        Command::Options { a } => {
            let x = parse_surreal(&a)?;
            let (l, r) = (left_options(&x)?, right_options(&x)?);
            Ok(Report {
                text: format!("L = {}\nR = {}\n", SetDisplay(&l), SetDisplay(&r)),
                json: json!({
                    "kind": "options",
                    "left": l.iter().map(surreal_json).collect::<Vec<_>>(),
                    "right": r.iter().map(surreal_json).collect::<Vec<_>>(),
                }),
            })
        }
        Command::Simplest { lo, hi } => {
            let lows = parse_all(&lo)?;
            let highs = parse_all(&hi)?;
            Ok(surreal_report(&simplest_between(&lows, &highs)?))
        }
        Command::Limit {
            family,
            policy,
            horizon,
            depth_samples,
            candidates,
        } => {
            let s = builtin_families().get(&family)?;
            limit_report(&s, policy.into(), horizon, depth_samples.as_deref(), &candidates)
        }
        Command::Series { kind, n } => series_report(kind, n),
        Command::Birthday { family, horizon } => {
            let s = builtin_families().get(&family)?;
            if horizon == 0 {
                return Err(Failure::Usage("horizon must be positive".into()));
            }
            let doms = birthday_probe(&s, horizon);
            let (b, exact) = limit_birthday(&s, horizon);
            let list = doms.iter().map(|d| d.to_string()).collect::<Vec<_>>();
            let mut text = format!(
                "birthdays [{}]\nlimit birthday {b} ({})\n",
                list.join(", "),
                exactness_word(exact)
            );
            push_notes(&mut text, s.notes());
            Ok(Report {
                text,
                json: json!({
                    "kind": "birthday",
                    "family": s.name(),
                    "birthdays": list,
                    "limit_birthday": b.to_string(),
                    "exactness": exact,
                    "notes": s.notes(),
                }),
            })
        }
        Command::Families => {
            let names: Vec<&str> = builtin_families().names().collect();
            Ok(Report {
                text: names.iter().map(|n| format!("{n}\n")).collect(),
                json: json!({ "kind": "families", "names": names }),
            })
        }
    }
}

fn parse_all(items: &[String]) -> Result<Vec<SignExpansion>, Failure> {
    items
        .iter()
        .map(|t| parse_surreal(t).map_err(Failure::from))
        .collect()
}

/// `A..B` (finite, inclusive) or a comma-separated list of ordinals.
fn parse_depths(text: &str) -> Result<Vec<Ordinal>, Failure> {
    if let Some((a, b)) = text.split_once("..") {
        let bound = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Failure::Usage(format!("bad depth range `{text}`")))
        };
        let (a, b) = (bound(a)?, bound(b.trim_start_matches('='))?);
        if a > b {
            return Err(Failure::Usage(format!("empty depth range `{text}`")));
        }
        return Ok((a..=b).map(Ordinal::finite).collect());
    }
    text.split(',')
        .map(|t| parse_ordinal(t).map_err(Failure::from))
        .collect()
}

fn limit_report(
    s: &Sequence,
    policy: Policy,
    horizon: u64,
    depth_text: Option<&str>,
    candidates: &[String],
) -> Result<Report, Failure> {
    let depths = match depth_text {
        Some(t) => parse_depths(t)?,
        None => default_depths(&limit_birthday(s, horizon.max(1)).0),
    };
    let mut cfg = LimitConfig::new(policy, horizon, depths);
    if !candidates.is_empty() {
        cfg = cfg.with_pool(parse_all(candidates)?);
    }
    let verdict = check_limit(s, &cfg)?;
    let (b, exact) = limit_birthday(s, horizon);

    let mut text = String::new();
    let mut j = json!({
        "kind": "verdict",
        "verdict": verdict.kind(),
        "family": s.name(),
        "policy": policy,
        "horizon": horizon,
        "depths": cfg.depth_samples.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "limit_birthday": b.to_string(),
        "birthday_exactness": exact,
        "notes": s.notes(),
    });
    match &verdict {
        LimitVerdict::Converged {
            limit,
            checks,
            certified,
        } => {
            let how = if *certified { "certified" } else { "probe only" };
            let _ = writeln!(text, "converged {limit} ({how})");
            let _ = writeln!(text, "policy {policy}, horizon {horizon}, limit birthday {b}");
            let _ = writeln!(text, "depth\tn0");
            for c in checks {
                let _ = writeln!(text, "{}\t{}", c.depth, c.n0);
            }
            j["limit"] = surreal_json(limit);
            j["certified"] = json!(certified);
            j["n0_table"] = checks
                .iter()
                .map(|c| {
                    json!({
                        "depth": c.depth.to_string(),
                        "n0": c.n0,
                        "empirical_n0": c.empirical_n0,
                        "certified_n0": c.certified_n0,
                    })
                })
                .collect();
        }
        LimitVerdict::NoLimit {
            position,
            witnesses,
        } => {
            let _ = writeln!(
                text,
                "no limit: the sign at position {position} differs between terms {} and {}",
                witnesses.0, witnesses.1
            );
            j["position"] = json!(position.to_string());
            j["witnesses"] = json!([witnesses.0, witnesses.1]);
        }
        LimitVerdict::NotUnique { candidates } => {
            let _ = writeln!(text, "not unique: {}", SetDisplay(candidates));
            j["candidates"] = candidates.iter().map(surreal_json).collect();
        }
        LimitVerdict::Inconclusive { reason } => {
            let _ = writeln!(text, "inconclusive: {reason}");
            j["reason"] = json!(reason);
        }
    }
    push_notes(&mut text, s.notes());
    Ok(Report { text, json: j })
}

fn series_report(kind: SeriesKind, n: u64) -> Result<Report, Failure> {
    let family = match kind {
        SeriesKind::Ones => "ones_series",
        SeriesKind::Harmonic => "harmonic_series",
    };
    let s = builtin_families().get(family)?;
    let mut sum = Rational::zero();
    let mut text = String::new();
    let mut rows = Vec::new();
    for k in 1..=n {
        sum = sum
            + match kind {
                SeriesKind::Ones => Rational::integer(1),
                SeriesKind::Harmonic => Rational::new(1, k)?,
            };
        let x = from_rational(&sum);
        let _ = writeln!(text, "{k}\t{sum}\t{x}");
        let mut row = surreal_json(&x);
        row["n"] = json!(k);
        row["value"] = json!(sum.to_string());
        rows.push(row);
    }
    let verdict = check_limit(&s, &LimitConfig::standard(Policy::Strict))?;
    let limit = match verdict.limit() {
        Some(x) => x.to_string(),
        None => verdict.kind().to_string(),
    };
    let _ = writeln!(text, "limit {limit}");
    push_notes(&mut text, s.notes());
    Ok(Report {
        text,
        json: json!({
            "kind": "series",
            "family": family,
            "partial_sums": rows,
            "verdict": verdict.kind(),
            "limit": verdict.limit().map(surreal_json),
            "notes": s.notes(),
        }),
    })
}

fn push_notes(text: &mut String, notes: &[Note]) {
    for n in notes {
        let kind = serde_json::to_value(n.kind).expect("serializable");
        let _ = writeln!(
            text,
            "note ({}) {}: claimed {}, computed {}",
            kind.as_str().unwrap_or_default(),
            n.subject,
            n.claimed,
            n.computed
        );
    }
}

fn exactness_word(e: Exactness) -> &'static str {
    match e {
        Exactness::Certified => "certified",
        Exactness::Heuristic => "heuristic",
    }
}

fn surreal_report(x: &SignExpansion) -> Report {
    Report {
        text: format!("{x}\n"),
        json: surreal_json(x),
    }
}

/// `{"kind", "text", "runs", "tail", "dom"}`.
pub fn surreal_json(x: &SignExpansion) -> Value {
    let runs: Vec<Value> = x
        .runs()
        .iter()
        .map(|r| json!({ "sign": r.sign.as_char().to_string(), "len": r.len.to_string() }))
        .collect();
    let tail = x.tail().map(|t| {
        let text = tail_text(t);
        let word = text
            .strip_prefix('(')
            .and_then(|w| w.strip_suffix(')'))
            .map(str::to_string)
            .unwrap_or(text);
        json!({ "word": word, "repeat": "w" })
    });
    json!({
        "kind": "surreal",
        "text": x.to_string(),
        "runs": runs,
        "tail": tail,
        "dom": x.dom().to_string(),
    })
}
