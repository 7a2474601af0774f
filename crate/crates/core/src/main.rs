use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use partavoid::avoidance::find_occurrence;
use partavoid::enumeration::{available_methods, count_by, EnumError, Method};
use partavoid::verify::{verify, MapKind};
use partavoid::wilf::{
    build_table, check_beta_threshold, check_three_block_decomposition, wilf_classes,
};
use partavoid::SetPartition;

const EXIT_USAGE: u8 = 2;
const EXIT_UNAVAILABLE: u8 = 3;
const EXIT_DISAGREE: u8 = 4;
const EXIT_PROPERTY: u8 = 5;

/// Pattern avoidance in set partitions.
///
/// Patterns are written block by block with `/` between blocks, either spaced
/// ("1 3/2 4") or compact ("13/24", only when every element is at most 9).
#[derive(Parser)]
#[command(name = "partavoid", version)]
struct Cli {
    /// Worker threads for exhaustive counts.
    #[arg(long, global = true, env = "PARTAVOID_SHARDS")]
    shards: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Oracle,
    Formula,
    Gf,
    /// Every method available for the pattern, with an agreement verdict.
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Count partitions of [n] avoiding a pattern.
    Count {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "oracle")]
        method: MethodArg,
        /// text or json.
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide whether sigma contains tau and print a witness subset.
    Avoid {
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        tau: String,
    },
    /// Exhaustively check the properties of one map on every input up to size n.
    Verify {
        #[arg(long)]
        map: MapKind,
        /// Pattern size; each map has its own default.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: usize,
        /// text or json.
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Avoider counts for every pattern of [k], n = k+1..=n_max.
    Table {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Empirical Wilf classes of the patterns of [k] with supporting evidence.
    Classes {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_max: usize,
        /// text or json.
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The chain of one-block-minus-a-point patterns of [k] and its strictness threshold.
    Threshold {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Compare 1/24/3 with 1/2/3/4 block by block.
    Decomposition {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

fn parse_pattern(flag: &str, text: &str) -> Result<SetPartition, Failure> {
    text.parse()
        .map_err(|e| Failure::usage(format!("--{flag} {text:?}: {e}")))
}

fn default_shards() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let shards = cli.shards.unwrap_or_else(default_shards).max(1);
    let mut out = String::new();
    let result = run(cli.command, shards, &mut out);
    print!("{out}");
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command, shards: usize, out: &mut String) -> Result<(), Failure> {
    match command {
        Command::Count {
            pattern,
            n,
            method,
            format,
        } => cmd_count(&pattern, n, method, format, shards, out),
        Command::Avoid { sigma, tau } => {
            let s = parse_pattern("sigma", &sigma)?;
            let t = parse_pattern("tau", &tau)?;
            match find_occurrence(&s, &t) {
                Some(w) => {
                    let w: Vec<String> = w.iter().map(ToString::to_string).collect();
                    writeln!(out, "CONTAINS {{{}}}", w.join(",")).unwrap();
                }
                None => writeln!(out, "AVOIDS").unwrap(),
            }
            Ok(())
        }
        Command::Verify { map, k, n, format } => cmd_verify(map, k, n, format, out),
        Command::Table { k, n_max, format } => {
            check_range(k, n_max)?;
            let table = build_table(k, n_max, shards);
            match format {
                Format::Csv => out.push_str(&table.to_csv()),
                Format::Json => {
                    let rows: Vec<_> = table
                        .rows()
                        .map(|(p, c)| {
                            json!({
                                "pattern": p.to_string(),
                                "counts": c.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    let doc = json!({"k": k, "ns": table.ns().collect::<Vec<_>>(), "rows": rows});
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap()).unwrap();
                }
                Format::Text => {
                    let width = table
                        .patterns()
                        .iter()
                        .map(|p| p.to_string().len())
                        .max()
                        .unwrap_or(0);
                    write!(out, "{:width$}", "").unwrap();
                    for n in table.ns() {
                        write!(out, " {n:>10}").unwrap();
                    }
                    out.push('\n');
                    for (p, c) in table.rows() {
                        write!(out, "{:width$}", p.to_string()).unwrap();
                        for x in c {
                            write!(out, " {x:>10}").unwrap();
                        }
                        out.push('\n');
                    }
                }
            }
            Ok(())
        }
        Command::Classes { k, n_max, format } => {
            check_range(k, n_max)?;
            let report = wilf_classes(&build_table(k, n_max, shards));
            match format {
                Format::Json => writeln!(out, "{}", report.to_json()).unwrap(),
                Format::Text | Format::Csv => {
                    for class in &report.classes {
                        writeln!(out, "{}", class.patterns.join(" ~ ")).unwrap();
                    }
                    writeln!(
                        out,
                        "matches known equivalences: {}",
                        report.matches_prediction
                    )
                    .unwrap();
                }
            }
            Ok(())
        }
        Command::Threshold { k, n_max } => {
            if k < 3 || n_max <= k {
                return Err(Failure::usage(format!(
                    "need k >= 3 and n_max > k, got k = {k}, n_max = {n_max}"
                )));
            }
            let r = check_beta_threshold(k, n_max, shards);
            writeln!(out, "{}", serde_json::to_string_pretty(&r).unwrap()).unwrap();
            property(r.passed)
        }
        Command::Decomposition { n_max } => {
            if n_max < 5 {
                return Err(Failure::usage("need n_max >= 5"));
            }
            let r = check_three_block_decomposition(n_max);
            writeln!(out, "{}", serde_json::to_string_pretty(&r).unwrap()).unwrap();
            property(r.passed)
        }
    }
}

fn property(passed: bool) -> Result<(), Failure> {
    if passed {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_PROPERTY,
            message: "property check failed".into(),
        })
    }
}

fn check_range(k: usize, n_max: usize) -> Result<(), Failure> {
    if k < 2 || n_max <= k {
        return Err(Failure::usage(format!(
            "need k >= 2 and n_max > k, got k = {k}, n_max = {n_max}"
        )));
    }
    Ok(())
}

fn cmd_count(
    pattern: &str,
    n: usize,
    method: MethodArg,
    format: Format,
    shards: usize,
    out: &mut String,
) -> Result<(), Failure> {
    let tau = parse_pattern("pattern", pattern)?;
    let methods = match method {
        MethodArg::Oracle => vec![Method::Oracle],
        MethodArg::Formula => vec![Method::Formula],
        MethodArg::Gf => vec![Method::Gf],
        MethodArg::All => available_methods(&tau),
    };
    let mut counts = Vec::new();
    for m in &methods {
        match count_by(&tau, n, *m, shards) {
            Ok(c) => counts.push(c),
            Err(e @ EnumError::MethodUnavailable { .. }) => {
                return Err(Failure {
                    code: EXIT_UNAVAILABLE,
                    message: e.to_string(),
                })
            }
            Err(e) => return Err(Failure::usage(e.to_string())),
        }
    }
    let agree = counts.windows(2).all(|w| w[0] == w[1]);
    let verdict = (method == MethodArg::All).then_some(if agree { "AGREE" } else { "DISAGREE" });
    match format {
        Format::Json => {
            let by: serde_json::Map<_, _> = methods
                .iter()
                .zip(&counts)
                .map(|(m, c)| (m.to_string(), json!(c.to_string())))
                .collect();
            let mut doc = json!({"pattern": tau.to_string(), "n": n, "counts": by});
            if let Some(v) = verdict {
                doc["verdict"] = json!(v);
            }
            writeln!(out, "{doc}").unwrap();
        }
        Format::Text | Format::Csv => {
            let mut line: Vec<String> = counts.iter().map(ToString::to_string).collect();
            line.extend(verdict.map(String::from));
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
    }
    if agree {
        Ok(())
    } else {
        let detail: Vec<String> = methods
            .iter()
            .zip(&counts)
            .map(|(m, c)| format!("{m}={c}"))
            .collect();
        Err(Failure {
            code: EXIT_DISAGREE,
            message: format!("methods disagree: {}", detail.join(", ")),
        })
    }
}

fn cmd_verify(
    map: MapKind,
    k: Option<usize>,
    n: usize,
    format: Format,
    out: &mut String,
) -> Result<(), Failure> {
    let k = k.unwrap_or(map.default_k());
    let min_k = match map {
        MapKind::Slide | MapKind::PhiA | MapKind::Psi | MapKind::TwoBlock => 3,
        _ => 2,
    };
    if k < min_k || k > 8 {
        return Err(Failure::usage(format!(
            "--k {k} is outside {min_k}..=8 for {map}"
        )));
    }
    if n == 0 || n > 12 {
        return Err(Failure::usage(format!("--n {n} is outside 1..=12")));
    }
    let r = verify(map, k, n);
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&r).unwrap()).unwrap(),
        Format::Text | Format::Csv => {
            let verdict = if r.passed { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "{verdict} {} k={} n={} checks={}",
                r.map, r.k, r.n, r.checks
            )
            .unwrap();
            for f in &r.failures {
                writeln!(out, "counterexample: {f}").unwrap();
            }
        }
    }
    property(r.passed)
}
