//! Command-line front end.
//!
//! Graphs are read from `--graph FILE` or standard input, covers from
//! `--cover FILE`. Text output is one `key=value` line per field; with
//! `--format records` each result is a single JSON line instead.
//!
//! Exit status: 0 on success, 1 when a verification suite fails, 2 on
//! usage, parse or structure errors, 3 when a capacity limit is exceeded.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::chromatic::chromatic_polynomial;
use crate::cover::{classify_two_path, find_canonical_labeling, FullCover};
use crate::dp::{dp_chromatic_number, dp_color_value, DpOptions, DEFAULT_BUDGET};
use crate::error::Error;
use crate::graph::{make_family, Family, Graph};
use crate::verify::{self, CanonicalSweep, CheckReport};

#[derive(Parser, Debug)]
#[command(name = "dpcolor", version, about = "Exact DP-coloring computations on small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Graph file (default: standard input).
    #[arg(long, global = true)]
    graph: Option<PathBuf>,
    /// Cover file.
    #[arg(long, global = true)]
    cover: Option<PathBuf>,
    /// Fold count.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    m: Option<u64>,
    /// Largest number of covers a search may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Worker threads for searches and parallel suites.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Chromatic polynomial, optionally evaluated.
    Chromatic {
        #[arg(long)]
        at: Option<u64>,
    },
    /// Coloring count of a cover.
    Count,
    /// Canonical labeling of a cover, or NONE.
    Canonical,
    /// Minimum coloring count over full covers.
    Dpfn {
        /// Write the first minimizing cover here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Least m with every full m-fold cover colorable.
    Dpchi {
        #[arg(long, default_value_t = 6)]
        max_m: usize,
    },
    /// Pattern counts m_1..m_5 of the paths through a1 - a2 - a3.
    Classify { a1: usize, a2: usize, a3: usize },
    /// Emit a family graph: path N, cycle N, complete N, star N, wheel N,
    /// theta R S T, bipartite A B.
    Gen {
        family: String,
        #[arg(required = true)]
        params: Vec<usize>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Bounds,
    Cycles,
    Tree,
    TwoConnected,
    Expectation,
    Pinned,
    TwoPath,
    Canonical,
    W4,
    Properties,
    All,
}

enum Failure {
    Usage(String),
    Lib(Error),
    SuiteFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Fields = Vec<(&'static str, Value)>;

struct Ctx<'a> {
    cli: &'a Cli,
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn opts(&self) -> DpOptions {
        DpOptions {
            budget: self.cli.budget,
            jobs: self.cli.jobs as usize,
            ..DpOptions::default()
        }
    }

    fn m(&self) -> Result<usize, Failure> {
        self.cli.m.map(|m| m as usize).ok_or_else(|| Failure::Usage("--m is required".into()))
    }

    fn graph(&mut self) -> Result<Arc<Graph>, Failure> {
        let text = match &self.cli.graph {
            Some(path) => read_file(path)?,
            None => {
                let mut s = String::new();
                self.stdin
                    .read_to_string(&mut s)
                    .map_err(|e| Failure::Usage(format!("reading standard input: {e}")))?;
                s
            }
        };
        Ok(Arc::new(Graph::parse(&text)?))
    }

    fn cover(&mut self) -> Result<FullCover, Failure> {
        let path = self.cli.cover.clone().ok_or_else(|| Failure::Usage("--cover is required".into()))?;
        let g = self.graph()?;
        Ok(FullCover::parse(g, &read_file(&path)?)?)
    }

    fn emit(&mut self, fields: Fields) -> Result<(), Failure> {
        let text = match self.cli.format {
            Format::Records => {
                let map: Map<String, Value> = fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
                format!("{}\n", Value::Object(map))
            }
            Format::Text => fields.iter().map(|(k, v)| format!("{k}={}\n", text_value(v))).collect(),
        };
        self.write(&text)
    }

    fn write(&mut self, s: &str) -> Result<(), Failure> {
        self.out.write_all(s.as_bytes()).map_err(|e| Failure::Usage(format!("writing output: {e}")))
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) if !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || c == '"' || c == '=') => s.clone(),
        Value::Array(items) => items.iter().map(text_value).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

/// Big integers go out as JSON strings so no precision is lost.
fn big(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let mut ctx = Ctx { cli: &cli, stdin, out };
    match dispatch(&mut ctx) {
        Ok(()) => 0,
        Err(Failure::SuiteFailed) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Capacity { .. } => 3,
                _ => 2,
            }
        }
    }
}

fn dispatch(ctx: &mut Ctx<'_>) -> Result<(), Failure> {
    match &ctx.cli.command {
        Command::Chromatic { at } => {
            let g = ctx.graph()?;
            let p = chromatic_polynomial(&g)?;
            let mut fields: Fields = vec![
                ("polynomial", Value::String(p.to_string())),
                ("coefficients", Value::Array(p.coeffs().iter().map(big).collect())),
            ];
            if let Some(x) = at {
                fields.push(("at", json!(x)));
                fields.push(("value", big(p.eval(*x))));
            }
            ctx.emit(fields)
        }
        Command::Count => {
            let h = ctx.cover()?;
            let fields = vec![("m", json!(h.m())), ("count", big(h.count_colorings()))];
            ctx.emit(fields)
        }
        Command::Canonical => {
            let h = ctx.cover()?;
            let labeling = match find_canonical_labeling(&h) {
                Some(pi) => Value::Array(
                    pi.pi.iter().map(|p| Value::Array(p.images().iter().map(|&i| json!(i)).collect())).collect(),
                ),
                None => Value::String("NONE".into()),
            };
            let text = match (&labeling, ctx.cli.format) {
                (Value::Array(rows), Format::Text) => Value::String(
                    rows.iter().map(text_value).map(|r| r.replace(',', " ")).collect::<Vec<_>>().join(" | "),
                ),
                _ => labeling,
            };
            ctx.emit(vec![("m", json!(h.m())), ("labeling", text)])
        }
        Command::Dpfn { witness } => {
            let g = ctx.graph()?;
            let m = ctx.m()?;
            let r = dp_color_value(&g, m, &ctx.opts())?;
            if let (Some(path), Some(w)) = (witness, r.witnesses.first()) {
                std::fs::write(path, w.to_text()).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            ctx.emit(vec![
                ("quantity", Value::String("P_DP over full covers".into())),
                ("m", json!(m)),
                ("min_count", big(r.min_count)),
                ("witnesses", json!(r.witness_total)),
                ("covers_examined", json!(r.covers_examined)),
            ])
        }
        Command::Dpchi { max_m } => {
            let g = ctx.graph()?;
            let chi = dp_chromatic_number(&g, *max_m, ctx.cli.budget)?;
            ctx.emit(vec![("dp_chromatic_number", json!(chi))])
        }
        Command::Classify { a1, a2, a3 } => {
            let h = ctx.cover()?;
            let cases = classify_two_path(&h, *a1, *a2, *a3)?;
            ctx.emit(vec![
                ("m_1", json!(cases.get(1))),
                ("m_2", json!(cases.get(2))),
                ("m_3", json!(cases.get(3))),
                ("m_4", json!(cases.get(4))),
                ("m_5", json!(cases.get(5))),
            ])
        }
        Command::Gen { family, params } => {
            let g = make_family(Family::from_parts(family, params)?)?;
            ctx.write(&g.to_text())
        }
        Command::Verify { suite } => {
            let reports = run_suite(*suite, ctx)?;
            let mut ok = true;
            for r in &reports {
                ok &= r.passed();
                let text = match ctx.cli.format {
                    Format::Text => r.to_text(),
                    Format::Records => r.to_records(),
                };
                ctx.write(&text)?;
            }
            if ok {
                Ok(())
            } else {
                Err(Failure::SuiteFailed)
            }
        }
    }
}

fn run_suite(suite: Suite, ctx: &Ctx<'_>) -> Result<Vec<CheckReport>, Failure> {
    let opts = ctx.opts();
    let jobs = opts.jobs;
    let seed = ctx.cli.seed;
    let one = |s: Suite| -> Result<CheckReport, Error> {
        match s {
            Suite::Bounds => verify::check_chromatic_bounds(6, 5),
            Suite::Cycles => verify::check_cycle_dp(7, 4, &opts),
            Suite::Tree => verify::check_tree_bound(6, 5, 4, &opts),
            Suite::TwoConnected => verify::check_two_connected_bounds(5, 2, 4, &opts),
            Suite::Expectation => verify::check_expectation_identities(100, seed, jobs),
            Suite::Pinned => verify::check_pinned_sweep(5, 2, 4, jobs),
            Suite::TwoPath => {
                let mut report = CheckReport::new("two-path");
                for (r, s, t) in [(1, 2, 2), (1, 2, 3), (2, 2, 2)] {
                    report.extend(verify::check_two_path_lemma(r, s, t, 3, &opts)?);
                }
                Ok(report)
            }
            Suite::Canonical => verify::check_canonical_theorems(&CanonicalSweep::default(), &opts),
            Suite::W4 => verify::reproduce_w4_examples(&opts),
            Suite::Properties => verify::check_properties(1000, seed, 6, &opts),
            Suite::All => unreachable!(),
        }
    };
    let suites = match suite {
        Suite::All => vec![
            Suite::Bounds,
            Suite::Cycles,
            Suite::Tree,
            Suite::TwoConnected,
            Suite::Expectation,
            Suite::Pinned,
            Suite::TwoPath,
            Suite::Canonical,
            Suite::W4,
            Suite::Properties,
        ],
        s => vec![s],
    };
    suites.into_iter().map(|s| one(s).map_err(Failure::from)).collect()
}
