//! The `knotalg` command line.
//!
//! Expressions are single shell arguments and must be quoted, since `<`
//! and `>` are shell redirections: `knotalg components "<<2> <-2>> <2> <-2>"`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use knotalg_core::algebra::{opacity, trace};
use knotalg_core::bracket::{bracket_with, raw_bracket_with};
use knotalg_core::enumerate::{render_table, table, Kind};
use knotalg_core::graph::{laplacian_components, mod2_laplacian, nullity_gf2, PlaneGraph};
use knotalg_core::oracle::trace_components;
use knotalg_core::rational::{cf_of_fraction, cf_value, classify_fraction, Fraction, FractionError};
use knotalg_core::tensor::build_cube_with;
use knotalg_core::{closure_components, parse, Capacity, Error, Expr};
use num_bigint::BigInt;
use serde_json::{json, Value};

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_CAPACITY: u8 = 3;
pub const EXIT_INTERNAL: u8 = 4;

/// Environment variable overriding the crossing cap of state sums.
pub const MAX_CROSSINGS_VAR: &str = "KNOTALG_MAX_CROSSINGS";

#[derive(Debug, Parser)]
#[command(name = "knotalg", version, about = "Crossing algebra for arborescent knots and links")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Connectivity class, loop count and annotated evaluation.
    Eval { expr: String },
    /// Components of the numerator closure.
    Components {
        expr: String,
        /// Cross-check against strand tracing and the mod-2 Laplacian.
        #[arg(long)]
        verify: bool,
    },
    /// Knot or link verdict for a fraction P/Q.
    Fraction { fraction: String },
    /// Continued fraction of P/Q.
    Cf { fraction: String },
    /// Value of a continued fraction a1,a2,...,an.
    Cfval {
        #[arg(allow_hyphen_values = true)]
        terms: String,
    },
    /// Rational knots and links with N crossings.
    Enumerate { n: u32 },
    /// Bracket polynomial, divided by the loop value.
    Bracket {
        expr: String,
        /// Print the three-variable state sum instead.
        #[arg(long)]
        raw: bool,
    },
    /// Which leaves can change the component count.
    Opacity { expr: String },
    /// State cube with loop data and merge/split edges, as JSON.
    Cube { expr: String },
    /// GF(2) nullity of the mod-2 Laplacian of a graph or of the closed
    /// checkerboard network of an expression.
    Nullity {
        /// JSON file {"nodes": n, "edges": [[u, v], ...]}.
        #[arg(long, conflicts_with = "expr", required_unless_present = "expr")]
        graph: Option<PathBuf>,
        expr: Option<String>,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
    offset: Option<usize>,
}

impl Failure {
    fn new(code: u8, kind: &'static str, message: impl Into<String>) -> Failure {
        Failure { code, kind, message: message.into(), offset: None }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse(p) => Failure { code: EXIT_PARSE, kind: "parse", offset: p.offset(), message: p.to_string() },
            Error::Capacity { .. } => Failure::new(EXIT_CAPACITY, "capacity", e.to_string()),
            Error::Internal(_) | Error::Tensor(_) => Failure::new(EXIT_INTERNAL, "internal", e.to_string()),
            Error::Fraction(_) | Error::Invalid(_) => Failure::new(EXIT_FAILURE, "invalid", e.to_string()),
        }
    }
}

impl From<FractionError> for Failure {
    fn from(e: FractionError) -> Failure {
        match e {
            FractionError::Syntax(_) => Failure::new(EXIT_PARSE, "parse", e.to_string()),
            _ => Failure::new(EXIT_FAILURE, "invalid", e.to_string()),
        }
    }
}

/// Runs the command line `args`, whose first item is the program name.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CommandResult { code, stdout: text, stderr: String::new() }
            } else {
                CommandResult { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => CommandResult { code: 0, stdout, stderr: String::new() },
        Err(f) => {
            let mut obj = json!({"error": f.kind, "message": f.message});
            if let Some(offset) = f.offset {
                obj["offset"] = json!(offset);
            }
            CommandResult { code: f.code, stdout: String::new(), stderr: format!("{obj}\n") }
        }
    }
}

fn capacity() -> Result<Capacity, Failure> {
    match std::env::var(MAX_CROSSINGS_VAR) {
        Err(_) => Ok(Capacity::DEFAULT),
        Ok(v) => v
            .trim()
            .parse()
            .ok()
            .and_then(Capacity::new)
            .ok_or_else(|| Failure::new(EXIT_PARSE, "parse", format!("{MAX_CROSSINGS_VAR}={v:?} is not an integer in 0..=63"))),
    }
}

fn expr(text: &str) -> Result<Expr, Failure> {
    parse(text).map_err(|e| Error::from(e).into())
}

fn fraction(text: &str) -> Result<Fraction, Failure> {
    Ok(text.parse::<Fraction>()?)
}

fn output(format: Format, text: String, value: Value) -> String {
    match format {
        Format::Text => text,
        Format::Json => format!("{value}\n"),
    }
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let f = cli.format;
    Ok(match &cli.command {
        Command::Eval { expr: text } => {
            let t = trace(&expr(text)?);
            let marks: Vec<String> = t.marks.iter().map(|m| m.to_string()).collect();
            let mut text = format!("value: {}\ncomponents: {}\n", t.value, t.value.closure_components());
            if !marks.is_empty() {
                let _ = writeln!(text, "marks: {}", marks.join(" "));
            }
            let _ = writeln!(text, "trace: {}", t.annotated);
            let value = json!({
                "class": t.value.class.to_string(),
                "loops": t.value.loops,
                "components": t.value.closure_components(),
                "marks": marks,
                "trace": t.annotated,
            });
            output(f, text, value)
        }
        Command::Components { expr: text, verify } => {
            let e = expr(text)?;
            let k = closure_components(&e) as usize;
            if !verify {
                return Ok(output(f, format!("{k}\n"), json!({ "components": k })));
            }
            let oracle = trace_components(&e);
            let nullity = laplacian_components(&e);
            if oracle != k || nullity != k {
                return Err(Failure::new(
                    EXIT_INTERNAL,
                    "internal",
                    format!("disagreement on {e}: algebra {k}, tracing {oracle}, laplacian {nullity}"),
                ));
            }
            output(
                f,
                format!("{k}\nverified: algebra {k}, tracing {oracle}, laplacian {nullity}\n"),
                json!({"components": k, "verified": true, "tracing": oracle, "laplacian": nullity}),
            )
        }
        Command::Fraction { fraction: text } => {
            let fr = fraction(text)?;
            let class = classify_fraction(&fr)?;
            let kind = if class.is_link() { Kind::Link } else { Kind::Knot };
            output(
                f,
                format!("{class}\n"),
                json!({"fraction": fr.to_string(), "class": class.conn_class().to_string(), "kind": kind, "components": class.components()}),
            )
        }
        Command::Cf { fraction: text } => {
            let fr = fraction(text)?;
            let terms = cf_of_fraction(&fr)?;
            let list: Vec<String> = terms.iter().map(BigInt::to_string).collect();
            output(f, format!("[{}]\n", list.join(",")), json!({"fraction": fr.to_string(), "terms": list}))
        }
        Command::Cfval { terms } => {
            let parsed = terms
                .split(',')
                .map(|t| t.trim().parse::<BigInt>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Failure::new(EXIT_PARSE, "parse", format!("cannot read {terms:?} as a1,a2,...,an")))?;
            let fr = cf_value(&parsed)?;
            output(f, format!("{fr}\n"), json!({"terms": terms, "fraction": fr.to_string()}))
        }
        Command::Enumerate { n } => {
            let entries = table(*n)?;
            let knots = entries.iter().filter(|e| e.class == Kind::Knot).count();
            let mut text = render_table(&entries);
            let _ = writeln!(text, "{knots} knots, {} links", entries.len() - knots);
            output(f, text, serde_json::to_value(&entries).expect("serializable"))
        }
        Command::Bracket { expr: text, raw } => {
            let e = expr(text)?;
            let cap = capacity()?;
            if *raw {
                let r = raw_bracket_with(&e, cap)?;
                let terms: Vec<Value> = r.terms().map(|((i, j, k), m)| json!([i, j, k, m])).collect();
                output(f, format!("{r}\n"), json!({ "terms": terms }))
            } else {
                let p = bracket_with(&e, cap)?;
                output(f, format!("{p}\n"), serde_json::to_value(&p).expect("serializable"))
            }
        }
        Command::Opacity { expr: text } => {
            let report = opacity(&expr(text)?);
            let mut out = format!("components: {}\n", report.components);
            for l in &report.leaves {
                let _ = writeln!(out, "{:>3}  {:<6}  {:<11}  {}", l.path, l.leaf, format!("{:?}", l.opacity).to_lowercase(), l.toggled_components);
            }
            output(f, out, serde_json::to_value(&report).expect("serializable"))
        }
        Command::Cube { expr: text } => {
            let cube = build_cube_with(&expr(text)?, capacity()?)?;
            format!("{}\n", serde_json::to_string(&cube).expect("serializable"))
        }
        Command::Nullity { graph, expr: text } => {
            let n = match (graph, text) {
                (Some(path), _) => {
                    let data = std::fs::read_to_string(path)
                        .map_err(|e| Failure::new(EXIT_FAILURE, "io", format!("{}: {e}", path.display())))?;
                    let g: PlaneGraph = serde_json::from_str(&data)
                        .map_err(|e| Failure::new(EXIT_PARSE, "parse", format!("{}: {e}", path.display())))?;
                    let g = PlaneGraph::new(g.nodes, g.edges).map_err(|m| Failure::new(EXIT_FAILURE, "invalid", m))?;
                    nullity_gf2(&mod2_laplacian(&g))
                }
                (None, Some(text)) => laplacian_components(&expr(text)?),
                (None, None) => unreachable!("clap requires one"),
            };
            output(f, format!("{n}\n"), json!({ "nullity": n }))
        }
    })
}
