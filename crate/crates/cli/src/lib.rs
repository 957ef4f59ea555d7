//! The `grassbwb` command line. [`run`] does all the work so tests can call
//! it without spawning a process.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use grassbwb::bwb::{bwb_bundle, BwbEntry, BwbResult, HomogeneousBundle};
use grassbwb::deglocus::{surface_invariants, SurfaceInvariants};
use grassbwb::exactness::{les_solve, solve_abutment, AbutmentResult, CohomologyColumn, E1Page, LesSolution};
use grassbwb::expr::{parse_bundle, parse_character, parse_class, parse_representation};
use grassbwb::pipeline::{reproduce, Reproduction};
use grassbwb::schubert::{chern_classes, Class, Grassmannian, RootBundle};
use grassbwb::{CharElement, Error};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

const BUNDLE_HELP: &str = "\
Bundle expressions:
  U, Q        tautological sub- and quotient bundle
  O           trivial line bundle
  H(t)        (det U*)^t
  dual(E)     dual bundle
  sym(m, E)   symmetric power of a bundle built from U only or Q only
  wedge(p, E) exterior power, same restriction
  E * F       tensor product
Class expressions:
  s1, s11, s(2,1), H = s1, classF, classS (G(2,6) only), chern(i, E),
  integers, + - * ^ and parentheses; or a JSON list [{\"partition\":[2,2],\"coeff\":27}]";

#[derive(Parser, Debug)]
#[command(name = "grassbwb", version = VERSION, about = "Exact cohomology on Grassmannians", after_help = BUNDLE_HELP)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone, Copy)]
struct Space {
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 6)]
    n: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cohomology of a homogeneous bundle by Borel–Weil–Bott.
    #[command(after_help = BUNDLE_HELP)]
    Bwb {
        #[command(flatten)]
        space: Space,
        /// Bundle expression, e.g. "wedge(2,sym(3,U)) * sym(2,U) * H(1)".
        #[arg(long, conflicts_with_all = ["sub", "quot"])]
        bundle: Option<String>,
        /// GL(k) character acting on U*, e.g. "(0,-6) + 2(-2,-4)" or JSON.
        #[arg(long, allow_hyphen_values = true)]
        sub: Option<String>,
        /// GL(n-k) character acting on Q*.
        #[arg(long, allow_hyphen_values = true)]
        quot: Option<String>,
        /// Extra twist by H^t.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        twist: i64,
    },
    /// Decompose a GL(r) representation into irreducibles.
    Decompose {
        #[arg(long)]
        rank: usize,
        /// e.g. "wedge(2, sym(3, V)) * sym(2, V)", "(1,0) * det(-1)".
        expr: String,
    },
    /// Schubert calculus on G(k,n).
    Schubert {
        #[command(subcommand)]
        op: SchubertOp,
    },
    /// Invariants of the degeneracy locus S.
    Deglocus {
        #[command(subcommand)]
        op: DeglocusOp,
    },
    /// Spectral-sequence and long-exact-sequence bookkeeping.
    Exactness {
        #[command(subcommand)]
        op: ExactnessOp,
    },
    /// End-to-end reproduction with fixture checks.
    Reproduce {
        #[command(subcommand)]
        op: ReproduceOp,
    },
}

#[derive(Subcommand, Debug)]
enum SchubertOp {
    /// Product of classes.
    Mult {
        #[command(flatten)]
        space: Space,
        #[arg(required = true)]
        classes: Vec<String>,
    },
    /// Degree of the top-dimensional part.
    Integrate {
        #[command(flatten)]
        space: Space,
        class: String,
    },
    /// Chern classes of a bundle expression.
    Chern {
        #[command(flatten)]
        space: Space,
        bundle: String,
    },
}

#[derive(Subcommand, Debug)]
enum DeglocusOp {
    Invariants,
}

#[derive(Subcommand, Debug)]
enum ExactnessOp {
    /// Abutment of a first page, e.g. '{"max_total_degree":4,"entries":[[-1,5,1]]}'.
    Abut {
        #[arg(long)]
        page: String,
    },
    /// Long exact sequence of 0 → A → B → C → 0; columns are JSON lists with
    /// null for unknown groups. Omitted columns are fully unknown.
    Les {
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        c: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum ReproduceOp {
    Paper {
        /// Exit nonzero unless every fixture matches.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Debug, Serialize)]
pub struct Envelope {
    pub command: Vec<String>,
    pub version: &'static str,
    pub format: Format,
    pub payload: Value,
    pub elapsed_ms: u128,
}

/// Exit code plus everything to print on stdout (or stderr for failures).
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
    pub envelope: Option<Envelope>,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: 1,
            message: format!("error: {e}"),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payload serializes")
}

// Via a string: `Value` cannot hand back 128-bit integers or integer map keys.
fn from_value<T: serde::de::DeserializeOwned>(v: &Value) -> T {
    serde_json::from_str(&v.to_string()).expect("payload round-trips")
}

/// Sets the global worker count from `GRASSBWB_THREADS`, once per process.
pub fn configure_threads() {
    if let Some(n) = std::env::var("GRASSBWB_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// `argv` excludes the program name.
pub fn run<S: AsRef<str>>(argv: &[S]) -> Outcome {
    let start = Instant::now();
    let args: Vec<String> = argv.iter().map(|s| s.as_ref().to_string()).collect();
    let cli = match Cli::try_parse_from(std::iter::once("grassbwb".to_string()).chain(args.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome {
                code,
                output: e.render().to_string(),
                envelope: None,
            };
        }
    };
    match dispatch(&cli.command) {
        Ok((payload, code)) => {
            let text = match cli.format {
                Format::Text => render_text(&cli.command, &payload),
                Format::Json => String::new(),
            };
            let envelope = Envelope {
                command: args,
                version: VERSION,
                format: cli.format,
                payload,
                elapsed_ms: start.elapsed().as_millis(),
            };
            let output = match cli.format {
                Format::Json => serde_json::to_string_pretty(&envelope).expect("envelope serializes") + "\n",
                Format::Text => text,
            };
            Outcome {
                code,
                output,
                envelope: Some(envelope),
            }
        }
        Err(f) => Outcome {
            code: f.code,
            output: f.message + "\n",
            envelope: None,
        },
    }
}

fn dispatch(cmd: &Command) -> Result<(Value, i32), Failure> {
    Ok(match cmd {
        Command::Bwb {
            space,
            bundle,
            sub,
            quot,
            twist,
        } => {
            let b = match (bundle, sub, quot) {
                (Some(expr), _, _) => parse_bundle(expr, space.k, space.n)?,
                (None, None, None) => return Err(usage("bwb needs --bundle or --sub/--quot")),
                (None, sub, quot) => {
                    let part = |s: &Option<String>, rank| match s {
                        Some(s) => parse_character(s, rank),
                        None => Ok(CharElement::trivial(rank)),
                    };
                    let sub = part(sub, space.k)?;
                    let quot = part(quot, space.n.saturating_sub(space.k))?;
                    HomogeneousBundle::new(space.k, space.n, sub, quot)?
                }
            };
            let r = bwb_bundle(&b.twist(*twist))?;
            (to_value(&r), 0)
        }
        Command::Decompose { rank, expr } => {
            let x = parse_representation(expr, *rank)?;
            let d = x.dimension()?;
            (json!({ "rank": rank, "character": x, "dimension": d }), 0)
        }
        Command::Schubert { op } => (schubert(op)?, 0),
        Command::Deglocus {
            op: DeglocusOp::Invariants,
        } => (to_value(&surface_invariants()?), 0),
        Command::Exactness { op } => (exactness(op)?, 0),
        Command::Reproduce {
            op: ReproduceOp::Paper { check },
        } => {
            let r = reproduce()?;
            let code = if *check && !r.all_pass() { 1 } else { 0 };
            (to_value(&r), code)
        }
    })
}

fn class_value(c: &Class) -> Value {
    let terms: Vec<Value> = c
        .terms()
        .map(|(p, coeff)| json!({ "partition": p.parts(), "coeff": coeff }))
        .collect();
    json!({ "schubert": c.to_string(), "special": c.special_form(), "terms": terms })
}

fn read_class(src: &str, space: Space) -> Result<Class, Failure> {
    if !src.trim_start().starts_with('[') {
        return Ok(parse_class(src, space.k, space.n)?);
    }
    #[derive(serde::Deserialize)]
    struct Term {
        partition: Vec<u32>,
        coeff: i128,
    }
    let terms: Vec<Term> = serde_json::from_str(src).map_err(|e| usage(format!("bad class JSON: {e}")))?;
    let g = Grassmannian::get(space.k, space.n)?;
    let mut acc = Class::zero(&g);
    for t in terms {
        acc = &acc + &Class::sigma(&g, &t.partition)?.scale(&t.coeff);
    }
    Ok(acc)
}

fn schubert(op: &SchubertOp) -> Result<Value, Failure> {
    Ok(match op {
        SchubertOp::Mult { space, classes } => {
            let g = Grassmannian::get(space.k, space.n)?;
            let mut acc = Class::one(&g);
            for c in classes {
                acc = &acc * &read_class(c, *space)?;
            }
            json!({ "product": class_value(&acc) })
        }
        SchubertOp::Integrate { space, class } => {
            let c = read_class(class, *space)?;
            json!({ "class": class_value(&c), "degree": c.integrate() })
        }
        SchubertOp::Chern { space, bundle } => {
            let b = parse_bundle(bundle, space.k, space.n)?;
            let classes: Vec<Value> = chern_classes(&RootBundle::from_bundle(&b)?)?
                .iter()
                .map(class_value)
                .collect();
            json!({ "chern": classes })
        }
    })
}

fn column(src: &Option<String>) -> Result<Option<CohomologyColumn>, Failure> {
    src.as_deref()
        .map(|s| serde_json::from_str(s).map_err(|e| usage(format!("bad column JSON: {e}"))))
        .transpose()
}

fn exactness(op: &ExactnessOp) -> Result<Value, Failure> {
    Ok(match op {
        ExactnessOp::Abut { page } => {
            let page: E1Page = serde_json::from_str(page).map_err(|e| usage(format!("bad page JSON: {e}")))?;
            let r = solve_abutment(&page)?;
            json!({ "page": page, "abutment": r })
        }
        ExactnessOp::Les { a, b, c } => {
            let cols = [column(a)?, column(b)?, column(c)?];
            let len = cols
                .iter()
                .flatten()
                .map(CohomologyColumn::len)
                .max()
                .ok_or_else(|| usage("les needs at least one of --a, --b, --c"))?;
            if len == 0 {
                return Err(usage("columns must be non-empty"));
            }
            let [a, b, c] = cols.map(|c| c.unwrap_or_else(|| CohomologyColumn::unknown(len)));
            to_value(&les_solve(&a, &b, &c, len - 1)?)
        }
    })
}

// Text is always rendered from the JSON payload.
fn render_text(cmd: &Command, payload: &Value) -> String {
    match cmd {
        Command::Bwb { .. } => render_bwb(&from_value(payload)),
        Command::Decompose { .. } => {
            let x: CharElement = from_value(&payload["character"]);
            format!("{x}\ndimension {}\n", payload["dimension"])
        }
        Command::Schubert { op } => {
            let line = |v: &Value| v["schubert"].as_str().unwrap_or_default().to_string();
            match op {
                SchubertOp::Mult { .. } => line(&payload["product"]) + "\n",
                SchubertOp::Integrate { .. } => format!("{}\n", payload["degree"]),
                SchubertOp::Chern { .. } => {
                    let mut out = String::new();
                    for (i, c) in payload["chern"].as_array().into_iter().flatten().enumerate() {
                        let _ = writeln!(out, "c{i} = {}", line(c));
                    }
                    out
                }
            }
        }
        Command::Deglocus { .. } => from_value::<SurfaceInvariants>(payload).to_string(),
        Command::Exactness { op } => match op {
            ExactnessOp::Abut { .. } => format!("{}\n", from_value::<AbutmentResult>(&payload["abutment"])),
            ExactnessOp::Les { .. } => render_les(&from_value(payload)),
        },
        Command::Reproduce { .. } => from_value::<Reproduction>(payload).to_string(),
    }
}

fn render_bwb(r: &BwbResult) -> String {
    let mut rows = vec![[
        "U* weight".to_string(),
        "Q* weight".into(),
        "mult".into(),
        "w+ρ".into(),
        "degree".into(),
        "dim".into(),
    ]];
    for s in &r.summands {
        let (degree, dim) = match &s.entry {
            BwbEntry::Vanishes { .. } => ("-".to_string(), "0".to_string()),
            BwbEntry::Nonvanishing { degree, dimension, .. } => (degree.to_string(), dimension.to_string()),
        };
        rows.push([
            s.sub_weight.to_string(),
            s.quot_weight.to_string(),
            s.multiplicity.to_string(),
            s.entry.shifted().to_string(),
            degree,
            dim,
        ]);
    }
    let mut out = table(&rows);
    out.push('\n');
    let totals: BTreeMap<usize, i128> = r.totals.iter().filter(|(_, &d)| d != 0).map(|(&q, &d)| (q, d)).collect();
    let mut rows = vec![["degree".to_string(), "dimension".to_string()]];
    rows.extend(totals.iter().map(|(q, d)| [q.to_string(), d.to_string()]));
    if totals.is_empty() {
        out.push_str("all cohomology vanishes\n");
    } else {
        out.push_str(&table(&rows));
    }
    out
}

fn render_les(s: &LesSolution) -> String {
    let mut rows = vec![["i".to_string(), "h^i(A)".into(), "h^i(B)".into(), "h^i(C)".into()]];
    for i in 0..s.a.len() {
        rows.push([i.to_string(), s.a[i].to_string(), s.b[i].to_string(), s.c[i].to_string()]);
    }
    table(&rows)
}

fn table<const N: usize>(rows: &[[String; N]]) -> String {
    let mut widths = [0usize; N];
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_aligns_columns() {
        let rows = [["a".to_string(), "bb".into()], ["ccc".into(), "d".into()]];
        assert_eq!(table(&rows), "a    bb\nccc  d\n");
    }

    #[test]
    fn text_is_rendered_from_the_payload() {
        let out = run(&["deglocus", "invariants"]);
        let inv: SurfaceInvariants = from_value(&out.envelope.unwrap().payload);
        assert_eq!(out.output, inv.to_string());
    }
}
