use std::cmp::Ordering;
use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use zrkit::error::Error;
use zrkit::groups::{is_standard, FilteredGroup, Preorder, Standardness};
use zrkit::json::*;
use zrkit::preorder::{refines, MatrixPreorder};
use zrkit::scalar::{rat, QuadField};
use zrkit::topology::{self, CantorOutcome};
use zrkit::valuation;

#[derive(Parser)]
#[command(name = "zrkit", version, about = "Exact computations with bi-invariant preorders on Z^n and the Heisenberg group")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sampling budget for standardness checks of left-invariant preorders.
    #[arg(long, global = true, default_value_t = 2000)]
    samples: usize,
    /// Node cap for zr-tree.
    #[arg(long, global = true, default_value_t = topology::DEFAULT_MAX_NODES)]
    max_nodes: usize,
    /// Default D for entries a + b*sqrt(D) when the input has no "D" field.
    #[arg(long, global = true, default_value_t = 2)]
    field_d: i64,
    #[command(subcommand)]
    command: Command,
}

/// Every INPUT is inline JSON, a path to a JSON file, or `-` for stdin.
#[derive(Subcommand)]
enum Command {
    /// Canonical form of a preorder.
    Canon { p: String },
    /// Compare two vectors (Z^n / Q^n) or group elements.
    Cmp { p: String, u: String, v: String },
    /// Lexicographic composition: compare by P, break ties by Q.
    Compose { p: String, q: String },
    /// Number of rows in the canonical form.
    Rank { p: String },
    /// Dimension of the equivalence class of zero.
    Degree { p: String },
    /// Finest common coarsening.
    Meet { p: String, q: String },
    /// Whether Q refines P.
    Refines { p: String, q: String },
    /// All coarsenings, from the trivial preorder up to P.
    RafMinus { p: String },
    /// Rank-one factors whose composition is P.
    Decompose { p: String },
    /// Lattice of elements equivalent to zero.
    Residue { p: String },
    /// Pullback along a unimodular integer matrix.
    Pullback { p: String, a: String },
    /// Membership in a basic open set.
    TopoMember { p: String, s: String },
    /// A basic open containing exactly one of P and Q.
    Separate { p: String, q: String },
    /// Distinct standard orders inside a constraint set.
    CantorWitness {
        s: String,
        /// Group JSON; defaults to Z^n with n taken from the first condition.
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value_t = 10)]
        m: usize,
        #[arg(long, default_value_t = topology::DEFAULT_DIRECTION_BOUND)]
        bound: i64,
    },
    /// Whether the preorder is standard, with a counterexample if not.
    StandardCheck { p: String },
    /// Open neighbourhoods of a non-standard preorder made of non-standard preorders.
    NonstandardWitness { p: String },
    /// Monomial valuation of a group-algebra element.
    Val { p: String, poly: String },
    /// Terms of least value.
    LeadingForm { p: String, poly: String },
    /// Whether every term has value at least the identity.
    RingMember { p: String, poly: String },
    /// Whether every term has value strictly above the identity.
    MaxIdealMember { p: String, poly: String },
    /// A monomial shift moving POLY into the maximal ideal.
    Shift {
        #[arg(long = "p")]
        p: String,
        #[arg(long)]
        h0: String,
        #[arg(long = "P")]
        poly: String,
    },
    /// DOT graph of the refinement tree generated by rows with entries from ENTRIES.
    ZrTree {
        #[arg(long)]
        n: usize,
        /// JSON array of field elements.
        #[arg(long)]
        entries: String,
    },
    /// The preorders on Q^1.
    EnumerateQ1,
}

struct Failure {
    code: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: e.code(), message: e.to_string() }
    }
}

type Outcome = Result<Output, Failure>;

enum Output {
    Json { payload: Value, certificate: Option<Value> },
    Dot(String),
}

fn ok(payload: Value) -> Outcome {
    Ok(Output::Json { payload, certificate: None })
}

fn ok_with(payload: Value, certificate: Value) -> Outcome {
    Ok(Output::Json { payload, certificate: Some(certificate) })
}

fn load(arg: &str) -> Result<Value, Failure> {
    let trimmed = arg.trim_start();
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure { code: "io_error", message: format!("reading stdin: {e}") })?;
        s
    } else if trimmed.starts_with(['{', '[', '"']) || trimmed.parse::<f64>().is_ok() {
        arg.to_string()
    } else if Path::new(arg).exists() {
        std::fs::read_to_string(arg).map_err(|e| Failure { code: "io_error", message: format!("{arg}: {e}") })?
    } else {
        return Err(Failure { code: "io_error", message: format!("{arg}: not inline JSON and no such file") });
    };
    Ok(parse(&text)?)
}

fn ordering_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "less",
        Ordering::Equal => "equivalent",
        Ordering::Greater => "greater",
    }
}

fn matrix_only(p: Preorder, what: &str) -> Result<MatrixPreorder, Failure> {
    match p {
        Preorder::Matrix(m) => Ok(m),
        Preorder::Layered(_) => Err(Error::Precondition(format!("{what} is implemented for weight-matrix preorders on Z^n")).into()),
    }
}

fn standardness_certificate(s: &Standardness) -> Option<Value> {
    match s {
        Standardness::Verified => None,
        Standardness::Counterexample { g, h } => Some(json!({"g": element_to_json(g), "h": element_to_json(h)})),
    }
}

fn run(cli: Cli) -> Outcome {
    let f = QuadField::new(cli.field_d)?;
    let pre = |arg: &str| -> Result<Preorder, Failure> { Ok(preorder_from_json(&load(arg)?, f)?) };
    let enc = |p: &Preorder| preorder_to_json(p, f);
    let enc_m = |p: &MatrixPreorder| preorder_to_json(&Preorder::Matrix(p.clone()), f);
    match cli.command {
        Command::Canon { p } => ok(enc(&pre(&p)?)),
        Command::Cmp { p, u, v } => {
            let p = pre(&p)?;
            let (u, v) = (load(&u)?, load(&v)?);
            let o = match &p {
                Preorder::Matrix(m) => m.cmp(&rational_vector_from_json(&u)?, &rational_vector_from_json(&v)?)?,
                Preorder::Layered(_) => p.cmp(&element_from_json(&u, p.group())?, &element_from_json(&v, p.group())?)?,
            };
            ok(json!(ordering_name(o)))
        }
        Command::Compose { p, q } => ok(enc(&pre(&p)?.compose(&pre(&q)?)?)),
        Command::Rank { p } => ok(json!(matrix_only(pre(&p)?, "rank")?.rank())),
        Command::Degree { p } => ok(json!(matrix_only(pre(&p)?, "degree")?.degree())),
        Command::Meet { p, q } => {
            let (p, q) = (matrix_only(pre(&p)?, "meet")?, matrix_only(pre(&q)?, "meet")?);
            ok(enc_m(&p.meet(&q)?))
        }
        Command::Refines { p, q } => {
            let (p, q) = (matrix_only(pre(&p)?, "refines")?, matrix_only(pre(&q)?, "refines")?);
            if p.dim() != q.dim() {
                return Err(Error::DimensionMismatch { expected: p.dim(), found: q.dim() }.into());
            }
            ok(json!(refines(&p, &q)))
        }
        Command::RafMinus { p } => {
            let p = matrix_only(pre(&p)?, "raf-minus")?;
            ok(Value::Array(p.raf_minus().iter().map(enc_m).collect()))
        }
        Command::Decompose { p } => {
            let p = matrix_only(pre(&p)?, "decompose")?;
            ok(Value::Array(p.decompose().iter().map(enc_m).collect()))
        }
        Command::Residue { p } => ok(lattice_to_json(matrix_only(pre(&p)?, "residue")?.residue_lattice())),
        Command::Pullback { p, a } => {
            let p = matrix_only(pre(&p)?, "pullback")?;
            ok(enc_m(&p.pullback(&int_matrix_from_json(&load(&a)?)?)?))
        }
        Command::TopoMember { p, s } => {
            let p = pre(&p)?;
            let s = open_from_json(&load(&s)?, p.group())?;
            ok(json!(topology::member(&p, &s)?))
        }
        Command::Separate { p, q } => {
            let sep = topology::separate(&pre(&p)?, &pre(&q)?)?;
            let g = &sep.open.conditions()[0].g;
            ok_with(
                json!({"open": open_to_json(&sep.open), "contains": if sep.contains_first { "first" } else { "second" }}),
                json!({"g": element_to_json(g)}),
            )
        }
        Command::CantorWitness { s, group, m, bound } => {
            let s = load(&s)?;
            let group = match group {
                Some(g) => group_from_json(&load(&g)?)?,
                None if s.get("group").is_some() => group_from_json(&s)?,
                None => {
                    let n = s
                        .get("conditions")
                        .and_then(Value::as_array)
                        .and_then(|c| c.first())
                        .and_then(|c| c.get("g"))
                        .and_then(Value::as_array)
                        .map(Vec::len)
                        .unwrap_or(2);
                    FilteredGroup::Zn(n)
                }
            };
            let open = open_from_json(&s, group)?;
            match topology::cantor_witnesses(group, open.conditions(), m, bound)? {
                CantorOutcome::Infeasible => ok(json!({"outcome": "infeasible"})),
                CantorOutcome::Witnesses { orders, certificates } => {
                    let certs: Vec<Value> = certificates
                        .iter()
                        .map(|(i, j, g)| json!({"i": i, "j": j, "g": element_to_json(g)}))
                        .collect();
                    ok_with(
                        json!({"outcome": "witnesses", "orders": orders.iter().map(enc).collect::<Vec<_>>()}),
                        json!({"distinguishing": certs}),
                    )
                }
            }
        }
        Command::StandardCheck { p } => {
            let s = is_standard(&pre(&p)?, cli.samples, cli.seed);
            let payload = json!({"standard": s.is_verified()});
            match standardness_certificate(&s) {
                Some(c) => ok_with(payload, c),
                None => ok(payload),
            }
        }
        Command::NonstandardWitness { p } => {
            let w = topology::nonstandard_witness(&pre(&p)?, cli.samples, cli.seed)?;
            ok_with(
                json!({
                    "patch_open": open_to_json(&w.patch_open),
                    "inverse_open": open_to_json(&w.inverse_open),
                    "fallback": w.fallback,
                }),
                json!({"g": element_to_json(&w.g), "h": element_to_json(&w.h)}),
            )
        }
        Command::Val { p, poly } => {
            let p = pre(&p)?;
            let poly = poly_from_json(&load(&poly)?, p.group())?;
            ok(value_to_json(&valuation::valuate(&p, &poly)?))
        }
        Command::LeadingForm { p, poly } => {
            let p = pre(&p)?;
            let poly = poly_from_json(&load(&poly)?, p.group())?;
            ok(poly_to_json(&valuation::leading_form(&p, &poly)?))
        }
        Command::RingMember { p, poly } => {
            let p = pre(&p)?;
            let poly = poly_from_json(&load(&poly)?, p.group())?;
            ok(json!(valuation::in_ring(&p, &poly)?))
        }
        Command::MaxIdealMember { p, poly } => {
            let p = pre(&p)?;
            let poly = poly_from_json(&load(&poly)?, p.group())?;
            ok(json!(valuation::in_max_ideal(&p, &poly)?))
        }
        Command::Shift { p, h0, poly } => {
            let p = pre(&p)?;
            let h0 = element_from_json(&load(&h0)?, p.group())?;
            let poly = poly_from_json(&load(&poly)?, p.group())?;
            let (s, case) = valuation::classify_shift(&p, &h0, &poly)?;
            let shifted = valuation::GroupAlgebraElement::monomial(p.group(), s.clone(), rat(1))?.mul(&poly)?;
            ok_with(
                element_to_json(&s),
                json!({
                    "case": format!("{case:?}"),
                    "shifted": poly_to_json(&shifted),
                    "shifted_value": value_to_json(&valuation::valuate(&p, &shifted)?),
                }),
            )
        }
        Command::ZrTree { n, entries } => {
            let entries = load(&entries)?;
            let entries = entries
                .as_array()
                .ok_or_else(|| Failure { code: "malformed_input", message: "entries must be a JSON array".into() })?
                .iter()
                .map(|e| quad_from_json(e, f))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Output::Dot(topology::zr_tree(n, &entries, cli.max_nodes)?.to_dot()))
        }
        Command::EnumerateQ1 => ok(Value::Array(topology::enumerate_zr_q1().iter().map(enc_m).collect())),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let message = e.render().to_string();
            println!("{}", json!({"status": "error", "reason": "usage", "message": message.trim_end()}));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(Output::Dot(dot)) => {
            print!("{dot}");
            ExitCode::SUCCESS
        }
        Ok(Output::Json { payload, certificate }) => {
            println!("{}", json!({"status": "ok", "payload": payload, "certificate": certificate}));
            ExitCode::SUCCESS
        }
        Err(Failure { code, message }) => {
            println!("{}", json!({"status": "error", "reason": code, "message": message}));
            ExitCode::FAILURE
        }
    }
}
