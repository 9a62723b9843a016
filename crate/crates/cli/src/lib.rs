//! `dvrtop`: digraph homology from the command line.
//!
//! Every command writes one json report. Reports carry the command line, a
//! digest of the canonicalized input, the tool version and (for sampling)
//! the seed; keys are sorted and nothing time-dependent is recorded, so the
//! same invocation on the same input is byte-identical.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use dvrtop_core::fx::{continuity_certificate, sampled_continuity_check, SampleOptions};
use dvrtop_core::generators::{self, Figure, LatticePoint};
use dvrtop_core::homology::les::{les_exactness_check, PairTerm};
use dvrtop_core::homology::pi1::{abelianization, pi1_presentation};
use dvrtop_core::homology::relative_homology_field;
use dvrtop_core::{build_complex, homology_field, homology_integer, relative_homology, Coefficients, Digraph, HomologyGroup, SimplicialComplex, VertexSet};

pub mod error;
pub mod input;

pub use error::CliError;
pub use input::{parse_digraph, parse_edgelist, parse_input, Format, Input};

pub const SCHEMA: &str = "1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "dvrtop", version, about = "Homology of finite digraphs via directed Vietoris-Rips complexes")]
pub struct Cli {
    /// Read the digraph or complex from this file instead of stdin.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Input format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Auto)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a digraph.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Build the complex: f-vector, simplices and witnesses.
    Complex {
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Homology of the complex.
    Homology {
        #[arg(long, default_value = "z", value_parser = parse_coeff)]
        coeff: Coeff,
        #[arg(long)]
        reduced: bool,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Relative homology against the full subcomplex on a vertex subset.
    Pair {
        #[command(flatten)]
        subset: SubsetArg,
        #[arg(long, default_value = "z", value_parser = parse_coeff)]
        coeff: Coeff,
    },
    /// Exactness of the long exact sequence of a pair.
    LesCheck {
        #[command(flatten)]
        subset: SubsetArg,
        #[arg(long, default_value = "q", value_parser = parse_field)]
        coeff: Coeff,
    },
    /// Edge-path group presentation.
    Pi1 {
        #[arg(long, default_value = "0")]
        basepoint: String,
    },
    /// Combinatorial continuity certificate for f_X.
    FxCertify,
    /// Sampled continuity check for f_X.
    FxSample {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// ℓ¹ radius, as a fraction (1/1000), decimal or integer.
        #[arg(long, default_value = "1/1000", value_parser = parse_rational)]
        delta: BigRational,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct SubsetArg {
    /// Comma-separated vertex labels or indices.
    #[arg(long)]
    pub subset: String,
}

#[derive(Debug, Subcommand)]
pub enum GenFamily {
    /// (ℤ_n, c_m)
    Circulant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Digital image of lattice points under max-norm adjacency.
    Digital {
        /// Points separated by ';', coordinates by ',', e.g. "0,0;1,0".
        #[arg(long, required_unless_present = "sphere", conflicts_with = "sphere")]
        points: Option<String>,
        /// The six points ±e₁, ±e₂, ±e₃.
        #[arg(long)]
        sphere: bool,
    },
    /// One of the three four-vertex figure digraphs.
    Figure {
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Independent edges with probability p.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Which {
    Left,
    Middle,
    Right,
}

impl From<Which> for Figure {
    fn from(w: Which) -> Figure {
        match w {
            Which::Left => Figure::Left,
            Which::Middle => Figure::Middle,
            Which::Right => Figure::Right,
        }
    }
}

/// `z`, `q` or `zp:<p>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coeff {
    Integer,
    Field(Coefficients),
}

impl Coeff {
    fn name(&self) -> String {
        match self {
            Coeff::Integer => "z".into(),
            Coeff::Field(Coefficients::Rational) => "q".into(),
            Coeff::Field(Coefficients::Prime(p)) => format!("zp:{p}"),
        }
    }
}

fn parse_coeff(s: &str) -> Result<Coeff, String> {
    if s == "z" {
        return Ok(Coeff::Integer);
    }
    parse_field(s)
}

fn parse_field(s: &str) -> Result<Coeff, String> {
    Coefficients::from_str(s).map(Coeff::Field).map_err(|e| e.to_string())
}

/// `a/b`, a decimal like `0.001`, or an integer.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let bad = || format!("not a rational number: {s:?}");
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let num = BigInt::from_str(&digits).map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(BigRational::new(num, den));
    }
    BigRational::from_str(s).map_err(|_| bad())
}

/// Reads the input document lazily; `gen` never touches stdin.
pub struct Source<'a> {
    path: Option<&'a PathBuf>,
    stdin: Option<&'a str>,
}

impl Source<'_> {
    fn read(&self) -> Result<String, CliError> {
        if let Some(p) = self.path {
            return Ok(std::fs::read_to_string(p)?);
        }
        if let Some(s) = self.stdin {
            return Ok(s.to_owned());
        }
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    }
}

/// A finished report and the exit status that goes with it.
pub struct Outcome {
    pub report: Value,
    pub code: i32,
}

impl Outcome {
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("json values serialize");
        s.push('\n');
        s
    }
}

/// Runs a parsed command line. `stdin` overrides the process's standard
/// input, which is handy for tests and bindings.
pub fn execute(cli: &Cli, argv: &[String], stdin: Option<&str>) -> Outcome {
    let source = Source { path: cli.input.as_ref(), stdin };
    let mut digest = Value::Null;
    let seed = match &cli.command {
        Command::FxSample { seed, .. } => json!(seed),
        Command::Gen { family: GenFamily::Random { seed, .. } } => json!(seed),
        _ => Value::Null,
    };
    let result = run(cli, &source, &mut digest);
    let (results, error, code) = match result {
        Ok(r) => (r, Value::Null, 0),
        Err(e) => (
            Value::Null,
            json!({ "kind": e.kind(), "message": e.to_string(), "line": e.line() }),
            1,
        ),
    };
    let report = json!({
        "schema": SCHEMA,
        "tool_version": TOOL_VERSION,
        "command": argv,
        "input_digest": digest,
        "seed": seed,
        "results": results,
        "error": error,
    });
    Outcome { report, code }
}

/// Parses `argv` (including the program name) and runs it. Usage errors
/// come back as clap errors so the caller can print them and exit 2.
pub fn run_args<I, T>(argv: I, stdin: Option<&str>) -> Result<Outcome, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = Cli::try_parse_from(&argv)?;
    Ok(execute(&cli, &argv[1.min(argv.len())..], stdin))
}

/// Writes the report to `--out` or stdout.
pub fn emit(cli: &Cli, outcome: &Outcome) -> io::Result<()> {
    let text = outcome.render();
    match &cli.out {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

fn run(cli: &Cli, source: &Source, digest: &mut Value) -> Result<Value, CliError> {
    if let Command::Gen { family } = &cli.command {
        return generate(family).map(|g| digraph_json(&g));
    }
    let input = parse_input(&source.read()?, cli.format)?;
    *digest = json!(input.digest());
    let complex = |cap: Option<usize>| match &input {
        Input::Digraph(g) => build_complex(g, cap),
        Input::Complex { complex, .. } => match cap {
            Some(c) => complex.skeleton(c),
            None => complex.clone(),
        },
    };
    match &cli.command {
        Command::Gen { .. } => unreachable!(),
        Command::Complex { max_dim } => Ok(complex_json(&complex(*max_dim), input.labels())),
        Command::Homology { coeff, reduced, max_dim } => {
            let k = complex(*max_dim);
            homology_json(&k, *coeff, *reduced)
        }
        Command::Pair { subset, coeff } => {
            let k = complex(None);
            let verts = parse_subset(&input, &subset.subset)?;
            let sub = k.full_subcomplex(&VertexSet::new(verts.iter().copied()));
            let groups = match coeff {
                Coeff::Integer => relative_homology(&k, &sub)?.groups,
                Coeff::Field(c) => relative_homology_field(&k, &sub, *c)?.into_iter().map(HomologyGroup::free).collect(),
            };
            Ok(json!({
                "schema": SCHEMA,
                "coeff": coeff.name(),
                "subset": verts,
                "groups": groups_json(&groups),
                "reduced": false,
                "truncated": k.truncated(),
            }))
        }
        Command::LesCheck { subset, coeff } => {
            let k = complex(None);
            let verts = parse_subset(&input, &subset.subset)?;
            let sub = k.full_subcomplex(&VertexSet::new(verts.iter().copied()));
            let Coeff::Field(field) = coeff else { unreachable!("clap only admits fields") };
            let report = les_exactness_check(&k, &sub, *field)?;
            let nodes: Vec<Value> = report
                .nodes
                .iter()
                .map(|n| {
                    json!({
                        "node": n.to_string(),
                        "term": match n.term { PairTerm::Sub => "sub", PairTerm::Whole => "whole", PairTerm::Relative => "relative" },
                        "degree": n.degree,
                        "dim": n.dim,
                        "rank_in": n.rank_in,
                        "rank_out": n.rank_out,
                        "composite_zero": n.composite_zero,
                        "exact": n.exact,
                    })
                })
                .collect();
            Ok(json!({ "coeff": coeff.name(), "subset": verts, "exact": report.exact(), "nodes": nodes }))
        }
        Command::Pi1 { basepoint } => {
            let k = complex(Some(2));
            let b = input.resolve_vertex(basepoint)?;
            let p = pi1_presentation(&k, b)?;
            let relators: Vec<Vec<String>> = p
                .relators
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|l| {
                            let g = &p.generators[l.generator];
                            if l.inverse { format!("{g}^-1") } else { g.clone() }
                        })
                        .collect()
                })
                .collect();
            Ok(json!({
                "basepoint": b,
                "generators": p.generators,
                "relators": relators,
                "presentation": p.to_string(),
                "abelianization": group_json(1, &abelianization(&p)),
            }))
        }
        Command::FxCertify => {
            let g = input.digraph()?;
            let k = build_complex(g, None);
            let c = continuity_certificate(&k, g);
            Ok(json!({
                "passed": c.passed,
                "checked": c.checked,
                "counterexample": c.counterexample.map(|ce| json!({
                    "simplex": ce.simplex,
                    "face": ce.face,
                    "tie": ce.tie,
                    "image": ce.image,
                })),
                "simplices": simplices_json(&k),
            }))
        }
        Command::FxSample { samples, delta, seed } => {
            let g = input.digraph()?;
            let k = build_complex(g, None);
            let opts = SampleOptions { samples: *samples, delta: delta.clone(), seed: *seed };
            let r = sampled_continuity_check(&k, g, &opts)?;
            let failing: Vec<Value> = r
                .failing
                .iter()
                .map(|f| {
                    json!({
                        "index": f.index,
                        "carrier": f.carrier,
                        "coords": f.coords.iter().map(ToString::to_string).collect::<Vec<_>>(),
                        "image": f.image,
                        "perturbed_image": f.perturbed_image,
                        "singleton_tie": f.singleton_tie,
                        "clean_radius": f.clean_radius.to_string(),
                    })
                })
                .collect();
            Ok(json!({
                "samples": r.samples,
                "delta": delta.to_string(),
                "seed": seed,
                "failures": r.failures,
                "singleton_failures": r.singleton_failures,
                "tied_samples": r.tied_samples,
                "failure_rate": r.failure_rate(),
                "failing": failing,
            }))
        }
    }
}

fn generate(family: &GenFamily) -> Result<Digraph, CliError> {
    Ok(match family {
        GenFamily::Circulant { n, m } => generators::circulant(*n, *m)?,
        GenFamily::Digital { points, sphere } => {
            let pts = if *sphere { generators::digital_sphere_points() } else { parse_points(points.as_deref().unwrap_or(""))? };
            generators::digital_image(&pts)?
        }
        GenFamily::Figure { which } => generators::figure_digraph((*which).into()),
        GenFamily::Random { n, p, seed } => generators::random_digraph(*n, *p, *seed)?,
    })
}

fn parse_points(s: &str) -> Result<Vec<LatticePoint>, CliError> {
    s.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.split(',')
                .map(|c| c.trim().parse::<i64>().map_err(|_| CliError::Argument(format!("bad coordinate in point {p:?}"))))
                .collect::<Result<Vec<_>, _>>()
                .map(LatticePoint)
        })
        .collect()
}

fn parse_subset(input: &Input, s: &str) -> Result<Vec<usize>, CliError> {
    let mut v = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| input.resolve_vertex(t))
        .collect::<Result<Vec<_>, _>>()?;
    v.sort_unstable();
    v.dedup();
    Ok(v)
}


pub fn digraph_json(g: &Digraph) -> Value {
    let label = |v: usize| g.label(v);
    json!({
        "vertices": (0..g.n()).map(label).collect::<Vec<_>>(),
        "edges": g.edges().into_iter().map(|(u, v)| [label(u), label(v)]).collect::<Vec<_>>(),
    })
}

fn simplices_json(k: &SimplicialComplex) -> Vec<Value> {
    k.iter().map(|s| json!({ "verts": s.vertices(), "witness": s.witness() })).collect()
}

pub fn complex_json(k: &SimplicialComplex, labels: Option<&[String]>) -> Value {
    let mut doc = json!({
        "schema": SCHEMA,
        "f_vector": k.f_vector(),
        "simplices": simplices_json(k),
        "truncated": k.truncated(),
    });
    if let Some(l) = labels {
        doc["labels"] = json!(l);
    }
    doc
}

/// Integers that fit in 64 bits are json numbers; larger ones are strings.
fn bigint_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn group_json(dim: usize, g: &HomologyGroup) -> Value {
    json!({
        "dim": dim,
        "betti": g.betti,
        "torsion": g.torsion.iter().map(bigint_json).collect::<Vec<_>>(),
    })
}

fn groups_json(groups: &[HomologyGroup]) -> Vec<Value> {
    groups.iter().enumerate().map(|(n, g)| group_json(n, g)).collect()
}

fn homology_json(k: &SimplicialComplex, coeff: Coeff, reduced: bool) -> Result<Value, CliError> {
    let groups = match coeff {
        Coeff::Integer => homology_integer(k, reduced).groups,
        Coeff::Field(c) => {
            let mut b = homology_field(k, c)?;
            if reduced {
                if let Some(b0) = b.first_mut() {
                    *b0 -= 1;
                }
            }
            b.into_iter().map(HomologyGroup::free).collect()
        }
    };
    Ok(json!({
        "schema": SCHEMA,
        "coeff": coeff.name(),
        "groups": groups_json(&groups),
        "reduced": reduced,
        "truncated": k.truncated(),
    }))
}
