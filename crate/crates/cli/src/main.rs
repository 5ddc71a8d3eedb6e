//! `finprop`: command-line front end for graph terms, canonical forms,
//! point evaluation, chain-level actions, cup-i products and arc surfaces.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use finprop_core::chains::{act_term, cup_i, steenrod_square, Cochain, SimplicialComplexData};
use finprop_core::graph::GraphTerm;
use finprop_core::normal::{compose_weighted, normalize, MSElement};
use finprop_core::simplex::{eval_term, parse_point, SimplexPoint};
use finprop_core::surface::{element_surface, to_ribbon};
use finprop_core::term::parse_term;
use finprop_core::verify::{run_one, DEFAULT_SEED, SUITES};

#[derive(Parser)]
#[command(name = "finprop", version, about = "Finitely presented props: terms, normal forms, actions and surfaces")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "FINPROP_FORMAT", default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a term, printing its graph.
    Parse { term: String },
    /// Print the canonical weighted-surjection form of a term or normal form.
    Normalize { term: String },
    /// Compose two elements vertically (top first); each argument is a term or a normal form.
    Compose { top: String, bottom: String },
    /// Evaluate a term on points of the d-simplex, one `--point` per input.
    Eval {
        #[arg(long)]
        term: String,
        #[arg(long)]
        d: usize,
        /// Coordinates `x_1,...,x_d` in increasing order.
        #[arg(long = "point", allow_hyphen_values = true)]
        points: Vec<String>,
        /// Evaluate in floating point instead of exact rationals.
        #[arg(long)]
        float: bool,
        /// Tolerance for locating the carrier face in floating-point mode.
        #[arg(long, default_value_t = 1e-12, requires = "float")]
        tolerance: f64,
    },
    /// Act with a term on a tensor of faces of the d-simplex, one `--face` per input.
    Act {
        #[arg(long)]
        term: String,
        #[arg(long)]
        d: usize,
        /// Vertices of a face, such as `0,2,3`.
        #[arg(long = "face")]
        faces: Vec<String>,
    },
    /// The cup-i product of two cochains on a complex.
    Cup {
        #[arg(short, long)]
        i: usize,
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// The Steenrod square Sq^k of a cocycle on a complex.
    Sq {
        #[arg(short, long)]
        k: usize,
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Surface invariants of an element given as a term or a normal form.
    Surface { element: String },
    /// Run the verification suites.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Comma-separated criterion numbers; all by default.
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<usize>,
    },
    /// Export a term as JSON or DOT (text falls back to JSON).
    Export { term: String },
}

/// Failure classes, mapped to exit codes 1 and 2.
enum Failure {
    Input(String),
    Invariant(String),
}

impl Failure {
    fn input(e: impl std::fmt::Display) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, cli.format) {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant failure: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, format: Format) -> Outcome {
    match command {
        Command::Parse { term } => {
            let g = term_arg(&term)?;
            Ok(render_graph(&g, format))
        }
        Command::Normalize { term } => render_element(&element_arg(&term)?, format),
        Command::Compose { top, bottom } => {
            let out = compose_weighted(&element_arg(&top)?, &element_arg(&bottom)?).map_err(Failure::input)?;
            render_element(&out, format)
        }
        Command::Eval { term, d, points, float, tolerance } => eval(&term, d, &points, float, tolerance, format),
        Command::Act { term, d, faces } => {
            let g = term_arg(&term)?;
            let faces = faces.iter().map(|f| parse_face(f)).collect::<Result<Vec<_>, _>>()?;
            let chain = act_term(&g, d, &faces).map_err(Failure::input)?;
            Ok(match format {
                Format::Json => serde_json::json!({ "dim": d, "terms": chain.terms() }).to_string(),
                _ => chain.to_string(),
            })
        }
        Command::Cup { i, complex, a, b } => {
            let k = complex_arg(&complex)?;
            let (a, b) = (cochain_arg(&a, &k)?, cochain_arg(&b, &k)?);
            Ok(render_cochain(&cup_i(i, &a, &b, &k), &k, format))
        }
        Command::Sq { k: power, complex, cocycle } => {
            let k = complex_arg(&complex)?;
            let x = cochain_arg(&cocycle, &k)?;
            let sq = steenrod_square(power, &x, &k).map_err(Failure::input)?;
            Ok(render_cochain(&sq, &k, format))
        }
        Command::Surface { element } => surface(&element_arg(&element)?, format),
        Command::Verify { seed, criteria } => verify(seed, &criteria),
        Command::Export { term } => {
            let g = term_arg(&term)?;
            Ok(match format {
                Format::Dot => g.to_dot(),
                _ => pretty(&g.to_json()),
            })
        }
    }
}

fn term_arg(text: &str) -> Result<GraphTerm, Failure> {
    parse_term(text).map_err(Failure::input)
}

/// Reads a normal form if the text starts like one, and a term otherwise.
fn element_arg(text: &str) -> Result<MSElement, Failure> {
    let trimmed = text.trim_start();
    if trimmed.starts_with("surj") || trimmed.starts_with("counit") {
        MSElement::parse(text).map_err(Failure::input)
    } else {
        normalize(&term_arg(text)?).map_err(Failure::input)
    }
}

fn parse_face(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|e| Failure::Input(format!("face {text:?}: {e}"))))
        .collect()
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn complex_arg(path: &Path) -> Result<SimplicialComplexData, Failure> {
    SimplicialComplexData::parse(&read(path)?).map_err(Failure::input)
}

fn cochain_arg(path: &Path, k: &SimplicialComplexData) -> Result<Cochain, Failure> {
    let c = Cochain::parse(&read(path)?).map_err(Failure::input)?;
    c.check(k).map_err(Failure::input)?;
    Ok(c)
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values serialize")
}

fn render_graph(g: &GraphTerm, format: Format) -> String {
    match format {
        Format::Text => g.to_string().trim_end().to_string(),
        Format::Json => pretty(&g.to_json()),
        Format::Dot => g.to_dot(),
    }
}

fn render_element(e: &MSElement, format: Format) -> Outcome {
    match format {
        Format::Text => Ok(e.to_string()),
        Format::Json => Ok(pretty(&e.to_json())),
        Format::Dot => Ok(e.to_graph().to_dot()),
    }
}

fn render_cochain(c: &Cochain, k: &SimplicialComplexData, format: Format) -> String {
    let trivial = k.is_coboundary(c);
    match format {
        Format::Json => pretty(&serde_json::json!({
            "degree": c.degree(),
            "support": c.support(),
            "coboundary": trivial,
        })),
        _ => {
            let class = if trivial { "zero in cohomology" } else { "nonzero in cohomology" };
            format!("{c}\ndegree {}, {class}", c.degree())
        }
    }
}

fn eval(term: &str, d: usize, points: &[String], float: bool, tolerance: f64, format: Format) -> Outcome {
    let g = term_arg(term)?;
    let exact = points
        .iter()
        .map(|p| {
            let x = parse_point(p).map_err(Failure::input)?;
            if x.dim() == d {
                Ok(x)
            } else {
                Err(Failure::Input(format!("point {p:?} has dimension {}, expected {d}", x.dim())))
            }
        })
        .collect::<Result<Vec<SimplexPoint>, _>>()?;
    if float {
        let pts: Vec<SimplexPoint<f64>> = exact.iter().map(SimplexPoint::to_f64).collect();
        let out = eval_term(&g, &pts).map_err(Failure::input)?;
        return Ok(match format {
            Format::Json => serde_json::json!(out
                .iter()
                .map(|p| serde_json::json!({ "coords": p.coords(), "carrier": p.carrier(tolerance) }))
                .collect::<Vec<_>>())
            .to_string(),
            _ => out.iter().map(|p| format!("{p} on {:?}", p.carrier(tolerance))).collect::<Vec<_>>().join(", "),
        });
    }
    let out = eval_term(&g, &exact).map_err(Failure::input)?;
    Ok(match format {
        Format::Json => serde_json::json!(out.iter().map(ToString::to_string).collect::<Vec<_>>()).to_string(),
        _ => out.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
    })
}

fn surface(e: &MSElement, format: Format) -> Outcome {
    let summary = element_surface(e).map_err(Failure::input)?;
    if !summary.consistent() {
        return Err(Failure::Invariant(format!("Euler characteristic mismatch for {e}")));
    }
    match format {
        Format::Json => Ok(pretty(&summary.to_json())),
        Format::Dot => {
            let x = e.as_surjection().ok_or_else(|| Failure::Input(format!("{e} has no arcs")))?;
            Ok(to_ribbon(x).map_err(Failure::input)?.collapse_edges().to_dot())
        }
        Format::Text => {
            let (euler, genus, boundary, components) = summary.topology();
            Ok(format!(
                "{e}\ngenus {genus}, {boundary} boundary circles, {components} components, euler characteristic {euler}, {} arcs",
                summary.arcs.len()
            ))
        }
    }
}

/// Runs the chosen suites. Timings go to stderr so stdout depends only on the seed.
fn verify(seed: u64, criteria: &[usize]) -> Outcome {
    let wanted: Vec<usize> =
        if criteria.is_empty() { SUITES.iter().map(|(n, _)| *n).collect() } else { criteria.to_vec() };
    let mut lines = vec![format!("seed {seed}")];
    let mut failed = 0;
    for n in &wanted {
        let report = run_one(*n, seed).ok_or_else(|| Failure::Input(format!("no criterion {n}")))?;
        eprintln!("criterion {n}: {:.2}s of {}s", report.elapsed.as_secs_f64(), report.budget.as_secs());
        let status = if report.passed() { "PASS" } else { "FAIL" };
        lines.push(format!(
            "{status} criterion {}: {} ({} checks, {} failures)",
            report.number,
            report.title,
            report.checks,
            report.failures.len()
        ));
        lines.extend(report.failures.iter().map(|f| format!("    {f}")));
        if !report.within_budget() {
            lines.push("    over time budget".into());
        }
        if !report.passed() {
            failed += 1;
        }
    }
    lines.push(format!("{} of {} criteria passed", wanted.len() - failed, wanted.len()));
    let text = lines.join("\n");
    if failed == 0 {
        Ok(text)
    } else {
        Err(Failure::Invariant(text))
    }
}
