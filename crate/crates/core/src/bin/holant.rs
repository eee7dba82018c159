//! Batch command-line front end for the holant-lab library.
//!
//! Exit codes: 0 success, 1 usage error, 2 input parse error,
//! 3 domain error (e.g. witness requested at a tractable point),
//! 4 anomaly (strategy exhaustion, identity failure, scan counterexample).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use holant_lab::cyclo::{cyc_parse, Cyc12, Rat};
use holant_lab::dichotomy::{
    classify, hardness_witness, real_disjunction_scan, Verdict,
};
use holant_lab::eval::{auto_eval, holant_eval_grid, symmetrize};
use holant_lab::gadgets::{
    builtin_matrix, eval_ab, finisher_set, starter_set, verify_identity_suite,
};
use holant_lab::grid::{parse_instance, transfer_matrix, Instance, SymSignature};
use holant_lab::interp::{interpolate_unary_reduction, IterationFamily};
use holant_lab::Error;

#[derive(Parser)]
#[command(name = "holant", version, about = "Exact Holant evaluation, classification, and hardness certificates for #[a,1,b] on 3-regular graphs")]
struct Cli {
    /// Worker thread count for parallel sections (affects wall time only).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write results to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the Holant of a graph (with an edge signature) or of a
    /// closed signature grid.
    Eval(EvalArgs),
    /// Compute the symmetrized Holant polynomial P(X, Y) of a 3-regular
    /// graph, where X = ab and Y = a^3 + b^3.
    Symmetrize {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Classify a parameter point as tractable or #P-hard.
    Classify(PointArgs),
    /// Produce a machine-checkable hardness certificate for a hard point.
    Witness(PointArgs),
    /// Re-verify the symbolic gadget identity catalogue.
    VerifyIdentities,
    /// Interpolate a grid with SLOT generators at a target unary
    /// signature and compare against direct evaluation.
    InterpolateDemo(InterpArgs),
    /// Scan a rational (X, Y) grid for points where every binary
    /// recursive gadget test fails.
    ScanReal(ScanArgs),
    /// Print a catalogue gadget matrix, or the transfer matrix of a
    /// grid with dangling edges.
    GadgetSignature(GadgetArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Graph instance document (JSON).
    #[arg(long, conflicts_with = "grid")]
    graph: Option<PathBuf>,
    /// Signature grid document (JSON).
    #[arg(long)]
    grid: Option<PathBuf>,
    /// Symmetric edge signature, e.g. "[2,1,3]". Required with --graph.
    #[arg(long, allow_hyphen_values = true)]
    signature: Option<String>,
}

#[derive(Args)]
struct PointArgs {
    /// Scalar literal for a, e.g. "1+i" or "3/2".
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// Scalar literal for b.
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    /// Restrict to planar instances (classify only).
    #[arg(long)]
    planar: bool,
}

#[derive(Args)]
struct InterpArgs {
    /// Grid document with SLOT generators.
    #[arg(long)]
    grid: PathBuf,
    /// Target unary signature, e.g. "[7,11]".
    #[arg(long, allow_hyphen_values = true)]
    target: String,
    /// Recursion gadget id (default M4).
    #[arg(long, default_value = "M4")]
    gadget: String,
    /// Scalar literal for a.
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    a: String,
    /// Scalar literal for b.
    #[arg(long, default_value = "3", allow_hyphen_values = true)]
    b: String,
}

#[derive(Args)]
struct ScanArgs {
    /// Inclusive coordinate range "lo:hi" applied to both X and Y.
    #[arg(long, default_value = "-10:10", allow_hyphen_values = true)]
    range: String,
    /// Grid step as a rational, e.g. "1/10".
    #[arg(long, default_value = "1/10", allow_hyphen_values = true)]
    step: String,
}

#[derive(Args)]
struct GadgetArgs {
    /// Catalogue id: 4..16, M4..M16, F, s, or vc2x2.
    #[arg(long, conflicts_with = "grid")]
    gadget: Option<String>,
    /// Grid document with dangling edges (an F-gate).
    #[arg(long)]
    grid: Option<PathBuf>,
    /// Optional scalar literal for a, to evaluate a catalogue matrix.
    #[arg(long, requires = "b", allow_hyphen_values = true)]
    a: Option<String>,
    /// Optional scalar literal for b.
    #[arg(long, requires = "a", allow_hyphen_values = true)]
    b: Option<String>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax(_) | Error::MalformedDocument(_) | Error::Io(_) => 2,
            Error::Mod3ViolationAnomaly { .. } => 4,
            _ => 3,
        };
        Failure::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    #[cfg(feature = "parallel")]
    if let Some(n) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = cli.jobs;
    match run(&cli) {
        Ok((output, code)) => {
            let emitted = if output.ends_with('\n') {
                output
            } else {
                format!("{output}\n")
            };
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, &emitted) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{emitted}");
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_to_string(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))
}

fn parse_scalar(text: &str) -> Result<Cyc12, Failure> {
    cyc_parse(text).map_err(|e| Failure::new(2, format!("bad scalar literal {text:?}: {e}")))
}

fn parse_rat(text: &str) -> Result<Rat, Failure> {
    Rat::from_str(text.trim())
        .map_err(|e| Failure::new(2, format!("bad rational literal {text:?}: {e}")))
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    match &cli.command {
        Command::Eval(args) => cmd_eval(args, cli.format),
        Command::Symmetrize { graph } => cmd_symmetrize(graph, cli.format),
        Command::Classify(args) => cmd_classify(args, cli.format),
        Command::Witness(args) => cmd_witness(args, cli.format),
        Command::VerifyIdentities => cmd_verify_identities(cli.format),
        Command::InterpolateDemo(args) => cmd_interpolate(args, cli.format),
        Command::ScanReal(args) => cmd_scan(args, cli.format),
        Command::GadgetSignature(args) => cmd_gadget(args, cli.format),
    }
}

fn cmd_eval(args: &EvalArgs, format: Format) -> Result<(String, u8), Failure> {
    let (value, method) = match (&args.graph, &args.grid) {
        (Some(path), None) => {
            let sig_text = args.signature.as_deref().ok_or_else(|| {
                Failure::new(1, "eval --graph requires --signature \"[x,y,z]\"")
            })?;
            let sig = SymSignature::parse(sig_text).map_err(Failure::from)?;
            match parse_instance(&read_to_string(path)?).map_err(Failure::from)? {
                Instance::Graph(g) => {
                    let outcome = auto_eval(&g, &sig).map_err(Failure::from)?;
                    (outcome.value, outcome.method.to_string())
                }
                Instance::Grid(_) => {
                    return Err(Failure::new(2, "--graph points to a grid document"))
                }
            }
        }
        (None, Some(path)) => {
            match parse_instance(&read_to_string(path)?).map_err(Failure::from)? {
                Instance::Grid(g) => (
                    holant_eval_grid(&g).map_err(Failure::from)?,
                    "signature grid contraction".to_string(),
                ),
                Instance::Graph(_) => {
                    return Err(Failure::new(2, "--grid points to a graph document"))
                }
            }
        }
        _ => return Err(Failure::new(1, "eval requires exactly one of --graph, --grid")),
    };
    let out = match format {
        Format::Text => value.to_string(),
        Format::Json => serde_json::to_string_pretty(&json!({
            "value": value.to_string(),
            "method": method,
        }))
        .unwrap(),
    };
    Ok((out, 0))
}

fn cmd_symmetrize(graph: &PathBuf, format: Format) -> Result<(String, u8), Failure> {
    let g = match parse_instance(&read_to_string(graph)?).map_err(Failure::from)? {
        Instance::Graph(g) => g,
        Instance::Grid(_) => return Err(Failure::new(2, "--graph points to a grid document")),
    };
    let p = symmetrize(&g).map_err(Failure::from)?;
    let out = match format {
        Format::Text => p.to_string(),
        Format::Json => serde_json::to_string_pretty(&json!({
            "polynomial": p.to_string(),
        }))
        .unwrap(),
    };
    Ok((out, 0))
}

fn cmd_classify(args: &PointArgs, format: Format) -> Result<(String, u8), Failure> {
    let a = parse_scalar(&args.a)?;
    let b = parse_scalar(&args.b)?;
    let cls = classify(&a, &b, args.planar);
    let out = match format {
        Format::Json => serde_json::to_string_pretty(&cls.to_json()).unwrap(),
        Format::Text => {
            let c = &cls.coordinates;
            let verdict = match &cls.verdict {
                Verdict::Tractable { case, citation } => {
                    format!("Tractable (case {case}): {citation}")
                }
                Verdict::PlanarTractableGeneralHard => {
                    "Planar-tractable (4X^3 = Y^2); the general problem is #P-hard".to_string()
                }
                Verdict::Hard => "#P-hard".to_string(),
            };
            format!(
                "a = {}\nb = {}\nX = {}\nY = {}\nZ = {}\n{verdict}",
                c.a, c.b, c.x, c.y, c.z
            )
        }
    };
    Ok((out, 0))
}

fn cmd_witness(args: &PointArgs, format: Format) -> Result<(String, u8), Failure> {
    let a = parse_scalar(&args.a)?;
    let b = parse_scalar(&args.b)?;
    let w = hardness_witness(&a, &b).map_err(Failure::from)?;
    let code = if w.terminal.is_anomaly() { 4 } else { 0 };
    let out = match format {
        Format::Json | Format::Text => serde_json::to_string_pretty(&w.to_json()).unwrap(),
    };
    Ok((out, code))
}

fn cmd_verify_identities(format: Format) -> Result<(String, u8), Failure> {
    let records = verify_identity_suite();
    let all_pass = records.iter().all(|r| r.pass);
    let out = match format {
        Format::Json => serde_json::to_string_pretty(
            &records
                .iter()
                .map(|r| {
                    json!({
                        "name": r.name,
                        "anchor": r.anchor,
                        "pass": r.pass,
                        "lhs": r.lhs,
                        "rhs": r.rhs,
                    })
                })
                .collect::<Vec<_>>(),
        )
        .unwrap(),
        Format::Text => {
            let mut lines = Vec::new();
            for r in &records {
                if r.pass {
                    lines.push(format!("{} ({}): PASS", r.name, r.anchor));
                } else {
                    lines.push(format!(
                        "{} ({}): FAIL\n  lhs = {}\n  rhs = {}",
                        r.name, r.anchor, r.lhs, r.rhs
                    ));
                }
            }
            lines.push(format!(
                "{}/{} identities verified",
                records.iter().filter(|r| r.pass).count(),
                records.len()
            ));
            lines.join("\n")
        }
    };
    Ok((out, if all_pass { 0 } else { 4 }))
}

fn cmd_interpolate(args: &InterpArgs, format: Format) -> Result<(String, u8), Failure> {
    let a = parse_scalar(&args.a)?;
    let b = parse_scalar(&args.b)?;
    let grid = match parse_instance(&read_to_string(&args.grid)?).map_err(Failure::from)? {
        Instance::Grid(g) => g,
        Instance::Graph(_) => return Err(Failure::new(2, "--grid points to a graph document")),
    };
    let target_sig = SymSignature::parse(&args.target).map_err(Failure::from)?;
    if target_sig.arity() != 1 {
        return Err(Failure::new(1, "--target must be a unary signature [x,y]"));
    }
    let target = [target_sig.at(0).clone(), target_sig.at(1).clone()];
    let entry = builtin_matrix(&args.gadget).map_err(Failure::from)?;
    let m = eval_ab(&entry.matrix, &a, &b).map_err(Failure::from)?;
    let n = grid.slot_count();
    let fam = if m.rows == 3 {
        IterationFamily {
            m,
            s: vec![a.clone(), Cyc12::one(), b.clone()],
            finishers: Some(finisher_set(&a, &b).map_err(Failure::from)?.matrices),
            bound: IterationFamily::default_bound(n),
        }
    } else if m.rows == 2 {
        let starter = starter_set(&a, &b).map_err(Failure::from)?;
        IterationFamily {
            m,
            s: starter.vectors[0].to_vec(),
            finishers: None,
            bound: IterationFamily::default_bound(n),
        }
    } else {
        return Err(Failure::new(
            1,
            format!("gadget {} is not a recursion matrix", entry.id),
        ));
    };
    let interpolated = interpolate_unary_reduction(&grid, &target, &fam).map_err(Failure::from)?;
    let direct = holant_eval_grid(&grid.with_slots_filled(&SymSignature::new(vec![
        target[0].clone(),
        target[1].clone(),
    ])))
    .map_err(Failure::from)?;
    let matches = interpolated == direct;
    let out = match format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "interpolated": interpolated.to_string(),
            "direct": direct.to_string(),
            "match": matches,
            "slots": n,
            "gadget": entry.id,
        }))
        .unwrap(),
        Format::Text => format!(
            "interpolated = {interpolated}\ndirect       = {direct}\nmatch: {matches}"
        ),
    };
    Ok((out, if matches { 0 } else { 4 }))
}

fn cmd_scan(args: &ScanArgs, format: Format) -> Result<(String, u8), Failure> {
    let (lo, hi) = args
        .range
        .split_once(':')
        .ok_or_else(|| Failure::new(1, "--range must be \"lo:hi\""))?;
    let lo = parse_rat(lo)?;
    let hi = parse_rat(hi)?;
    let step = parse_rat(&args.step)?;
    let report = real_disjunction_scan((lo.clone(), hi.clone()), (lo, hi), &step)
        .map_err(Failure::from)?;
    let clean = report.counterexamples.is_empty();
    let out = match format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "points_checked": report.points_checked,
            "points_skipped": report.points_skipped,
            "counterexamples": report
                .counterexamples
                .iter()
                .map(|(x, y)| json!([x.to_string(), y.to_string()]))
                .collect::<Vec<_>>(),
        }))
        .unwrap(),
        Format::Text => {
            let mut lines = vec![
                format!("points checked: {}", report.points_checked),
                format!("points skipped (excluded loci): {}", report.points_skipped),
                format!("counterexamples: {}", report.counterexamples.len()),
            ];
            for (x, y) in &report.counterexamples {
                lines.push(format!("  X = {x}, Y = {y}"));
            }
            lines.join("\n")
        }
    };
    Ok((out, if clean { 0 } else { 4 }))
}

fn cmd_gadget(args: &GadgetArgs, format: Format) -> Result<(String, u8), Failure> {
    let rows: Vec<Vec<String>>;
    let label: String;
    match (&args.gadget, &args.grid) {
        (Some(id), None) => {
            let entry = builtin_matrix(id).map_err(Failure::from)?;
            label = entry.id.clone();
            match (&args.a, &args.b) {
                (Some(at), Some(bt)) => {
                    let a = parse_scalar(at)?;
                    let b = parse_scalar(bt)?;
                    let m = eval_ab(&entry.matrix, &a, &b).map_err(Failure::from)?;
                    rows = (0..m.rows)
                        .map(|i| (0..m.cols).map(|j| m.at(i, j).to_string()).collect())
                        .collect();
                }
                _ => {
                    let m = &entry.matrix;
                    rows = (0..m.rows)
                        .map(|i| (0..m.cols).map(|j| m.at(i, j).to_string()).collect())
                        .collect();
                }
            }
        }
        (None, Some(path)) => {
            let grid = match parse_instance(&read_to_string(path)?).map_err(Failure::from)? {
                Instance::Grid(g) => g,
                Instance::Graph(_) => {
                    return Err(Failure::new(2, "--grid points to a graph document"))
                }
            };
            let m = transfer_matrix(&grid).map_err(Failure::from)?;
            label = format!("transfer matrix ({}x{})", m.rows, m.cols);
            rows = (0..m.rows)
                .map(|i| (0..m.cols).map(|j| m.at(i, j).to_string()).collect())
                .collect();
        }
        _ => {
            return Err(Failure::new(
                1,
                "gadget-signature requires exactly one of --gadget, --grid",
            ))
        }
    }
    let out = match format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "gadget": label,
            "matrix": rows,
        }))
        .unwrap(),
        Format::Text => {
            let mut lines = vec![label];
            for r in &rows {
                lines.push(format!("[{}]", r.join(", ")));
            }
            lines.join("\n")
        }
    };
    Ok((out, 0))
}
