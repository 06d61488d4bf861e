//! `quandle-kit` command-line front end.
//!
//! Machine-readable JSON goes to stdout (or `--output`), summaries and
//! diagnostics to stderr. Exit codes: 0 success, 1 property failure,
//! 2 input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use quandle_kit::chain::{Flavor, Sign};
use quandle_kit::diagram::{
    corpus_diagram, corpus_text, over_passages, parse_pd_file_text, summary, PreparedDiagram, CORPUS,
    KNOT_CORPUS,
};
use quandle_kit::homology::{
    cocycle_basis, cocycle_violation, cohomology_group, homology_group, Cochain2, CoefficientGroup,
    MAX_HOMOLOGY_DEGREE,
};
use quandle_kit::invariants::{
    action_sweep, enumerate_colorings, epsilon_alternation_failure, epsilon_zero_sum_failure,
    state_sum, theorem_sweep, InvariantDocument, SweepDiagram, SweepReport,
};
use quandle_kit::quandle::{
    dihedral_quandle, enumerate_quandles, orbits, quandle_to_json, trivial_quandle, validate_quandle,
    QuandleFile, QuandleTable, MAX_ENUMERATION_ORDER,
};
use quandle_kit::Error;

#[derive(Parser)]
#[command(name = "quandle-kit", version, about = "Finite quandles, quandle (co)homology and cocycle invariants")]
struct Cli {
    /// Write the output document here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quandle tables: check, info, gen, make.
    #[command(subcommand)]
    Quandle(QuandleCmd),
    /// (Co)homology group of a quandle.
    Cohomology(CohomologyArgs),
    /// Basis (over Z) or spanning set (over Z/m) of the 2-cocycles.
    Cocycles(CocyclesArgs),
    /// Describe a diagram: arcs, faces, shading and crossing signs.
    Diagram(DiagramArgs),
    /// Evaluate the state-sum invariant of one diagram.
    Invariant(InvariantArgs),
    /// Sweep quandles and knots and check the triviality theorems.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum QuandleCmd {
    /// Validate the axioms and print the report.
    Check {
        #[arg(short, long)]
        file: PathBuf,
    },
    /// Order, orbits and connectedness.
    Info {
        #[arg(short, long)]
        file: PathBuf,
    },
    /// Enumerate all quandles of one order.
    Gen {
        #[arg(long)]
        order: usize,
        /// Keep one representative per isomorphism class.
        #[arg(long)]
        dedupe: bool,
        /// Directory receiving one JSON file per quandle.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Build a standard quandle.
    Make {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        order: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Trivial,
    Dihedral,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Neg,
    Pos,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Neg => Sign::Minus,
            SignArg::Pos => Sign::Plus,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Neg,
    Pos,
    Both,
}

impl ModeArg {
    fn signs(self) -> Vec<Sign> {
        match self {
            ModeArg::Neg => vec![Sign::Minus],
            ModeArg::Pos => vec![Sign::Plus],
            ModeArg::Both => vec![Sign::Minus, Sign::Plus],
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Rack,
    Degenerate,
    Quandle,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Rack => Flavor::Rack,
            FlavorArg::Degenerate => Flavor::Degenerate,
            FlavorArg::Quandle => Flavor::Quandle,
        }
    }
}

#[derive(Args)]
struct CohomologyArgs {
    #[arg(short, long)]
    file: PathBuf,
    #[arg(short = 'n', long, default_value_t = 2)]
    degree: usize,
    #[arg(long, value_enum, default_value = "neg")]
    sign: SignArg,
    #[arg(long, default_value = "Z")]
    coeff: CoefficientGroup,
    #[arg(long, value_enum, default_value = "quandle")]
    flavor: FlavorArg,
    /// Report homology instead of cohomology.
    #[arg(long)]
    homology: bool,
}

#[derive(Args)]
struct CocyclesArgs {
    #[arg(short, long)]
    file: PathBuf,
    #[arg(long, value_enum, default_value = "neg")]
    sign: SignArg,
    #[arg(long, default_value = "Z")]
    coeff: CoefficientGroup,
    /// Directory receiving `c<k>.json` per basis element.
    #[arg(long)]
    dir: Option<PathBuf>,
}

#[derive(Args)]
struct DiagramArgs {
    /// Corpus name or PD file path.
    #[arg(short = 'k', long)]
    knot: String,
    #[arg(long)]
    outer_face: Option<usize>,
}

#[derive(Args)]
struct InvariantArgs {
    #[arg(short, long)]
    quandle: PathBuf,
    /// Corpus name or PD file path.
    #[arg(short = 'k', long)]
    knot: String,
    #[arg(long, value_enum, default_value = "neg")]
    mode: SignArg,
    /// Coefficient group; defaults to the cocycle file's.
    #[arg(long)]
    coeff: Option<CoefficientGroup>,
    #[arg(long)]
    cocycle: PathBuf,
    #[arg(long)]
    outer_face: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 4)]
    max_order: usize,
    #[arg(long, default_value = "Z")]
    coeff: CoefficientGroup,
    #[arg(long, value_enum, default_value = "both")]
    mode: ModeArg,
    /// Require a nontrivial value on this diagram (repeatable).
    #[arg(long)]
    expect_nontrivial: Vec<String>,
}

enum Failure {
    Input(Error),
    Property(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type CliResult = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.output.clone();
    match run(cli.command, out.as_deref()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Property(msg)) => {
            eprintln!("property failure: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit<T: Serialize>(doc: &T, out: Option<&Path>) -> quandle_kit::Result<()> {
    let text = serde_json::to_string_pretty(doc)? + "\n";
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn read(path: &Path) -> quandle_kit::Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

fn load_quandle(path: &Path) -> quandle_kit::Result<QuandleTable> {
    let file: QuandleFile = serde_json::from_str(&read(path)?)?;
    file.to_quandle()
}

fn load_diagram(name: &str, outer_face: Option<usize>) -> quandle_kit::Result<PreparedDiagram> {
    let text = match corpus_text(name) {
        Some(t) => t,
        None if Path::new(name).exists() => read(Path::new(name))?,
        None => return Err(Error::InvalidDiagram(format!("`{name}` is neither a corpus name nor a file"))),
    };
    PreparedDiagram::new(parse_pd_file_text(&text)?, outer_face)
}

fn label(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn run(cmd: Command, out: Option<&Path>) -> CliResult {
    match cmd {
        Command::Quandle(q) => cmd_quandle(q, out),
        Command::Cohomology(a) => cmd_cohomology(a, out),
        Command::Cocycles(a) => cmd_cocycles(a, out),
        Command::Diagram(a) => cmd_diagram(a, out),
        Command::Invariant(a) => cmd_invariant(a, out),
        Command::Verify(a) => cmd_verify(a, out),
    }
}

fn quandle_info(q: &QuandleTable) -> Value {
    let orb = orbits(q);
    json!({
        "order": q.n(),
        "orbits": orb.blocks,
        "orbit_count": orb.len(),
        "connected": q.is_connected(),
        "involutory": q.is_involutory(),
    })
}

fn cmd_quandle(cmd: QuandleCmd, out: Option<&Path>) -> CliResult {
    match cmd {
        QuandleCmd::Check { file } => {
            let doc: QuandleFile = serde_json::from_str(&read(&file)?).map_err(Error::from)?;
            doc.raw()?;
            let report = validate_quandle(&doc.table)?;
            if !report.valid {
                emit(&json!({ "report": report }), out)?;
                let first = &report.violations[0];
                return Err(Failure::Property(format!("not a quandle: {first}")));
            }
            let q = doc.to_quandle()?;
            let info = quandle_info(&q);
            eprintln!(
                "valid quandle of order {}, {} orbit(s), {}",
                q.n(),
                info["orbit_count"],
                if q.is_connected() { "connected" } else { "not connected" }
            );
            emit(&json!({ "report": report, "info": info }), out)?;
        }
        QuandleCmd::Info { file } => {
            let q = load_quandle(&file)?;
            emit(&quandle_info(&q), out)?;
        }
        QuandleCmd::Gen { order, dedupe, dir } => {
            let qs = enumerate_quandles(order, dedupe)?;
            eprintln!("{} quandle(s) of order {order}", qs.len());
            let mut written = Vec::new();
            if let Some(dir) = dir {
                fs::create_dir_all(&dir).map_err(Error::from)?;
                for (k, q) in qs.iter().enumerate() {
                    let path = dir.join(format!("q{order}_{k}.json"));
                    fs::write(&path, quandle_to_json(q) + "\n").map_err(Error::from)?;
                    written.push(path.display().to_string());
                }
            }
            let tables: Vec<QuandleFile> = qs.iter().map(QuandleFile::from_table).collect();
            emit(&json!({ "order": order, "count": qs.len(), "quandles": tables, "files": written }), out)?;
        }
        QuandleCmd::Make { family, order } => {
            let q = match family {
                Family::Trivial => trivial_quandle(order)?,
                Family::Dihedral => dihedral_quandle(order)?,
            };
            emit(&QuandleFile::from_table(&q), out)?;
        }
    }
    Ok(())
}

fn cmd_cohomology(a: CohomologyArgs, out: Option<&Path>) -> CliResult {
    if a.degree > MAX_HOMOLOGY_DEGREE {
        return Err(Error::UnsupportedDegree(a.degree).into());
    }
    let q = load_quandle(&a.file)?;
    let (flavor, sign) = (Flavor::from(a.flavor), Sign::from(a.sign));
    let g = if a.homology {
        homology_group(&q, flavor, sign, a.degree, a.coeff)?
    } else {
        cohomology_group(&q, flavor, sign, a.degree, a.coeff)?
    };
    eprintln!("{}{}: {g}", if a.homology { "H_" } else { "H^" }, a.degree);
    emit(
        &json!({
            "kind": if a.homology { "homology" } else { "cohomology" },
            "degree": a.degree,
            "flavor": flavor,
            "sign": sign,
            "coeff": a.coeff,
            "group": g.to_string(),
            "free_rank": g.free_rank,
            "torsion": g.torsion,
        }),
        out,
    )?;
    Ok(())
}

fn cmd_cocycles(a: CocyclesArgs, out: Option<&Path>) -> CliResult {
    let q = load_quandle(&a.file)?;
    let sign = Sign::from(a.sign);
    let basis = cocycle_basis(&q, sign, a.coeff)?;
    eprintln!("{} cocycle(s) for sign {sign} over {}", basis.len(), a.coeff);
    let mut written = Vec::new();
    if let Some(dir) = &a.dir {
        fs::create_dir_all(dir).map_err(Error::from)?;
        for (k, phi) in basis.iter().enumerate() {
            let path = dir.join(format!("c{k}.json"));
            fs::write(&path, phi.to_json() + "\n").map_err(Error::from)?;
            written.push(path.display().to_string());
        }
    }
    let values: Vec<Vec<Vec<i64>>> = basis.iter().map(Cochain2::rows).collect();
    emit(&json!({ "sign": sign, "coeff": a.coeff, "count": basis.len(), "cocycles": values, "files": written }), out)?;
    Ok(())
}

fn cmd_diagram(a: DiagramArgs, out: Option<&Path>) -> CliResult {
    let p = load_diagram(&a.knot, a.outer_face)?;
    let faces: Vec<Value> = p
        .faces
        .boundary_edges
        .iter()
        .enumerate()
        .map(|(f, edges)| json!({ "id": f, "edges": edges, "color": p.shading.colors[f] }))
        .collect();
    eprintln!("{} {:?}", p.diagram, summary(&p));
    emit(
        &json!({
            "bundle": p.bundle(),
            "components": p.diagram.components(),
            "arcs": p.arcs.arcs,
            "over_passages": over_passages(&p.diagram, &p.arcs),
            "faces": faces,
            "writhe": p.signs.writhe,
            "epsilon": p.signs.epsilon,
        }),
        out,
    )?;
    Ok(())
}

fn cmd_invariant(a: InvariantArgs, out: Option<&Path>) -> CliResult {
    let q = load_quandle(&a.quandle)?;
    let p = load_diagram(&a.knot, a.outer_face)?;
    let mut phi = Cochain2::from_json(&read(&a.cocycle)?)?;
    if let Some(coeff) = a.coeff {
        if coeff == CoefficientGroup::Rationals {
            return Err(Error::Coefficient("Q (invariants take Z or Z/m)".into()).into());
        }
        phi = phi.with_coeff(coeff);
    }
    let mode = Sign::from(a.mode);
    if phi.n() != q.n() {
        return Err(Error::InvalidCochain(format!("cochain has {} elements, quandle has {}", phi.n(), q.n())).into());
    }
    if let Some(t) = cocycle_violation(&q, &phi, mode) {
        return Err(Error::InvalidCochain(format!("not a {mode} 2-cocycle: fails at (x,y,z) = {t:?}")).into());
    }
    let value = state_sum(&p, &q, &phi, mode)?;
    let doc = InvariantDocument::new(&label(&a.quandle), &a.knot, mode, &value)?;
    eprintln!("{} colorings, value {value}, {}", doc.colorings, if doc.trivial { "trivial" } else { "nontrivial" });
    emit(&doc, out)?;
    Ok(())
}

/// Whether the theorems require every cell of this sweep to be trivial.
fn triviality_required(coeff: CoefficientGroup, mode: Sign) -> bool {
    match coeff {
        CoefficientGroup::Integers => true,
        CoefficientGroup::IntegersMod(m) => mode == Sign::Plus && m % 2 == 1,
        CoefficientGroup::Rationals => false,
    }
}

fn cmd_verify(a: VerifyArgs, out: Option<&Path>) -> CliResult {
    if a.max_order == 0 || a.max_order > MAX_ENUMERATION_ORDER {
        return Err(Error::UnsupportedOrder { order: a.max_order, max: MAX_ENUMERATION_ORDER }.into());
    }
    if a.coeff == CoefficientGroup::Rationals {
        return Err(Error::Coefficient("Q (sweeps take Z or Z/m)".into()).into());
    }
    let quandles: Vec<QuandleTable> = (1..=a.max_order)
        .map(|n| enumerate_quandles(n, true))
        .collect::<quandle_kit::Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut names: Vec<String> = KNOT_CORPUS.iter().map(|s| s.to_string()).collect();
    for k in &a.expect_nontrivial {
        if !names.contains(k) {
            names.push(k.clone());
        }
    }
    let diagrams = names
        .iter()
        .map(|n| Ok(SweepDiagram { name: n.clone(), diagram: load_diagram(n, None)? }))
        .collect::<quandle_kit::Result<Vec<_>>>()?;
    let knots: Vec<SweepDiagram> = diagrams.iter().filter(|d| d.diagram.diagram.is_knot()).cloned().collect();

    let mut problems: Vec<String> = Vec::new();
    let mut sweeps = Vec::new();
    let mut reports: Vec<SweepReport> = Vec::new();
    for mode in a.mode.signs() {
        let r = theorem_sweep(&quandles, &diagrams, a.coeff, mode)?;
        let required = triviality_required(a.coeff, mode);
        if required {
            if let Some(c) = r.nontrivial().find(|c| knots.iter().any(|k| k.name == c.diagram)) {
                problems.push(format!(
                    "{mode} invariant nontrivial on {} for quandle {:?}, cocycle {:?}, witness {:?}",
                    c.diagram, r.quandles[c.quandle], c.cocycle, c.witness
                ));
            }
        }
        let nontrivial: Vec<_> = r.nontrivial().cloned().collect();
        eprintln!("sweep {mode} over {}: {} cells, {} nontrivial", a.coeff, r.cells.len(), nontrivial.len());
        sweeps.push(json!({
            "mode": mode,
            "cells": r.cells.len(),
            "triviality_required": required,
            "nontrivial": nontrivial,
        }));
        reports.push(r);
    }

    let mut expectations = Vec::new();
    for k in &a.expect_nontrivial {
        let witness = reports.iter().find_map(|r| {
            r.nontrivial().find(|c| &c.diagram == k).map(|c| {
                json!({ "mode": r.mode, "quandle": r.quandles[c.quandle], "cocycle": c.cocycle, "invariant": c.invariant })
            })
        });
        if witness.is_none() {
            problems.push(format!("expected a nontrivial value on {k}, found none"));
        } else {
            eprintln!("nontrivial witness on {k}: {}", witness.as_ref().expect("checked"));
        }
        expectations.push(json!({ "diagram": k, "witness": witness }));
    }

    let actions = if a.coeff == CoefficientGroup::Integers && a.mode.signs().contains(&Sign::Plus) {
        let r = action_sweep(&quandles, &knots)?;
        if let Some(f) = r.failures.first() {
            problems.push(format!("action identity {} fails: {f:?}", f.identity));
        }
        eprintln!("action identities: {} checks, {} failures", r.pairs_checked, r.failures.len());
        serde_json::to_value(&r).map_err(Error::from)?
    } else {
        Value::Null
    };

    let mut epsilon_failures = Vec::new();
    for (name, _) in CORPUS {
        let p = corpus_diagram(name)?;
        if let Some(f) = epsilon_alternation_failure(&p) {
            epsilon_failures.push(json!({ "diagram": name, "alternation": f }));
        }
        for x in &quandles {
            if let Some(f) = epsilon_zero_sum_failure(&p, x.n(), &enumerate_colorings(&p, x)) {
                epsilon_failures.push(json!({ "diagram": name, "quandle": x.rows(), "zero_sum": f }));
                break;
            }
        }
    }
    if let Some(f) = epsilon_failures.first() {
        problems.push(format!("epsilon property fails: {f}"));
    }

    let ok = problems.is_empty();
    emit(
        &json!({
            "max_order": a.max_order,
            "coeff": a.coeff,
            "quandles": quandles.len(),
            "diagrams": names,
            "sweeps": sweeps,
            "expect_nontrivial": expectations,
            "action_identities": actions,
            "epsilon_failures": epsilon_failures,
            "ok": ok,
        }),
        out,
    )?;
    if ok {
        eprintln!("all required properties hold");
        Ok(())
    } else {
        Err(Failure::Property(problems.join("; ")))
    }
}
