use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use griddy::embedder::{decide_griddy, OutcomeKind, SearchConfig, SearchMode, DEFAULT_BUDGET};
use griddy::engine::{build_engine, EngineConfig};
use griddy::formula::{brute_force_nae_sat, parse_formula, Formula};
use griddy::io::{embedding_from_json, embedding_to_json, graph_from_json, graph_to_json, index_from_json, index_to_json};
use griddy::lattice::{verify_embedding, Embedding, Graph, LatticePoint, Square, StructuralName, VertexId};
use griddy::reduction::{canonical_frame_embedding, default_params, reduce, witness_embedding, GadgetGraph, ReductionParams};
use griddy::render::render_svg;

const EXIT_OK: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_INCONSISTENT: u8 = 4;

#[derive(Parser)]
#[command(name = "griddy", version, about = "NAE-3SAT to lattice unit-distance graphs, and a lattice embedding search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the square-gadget graph of a DIMACS formula.
    Reduce {
        formula: PathBuf,
        #[command(flatten)]
        size: SizeArgs,
        /// Graph JSON output (stdout when omitted).
        #[arg(short, long)]
        graph: Option<PathBuf>,
        /// Component-index JSON output.
        #[arg(long)]
        index: Option<PathBuf>,
    },
    /// Decide NAE satisfiability by brute force.
    Sat { formula: PathBuf },
    /// Print the logic engine of a formula and a flat configuration if one exists.
    Engine { formula: PathBuf },
    /// Build and verify the lattice embedding of a flat configuration.
    Witness {
        formula: PathBuf,
        #[command(flatten)]
        size: SizeArgs,
        /// Configuration dump to use instead of searching for one.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Embedding JSON output (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for a lattice embedding of a graph.
    Embed {
        graph: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        /// Partial embedding JSON to pin.
        #[arg(long)]
        pins: Option<PathBuf>,
        /// Count all embeddings instead of stopping at the first.
        #[arg(long)]
        count: bool,
        #[arg(long)]
        no_symmetry: bool,
        #[arg(long)]
        no_twins: bool,
        /// Embedding JSON output (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check an embedding for unit edges and distinct points.
    Verify { graph: PathBuf, embedding: PathBuf },
    /// Draw an embedding as SVG.
    Render {
        graph: PathBuf,
        embedding: PathBuf,
        /// Component index; its flag endpoints are highlighted.
        #[arg(long)]
        index: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run every stage on a formula and check that they agree.
    Roundtrip {
        formula: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        /// Debugging aid: corrupt one flag to exercise inconsistency detection.
        #[arg(long, hide = true)]
        tamper_flag: bool,
    },
}

#[derive(Args)]
struct SizeArgs {
    /// Frame width (default: smallest legal).
    #[arg(long)]
    w: Option<i64>,
    /// Frame height (default: smallest legal).
    #[arg(long)]
    h: Option<i64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PinMode {
    /// Pin frame and axis at their canonical points.
    Frame,
}

#[derive(Args)]
struct SearchArgs {
    /// Maximum number of attempted placements.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads for the search.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, value_enum)]
    pin: Option<PinMode>,
    /// Component index used by `--pin frame`; inferred from labels when omitted.
    #[arg(long)]
    index: Option<PathBuf>,
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl ToString) -> Failure {
    Failure { code: EXIT_INPUT, message: message.to_string() }
}

fn inconsistency(message: impl ToString) -> Failure {
    Failure { code: EXIT_INCONSISTENT, message: message.to_string() }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| input_error(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn load_formula(path: &Path) -> Result<Formula, Failure> {
    parse_formula(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    graph_from_json(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_embedding(path: &Path) -> Result<Embedding, Failure> {
    embedding_from_json(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn params_for(f: &Formula, size: &SizeArgs) -> Result<ReductionParams, Failure> {
    let min = default_params(f);
    let params = ReductionParams::new(
        size.w.unwrap_or(min.w),
        size.h.unwrap_or(min.h),
        f.num_vars(),
        f.num_clauses(),
    );
    params.map_err(input_error)
}

fn build(f: &Formula, size: &SizeArgs) -> Result<GadgetGraph, Failure> {
    let params = params_for(f, size)?;
    reduce(f, params).map_err(inconsistency)
}

/// Frame size from the top and left wall labels of a reduced graph.
fn infer_params(g: &Graph) -> Option<ReductionParams> {
    let mut w = 0;
    let mut h = 0;
    for (name, _) in g.names() {
        match name.square() {
            Some(Square::Top(i)) => w = w.max(i as i64 + 1),
            Some(Square::Left(i)) => h = h.max(i as i64 + 1),
            _ => {}
        }
    }
    (w > 0 && h > 0).then_some(ReductionParams { w, h })
}

fn frame_pins(g: &Graph, index: Option<&Path>) -> Result<Embedding, Failure> {
    let params = match index {
        Some(p) => index_from_json(&read(p)?).map_err(input_error)?.0.params,
        None => infer_params(g).ok_or_else(|| input_error("graph has no frame labels to pin"))?,
    };
    let pins = canonical_frame_embedding(params, g).map_err(input_error)?;
    if pins.is_empty() {
        return Err(input_error("graph has no frame labels to pin"));
    }
    Ok(pins)
}

fn search_config(g: &Graph, args: &SearchArgs, extra_pins: Option<Embedding>) -> Result<SearchConfig, Failure> {
    let mut pins = extra_pins.unwrap_or_default();
    if let Some(PinMode::Frame) = args.pin {
        for (v, p) in frame_pins(g, args.index.as_deref())?.iter() {
            if pins.insert(v, p).is_some_and(|q| q != p) {
                return Err(input_error(format!("vertex {v} pinned to two different points")));
            }
        }
    }
    Ok(SearchConfig {
        budget: args.budget,
        pinned: (!pins.is_empty()).then_some(pins),
        threads: args.threads.max(1),
        ..SearchConfig::default()
    })
}

fn flag_endpoints(g: &Graph) -> Vec<VertexId> {
    g.names()
        .filter(|(name, _)| matches!(name, StructuralName::Corner(Square::Flag { .. }, 1)))
        .map(|(_, v)| v)
        .collect()
}

fn run_reduce(formula: &Path, size: &SizeArgs, graph: Option<&Path>, index: Option<&Path>) -> Outcome {
    let f = load_formula(formula)?;
    let g = build(&f, size)?;
    write_or_print(graph, &graph_to_json(&g.graph))?;
    if let Some(p) = index {
        write_or_print(Some(p), &index_to_json(&g))?;
    }
    eprintln!(
        "n={} m={} w={} h={} vertices={} edges={} flags={}",
        g.n,
        g.m,
        g.params.w,
        g.params.h,
        g.graph.vertex_count(),
        g.graph.edge_count(),
        g.engine.flag_count()
    );
    Ok(EXIT_OK)
}

fn run_sat(formula: &Path) -> Outcome {
    let f = load_formula(formula)?;
    match brute_force_nae_sat(&f).map_err(input_error)? {
        Some(a) => {
            println!("SAT {a}");
            Ok(EXIT_OK)
        }
        None => {
            println!("UNSAT");
            Ok(EXIT_NO)
        }
    }
}

fn run_engine(formula: &Path) -> Outcome {
    let f = load_formula(formula)?;
    let engine = build_engine(&f);
    print!("{}", engine.dump());
    match engine.exists_flat().map_err(input_error)? {
        Some(cfg) => {
            println!("flat");
            print!("{}", cfg.dump());
            Ok(EXIT_OK)
        }
        None => {
            println!("not flat");
            Ok(EXIT_NO)
        }
    }
}

fn run_witness(formula: &Path, size: &SizeArgs, config: Option<&Path>, output: Option<&Path>) -> Outcome {
    let f = load_formula(formula)?;
    let g = build(&f, size)?;
    let cfg = match config {
        Some(p) => EngineConfig::parse_dump(&read(p)?, g.n, g.m).map_err(input_error)?,
        None => match g.engine.exists_flat().map_err(input_error)? {
            Some(cfg) => cfg,
            None => {
                eprintln!("engine has no flat configuration");
                return Ok(EXIT_NO);
            }
        },
    };
    let e = witness_embedding(&g, &cfg).map_err(input_error)?;
    let report = verify_embedding(&g.graph, &e).map_err(inconsistency)?;
    write_or_print(output, &embedding_to_json(&e))?;
    eprintln!("{report}");
    Ok(if report.accepted() { EXIT_OK } else { EXIT_NO })
}

#[allow(clippy::too_many_arguments)]
fn run_embed(
    graph: &Path,
    search: &SearchArgs,
    pins: Option<&Path>,
    count: bool,
    no_symmetry: bool,
    no_twins: bool,
    output: Option<&Path>,
) -> Outcome {
    let g = load_graph(graph)?;
    let extra = pins.map(load_embedding).transpose()?;
    let mut cfg = search_config(&g, search, extra)?;
    if count {
        cfg.mode = SearchMode::CountAll;
    }
    cfg.symmetry_breaking = !no_symmetry;
    cfg.twin_pruning = !no_twins;
    let out = decide_griddy(&g, &cfg).map_err(input_error)?;
    if let Some(w) = &out.witness {
        write_or_print(output, &embedding_to_json(w))?;
    }
    println!("{}", out.stats_line());
    Ok(match out.kind {
        OutcomeKind::Embedded => EXIT_OK,
        OutcomeKind::Unrealizable => EXIT_NO,
        OutcomeKind::BudgetExhausted => EXIT_BUDGET,
    })
}

fn run_verify(graph: &Path, embedding: &Path) -> Outcome {
    let g = load_graph(graph)?;
    let e = load_embedding(embedding)?;
    let report = verify_embedding(&g, &e).map_err(input_error)?;
    println!("{report}");
    Ok(if report.accepted() { EXIT_OK } else { EXIT_NO })
}

fn run_render(graph: &Path, embedding: &Path, index: Option<&Path>, output: &Path) -> Outcome {
    let g = load_graph(graph)?;
    let e = load_embedding(embedding)?;
    let report = verify_embedding(&g, &e).map_err(input_error)?;
    if !report.accepted() {
        eprintln!("{report}");
        return Ok(EXIT_NO);
    }
    let highlight = match index {
        Some(p) => {
            let (_, idx) = index_from_json(&read(p)?).map_err(input_error)?;
            idx.roles()
                .filter(|(name, _)| matches!(name, StructuralName::Corner(Square::Flag { .. }, 1)))
                .map(|(_, v)| v)
                .collect()
        }
        None => Vec::new(),
    };
    let svg = render_svg(&g, &e, &highlight).map_err(input_error)?;
    write_or_print(Some(output), &svg)?;
    Ok(EXIT_OK)
}

fn run_roundtrip(formula: &Path, search: &SearchArgs, tamper: bool) -> Outcome {
    let f = load_formula(formula)?;
    let sat = brute_force_nae_sat(&f).map_err(input_error)?;
    let g = build(&f, &SizeArgs { w: None, h: None })?;
    let mut engine = g.engine.clone();
    if tamper && sat.is_none() {
        // Drop flags until the engine lies flat, contradicting the oracle.
        let flags: Vec<_> = engine.flags().collect();
        for (kind, i, j) in flags {
            if engine.exists_flat().map_err(input_error)?.is_some() {
                break;
            }
            engine.set_flag(kind, i, j, false);
        }
    }
    let flat = engine.exists_flat().map_err(input_error)?;
    if sat.is_some() != flat.is_some() {
        return Err(inconsistency(format!(
            "NAE oracle says {}, engine says {}",
            if sat.is_some() { "SAT" } else { "UNSAT" },
            if flat.is_some() { "flat" } else { "not flat" }
        )));
    }

    if let Some(cfg) = flat {
        let mut e = witness_embedding(&g, &cfg).map_err(inconsistency)?;
        if tamper {
            let v = *flag_endpoints(&g.graph)
                .first()
                .ok_or_else(|| input_error("formula has no flag to tamper with"))?;
            let p = e.get(v).expect("witness is total");
            e.insert(v, LatticePoint::new(p.x + 2, p.y + 1));
        }
        let report = verify_embedding(&g.graph, &e).map_err(inconsistency)?;
        if !report.accepted() {
            return Err(inconsistency(format!("witness rejected\n{report}")));
        }
        println!("SAT, engine flat, witness verified");
        return Ok(EXIT_OK);
    }

    let frame = SearchArgs { budget: search.budget, threads: search.threads, pin: Some(PinMode::Frame), index: None };
    let cfg = search_config(&g.graph, &frame, None)?;
    let out = decide_griddy(&g.graph, &cfg).map_err(inconsistency)?;
    eprintln!("{}", out.stats_line());
    match out.kind {
        OutcomeKind::Unrealizable => {
            println!("UNSAT confirmed");
            Ok(EXIT_NO)
        }
        OutcomeKind::BudgetExhausted => {
            println!("UNSAT, embedding search exhausted its budget");
            Ok(EXIT_BUDGET)
        }
        OutcomeKind::Embedded => Err(inconsistency("formula is UNSAT but the gadget embeds")),
    }
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Reduce { formula, size, graph, index } => {
            run_reduce(formula, size, graph.as_deref(), index.as_deref())
        }
        Command::Sat { formula } => run_sat(formula),
        Command::Engine { formula } => run_engine(formula),
        Command::Witness { formula, size, config, output } => {
            run_witness(formula, size, config.as_deref(), output.as_deref())
        }
        Command::Embed { graph, search, pins, count, no_symmetry, no_twins, output } => run_embed(
            graph,
            search,
            pins.as_deref(),
            *count,
            *no_symmetry,
            *no_twins,
            output.as_deref(),
        ),
        Command::Verify { graph, embedding } => run_verify(graph, embedding),
        Command::Render { graph, embedding, index, output } => {
            run_render(graph, embedding, index.as_deref(), output)
        }
        Command::Roundtrip { formula, search, tamper_flag } => run_roundtrip(formula, search, *tamper_flag),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
