//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use griddy::embedder::{decide_griddy, OutcomeKind, SearchConfig};
use griddy::engine::{build_engine, ChainKind, EngineConfig, FlagDir, LogicEngine, Side};
use griddy::formula::{brute_force_nae_sat, Formula};
use griddy::lattice::{verify_embedding, Embedding, Graph, LatticePoint, SideChain, Square};
use griddy::reduction::{
    build_frame_and_axis, canonical_frame_embedding, chain_points, default_params, flag_endpoint, reduce,
    witness_embedding, Chain, ChainDirection, Diagonal, Layout, ReductionParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{figure_one, random_connected_graph, random_formula, two_variable_unsat, windowed_oracle};

const ENGINE_SAT_TIME: Duration = Duration::from_secs(120);
const WITNESS_COUNT: usize = 100;
const WITNESS_TIME: Duration = Duration::from_secs(60);
const RIGIDITY_NODES: u64 = 1_000_000;
const UNSAT_NODES: u64 = 10_000_000;
const UNSAT_TIME: Duration = Duration::from_secs(120);
const GEOMETRY_INSTANCES: usize = 20;
const ORACLE_GRAPHS: usize = 200;
const ORACLE_MAX_VERTICES: usize = 7;
const ORACLE_TIME: Duration = Duration::from_secs(300);
const MUTATION_WITNESSES: usize = 10;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn criterion_1_engine_matches_sat() -> Verdict {
    let start = Instant::now();
    const LITERALS: [i64; 6] = [1, 2, 3, -1, -2, -3];
    let mut triples = Vec::with_capacity(216);
    for a in LITERALS {
        for b in LITERALS {
            for c in LITERALS {
                triples.push([a, b, c]);
            }
        }
    }
    let (mut checked, mut disagreements) = (0usize, 0usize);
    for c1 in &triples {
        for c2 in &triples {
            let f = Formula::from_dimacs(3, &[*c1, *c2]).unwrap();
            let engine = build_engine(&f).exists_flat().unwrap().is_some();
            let sat = brute_force_nae_sat(&f).unwrap().is_some();
            disagreements += (engine != sat) as usize;
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    verdict(
        checked == 216 * 216 && disagreements == 0 && elapsed < ENGINE_SAT_TIME,
        format!("{checked} formulas, {disagreements} disagreements, {elapsed:.2?}"),
    )
}

/// Whether some direction assignment is valid, by trying all of them.
fn some_directions_work(engine: &LogicEngine, orientation: &[bool]) -> bool {
    let (n, m) = (engine.armatures(), engine.rows());
    let flags: Vec<(ChainKind, usize, usize)> = engine.flags().collect();
    (0u64..(1 << flags.len())).any(|bits| {
        let mut cfg = EngineConfig {
            orientation: orientation.to_vec(),
            dir_a: vec![vec![None; m]; n],
            dir_a_prime: vec![vec![None; m]; n],
        };
        for (b, &(kind, i, j)) in flags.iter().enumerate() {
            let d = if (bits >> b) & 1 == 1 { FlagDir::TowardGapRight } else { FlagDir::TowardGapLeft };
            cfg.set_dir(kind, i, j, Some(d));
        }
        engine.config_valid(&cfg)
    })
}

fn criterion_2_row_rule() -> Verdict {
    let (mut cases, mut disagreements) = (0usize, 0usize);
    for n in 1..=3usize {
        for m in 1..=2usize {
            let cells = n * m;
            for mask in 0u64..(1 << (2 * cells)) {
                let bit = |k: usize| (mask >> k) & 1 == 1;
                let a = (0..n).map(|i| (0..m).map(|j| bit(i * m + j)).collect()).collect();
                let ap = (0..n).map(|i| (0..m).map(|j| bit(cells + i * m + j)).collect()).collect();
                let engine = LogicEngine::new(a, ap).unwrap();
                for o in 0u32..(1 << n) {
                    let orientation: Vec<bool> = (0..n).map(|i| (o >> i) & 1 == 1).collect();
                    let rule = Side::BOTH
                        .iter()
                        .all(|&s| (1..=m).all(|row| engine.row_has_free_link(&orientation, s, row)));
                    disagreements += (rule != some_directions_work(&engine, &orientation)) as usize;
                    cases += 1;
                }
            }
        }
    }
    verdict(disagreements == 0, format!("{cases} engine/orientation cases, {disagreements} disagreements"))
}

fn satisfiable_formulas(count: usize, seed: u64) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=4);
        let f = random_formula(&mut rng, n, m);
        if brute_force_nae_sat(&f).unwrap().is_some() {
            out.push(f);
        }
    }
    out
}

fn witness_for(f: &Formula) -> (Graph, Embedding) {
    let g = reduce(f, default_params(f)).unwrap();
    let cfg = g.engine.exists_flat().unwrap().expect("satisfiable formula has a flat engine");
    let e = witness_embedding(&g, &cfg).unwrap();
    (g.graph, e)
}

fn criterion_3_constructive_direction() -> Verdict {
    let start = Instant::now();
    let accepted = satisfiable_formulas(WITNESS_COUNT, 300)
        .iter()
        .filter(|f| {
            let (g, e) = witness_for(f);
            verify_embedding(&g, &e).unwrap().accepted()
        })
        .count();
    let elapsed = start.elapsed();
    verdict(
        accepted == WITNESS_COUNT && elapsed < WITNESS_TIME,
        format!("{accepted}/{WITNESS_COUNT} witnesses verified, {elapsed:.2?}"),
    )
}

fn criterion_4_frame_rigidity() -> Verdict {
    let params = ReductionParams { w: 9, h: 6 };
    let g = build_frame_and_axis(params).unwrap().finalize().unwrap();
    let canonical = canonical_frame_embedding(params, &g).unwrap();
    let pins: Embedding = Square::Left(0)
        .corners()
        .iter()
        .map(|name| {
            let v = g.vertex(name).unwrap();
            (v, canonical.get(v).unwrap())
        })
        .collect();
    let cfg = SearchConfig::default().counting().with_pins(pins);
    let out = decide_griddy(&g, &cfg).unwrap();
    let same = out.witness.as_ref() == Some(&canonical);
    verdict(
        out.solution_count == Some(1) && same && out.nodes_expanded < RIGIDITY_NODES,
        format!(
            "{:?} embedding(s), canonical={same}, {} nodes",
            out.solution_count, out.nodes_expanded
        ),
    )
}

fn criterion_5_unsat_direction() -> Verdict {
    let run = |f: &Formula| {
        let g = reduce(f, default_params(f)).unwrap();
        let cfg = SearchConfig::default().with_budget(UNSAT_NODES).with_pins(g.frame_pins().unwrap());
        let start = Instant::now();
        let out = decide_griddy(&g.graph, &cfg).unwrap();
        (out, start.elapsed())
    };
    let (unsat, t_unsat) = run(&two_variable_unsat());
    let (sat, t_sat) = run(&figure_one());
    verdict(
        unsat.kind == OutcomeKind::Unrealizable
            && t_unsat < UNSAT_TIME
            && sat.kind == OutcomeKind::Embedded
            && t_sat < UNSAT_TIME,
        format!(
            "unsat: {} in {} nodes / {t_unsat:.2?}; figure 1: {} in {} nodes / {t_sat:.2?}",
            unsat.kind, unsat.nodes_expanded, sat.kind, sat.nodes_expanded
        ),
    )
}

fn chain_diagonals(layout: &Layout, chain: Chain) -> HashSet<i64> {
    let bx = layout.base_x(chain);
    (0..layout.length(chain))
        .flat_map(|t| [Diagonal::Left, Diagonal::Right].map(|d| chain_points(bx, ChainDirection::Up, t, d)))
        .flatten()
        .filter(|p| p.y > 0)
        .map(|p| p.x - p.y)
        .collect()
}

fn criterion_6_shared_slots() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(600);
    let (mut checks, mut failures) = (0usize, 0usize);
    for _ in 0..GEOMETRY_INSTANCES {
        let (n, m) = (rng.gen_range(1..=6usize), rng.gen_range(1..=6usize));
        let min = ReductionParams::minimal(n, m);
        let params = ReductionParams { w: min.w + rng.gen_range(0..4), h: min.h + rng.gen_range(0..4) };
        let layout = Layout::new(n, m, params);
        let (n32, m32) = (n as u32, m as u32);
        let arm = |k: u32| Chain::Armature { k, primed: false };
        let end = |k: u32, j: u32, d: FlagDir| flag_endpoint(layout.base_x(arm(k)), ChainDirection::Up, j, n32, k, d);
        for j in 1..=m32 {
            for i in 1..n32 {
                let right = end(i, j, FlagDir::TowardGapRight);
                let left = end(i + 1, j, FlagDir::TowardGapLeft);
                let (da, db) = (chain_diagonals(&layout, arm(i)), chain_diagonals(&layout, arm(i + 1)));
                let between: Vec<i64> =
                    (*da.iter().max().unwrap() + 1..*db.iter().min().unwrap()).collect();
                let ok = right == left && between == vec![right.x - right.y];
                failures += !ok as usize;
                checks += 1;
            }
            let inner = chain_points(
                layout.base_x(Chain::Side(SideChain::Inner)),
                ChainDirection::Up,
                2 * j + 2 * n32 - 1,
                Diagonal::Left,
            );
            let outer = chain_points(
                layout.base_x(Chain::Side(SideChain::Outer)),
                ChainDirection::Up,
                2 * j - 2,
                Diagonal::Left,
            );
            failures += !inner.contains(&end(1, j, FlagDir::TowardGapLeft)) as usize;
            failures += !outer.contains(&end(n32, j, FlagDir::TowardGapRight)) as usize;
            checks += 2;
        }
    }
    verdict(failures == 0, format!("{GEOMETRY_INSTANCES} instances, {checks} checks, {failures} failures"))
}

fn criterion_7_embedder_oracle() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(700);
    let (mut disagreements, mut yes) = (0usize, 0usize);
    for _ in 0..ORACLE_GRAPHS {
        let g = random_connected_graph(&mut rng, ORACLE_MAX_VERTICES);
        let out = decide_griddy(&g, &SearchConfig::default()).unwrap();
        let found = match out.kind {
            OutcomeKind::Embedded => verify_embedding(&g, out.witness.as_ref().unwrap()).unwrap().accepted(),
            _ => false,
        };
        let expected = windowed_oracle(&g);
        disagreements += (found != expected || out.kind == OutcomeKind::BudgetExhausted) as usize;
        yes += expected as usize;
    }
    let elapsed = start.elapsed();
    verdict(
        disagreements == 0 && elapsed < ORACLE_TIME,
        format!("{ORACLE_GRAPHS} graphs ({yes} griddy), {disagreements} disagreements, {elapsed:.2?}"),
    )
}

/// Edge lengths and distinctness, checked directly.
fn naive_accepts(g: &Graph, e: &Embedding) -> bool {
    let pts: Vec<LatticePoint> = (0..g.vertex_count()).map(|v| e.get(v).unwrap()).collect();
    let distinct: HashSet<_> = pts.iter().collect();
    distinct.len() == pts.len() && g.edges().all(|(u, v)| pts[u].squared_distance(pts[v]) == 1)
}

fn criterion_8_verifier_mutations() -> Verdict {
    let mut witnesses: Vec<(Graph, Embedding)> =
        satisfiable_formulas(MUTATION_WITNESSES - 2, 800).iter().map(witness_for).collect();
    // Two small generic graphs on four vertices. In the second, vertex 3 is
    // isolated, so some of its moves stay valid.
    for edges in [vec![(0, 1), (1, 2), (2, 3), (3, 0)], vec![(0, 1), (1, 2)]] {
        let g = Graph::from_edges(4, &edges).unwrap();
        let out = decide_griddy(&g, &SearchConfig::default()).unwrap();
        witnesses.push((g, out.witness.unwrap()));
    }
    let (mut mutations, mut rejected, mut confirmed_valid, mut wrong) = (0usize, 0usize, 0usize, 0usize);
    let mut all_base_ok = true;
    for (g, e) in &witnesses {
        all_base_ok &= verify_embedding(g, e).unwrap().accepted();
        for v in 0..g.vertex_count() {
            let p = e.get(v).unwrap();
            for d in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                let mut m = e.clone();
                m.insert(v, LatticePoint::new(p.x + d.0, p.y + d.1));
                let accepted = verify_embedding(g, &m).unwrap().accepted();
                let truth = naive_accepts(g, &m);
                mutations += 1;
                if accepted != truth {
                    wrong += 1;
                } else if accepted {
                    confirmed_valid += 1;
                } else {
                    rejected += 1;
                }
            }
        }
    }
    verdict(
        all_base_ok && wrong == 0 && witnesses.len() == MUTATION_WITNESSES,
        format!(
            "{} witnesses, {mutations} mutations: {rejected} rejected, {confirmed_valid} re-verified valid, {wrong} wrong",
            witnesses.len()
        ),
    )
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("engine lies flat iff NAE-satisfiable (n=3, m=2, all formulas)", criterion_1_engine_matches_sat),
        ("row rule matches exhaustive direction search (n<=3, m<=2)", criterion_2_row_rule),
        ("witness embeddings verify for satisfiable formulas", criterion_3_constructive_direction),
        ("frame and axis have a unique embedding (w=9, h=6)", criterion_4_frame_rigidity),
        ("pinned-frame search refutes the UNSAT gadget, embeds figure 1", criterion_5_unsat_direction),
        ("adjacent armatures share flag endpoints on empty diagonals", criterion_6_shared_slots),
        ("embedder agrees with windowed enumeration (<=7 vertices)", criterion_7_embedder_oracle),
        ("verifier rejects single-vertex perturbations", criterion_8_verifier_mutations),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("criterion {} [{tag}] {name}: {}", k + 1, v.detail);
        failed += !v.pass as usize;
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
