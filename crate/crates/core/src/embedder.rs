//! Decides whether a graph embeds in ℤ² with unit edges and distinct vertex
//! positions, by backtracking over lattice placements.
//!
//! The search places one vertex per step, always the frontier vertex with
//! the fewest legal points (ties go to the earlier vertex of a static
//! breadth-first order), trying points in (x, y) order. Pruning:
//!
//! * a placed pair must satisfy `L1(p, q) <= dist(u, v)` with equal parity;
//! * false twins (non-adjacent, same neighbourhood) take increasing points
//!   in id order, so each twin permutation is explored once;
//! * without pins, a twin-free root sits at the origin, a twin-free
//!   neighbour of it at (1, 0), and the lowest-id twin-free vertex off the
//!   x-axis lies above it. Without twin-free vertices only translation is
//!   fixed.
//!
//! Solution counts are over this reduced space.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use thiserror::Error;

use crate::lattice::{verify_embedding, Embedding, Graph, LatticePoint, VertexId};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

const ORIGIN: LatticePoint = LatticePoint::new(0, 0);
const EAST: LatticePoint = LatticePoint::new(1, 0);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedderError {
    #[error("node budget must be at least 1")]
    ZeroBudget,
    #[error("pinned vertex {0} does not exist")]
    UnknownPinnedVertex(VertexId),
    #[error("pinned vertices {0} and {1} share point {2}")]
    PinnedOverlap(VertexId, VertexId, LatticePoint),
    #[error("pinned neighbours {0} and {1} are not at unit distance")]
    PinnedNonUnitEdge(VertexId, VertexId),
    #[error("search produced an embedding that fails verification")]
    Unsound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    #[default]
    FindOne,
    CountAll,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Maximum number of attempted placements.
    pub budget: u64,
    pub mode: SearchMode,
    pub pinned: Option<Embedding>,
    pub symmetry_breaking: bool,
    pub twin_pruning: bool,
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            mode: SearchMode::FindOne,
            pinned: None,
            symmetry_breaking: true,
            twin_pruning: true,
            threads: 1,
        }
    }
}

impl SearchConfig {
    pub fn counting(mut self) -> Self {
        self.mode = SearchMode::CountAll;
        self
    }

    pub fn with_pins(mut self, pins: Embedding) -> Self {
        self.pinned = Some(pins);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutcomeKind {
    Embedded,
    Unrealizable,
    BudgetExhausted,
}

impl fmt::Display for OutcomeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutcomeKind::Embedded => "Embedded",
            OutcomeKind::Unrealizable => "Unrealizable",
            OutcomeKind::BudgetExhausted => "BudgetExhausted",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub kind: OutcomeKind,
    pub witness: Option<Embedding>,
    /// Set in counting mode unless the budget ran out.
    pub solution_count: Option<u64>,
    pub nodes_expanded: u64,
}

impl SearchOutcome {
    pub fn stats_line(&self) -> String {
        let mut s = format!("outcome={} nodes={}", self.kind, self.nodes_expanded);
        if let Some(c) = self.solution_count {
            s.push_str(&format!(" solutions={c}"));
        }
        s
    }
}

/// Cheap certificate that a graph has no lattice embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    DegreeTooHigh { vertex: VertexId, degree: usize },
    OddCycle { u: VertexId, v: VertexId },
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::DegreeTooHigh { vertex, degree } => {
                write!(f, "vertex {vertex} has degree {degree} > 4")
            }
            RejectReason::OddCycle { u, v } => write!(f, "odd cycle through edge ({u}, {v})"),
        }
    }
}

pub fn quick_reject(g: &Graph) -> Option<RejectReason> {
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) > 4) {
        return Some(RejectReason::DegreeTooHigh { vertex: v, degree: g.degree(v) });
    }
    g.two_coloring().err().map(|(u, v)| RejectReason::OddCycle { u, v })
}

fn bfs_order(adj: &[Vec<usize>], starts: &[usize], seen: &mut [bool], out: &mut Vec<usize>) {
    let mut queue = VecDeque::new();
    for &s in starts {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        out.push(u);
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
}

/// Breadth-first placement order, component by component in id order. Each
/// component starts from its pinned vertices, or else from its lowest-id
/// vertex of maximum degree; ties go to the smaller id.
pub fn order_vertices(g: &Graph, pins: Option<&Embedding>) -> Vec<VertexId> {
    let adj: Vec<Vec<usize>> = (0..g.vertex_count()).map(|v| g.neighbors(v).to_vec()).collect();
    let mut seen = vec![false; g.vertex_count()];
    let mut out = Vec::with_capacity(g.vertex_count());
    for comp in g.components() {
        let pinned: Vec<usize> = comp
            .iter()
            .copied()
            .filter(|&v| pins.is_some_and(|p| p.get(v).is_some()))
            .collect();
        let starts = if pinned.is_empty() {
            let best = comp.iter().copied().max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)));
            best.into_iter().collect()
        } else {
            pinned
        };
        bfs_order(&adj, &starts, &mut seen, &mut out);
    }
    out
}

/// Up to four candidate points, in (x, y) order.
#[derive(Clone, Copy)]
struct Cands {
    pts: [LatticePoint; 4],
    len: usize,
}

impl Cands {
    fn new() -> Self {
        Cands { pts: [ORIGIN; 4], len: 0 }
    }

    fn push(&mut self, p: LatticePoint) {
        self.pts[self.len] = p;
        self.len += 1;
    }

    fn as_slice(&self) -> &[LatticePoint] {
        &self.pts[..self.len]
    }
}

/// One connected component, in local indices that follow global id order.
struct Component {
    verts: Vec<VertexId>,
    adj: Vec<Vec<usize>>,
    dist: Vec<u32>,
    order: Vec<usize>,
    class_of: Vec<Option<usize>>,
    classes: Vec<Vec<usize>>,
    pins: Vec<(usize, LatticePoint)>,
    root: Option<usize>,
    anchor: Option<usize>,
    /// Twin-free vertices in id order, when the reflection rule is active.
    reflect: Option<Vec<usize>>,
}

impl Component {
    fn new(g: &Graph, verts: Vec<VertexId>, pins: Option<&Embedding>, cfg: &SearchConfig) -> Self {
        let k = verts.len();
        let local: HashMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj: Vec<Vec<usize>> = verts
            .iter()
            .map(|&v| g.neighbors(v).iter().map(|u| local[u]).collect())
            .collect();

        let mut dist = vec![u32::MAX; k * k];
        let mut queue = VecDeque::new();
        for s in 0..k {
            let row = &mut dist[s * k..(s + 1) * k];
            row[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if row[v] == u32::MAX {
                        row[v] = row[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }

        let pins: Vec<(usize, LatticePoint)> = verts
            .iter()
            .enumerate()
            .filter_map(|(i, &v)| pins.and_then(|p| p.get(v)).map(|p| (i, p)))
            .collect();
        let is_pinned = |v: usize| pins.iter().any(|&(u, _)| u == v);

        let mut class_of = vec![None; k];
        let mut classes = Vec::new();
        if cfg.twin_pruning {
            let mut groups: HashMap<&[usize], Vec<usize>> = HashMap::new();
            for (v, nbrs) in adj.iter().enumerate() {
                if !is_pinned(v) {
                    groups.entry(nbrs.as_slice()).or_default().push(v);
                }
            }
            let mut multi: Vec<Vec<usize>> = groups.into_values().filter(|c| c.len() > 1).collect();
            multi.sort();
            for class in multi {
                for &v in &class {
                    class_of[v] = Some(classes.len());
                }
                classes.push(class);
            }
        }

        let (mut root, mut anchor, mut reflect) = (None, None, None);
        if pins.is_empty() {
            let twin_free = |v: usize| class_of[v].is_none();
            let best = (0..k)
                .max_by_key(|&v| (twin_free(v), adj[v].len(), std::cmp::Reverse(v)))
                .expect("components are non-empty");
            let r = match class_of[best] {
                Some(c) => classes[c][0],
                None => best,
            };
            root = Some(r);
            if cfg.symmetry_breaking && twin_free(r) {
                anchor = adj[r].iter().copied().filter(|&u| twin_free(u)).min();
                reflect = Some((0..k).filter(|&v| twin_free(v)).collect());
            }
        }

        let starts: Vec<usize> = match root {
            Some(r) => vec![r],
            None => pins.iter().map(|&(v, _)| v).collect(),
        };
        let mut order = Vec::with_capacity(k);
        bfs_order(&adj, &starts, &mut vec![false; k], &mut order);

        Component { verts, adj, dist, order, class_of, classes, pins, root, anchor, reflect }
    }

    fn len(&self) -> usize {
        self.verts.len()
    }

    fn dist(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.len() + v]
    }

    /// Legal points for `v`, ignoring the distance rule.
    fn candidates(&self, st: &State, v: usize) -> Cands {
        let mut out = Cands::new();
        let Some(&first) = self.adj[v].iter().find(|&&u| st.pos[u].is_some()) else {
            return out;
        };
        let base = st.pos[first].expect("placed");
        'points: for p in base.unit_neighbors() {
            if st.occ.contains_key(&p) {
                continue;
            }
            for &u in &self.adj[v] {
                if st.pos[u].is_some_and(|q| !q.is_unit_from(p)) {
                    continue 'points;
                }
            }
            if Some(v) == self.anchor && p != EAST {
                continue;
            }
            if let Some(c) = self.class_of[v] {
                for &u in &self.classes[c] {
                    if let Some(q) = st.pos[u] {
                        if (u < v && q > p) || (u > v && q < p) {
                            continue 'points;
                        }
                    }
                }
            }
            if !self.reflection_ok(st, v, p) {
                continue;
            }
            out.push(p);
        }
        out
    }

    /// The lowest-id twin-free vertex off the x-axis must end up above it.
    fn reflection_ok(&self, st: &State, v: usize, p: LatticePoint) -> bool {
        let Some(list) = &self.reflect else {
            return true;
        };
        if self.class_of[v].is_some() {
            return true;
        }
        for &u in list {
            let q = if u == v { Some(p) } else { st.pos[u] };
            match q {
                None => return true,
                Some(q) if q.y == 0 => continue,
                Some(q) => return q.y > 0,
            }
        }
        true
    }

    fn distance_ok(&self, st: &State, v: usize, p: LatticePoint) -> bool {
        st.placed.iter().all(|&u| {
            let q = st.pos[u].expect("placed");
            let l1 = ((p.x - q.x).abs() + (p.y - q.y).abs()) as u64;
            let d = self.dist(u, v) as u64;
            l1 <= d && (d - l1).is_multiple_of(2)
        })
    }

    /// Next vertex to place and its points, or `None` when nothing is left.
    fn choose(&self, st: &State) -> Option<(usize, Cands)> {
        if st.placed.is_empty() {
            let r = self.root.expect("unpinned components have a root");
            let mut c = Cands::new();
            c.push(ORIGIN);
            return Some((r, c));
        }
        let mut best: Option<(usize, Cands)> = None;
        for &v in &self.order {
            if st.pos[v].is_some() || st.placed_nbrs[v] == 0 {
                continue;
            }
            let c = self.candidates(st, v);
            if best.as_ref().is_none_or(|(_, b)| c.len < b.len) {
                let empty = c.len == 0;
                best = Some((v, c));
                if empty {
                    break;
                }
            }
        }
        best
    }

    fn initial_state(&self) -> State {
        let k = self.len();
        let mut st = State {
            pos: vec![None; k],
            occ: HashMap::new(),
            placed_nbrs: vec![0; k],
            placed: Vec::with_capacity(k),
        };
        for &(v, p) in &self.pins {
            st.place(self, v, p);
        }
        st
    }

    fn dfs(&self, st: &mut State, ctx: &mut Ctx) -> Flow {
        if st.placed.len() == self.len() {
            return ctx.record(st);
        }
        let Some((v, cands)) = self.choose(st) else {
            return Flow::Continue;
        };
        for &p in cands.as_slice() {
            if let Some(stop) = ctx.tick() {
                return stop;
            }
            if !self.distance_ok(st, v, p) {
                continue;
            }
            st.place(self, v, p);
            let flow = self.dfs(st, ctx);
            st.unplace(self, v);
            if flow != Flow::Continue {
                return flow;
            }
        }
        Flow::Continue
    }

    /// Follows forced placements from `st` until the next real choice.
    fn expand(&self, mut st: State, ctx: &mut Ctx) -> Expansion {
        loop {
            if st.placed.len() == self.len() {
                return Expansion::Solved(st);
            }
            let Some((v, cands)) = self.choose(&st) else {
                return Expansion::Dead;
            };
            let mut children = Vec::new();
            for &p in cands.as_slice() {
                if ctx.tick().is_some() {
                    return Expansion::Budget;
                }
                if self.distance_ok(&st, v, p) {
                    let mut child = st.clone();
                    child.place(self, v, p);
                    children.push(child);
                }
            }
            match children.len() {
                0 => return Expansion::Dead,
                1 => st = children.pop().expect("one child"),
                _ => return Expansion::Branches(children),
            }
        }
    }

    fn solve(&self, cfg: &SearchConfig, nodes: &AtomicU64) -> ComponentResult {
        if cfg.threads <= 1 {
            let mut ctx = Ctx::new(cfg, nodes, None);
            let mut st = self.initial_state();
            let flow = self.dfs(&mut st, &mut ctx);
            return ctx.finish(flow);
        }

        // Split the tree into ordered subtrees, shallowest levels first.
        let mut trunk = Ctx::new(cfg, nodes, None);
        let mut tasks = vec![Task::Open(self.initial_state())];
        let target = 4 * cfg.threads;
        while tasks.len() < target && tasks.iter().any(|t| matches!(t, Task::Open(_))) {
            let mut next = Vec::new();
            for task in tasks {
                match task {
                    Task::Open(st) => match self.expand(st, &mut trunk) {
                        Expansion::Solved(st) => next.push(Task::Solved(st)),
                        Expansion::Dead => {}
                        Expansion::Budget => return ComponentResult::budget(),
                        Expansion::Branches(children) => {
                            next.extend(children.into_iter().map(Task::Expanded))
                        }
                    },
                    other => next.push(other),
                }
            }
            tasks = next
                .into_iter()
                .map(|t| match t {
                    Task::Expanded(st) => Task::Open(st),
                    other => other,
                })
                .collect();
            if tasks.iter().all(|t| matches!(t, Task::Solved(_))) {
                break;
            }
        }

        let best = AtomicUsize::new(usize::MAX);
        let next = AtomicUsize::new(0);
        let tasks: Vec<State> = tasks
            .into_iter()
            .map(|t| match t {
                Task::Open(st) | Task::Solved(st) | Task::Expanded(st) => st,
            })
            .collect();
        let mut results: Vec<Option<ComponentResult>> = (0..tasks.len()).map(|_| None).collect();
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..cfg.threads.min(tasks.len()))
                .map(|_| {
                    scope.spawn(|| {
                        let mut done = Vec::new();
                        loop {
                            let i = next.fetch_add(1, Ordering::SeqCst);
                            if i >= tasks.len() {
                                break;
                            }
                            let mut ctx = Ctx::new(cfg, nodes, Some((&best, i)));
                            let mut st = tasks[i].clone();
                            let flow = self.dfs(&mut st, &mut ctx);
                            done.push((i, ctx.finish(flow)));
                        }
                        done
                    })
                })
                .collect();
            for h in handles {
                for (i, r) in h.join().expect("search worker panicked") {
                    results[i] = Some(r);
                }
            }
        });

        let mut combined = ComponentResult { kind: Some(Found::No), witness: None, count: 0 };
        for r in results.into_iter().flatten() {
            combined.count = combined.count.saturating_add(r.count);
            if combined.witness.is_none() && r.witness.is_some() {
                combined.witness = r.witness;
            }
            match r.kind {
                None => combined.kind = None,
                Some(Found::Cancelled) => {}
                Some(Found::Yes) if combined.kind.is_some() => combined.kind = Some(Found::Yes),
                _ => {}
            }
        }
        if combined.witness.is_some() && cfg.mode == SearchMode::FindOne {
            combined.kind = Some(Found::Yes);
        }
        if combined.kind == Some(Found::No) && combined.count > 0 {
            combined.kind = Some(Found::Yes);
        }
        combined
    }

    fn global(&self, pos: &[LatticePoint]) -> Vec<(VertexId, LatticePoint)> {
        self.verts.iter().copied().zip(pos.iter().copied()).collect()
    }
}

enum Task {
    Open(State),
    Expanded(State),
    Solved(State),
}

enum Expansion {
    Solved(State),
    Dead,
    Budget,
    Branches(Vec<State>),
}

#[derive(Clone)]
struct State {
    pos: Vec<Option<LatticePoint>>,
    occ: HashMap<LatticePoint, usize>,
    placed_nbrs: Vec<u32>,
    placed: Vec<usize>,
}

impl State {
    fn place(&mut self, comp: &Component, v: usize, p: LatticePoint) {
        self.pos[v] = Some(p);
        self.occ.insert(p, v);
        self.placed.push(v);
        for &u in &comp.adj[v] {
            self.placed_nbrs[u] += 1;
        }
    }

    fn unplace(&mut self, comp: &Component, v: usize) {
        let p = self.pos[v].take().expect("placed");
        self.occ.remove(&p);
        let last = self.placed.pop();
        debug_assert_eq!(last, Some(v));
        for &u in &comp.adj[v] {
            self.placed_nbrs[u] -= 1;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
    Budget,
    Cancelled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Found {
    Yes,
    No,
    Cancelled,
}

/// `kind == None` means the budget ran out.
struct ComponentResult {
    kind: Option<Found>,
    witness: Option<Vec<LatticePoint>>,
    count: u64,
}

impl ComponentResult {
    fn budget() -> Self {
        ComponentResult { kind: None, witness: None, count: 0 }
    }
}

struct Ctx<'a> {
    budget: u64,
    mode: SearchMode,
    nodes: &'a AtomicU64,
    /// Lowest task index that found a witness, and this task's index.
    cancel: Option<(&'a AtomicUsize, usize)>,
    count: u64,
    witness: Option<Vec<LatticePoint>>,
}

impl<'a> Ctx<'a> {
    fn new(cfg: &SearchConfig, nodes: &'a AtomicU64, cancel: Option<(&'a AtomicUsize, usize)>) -> Self {
        Ctx { budget: cfg.budget, mode: cfg.mode, nodes, cancel, count: 0, witness: None }
    }

    fn tick(&mut self) -> Option<Flow> {
        if let Some((best, me)) = self.cancel {
            if self.mode == SearchMode::FindOne && best.load(Ordering::Relaxed) < me {
                return Some(Flow::Cancelled);
            }
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        (n > self.budget).then_some(Flow::Budget)
    }

    fn record(&mut self, st: &State) -> Flow {
        self.count = self.count.saturating_add(1);
        if self.witness.is_none() {
            self.witness = Some(st.pos.iter().map(|p| p.expect("complete")).collect());
        }
        match self.mode {
            SearchMode::FindOne => {
                if let Some((best, me)) = self.cancel {
                    best.fetch_min(me, Ordering::SeqCst);
                }
                Flow::Stop
            }
            SearchMode::CountAll => Flow::Continue,
        }
    }

    fn finish(self, flow: Flow) -> ComponentResult {
        let kind = match flow {
            Flow::Budget => None,
            Flow::Cancelled => Some(Found::Cancelled),
            _ if self.count > 0 => Some(Found::Yes),
            _ => Some(Found::No),
        };
        ComponentResult { kind, witness: self.witness, count: self.count }
    }
}

fn check_pins(g: &Graph, pins: &Embedding) -> Result<(), EmbedderError> {
    let mut at: HashMap<LatticePoint, VertexId> = HashMap::new();
    for (v, p) in pins.iter() {
        if v >= g.vertex_count() {
            return Err(EmbedderError::UnknownPinnedVertex(v));
        }
        if let Some(u) = at.insert(p, v) {
            return Err(EmbedderError::PinnedOverlap(u, v, p));
        }
    }
    for (u, v) in g.edges() {
        if let (Some(p), Some(q)) = (pins.get(u), pins.get(v)) {
            if !p.is_unit_from(q) {
                return Err(EmbedderError::PinnedNonUnitEdge(u, v));
            }
        }
    }
    Ok(())
}

pub fn decide_griddy(g: &Graph, cfg: &SearchConfig) -> Result<SearchOutcome, EmbedderError> {
    if cfg.budget == 0 {
        return Err(EmbedderError::ZeroBudget);
    }
    let pins = cfg.pinned.as_ref();
    if let Some(p) = pins {
        check_pins(g, p)?;
    }
    let counting = cfg.mode == SearchMode::CountAll;
    let outcome = |kind, witness, count: Option<u64>, nodes| SearchOutcome {
        kind,
        witness,
        solution_count: if counting { count } else { None },
        nodes_expanded: nodes,
    };
    if quick_reject(g).is_some() {
        return Ok(outcome(OutcomeKind::Unrealizable, None, Some(0), 0));
    }

    let nodes = AtomicU64::new(0);
    let spent = |nodes: &AtomicU64| nodes.load(Ordering::Relaxed).min(cfg.budget);
    let mut count: u64 = 1;
    let mut pinned_parts = Vec::new();
    let mut free_parts = Vec::new();
    for verts in g.components() {
        let comp = Component::new(g, verts, pins, cfg);
        let result = comp.solve(cfg, &nodes);
        match result.kind {
            None => return Ok(outcome(OutcomeKind::BudgetExhausted, None, None, spent(&nodes))),
            Some(Found::No) | Some(Found::Cancelled) if result.witness.is_none() => {
                return Ok(outcome(OutcomeKind::Unrealizable, None, Some(0), spent(&nodes)));
            }
            _ => {}
        }
        count = count.saturating_mul(result.count);
        let placed = comp.global(&result.witness.expect("found components carry a witness"));
        if comp.pins.is_empty() {
            free_parts.push(placed);
        } else {
            pinned_parts.push(placed);
        }
    }

    // Unpinned components go to the right of everything placed so far.
    let mut witness: Embedding = pinned_parts.into_iter().flatten().collect();
    let mut right_edge = witness.iter().map(|(_, p)| p.x).max();
    for part in free_parts {
        let min_x = part.iter().map(|(_, p)| p.x).min().unwrap_or(0);
        let shift = right_edge.map_or(0, |r| r + 2 - min_x);
        for (v, p) in part {
            let q = LatticePoint::new(p.x + shift, p.y);
            right_edge = Some(right_edge.map_or(q.x, |r| r.max(q.x)));
            witness.insert(v, q);
        }
    }
    let report = verify_embedding(g, &witness).map_err(|_| EmbedderError::Unsound)?;
    if !report.accepted() {
        return Err(EmbedderError::Unsound);
    }
    Ok(outcome(OutcomeKind::Embedded, Some(witness), Some(count), spent(&nodes)))
}
