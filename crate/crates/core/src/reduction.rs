//! Compiles a NAE-3SAT formula into a graph of unit squares whose lattice
//! embeddings correspond to flat configurations of the formula's logic engine.
//!
//! Layout of the canonical embedding (`w`, `h` from [`ReductionParams`]):
//!
//! * left wall `L[0..h]` in columns x ∈ {0, 1}, `L[0].4` at the origin;
//! * top band `T[0..w]` in rows y ∈ {h-1, h};
//! * right wall `R[0..h]` in columns x ∈ {w+1, w+2};
//! * axis vertex `H[i]` at (i+1, 0), joining `L[0].3` at (1, 0) to `R[0].4`
//!   at (w+1, 0).
//!
//! Every chain hangs off an axis edge `(H[b], H[b+1])` through corners 4 and 3
//! of its first square and grows diagonally to the upper right, or is mirrored
//! below the axis. Chain pairs (`a_k`/`a_k'`, `SC1`/`SC1'`, `SC2`/`SC2'`)
//! share their base edge, so one member points up and the other down.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::engine::{ChainKind, EngineConfig, EngineError, FlagDir, LogicEngine};
use crate::formula::{Formula, Literal};
use crate::lattice::{
    Embedding, Graph, LatticeError, LatticePoint, QuotientGraphBuilder, SideChain, Square,
    StructuralName, VertexId,
};

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("width {w} must be at least {min_w} (2m + 4n + 3)")]
    WidthTooSmall { w: i64, min_w: i64 },
    #[error("height {h} must be at least {min_h} (2m + 2n + 2)")]
    HeightTooSmall { h: i64, min_h: i64 },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("construction is inconsistent: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionParams {
    pub w: i64,
    pub h: i64,
}

impl ReductionParams {
    /// Smallest legal frame for `n` variables and `m` clauses.
    pub fn minimal(n: usize, m: usize) -> Self {
        let (n, m) = (n as i64, m as i64);
        ReductionParams {
            w: 2 * m + 4 * n + 3,
            h: 2 * m + 2 * n + 2,
        }
    }

    pub fn new(w: i64, h: i64, n: usize, m: usize) -> Result<Self, ReductionError> {
        let p = ReductionParams { w, h };
        p.validate(n, m)?;
        Ok(p)
    }

    pub fn validate(&self, n: usize, m: usize) -> Result<(), ReductionError> {
        let min = Self::minimal(n, m);
        if self.w < min.w {
            return Err(ReductionError::WidthTooSmall { w: self.w, min_w: min.w });
        }
        if self.h < min.h {
            return Err(ReductionError::HeightTooSmall { h: self.h, min_h: min.h });
        }
        Ok(())
    }
}

pub fn default_params(f: &Formula) -> ReductionParams {
    ReductionParams::minimal(f.num_vars(), f.num_clauses())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainDirection {
    Up,
    Down,
}

impl ChainDirection {
    pub fn flipped(self) -> Self {
        match self {
            ChainDirection::Up => ChainDirection::Down,
            ChainDirection::Down => ChainDirection::Up,
        }
    }
}

/// Which side of its chain corner 1 of a square lands on. The opposite corner
/// 3 takes the other side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diagonal {
    Left,
    Right,
}

/// One of the square chains hanging off the axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chain {
    Side(SideChain),
    Armature { k: u32, primed: bool },
}

impl Chain {
    pub fn square(self, index: u32) -> Square {
        match self {
            Chain::Side(side) => Square::Side(side, index),
            Chain::Armature { k, primed } => Square::Armature { primed, k, index },
        }
    }
}

/// Axis indices and chain lengths for a given `n`, `m`, `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub n: i64,
    pub m: i64,
    pub w: i64,
    pub h: i64,
}

impl Layout {
    pub fn new(n: usize, m: usize, params: ReductionParams) -> Self {
        Layout {
            n: n as i64,
            m: m as i64,
            w: params.w,
            h: params.h,
        }
    }

    /// Index `b` of the axis edge `(H[b], H[b+1])` the chain is glued to.
    pub fn base_index(&self, chain: Chain) -> i64 {
        let Layout { n, m, w, .. } = *self;
        match chain {
            Chain::Side(SideChain::Inner | SideChain::InnerPrimed) => w - 2 * m - 4 * n - 2,
            Chain::Side(SideChain::Outer | SideChain::OuterPrimed) => w - 2 * m,
            Chain::Armature { k, .. } => w - 2 * m - 4 * n + 4 * k as i64 - 3,
        }
    }

    /// x coordinate of `H[b]`, the left end of the base edge.
    pub fn base_x(&self, chain: Chain) -> i64 {
        self.base_index(chain) + 1
    }

    pub fn length(&self, chain: Chain) -> u32 {
        let Layout { n, m, .. } = *self;
        let len = match chain {
            Chain::Side(SideChain::Inner | SideChain::InnerPrimed) => 2 * m + 2 * n,
            Chain::Side(SideChain::Outer | SideChain::OuterPrimed) => 2 * m - 1,
            Chain::Armature { k, .. } => 2 * m + 2 * n - 2 * k as i64 + 1,
        };
        len as u32
    }

    /// First of the two squares forming link `j` on a chain of armature `i`.
    pub fn link_start(&self, i: u32, j: u32) -> u32 {
        (2 * j as i64 + 2 * self.n - 2 * i as i64 - 1) as u32
    }

    pub fn chains(&self) -> Vec<Chain> {
        let mut out: Vec<Chain> = SideChain::ALL.iter().map(|&s| Chain::Side(s)).collect();
        for k in 1..=self.n as u32 {
            out.push(Chain::Armature { k, primed: false });
            out.push(Chain::Armature { k, primed: true });
        }
        out
    }
}

/// Corners 1..=4 of square `t` of a chain whose base edge starts at
/// `(base_x, 0)`. Up chains put corner 4 at `(base_x + t, t)` and corner 2 one
/// step up and right; down chains are the mirror image in the axis.
pub fn chain_points(base_x: i64, dir: ChainDirection, t: u32, diagonal: Diagonal) -> [LatticePoint; 4] {
    let t = t as i64;
    let c4 = LatticePoint::new(base_x + t, t);
    let c2 = LatticePoint::new(base_x + t + 1, t + 1);
    let left = LatticePoint::new(base_x + t, t + 1);
    let right = LatticePoint::new(base_x + t + 1, t);
    let (c1, c3) = match diagonal {
        Diagonal::Left => (left, right),
        Diagonal::Right => (right, left),
    };
    let corners = [c1, c2, c3, c4];
    match dir {
        ChainDirection::Up => corners,
        ChainDirection::Down => corners.map(LatticePoint::mirror_y),
    }
}

/// The diagonal choice a flag forces on both squares of its link.
pub fn flag_diagonal(pointing: FlagDir) -> Diagonal {
    match pointing {
        FlagDir::TowardGapLeft => Diagonal::Left,
        FlagDir::TowardGapRight => Diagonal::Right,
    }
}

/// Free corner of the flag on link `j` of a chain of armature `i`, found by
/// completing the square on the link's two corner-1 vertices.
pub fn flag_endpoint(
    base_x: i64,
    dir: ChainDirection,
    j: u32,
    n: u32,
    i: u32,
    pointing: FlagDir,
) -> LatticePoint {
    let s1 = 2 * j + 2 * n - 2 * i - 1;
    let diag = flag_diagonal(pointing);
    let first = chain_points(base_x, dir, s1, diag);
    let second = chain_points(base_x, dir, s1 + 1, diag);
    // Flag corners: 2 = second.1, 3 = first.2, 4 = first.1; corner 1 is
    // opposite corner 3.
    second[0] + first[0] - first[1]
}

/// Canonical positions of every frame corner and axis vertex.
pub fn frame_points(params: ReductionParams) -> Vec<(StructuralName, LatticePoint)> {
    let ReductionParams { w, h } = params;
    let p = LatticePoint::new;
    let mut out = Vec::with_capacity((4 * (2 * h + w) + w) as usize);
    for i in 0..h {
        let sq = Square::Left(i as u32);
        out.extend(sq.corners().into_iter().zip([p(0, i + 1), p(1, i + 1), p(1, i), p(0, i)]));
    }
    for i in 0..w {
        let sq = Square::Top(i as u32);
        out.extend(
            sq.corners()
                .into_iter()
                .zip([p(i + 1, h), p(i + 2, h), p(i + 2, h - 1), p(i + 1, h - 1)]),
        );
    }
    for i in 0..h {
        let sq = Square::Right(i as u32);
        out.extend(
            sq.corners()
                .into_iter()
                .zip([p(w + 1, i + 1), p(w + 2, i + 1), p(w + 2, i), p(w + 1, i)]),
        );
    }
    for i in 1..w {
        out.push((StructuralName::Axis(i as u32), p(i + 1, 0)));
    }
    out
}

/// Pins the frame and axis of `g` at their canonical positions. Vertices of
/// `g` without a frame or axis label are left out.
pub fn canonical_frame_embedding(params: ReductionParams, g: &Graph) -> Result<Embedding, ReductionError> {
    let mut e = Embedding::new();
    for (name, point) in frame_points(params) {
        let Some(v) = g.vertex(&name) else {
            continue;
        };
        if let Some(prev) = e.insert(v, point) {
            if prev != point {
                return Err(ReductionError::Inconsistent(format!(
                    "{name} placed at {point} and {prev}"
                )));
            }
        }
    }
    Ok(e)
}

/// Left, top and right walls glued into an arch, plus the axis path.
pub fn build_frame_and_axis(params: ReductionParams) -> Result<QuotientGraphBuilder, ReductionError> {
    if params.w < 2 || params.h < 1 {
        return Err(ReductionError::WidthTooSmall { w: params.w, min_w: 2 });
    }
    let (w, h) = (params.w as u32, params.h as u32);
    let mut b = QuotientGraphBuilder::new();
    for i in 0..h {
        b.add_square(Square::Left(i))?;
        b.add_square(Square::Right(i))?;
    }
    for i in 0..w {
        b.add_square(Square::Top(i))?;
    }
    let glue = |b: &mut QuotientGraphBuilder, x: Square, xc: u8, y: Square, yc: u8| {
        b.identify_names(&x.corner(xc), &y.corner(yc))
    };
    for i in 0..h - 1 {
        glue(&mut b, Square::Left(i), 1, Square::Left(i + 1), 4)?;
        glue(&mut b, Square::Left(i), 2, Square::Left(i + 1), 3)?;
    }
    glue(&mut b, Square::Left(h - 1), 2, Square::Top(0), 1)?;
    glue(&mut b, Square::Left(h - 1), 3, Square::Top(0), 4)?;
    for i in 0..w - 1 {
        glue(&mut b, Square::Top(i), 2, Square::Top(i + 1), 1)?;
        glue(&mut b, Square::Top(i), 3, Square::Top(i + 1), 4)?;
    }
    glue(&mut b, Square::Right(h - 1), 1, Square::Top(w - 1), 2)?;
    glue(&mut b, Square::Right(h - 1), 4, Square::Top(w - 1), 3)?;
    for i in 0..h - 1 {
        glue(&mut b, Square::Right(i), 1, Square::Right(i + 1), 4)?;
        glue(&mut b, Square::Right(i), 2, Square::Right(i + 1), 3)?;
    }

    let mut prev = b.require(&Square::Left(0).corner(3))?;
    for i in 1..w {
        let hv = b.add_vertex(StructuralName::Axis(i))?;
        b.add_edge(prev, hv)?;
        prev = hv;
    }
    let end = b.require(&Square::Right(0).corner(4))?;
    b.add_edge(prev, end)?;
    Ok(b)
}

fn axis_name(layout: &Layout, index: i64) -> StructuralName {
    assert!(
        index >= 1 && index < layout.w,
        "axis index {index} outside 1..{}",
        layout.w
    );
    StructuralName::Axis(index as u32)
}

fn add_chain(b: &mut QuotientGraphBuilder, layout: &Layout, chain: Chain) -> Result<(), ReductionError> {
    let base = layout.base_index(chain);
    let len = layout.length(chain);
    for t in 0..len {
        b.add_square(chain.square(t))?;
        if t > 0 {
            b.identify_names(&chain.square(t - 1).corner(2), &chain.square(t).corner(4))?;
        }
    }
    b.identify_names(&chain.square(0).corner(4), &axis_name(layout, base))?;
    b.identify_names(&chain.square(0).corner(3), &axis_name(layout, base + 1))?;
    Ok(())
}

pub fn build_side_chains(
    b: &mut QuotientGraphBuilder,
    params: ReductionParams,
    n: usize,
    m: usize,
) -> Result<(), ReductionError> {
    let layout = Layout::new(n, m, params);
    for side in SideChain::ALL {
        add_chain(b, &layout, Chain::Side(side))?;
    }
    Ok(())
}

pub fn build_armatures(
    b: &mut QuotientGraphBuilder,
    params: ReductionParams,
    n: usize,
    m: usize,
) -> Result<(), ReductionError> {
    let layout = Layout::new(n, m, params);
    for k in 1..=n as u32 {
        for primed in [false, true] {
            add_chain(b, &layout, Chain::Armature { k, primed })?;
        }
    }
    Ok(())
}

/// Flag on link `j` of armature chain `i`: a square whose corners 2, 3, 4 are
/// glued to the link, leaving corner 1 free.
pub fn add_flag(
    b: &mut QuotientGraphBuilder,
    n: usize,
    kind: ChainKind,
    i: u32,
    j: u32,
) -> Result<(), ReductionError> {
    let primed = kind.is_primed();
    let s1 = 2 * j as i64 + 2 * n as i64 - 2 * i as i64 - 1;
    assert!(s1 >= 1, "link {j} of armature {i} reaches the base square");
    let s1 = s1 as u32;
    let chain = Chain::Armature { k: i, primed };
    let flag = Square::Flag { primed, i, j };
    b.add_square(flag)?;
    b.identify_names(&flag.corner(2), &chain.square(s1 + 1).corner(1))?;
    b.identify_names(&flag.corner(3), &chain.square(s1).corner(2))?;
    b.identify_names(&flag.corner(4), &chain.square(s1).corner(1))?;
    Ok(())
}

pub fn add_flags(b: &mut QuotientGraphBuilder, f: &Formula) -> Result<(), ReductionError> {
    let n = f.num_vars();
    for i in 1..=n {
        for (j, clause) in f.clauses().iter().enumerate() {
            let j = j as u32 + 1;
            if !clause.contains(Literal::pos(i)) {
                add_flag(b, n, ChainKind::A, i as u32, j)?;
            }
            if !clause.contains(Literal::neg(i)) {
                add_flag(b, n, ChainKind::APrime, i as u32, j)?;
            }
        }
    }
    Ok(())
}

/// Vertex id for every structural role of a reduced graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentIndex {
    roles: BTreeMap<StructuralName, VertexId>,
}

impl ComponentIndex {
    pub fn from_graph(g: &Graph) -> Self {
        ComponentIndex {
            roles: g.names().map(|(n, v)| (*n, v)).collect(),
        }
    }

    pub fn from_roles(roles: BTreeMap<StructuralName, VertexId>) -> Self {
        ComponentIndex { roles }
    }

    pub fn get(&self, name: &StructuralName) -> Option<VertexId> {
        self.roles.get(name).copied()
    }

    pub fn roles(&self) -> impl Iterator<Item = (&StructuralName, VertexId)> + '_ {
        self.roles.iter().map(|(n, v)| (n, *v))
    }

    pub fn len(&self) -> usize {
        self.roles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roles.is_empty()
    }

    pub fn flag_endpoint(&self, kind: ChainKind, i: u32, j: u32) -> Option<VertexId> {
        self.get(&Square::Flag { primed: kind.is_primed(), i, j }.corner(1))
    }

    pub fn axis(&self, i: u32) -> Option<VertexId> {
        self.get(&StructuralName::Axis(i))
    }
}

/// The reduced graph together with its role index.
#[derive(Debug, Clone)]
pub struct GadgetGraph {
    pub graph: Graph,
    pub index: ComponentIndex,
    pub params: ReductionParams,
    pub n: usize,
    pub m: usize,
    pub engine: LogicEngine,
}

impl GadgetGraph {
    pub fn layout(&self) -> Layout {
        Layout::new(self.n, self.m, self.params)
    }

    /// Frame and axis pinned at their canonical positions.
    pub fn frame_pins(&self) -> Result<Embedding, ReductionError> {
        canonical_frame_embedding(self.params, &self.graph)
    }
}

/// Vertex and edge counts of the reduced graph, derived square by square.
pub fn expected_counts(n: usize, m: usize, params: ReductionParams, flags: usize) -> (usize, usize) {
    let layout = Layout::new(n, m, params);
    let (w, h) = (params.w as usize, params.h as usize);
    let mut vertices = 4 * h + 2 * w + 2 + (w - 1);
    let mut edges = 6 * h + 3 * w + 1 + w;
    for chain in layout.chains() {
        let len = layout.length(chain) as usize;
        vertices += 3 * len - 1;
        edges += 4 * len - 1;
    }
    (vertices + flags, edges + 2 * flags)
}

pub fn reduce(f: &Formula, params: ReductionParams) -> Result<GadgetGraph, ReductionError> {
    let (n, m) = (f.num_vars(), f.num_clauses());
    params.validate(n, m)?;
    let mut b = build_frame_and_axis(params)?;
    build_side_chains(&mut b, params, n, m)?;
    build_armatures(&mut b, params, n, m)?;
    add_flags(&mut b, f)?;
    let graph = b.finalize()?;
    let engine = LogicEngine::from_formula(f);

    let expected = expected_counts(n, m, params, engine.flag_count());
    let got = (graph.vertex_count(), graph.edge_count());
    if got != expected {
        return Err(ReductionError::Inconsistent(format!(
            "built {got:?} vertices/edges, expected {expected:?}"
        )));
    }
    let index = ComponentIndex::from_graph(&graph);
    Ok(GadgetGraph { graph, index, params, n, m, engine })
}

/// Positions for every label of the reduced graph under `cfg`: side chains
/// `SC1`/`SC2` up, armature `a_i` up iff `cfg.orientation[i]`, unflagged
/// squares with corner 1 on the left, flagged links per flag direction.
pub fn witness_points(
    g: &GadgetGraph,
    cfg: &EngineConfig,
) -> Result<BTreeMap<StructuralName, LatticePoint>, ReductionError> {
    g.engine.check_shape(cfg)?;
    let layout = g.layout();
    let mut points: BTreeMap<StructuralName, LatticePoint> = frame_points(g.params).into_iter().collect();

    for chain in layout.chains() {
        let (dir, kind_and_armature) = match chain {
            Chain::Side(side) => {
                let dir = if side.is_primed() { ChainDirection::Down } else { ChainDirection::Up };
                (dir, None)
            }
            Chain::Armature { k, primed } => {
                let a_up = cfg.orientation[k as usize - 1];
                let dir = if a_up != primed { ChainDirection::Up } else { ChainDirection::Down };
                let kind = if primed { ChainKind::APrime } else { ChainKind::A };
                (dir, Some((kind, k)))
            }
        };
        let mut diagonals = vec![Diagonal::Left; layout.length(chain) as usize];
        if let Some((kind, k)) = kind_and_armature {
            for j in 1..=g.m as u32 {
                if let Some(d) = cfg.dir(kind, k as usize, j as usize) {
                    let s1 = layout.link_start(k, j) as usize;
                    diagonals[s1] = flag_diagonal(d);
                    diagonals[s1 + 1] = flag_diagonal(d);
                }
            }
        }
        let base_x = layout.base_x(chain);
        for (t, diag) in diagonals.into_iter().enumerate() {
            let corners = chain_points(base_x, dir, t as u32, diag);
            for (name, p) in chain.square(t as u32).corners().into_iter().zip(corners) {
                points.insert(name, p);
            }
        }
        if let Some((kind, k)) = kind_and_armature {
            for j in 1..=g.m as u32 {
                let Some(d) = cfg.dir(kind, k as usize, j as usize) else {
                    continue;
                };
                let s1 = layout.link_start(k, j);
                let flag = Square::Flag { primed: kind.is_primed(), i: k, j };
                let c = |t: u32, corner: u8| points[&chain.square(t).corner(corner)];
                let corners = [
                    flag_endpoint(base_x, dir, j, g.n as u32, k, d),
                    c(s1 + 1, 1),
                    c(s1, 2),
                    c(s1, 1),
                ];
                points.extend(flag.corners().into_iter().zip(corners));
            }
        }
    }
    Ok(points)
}

/// Embedding of the reduced graph realising `cfg`. Any well-formed
/// configuration yields an embedding; it passes verification exactly when
/// the configuration is valid.
pub fn witness_embedding(g: &GadgetGraph, cfg: &EngineConfig) -> Result<Embedding, ReductionError> {
    let points = witness_points(g, cfg)?;
    let mut e = Embedding::new();
    for (name, v) in g.graph.names() {
        let p = *points
            .get(name)
            .ok_or_else(|| ReductionError::Inconsistent(format!("no position for {name}")))?;
        if let Some(prev) = e.insert(v, p) {
            if prev != p {
                return Err(ReductionError::Inconsistent(format!(
                    "vertex {v} ({name}) placed at both {prev} and {p}"
                )));
            }
        }
    }
    Ok(e)
}
