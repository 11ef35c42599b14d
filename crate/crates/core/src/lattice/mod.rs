//! Graphs glued together from unit squares, and their embeddings in the
//! integer lattice.

mod graph;
mod name;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Sub};

use thiserror::Error;

pub use graph::{Graph, QuotientGraphBuilder, VertexHandle, VertexId};
pub use name::{SideChain, Square, StructuralName};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("name `{0}` is already registered")]
    DuplicateName(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("cannot parse structural name `{0}`")]
    BadName(String),
    #[error("identifying `{0}` with `{1}` would create a self-loop")]
    SelfLoop(String, String),
    #[error("builder has no vertices")]
    EmptyBuilder,
    #[error("vertex {0} carries no label")]
    Unlabelled(VertexId),
    #[error("vertex {0} does not exist")]
    UnknownVertex(VertexId),
    #[error("embedding does not place vertex {0}")]
    NotTotal(VertexId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    pub fn squared_distance(self, other: LatticePoint) -> i64 {
        let (dx, dy) = (self.x - other.x, self.y - other.y);
        dx * dx + dy * dy
    }

    pub fn is_unit_from(self, other: LatticePoint) -> bool {
        self.squared_distance(other) == 1
    }

    /// The four lattice points at distance 1, in (x, y) order.
    pub fn unit_neighbors(self) -> [LatticePoint; 4] {
        let LatticePoint { x, y } = self;
        [
            LatticePoint::new(x - 1, y),
            LatticePoint::new(x, y - 1),
            LatticePoint::new(x, y + 1),
            LatticePoint::new(x + 1, y),
        ]
    }

    pub fn mirror_y(self) -> Self {
        LatticePoint::new(self.x, -self.y)
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: Self) -> Self {
        LatticePoint::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: Self) -> Self {
        LatticePoint::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Vertex to lattice point map. Partial maps are used as search pins.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Embedding {
    points: BTreeMap<VertexId, LatticePoint>,
}

impl Embedding {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: VertexId, p: LatticePoint) -> Option<LatticePoint> {
        self.points.insert(v, p)
    }

    pub fn get(&self, v: VertexId) -> Option<LatticePoint> {
        self.points.get(&v).copied()
    }

    pub fn remove(&mut self, v: VertexId) -> Option<LatticePoint> {
        self.points.remove(&v)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, LatticePoint)> + '_ {
        self.points.iter().map(|(v, p)| (*v, *p))
    }

    pub fn is_total_on(&self, g: &Graph) -> bool {
        self.points.len() == g.vertex_count() && self.points.keys().all(|&v| v < g.vertex_count())
    }

    pub fn translated(&self, by: LatticePoint) -> Embedding {
        self.iter().map(|(v, p)| (v, p + by)).collect()
    }
}

impl FromIterator<(VertexId, LatticePoint)> for Embedding {
    fn from_iter<I: IntoIterator<Item = (VertexId, LatticePoint)>>(iter: I) -> Self {
        Embedding {
            points: iter.into_iter().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonUnitEdge {
    pub u: VertexId,
    pub v: VertexId,
    pub squared_length: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlap {
    pub u: VertexId,
    pub v: VertexId,
    pub point: LatticePoint,
}

/// Outcome of [`verify_embedding`]. Vertices lying on non-incident edges need
/// no check: a unit lattice segment has no lattice point in its interior, so
/// that condition follows from injectivity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub non_unit_edges: Vec<NonUnitEdge>,
    pub overlaps: Vec<Overlap>,
}

impl VerificationReport {
    pub fn accepted(&self) -> bool {
        self.non_unit_edges.is_empty() && self.overlaps.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.accepted() {
            writeln!(f, "accepted: all edges unit, all vertices distinct")?;
        } else {
            writeln!(
                f,
                "rejected: {} non-unit edge(s), {} overlap(s)",
                self.non_unit_edges.len(),
                self.overlaps.len()
            )?;
        }
        for e in &self.non_unit_edges {
            writeln!(f, "NonUnitEdge {} {} squared_length={}", e.u, e.v, e.squared_length)?;
        }
        for o in &self.overlaps {
            writeln!(f, "Overlap {} {} at {}", o.u, o.v, o.point)?;
        }
        write!(f, "vertex-on-edge: implied by injectivity")
    }
}

pub fn verify_embedding(g: &Graph, e: &Embedding) -> Result<VerificationReport, LatticeError> {
    if let Some((v, _)) = e.iter().find(|(v, _)| *v >= g.vertex_count()) {
        return Err(LatticeError::UnknownVertex(v));
    }
    let mut pos = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        pos.push(e.get(v).ok_or(LatticeError::NotTotal(v))?);
    }

    let mut report = VerificationReport::default();
    for (u, v) in g.edges() {
        let d = pos[u].squared_distance(pos[v]);
        if d != 1 {
            report.non_unit_edges.push(NonUnitEdge { u, v, squared_length: d });
        }
    }
    let mut at: HashMap<LatticePoint, Vec<VertexId>> = HashMap::new();
    for (v, p) in pos.iter().enumerate() {
        at.entry(*p).or_default().push(v);
    }
    for (point, vs) in at {
        for (a, &u) in vs.iter().enumerate() {
            for &v in &vs[a + 1..] {
                report.overlaps.push(Overlap { u, v, point });
            }
        }
    }
    report.overlaps.sort_by_key(|o| (o.u, o.v));
    Ok(report)
}
