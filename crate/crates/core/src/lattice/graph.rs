use std::collections::{BTreeMap, HashMap, VecDeque};

use super::name::{Square, StructuralName};
use super::LatticeError;

pub type VertexId = usize;

/// Provisional vertex inside a [`QuotientGraphBuilder`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexHandle(usize);

#[derive(Debug, Clone)]
struct DisjointSet {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSet {
    fn push(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.size.push(1);
        id
    }

    fn find(&mut self, mut node: usize) -> usize {
        let mut root = node;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[node] != root {
            let next = self.parent[node];
            self.parent[node] = root;
            node = next;
        }
        root
    }

    /// Returns (surviving root, absorbed root).
    fn union(&mut self, a: usize, b: usize) -> (usize, usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        (a, b)
    }
}

/// Builds a graph as a disjoint union of named vertices and squares, then glues
/// vertices together. Edges between glued vertices collapse on [`finalize`].
///
/// [`finalize`]: QuotientGraphBuilder::finalize
#[derive(Debug, Clone)]
pub struct QuotientGraphBuilder {
    names: Vec<StructuralName>,
    registry: HashMap<StructuralName, VertexHandle>,
    adjacency: Vec<Vec<usize>>,
    sets: DisjointSet,
    members: Vec<Vec<usize>>,
}

impl Default for QuotientGraphBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl QuotientGraphBuilder {
    pub fn new() -> Self {
        QuotientGraphBuilder {
            names: Vec::new(),
            registry: HashMap::new(),
            adjacency: Vec::new(),
            sets: DisjointSet {
                parent: Vec::new(),
                size: Vec::new(),
            },
            members: Vec::new(),
        }
    }

    /// Rebuilds a builder holding exactly the vertices, labels and edges of `g`.
    pub fn from_graph(g: &Graph) -> Self {
        let mut b = Self::new();
        let mut first = Vec::with_capacity(g.vertex_count());
        for v in 0..g.vertex_count() {
            let labels = g.labels(v);
            let head = b.add_vertex(labels[0]).expect("graph labels are unique");
            for name in &labels[1..] {
                let h = b.add_vertex(*name).expect("graph labels are unique");
                b.identify(head, h).expect("fresh vertices have no edges");
            }
            first.push(head);
        }
        for (u, v) in g.edges() {
            b.add_edge(first[u], first[v]).expect("graph has no loops");
        }
        b
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn handle(&self, name: &StructuralName) -> Option<VertexHandle> {
        self.registry.get(name).copied()
    }

    pub fn require(&self, name: &StructuralName) -> Result<VertexHandle, LatticeError> {
        self.handle(name)
            .ok_or_else(|| LatticeError::UnknownName(name.to_string()))
    }

    pub fn add_vertex(&mut self, name: StructuralName) -> Result<VertexHandle, LatticeError> {
        if self.registry.contains_key(&name) {
            return Err(LatticeError::DuplicateName(name.to_string()));
        }
        let id = self.sets.push();
        self.names.push(name);
        self.adjacency.push(Vec::new());
        self.members.push(vec![id]);
        let handle = VertexHandle(id);
        self.registry.insert(name, handle);
        Ok(handle)
    }

    pub fn add_edge(&mut self, u: VertexHandle, v: VertexHandle) -> Result<(), LatticeError> {
        if self.sets.find(u.0) == self.sets.find(v.0) {
            return Err(self.self_loop(u, v));
        }
        self.adjacency[u.0].push(v.0);
        self.adjacency[v.0].push(u.0);
        Ok(())
    }

    /// Adds four fresh vertices `sq.1 .. sq.4` and the cycle through them.
    pub fn add_square(&mut self, sq: Square) -> Result<[VertexHandle; 4], LatticeError> {
        if self.registry.contains_key(&sq.corner(1)) {
            return Err(LatticeError::DuplicateName(sq.to_string()));
        }
        let mut hs = [VertexHandle(0); 4];
        for (slot, name) in hs.iter_mut().zip(sq.corners()) {
            *slot = self.add_vertex(name)?;
        }
        for c in 0..4 {
            self.add_edge(hs[c], hs[(c + 1) % 4])?;
        }
        Ok(hs)
    }

    /// Glues two vertices. Gluing the endpoints of an edge is refused.
    pub fn identify(&mut self, u: VertexHandle, v: VertexHandle) -> Result<(), LatticeError> {
        let (ru, rv) = (self.sets.find(u.0), self.sets.find(v.0));
        if ru == rv {
            return Ok(());
        }
        let (small, large) = if self.members[ru].len() <= self.members[rv].len() {
            (ru, rv)
        } else {
            (rv, ru)
        };
        for i in 0..self.members[small].len() {
            let x = self.members[small][i];
            for j in 0..self.adjacency[x].len() {
                let y = self.adjacency[x][j];
                if self.sets.find(y) == large {
                    return Err(self.self_loop(u, v));
                }
            }
        }
        let (keep, gone) = self.sets.union(ru, rv);
        let moved = std::mem::take(&mut self.members[gone]);
        self.members[keep].extend(moved);
        Ok(())
    }

    pub fn identify_names(
        &mut self,
        a: &StructuralName,
        b: &StructuralName,
    ) -> Result<(), LatticeError> {
        let (u, v) = (self.require(a)?, self.require(b)?);
        self.identify(u, v)
    }

    fn self_loop(&self, u: VertexHandle, v: VertexHandle) -> LatticeError {
        LatticeError::SelfLoop(self.names[u.0].to_string(), self.names[v.0].to_string())
    }

    /// Collapses identified vertices and parallel edges. Vertices are numbered
    /// in order of their smallest label.
    pub fn finalize(mut self) -> Result<Graph, LatticeError> {
        if self.is_empty() {
            return Err(LatticeError::EmptyBuilder);
        }
        let total = self.names.len();
        let mut classes: BTreeMap<usize, Vec<StructuralName>> = BTreeMap::new();
        for id in 0..total {
            let root = self.sets.find(id);
            classes.entry(root).or_default().push(self.names[id]);
        }
        let mut ordered: Vec<(usize, Vec<StructuralName>)> = classes
            .into_iter()
            .map(|(root, mut labels)| {
                labels.sort();
                (root, labels)
            })
            .collect();
        ordered.sort_by(|a, b| a.1[0].cmp(&b.1[0]));

        let mut root_to_vertex = HashMap::with_capacity(ordered.len());
        for (vertex, (root, _)) in ordered.iter().enumerate() {
            root_to_vertex.insert(*root, vertex);
        }
        let mut adjacency = vec![Vec::new(); ordered.len()];
        for x in 0..total {
            let u = root_to_vertex[&self.sets.find(x)];
            for &y in &self.adjacency[x] {
                let v = root_to_vertex[&self.sets.find(y)];
                adjacency[u].push(v);
            }
        }
        let labels = ordered.into_iter().map(|(_, l)| l).collect();
        Graph::assemble(adjacency, labels)
    }
}

/// Simple undirected graph whose vertices carry structural labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<VertexId>>,
    labels: Vec<Vec<StructuralName>>,
    by_name: BTreeMap<StructuralName, VertexId>,
    edge_count: usize,
}

impl Graph {
    fn assemble(
        mut adjacency: Vec<Vec<VertexId>>,
        labels: Vec<Vec<StructuralName>>,
    ) -> Result<Self, LatticeError> {
        let mut by_name = BTreeMap::new();
        for (v, names) in labels.iter().enumerate() {
            if names.is_empty() {
                return Err(LatticeError::Unlabelled(v));
            }
            for name in names {
                if by_name.insert(*name, v).is_some() {
                    return Err(LatticeError::DuplicateName(name.to_string()));
                }
            }
        }
        let mut edge_count = 0;
        for (v, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            nbrs.dedup();
            if nbrs.binary_search(&v).is_ok() {
                return Err(LatticeError::SelfLoop(labels[v][0].to_string(), labels[v][0].to_string()));
            }
            edge_count += nbrs.len();
        }
        Ok(Graph {
            adjacency,
            labels,
            by_name,
            edge_count: edge_count / 2,
        })
    }

    /// Graph on `0..n` labelled `V[i]`. Duplicate edges collapse.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, LatticeError> {
        let labels = (0..n).map(|i| vec![StructuralName::Vertex(i as u32)]).collect();
        Self::from_labelled_edges(labels, edges)
    }

    pub fn from_labelled_edges(
        labels: Vec<Vec<StructuralName>>,
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(LatticeError::UnknownVertex(u.max(v)));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut labels = labels;
        for l in &mut labels {
            l.sort();
        }
        Self::assemble(adjacency, labels)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn labels(&self, v: VertexId) -> &[StructuralName] {
        &self.labels[v]
    }

    pub fn vertex(&self, name: &StructuralName) -> Option<VertexId> {
        self.by_name.get(name).copied()
    }

    /// Every label with the vertex carrying it, in label order.
    pub fn names(&self) -> impl Iterator<Item = (&StructuralName, VertexId)> + '_ {
        self.by_name.iter().map(|(n, v)| (n, *v))
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for start in 0..self.vertex_count() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// A proper 2-colouring, or an edge closing an odd cycle.
    pub fn two_coloring(&self) -> Result<Vec<bool>, (VertexId, VertexId)> {
        let mut color: Vec<Option<bool>> = vec![None; self.vertex_count()];
        for start in 0..self.vertex_count() {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].expect("queued vertices are coloured");
                for &v in &self.adjacency[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return Err((u, v)),
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(color.into_iter().map(|c| c.unwrap_or(false)).collect())
    }

    /// Subgraph induced by the vertices whose labels all satisfy `keep`.
    pub fn induced_by_labels(&self, keep: impl Fn(&StructuralName) -> bool) -> Result<Graph, LatticeError> {
        let chosen: Vec<VertexId> = (0..self.vertex_count())
            .filter(|&v| self.labels[v].iter().all(&keep))
            .collect();
        let mut remap = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in chosen.iter().enumerate() {
            remap[old] = new;
        }
        let labels = chosen.iter().map(|&v| self.labels[v].clone()).collect();
        let edges: Vec<_> = self
            .edges()
            .filter(|&(u, v)| remap[u] != usize::MAX && remap[v] != usize::MAX)
            .map(|(u, v)| (remap[u], remap[v]))
            .collect();
        Graph::from_labelled_edges(labels, &edges)
    }
}
