//! JSON file formats for graphs, embeddings and component indices.
//!
//! ```text
//! graph:     {"vertices":[{"id":0,"labels":["L[0].1","L[1].4"]},...],"edges":[[0,1],...]}
//! embedding: {"points":[[id,x,y],...]}
//! index:     {"params":{"w":9,"h":6},"n":1,"m":1,"entries":[{"role":"L[0].1","vertex":3},...]}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{Embedding, Graph, LatticeError, LatticePoint, StructuralName};
use crate::reduction::{ComponentIndex, GadgetGraph, ReductionParams};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("vertex ids must be 0..n in order; found {found} at position {position}")]
    VertexOrder { position: usize, found: usize },
    #[error("vertex id {0} is negative")]
    NegativeId(i64),
    #[error("vertex {0} appears twice")]
    DuplicateVertex(usize),
}

#[derive(Serialize, Deserialize)]
struct VertexEntry {
    id: usize,
    #[serde(default)]
    labels: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    vertices: Vec<VertexEntry>,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct EmbeddingFile {
    points: Vec<[i64; 3]>,
}

#[derive(Serialize, Deserialize)]
struct ParamsEntry {
    w: i64,
    h: i64,
}

#[derive(Serialize, Deserialize)]
struct RoleEntry {
    role: String,
    vertex: usize,
}

#[derive(Serialize, Deserialize)]
struct IndexFile {
    params: ParamsEntry,
    n: usize,
    m: usize,
    entries: Vec<RoleEntry>,
}

/// Header data stored alongside a component index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexHeader {
    pub params: ReductionParams,
    pub n: usize,
    pub m: usize,
}

pub fn graph_to_json(g: &Graph) -> String {
    let file = GraphFile {
        vertices: (0..g.vertex_count())
            .map(|v| VertexEntry {
                id: v,
                labels: g.labels(v).iter().map(ToString::to_string).collect(),
            })
            .collect(),
        edges: g.edges().map(|(u, v)| [u, v]).collect(),
    };
    serde_json::to_string(&file).expect("graph serialization cannot fail")
}

/// Unlabelled vertices get the plain label `V[id]`.
pub fn graph_from_json(text: &str) -> Result<Graph, IoError> {
    let file: GraphFile = serde_json::from_str(text)?;
    let mut labels = Vec::with_capacity(file.vertices.len());
    for (position, entry) in file.vertices.iter().enumerate() {
        if entry.id != position {
            return Err(IoError::VertexOrder { position, found: entry.id });
        }
        let mut names = entry
            .labels
            .iter()
            .map(|s| s.parse::<StructuralName>())
            .collect::<Result<Vec<_>, _>>()?;
        if names.is_empty() {
            names.push(StructuralName::Vertex(entry.id as u32));
        }
        labels.push(names);
    }
    let edges: Vec<_> = file.edges.iter().map(|&[u, v]| (u, v)).collect();
    Ok(Graph::from_labelled_edges(labels, &edges)?)
}

pub fn embedding_to_json(e: &Embedding) -> String {
    let file = EmbeddingFile {
        points: e.iter().map(|(v, p)| [v as i64, p.x, p.y]).collect(),
    };
    serde_json::to_string(&file).expect("embedding serialization cannot fail")
}

pub fn embedding_from_json(text: &str) -> Result<Embedding, IoError> {
    let file: EmbeddingFile = serde_json::from_str(text)?;
    let mut e = Embedding::new();
    for [id, x, y] in file.points {
        if id < 0 {
            return Err(IoError::NegativeId(id));
        }
        if e.insert(id as usize, LatticePoint::new(x, y)).is_some() {
            return Err(IoError::DuplicateVertex(id as usize));
        }
    }
    Ok(e)
}

pub fn index_to_json(g: &GadgetGraph) -> String {
    let file = IndexFile {
        params: ParamsEntry { w: g.params.w, h: g.params.h },
        n: g.n,
        m: g.m,
        entries: g
            .index
            .roles()
            .map(|(name, vertex)| RoleEntry { role: name.to_string(), vertex })
            .collect(),
    };
    serde_json::to_string(&file).expect("index serialization cannot fail")
}

pub fn index_from_json(text: &str) -> Result<(IndexHeader, ComponentIndex), IoError> {
    let file: IndexFile = serde_json::from_str(text)?;
    let mut roles = BTreeMap::new();
    for entry in file.entries {
        roles.insert(entry.role.parse::<StructuralName>()?, entry.vertex);
    }
    let header = IndexHeader {
        params: ReductionParams { w: file.params.w, h: file.params.h },
        n: file.n,
        m: file.m,
    };
    Ok((header, ComponentIndex::from_roles(roles)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Formula;
    use crate::reduction::{default_params, reduce};

    #[test]
    fn graph_round_trip() {
        let f = Formula::from_dimacs(1, &[[1, 1, 1]]).unwrap();
        let g = reduce(&f, default_params(&f)).unwrap();
        let text = graph_to_json(&g.graph);
        assert_eq!(graph_from_json(&text).unwrap(), g.graph);
        assert!(text.starts_with(r#"{"vertices":[{"id":0,"labels":["L[0].1","L[1].4"]}"#));
    }

    #[test]
    fn plain_graph_gets_default_labels() {
        let g = graph_from_json(r#"{"vertices":[{"id":0},{"id":1,"labels":[]}],"edges":[[0,1]]}"#).unwrap();
        assert_eq!(g.vertex(&StructuralName::Vertex(1)), Some(1));
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(matches!(graph_from_json("{"), Err(IoError::Json(_))));
        assert!(matches!(
            graph_from_json(r#"{"vertices":[{"id":1}],"edges":[]}"#),
            Err(IoError::VertexOrder { position: 0, found: 1 })
        ));
        assert!(graph_from_json(r#"{"vertices":[{"id":0}],"edges":[[0,3]]}"#).is_err());
        assert!(graph_from_json(r#"{"vertices":[{"id":0,"labels":["Q"]}],"edges":[]}"#).is_err());
    }

    #[test]
    fn embedding_round_trip() {
        let e: Embedding = [(0, LatticePoint::new(-1, 2)), (3, LatticePoint::new(4, 0))]
            .into_iter()
            .collect();
        let text = embedding_to_json(&e);
        assert_eq!(text, r#"{"points":[[0,-1,2],[3,4,0]]}"#);
        assert_eq!(embedding_from_json(&text).unwrap(), e);
        assert!(embedding_from_json(r#"{"points":[[1,0,0],[1,2,2]]}"#).is_err());
        assert!(embedding_from_json(r#"{"points":[[-1,0,0]]}"#).is_err());
    }

    #[test]
    fn index_round_trip() {
        let f = Formula::from_dimacs(2, &[[1, -2, 2]]).unwrap();
        let g = reduce(&f, default_params(&f)).unwrap();
        let (header, index) = index_from_json(&index_to_json(&g)).unwrap();
        assert_eq!(header, IndexHeader { params: g.params, n: 2, m: 1 });
        assert_eq!(index, g.index);
    }
}
