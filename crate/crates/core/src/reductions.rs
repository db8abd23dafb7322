//! Instance maps between the vertex and edge relabeling problems.
//!
//! * vertex → edge: hang a pendant edge `{v, v'}` off every vertex and let
//!   it carry `v`'s label; original edges carry fixed labels `n..n+m` that
//!   agree in source and target. One vertex flip is replayed by three edge
//!   flips, and the bound becomes `3t`.
//! * edge → vertex: the line graph with the same labels and the same bound;
//!   edge flips and line-graph vertex flips coincide.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{InstanceFile, Kind};
use crate::labeling::{
    EdgeFlip, EdgeFlipSequence, EdgeLabeling, VertexFlip, VertexFlipSequence, VertexLabeling,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexInstance {
    pub graph: Graph,
    pub from: VertexLabeling,
    pub to: VertexLabeling,
    pub t: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeInstance {
    pub graph: Graph,
    pub from: EdgeLabeling,
    pub to: EdgeLabeling,
    pub t: usize,
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::SizeMismatch { expected, actual })
    }
}

impl VertexInstance {
    pub fn new(graph: Graph, from: VertexLabeling, to: VertexLabeling, t: usize) -> Result<Self> {
        graph.require_connected()?;
        check_len(graph.n(), from.len())?;
        check_len(graph.n(), to.len())?;
        Ok(VertexInstance { graph, from, to, t })
    }

    pub fn from_file(f: &InstanceFile) -> Result<Self> {
        if f.kind != Kind::Vertex {
            return Err(Error::InvalidArgument("expected a vertex instance".into()));
        }
        Self::new(
            f.graph.clone(),
            f.from.vertex()?,
            f.to.vertex()?,
            f.bound()?,
        )
    }

    pub fn to_file(&self) -> InstanceFile {
        InstanceFile {
            kind: Kind::Vertex,
            graph: self.graph.clone(),
            from: (&self.from).into(),
            to: (&self.to).into(),
            t: Some(self.t),
            privileged: None,
        }
    }
}

impl EdgeInstance {
    pub fn new(graph: Graph, from: EdgeLabeling, to: EdgeLabeling, t: usize) -> Result<Self> {
        graph.require_connected()?;
        check_len(graph.m(), from.len())?;
        check_len(graph.m(), to.len())?;
        Ok(EdgeInstance { graph, from, to, t })
    }

    pub fn from_file(f: &InstanceFile) -> Result<Self> {
        if f.kind != Kind::Edge {
            return Err(Error::InvalidArgument("expected an edge instance".into()));
        }
        Self::new(f.graph.clone(), f.from.edge()?, f.to.edge()?, f.bound()?)
    }

    pub fn to_file(&self) -> InstanceFile {
        InstanceFile {
            kind: Kind::Edge,
            graph: self.graph.clone(),
            from: (&self.from).into(),
            to: (&self.to).into(),
            t: Some(self.t),
            privileged: None,
        }
    }
}

/// Graph with a pendant edge `{v, n + v}` added for every vertex `v`. The
/// original edges keep indices `0..m`; the pendant at `v` is edge `m + v`.
pub fn pendant_graph(g: &Graph) -> Graph {
    let n = g.n();
    Graph::new(
        2 * n,
        g.edges().iter().copied().chain((0..n).map(|v| (v, n + v))),
    )
    .expect("pendant extension of a simple graph is simple")
}

fn pendant_labels(g: &Graph, l: &VertexLabeling) -> EdgeLabeling {
    let n = g.n();
    let labels = (0..g.m())
        .map(|e| n + e)
        .chain((0..n).map(|v| l.label(v)))
        .collect();
    EdgeLabeling::new(labels).expect("pendant labels 0..n, original edges n..n+m")
}

pub fn vertex_to_edge(inst: &VertexInstance) -> EdgeInstance {
    let g = &inst.graph;
    EdgeInstance {
        graph: pendant_graph(g),
        from: pendant_labels(g, &inst.from),
        to: pendant_labels(g, &inst.to),
        t: 3 * inst.t,
    }
}

/// The three edge flips that replay the vertex flip `{k, l}` on
/// [`pendant_graph`]: pendant(k) ↔ {k,l}, {k,l} ↔ pendant(l),
/// {k,l} ↔ pendant(k).
pub fn simulate_vertex_flip(g: &Graph, f: VertexFlip) -> Result<[EdgeFlip; 3]> {
    let (k, l) = f.ends();
    let e = g.edge_index(k, l).ok_or(Error::NotAnEdge { u: k, v: l })?;
    let (pk, pl) = (g.m() + k, g.m() + l);
    Ok([EdgeFlip(pk, e), EdgeFlip(e, pl), EdgeFlip(e, pk)])
}

/// Compiles a vertex flip sequence into an edge flip sequence of exactly
/// three times the length.
pub fn compile_vertex_sequence(g: &Graph, seq: &VertexFlipSequence) -> Result<EdgeFlipSequence> {
    let mut out = EdgeFlipSequence::default();
    for (index, &f) in seq.flips.iter().enumerate() {
        let triple = simulate_vertex_flip(g, f).map_err(|e| Error::InvalidFlip {
            index,
            reason: e.to_string(),
        })?;
        out.flips.extend(triple);
    }
    Ok(out)
}

pub fn edge_to_vertex(inst: &EdgeInstance) -> VertexInstance {
    VertexInstance {
        graph: inst.graph.line_graph(),
        from: VertexLabeling::from_permutation(inst.from.as_permutation().clone()),
        to: VertexLabeling::from_permutation(inst.to.as_permutation().clone()),
        t: inst.t,
    }
}

/// Edge flips read as vertex flips on the line graph.
pub fn edge_sequence_as_vertex(seq: &EdgeFlipSequence) -> VertexFlipSequence {
    seq.iter().map(|f| VertexFlip(f.0, f.1)).collect()
}

/// Line-graph vertex flips read back as edge flips.
pub fn vertex_sequence_as_edge(seq: &VertexFlipSequence) -> EdgeFlipSequence {
    seq.iter().map(|f| EdgeFlip(f.0, f.1)).collect()
}
