//! Directed graphs with vector-valued edge costs.

use crate::error::{check_dim, Error, Result};
use crate::vector::CostVector;

pub type VertexId = usize;

/// Directed graph whose edges carry `d`-dimensional costs.
///
/// Outgoing edges are stored contiguously and sorted by target, so neighbor
/// iteration is always in ascending vertex order.
#[derive(Clone, Debug, PartialEq)]
pub struct MOGraph {
    num_vertices: usize,
    d: usize,
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
    costs: Vec<f64>,
}

/// An outgoing edge, borrowed from the graph.
#[derive(Clone, Copy, Debug)]
pub struct EdgeRef<'a> {
    pub source: VertexId,
    pub target: VertexId,
    pub cost: &'a [f64],
}

impl MOGraph {
    /// Builds a graph from `(source, target, cost)` triples.
    ///
    /// Parallel edges are rejected because a path is a vertex sequence and
    /// must name its edges unambiguously.
    pub fn new(num_vertices: usize, d: usize, edges: Vec<(VertexId, VertexId, CostVector)>) -> Result<Self> {
        if num_vertices == 0 {
            return Err(Error::contract("graph needs at least one vertex"));
        }
        if d == 0 {
            return Err(Error::contract("edge cost dimension must be positive"));
        }
        let mut edges = edges;
        for (u, v, c) in &edges {
            for x in [*u, *v] {
                if x >= num_vertices {
                    return Err(Error::InvalidVertex { vertex: x, num_vertices });
                }
            }
            check_dim(d, c.dim())?;
            if !c.is_finite() {
                return Err(Error::contract(format!("edge {u} -> {v} has a non-finite cost")));
            }
        }
        edges.sort_by_key(|(u, v, _)| (*u, *v));
        if let Some(w) = edges.windows(2).find(|w| w[0].0 == w[1].0 && w[0].1 == w[1].1) {
            return Err(Error::contract(format!("parallel edge {} -> {}", w[0].0, w[0].1)));
        }

        let mut offsets = vec![0; num_vertices + 1];
        for (u, _, _) in &edges {
            offsets[u + 1] += 1;
        }
        for i in 0..num_vertices {
            offsets[i + 1] += offsets[i];
        }
        let mut targets = Vec::with_capacity(edges.len());
        let mut costs = Vec::with_capacity(edges.len() * d);
        for (_, v, c) in edges {
            targets.push(v);
            costs.extend_from_slice(c.as_slice());
        }
        Ok(MOGraph { num_vertices, d, offsets, targets, costs })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.targets.len()
    }

    /// Edge-cost dimension.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.num_vertices {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, num_vertices: self.num_vertices })
        }
    }

    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeRef<'_>> + '_ {
        let range = self.offsets[v]..self.offsets[v + 1];
        range.map(move |i| EdgeRef {
            source: v,
            target: self.targets[i],
            cost: &self.costs[i * self.d..(i + 1) * self.d],
        })
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeRef<'_>> + '_ {
        (0..self.num_vertices).flat_map(move |v| self.out_edges(v))
    }

    pub fn edge_cost(&self, from: VertexId, to: VertexId) -> Result<&[f64]> {
        self.check_vertex(from)?;
        self.check_vertex(to)?;
        let lo = self.offsets[from];
        let hi = self.offsets[from + 1];
        match self.targets[lo..hi].binary_search(&to) {
            Ok(i) => {
                let i = lo + i;
                Ok(&self.costs[i * self.d..(i + 1) * self.d])
            }
            Err(_) => Err(Error::MissingEdge { from, to }),
        }
    }

    /// The same graph with every edge reversed; costs are kept.
    pub fn reversed(&self) -> MOGraph {
        let edges = self.edges().map(|e| (e.target, e.source, CostVector::from_unchecked(e.cost.to_vec()))).collect();
        MOGraph::new(self.num_vertices, self.d, edges).expect("reversing a valid graph")
    }
}

/// A nonempty vertex sequence whose consecutive pairs are graph edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path(Vec<VertexId>);

impl Path {
    pub fn new(graph: &MOGraph, vertices: Vec<VertexId>) -> Result<Self> {
        let Some(&first) = vertices.first() else {
            return Err(Error::contract("a path has at least one vertex"));
        };
        graph.check_vertex(first)?;
        for w in vertices.windows(2) {
            graph.edge_cost(w[0], w[1])?;
        }
        Ok(Path(vertices))
    }

    pub(crate) fn from_unchecked(vertices: Vec<VertexId>) -> Self {
        debug_assert!(!vertices.is_empty());
        Path(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn first(&self) -> VertexId {
        self.0[0]
    }

    pub fn last(&self) -> VertexId {
        *self.0.last().expect("paths are nonempty")
    }

    pub fn num_edges(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = self.0.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}
