use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::aggregation::AggregationScheme;
use crate::error::{check_dim, Result};
use crate::graph::{MOGraph, VertexId};
use crate::vector::{CostVector, Sense};

/// Per-vertex estimate of the hidden cost still to come.
///
/// `Min` components must never exceed the true remaining cost; `Max`
/// components must never fall below what the best completion can reach.
#[derive(Clone, Debug, PartialEq)]
pub struct Heuristic {
    m: usize,
    values: Vec<f64>,
}

impl Heuristic {
    pub fn from_values(m: usize, values: Vec<CostVector>) -> Result<Self> {
        let mut flat = Vec::with_capacity(values.len() * m);
        for v in &values {
            check_dim(m, v.dim())?;
            flat.extend_from_slice(v.as_slice());
        }
        Ok(Heuristic { m, values: flat })
    }

    /// The estimate that knows nothing: zero for `Min` components and the
    /// best reachable value for `Max` components. For schemes without `Max`
    /// components this is the all-zero heuristic. The goal always gets zero.
    pub fn uninformed(graph: &MOGraph, goal: VertexId, scheme: &AggregationScheme) -> Self {
        let row: Vec<f64> = scheme
            .senses()
            .iter()
            .map(|s| match s {
                Sense::Min => 0.0,
                Sense::Max => scheme.max_component_bound(),
            })
            .collect();
        let m = scheme.m();
        let mut values = row.repeat(graph.num_vertices());
        values[goal * m..(goal + 1) * m].fill(0.0);
        Heuristic { m, values }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_vertices(&self) -> usize {
        self.values.len() / self.m
    }

    #[inline]
    pub fn get(&self, v: VertexId) -> &[f64] {
        &self.values[v * self.m..(v + 1) * self.m]
    }

    pub fn value(&self, v: VertexId) -> CostVector {
        CostVector::from_unchecked(self.get(v).to_vec())
    }
}

#[derive(PartialEq)]
struct Dist(f64);

impl Eq for Dist {}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Single-objective distances to `goal` using edge component `edge_index`.
fn distances_to(reversed: &MOGraph, goal: VertexId, edge_index: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; reversed.num_vertices()];
    let mut heap = BinaryHeap::new();
    dist[goal] = 0.0;
    heap.push(Reverse((Dist(0.0), goal)));
    while let Some(Reverse((Dist(d), v))) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        for e in reversed.out_edges(v) {
            let nd = d + e.cost[edge_index];
            if nd < dist[e.target] {
                dist[e.target] = nd;
                heap.push(Reverse((Dist(nd), e.target)));
            }
        }
    }
    dist
}

fn can_reach(reversed: &MOGraph, goal: VertexId) -> Vec<bool> {
    let mut seen = vec![false; reversed.num_vertices()];
    let mut queue = VecDeque::from([goal]);
    seen[goal] = true;
    while let Some(v) = queue.pop_front() {
        for e in reversed.out_edges(v) {
            if !seen[e.target] {
                seen[e.target] = true;
                queue.push_back(e.target);
            }
        }
    }
    seen
}

/// For each vertex, which `Max` components some continuation to `goal` can
/// switch on. The goal itself ends the search, so nothing is reachable from it.
fn reachable_indicators(graph: &MOGraph, reversed: &MOGraph, goal: VertexId, idx: &[usize]) -> Vec<Vec<bool>> {
    let n = graph.num_vertices();
    let reach = can_reach(reversed, goal);
    let mut cover = vec![vec![false; idx.len()]; n];
    let mut queued = vec![true; n];
    let mut work: VecDeque<VertexId> = (0..n).collect();
    while let Some(v) = work.pop_front() {
        queued[v] = false;
        if v == goal {
            continue;
        }
        let mut next = cover[v].clone();
        for e in graph.out_edges(v).filter(|e| reach[e.target]) {
            for (slot, &i) in idx.iter().enumerate() {
                if e.cost[i] > 0.0 || (e.target != goal && cover[e.target][slot]) {
                    next[slot] = true;
                }
            }
        }
        if next != cover[v] {
            cover[v] = next;
            for e in reversed.out_edges(v) {
                if !queued[e.target] {
                    queued[e.target] = true;
                    work.push_back(e.target);
                }
            }
        }
    }
    cover
}

/// Graph-distance heuristic: every additive (length-like) hidden component
/// gets its single-objective shortest distance to `goal`; other `Min`
/// components get 0; `Max` indicators are switched on where a continuation to
/// the goal can still switch them on. Vertices that cannot reach the goal get
/// `+inf` in their additive components.
pub fn graph_distance_heuristic(graph: &MOGraph, goal: VertexId, scheme: &AggregationScheme) -> Result<Heuristic> {
    graph.check_vertex(goal)?;
    check_dim(scheme.d(), graph.d())?;
    let n = graph.num_vertices();
    let m = scheme.m();
    let reversed = graph.reversed();
    let mut values = vec![0.0; n * m];

    for (hidden, edge) in scheme.additive_components() {
        let dist = distances_to(&reversed, goal, edge);
        for (v, d) in dist.into_iter().enumerate() {
            values[v * m + hidden] = d;
        }
    }

    let max_idx: Vec<usize> = (0..m).filter(|i| scheme.senses()[*i] == Sense::Max).collect();
    if !max_idx.is_empty() {
        let cover = reachable_indicators(graph, &reversed, goal, &max_idx);
        for (v, flags) in cover.iter().enumerate() {
            for (slot, &i) in max_idx.iter().enumerate() {
                values[v * m + i] = if flags[slot] { scheme.max_component_bound() } else { 0.0 };
            }
        }
    }
    Ok(Heuristic { m, values })
}
