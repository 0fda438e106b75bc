use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{distance, quantize, radius_edges, sample_pairs, Bounds, Point};
use crate::error::{Error, Result};
use crate::graph::{MOGraph, VertexId};
use crate::vector::CostVector;

/// Parameters of a toy inspection-planning instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InspectionSpec {
    pub num_vertices: usize,
    /// points of interest, at most 64
    pub q: usize,
    /// probability that a given edge senses a given POI
    pub coverage_density: f64,
    pub radius: f64,
    pub num_pairs: usize,
    pub rng_seed: u64,
}

impl Default for InspectionSpec {
    fn default() -> Self {
        InspectionSpec { num_vertices: 60, q: 4, coverage_density: 0.1, radius: 0.3, num_pairs: 10, rng_seed: 0 }
    }
}

/// Undirected base roadmap in the unit square plus, per undirected edge, the
/// set of POIs sensed while traversing it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InspectionInstance {
    pub q: usize,
    pub points: Vec<Point>,
    pub edges: Vec<(VertexId, VertexId)>,
    /// bit `i` set iff the edge senses POI `i`
    pub coverage: Vec<u64>,
    pub candidates: Vec<(VertexId, VertexId)>,
}

impl InspectionInstance {
    /// `d = q + 1`: one 0/1 indicator per POI, then length.
    pub fn to_graph(&self) -> Result<MOGraph> {
        if self.q > 64 || self.coverage.len() != self.edges.len() {
            return Err(Error::contract("coverage masks do not match edges or q > 64"));
        }
        if self.q < 64 && self.coverage.iter().any(|m| m >> self.q != 0) {
            return Err(Error::contract(format!("coverage mask wider than q = {}", self.q)));
        }
        let mut arcs = Vec::with_capacity(2 * self.edges.len());
        for (&(u, v), &mask) in self.edges.iter().zip(&self.coverage) {
            let mut cost: Vec<f64> = (0..self.q).map(|i| ((mask >> i) & 1) as f64).collect();
            cost.push(quantize(distance(self.points[u], self.points[v])));
            let cost = CostVector::new(cost)?;
            arcs.push((u, v, cost.clone()));
            arcs.push((v, u, cost));
        }
        MOGraph::new(self.points.len(), self.q + 1, arcs)
    }
}

/// Random geometric graph in the unit square; every (edge, POI) pair is
/// sensed independently with probability `coverage_density`.
pub fn generate_inspection_instance(spec: &InspectionSpec) -> Result<(InspectionInstance, MOGraph)> {
    if spec.q > 64 {
        return Err(Error::contract("at most 64 POIs are supported"));
    }
    if !(0.0..=1.0).contains(&spec.coverage_density) || !(spec.radius > 0.0) {
        return Err(Error::contract("coverage density must lie in [0, 1] and radius be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let bounds = Bounds::square(1.0)?;
    let points: Vec<Point> = (0..spec.num_vertices).map(|_| bounds.sample(&mut rng)).collect();
    let edges = radius_edges(&points, spec.radius);
    let coverage: Vec<u64> = edges
        .iter()
        .map(|_| (0..spec.q).fold(0u64, |m, i| if rng.gen_bool(spec.coverage_density) { m | 1 << i } else { m }))
        .collect();
    let mut inst = InspectionInstance { q: spec.q, points, edges, coverage, candidates: Vec::new() };
    let graph = inst.to_graph()?;
    inst.candidates = sample_pairs(&graph, &inst.points, 0.6 * bounds.diagonal(), spec.num_pairs, &mut rng)?;
    Ok((inst, graph))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aggregation::{path_cost, solution_cost, AggregationScheme};
    use crate::graph::Path;
    use proptest::prelude::*;

    #[test]
    fn zero_pois_is_single_objective() {
        let spec = InspectionSpec { q: 0, ..InspectionSpec::default() };
        let (inst, g) = generate_inspection_instance(&spec).unwrap();
        assert_eq!(g.d(), 1);
        assert!(inst.coverage.iter().all(|m| *m == 0));
    }

    #[test]
    fn covering_edge_clears_uncovered_count() {
        let inst = InspectionInstance {
            q: 3,
            points: vec![[0.0, 0.0], [1.0, 0.0]],
            edges: vec![(0, 1)],
            coverage: vec![0b111],
            candidates: vec![(0, 1)],
        };
        let g = inst.to_graph().unwrap();
        let s = AggregationScheme::coverage_length(4).unwrap();
        let p = Path::new(&g, vec![0, 1]).unwrap();
        assert_eq!(solution_cost(&p, &g, &s).unwrap().as_slice(), &[0.0, 1.0]);
        let bad = InspectionInstance { coverage: vec![0b1000], ..inst };
        assert!(bad.to_graph().is_err());
    }

    #[test]
    fn seeded_generation_is_deterministic() {
        let spec = InspectionSpec { rng_seed: 42, ..InspectionSpec::default() };
        let (a, ga) = generate_inspection_instance(&spec).unwrap();
        let (b, gb) = generate_inspection_instance(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(ga, gb);
        assert!(a.coverage.iter().all(|m| m >> 4 == 0));
    }

    proptest! {
        #[test]
        fn coverage_accumulates_as_union(seed in 0u64..500, steps in prop::collection::vec(0usize..8, 1..12)) {
            let spec = InspectionSpec { num_vertices: 25, q: 6, coverage_density: 0.3, radius: 0.5, num_pairs: 1, rng_seed: seed };
            let Ok((inst, g)) = generate_inspection_instance(&spec) else { return Ok(()) };
            let s = AggregationScheme::coverage_length(7).unwrap();
            // random walk from vertex 0 choosing the `step`-th out-edge
            let mut walk = vec![0usize];
            for k in steps {
                let v = *walk.last().unwrap();
                let out: Vec<usize> = g.out_edges(v).map(|e| e.target).collect();
                if out.is_empty() { break; }
                walk.push(out[k % out.len()]);
            }
            let mut union = 0u64;
            for w in walk.windows(2) {
                let i = inst.edges.iter().position(|&(a, b)| (a, b) == (w[0], w[1]) || (b, a) == (w[0], w[1])).unwrap();
                union |= inst.coverage[i];
            }
            let cost = path_cost(&Path::new(&g, walk).unwrap(), &g, &s).unwrap();
            for i in 0..6 {
                prop_assert_eq!(cost[i], ((union >> i) & 1) as f64);
            }
        }
    }
}
