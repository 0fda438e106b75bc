use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{distance, edge_obstacle_risk, quantize, radius_edges, sample_pairs, Bounds, Point, UncertainObstacle};
use crate::error::{Error, Result};
use crate::graph::{MOGraph, VertexId};
use crate::vector::CostVector;

/// Probabilistic roadmap: sampled points and the undirected pairs joined.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Roadmap {
    pub points: Vec<Point>,
    pub edges: Vec<(VertexId, VertexId)>,
    pub bounds: Bounds,
}

impl Roadmap {
    pub fn new(points: Vec<Point>, edges: Vec<(VertexId, VertexId)>, bounds: Bounds) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| !bounds.contains(**p)) {
            return Err(Error::contract(format!("roadmap point {p:?} outside bounds")));
        }
        for &(u, v) in &edges {
            let bad = u.max(v);
            if bad >= points.len() {
                return Err(Error::InvalidVertex { vertex: bad, num_vertices: points.len() });
            }
        }
        Ok(Roadmap { points, edges, bounds })
    }
}

/// Parameters of an obstacle-uncertainty roadmap instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OuSpec {
    pub bounds: Bounds,
    pub num_obstacles: usize,
    pub num_shadows: usize,
    pub shadow_step: f64,
    pub sigma: f64,
    /// nominal half-extents are drawn uniformly from this range
    pub half_extent_range: (f64, f64),
    pub prm_samples: usize,
    pub prm_radius: f64,
    /// sampling resolution for edge risk; `None` means `shadow_step / 2`
    pub resolution: Option<f64>,
    pub num_pairs: usize,
    pub rng_seed: u64,
}

impl Default for OuSpec {
    fn default() -> Self {
        OuSpec {
            bounds: Bounds { min: [0.0, 0.0], max: [10.0, 10.0] },
            num_obstacles: 8,
            num_shadows: super::DEFAULT_NUM_SHADOWS,
            shadow_step: 0.05,
            sigma: 0.5,
            half_extent_range: (0.3, 0.8),
            prm_samples: 800,
            prm_radius: 0.7,
            resolution: None,
            num_pairs: 20,
            rng_seed: 0,
        }
    }
}

impl OuSpec {
    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.half_extent_range;
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(Error::contract("half_extent_range must satisfy 0 < lo <= hi"));
        }
        if !(self.prm_radius > 0.0) || self.prm_samples < 2 {
            return Err(Error::contract("need at least two PRM samples and a positive radius"));
        }
        if self.resolution.is_some_and(|r| !(r > 0.0)) {
            return Err(Error::contract("resolution must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct OuInstance {
    pub roadmap: Roadmap,
    pub obstacles: Vec<UncertainObstacle>,
    /// `d = num_obstacles + 1`: one risk per obstacle, then length
    pub graph: MOGraph,
    pub candidates: Vec<(VertexId, VertexId)>,
}

/// Builds a roadmap among uncertain obstacles for the `max-risk-length`
/// scheme. Candidate pairs are at least 0.6 of the world diagonal apart.
pub fn generate_ou_instance(spec: &OuSpec) -> Result<OuInstance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let mut obstacles = Vec::with_capacity(spec.num_obstacles);
    for _ in 0..spec.num_obstacles {
        let center = spec.bounds.sample(&mut rng);
        let (lo, hi) = spec.half_extent_range;
        let half = [quantize(rng.gen_range(lo..=hi)), quantize(rng.gen_range(lo..=hi))];
        obstacles.push(UncertainObstacle::new(center, half, spec.sigma, spec.num_shadows, spec.shadow_step)?);
    }
    let points: Vec<Point> = (0..spec.prm_samples).map(|_| spec.bounds.sample(&mut rng)).collect();
    let pairs = radius_edges(&points, spec.prm_radius);
    let resolution = spec.resolution.unwrap_or(spec.shadow_step / 2.0);

    let mut arcs = Vec::with_capacity(2 * pairs.len());
    for &(u, v) in &pairs {
        let (a, b) = (points[u], points[v]);
        let mut cost = Vec::with_capacity(spec.num_obstacles + 1);
        for o in &obstacles {
            cost.push(edge_obstacle_risk(a, b, o, resolution)?);
        }
        cost.push(quantize(distance(a, b)));
        let cost = CostVector::new(cost)?;
        arcs.push((u, v, cost.clone()));
        arcs.push((v, u, cost));
    }
    let graph = MOGraph::new(points.len(), spec.num_obstacles + 1, arcs)?;
    let candidates = sample_pairs(&graph, &points, 0.6 * spec.bounds.diagonal(), spec.num_pairs, &mut rng)?;
    let roadmap = Roadmap::new(points, pairs, spec.bounds)?;
    Ok(OuInstance { roadmap, obstacles, graph, candidates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aggregation::AggregationScheme;

    fn small(seed: u64, obstacles: usize) -> OuSpec {
        OuSpec {
            num_obstacles: obstacles,
            prm_samples: 150,
            prm_radius: 1.6,
            num_pairs: 5,
            rng_seed: seed,
            ..OuSpec::default()
        }
    }

    #[test]
    fn dimensions_follow_obstacle_count() {
        let inst = generate_ou_instance(&small(3, 12)).unwrap();
        assert_eq!(inst.graph.d(), 13);
        AggregationScheme::max_risk_length(13).unwrap().validate_graph(&inst.graph).unwrap();
        let none = generate_ou_instance(&small(3, 0)).unwrap();
        assert_eq!(none.graph.d(), 1);
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate_ou_instance(&small(11, 4)).unwrap();
        let b = generate_ou_instance(&small(11, 4)).unwrap();
        assert_eq!(a.roadmap, b.roadmap);
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.candidates, b.candidates);
        let c = generate_ou_instance(&small(12, 4)).unwrap();
        assert_ne!(a.roadmap, c.roadmap);
    }

    #[test]
    fn edge_costs_are_risks_and_lengths() {
        let inst = generate_ou_instance(&small(5, 3)).unwrap();
        assert!(inst.graph.num_edges() > 0);
        for e in inst.graph.edges() {
            for r in &e.cost[..3] {
                assert!((0.0..=1.0).contains(r));
            }
            let len = distance(inst.roadmap.points[e.source], inst.roadmap.points[e.target]);
            assert!((e.cost[3] - len).abs() <= 5e-7);
            assert!(inst.roadmap.bounds.contains(inst.roadmap.points[e.source]));
        }
        let diag = inst.roadmap.bounds.diagonal();
        for &(s, g) in &inst.candidates {
            assert!(distance(inst.roadmap.points[s], inst.roadmap.points[g]) >= 0.6 * diag);
        }
    }

    #[test]
    fn disconnected_roadmap_has_no_candidates() {
        let spec = OuSpec { prm_samples: 20, prm_radius: 1e-3, ..small(1, 1) };
        assert!(matches!(generate_ou_instance(&spec), Err(Error::NoCandidatePair)));
    }
}
