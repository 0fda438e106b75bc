//! Instance generators for the three application domains.
//!
//! Every generator is deterministic in its seed and quantizes all emitted
//! reals to 6 decimals so instance files round-trip exactly.

mod inspection;
mod ou;
mod road;
mod shadows;

pub use inspection::{generate_inspection_instance, InspectionInstance, InspectionSpec};
pub use ou::{generate_ou_instance, OuInstance, OuSpec, Roadmap};
pub use road::{generate_road_network, load_road_network, parse_road_network, RoadEdge, RoadNetwork, RoadSpec};
pub use shadows::{edge_obstacle_risk, point_obstacle_risk, shadow_risk, UncertainObstacle, DEFAULT_NUM_SHADOWS};

use std::collections::VecDeque;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{MOGraph, VertexId};

pub type Point = [f64; 2];

/// Rounds to 6 decimals.
pub fn quantize(x: f64) -> f64 {
    let q = (x * 1e6).round() / 1e6;
    // avoid emitting -0.000000
    if q == 0.0 {
        0.0
    } else {
        q
    }
}

pub fn distance(a: Point, b: Point) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Axis-aligned world rectangle.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Bounds {
    pub min: Point,
    pub max: Point,
}

impl Bounds {
    pub fn new(min: Point, max: Point) -> Result<Self> {
        if !(min[0] < max[0] && min[1] < max[1]) || min.iter().chain(&max).any(|v| !v.is_finite()) {
            return Err(Error::contract("bounds must be a finite non-empty rectangle"));
        }
        Ok(Bounds { min, max })
    }

    pub fn square(side: f64) -> Result<Self> {
        Self::new([0.0, 0.0], [side, side])
    }

    pub fn diagonal(&self) -> f64 {
        distance(self.min, self.max)
    }

    pub fn contains(&self, p: Point) -> bool {
        (self.min[0]..=self.max[0]).contains(&p[0]) && (self.min[1]..=self.max[1]).contains(&p[1])
    }

    pub(crate) fn sample(&self, rng: &mut ChaCha8Rng) -> Point {
        [quantize(rng.gen_range(self.min[0]..=self.max[0])), quantize(rng.gen_range(self.min[1]..=self.max[1]))]
    }
}

fn reachable_from(graph: &MOGraph, start: VertexId) -> Vec<bool> {
    let mut seen = vec![false; graph.num_vertices()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(v) = queue.pop_front() {
        for e in graph.out_edges(v) {
            if !seen[e.target] {
                seen[e.target] = true;
                queue.push_back(e.target);
            }
        }
    }
    seen
}

/// Draws up to `count` distinct start/goal pairs at least `min_distance`
/// apart with the goal reachable from the start.
pub(crate) fn sample_pairs(
    graph: &MOGraph,
    positions: &[Point],
    min_distance: f64,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(VertexId, VertexId)>> {
    let n = graph.num_vertices();
    if n < 2 || count == 0 {
        return Err(Error::NoCandidatePair);
    }
    let mut pairs = Vec::new();
    let mut reach_cache: Vec<Option<Vec<bool>>> = vec![None; n];
    for _ in 0..count * 200 {
        if pairs.len() == count {
            break;
        }
        let s = rng.gen_range(0..n);
        let g = rng.gen_range(0..n);
        if s == g || distance(positions[s], positions[g]) < min_distance || pairs.contains(&(s, g)) {
            continue;
        }
        let reach = reach_cache[s].get_or_insert_with(|| reachable_from(graph, s));
        if reach[g] {
            pairs.push((s, g));
        }
    }
    if pairs.is_empty() {
        return Err(Error::NoCandidatePair);
    }
    Ok(pairs)
}

/// Unordered index pairs `(i, j)`, `i < j`, of points within `radius`.
pub(crate) fn radius_edges(points: &[Point], radius: f64) -> Vec<(VertexId, VertexId)> {
    let mut edges = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if distance(points[i], points[j]) <= radius {
                edges.push((i, j));
            }
        }
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantize_rounds_to_six_decimals() {
        assert_eq!(quantize(0.1234565001), 0.123457);
        assert_eq!(quantize(-1e-9), 0.0);
        assert_eq!(format!("{:.6}", quantize(-1e-9)), "0.000000");
    }

    #[test]
    fn bounds_diagonal() {
        assert_eq!(Bounds::square(3.0).unwrap().diagonal(), 18f64.sqrt());
        assert!(Bounds::new([1.0, 0.0], [0.0, 1.0]).is_err());
    }
}
