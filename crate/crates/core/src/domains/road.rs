use std::path::Path as FsPath;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{distance, quantize, sample_pairs, Point};
use crate::error::{Error, Result};
use crate::graph::{MOGraph, VertexId};
use crate::vector::CostVector;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoadEdge {
    pub from: VertexId,
    pub to: VertexId,
    pub length: f64,
    pub paved: bool,
}

/// Directed road segments with optional vertex positions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoadNetwork {
    pub num_vertices: usize,
    pub positions: Option<Vec<Point>>,
    pub edges: Vec<RoadEdge>,
}

impl RoadNetwork {
    /// Edge costs `(length, 1)` for paved and `(length, 0)` for unpaved.
    pub fn to_graph(&self) -> Result<MOGraph> {
        let mut arcs = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            if !(e.length >= 0.0) || !e.length.is_finite() {
                return Err(Error::contract(format!("road edge {} -> {} has length {}", e.from, e.to, e.length)));
            }
            arcs.push((e.from, e.to, CostVector::new(vec![e.length, if e.paved { 1.0 } else { 0.0 }])?));
        }
        MOGraph::new(self.num_vertices, 2, arcs)
    }

    /// Renders the edge-list format read by [`parse_road_network`].
    pub fn to_edge_list(&self) -> String {
        let mut out = String::from("# u v length paved|unpaved\n");
        if let Some(pos) = &self.positions {
            for (i, p) in pos.iter().enumerate() {
                out.push_str(&format!("v {i} {:.6} {:.6}\n", p[0], p[1]));
            }
        }
        for e in &self.edges {
            let kind = if e.paved { "paved" } else { "unpaved" };
            out.push_str(&format!("{} {} {:.6} {kind}\n", e.from, e.to, e.length));
        }
        out
    }
}

/// Reads one directed edge `u v length paved|unpaved` per line. Lines
/// `v id x y` give optional positions; `#` starts a comment. The vertex count
/// is one more than the largest id mentioned.
pub fn parse_road_network(text: &str) -> Result<RoadNetwork> {
    let mut edges = Vec::new();
    let mut positions: Vec<Option<Point>> = Vec::new();
    let mut max_id: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |message: String| Error::Parse { line: line_no, message };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 4 {
            return Err(err(format!("expected 4 fields, found {}", tokens.len())));
        }
        let id = |t: &str| t.parse::<usize>().map_err(|_| err(format!("bad vertex id {t:?}")));
        let real = |t: &str| match t.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => Err(err(format!("bad number {t:?}"))),
        };
        if tokens[0] == "v" {
            let v = id(tokens[1])?;
            if positions.len() <= v {
                positions.resize(v + 1, None);
            }
            positions[v] = Some([real(tokens[2])?, real(tokens[3])?]);
            max_id = max_id.max(Some(v));
            continue;
        }
        let (from, to) = (id(tokens[0])?, id(tokens[1])?);
        let length = real(tokens[2])?;
        if length < 0.0 {
            return Err(Error::contract(format!("line {line_no}: negative length {length}")));
        }
        let paved = match tokens[3] {
            "paved" => true,
            "unpaved" => false,
            other => return Err(err(format!("unknown road type {other:?}"))),
        };
        max_id = max_id.max(Some(from.max(to)));
        edges.push(RoadEdge { from, to, length, paved });
    }
    let num_vertices = max_id.map_or(0, |m| m + 1);
    let positions = if positions.is_empty() {
        None
    } else {
        positions.resize(num_vertices, None);
        Some(
            positions
                .into_iter()
                .enumerate()
                .map(|(v, p)| p.ok_or_else(|| Error::contract(format!("vertex {v} has no position"))))
                .collect::<Result<Vec<_>>>()?,
        )
    };
    Ok(RoadNetwork { num_vertices, positions, edges })
}

pub fn load_road_network(path: impl AsRef<FsPath>) -> Result<RoadNetwork> {
    let text =
        std::fs::read_to_string(path.as_ref()).map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_road_network(&text)
}

/// Synthetic road grid: jittered lattice, 4-neighbour streets in both
/// directions. Every `arterial_every`-th row and column is paved; other
/// streets are paved with probability `paved_fraction`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoadSpec {
    pub rows: usize,
    pub cols: usize,
    pub spacing: f64,
    /// fraction of `spacing` by which each vertex may move
    pub jitter: f64,
    pub arterial_every: usize,
    pub paved_fraction: f64,
    pub num_pairs: usize,
    pub rng_seed: u64,
}

impl Default for RoadSpec {
    fn default() -> Self {
        RoadSpec {
            rows: 45,
            cols: 45,
            spacing: 100.0,
            jitter: 0.3,
            arterial_every: 8,
            paved_fraction: 0.3,
            num_pairs: 20,
            rng_seed: 0,
        }
    }
}

/// Returns the network and up to `num_pairs` start/goal pairs at least 0.6
/// of the grid diagonal apart.
pub fn generate_road_network(spec: &RoadSpec) -> Result<(RoadNetwork, Vec<(VertexId, VertexId)>)> {
    if spec.rows == 0 || spec.cols == 0 || spec.rows * spec.cols < 2 {
        return Err(Error::contract("road grid needs at least two vertices"));
    }
    if !(spec.spacing > 0.0) || !(0.0..0.5).contains(&spec.jitter) || !(0.0..=1.0).contains(&spec.paved_fraction) {
        return Err(Error::contract("invalid road grid spacing, jitter or paved fraction"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let id = |r: usize, c: usize| r * spec.cols + c;
    let mut positions = Vec::with_capacity(spec.rows * spec.cols);
    for r in 0..spec.rows {
        for c in 0..spec.cols {
            let j = spec.jitter * spec.spacing;
            let dx = if j > 0.0 { rng.gen_range(-j..=j) } else { 0.0 };
            let dy = if j > 0.0 { rng.gen_range(-j..=j) } else { 0.0 };
            positions.push([quantize(c as f64 * spec.spacing + dx), quantize(r as f64 * spec.spacing + dy)]);
        }
    }
    let arterial = |i: usize| spec.arterial_every > 0 && i.is_multiple_of(spec.arterial_every);
    let mut edges = Vec::new();
    let mut street = |a: VertexId, b: VertexId, main: bool, rng: &mut ChaCha8Rng| {
        let paved = main || rng.gen_bool(spec.paved_fraction);
        let length = quantize(distance(positions[a], positions[b]));
        edges.push(RoadEdge { from: a, to: b, length, paved });
        edges.push(RoadEdge { from: b, to: a, length, paved });
    };
    for r in 0..spec.rows {
        for c in 0..spec.cols {
            if c + 1 < spec.cols {
                street(id(r, c), id(r, c + 1), arterial(r), &mut rng);
            }
            if r + 1 < spec.rows {
                street(id(r, c), id(r + 1, c), arterial(c), &mut rng);
            }
        }
    }
    let net = RoadNetwork { num_vertices: positions.len(), positions: Some(positions), edges };
    let graph = net.to_graph()?;
    let pos = net.positions.as_deref().expect("generated networks have positions");
    let diag = distance([0.0, 0.0], [(spec.cols - 1) as f64 * spec.spacing, (spec.rows - 1) as f64 * spec.spacing]);
    let pairs = sample_pairs(&graph, pos, 0.6 * diag, spec.num_pairs, &mut rng)?;
    Ok((net, pairs))
}
