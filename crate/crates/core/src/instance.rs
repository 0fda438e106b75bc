//! On-disk instance format.
//!
//! An instance file is one JSON object with fields in this order:
//!
//! | field          | meaning                                              |
//! |----------------|------------------------------------------------------|
//! | `format`       | always `"mosagg-instance/1"`                         |
//! | `id`           | free-form instance name                              |
//! | `domain`       | `ou`, `road`, `inspection` or `generic`              |
//! | `scheme`       | registry name of the aggregation scheme              |
//! | `d`, `m`, `k`  | edge, hidden and solution dimensions                 |
//! | `seed`         | generator seed, or `null`                            |
//! | `num_vertices` | vertex count                                         |
//! | `positions`    | `[[x, y], ...]` per vertex, or `null`                |
//! | `edges`        | `[[u, v, [c_1, ..., c_d]], ...]`, directed           |
//! | `candidates`   | `[[start, goal], ...]`                               |
//!
//! Reals are written with exactly 6 decimals. Generators quantize to that
//! precision, so writing and re-reading is lossless and files are
//! byte-reproducible. A file that does not start with `{` is read as a road
//! edge list instead.

use std::io::{self, Write};
use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::aggregation::AggregationScheme;
use crate::domains::{parse_road_network, InspectionInstance, OuInstance, Point, RoadNetwork};
use crate::error::{check_dim, Error, Result};
use crate::graph::{MOGraph, VertexId};
use crate::vector::CostVector;

pub const FORMAT_TAG: &str = "mosagg-instance/1";

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub id: String,
    pub domain: String,
    pub scheme: String,
    pub seed: Option<u64>,
    pub graph: MOGraph,
    pub positions: Option<Vec<Point>>,
    pub candidates: Vec<(VertexId, VertexId)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    format: String,
    id: String,
    domain: String,
    scheme: String,
    d: usize,
    m: usize,
    k: usize,
    seed: Option<u64>,
    num_vertices: usize,
    positions: Option<Vec<Point>>,
    edges: Vec<(VertexId, VertexId, CostVector)>,
    candidates: Vec<(VertexId, VertexId)>,
}

/// Pretty JSON with every float printed to 6 decimals.
struct SixDecimals(PrettyFormatter<'static>);

impl Formatter for SixDecimals {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.6}")
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

impl Instance {
    /// Checks that the graph fits the named scheme.
    pub fn new(
        id: impl Into<String>,
        domain: impl Into<String>,
        scheme: impl Into<String>,
        seed: Option<u64>,
        graph: MOGraph,
        positions: Option<Vec<Point>>,
        candidates: Vec<(VertexId, VertexId)>,
    ) -> Result<Self> {
        let inst = Instance {
            id: id.into(),
            domain: domain.into(),
            scheme: scheme.into(),
            seed,
            graph,
            positions,
            candidates,
        };
        inst.validate()?;
        Ok(inst)
    }

    fn validate(&self) -> Result<()> {
        self.scheme()?.validate_graph(&self.graph)?;
        if let Some(p) = &self.positions {
            check_dim(self.graph.num_vertices(), p.len())?;
        }
        for &(s, g) in &self.candidates {
            self.graph.check_vertex(s)?;
            self.graph.check_vertex(g)?;
        }
        Ok(())
    }

    pub fn scheme(&self) -> Result<AggregationScheme> {
        AggregationScheme::from_name(&self.scheme, self.graph.d())
    }

    pub fn from_ou(id: impl Into<String>, ou: &OuInstance, seed: u64) -> Result<Self> {
        Self::new(
            id,
            "ou",
            "max-risk-length",
            Some(seed),
            ou.graph.clone(),
            Some(ou.roadmap.points.clone()),
            ou.candidates.clone(),
        )
    }

    pub fn from_road(
        id: impl Into<String>,
        net: &RoadNetwork,
        candidates: Vec<(VertexId, VertexId)>,
        seed: Option<u64>,
    ) -> Result<Self> {
        Self::new(id, "road", "road", seed, net.to_graph()?, net.positions.clone(), candidates)
    }

    pub fn from_inspection(id: impl Into<String>, inst: &InspectionInstance, seed: u64) -> Result<Self> {
        Self::new(
            id,
            "inspection",
            "coverage-length",
            Some(seed),
            inst.to_graph()?,
            Some(inst.points.clone()),
            inst.candidates.clone(),
        )
    }

    pub fn to_json(&self) -> Result<String> {
        let scheme = self.scheme()?;
        let file = InstanceFile {
            format: FORMAT_TAG.to_string(),
            id: self.id.clone(),
            domain: self.domain.clone(),
            scheme: self.scheme.clone(),
            d: scheme.d(),
            m: scheme.m(),
            k: scheme.k(),
            seed: self.seed,
            num_vertices: self.graph.num_vertices(),
            positions: self.positions.clone(),
            edges: self
                .graph
                .edges()
                .map(|e| (e.source, e.target, CostVector::from_unchecked(e.cost.to_vec())))
                .collect(),
            candidates: self.candidates.clone(),
        };
        let mut buf = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut buf, SixDecimals(PrettyFormatter::with_indent(b" ")));
        file.serialize(&mut ser).map_err(|e| Error::Io(e.to_string()))?;
        buf.push(b'\n');
        Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile =
            serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
        if file.format != FORMAT_TAG {
            return Err(Error::Parse { line: 1, message: format!("unknown format {:?}", file.format) });
        }
        let graph = MOGraph::new(file.num_vertices, file.d, file.edges)?;
        let inst = Instance::new(file.id, file.domain, file.scheme, file.seed, graph, file.positions, file.candidates)?;
        let scheme = inst.scheme()?;
        check_dim(scheme.m(), file.m)?;
        check_dim(scheme.k(), file.k)?;
        Ok(inst)
    }

    /// Reads a JSON instance, or a road edge list when the text does not
    /// start with `{`. Edge lists get the file stem as id and no candidates.
    pub fn load(path: impl AsRef<FsPath>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        if text.trim_start().starts_with('{') {
            Self::from_json(&text)
        } else {
            let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Self::from_road(id, &parse_road_network(&text)?, Vec::new(), None)
        }
    }

    pub fn save(&self, path: impl AsRef<FsPath>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()?).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{generate_ou_instance, OuSpec};

    fn tiny() -> Instance {
        let edges = vec![
            (0, 1, CostVector::new(vec![0.158655, 1.5]).unwrap()),
            (1, 2, CostVector::new(vec![0.0, 2.25]).unwrap()),
        ];
        let g = MOGraph::new(3, 2, edges).unwrap();
        Instance::new("tiny", "generic", "max-risk-length", Some(3), g, None, vec![(0, 2)]).unwrap()
    }

    #[test]
    fn json_round_trip() {
        let inst = tiny();
        let text = inst.to_json().unwrap();
        assert!(text.contains("0.158655"));
        assert!(text.contains("2.250000"));
        assert_eq!(Instance::from_json(&text).unwrap(), inst);
        assert_eq!(Instance::from_json(&text).unwrap().to_json().unwrap(), text);
    }

    #[test]
    fn generated_instances_round_trip_exactly() {
        let spec = OuSpec {
            num_obstacles: 3,
            prm_samples: 60,
            prm_radius: 2.5,
            num_pairs: 3,
            rng_seed: 4,
            ..OuSpec::default()
        };
        let inst = Instance::from_ou("ou-4", &generate_ou_instance(&spec).unwrap(), 4).unwrap();
        let text = inst.to_json().unwrap();
        assert_eq!(Instance::from_json(&text).unwrap(), inst);
    }

    #[test]
    fn rejects_mismatches() {
        let text = tiny().to_json().unwrap();
        let wrong_scheme = text.replace("\"max-risk-length\"", "\"coverage-length\"");
        assert!(Instance::from_json(&wrong_scheme).is_err());
        let wrong_k = text.replace("\"k\": 2", "\"k\": 3");
        assert!(matches!(Instance::from_json(&wrong_k), Err(Error::DimensionMismatch { .. })));
        let bad_format = text.replace(FORMAT_TAG, "other/1");
        assert!(matches!(Instance::from_json(&bad_format), Err(Error::Parse { .. })));
        assert!(matches!(Instance::from_json("{"), Err(Error::Parse { .. })));
    }

    #[test]
    fn loads_road_edge_lists() {
        let dir = std::env::temp_dir().join(format!("mosagg-instance-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("town.txt");
        std::fs::write(&path, "0 1 3.5 paved\n1 0 3.5 paved\n").unwrap();
        let inst = Instance::load(&path).unwrap();
        assert_eq!(inst.id, "town");
        assert_eq!(inst.scheme, "road");
        assert_eq!(inst.graph.edge_cost(0, 1).unwrap(), &[3.5, 1.0]);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
