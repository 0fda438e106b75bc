//! Path-cost extension and objective-aggregation functions.
//!
//! A scheme bundles an extension function `ext: (hidden, edge) -> hidden` with
//! an aggregation function `agg: hidden -> solution`. Hidden vectors have
//! dimension `m`, edge costs `d` and solution vectors `k`.
//!
//! Built-in schemes, by registry name:
//!
//! | name               | edge cost layout                     | hidden (m)             | solution (k) |
//! |--------------------|--------------------------------------|------------------------|--------------|
//! | `trivial`          | any `d`                              | additive, `m = d`      | identity     |
//! | `max-risk-length`  | per-obstacle risks, then length      | max of risks, length   | (risk, length) |
//! | `coverage-length`  | per-POI 0/1 coverage, then length    | OR of coverage, length | (unseen, length) |
//! | `road[-xyz]`       | (length, type) with type 1 = paved   | permutation of L, C, M | (length, max unpaved run) |
//!
//! For `road-xyz`, `xyz` is a permutation of the letters `l` (total length),
//! `c` (current unpaved run) and `m` (longest unpaved run) giving the order of
//! the hidden components. Plain `road` is `road-lcm`.

use std::fmt;

use crate::error::{check_dim, Error, Result};
use crate::graph::{MOGraph, Path};
use crate::vector::{oriented_dominates, CostVector, Sense};

/// Names accepted by [`AggregationScheme::from_name`], excluding the
/// `road-xyz` orderings.
pub const SCHEME_NAMES: [&str; 4] = ["trivial", "max-risk-length", "coverage-length", "road"];

/// `g + c`, the ordinary additive path cost.
pub fn ext_trivial(g: &CostVector, c: &CostVector) -> Result<CostVector> {
    crate::vector::vec_add(g, c)
}

pub fn agg_identity(g: &CostVector) -> CostVector {
    g.clone()
}

/// Componentwise max on all but the last component, which is summed.
pub fn ext_max_plus(g: &CostVector, c: &CostVector) -> Result<CostVector> {
    check_dim(g.dim(), c.dim())?;
    let mut out = Vec::with_capacity(g.dim());
    max_plus_into(g.as_slice(), c.as_slice(), &mut out);
    Ok(CostVector::from_unchecked(out))
}

/// `(1 - Π(1 - g_i), g_m)` over the leading risk components.
pub fn agg_risk_product(g: &CostVector) -> Result<CostVector> {
    let (risks, _) = split_last(g)?;
    if let Some(r) = risks.iter().find(|r| !(0.0..=1.0).contains(*r)) {
        return Err(Error::contract(format!("risk component {r} outside [0, 1]")));
    }
    let mut out = Vec::with_capacity(2);
    risk_product_into(g.as_slice(), &mut out);
    Ok(CostVector::from_unchecked(out))
}

/// `((m - 1) - Σ g_i, g_m)`: number of POIs not yet sensed, and length.
pub fn agg_count_uncovered(g: &CostVector) -> Result<CostVector> {
    let (cover, _) = split_last(g)?;
    check_binary(cover)?;
    let mut out = Vec::with_capacity(2);
    count_uncovered_into(g.as_slice(), &mut out);
    Ok(CostVector::from_unchecked(out))
}

/// Road extension over canonical `(g_total, g_con, g_max)` and edge
/// `(length, type)` where type 0 is unpaved and 1 is paved.
pub fn ext_road(g: &CostVector, c: &CostVector) -> Result<CostVector> {
    check_dim(3, g.dim())?;
    check_dim(2, c.dim())?;
    check_road_type(c[1])?;
    let [total, con, max] = road_step([g[0], g[1], g[2]], c[0], c[1]);
    Ok(CostVector::from_unchecked(vec![total, con, max]))
}

/// Projects canonical `(g_total, g_con, g_max)` onto `(g_total, g_max)`.
pub fn agg_road(g: &CostVector) -> Result<CostVector> {
    check_dim(3, g.dim())?;
    Ok(CostVector::from_unchecked(vec![g[0], g[2]]))
}

fn split_last(g: &CostVector) -> Result<(&[f64], f64)> {
    let s = g.as_slice();
    match s.split_last() {
        Some((last, rest)) => Ok((rest, *last)),
        None => Err(Error::contract("empty hidden vector")),
    }
}

fn check_binary(values: &[f64]) -> Result<()> {
    match values.iter().find(|v| **v != 0.0 && **v != 1.0) {
        Some(v) => Err(Error::contract(format!("coverage component {v} is not binary"))),
        None => Ok(()),
    }
}

fn check_road_type(t: f64) -> Result<()> {
    if t == 0.0 || t == 1.0 {
        Ok(())
    } else {
        Err(Error::contract(format!("road type {t} is neither 0 (unpaved) nor 1 (paved)")))
    }
}

#[inline]
fn max_plus_into(g: &[f64], c: &[f64], out: &mut Vec<f64>) {
    let last = g.len() - 1;
    out.clear();
    out.extend(g[..last].iter().zip(&c[..last]).map(|(a, b)| a.max(*b)));
    out.push(g[last] + c[last]);
}

#[inline]
fn risk_product_into(g: &[f64], out: &mut Vec<f64>) {
    let last = g.len() - 1;
    // p + r - pr equals 1 - (1 - p)(1 - r) and is exact when all but one risk is 0
    let risk = g[..last].iter().fold(0.0, |p, r| p + r - p * r);
    out.clear();
    out.push(risk.clamp(0.0, 1.0));
    out.push(g[last]);
}

#[inline]
fn count_uncovered_into(g: &[f64], out: &mut Vec<f64>) {
    let last = g.len() - 1;
    let seen: f64 = g[..last].iter().sum();
    out.clear();
    out.push(last as f64 - seen);
    out.push(g[last]);
}

#[inline]
fn road_step([total, con, max]: [f64; 3], length: f64, kind: f64) -> [f64; 3] {
    if kind == 0.0 {
        let run = con + length;
        [total + length, run, run.max(max)]
    } else {
        [total + length, 0.0, max]
    }
}

/// One of the three hidden road objectives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RoadObjective {
    /// total length, `L`
    Length,
    /// length of the current unpaved run, `C`
    Consecutive,
    /// longest unpaved run so far, `M`
    MaxConsecutive,
}

impl RoadObjective {
    fn letter(self) -> char {
        match self {
            RoadObjective::Length => 'l',
            RoadObjective::Consecutive => 'c',
            RoadObjective::MaxConsecutive => 'm',
        }
    }

    fn canonical_index(self) -> usize {
        match self {
            RoadObjective::Length => 0,
            RoadObjective::Consecutive => 1,
            RoadObjective::MaxConsecutive => 2,
        }
    }
}

/// Order of the hidden road objectives inside the hidden vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RoadOrder([RoadObjective; 3]);

impl RoadOrder {
    pub const LCM: RoadOrder =
        RoadOrder([RoadObjective::Length, RoadObjective::Consecutive, RoadObjective::MaxConsecutive]);

    pub fn parse(code: &str) -> Result<Self> {
        let objs: Vec<RoadObjective> = code
            .chars()
            .map(|ch| match ch.to_ascii_lowercase() {
                'l' => Ok(RoadObjective::Length),
                'c' => Ok(RoadObjective::Consecutive),
                'm' => Ok(RoadObjective::MaxConsecutive),
                _ => Err(Error::UnknownScheme(format!("road-{code}"))),
            })
            .collect::<Result<_>>()?;
        let distinct = objs.len() == 3 && objs[0] != objs[1] && objs[0] != objs[2] && objs[1] != objs[2];
        if !distinct {
            return Err(Error::UnknownScheme(format!("road-{code}")));
        }
        Ok(RoadOrder([objs[0], objs[1], objs[2]]))
    }

    pub fn all() -> Vec<RoadOrder> {
        ["lcm", "lmc", "clm", "cml", "mlc", "mcl"].iter().map(|c| RoadOrder::parse(c).unwrap()).collect()
    }

    pub fn code(&self) -> String {
        self.0.iter().map(|o| o.letter()).collect()
    }

    pub fn objectives(&self) -> [RoadObjective; 3] {
        self.0
    }

    /// Position of `obj` in the hidden vector.
    pub fn index_of(&self, obj: RoadObjective) -> usize {
        self.0.iter().position(|o| *o == obj).expect("orders are permutations")
    }

    fn canonical(&self, g: &[f64]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (pos, obj) in self.0.iter().enumerate() {
            out[obj.canonical_index()] = g[pos];
        }
        out
    }

    fn write_layout(&self, canonical: [f64; 3], out: &mut Vec<f64>) {
        out.clear();
        out.extend(self.0.iter().map(|obj| canonical[obj.canonical_index()]));
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SchemeKind {
    Trivial,
    MaxRiskLength,
    CoverageLength,
    Road(RoadOrder),
}

/// An `(ext, agg)` pair together with its dimensions and monotonicity
/// metadata. Schemes are immutable and cheap to clone.
#[derive(Clone, Debug, PartialEq)]
pub struct AggregationScheme {
    kind: SchemeKind,
    d: usize,
    m: usize,
    k: usize,
    ext_monotone_mask: Vec<bool>,
    agg_monotone: bool,
    senses: Vec<Sense>,
}

impl AggregationScheme {
    pub fn trivial(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::contract("trivial scheme needs dim >= 1"));
        }
        Ok(AggregationScheme {
            kind: SchemeKind::Trivial,
            d: dim,
            m: dim,
            k: dim,
            ext_monotone_mask: vec![true; dim],
            agg_monotone: true,
            senses: vec![Sense::Min; dim],
        })
    }

    /// `m - 1` obstacle risks plus length. `m = 1` is plain shortest path
    /// with a constant zero risk objective.
    pub fn max_risk_length(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::contract("max-risk-length needs m >= 1"));
        }
        Ok(AggregationScheme {
            kind: SchemeKind::MaxRiskLength,
            d: m,
            m,
            k: 2,
            ext_monotone_mask: vec![true; m],
            agg_monotone: true,
            senses: vec![Sense::Min; m],
        })
    }

    /// `m - 1` binary POI indicators plus length.
    ///
    /// Sensing a POI can only help, so the indicators are `Max` objectives.
    /// With that orientation `agg_count_uncovered` is monotone.
    pub fn coverage_length(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::contract("coverage-length needs m >= 1"));
        }
        let mut senses = vec![Sense::Max; m];
        senses[m - 1] = Sense::Min;
        Ok(AggregationScheme {
            kind: SchemeKind::CoverageLength,
            d: m,
            m,
            k: 2,
            ext_monotone_mask: vec![true; m],
            agg_monotone: true,
            senses,
        })
    }

    pub fn road(order: RoadOrder) -> Self {
        let mut mask = vec![true; 3];
        mask[order.index_of(RoadObjective::Consecutive)] = false;
        AggregationScheme {
            kind: SchemeKind::Road(order),
            d: 2,
            m: 3,
            k: 2,
            ext_monotone_mask: mask,
            agg_monotone: true,
            senses: vec![Sense::Min; 3],
        }
    }

    /// Looks a scheme up in the registry. `d` is the edge-cost dimension of
    /// the graph it will run on.
    pub fn from_name(name: &str, d: usize) -> Result<Self> {
        match name {
            "trivial" => Self::trivial(d),
            "max-risk-length" => Self::max_risk_length(d),
            "coverage-length" => Self::coverage_length(d),
            "road" => {
                check_dim(2, d)?;
                Ok(Self::road(RoadOrder::LCM))
            }
            other => match other.strip_prefix("road-") {
                Some(code) => {
                    check_dim(2, d)?;
                    Ok(Self::road(RoadOrder::parse(code)?))
                }
                None => Err(Error::UnknownScheme(other.to_string())),
            },
        }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            SchemeKind::Trivial => "trivial".into(),
            SchemeKind::MaxRiskLength => "max-risk-length".into(),
            SchemeKind::CoverageLength => "coverage-length".into(),
            SchemeKind::Road(order) if *order == RoadOrder::LCM => "road".into(),
            SchemeKind::Road(order) => format!("road-{}", order.code()),
        }
    }

    pub fn kind(&self) -> &SchemeKind {
        &self.kind
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ext_monotone_mask(&self) -> &[bool] {
        &self.ext_monotone_mask
    }

    pub fn agg_monotone(&self) -> bool {
        self.agg_monotone
    }

    /// Improvement direction of each hidden component.
    pub fn senses(&self) -> &[Sense] {
        &self.senses
    }

    pub fn has_max_components(&self) -> bool {
        self.senses.contains(&Sense::Max)
    }

    /// Dominance between hidden vectors, honoring [`Self::senses`].
    pub fn hidden_dominates(&self, p: &CostVector, q: &CostVector) -> Result<bool> {
        check_dim(self.m, p.dim())?;
        check_dim(self.m, q.dim())?;
        Ok(oriented_dominates(p.as_slice(), q.as_slice(), &self.senses))
    }

    pub fn validate_edge_cost(&self, c: &[f64]) -> Result<()> {
        check_dim(self.d, c.len())?;
        match self.kind {
            SchemeKind::Trivial => Ok(()),
            SchemeKind::MaxRiskLength => match c[..self.d - 1].iter().find(|r| !(0.0..=1.0).contains(*r)) {
                Some(r) => Err(Error::contract(format!("edge risk {r} outside [0, 1]"))),
                None => Ok(()),
            },
            SchemeKind::CoverageLength => check_binary(&c[..self.d - 1]),
            SchemeKind::Road(_) => check_road_type(c[1]),
        }
    }

    /// Checks that every edge of `graph` has a cost this scheme understands.
    pub fn validate_graph(&self, graph: &MOGraph) -> Result<()> {
        check_dim(self.d, graph.d())?;
        for e in graph.edges() {
            self.validate_edge_cost(e.cost)?;
        }
        Ok(())
    }

    fn validate_hidden(&self, g: &[f64]) -> Result<()> {
        check_dim(self.m, g.len())?;
        match self.kind {
            SchemeKind::MaxRiskLength => match g[..self.m - 1].iter().find(|r| !(0.0..=1.0).contains(*r)) {
                Some(r) => Err(Error::contract(format!("risk component {r} outside [0, 1]"))),
                None => Ok(()),
            },
            SchemeKind::CoverageLength => check_binary(&g[..self.m - 1]),
            _ => Ok(()),
        }
    }

    pub fn ext(&self, g: &CostVector, c: &CostVector) -> Result<CostVector> {
        check_dim(self.m, g.dim())?;
        self.validate_edge_cost(c.as_slice())?;
        let mut out = Vec::with_capacity(self.m);
        self.ext_into(g.as_slice(), c.as_slice(), &mut out);
        Ok(CostVector::from_unchecked(out))
    }

    pub fn agg(&self, g: &CostVector) -> Result<CostVector> {
        self.validate_hidden(g.as_slice())?;
        let mut out = Vec::with_capacity(self.k);
        self.agg_into(g.as_slice(), &mut out);
        Ok(CostVector::from_unchecked(out))
    }

    /// Unchecked `ext`; callers have validated dimensions and edge costs.
    #[inline]
    pub(crate) fn ext_into(&self, g: &[f64], c: &[f64], out: &mut Vec<f64>) {
        match self.kind {
            SchemeKind::Trivial => {
                out.clear();
                out.extend(g.iter().zip(c).map(|(a, b)| a + b));
            }
            SchemeKind::MaxRiskLength | SchemeKind::CoverageLength => max_plus_into(g, c, out),
            SchemeKind::Road(order) => {
                let next = road_step(order.canonical(g), c[0], c[1]);
                order.write_layout(next, out);
            }
        }
    }

    /// Unchecked `agg`.
    #[inline]
    pub(crate) fn agg_into(&self, g: &[f64], out: &mut Vec<f64>) {
        match self.kind {
            SchemeKind::Trivial => {
                out.clear();
                out.extend_from_slice(g);
            }
            SchemeKind::MaxRiskLength => risk_product_into(g, out),
            SchemeKind::CoverageLength => count_uncovered_into(g, out),
            SchemeKind::Road(order) => {
                out.clear();
                out.push(g[order.index_of(RoadObjective::Length)]);
                out.push(g[order.index_of(RoadObjective::MaxConsecutive)]);
            }
        }
    }

    /// Combines a hidden g-vector with a heuristic estimate into the f-vector.
    /// `Min` components add; `Max` components (binary indicators) take the max.
    #[inline]
    pub(crate) fn estimate_into(&self, g: &[f64], h: &[f64], out: &mut Vec<f64>) {
        out.clear();
        out.extend(g.iter().zip(h).zip(&self.senses).map(|((a, b), s)| match s {
            Sense::Min => a + b,
            Sense::Max => a.max(*b),
        }));
    }

    /// Best value a `Max` component can ever reach.
    pub(crate) fn max_component_bound(&self) -> f64 {
        1.0
    }

    /// Additive hidden components that copy an edge component, as
    /// `(hidden index, edge index)`. These are the "length-like" objectives a
    /// graph-distance heuristic can bound.
    pub fn additive_components(&self) -> Vec<(usize, usize)> {
        match self.kind {
            SchemeKind::Trivial => (0..self.m).map(|i| (i, i)).collect(),
            SchemeKind::MaxRiskLength | SchemeKind::CoverageLength => vec![(self.m - 1, self.d - 1)],
            SchemeKind::Road(order) => vec![(order.index_of(RoadObjective::Length), 0)],
        }
    }
}

impl fmt::Display for AggregationScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (d={}, m={}, k={})", self.name(), self.d, self.m, self.k)
    }
}

/// Hidden cost of a path: `ext` folded over its edges from the zero vector.
pub fn path_cost(path: &Path, graph: &MOGraph, scheme: &AggregationScheme) -> Result<CostVector> {
    check_dim(scheme.d(), graph.d())?;
    let mut g = vec![0.0; scheme.m()];
    let mut next = Vec::with_capacity(scheme.m());
    for w in path.vertices().windows(2) {
        let c = graph.edge_cost(w[0], w[1])?;
        scheme.validate_edge_cost(c)?;
        scheme.ext_into(&g, c, &mut next);
        std::mem::swap(&mut g, &mut next);
    }
    graph.check_vertex(path.first())?;
    Ok(CostVector::from_unchecked(g))
}

/// `agg(path_cost(path))`.
pub fn solution_cost(path: &Path, graph: &MOGraph, scheme: &AggregationScheme) -> Result<CostVector> {
    scheme.agg(&path_cost(path, graph, scheme)?)
}
