//! Best-first multi-objective search over hidden objectives.
//!
//! Two modes share one engine:
//!
//! * [`SearchMode::Baseline`] orders Open and prunes solutions in the hidden
//!   `m`-dimensional space, then aggregates the hidden frontier at the end.
//! * [`SearchMode::ObjAgg`] orders Open and prunes solutions on `agg(f)` in
//!   the `k`-dimensional solution space.
//!
//! Path dominance is identical in both modes and always exact: a node is
//! dropped when an expanded node at the same vertex has a hidden g-vector
//! that dominates it. Approximation only enters through solution dominance.

mod heuristic;
mod open;

use std::time::{Duration, Instant};

pub use heuristic::{graph_distance_heuristic, Heuristic};
pub use open::{get_best_node, NodeArena, NodeId, OpenList, SearchNode};

use crate::aggregation::AggregationScheme;
use crate::error::{check_dim, Error, Result};
use crate::graph::{MOGraph, Path, VertexId};
use crate::vector::{oriented_eps_dominates, pareto_filter, ApproxFactor, CostVector, ParetoFrontier, Sense};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchMode {
    /// Search in hidden space, aggregate afterwards.
    Baseline,
    /// Order and prune on aggregated costs.
    ObjAgg,
}

impl SearchMode {
    pub fn name(self) -> &'static str {
        match self {
            SearchMode::Baseline => "baseline",
            SearchMode::ObjAgg => "objagg",
        }
    }

    /// Dimension of the space where solution dominance is tested.
    pub fn compared_dim(self, scheme: &AggregationScheme) -> usize {
        match self {
            SearchMode::Baseline => scheme.m(),
            SearchMode::ObjAgg => scheme.k(),
        }
    }
}

impl std::str::FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "baseline" => Ok(SearchMode::Baseline),
            "objagg" => Ok(SearchMode::ObjAgg),
            other => Err(Error::contract(format!("unknown search mode `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub mode: SearchMode,
    /// Dimension `m` for baseline, `k` for aggregation mode.
    pub eps: ApproxFactor,
    /// Wall-clock limit, checked once per popped node.
    pub timeout: Option<Duration>,
    /// Stop before expanding more than this many nodes. Unlike `timeout`
    /// this gives the same result on every machine.
    pub max_expansions: Option<u64>,
}

impl SearchConfig {
    pub fn exact(mode: SearchMode, scheme: &AggregationScheme) -> Self {
        SearchConfig { mode, eps: ApproxFactor::exact(mode.compared_dim(scheme)), timeout: None, max_expansions: None }
    }

    /// Same `eps` on every compared dimension.
    pub fn uniform(mode: SearchMode, scheme: &AggregationScheme, eps: f64) -> Result<Self> {
        let eps = ApproxFactor::uniform(eps, mode.compared_dim(scheme))?;
        Ok(SearchConfig { mode, eps, timeout: None, max_expansions: None })
    }

    pub fn with_timeout(mut self, timeout: Option<Duration>) -> Self {
        self.timeout = timeout;
        self
    }

    pub fn with_max_expansions(mut self, max_expansions: Option<u64>) -> Self {
        self.max_expansions = max_expansions;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SearchStats {
    /// Nodes whose successors were generated.
    pub expansions: u64,
    /// Children computed, the root included, whether or not they entered Open.
    pub generations: u64,
    /// Nodes inserted into Sols.
    pub sols_found: u64,
    pub runtime_s: f64,
    pub peak_open: u64,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    /// Solution-space frontier, cost vectors of dimension `k`.
    pub frontier: ParetoFrontier<Path>,
    /// Every node that entered Sols, with its hidden cost, in insertion order.
    pub hidden_solutions: Vec<(CostVector, Path)>,
    pub stats: SearchStats,
    /// The time or expansion limit was hit; `frontier` holds only what was
    /// found so far and `stats` are lower bounds.
    pub timed_out: bool,
}

/// Solution dominance rule: who may prune whom, and with what slack.
#[derive(Clone, Debug)]
pub struct DominanceRule {
    eps: Vec<f64>,
    senses: Vec<Sense>,
}

impl DominanceRule {
    pub fn new(mode: SearchMode, scheme: &AggregationScheme, eps: &ApproxFactor) -> Result<Self> {
        check_dim(mode.compared_dim(scheme), eps.dim())?;
        let senses = match mode {
            SearchMode::Baseline => scheme.senses().to_vec(),
            SearchMode::ObjAgg => vec![Sense::Min; scheme.k()],
        };
        Ok(DominanceRule { eps: eps.as_slice().to_vec(), senses })
    }

    pub fn senses(&self) -> &[Sense] {
        &self.senses
    }

    #[inline]
    fn dominates(&self, p: &[f64], q: &[f64]) -> bool {
        oriented_eps_dominates(p, q, &self.eps, &self.senses)
    }
}

/// Expanded nodes grouped by vertex. Each vertex keeps only nodes whose
/// g-vectors are mutually non-dominated, sorted by oriented component sum.
/// A dominator never has a larger sum (floating-point addition is monotone),
/// so a dominance query only scans the prefix up to its own sum.
///
/// Vectors are stored with `Max` components negated, which turns every
/// dominance test into a plain componentwise `<=`.
#[derive(Clone, Debug)]
pub struct ClosedSet {
    m: usize,
    buckets: Vec<ClosedBucket>,
}

#[derive(Clone, Debug, Default)]
struct ClosedBucket {
    ids: Vec<NodeId>,
    scores: Vec<f64>,
    g: Vec<f64>,
}

#[inline]
fn orient_into(g: &[f64], senses: &[Sense], out: &mut [f64]) -> f64 {
    let mut sum = 0.0;
    for ((o, x), s) in out.iter_mut().zip(g).zip(senses) {
        *o = match s {
            Sense::Min => *x,
            Sense::Max => -x,
        };
        sum += *o;
    }
    sum
}

#[inline]
fn leq_all(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).fold(true, |acc, (x, y)| acc & (x <= y))
}

impl ClosedSet {
    pub fn new(num_vertices: usize, m: usize) -> Self {
        ClosedSet { m, buckets: vec![ClosedBucket::default(); num_vertices] }
    }

    /// Adds `id`, dropping entries at the same vertex that it dominates.
    pub fn insert(&mut self, arena: &NodeArena, id: NodeId, senses: &[Sense]) {
        let m = self.m;
        let mut g = vec![0.0; m];
        let score = orient_into(arena.g(id), senses, &mut g);
        let b = &mut self.buckets[arena.vertex(id)];
        // anything `g` dominates has a sum >= score
        let from = b.scores.partition_point(|s| *s < score);
        let mut keep = from;
        for i in from..b.ids.len() {
            if !leq_all(&g, &b.g[i * m..(i + 1) * m]) {
                if keep != i {
                    b.ids[keep] = b.ids[i];
                    b.scores[keep] = b.scores[i];
                    b.g.copy_within(i * m..(i + 1) * m, keep * m);
                }
                keep += 1;
            }
        }
        b.ids.truncate(keep);
        b.scores.truncate(keep);
        b.g.truncate(keep * m);
        let at = b.scores.partition_point(|s| *s <= score);
        b.ids.insert(at, id);
        b.scores.insert(at, score);
        b.g.splice(at * m..at * m, g);
    }

    pub fn at(&self, v: VertexId) -> &[NodeId] {
        &self.buckets[v].ids
    }

    /// `scratch` must have length `m`.
    #[inline]
    fn dominates(&self, v: VertexId, g: &[f64], senses: &[Sense], scratch: &mut [f64]) -> bool {
        let b = &self.buckets[v];
        if b.ids.is_empty() {
            return false;
        }
        let score = orient_into(g, senses, scratch);
        let end = b.scores.partition_point(|s| *s <= score);
        b.g[..end * self.m].chunks_exact(self.m).any(|c| leq_all(c, scratch))
    }
}

/// True iff some solution's key dominates the key of `n` under `rule`.
/// In baseline mode keys are hidden f-vectors, otherwise `agg(f)`.
pub fn is_dominated_sol(arena: &NodeArena, n: NodeId, sols: &[NodeId], rule: &DominanceRule) -> bool {
    key_dominated(arena, arena.key(n), sols, rule)
}

#[inline]
fn key_dominated(arena: &NodeArena, key: &[f64], sols: &[NodeId], rule: &DominanceRule) -> bool {
    sols.iter().any(|&s| rule.dominates(arena.key(s), key))
}

/// True iff an expanded node at the same vertex has a hidden g-vector that
/// dominates the g-vector of `n`. Exact in both modes.
pub fn is_dominated_path(arena: &NodeArena, n: NodeId, closed: &ClosedSet, senses: &[Sense]) -> bool {
    let mut scratch = vec![0.0; arena.g(n).len()];
    closed.dominates(arena.vertex(n), arena.g(n), senses, &mut scratch)
}

/// Hidden cost of extending `g_parent` by an edge with cost `c`.
pub fn compute_cost(g_parent: &CostVector, c: &CostVector, scheme: &AggregationScheme) -> Result<CostVector> {
    scheme.ext(g_parent, c)
}

/// Best-first multi-objective A* from `start` to `goal`.
///
/// An unreachable goal yields an empty frontier. Nodes whose estimate is
/// infinite can never reach the goal and are dropped when popped.
pub fn mos_astar(
    graph: &MOGraph,
    start: VertexId,
    goal: VertexId,
    scheme: &AggregationScheme,
    heuristic: &Heuristic,
    config: &SearchConfig,
) -> Result<SearchResult> {
    let started = Instant::now();
    graph.check_vertex(start)?;
    graph.check_vertex(goal)?;
    scheme.validate_graph(graph)?;
    check_dim(scheme.m(), heuristic.m())?;
    check_dim(graph.num_vertices(), heuristic.num_vertices())?;
    if heuristic.get(goal).iter().any(|h| *h != 0.0) {
        return Err(Error::contract("heuristic must be zero at the goal"));
    }
    let rule = DominanceRule::new(config.mode, scheme, &config.eps)?;
    let senses = scheme.senses();
    let m = scheme.m();
    let key_dim = config.mode.compared_dim(scheme);
    let open_senses = match config.mode {
        SearchMode::Baseline => senses.to_vec(),
        SearchMode::ObjAgg => vec![Sense::Min; key_dim],
    };

    let mut arena = NodeArena::new(m, key_dim);
    let mut open = OpenList::new(open_senses);
    let mut closed = ClosedSet::new(graph.num_vertices(), m);
    let mut sols: Vec<NodeId> = Vec::new();
    let mut stats = SearchStats::default();
    let mut timed_out = false;

    let mut g_buf = Vec::with_capacity(m);
    let mut scratch = vec![0.0; m];
    let mut f_buf = Vec::with_capacity(m);
    let mut key_buf = Vec::with_capacity(key_dim);
    let make_key = |g: &[f64], v: VertexId, f: &mut Vec<f64>, key: &mut Vec<f64>| {
        scheme.estimate_into(g, heuristic.get(v), f);
        match config.mode {
            SearchMode::Baseline => {
                key.clear();
                key.extend_from_slice(f);
            }
            SearchMode::ObjAgg => scheme.agg_into(f, key),
        }
    };

    let zero = vec![0.0; m];
    make_key(&zero, start, &mut f_buf, &mut key_buf);
    let root = arena.push(start, None, &zero, &key_buf);
    open.push(&arena, root);
    stats.generations = 1;
    stats.peak_open = 1;

    while let Some(n) = open.pop(&arena) {
        if config.timeout.is_some_and(|limit| started.elapsed() >= limit) {
            timed_out = true;
            break;
        }
        if arena.key(n).iter().any(|x| !x.is_finite()) {
            continue;
        }
        if is_dominated_sol(&arena, n, &sols, &rule)
            || closed.dominates(arena.vertex(n), arena.g(n), senses, &mut scratch)
        {
            continue;
        }
        let v = arena.vertex(n);
        if v == goal {
            sols.push(n);
            stats.sols_found += 1;
            continue;
        }
        // Goal pops are not expansions, so a cap of n still admits goals reached by n expansions.
        if config.max_expansions.is_some_and(|cap| stats.expansions >= cap) {
            timed_out = true;
            break;
        }
        stats.expansions += 1;
        for e in graph.out_edges(v) {
            scheme.ext_into(arena.g(n), e.cost, &mut g_buf);
            make_key(&g_buf, e.target, &mut f_buf, &mut key_buf);
            stats.generations += 1;
            // Closed and Sols only grow, so a child failing these tests now
            // would be discarded when popped; dropping it early leaves the
            // expansion order unchanged.
            if key_buf.iter().any(|x| !x.is_finite())
                || key_dominated(&arena, &key_buf, &sols, &rule)
                || closed.dominates(e.target, &g_buf, senses, &mut scratch)
            {
                continue;
            }
            let child = arena.push(e.target, Some(n), &g_buf, &key_buf);
            open.push(&arena, child);
        }
        stats.peak_open = stats.peak_open.max(open.len() as u64);
        closed.insert(&arena, n, senses);
    }

    let mut hidden_solutions = Vec::with_capacity(sols.len());
    let mut candidates = Vec::with_capacity(sols.len());
    for &s in &sols {
        let path = Path::from_unchecked(arena.trace(s));
        let g = CostVector::from_unchecked(arena.g(s).to_vec());
        let cost = match config.mode {
            SearchMode::ObjAgg => CostVector::from_unchecked(arena.key(s).to_vec()),
            SearchMode::Baseline => {
                let mut out = Vec::with_capacity(scheme.k());
                scheme.agg_into(g.as_slice(), &mut out);
                CostVector::from_unchecked(out)
            }
        };
        candidates.push((cost, path.clone()));
        hidden_solutions.push((g, path));
    }
    let frontier = pareto_filter(candidates)?;
    stats.runtime_s = started.elapsed().as_secs_f64();
    Ok(SearchResult { frontier, hidden_solutions, stats, timed_out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aggregation::RoadOrder;

    fn cv(v: &[f64]) -> CostVector {
        CostVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn two_vertex_graph() {
        let g = MOGraph::new(2, 2, vec![(0, 1, cv(&[1.0, 1.0]))]).unwrap();
        let s = AggregationScheme::trivial(2).unwrap();
        let h = graph_distance_heuristic(&g, 1, &s).unwrap();
        for mode in [SearchMode::Baseline, SearchMode::ObjAgg] {
            let r = mos_astar(&g, 0, 1, &s, &h, &SearchConfig::exact(mode, &s)).unwrap();
            let items = r.frontier.into_vec();
            assert_eq!(items.len(), 1);
            assert_eq!(items[0].0, cv(&[1.0, 1.0]));
            assert_eq!(items[0].1.vertices(), &[0, 1]);
        }
    }

    #[test]
    fn unreachable_goal_gives_empty_frontier() {
        let g = MOGraph::new(3, 2, vec![(0, 1, cv(&[1.0, 1.0]))]).unwrap();
        let s = AggregationScheme::trivial(2).unwrap();
        let h = graph_distance_heuristic(&g, 2, &s).unwrap();
        let r = mos_astar(&g, 0, 2, &s, &h, &SearchConfig::exact(SearchMode::ObjAgg, &s)).unwrap();
        assert!(r.frontier.is_empty());
        assert!(!r.timed_out);
    }

    #[test]
    fn eps_dimension_is_checked() {
        let g = MOGraph::new(2, 3, vec![(0, 1, cv(&[0.1, 0.2, 1.0]))]).unwrap();
        let s = AggregationScheme::max_risk_length(3).unwrap();
        let h = graph_distance_heuristic(&g, 1, &s).unwrap();
        let cfg =
            SearchConfig { mode: SearchMode::ObjAgg, eps: ApproxFactor::exact(3), timeout: None, max_expansions: None };
        assert!(matches!(mos_astar(&g, 0, 1, &s, &h, &cfg), Err(Error::DimensionMismatch { .. })));
        let cfg = SearchConfig {
            mode: SearchMode::Baseline,
            eps: ApproxFactor::exact(3),
            timeout: None,
            max_expansions: None,
        };
        assert!(mos_astar(&g, 0, 1, &s, &h, &cfg).is_ok());
    }

    fn arena_with_keys(keys: &[&[f64]]) -> (NodeArena, Vec<NodeId>) {
        let dim = keys[0].len();
        let mut arena = NodeArena::new(dim, dim);
        let ids = keys.iter().enumerate().map(|(v, k)| arena.push(v, None, k, k)).collect();
        (arena, ids)
    }

    #[test]
    fn solution_dominance_examples() {
        let s = AggregationScheme::max_risk_length(3).unwrap();
        let exact = DominanceRule::new(SearchMode::ObjAgg, &s, &ApproxFactor::exact(2)).unwrap();

        let (arena, ids) = arena_with_keys(&[&[0.9, 10.0], &[0.92, 12.0]]);
        assert!(is_dominated_sol(&arena, ids[1], &ids[..1], &exact));
        assert!(!is_dominated_sol(&arena, ids[1], &[], &exact));

        // 1.05 <= 1.1 * 1.0 and 10 <= 10
        let loose = DominanceRule::new(SearchMode::ObjAgg, &s, &ApproxFactor::new(vec![0.1, 0.0]).unwrap()).unwrap();
        let (arena, ids) = arena_with_keys(&[&[1.05, 10.0], &[1.0, 10.0]]);
        assert!(is_dominated_sol(&arena, ids[1], &ids[..1], &loose));
        assert!(!is_dominated_sol(&arena, ids[1], &ids[..1], &exact));
    }

    #[test]
    fn path_dominance_examples() {
        let senses = [Sense::Min; 2];
        let mut arena = NodeArena::new(2, 2);
        let mut closed = ClosedSet::new(3, 2);
        let a = arena.push(1, None, &[0.2, 3.0], &[0.2, 3.0]);
        closed.insert(&arena, a, &senses);
        let n = arena.push(1, None, &[0.3, 4.0], &[0.3, 4.0]);
        assert!(is_dominated_path(&arena, n, &closed, &senses));

        let mut closed = ClosedSet::new(3, 2);
        let b = arena.push(1, None, &[0.2, 5.0], &[0.2, 5.0]);
        closed.insert(&arena, b, &senses);
        assert!(!is_dominated_path(&arena, n, &closed, &senses));

        let elsewhere = arena.push(2, None, &[0.3, 9.0], &[0.3, 9.0]);
        let mut closed = ClosedSet::new(3, 2);
        closed.insert(&arena, a, &senses);
        assert!(!is_dominated_path(&arena, elsewhere, &closed, &senses));
    }

    #[test]
    fn closed_keeps_only_undominated_entries() {
        let senses = [Sense::Min; 2];
        let mut arena = NodeArena::new(2, 2);
        let mut closed = ClosedSet::new(2, 2);
        let ids: Vec<NodeId> =
            [[3.0, 1.0], [2.0, 4.0], [1.0, 5.0], [1.0, 1.0]].iter().map(|g| arena.push(0, None, g, g)).collect();
        for &id in &ids[..3] {
            closed.insert(&arena, id, &senses);
        }
        assert_eq!(closed.at(0).len(), 3);
        closed.insert(&arena, ids[3], &senses);
        assert_eq!(closed.at(0), &[ids[3]]);
        let probe = arena.push(0, None, &[2.0, 2.0], &[2.0, 2.0]);
        assert!(is_dominated_path(&arena, probe, &closed, &senses));
    }

    #[test]
    fn compute_cost_examples() {
        let t = AggregationScheme::trivial(2).unwrap();
        assert_eq!(compute_cost(&cv(&[1.0, 2.0]), &cv(&[3.0, 4.0]), &t).unwrap(), cv(&[4.0, 6.0]));
        let mp = AggregationScheme::max_risk_length(2).unwrap();
        assert_eq!(compute_cost(&cv(&[0.3, 5.0]), &cv(&[0.2, 3.0]), &mp).unwrap(), cv(&[0.3, 8.0]));
        let road = AggregationScheme::road(RoadOrder::LCM);
        assert_eq!(compute_cost(&cv(&[10.0, 3.0, 5.0]), &cv(&[4.0, 1.0]), &road).unwrap(), cv(&[14.0, 0.0, 5.0]));
    }

    #[test]
    fn zero_timeout_reports_timed_out() {
        let g = MOGraph::new(2, 2, vec![(0, 1, cv(&[1.0, 1.0]))]).unwrap();
        let s = AggregationScheme::trivial(2).unwrap();
        let h = graph_distance_heuristic(&g, 1, &s).unwrap();
        let cfg = SearchConfig::exact(SearchMode::ObjAgg, &s).with_timeout(Some(Duration::ZERO));
        let r = mos_astar(&g, 0, 1, &s, &h, &cfg).unwrap();
        assert!(r.timed_out);
    }

    #[test]
    fn expansion_cap_stops_deterministically() {
        let g = MOGraph::new(3, 2, vec![(0, 1, cv(&[1.0, 1.0])), (1, 2, cv(&[1.0, 1.0]))]).unwrap();
        let s = AggregationScheme::trivial(2).unwrap();
        let h = graph_distance_heuristic(&g, 2, &s).unwrap();
        let capped = SearchConfig::exact(SearchMode::Baseline, &s).with_max_expansions(Some(1));
        let r = mos_astar(&g, 0, 2, &s, &h, &capped).unwrap();
        assert!(r.timed_out);
        assert_eq!(r.stats.expansions, 1);
        assert!(r.frontier.is_empty());
        let roomy = SearchConfig::exact(SearchMode::Baseline, &s).with_max_expansions(Some(2));
        let r = mos_astar(&g, 0, 2, &s, &h, &roomy).unwrap();
        assert!(!r.timed_out);
        assert_eq!(r.frontier.len(), 1);
    }

    #[test]
    fn heuristic_must_vanish_at_goal() {
        let g = MOGraph::new(2, 2, vec![(0, 1, cv(&[1.0, 1.0]))]).unwrap();
        let s = AggregationScheme::trivial(2).unwrap();
        let h = Heuristic::from_values(2, vec![cv(&[0.0, 0.0]), cv(&[1.0, 0.0])]).unwrap();
        assert!(mos_astar(&g, 0, 1, &s, &h, &SearchConfig::exact(SearchMode::ObjAgg, &s)).is_err());
    }
}
