use mosagg_core::aggregation::{solution_cost, AggregationScheme, RoadOrder};
use mosagg_core::oracle::{brute_force_pof, verify_eps_cover, EnumerationBudget};
use mosagg_core::search::{graph_distance_heuristic, mos_astar, Heuristic, SearchConfig, SearchMode, SearchResult};
use mosagg_core::{CostVector, MOGraph};
use proptest::prelude::*;

#[derive(Clone, Copy, Debug)]
enum Kind {
    Trivial,
    Risk,
    Coverage,
    Road,
}

#[derive(Clone, Debug)]
struct Case {
    kind: Kind,
    n: usize,
    edges: Vec<(usize, usize, Vec<f64>)>,
}

impl Case {
    fn scheme(&self) -> AggregationScheme {
        match self.kind {
            Kind::Trivial => AggregationScheme::trivial(2).unwrap(),
            Kind::Risk => AggregationScheme::max_risk_length(4).unwrap(),
            Kind::Coverage => AggregationScheme::coverage_length(4).unwrap(),
            Kind::Road => AggregationScheme::road(RoadOrder::LCM),
        }
    }

    fn graph(&self) -> MOGraph {
        let d = self.scheme().d();
        let edges = self.edges.iter().map(|(u, v, c)| (*u, *v, CostVector::new(c[..d].to_vec()).unwrap())).collect();
        MOGraph::new(self.n, d, edges).unwrap()
    }
}

fn edge_cost(kind: Kind) -> BoxedStrategy<Vec<f64>> {
    let risk = prop::sample::select(vec![0.0, 0.0, 0.1, 0.25, 0.5]);
    match kind {
        Kind::Trivial => prop::collection::vec((0u8..6).prop_map(f64::from), 2).boxed(),
        Kind::Risk => (prop::collection::vec(risk, 3), 1u8..6)
            .prop_map(|(mut r, l)| {
                r.push(f64::from(l));
                r
            })
            .boxed(),
        Kind::Coverage => (prop::collection::vec(prop::bool::weighted(0.3), 3), 1u8..6)
            .prop_map(|(bits, l)| {
                let mut c: Vec<f64> = bits.into_iter().map(|b| if b { 1.0 } else { 0.0 }).collect();
                c.push(f64::from(l));
                c
            })
            .boxed(),
        Kind::Road => {
            (0u8..6, prop::bool::ANY).prop_map(|(l, paved)| vec![f64::from(l), f64::from(u8::from(paved))]).boxed()
        }
    }
}

fn case() -> impl Strategy<Value = Case> {
    let kind = prop::sample::select(vec![Kind::Trivial, Kind::Risk, Kind::Coverage, Kind::Road]);
    (kind, 2usize..8).prop_flat_map(|(kind, n)| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (0..n).filter(move |v| *v != u).map(move |v| (u, v))).collect();
        prop::collection::vec((prop::bool::weighted(0.45), edge_cost(kind)), pairs.len()).prop_map(move |picks| Case {
            kind,
            n,
            edges: pairs.iter().zip(picks).filter(|(_, (keep, _))| *keep).map(|(&(u, v), (_, c))| (u, v, c)).collect(),
        })
    })
}

fn run(g: &MOGraph, s: &AggregationScheme, h: &Heuristic, mode: SearchMode, eps: f64) -> SearchResult {
    let cfg = SearchConfig::uniform(mode, s, eps).unwrap();
    mos_astar(g, 0, g.num_vertices() - 1, s, h, &cfg).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn exact_modes_match_brute_force(c in case()) {
        let g = c.graph();
        let s = c.scheme();
        let goal = g.num_vertices() - 1;
        let exact = brute_force_pof(&g, 0, goal, &s, EnumerationBudget::default_for(&g)).unwrap();
        let h = graph_distance_heuristic(&g, goal, &s).unwrap();
        let objagg = run(&g, &s, &h, SearchMode::ObjAgg, 0.0);
        let baseline = run(&g, &s, &h, SearchMode::Baseline, 0.0);
        prop_assert_eq!(objagg.frontier.sorted_costs(), exact.sorted_costs());
        prop_assert_eq!(baseline.frontier.sorted_costs(), exact.sorted_costs());
    }

    #[test]
    fn approximate_frontiers_cover_the_exact_one(c in case(), eps in prop::sample::select(vec![0.01, 0.1, 0.3, 1.0])) {
        let g = c.graph();
        let s = c.scheme();
        let goal = g.num_vertices() - 1;
        let exact = brute_force_pof(&g, 0, goal, &s, EnumerationBudget::default_for(&g)).unwrap();
        let h = graph_distance_heuristic(&g, goal, &s).unwrap();
        let objagg = run(&g, &s, &h, SearchMode::ObjAgg, eps);
        let baseline = run(&g, &s, &h, SearchMode::Baseline, eps);
        let eps_k = mosagg_core::ApproxFactor::uniform(eps, s.k()).unwrap();
        prop_assert!(verify_eps_cover(&exact, &objagg.frontier, &eps_k).unwrap());
        prop_assert!(objagg.frontier.len() <= exact.len());
        prop_assert!(verify_eps_cover(&exact, &baseline.frontier, &eps_k).unwrap());
    }

    #[test]
    fn reported_paths_realize_reported_costs(c in case(), eps in prop::sample::select(vec![0.0, 0.2])) {
        let g = c.graph();
        let s = c.scheme();
        let goal = g.num_vertices() - 1;
        let h = graph_distance_heuristic(&g, goal, &s).unwrap();
        for mode in [SearchMode::ObjAgg, SearchMode::Baseline] {
            let r = run(&g, &s, &h, mode, eps);
            for (cost, path) in r.frontier.iter() {
                prop_assert_eq!(path.first(), 0);
                prop_assert_eq!(path.last(), goal);
                prop_assert_eq!(&solution_cost(path, &g, &s).unwrap(), cost);
            }
        }
    }

    #[test]
    fn heuristic_does_not_change_the_frontier(c in case()) {
        let g = c.graph();
        let s = c.scheme();
        let goal = g.num_vertices() - 1;
        let informed = graph_distance_heuristic(&g, goal, &s).unwrap();
        let blind = Heuristic::uninformed(&g, goal, &s);
        for mode in [SearchMode::ObjAgg, SearchMode::Baseline] {
            let a = run(&g, &s, &informed, mode, 0.0);
            let b = run(&g, &s, &blind, mode, 0.0);
            prop_assert_eq!(a.frontier.sorted_costs(), b.frontier.sorted_costs());
        }
    }

    #[test]
    fn road_orderings_do_not_affect_objagg(c in case()) {
        let road = Case { kind: Kind::Road, ..c };
        let road = Case {
            edges: road.edges.into_iter().map(|(u, v, cost)| (u, v, vec![cost[0].min(5.0), if cost[1] > 0.5 { 1.0 } else { 0.0 }])).collect(),
            ..road
        };
        let g = road.graph();
        let goal = g.num_vertices() - 1;
        let mut seen = None;
        for order in RoadOrder::all() {
            let s = AggregationScheme::road(order);
            let h = graph_distance_heuristic(&g, goal, &s).unwrap();
            let r = run(&g, &s, &h, SearchMode::ObjAgg, 0.0);
            let got = (r.frontier.into_vec(), r.stats.expansions);
            match &seen {
                None => seen = Some(got),
                Some(first) => prop_assert_eq!(first, &got),
            }
        }
    }
}
