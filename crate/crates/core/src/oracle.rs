//! Brute-force frontiers for small instances.
//!
//! Nothing here touches the search engine; only graphs, schemes and the
//! vector algebra are shared.

use crate::aggregation::AggregationScheme;
use crate::error::{check_dim, Error, Result};
use crate::graph::{MOGraph, Path, VertexId};
use crate::vector::{eps_dominates_slice, oriented_dominates, pareto_filter, ApproxFactor, CostVector, ParetoFrontier};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_paths: usize,
    /// Longest sequence to explore, counted in vertices.
    pub max_path_length: usize,
}

impl EnumerationBudget {
    pub fn new(max_paths: usize, max_path_length: usize) -> Result<Self> {
        if max_paths == 0 || max_path_length == 0 {
            return Err(Error::contract("enumeration budget limits must be positive"));
        }
        Ok(EnumerationBudget { max_paths, max_path_length })
    }

    /// One million paths, and walks up to four times the vertex count.
    /// Simple paths never exceed the vertex count, so the length limit only
    /// matters for walks that revisit vertices.
    pub fn default_for(graph: &MOGraph) -> Self {
        EnumerationBudget { max_paths: 1_000_000, max_path_length: 4 * graph.num_vertices() }
    }

    /// Cap on prefix extensions. Dead-end prefixes produce no output, so
    /// without it a sparse goal would let the search run unbounded.
    fn max_steps(&self) -> usize {
        self.max_paths.saturating_mul(self.max_path_length)
    }

    fn step(&self, steps: &mut usize) -> Result<()> {
        *steps += 1;
        if *steps > self.max_steps() {
            return Err(Error::EnumerationIncomplete(format!("more than {} extensions", self.max_steps())));
        }
        Ok(())
    }
}

/// All simple `start -> goal` paths, depth-first with ascending neighbor ids.
pub fn enumerate_simple_paths(
    graph: &MOGraph,
    start: VertexId,
    goal: VertexId,
    budget: EnumerationBudget,
) -> Result<Vec<Path>> {
    graph.check_vertex(start)?;
    graph.check_vertex(goal)?;
    let mut out = Vec::new();
    let mut on_path = vec![false; graph.num_vertices()];
    let mut stack = vec![start];
    on_path[start] = true;
    simple_dfs(graph, goal, budget, &mut stack, &mut on_path, &mut out, &mut 0)?;
    Ok(out)
}

fn simple_dfs(
    graph: &MOGraph,
    goal: VertexId,
    budget: EnumerationBudget,
    stack: &mut Vec<VertexId>,
    on_path: &mut [bool],
    out: &mut Vec<Path>,
    steps: &mut usize,
) -> Result<()> {
    let v = *stack.last().expect("stack is never empty");
    if v == goal {
        if out.len() == budget.max_paths {
            return Err(Error::EnumerationIncomplete(format!("more than {} paths", budget.max_paths)));
        }
        out.push(Path::from_unchecked(stack.clone()));
        return Ok(());
    }
    for e in graph.out_edges(v) {
        if on_path[e.target] {
            continue;
        }
        if stack.len() == budget.max_path_length {
            return Err(Error::EnumerationIncomplete(format!("paths longer than {} vertices", budget.max_path_length)));
        }
        budget.step(steps)?;
        on_path[e.target] = true;
        stack.push(e.target);
        simple_dfs(graph, goal, budget, stack, on_path, out, steps)?;
        stack.pop();
        on_path[e.target] = false;
    }
    Ok(())
}

/// All `start -> goal` walks that never come back to a vertex in a hidden
/// state dominated by an earlier visit on the same walk, and never continue
/// past the goal. Cutting such a cycle out cannot make the walk worse, so
/// these walks contain a representative of every frontier cost.
///
/// When every revisit is dominated (for example when some `Min` component
/// grows on every edge) these are exactly the simple paths.
pub fn enumerate_irredundant_walks(
    graph: &MOGraph,
    start: VertexId,
    goal: VertexId,
    scheme: &AggregationScheme,
    budget: EnumerationBudget,
) -> Result<Vec<(Path, CostVector)>> {
    graph.check_vertex(start)?;
    graph.check_vertex(goal)?;
    scheme.validate_graph(graph)?;
    let mut walker = Walker {
        graph,
        goal,
        scheme,
        budget,
        stack: vec![start],
        states: vec![vec![0.0; scheme.m()]],
        visits: vec![Vec::new(); graph.num_vertices()],
        out: Vec::new(),
        steps: 0,
    };
    walker.visits[start].push(0);
    walker.dfs()?;
    Ok(walker.out)
}

struct Walker<'a> {
    graph: &'a MOGraph,
    goal: VertexId,
    scheme: &'a AggregationScheme,
    budget: EnumerationBudget,
    stack: Vec<VertexId>,
    /// hidden cost after each prefix of `stack`
    states: Vec<Vec<f64>>,
    /// positions in `stack` where each vertex occurs
    visits: Vec<Vec<usize>>,
    out: Vec<(Path, CostVector)>,
    steps: usize,
}

impl Walker<'_> {
    fn dfs(&mut self) -> Result<()> {
        let depth = self.stack.len() - 1;
        let v = self.stack[depth];
        if v == self.goal {
            if self.out.len() == self.budget.max_paths {
                return Err(Error::EnumerationIncomplete(format!("more than {} walks", self.budget.max_paths)));
            }
            let cost = CostVector::from_unchecked(self.states[depth].clone());
            self.out.push((Path::from_unchecked(self.stack.clone()), cost));
            return Ok(());
        }
        let edges: Vec<(VertexId, Vec<f64>)> = self.graph.out_edges(v).map(|e| (e.target, e.cost.to_vec())).collect();
        for (w, c) in edges {
            let mut next = Vec::with_capacity(self.scheme.m());
            self.scheme.ext_into(&self.states[depth], &c, &mut next);
            let redundant =
                self.visits[w].iter().any(|&pos| oriented_dominates(&self.states[pos], &next, self.scheme.senses()));
            if redundant {
                continue;
            }
            if self.stack.len() == self.budget.max_path_length {
                return Err(Error::EnumerationIncomplete(format!(
                    "walks longer than {} vertices",
                    self.budget.max_path_length
                )));
            }
            self.budget.step(&mut self.steps)?;
            self.stack.push(w);
            self.states.push(next);
            self.visits[w].push(depth + 1);
            self.dfs()?;
            self.visits[w].pop();
            self.states.pop();
            self.stack.pop();
        }
        Ok(())
    }
}

/// Exact solution-space frontier by exhaustive enumeration.
pub fn brute_force_pof(
    graph: &MOGraph,
    start: VertexId,
    goal: VertexId,
    scheme: &AggregationScheme,
    budget: EnumerationBudget,
) -> Result<ParetoFrontier<Path>> {
    let walks = enumerate_irredundant_walks(graph, start, goal, scheme, budget)?;
    let mut items = Vec::with_capacity(walks.len());
    for (path, hidden) in walks {
        items.push((scheme.agg(&hidden)?, path));
    }
    pareto_filter(items)
}

/// True iff every cost in `exact` is ε-dominated by some cost in `approx`.
pub fn verify_eps_cover<A, B>(
    exact: &ParetoFrontier<A>,
    approx: &ParetoFrontier<B>,
    eps: &ApproxFactor,
) -> Result<bool> {
    for x in exact.costs() {
        check_dim(eps.dim(), x.dim())?;
    }
    for y in approx.costs() {
        check_dim(eps.dim(), y.dim())?;
    }
    Ok(exact.costs().all(|x| approx.costs().any(|y| eps_dominates_slice(y.as_slice(), x.as_slice(), eps.as_slice()))))
}
