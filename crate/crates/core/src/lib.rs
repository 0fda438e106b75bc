//! Multi-objective A* with objective-aggregation functions.
//!
//! A scheme maps each edge's raw cost vector into a hidden search cost
//! (`ext`) and each hidden cost into the user-facing solution cost (`agg`).
//! [`search::mos_astar`] runs either the baseline search over hidden costs or
//! the aggregation-aware search that orders and prunes on aggregated costs.

// `!(x > 0.0)` is deliberate throughout: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod aggregation;
pub mod domains;
pub mod error;
pub mod graph;
pub mod instance;
pub mod oracle;
pub mod search;
pub mod vector;

pub use aggregation::{path_cost, solution_cost, AggregationScheme, RoadObjective, RoadOrder, SchemeKind};
pub use error::{Error, Result};
pub use graph::{MOGraph, Path, VertexId};
pub use instance::Instance;
pub use search::{mos_astar, SearchConfig, SearchMode, SearchResult, SearchStats};
pub use vector::{ApproxFactor, CostVector, ParetoFrontier, Sense};
