use serde::{Deserialize, Serialize};

use mosagg_core::search::{SearchMode, SearchResult};

/// One frontier entry: solution cost and the vertex sequence realizing it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrontierEntry {
    pub cost: Vec<f64>,
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportStats {
    pub expansions: u64,
    pub generations: u64,
    pub sols_found: u64,
    pub peak_open: u64,
    pub frontier_size: usize,
    pub runtime_s: f64,
}

/// Output of a single search. Floats are written in shortest round-trip
/// form, so a report re-parses to an identical value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub instance: String,
    pub scheme: String,
    pub mode: String,
    pub eps: Vec<f64>,
    pub start: usize,
    pub goal: usize,
    pub rng_seed: Option<u64>,
    pub timed_out: bool,
    /// empty when `timed_out`, since a partial frontier proves nothing
    pub frontier: Vec<FrontierEntry>,
    pub stats: ReportStats,
}

impl RunReport {
    #[allow(clippy::too_many_arguments)]
    pub fn from_result(
        instance: &str,
        scheme: &str,
        mode: SearchMode,
        eps: &[f64],
        start: usize,
        goal: usize,
        rng_seed: Option<u64>,
        result: &SearchResult,
    ) -> Self {
        let mut frontier: Vec<FrontierEntry> = if result.timed_out {
            Vec::new()
        } else {
            result
                .frontier
                .iter()
                .map(|(c, p)| FrontierEntry { cost: c.as_slice().to_vec(), path: p.vertices().to_vec() })
                .collect()
        };
        frontier.sort_by(|a, b| {
            a.cost
                .iter()
                .zip(&b.cost)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let s = &result.stats;
        RunReport {
            instance: instance.to_string(),
            scheme: scheme.to_string(),
            mode: mode.name().to_string(),
            eps: eps.to_vec(),
            start,
            goal,
            rng_seed,
            timed_out: result.timed_out,
            stats: ReportStats {
                expansions: s.expansions,
                generations: s.generations,
                sols_found: s.sols_found,
                peak_open: s.peak_open,
                frontier_size: frontier.len(),
                runtime_s: s.runtime_s,
            },
            frontier,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports always serialize");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
