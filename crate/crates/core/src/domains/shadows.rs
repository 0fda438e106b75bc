use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use super::{quantize, Point};
use crate::error::{Error, Result};

/// Axis-aligned rectangle whose extent is uncertain. Shadow `j` is the
/// nominal rectangle inflated by `j * shadow_step` on every side.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UncertainObstacle {
    pub center: Point,
    pub half_extents: [f64; 2],
    pub sigma: f64,
    pub num_shadows: usize,
    pub shadow_step: f64,
    #[serde(skip)]
    risks: Vec<f64>,
}

pub const DEFAULT_NUM_SHADOWS: usize = 30;

impl UncertainObstacle {
    /// Fails unless the quantized shadow risks are strictly decreasing, which
    /// bounds `(num_shadows - 1) * shadow_step / sigma`.
    pub fn new(
        center: Point,
        half_extents: [f64; 2],
        sigma: f64,
        num_shadows: usize,
        shadow_step: f64,
    ) -> Result<Self> {
        if !(half_extents[0] > 0.0 && half_extents[1] > 0.0 && half_extents.iter().all(|h| h.is_finite())) {
            return Err(Error::contract("obstacle half-extents must be positive"));
        }
        if !(sigma > 0.0 && sigma.is_finite() && shadow_step > 0.0 && shadow_step.is_finite()) {
            return Err(Error::contract("sigma and shadow_step must be positive"));
        }
        if num_shadows == 0 {
            return Err(Error::contract("an obstacle needs at least one shadow"));
        }
        if !(center[0].is_finite() && center[1].is_finite()) {
            return Err(Error::contract("obstacle center must be finite"));
        }
        let normal = Normal::new(0.0, 1.0).expect("standard normal");
        let risks: Vec<f64> =
            (0..num_shadows).map(|j| quantize(1.0 - normal.cdf(j as f64 * shadow_step / sigma))).collect();
        if risks.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::contract(format!(
                "shadow risks stop decreasing at 6 decimals; reduce num_shadows * shadow_step / sigma ({})",
                (num_shadows - 1) as f64 * shadow_step / sigma
            )));
        }
        Ok(UncertainObstacle { center, half_extents, sigma, num_shadows, shadow_step, risks })
    }

    pub fn with_defaults(center: Point, half_extents: [f64; 2], sigma: f64, shadow_step: f64) -> Result<Self> {
        Self::new(center, half_extents, sigma, DEFAULT_NUM_SHADOWS, shadow_step)
    }

    /// Half-extents of shadow `j`.
    pub fn shadow_extents(&self, j: usize) -> [f64; 2] {
        let grow = j as f64 * self.shadow_step;
        [self.half_extents[0] + grow, self.half_extents[1] + grow]
    }

    pub fn shadow_contains(&self, j: usize, x: Point) -> bool {
        let [hx, hy] = self.shadow_extents(j);
        (x[0] - self.center[0]).abs() <= hx && (x[1] - self.center[1]).abs() <= hy
    }

    /// Index of the smallest shadow containing `x`.
    pub fn effective_shadow(&self, x: Point) -> Option<usize> {
        let gap = ((x[0] - self.center[0]).abs() - self.half_extents[0])
            .max((x[1] - self.center[1]).abs() - self.half_extents[1])
            .max(0.0);
        let guess = (gap / self.shadow_step).ceil();
        if guess > self.num_shadows as f64 {
            return None;
        }
        // the closed form can be off by one at shadow boundaries; the
        // containment test is authoritative
        let mut j = (guess as usize).min(self.num_shadows - 1);
        while j > 0 && self.shadow_contains(j - 1, x) {
            j -= 1;
        }
        while j < self.num_shadows && !self.shadow_contains(j, x) {
            j += 1;
        }
        (j < self.num_shadows).then_some(j)
    }

    fn risk(&self, j: usize) -> f64 {
        self.risks[j]
    }
}

/// Probability that the true extent exceeds the inflation of shadow `j`:
/// `1 - Φ(j * shadow_step / sigma)`, quantized to 6 decimals.
pub fn shadow_risk(obstacle: &UncertainObstacle, j: usize) -> Result<f64> {
    if j >= obstacle.num_shadows {
        return Err(Error::contract(format!("shadow index {j} out of range 0..{}", obstacle.num_shadows)));
    }
    Ok(obstacle.risk(j))
}

/// Risk of the smallest shadow containing `x`, or 0 outside every shadow.
pub fn point_obstacle_risk(x: Point, obstacle: &UncertainObstacle) -> f64 {
    obstacle.effective_shadow(x).map_or(0.0, |j| obstacle.risk(j))
}

/// Largest point risk over samples along `p1 -> p2`.
///
/// The segment is split into a power-of-two number of pieces no longer than
/// `resolution`, so halving the resolution keeps every earlier sample.
pub fn edge_obstacle_risk(p1: Point, p2: Point, obstacle: &UncertainObstacle, resolution: f64) -> Result<f64> {
    if !(resolution > 0.0) {
        return Err(Error::contract("resolution must be positive"));
    }
    let len = (p2[0] - p1[0]).hypot(p2[1] - p1[1]);
    let mut pieces: u64 = 1;
    while len / pieces as f64 > resolution {
        pieces *= 2;
    }
    // skip segments that miss the largest shadow's bounding box
    let [hx, hy] = obstacle.shadow_extents(obstacle.num_shadows - 1);
    let c = obstacle.center;
    if p1[0].max(p2[0]) < c[0] - hx
        || p1[0].min(p2[0]) > c[0] + hx
        || p1[1].max(p2[1]) < c[1] - hy
        || p1[1].min(p2[1]) > c[1] + hy
    {
        return Ok(0.0);
    }
    let mut best = usize::MAX;
    for i in 0..=pieces {
        let t = i as f64 / pieces as f64;
        let x = [p1[0] + t * (p2[0] - p1[0]), p1[1] + t * (p2[1] - p1[1])];
        if let Some(j) = obstacle.effective_shadow(x) {
            best = best.min(j);
            if best == 0 {
                break;
            }
        }
    }
    Ok(if best == usize::MAX { 0.0 } else { obstacle.risk(best) })
}
