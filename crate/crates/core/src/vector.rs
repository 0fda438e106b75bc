//! Cost vectors and the dominance relations used throughout the search.
//!
//! All objectives are minimized. Comparisons are exact IEEE comparisons;
//! a tolerance would break transitivity of dominance.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};

/// Fixed-length vector of non-negative costs.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "Vec<f64>", try_from = "Vec<f64>")]
pub struct CostVector(Vec<f64>);

impl CostVector {
    /// Builds a vector, rejecting negative or NaN components.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::contract("cost vectors must have dim >= 1"));
        }
        if let Some(bad) = values.iter().find(|v| v.is_nan() || **v < 0.0) {
            return Err(Error::contract(format!("cost component {bad} is not a non-negative real")));
        }
        Ok(CostVector(values))
    }

    pub fn zeros(dim: usize) -> Self {
        CostVector(vec![0.0; dim])
    }

    pub(crate) fn from_unchecked(values: Vec<f64>) -> Self {
        debug_assert!(values.iter().all(|v| *v >= 0.0));
        CostVector(values)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }
}

impl Index<usize> for CostVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl fmt::Debug for CostVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("CostVector").field(&self.0).finish()
    }
}

impl TryFrom<Vec<f64>> for CostVector {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        CostVector::new(values)
    }
}

impl From<CostVector> for Vec<f64> {
    fn from(v: CostVector) -> Self {
        v.0
    }
}

impl TryFrom<Vec<f64>> for ApproxFactor {
    type Error = Error;

    fn try_from(eps: Vec<f64>) -> Result<Self> {
        ApproxFactor::new(eps)
    }
}

impl From<ApproxFactor> for Vec<f64> {
    fn from(e: ApproxFactor) -> Self {
        e.0
    }
}

/// Per-dimension approximation factor; every component is `>= 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "Vec<f64>", try_from = "Vec<f64>")]
pub struct ApproxFactor(Vec<f64>);

impl ApproxFactor {
    pub fn new(eps: Vec<f64>) -> Result<Self> {
        if let Some(bad) = eps.iter().find(|e| e.is_nan() || **e < 0.0) {
            return Err(Error::contract(format!("approximation factor {bad} must be >= 0")));
        }
        Ok(ApproxFactor(eps))
    }

    pub fn uniform(eps: f64, dim: usize) -> Result<Self> {
        Self::new(vec![eps; dim])
    }

    pub fn exact(dim: usize) -> Self {
        ApproxFactor(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn is_exact(&self) -> bool {
        self.0.iter().all(|e| *e == 0.0)
    }
}

/// Direction in which a hidden objective improves.
///
/// Every solution objective is minimized. Hidden objectives are minimized
/// too, except binary "has been sensed" indicators, which only ever help.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Min,
    Max,
}

/// `p ⪯ q`: every component of `p` is at most the matching component of `q`.
pub fn dominates(p: &CostVector, q: &CostVector) -> Result<bool> {
    check_dim(p.dim(), q.dim())?;
    Ok(dominates_slice(p.as_slice(), q.as_slice()))
}

/// Lexicographic comparison that also accepts equal vectors.
pub fn lex_less(p: &CostVector, q: &CostVector) -> Result<bool> {
    check_dim(p.dim(), q.dim())?;
    Ok(lex_cmp(p.as_slice(), q.as_slice()) != Ordering::Greater)
}

/// `p ⪯_ε q`: `p_i <= (1 + ε_i) q_i` for every component.
pub fn eps_dominates(p: &CostVector, q: &CostVector, eps: &ApproxFactor) -> Result<bool> {
    check_dim(p.dim(), q.dim())?;
    check_dim(p.dim(), eps.dim())?;
    Ok(eps_dominates_slice(p.as_slice(), q.as_slice(), eps.as_slice()))
}

pub fn vec_add(p: &CostVector, q: &CostVector) -> Result<CostVector> {
    check_dim(p.dim(), q.dim())?;
    Ok(CostVector(p.0.iter().zip(&q.0).map(|(a, b)| a + b).collect()))
}

/// `p` dominates `q` and they differ in at least one component.
pub fn strictly_dominates(p: &CostVector, q: &CostVector) -> Result<bool> {
    Ok(dominates(p, q)? && p != q)
}

#[inline]
pub(crate) fn dominates_slice(p: &[f64], q: &[f64]) -> bool {
    p.iter().zip(q).all(|(a, b)| a <= b)
}

#[inline]
pub(crate) fn eps_dominates_slice(p: &[f64], q: &[f64], eps: &[f64]) -> bool {
    p.iter().zip(q).zip(eps).all(|((a, b), e)| *a <= (1.0 + e) * b)
}

/// Dominance with per-component direction. A `Max` component of `p` must be
/// at least the matching component of `q`; with `ε`, `(1 + ε_i) p_i >= q_i`.
#[inline]
pub(crate) fn oriented_eps_dominates(p: &[f64], q: &[f64], eps: &[f64], senses: &[Sense]) -> bool {
    p.iter().zip(q).zip(eps).zip(senses).all(|(((a, b), e), s)| match s {
        Sense::Min => *a <= (1.0 + e) * b,
        Sense::Max => (1.0 + e) * a >= *b,
    })
}

#[inline]
pub(crate) fn oriented_dominates(p: &[f64], q: &[f64], senses: &[Sense]) -> bool {
    p.iter().zip(q).zip(senses).all(|((a, b), s)| match s {
        Sense::Min => a <= b,
        Sense::Max => a >= b,
    })
}

/// Total lexicographic order over components.
#[inline]
pub(crate) fn lex_cmp(p: &[f64], q: &[f64]) -> Ordering {
    for (a, b) in p.iter().zip(q) {
        match a.total_cmp(b) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Lexicographic order where `Max` components sort larger-first.
#[inline]
pub(crate) fn oriented_lex_cmp(p: &[f64], q: &[f64], senses: &[Sense]) -> Ordering {
    for ((a, b), s) in p.iter().zip(q).zip(senses) {
        let ord = match s {
            Sense::Min => a.total_cmp(b),
            Sense::Max => b.total_cmp(a),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

/// A mutually non-dominated set of `(cost, payload)` pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct ParetoFrontier<T> {
    items: Vec<(CostVector, T)>,
}

impl<T> Default for ParetoFrontier<T> {
    fn default() -> Self {
        ParetoFrontier { items: Vec::new() }
    }
}

impl<T> ParetoFrontier<T> {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(CostVector, T)> {
        self.items.iter()
    }

    pub fn costs(&self) -> impl Iterator<Item = &CostVector> {
        self.items.iter().map(|(c, _)| c)
    }

    /// Costs sorted lexicographically, for order-insensitive comparison.
    pub fn sorted_costs(&self) -> Vec<CostVector> {
        let mut costs: Vec<CostVector> = self.costs().cloned().collect();
        costs.sort_by(|a, b| lex_cmp(a.as_slice(), b.as_slice()));
        costs
    }

    pub fn contains_cost(&self, cost: &CostVector) -> bool {
        self.items.iter().any(|(c, _)| c == cost)
    }

    pub fn into_vec(self) -> Vec<(CostVector, T)> {
        self.items
    }
}

impl<T> IntoIterator for ParetoFrontier<T> {
    type Item = (CostVector, T);
    type IntoIter = std::vec::IntoIter<(CostVector, T)>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.into_iter()
    }
}

/// Keeps every item whose cost is not strictly dominated by another item.
/// Among items with identical costs the first inserted one survives.
pub fn pareto_filter<T>(items: impl IntoIterator<Item = (CostVector, T)>) -> Result<ParetoFrontier<T>> {
    let mut kept: Vec<(CostVector, T)> = Vec::new();
    let mut dim = None;
    for (cost, payload) in items {
        match dim {
            None => dim = Some(cost.dim()),
            Some(d) => check_dim(d, cost.dim())?,
        }
        if kept.iter().any(|(k, _)| dominates_slice(k.as_slice(), cost.as_slice())) {
            continue;
        }
        kept.retain(|(k, _)| !dominates_slice(cost.as_slice(), k.as_slice()));
        kept.push((cost, payload));
    }
    Ok(ParetoFrontier { items: kept })
}
