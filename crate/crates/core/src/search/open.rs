use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::vector::{oriented_lex_cmp, CostVector, Sense};

pub type NodeId = u32;

const NO_PARENT: NodeId = NodeId::MAX;

/// Flat storage for search nodes.
///
/// Each node keeps its vertex, parent, hidden g-vector and the sort key used
/// by Open (hidden f in baseline mode, aggregated f in aggregation mode). The
/// node id doubles as the insertion counter used for FIFO tie-breaking.
#[derive(Debug, Clone)]
pub struct NodeArena {
    m: usize,
    key_dim: usize,
    vertices: Vec<VertexId>,
    parents: Vec<NodeId>,
    g: Vec<f64>,
    keys: Vec<f64>,
}

/// Owned snapshot of one node.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchNode {
    pub vertex: VertexId,
    pub g: CostVector,
    pub key: CostVector,
    pub parent: Option<NodeId>,
    pub seq: NodeId,
}

impl NodeArena {
    pub fn new(m: usize, key_dim: usize) -> Self {
        NodeArena { m, key_dim, vertices: Vec::new(), parents: Vec::new(), g: Vec::new(), keys: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn push(&mut self, vertex: VertexId, parent: Option<NodeId>, g: &[f64], key: &[f64]) -> NodeId {
        debug_assert_eq!(g.len(), self.m);
        debug_assert_eq!(key.len(), self.key_dim);
        let id = NodeId::try_from(self.vertices.len()).expect("node arena exceeds u32 ids");
        assert!(id != NO_PARENT, "node arena exceeds u32 ids");
        self.vertices.push(vertex);
        self.parents.push(parent.unwrap_or(NO_PARENT));
        self.g.extend_from_slice(g);
        self.keys.extend_from_slice(key);
        id
    }

    #[inline]
    pub fn vertex(&self, id: NodeId) -> VertexId {
        self.vertices[id as usize]
    }

    #[inline]
    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        match self.parents[id as usize] {
            NO_PARENT => None,
            p => Some(p),
        }
    }

    #[inline]
    pub fn g(&self, id: NodeId) -> &[f64] {
        let i = id as usize;
        &self.g[i * self.m..(i + 1) * self.m]
    }

    #[inline]
    pub fn key(&self, id: NodeId) -> &[f64] {
        let i = id as usize;
        &self.keys[i * self.key_dim..(i + 1) * self.key_dim]
    }

    pub fn node(&self, id: NodeId) -> SearchNode {
        SearchNode {
            vertex: self.vertex(id),
            g: CostVector::from_unchecked(self.g(id).to_vec()),
            key: CostVector::from_unchecked(self.key(id).to_vec()),
            parent: self.parent(id),
            seq: id,
        }
    }

    /// Vertex sequence from the root to `id`.
    pub fn trace(&self, id: NodeId) -> Vec<VertexId> {
        let mut out = vec![self.vertex(id)];
        let mut cur = id;
        while let Some(p) = self.parent(cur) {
            out.push(self.vertex(p));
            cur = p;
        }
        out.reverse();
        out
    }
}

/// Binary min-heap of node ids ordered lexicographically by key, then by
/// insertion order.
#[derive(Debug, Clone)]
pub struct OpenList {
    heap: Vec<NodeId>,
    senses: Vec<Sense>,
}

impl OpenList {
    /// `senses` gives the direction of each key component; `Max` components
    /// sort larger-first.
    pub fn new(senses: Vec<Sense>) -> Self {
        OpenList { heap: Vec::new(), senses }
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    #[inline]
    fn less(&self, arena: &NodeArena, a: NodeId, b: NodeId) -> bool {
        match oriented_lex_cmp(arena.key(a), arena.key(b), &self.senses) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => a < b,
        }
    }

    pub fn push(&mut self, arena: &NodeArena, id: NodeId) {
        self.heap.push(id);
        let mut i = self.heap.len() - 1;
        while i > 0 {
            let parent = (i - 1) / 2;
            if self.less(arena, self.heap[i], self.heap[parent]) {
                self.heap.swap(i, parent);
                i = parent;
            } else {
                break;
            }
        }
    }

    pub fn pop(&mut self, arena: &NodeArena) -> Option<NodeId> {
        let last = self.heap.pop()?;
        if self.heap.is_empty() {
            return Some(last);
        }
        let top = std::mem::replace(&mut self.heap[0], last);
        let n = self.heap.len();
        let mut i = 0;
        loop {
            let l = 2 * i + 1;
            if l >= n {
                break;
            }
            let r = l + 1;
            let child = if r < n && self.less(arena, self.heap[r], self.heap[l]) { r } else { l };
            if self.less(arena, self.heap[child], self.heap[i]) {
                self.heap.swap(i, child);
                i = child;
            } else {
                break;
            }
        }
        Some(top)
    }
}

/// Removes the lexicographically smallest node from Open; ties go to the
/// earliest inserted node.
pub fn get_best_node(open: &mut OpenList, arena: &NodeArena) -> Result<NodeId> {
    open.pop(arena).ok_or_else(|| Error::contract("get_best_node on an empty Open list"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arena_with(keys: &[[f64; 2]]) -> (NodeArena, OpenList) {
        let mut arena = NodeArena::new(1, 2);
        let mut open = OpenList::new(vec![Sense::Min; 2]);
        for (v, k) in keys.iter().enumerate() {
            let id = arena.push(v, None, &[0.0], k);
            open.push(&arena, id);
        }
        (arena, open)
    }

    #[test]
    fn best_node_examples() {
        let (arena, mut open) = arena_with(&[[2.0, 0.0], [1.0, 5.0]]);
        assert_eq!(arena.key(get_best_node(&mut open, &arena).unwrap()), &[1.0, 5.0]);

        let (arena, mut open) = arena_with(&[[1.0, 5.0], [1.0, 3.0]]);
        assert_eq!(arena.key(get_best_node(&mut open, &arena).unwrap()), &[1.0, 3.0]);

        let (arena, mut open) = arena_with(&[[1.0, 1.0], [1.0, 1.0], [1.0, 1.0]]);
        assert_eq!(get_best_node(&mut open, &arena).unwrap(), 0);
        assert_eq!(get_best_node(&mut open, &arena).unwrap(), 1);
        assert_eq!(get_best_node(&mut open, &arena).unwrap(), 2);
        assert!(get_best_node(&mut open, &arena).is_err());
    }

    #[test]
    fn max_components_sort_descending() {
        let mut arena = NodeArena::new(1, 2);
        let mut open = OpenList::new(vec![Sense::Max, Sense::Min]);
        for k in [[0.0, 1.0], [1.0, 9.0]] {
            let id = arena.push(0, None, &[0.0], &k);
            open.push(&arena, id);
        }
        assert_eq!(arena.key(open.pop(&arena).unwrap()), &[1.0, 9.0]);
    }

    #[test]
    fn heap_pops_in_sorted_order() {
        let mut keys = Vec::new();
        let mut x: u64 = 12345;
        for _ in 0..500 {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            keys.push([((x >> 33) % 7) as f64, ((x >> 40) % 5) as f64]);
        }
        let (arena, mut open) = arena_with(&keys);
        let mut expected: Vec<(u32, [f64; 2])> = keys.iter().enumerate().map(|(i, k)| (i as u32, *k)).collect();
        expected.sort_by(|a, b| crate::vector::lex_cmp(&a.1, &b.1).then(a.0.cmp(&b.0)));
        let got: Vec<u32> = std::iter::from_fn(|| open.pop(&arena)).collect();
        assert_eq!(got, expected.iter().map(|e| e.0).collect::<Vec<_>>());
    }

    #[test]
    fn trace_follows_parents() {
        let mut arena = NodeArena::new(1, 1);
        let a = arena.push(4, None, &[0.0], &[0.0]);
        let b = arena.push(7, Some(a), &[1.0], &[1.0]);
        let c = arena.push(2, Some(b), &[2.0], &[2.0]);
        assert_eq!(arena.trace(c), vec![4, 7, 2]);
        assert_eq!(arena.node(b).parent, Some(a));
    }
}
