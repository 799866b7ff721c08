//! Small simple graphs on `0..n` backed by adjacency bitsets.

use alloc::vec;
use alloc::vec::Vec;

/// A set of vertices stored as a bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn from_slice(n: usize, vs: &[usize]) -> Self {
        let mut s = VertexSet::new(n);
        for &v in vs {
            s.insert(v);
        }
        s
    }

    pub fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn symmetric_difference_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Undirected graph without loops or multiple edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            n,
            adj: vec![VertexSet::new(n); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = SimpleGraph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Ignores loops.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.adj[a].insert(b);
            self.adj[b].insert(a);
        }
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a].remove(b);
        self.adj[b].remove(a);
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbours(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    /// `N(v) ∪ {v}`.
    pub fn closed_neighbourhood(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v].clone();
        s.insert(v);
        s
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in self.adj[a].iter().filter(|&b| b > a) {
                out.push((a, b));
            }
        }
        out
    }

    /// Subgraph induced on `keep`, relabelled `0..keep.len()` in the given order.
    pub fn induced(&self, keep: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph::new(keep.len());
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = VertexSet::new(self.n);
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for w in self.adj[v].iter() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The vertices in path order starting from the leaf `start`, if the graph
    /// is a path with at least two vertices and `start` is one of its leaves.
    pub fn path_from(&self, start: usize) -> Option<Vec<usize>> {
        if self.n < 2 || self.degree(start) != 1 || self.edge_count() != self.n - 1 {
            return None;
        }
        if (0..self.n).any(|v| self.degree(v) > 2 || self.degree(v) == 0) {
            return None;
        }
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(next) = self.adj[cur].iter().find(|&w| w != prev) {
            order.push(next);
            prev = cur;
            cur = next;
        }
        (order.len() == self.n).then_some(order)
    }

    /// Leaves (degree one vertices).
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }
}

/// The graph obtained by complementing adjacency inside every part:
/// `part[v]` names the part containing `v`.
pub fn error_graph(g: &SimpleGraph, part: &[usize]) -> SimpleGraph {
    let n = g.vertex_count();
    let mut e = SimpleGraph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if (part[a] == part[b]) != g.has_edge(a, b) {
                e.add_edge(a, b);
            }
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitset_operations() {
        let a = VertexSet::from_slice(130, &[0, 5, 64, 129]);
        let b = VertexSet::from_slice(130, &[5, 64, 100]);
        assert_eq!(a.len(), 4);
        assert_eq!(a.intersection_len(&b), 2);
        assert_eq!(a.symmetric_difference_len(&b), 3);
        assert_eq!(a.to_vec(), [0, 5, 64, 129]);
        assert!(!a.is_disjoint(&b));
    }

    #[test]
    fn paths_and_components() {
        let p = SimpleGraph::from_edges(4, &[(0, 2), (2, 1), (1, 3)]);
        assert_eq!(p.path_from(0), Some(alloc::vec![0, 2, 1, 3]));
        assert_eq!(p.path_from(2), None);
        let c = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(c.path_from(3), None);
        assert_eq!(c.components(), [alloc::vec![0, 1, 2], alloc::vec![3]]);
        let two = SimpleGraph::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(two.path_from(0), None);
    }

    #[test]
    fn error_graph_flips_inside_parts() {
        let g = SimpleGraph::from_edges(4, &[(0, 1), (1, 2)]);
        let e = error_graph(&g, &[0, 0, 1, 1]);
        assert_eq!(e.edges(), [(1, 2), (2, 3)]);
    }
}
