use std::collections::BTreeSet;

use super::pair::{pair_count, Pair};
use super::perm::Permutation;
use crate::error::{Error, Result};

/// Finite vertex-labeled undirected graph on `{1..=n}` without self-loops.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: u32,
    edges: BTreeSet<Pair>,
}

impl SimpleGraph {
    pub fn empty(n: u32) -> Self {
        SimpleGraph { n, edges: BTreeSet::new() }
    }

    pub fn complete(n: u32) -> Self {
        Self::from_pairs_unchecked(n, (0..pair_count(n)).map(Pair::from_colex_index))
    }

    /// Path `1 - 2 - ... - n`.
    pub fn path(n: u32) -> Self {
        Self::from_pairs_unchecked(n, (2..=n).map(|v| Pair::sorted(v - 1, v)))
    }

    /// Star with center 1 and leaves `2..=leaves+1`.
    pub fn star(leaves: u32) -> Self {
        Self::from_pairs_unchecked(leaves + 1, (2..=leaves + 1).map(|v| Pair::sorted(1, v)))
    }

    pub fn from_edges(n: u32, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut g = Self::empty(n);
        for (a, b) in edges {
            g.add_edge(Pair::new(a, b)?)?;
        }
        Ok(g)
    }

    pub fn from_pairs(n: u32, pairs: impl IntoIterator<Item = Pair>) -> Result<Self> {
        let mut g = Self::empty(n);
        for p in pairs {
            g.add_edge(p)?;
        }
        Ok(g)
    }

    pub(crate) fn from_pairs_unchecked(n: u32, pairs: impl IntoIterator<Item = Pair>) -> Self {
        let edges: BTreeSet<Pair> = pairs.into_iter().collect();
        debug_assert!(edges.iter().all(|p| p.hi() <= n));
        SimpleGraph { n, edges }
    }

    pub fn add_edge(&mut self, p: Pair) -> Result<bool> {
        if p.hi() > self.n {
            return Err(Error::invalid(format!("edge {p} outside vertex set 1..={}", self.n)));
        }
        Ok(self.edges.insert(p))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        a != b && self.edges.contains(&Pair::sorted(a, b))
    }

    pub fn contains(&self, p: Pair) -> bool {
        self.edges.contains(&p)
    }

    pub fn edges(&self) -> impl Iterator<Item = Pair> + '_ {
        self.edges.iter().copied()
    }

    /// Sorted neighbor lists; `adjacency()[v - 1]` holds the neighbors of `v`.
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n as usize];
        for p in &self.edges {
            adj[p.lo() as usize - 1].push(p.hi());
            adj[p.hi() as usize - 1].push(p.lo());
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n as usize];
        for p in &self.edges {
            deg[p.lo() as usize - 1] += 1;
            deg[p.hi() as usize - 1] += 1;
        }
        deg
    }

    /// Induced subgraph on labels `1..=m`.
    pub fn restrict(&self, m: u32) -> Result<Self> {
        if m < 1 || m > self.n {
            return Err(Error::range("restriction size", m as usize, 1, self.n as usize));
        }
        let edges = self.edges.iter().copied().filter(|p| p.hi() <= m).collect();
        Ok(SimpleGraph { n: m, edges })
    }

    /// Relabels vertices: edge `{i,j}` becomes `{σ(i),σ(j)}`.
    pub fn relabel(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.len() != self.n {
            return Err(Error::invalid(format!(
                "permutation of {} labels applied to a graph on {}",
                sigma.len(),
                self.n
            )));
        }
        let edges = self.edges.iter().map(|p| p.map(|v| sigma.apply(v))).collect();
        Ok(SimpleGraph { n: self.n, edges })
    }

    /// Induced subgraph on `vertices`, where `vertices[k]` receives label `k + 1`.
    pub fn induced(&self, vertices: &[u32]) -> Result<Self> {
        let mut label = vec![0u32; self.n as usize];
        for (k, &v) in vertices.iter().enumerate() {
            if v == 0 || v > self.n {
                return Err(Error::invalid(format!("vertex {v} outside 1..={}", self.n)));
            }
            if label[v as usize - 1] != 0 {
                return Err(Error::invalid(format!("vertex {v} listed twice")));
            }
            label[v as usize - 1] = k as u32 + 1;
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|p| {
                let (a, b) = (label[p.lo() as usize - 1], label[p.hi() as usize - 1]);
                (a != 0 && b != 0).then(|| Pair::sorted(a, b))
            })
            .collect();
        Ok(SimpleGraph { n: vertices.len() as u32, edges })
    }

    /// Bit `k` set iff the pair with colex index `k` is an edge. Requires `n ≤ 8`.
    pub fn to_mask(&self) -> u32 {
        assert!(self.n <= 8, "mask encoding needs at most 28 pairs");
        self.edges.iter().fold(0, |m, p| m | (1 << p.colex_index()))
    }

    pub fn from_mask(n: u32, mask: u32) -> Self {
        assert!(n <= 8, "mask encoding needs at most 28 pairs");
        let pairs = (0..pair_count(n)).filter(|k| mask >> k & 1 == 1).map(Pair::from_colex_index);
        Self::from_pairs_unchecked(n, pairs)
    }
}
