use std::collections::{BTreeSet, HashMap};

use super::pair::Pair;
use super::perm::Permutation;
use super::simple::SimpleGraph;
use crate::error::{Error, Result};

/// Edge-labeled multigraph: pair `k` (1-based) records which two vertices
/// took part in interaction `k`. Vertices exist only through interactions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Multigraph {
    pairs: Vec<Pair>,
}

impl Multigraph {
    pub fn new(pairs: Vec<Pair>) -> Self {
        Multigraph { pairs }
    }

    pub fn from_endpoints(pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        pairs
            .into_iter()
            .map(|(a, b)| Pair::new(a, b))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn m(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    /// Pair carrying edge label `k` (1-based).
    pub fn pair(&self, k: usize) -> Option<Pair> {
        k.checked_sub(1).and_then(|i| self.pairs.get(i).copied())
    }

    pub fn push(&mut self, p: Pair) {
        self.pairs.push(p);
    }

    pub fn vertices(&self) -> BTreeSet<u32> {
        self.pairs.iter().flat_map(|p| [p.lo(), p.hi()]).collect()
    }

    /// Canonical sampling on edge-labeled data: the first `m` interactions.
    pub fn prefix(&self, m: usize) -> Result<Self> {
        if m > self.pairs.len() {
            return Err(Error::range("edge prefix", m, 0, self.pairs.len()));
        }
        Ok(Multigraph { pairs: self.pairs[..m].to_vec() })
    }

    /// Relabels edges: the pair at label `k` moves to label `σ(k)`.
    pub fn relabel_edges(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.len() as usize != self.pairs.len() {
            return Err(Error::invalid(format!(
                "permutation of {} labels applied to {} edges",
                sigma.len(),
                self.pairs.len()
            )));
        }
        let mut out = self.pairs.clone();
        for (k, &p) in self.pairs.iter().enumerate() {
            out[sigma.apply(k as u32 + 1) as usize - 1] = p;
        }
        Ok(Multigraph { pairs: out })
    }

    /// Collapses multiplicities to a simple graph. Vertex names become
    /// `1..=v` in order of first appearance (lower endpoint first within a pair).
    pub fn project(&self) -> SimpleGraph {
        let mut names: HashMap<u32, u32> = HashMap::new();
        let mut rename = |v: u32| {
            let next = names.len() as u32 + 1;
            *names.entry(v).or_insert(next)
        };
        let renamed: Vec<Pair> = self
            .pairs
            .iter()
            .map(|p| {
                let a = rename(p.lo());
                let b = rename(p.hi());
                Pair::sorted(a, b)
            })
            .collect();
        SimpleGraph::from_pairs_unchecked(names.len() as u32, renamed)
    }

    /// Degree of each vertex counting multiplicity.
    pub fn degrees(&self) -> HashMap<u32, usize> {
        let mut deg = HashMap::new();
        for p in &self.pairs {
            *deg.entry(p.lo()).or_insert(0) += 1;
            *deg.entry(p.hi()).or_insert(0) += 1;
        }
        deg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mg(pairs: &[(u32, u32)]) -> Multigraph {
        Multigraph::from_endpoints(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn project_examples() {
        let g = mg(&[(1, 2), (1, 2), (2, 3)]).project();
        assert_eq!(g, SimpleGraph::from_edges(3, [(1, 2), (2, 3)]).unwrap());
        assert_eq!(Multigraph::default().project().n(), 0);
        let g = mg(&[(7, 9), (9, 7)]).project();
        assert_eq!(g, SimpleGraph::from_edges(2, [(1, 2)]).unwrap());
    }

    #[test]
    fn relabel_edges_examples() {
        let one = mg(&[(4, 5)]);
        assert_eq!(one.relabel_edges(&Permutation::identity(1)).unwrap(), one);
        let two = mg(&[(1, 2), (3, 4)]);
        let swap = Permutation::from_cycles(2, &[&[1, 2]]).unwrap();
        assert_eq!(two.relabel_edges(&swap).unwrap(), mg(&[(3, 4), (1, 2)]));
        assert!(two.relabel_edges(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn vertices_exist_through_pairs() {
        let g = mg(&[(3, 8), (8, 10)]);
        assert_eq!(g.vertices().into_iter().collect::<Vec<_>>(), vec![3, 8, 10]);
        assert!(Multigraph::from_endpoints([(2, 2)]).is_err());
    }
}
