use std::collections::BTreeMap;

use super::multi::Multigraph;
use super::simple::SimpleGraph;

/// Number of vertices of each degree: `counts[k] = N_k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeProfile {
    counts: BTreeMap<usize, usize>,
    v: usize,
}

impl DegreeProfile {
    pub fn from_counts(counts: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut profile = DegreeProfile::default();
        for (k, c) in counts {
            if c > 0 {
                *profile.counts.entry(k).or_insert(0) += c;
                profile.v += c;
            }
        }
        profile
    }

    pub fn of_simple(g: &SimpleGraph) -> Self {
        Self::from_degrees(g.degrees())
    }

    /// Degrees count multiplicity.
    pub fn of_multi(g: &Multigraph) -> Self {
        Self::from_degrees(g.degrees().into_values())
    }

    fn from_degrees(degrees: impl IntoIterator<Item = usize>) -> Self {
        Self::from_counts(degrees.into_iter().map(|d| (d, 1)))
    }

    pub fn count(&self, k: usize) -> usize {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    pub fn vertex_count(&self) -> usize {
        self.v
    }

    /// `Σ_k k·N_k`, twice the number of edges (with multiplicity).
    pub fn degree_sum(&self) -> usize {
        self.counts.iter().map(|(k, c)| k * c).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().map(|(&k, &c)| (k, c))
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.counts.keys().next_back().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let tri = DegreeProfile::of_simple(&SimpleGraph::complete(3));
        assert_eq!(tri.iter().collect::<Vec<_>>(), vec![(2, 3)]);
        let star = DegreeProfile::of_simple(&SimpleGraph::star(3));
        assert_eq!(star.iter().collect::<Vec<_>>(), vec![(1, 3), (3, 1)]);
        let multi = DegreeProfile::of_multi(&Multigraph::from_endpoints([(1, 2), (1, 2)]).unwrap());
        assert_eq!(multi.iter().collect::<Vec<_>>(), vec![(2, 2)]);
    }

    #[test]
    fn isolated_vertices_counted() {
        let p = DegreeProfile::of_simple(&SimpleGraph::from_edges(4, [(1, 2)]).unwrap());
        assert_eq!(p.count(0), 2);
        assert_eq!(p.vertex_count(), 4);
        assert_eq!(p.degree_sum(), 2);
    }
}
