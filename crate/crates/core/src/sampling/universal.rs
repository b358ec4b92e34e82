//! Exact embedding of a target law into a lazily realized Erdős–Rényi graph.
//!
//! Stage `m` draws the next target graph on `[m+1]` from the law conditioned
//! on the current graph on `[m]`, then scans the population for the first
//! vertex beyond the last chosen one whose edges to the chosen vertices match
//! it. Because the population is universal with probability one, the scan
//! terminates, and the induced graph on the chosen vertices has the target law.

use std::collections::HashMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{pair_count, SimpleGraph};
use crate::law::GraphLaw;
use crate::rng::{stream, Stream, StreamRng};

/// Candidate population vertices examined per stage before giving up.
pub const SCAN_CAP: u32 = 1_000_000;

/// Output of [`universal_embed_traced`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub graph: SimpleGraph,
    /// Chosen population vertices `s_1 < s_2 < ... < s_n`.
    pub vertices: Vec<u32>,
}

/// Erdős–Rényi graph on the positive integers, realized edge by edge on demand.
struct LazyPopulation {
    p: f64,
    rng: StreamRng,
    edges: HashMap<(u32, u32), bool>,
}

impl LazyPopulation {
    fn new(p: f64, seed: u64) -> Self {
        LazyPopulation { p, rng: stream(seed, Stream::UniversalPopulation), edges: HashMap::new() }
    }

    /// Each pair's draw sits at its own colex position in the stream, so the
    /// realized graph does not depend on the order of queries.
    fn has_edge(&mut self, a: u32, b: u32) -> bool {
        let key = (a.min(b), a.max(b));
        let (p, rng) = (self.p, &mut self.rng);
        *self.edges.entry(key).or_insert_with(|| {
            let (lo, hi) = (u128::from(key.0), u128::from(key.1));
            rng.set_word_pos(((hi - 1) * (hi - 2) / 2 + lo - 1) * 2);
            rng.random::<f64>() < p
        })
    }
}

const MAX_N: u32 = 5;

fn validate(mu: &GraphLaw<f64>, p: f64) -> Result<()> {
    if mu.n() == 0 || mu.n() > MAX_N {
        return Err(Error::range("target law size", mu.n() as usize, 1, MAX_N as usize));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::invalid(format!("population edge probability {p} must lie strictly in (0, 1)")));
    }
    mu.validate_distribution(1e-12)
}

/// Draws a graph distributed exactly as `mu` by embedding into an ER(`p`) population.
pub fn universal_embed(mu: &GraphLaw<f64>, p: f64, seed: u64) -> Result<SimpleGraph> {
    universal_embed_traced(mu, p, seed).map(|e| e.graph)
}

/// [`universal_embed`] that also reports the chosen population vertices.
pub fn universal_embed_traced(mu: &GraphLaw<f64>, p: f64, seed: u64) -> Result<Embedding> {
    validate(mu, p)?;
    let n = mu.n();
    let marginals: Vec<GraphLaw<f64>> = (1..=n).map(|m| mu.marginal(m)).collect::<Result<_>>()?;
    let mut target_rng = stream(seed, Stream::UniversalTarget);
    let mut population = LazyPopulation::new(p, seed);
    let mut mask = 0u32;
    let mut vertices = vec![1u32];
    for m in 1..n {
        let next = &marginals[m as usize];
        let base = pair_count(m);
        // Extensions of the current graph: bit i-1 of `ext` is pair {i, m+1}.
        let weights: Vec<f64> = (0..1u32 << m).map(|ext| next.probs()[(mask | ext << base) as usize]).collect();
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::ZeroProbability("target law gives the current graph probability zero".into()));
        }
        let u = target_rng.random::<f64>() * total;
        let mut acc = 0.0;
        let mut ext = weights.iter().rposition(|&w| w > 0.0).unwrap() as u32;
        for (e, w) in weights.iter().enumerate() {
            acc += w;
            if *w > 0.0 && u < acc {
                ext = e as u32;
                break;
            }
        }
        let last = *vertices.last().unwrap();
        let found = (last + 1..=last.saturating_add(SCAN_CAP)).find(|&s| {
            vertices.iter().enumerate().all(|(i, &v)| population.has_edge(v, s) == (ext >> i & 1 == 1))
        });
        let Some(s) = found else {
            return Err(Error::Resource(format!("no matching population vertex within {SCAN_CAP} candidates")));
        };
        vertices.push(s);
        mask |= ext << base;
    }
    Ok(Embedding { graph: SimpleGraph::from_mask(n, mask), vertices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Pair;

    #[test]
    fn one_vertex() {
        let mu = GraphLaw::from_table(1, vec![1.0]).unwrap();
        assert_eq!(universal_embed(&mu, 0.5, 3).unwrap(), SimpleGraph::empty(1));
    }

    #[test]
    fn validation() {
        assert!(universal_embed(&GraphLaw::from_table(2, vec![0.5, 0.6]).unwrap(), 0.5, 0).is_err());
        assert!(universal_embed(&GraphLaw::from_table(2, vec![0.3, 0.7]).unwrap(), 1.0, 0).is_err());
        assert!(universal_embed(&GraphLaw::erdos_renyi(6, 0.5).unwrap(), 0.5, 0).is_err());
        let bad = GraphLaw::from_table(2, vec![0.3, 0.7 + 1e-9]).unwrap();
        assert!(universal_embed(&bad, 0.5, 0).is_err());
    }

    #[test]
    fn edge_frequency_matches_target() {
        let mu = GraphLaw::from_table(2, vec![0.7, 0.3]).unwrap();
        let reps = 100_000u64;
        let hits = (0..reps).filter(|&s| universal_embed(&mu, 0.5, s).unwrap().edge_count() == 1).count();
        let f = hits as f64 / reps as f64;
        assert!((f - 0.3).abs() < 3.0 * (0.21 / reps as f64).sqrt(), "{f}");
    }

    #[test]
    fn output_is_the_induced_population_graph() {
        let mu = GraphLaw::ergm(&[crate::law::ErgmStat::Edges, crate::law::ErgmStat::Triangles], &[-1.0, 0.5], 4).unwrap();
        for seed in 0..50 {
            let e = universal_embed_traced(&mu, 0.3, seed).unwrap();
            assert!(e.vertices.windows(2).all(|w| w[0] < w[1]));
            let mut population = LazyPopulation::new(0.3, seed);
            for a in 1..=4u32 {
                for b in a + 1..=4 {
                    let present = population.has_edge(e.vertices[a as usize - 1], e.vertices[b as usize - 1]);
                    assert_eq!(e.graph.contains(Pair::sorted(a, b)), present);
                }
            }
        }
    }
}
