//! Exact probability laws over labeled graphs on `{1..=n}` for small `n`.
//!
//! A law is a table indexed by the colex edge mask of each graph (see
//! [`SimpleGraph::to_mask`]). Restriction to `{1..=m}` keeps the low
//! `m(m-1)/2` bits of the mask, which makes marginals cheap.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{pair_count, Pair, Partition, Permutation, SimpleGraph, MAX_ENUMERATION_N};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct GraphLaw<T> {
    n: u32,
    probs: Vec<T>,
}

fn check_size(n: u32) -> Result<()> {
    if n > MAX_ENUMERATION_N {
        return Err(Error::Capacity { what: "exact law", n: n as usize, max: MAX_ENUMERATION_N as usize });
    }
    Ok(())
}

impl<T: Scalar> GraphLaw<T> {
    /// Wraps a probability table indexed by edge mask.
    pub fn from_table(n: u32, probs: Vec<T>) -> Result<Self> {
        check_size(n)?;
        if probs.len() != 1usize << pair_count(n) {
            return Err(Error::invalid(format!(
                "law on {n} vertices needs {} entries, got {}",
                1usize << pair_count(n),
                probs.len()
            )));
        }
        if probs.iter().any(|p| *p < T::zero()) {
            return Err(Error::invalid("negative probability in law table"));
        }
        Ok(GraphLaw { n, probs })
    }

    /// Normalizes nonnegative weights into a law.
    pub fn from_weights(n: u32, weights: Vec<T>) -> Result<Self> {
        let mut law = Self::from_table(n, weights)?;
        let total = law.total();
        if total == T::zero() {
            return Err(Error::invalid("weights sum to zero"));
        }
        for p in &mut law.probs {
            *p = p.clone() / total.clone();
        }
        Ok(law)
    }

    /// Law of a graph whose edges are independent with the given probabilities.
    pub fn independent_edges(n: u32, mut edge_prob: impl FnMut(Pair) -> T) -> Result<Self> {
        check_size(n)?;
        let pairs = pair_count(n);
        let q: Vec<T> = (0..pairs).map(|k| edge_prob(Pair::from_colex_index(k))).collect();
        if q.iter().any(|p| !p.is_probability()) {
            return Err(Error::invalid("edge probability outside [0,1]"));
        }
        let probs = (0..1u32 << pairs)
            .map(|mask| {
                q.iter().enumerate().fold(T::one(), |acc, (k, p)| {
                    if mask >> k & 1 == 1 {
                        acc * p.clone()
                    } else {
                        acc * (T::one() - p.clone())
                    }
                })
            })
            .collect();
        Ok(GraphLaw { n, probs })
    }

    pub fn erdos_renyi(n: u32, p: T) -> Result<Self> {
        Self::independent_edges(n, |_| p.clone())
    }

    /// Stochastic blockmodel law on `{1..=B.n}`.
    pub fn sbm(p: T, q: T, blocks: &Partition) -> Result<Self> {
        Self::independent_edges(blocks.n(), |e| {
            if blocks.same_block(e.lo(), e.hi()) {
                p.clone()
            } else {
                q.clone()
            }
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    pub fn prob(&self, g: &SimpleGraph) -> T {
        assert_eq!(g.n(), self.n, "graph size differs from law size");
        self.probs[g.to_mask() as usize].clone()
    }

    pub fn total(&self) -> T {
        self.probs.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    /// Probability that `pair` is an edge.
    pub fn edge_probability(&self, pair: Pair) -> T {
        let bit = pair.colex_index();
        self.probs
            .iter()
            .enumerate()
            .filter(|(mask, _)| mask >> bit & 1 == 1)
            .fold(T::zero(), |a, (_, p)| a + p.clone())
    }

    /// Law of the restriction `G|[m]`.
    pub fn marginal(&self, m: u32) -> Result<Self> {
        if m < 1 || m > self.n {
            return Err(Error::range("marginal size", m as usize, 1, self.n as usize));
        }
        let low = (1u32 << pair_count(m)) - 1;
        let mut probs = vec![T::zero(); 1usize << pair_count(m)];
        for (mask, p) in self.probs.iter().enumerate() {
            let slot = &mut probs[(mask as u32 & low) as usize];
            *slot = slot.clone() + p.clone();
        }
        Ok(GraphLaw { n: m, probs })
    }

    /// Law of `G^σ` when `G` follows `self`.
    pub fn relabel(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.len() != self.n {
            return Err(Error::invalid("permutation size differs from law size"));
        }
        let mut probs = vec![T::zero(); self.probs.len()];
        for (mask, p) in self.probs.iter().enumerate() {
            let image = SimpleGraph::from_mask(self.n, mask as u32).relabel(sigma)?.to_mask();
            probs[image as usize] = p.clone();
        }
        Ok(GraphLaw { n: self.n, probs })
    }

    fn same_support(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::invalid(format!("laws on {} and {} vertices", self.n, other.n)));
        }
        Ok(())
    }

    /// `½ Σ_G |P(G) − P'(G)|`.
    pub fn total_variation(&self, other: &Self) -> Result<T> {
        self.same_support(other)?;
        let sum = self
            .probs
            .iter()
            .zip(&other.probs)
            .fold(T::zero(), |acc, (a, b)| acc + a.abs_diff(b));
        Ok(sum / T::from_u64(2).expect("2 representable"))
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.same_support(other)?;
        Ok(self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| a.abs_diff(b))
            .fold(T::zero(), |m, d| if d > m { d } else { m }))
    }
}

/// Sufficient statistics available to the exact ERGM.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErgmStat {
    Edges,
    Triangles,
    TwoStars,
}

impl ErgmStat {
    pub fn evaluate(self, g: &SimpleGraph) -> f64 {
        match self {
            ErgmStat::Edges => g.edge_count() as f64,
            ErgmStat::TwoStars => g.degrees().iter().map(|&d| (d * d.saturating_sub(1) / 2) as f64).sum(),
            ErgmStat::Triangles => {
                let adj = g.adjacency();
                let mut count = 0usize;
                for e in g.edges() {
                    let (a, b) = (&adj[e.lo() as usize - 1], &adj[e.hi() as usize - 1]);
                    count += a.iter().filter(|&&w| w > e.hi() && b.binary_search(&w).is_ok()).count();
                }
                count as f64
            }
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name.trim() {
            "edges" => Ok(ErgmStat::Edges),
            "triangles" => Ok(ErgmStat::Triangles),
            "two-stars" | "twostars" | "2-stars" => Ok(ErgmStat::TwoStars),
            other => Err(Error::invalid(format!("unknown ERGM statistic {other:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ErgmStat::Edges => "edges",
            ErgmStat::Triangles => "triangles",
            ErgmStat::TwoStars => "two-stars",
        }
    }
}

pub(crate) fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

impl GraphLaw<f64> {
    /// `P(G) ∝ exp(Σ θ_i T_i(G))`, normalized by enumerating every graph.
    pub fn ergm(stats: &[ErgmStat], theta: &[f64], n: u32) -> Result<Self> {
        check_size(n)?;
        if stats.len() != theta.len() {
            return Err(Error::invalid("one natural parameter per statistic required"));
        }
        if theta.iter().any(|t| !t.is_finite()) {
            return Err(Error::invalid("natural parameters must be finite"));
        }
        let log_weights: Vec<f64> = (0..1u32 << pair_count(n))
            .map(|mask| {
                let g = SimpleGraph::from_mask(n, mask);
                stats.iter().zip(theta).map(|(s, t)| t * s.evaluate(&g)).sum()
            })
            .collect();
        let top = log_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self::from_weights(n, log_weights.iter().map(|w| (w - top).exp()).collect())
    }

    /// β-model: edge `{i,j}` independently with probability `logistic(β_i + β_j)`.
    pub fn beta_model(beta: &[f64]) -> Result<Self> {
        Self::independent_edges(beta.len() as u32, |e| {
            logistic(beta[e.lo() as usize - 1] + beta[e.hi() as usize - 1])
        })
    }

    /// Law of the piecewise-constant graphon `grid` on `n` vertices, obtained
    /// by averaging over the `k^n` equally likely cell assignments.
    pub fn graphon(grid: &crate::generators::Grid, n: u32) -> Result<Self> {
        check_size(n)?;
        let k = grid.k() as u64;
        let assignments = k.checked_pow(n).filter(|&a| a <= 1 << 20).ok_or({
            Error::Capacity { what: "graphon cell assignments", n: n as usize, max: 0 }
        })?;
        let mut probs = vec![0.0; 1usize << pair_count(n)];
        let mut cells = vec![0usize; n as usize];
        for code in 0..assignments {
            let mut c = code;
            for slot in cells.iter_mut() {
                *slot = (c % k) as usize;
                c /= k;
            }
            let cond = Self::independent_edges(n, |e| grid.cell(cells[e.lo() as usize - 1], cells[e.hi() as usize - 1]))?;
            for (acc, p) in probs.iter_mut().zip(cond.probs) {
                *acc += p / assignments as f64;
            }
        }
        Self::from_table(n, probs)
    }

    /// Checks the table is a probability distribution to within `tol`.
    pub fn validate_distribution(&self, tol: f64) -> Result<()> {
        if self.probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::invalid("law table has a negative or non-finite entry"));
        }
        let total = self.total();
        if (total - 1.0).abs() > tol {
            return Err(Error::invalid(format!("law table sums to {total}, not 1")));
        }
        Ok(())
    }

    /// Draws a graph by inverse-CDF lookup over the table.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> SimpleGraph {
        let u: f64 = rng.random::<f64>() * self.total();
        let mut acc = 0.0;
        let mut last_positive = 0;
        for (mask, &p) in self.probs.iter().enumerate() {
            if p > 0.0 {
                last_positive = mask;
                acc += p;
                if u < acc {
                    return SimpleGraph::from_mask(self.n, mask as u32);
                }
            }
        }
        SimpleGraph::from_mask(self.n, last_positive as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn er_law_is_uniform_at_half() {
        let law = GraphLaw::erdos_renyi(3, Rational::from_ratio(1, 2)).unwrap();
        assert!(law.probs().iter().all(|p| *p == Rational::from_ratio(1, 8)));
        assert_eq!(law.total(), Rational::from_ratio(1, 1));
    }

    #[test]
    fn marginal_of_er_is_er() {
        let p = Rational::from_ratio(3, 10);
        let law = GraphLaw::erdos_renyi(4, p.clone()).unwrap();
        assert_eq!(law.marginal(2).unwrap(), GraphLaw::erdos_renyi(2, p).unwrap());
    }

    #[test]
    fn triangle_and_two_star_counts() {
        let k4 = SimpleGraph::complete(4);
        assert_eq!(ErgmStat::Triangles.evaluate(&k4), 4.0);
        assert_eq!(ErgmStat::TwoStars.evaluate(&k4), 12.0);
        assert_eq!(ErgmStat::Edges.evaluate(&k4), 6.0);
        assert_eq!(ErgmStat::Triangles.evaluate(&SimpleGraph::path(4)), 0.0);
    }

    #[test]
    fn ergm_edges_only_matches_er() {
        let p: f64 = 0.3;
        let ergm = GraphLaw::ergm(&[ErgmStat::Edges], &[(p / (1.0 - p)).ln()], 3).unwrap();
        let er = GraphLaw::erdos_renyi(3, p).unwrap();
        assert!(ergm.max_abs_diff(&er).unwrap() < 1e-14);
    }

    #[test]
    fn relabel_law_of_sbm() {
        let b = Partition::from_blocks(3, &[&[1, 2], &[3]]).unwrap();
        let law = GraphLaw::sbm(0.8, 0.1, &b).unwrap();
        let sigma = Permutation::from_cycles(3, &[&[1, 3]]).unwrap();
        let moved = GraphLaw::sbm(0.8, 0.1, &b.relabel(&sigma).unwrap()).unwrap();
        assert!(law.relabel(&sigma).unwrap().max_abs_diff(&moved).unwrap() < 1e-15);
    }

    #[test]
    fn total_variation_bounds() {
        let a = GraphLaw::erdos_renyi(2, 0.2_f64).unwrap();
        let b = GraphLaw::erdos_renyi(2, 0.7).unwrap();
        assert!((a.total_variation(&b).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(a.total_variation(&a).unwrap(), 0.0);
        assert!(a.total_variation(&GraphLaw::erdos_renyi(3, 0.2).unwrap()).is_err());
    }

    #[test]
    fn table_validation() {
        assert!(GraphLaw::from_table(2, vec![0.5, 0.5]).is_ok());
        assert!(GraphLaw::from_table(2, vec![0.5]).is_err());
        assert!(GraphLaw::from_table(2, vec![1.5, -0.5]).is_err());
        assert!(GraphLaw::from_table(2, vec![0.5, 0.4]).unwrap().validate_distribution(1e-12).is_err());
        assert!(GraphLaw::<f64>::erdos_renyi(7, 0.5).is_err());
    }
}
