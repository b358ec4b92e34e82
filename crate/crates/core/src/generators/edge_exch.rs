//! Edge-exchangeable multigraphs driven by two-parameter stick-breaking weights.

use rand::distr::Distribution;
use rand_distr::weighted::WeightedAliasIndex;
use rand_distr::Beta;

use crate::error::{Error, Result};
use crate::graph::{Multigraph, Pair};
use crate::rng::{stream, Stream};

pub const MIN_TRUNCATION: usize = 100;

fn check_params(alpha: f64, theta: f64, truncation: usize) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!("α = {alpha} must lie in (0,1)")));
    }
    if !(theta > -alpha) || !theta.is_finite() {
        return Err(Error::invalid(format!("θ = {theta} must be finite and exceed -α")));
    }
    if truncation < MIN_TRUNCATION {
        return Err(Error::range("truncation K", truncation, MIN_TRUNCATION, usize::MAX));
    }
    Ok(())
}

/// First `K` stick-breaking weights with `V_k ~ Beta(1 − α, θ + kα)`,
/// renormalized to sum to one.
pub fn gem_weights(alpha: f64, theta: f64, truncation: usize, seed: u64) -> Result<Vec<f64>> {
    check_params(alpha, theta, truncation)?;
    let mut rng = stream(seed, Stream::EdgeExchWeights);
    let mut remaining = 1.0;
    let mut weights = Vec::with_capacity(truncation);
    for k in 1..=truncation {
        let stick = Beta::new(1.0 - alpha, theta + k as f64 * alpha)
            .map_err(|e| Error::invalid(format!("stick distribution: {e}")))?;
        let v = stick.sample(&mut rng);
        weights.push(remaining * v);
        remaining *= 1.0 - v;
    }
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) {
        return Err(Error::invalid("stick-breaking weights underflowed"));
    }
    weights.iter_mut().for_each(|w| *w /= total);
    Ok(weights)
}

/// Draws `m_edges` pairs `{V, V'}` conditionally i.i.d. with probability
/// `∝ W_v W_v'`, `v ≠ v'`. Vertices are named by stick index `1..=K`.
pub fn gen_edge_exch(alpha: f64, theta: f64, truncation: usize, m_edges: usize, seed: u64) -> Result<Multigraph> {
    let weights = gem_weights(alpha, theta, truncation, seed)?;
    let index = WeightedAliasIndex::new(weights).map_err(|e| Error::invalid(format!("weights: {e}")))?;
    let mut rng = stream(seed, Stream::EdgeExchPairs);
    let mut pairs = Vec::with_capacity(m_edges);
    while pairs.len() < m_edges {
        let a = index.sample(&mut rng) as u32 + 1;
        let b = index.sample(&mut rng) as u32 + 1;
        if a != b {
            pairs.push(Pair::sorted(a, b));
        }
    }
    Ok(Multigraph::new(pairs))
}
