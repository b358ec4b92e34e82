//! Generators whose edges are conditionally independent given latent variables.
//!
//! Each draws one uniform per pair in colex order, so `G|[m]` from an
//! `n`-vertex run equals the `m`-vertex run with the same seed.

use rand::Rng;

use super::grid::Grid;
use crate::error::{Error, Result};
use crate::graph::{pairs_within, Pair, Partition, SimpleGraph};
use crate::law::logistic;
use crate::rng::{stream, Stream, StreamRng};

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("{name} = {p} is not a probability")));
    }
    Ok(())
}

fn bernoulli_pairs(n: u32, rng: &mut StreamRng, mut prob: impl FnMut(Pair) -> f64) -> SimpleGraph {
    let edges: Vec<Pair> = pairs_within(n)
        .filter(|&e| {
            let u: f64 = rng.random();
            u < prob(e)
        })
        .collect();
    SimpleGraph::from_pairs_unchecked(n, edges)
}

/// Erdős–Rényi graph: every pair independently with probability `p`.
pub fn gen_er(p: f64, n: u32, seed: u64) -> Result<SimpleGraph> {
    check_probability("p", p)?;
    Ok(bernoulli_pairs(n, &mut stream(seed, Stream::Er), |_| p))
}

/// β-model: pair `{i,j}` with probability `logistic(β_i + β_j)`.
pub fn gen_beta(beta: &[f64], seed: u64) -> Result<SimpleGraph> {
    if beta.iter().any(|b| b.is_nan()) {
        return Err(Error::invalid("β entries must not be NaN"));
    }
    let n = beta.len() as u32;
    Ok(bernoulli_pairs(n, &mut stream(seed, Stream::Beta), |e| {
        logistic(beta[e.lo() as usize - 1] + beta[e.hi() as usize - 1])
    }))
}

/// Stochastic blockmodel on `{1..=B.n}`: `p` within blocks, `q` across.
pub fn gen_sbm(p: f64, q: f64, blocks: &Partition, seed: u64) -> Result<SimpleGraph> {
    check_probability("p", p)?;
    check_probability("q", q)?;
    Ok(bernoulli_pairs(blocks.n(), &mut stream(seed, Stream::Sbm), |e| {
        if blocks.same_block(e.lo(), e.hi()) {
            p
        } else {
            q
        }
    }))
}

/// Draws `U_1..U_n`, then each pair with probability `h(U_i, U_j)`.
pub fn gen_graphon(grid: &Grid, n: u32, seed: u64) -> Result<SimpleGraph> {
    let mut vertex_rng = stream(seed, Stream::GraphonVertex);
    let u: Vec<f64> = (0..n).map(|_| vertex_rng.random()).collect();
    Ok(bernoulli_pairs(n, &mut stream(seed, Stream::GraphonPair), |e| {
        grid.eval(u[e.lo() as usize - 1], u[e.hi() as usize - 1])
    }))
}

/// Covariate model: pair `{i,j}` with probability `logistic(Σ_d θ_d (x_{i,d} + x_{j,d}))`.
pub fn gen_covariate(theta: &[f64], x: &[Vec<f64>], seed: u64) -> Result<SimpleGraph> {
    let probs = covariate_edge_probabilities(theta, x)?;
    let n = x.len() as u32;
    Ok(bernoulli_pairs(n, &mut stream(seed, Stream::Covariate), probs))
}

/// Edge-probability map of the covariate model, after dimension checks.
pub fn covariate_edge_probabilities<'a>(
    theta: &'a [f64],
    x: &'a [Vec<f64>],
) -> Result<impl Fn(Pair) -> f64 + 'a> {
    if let Some((i, row)) = x.iter().enumerate().find(|(_, row)| row.len() != theta.len()) {
        return Err(Error::invalid(format!(
            "covariate vector of vertex {} has length {}, θ has {}",
            i + 1,
            row.len(),
            theta.len()
        )));
    }
    Ok(move |e: Pair| {
        let (xi, xj) = (&x[e.lo() as usize - 1], &x[e.hi() as usize - 1]);
        logistic(theta.iter().zip(xi.iter().zip(xj)).map(|(t, (a, b))| t * (a + b)).sum())
    })
}
