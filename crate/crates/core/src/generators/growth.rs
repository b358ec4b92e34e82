//! Vertex-arrival growth models producing trees.

use rand::distr::Distribution;
use rand::Rng;
use rand_distr::weighted::WeightedTreeIndex;

use crate::error::{Error, Result};
use crate::graph::{Multigraph, Pair};
use crate::rng::{stream, Stream};

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > -1.0) || !delta.is_finite() {
        return Err(Error::invalid(format!("δ = {delta} must be finite and exceed -1")));
    }
    Ok(())
}

fn check_size(n_vertices: u32) -> Result<()> {
    if n_vertices < 2 {
        return Err(Error::range("n_vertices", n_vertices as usize, 2, u32::MAX as usize));
    }
    Ok(())
}

fn tree_error(e: rand_distr::weighted::Error) -> Error {
    Error::invalid(format!("attachment weights: {e}"))
}

/// Preferential attachment from the seed edge `{1,2}`: vertex `t` attaches
/// to an existing `v` with probability proportional to `deg(v) + δ`.
pub fn gen_pa(delta: f64, n_vertices: u32, seed: u64) -> Result<Multigraph> {
    check_delta(delta)?;
    check_size(n_vertices)?;
    let mut rng = stream(seed, Stream::PreferentialAttachment);
    let mut pairs = vec![Pair::sorted(1, 2)];
    // Index k holds vertex k + 1.
    let mut weights = WeightedTreeIndex::new([1.0 + delta, 1.0 + delta]).map_err(tree_error)?;
    let mut degree = vec![1usize, 1];
    for t in 3..=n_vertices {
        let target = weights.sample(&mut rng);
        pairs.push(Pair::sorted(target as u32 + 1, t));
        degree[target] += 1;
        weights.update(target, degree[target] as f64 + delta).map_err(tree_error)?;
        degree.push(1);
        weights.push(1.0 + delta).map_err(tree_error)?;
    }
    Ok(Multigraph::new(pairs))
}

/// Superstar model. Vertex 1 is the superstar; vertex 2 must attach to it.
/// Each later vertex joins vertex 1 with probability `p`, otherwise attaches
/// preferentially (`deg + δ`) among the non-superstar vertices.
pub fn gen_superstar(p: f64, delta: f64, n_vertices: u32, seed: u64) -> Result<Multigraph> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::invalid(format!("superstar probability {p} must lie in (0,1)")));
    }
    check_delta(delta)?;
    check_size(n_vertices)?;
    let mut rng = stream(seed, Stream::Superstar);
    let mut pairs = vec![Pair::sorted(1, 2)];
    // Index k holds vertex k + 2.
    let mut weights = WeightedTreeIndex::new([1.0 + delta]).map_err(tree_error)?;
    let mut degree = vec![1usize];
    for t in 3..=n_vertices {
        if rng.random::<f64>() < p {
            pairs.push(Pair::sorted(1, t));
        } else {
            let k = weights.sample(&mut rng);
            pairs.push(Pair::sorted(k as u32 + 2, t));
            degree[k] += 1;
            weights.update(k, degree[k] as f64 + delta).map_err(tree_error)?;
        }
        degree.push(1);
        weights.push(1.0 + delta).map_err(tree_error)?;
    }
    Ok(Multigraph::new(pairs))
}
