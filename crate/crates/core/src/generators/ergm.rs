use crate::error::Result;
use crate::graph::SimpleGraph;
use crate::law::{ErgmStat, GraphLaw};
use crate::rng::{stream, Stream};

/// Exact draw from `P(G) ∝ exp(Σ θ_i T_i(G))` on `n ≤ 6` vertices.
pub fn gen_ergm_exact(stats: &[ErgmStat], theta: &[f64], n: u32, seed: u64) -> Result<SimpleGraph> {
    let law = GraphLaw::ergm(stats, theta, n)?;
    Ok(law.sample(&mut stream(seed, Stream::Ergm)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn capacity_guard() {
        assert!(matches!(
            gen_ergm_exact(&[ErgmStat::Edges], &[0.0], 7, 0),
            Err(Error::Capacity { .. })
        ));
        assert!(gen_ergm_exact(&[ErgmStat::Edges], &[0.0, 1.0], 3, 0).is_err());
    }

    #[test]
    fn strongly_negative_edges_gives_empty() {
        let g = gen_ergm_exact(&[ErgmStat::Edges], &[-60.0], 4, 2).unwrap();
        assert_eq!(g.edge_count(), 0);
    }
}
