//! Estimators that account for the sampling mechanism, and exact checks of
//! identifiability and label equivariance on small graphs.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Partition, Permutation, SimpleGraph};
use crate::law::GraphLaw;
use crate::scalar::Scalar;
use crate::statistics::edge_density;

/// Point estimates from one estimator run.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateReport {
    pub estimator: &'static str,
    /// Named estimates in reporting order.
    pub estimates: Vec<(&'static str, f64)>,
    pub n: u32,
    /// Whether the upper bound of the parameter range was active.
    pub clipped: bool,
}

impl EstimateReport {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.estimates.iter().find(|(k, _)| *k == name).map(|&(_, v)| v)
    }
}

fn thinned_er_parts(obs: &SimpleGraph, rho: Option<f64>) -> Result<(f64, f64, bool)> {
    let n = obs.n();
    if n < 2 {
        return Err(Error::UndefinedDensity(n as usize));
    }
    let rho = rho.unwrap_or(n as f64);
    if !(rho >= 1.0 && rho.is_finite()) {
        return Err(Error::invalid(format!("thinning factor rho = {rho} must be finite and at least 1")));
    }
    let p_hat: f64 = edge_density(obs)?;
    let scaled = rho * p_hat;
    Ok((p_hat, scaled.min(1.0), scaled > 1.0))
}

/// Maximum likelihood estimate of θ for an ER(θ) population observed after
/// retaining each edge with probability `1/rho`: `θ̂ = min(rho·p̂, 1)`.
///
/// `rho` defaults to the number of observed vertices.
pub fn mle_thinned_er(obs: &SimpleGraph, rho: Option<f64>) -> Result<EstimateReport> {
    let (p_hat, theta, clipped) = thinned_er_parts(obs, rho)?;
    Ok(EstimateReport {
        estimator: "thinned-er",
        estimates: vec![("p_hat", p_hat), ("theta_hat", theta)],
        n: obs.n(),
        clipped,
    })
}

type Map = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// A bijection of `[0, 1]` given with its inverse.
pub struct Bijection {
    name: String,
    forward: Map,
    inverse: Map,
}

impl fmt::Debug for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Bijection").field("name", &self.name).finish_non_exhaustive()
    }
}

impl Bijection {
    pub const NAMES: [&'static str; 2] = ["identity", "theta-over-2-minus-theta"];

    /// Checks `f(f⁻¹(y)) = y` to 1e-10 on a grid of 101 points in `[0, 1]`.
    pub fn new(
        name: impl Into<String>,
        forward: impl Fn(f64) -> f64 + Send + Sync + 'static,
        inverse: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let name = name.into();
        for i in 0..=100 {
            let y = i as f64 / 100.0;
            let x = inverse(y);
            if !(0.0..=1.0).contains(&x) || (forward(x) - y).abs() > 1e-10 {
                return Err(Error::invalid(format!("{name}: inverse check fails at y = {y}")));
            }
        }
        Ok(Bijection { name, forward: Box::new(forward), inverse: Box::new(inverse) })
    }

    pub fn identity() -> Self {
        Self::new("identity", |x| x, |y| y).expect("identity is its own inverse")
    }

    /// `f(θ) = θ / (2 - θ)`, `f⁻¹(y) = 2y / (1 + y)`.
    pub fn theta_over_2_minus_theta() -> Self {
        Self::new("theta-over-2-minus-theta", |t| t / (2.0 - t), |y| 2.0 * y / (1.0 + y))
            .expect("closed-form inverse")
    }

    pub fn named(name: &str) -> Result<Self> {
        match name {
            "identity" => Ok(Self::identity()),
            "theta-over-2-minus-theta" => Ok(Self::theta_over_2_minus_theta()),
            other => Err(Error::invalid(format!(
                "unknown bijection {other:?}; known: {}",
                Self::NAMES.join(", ")
            ))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, x: f64) -> f64 {
        (self.forward)(x)
    }

    pub fn invert(&self, y: f64) -> f64 {
        (self.inverse)(y)
    }
}

/// `θ̃ = f⁻¹(min(rho·p̂, 1))`: consistent for θ when the population is ER(f(θ)).
pub fn estimate_reparam(obs: &SimpleGraph, rho: Option<f64>, f: &Bijection) -> Result<EstimateReport> {
    let (p_hat, y, clipped) = thinned_er_parts(obs, rho)?;
    Ok(EstimateReport {
        estimator: "reparam",
        estimates: vec![("p_hat", p_hat), ("y", y), ("theta_tilde", f.invert(y))],
        n: obs.n(),
        clipped,
    })
}

/// Within-block and between-block edge fractions for a known partition.
pub fn mle_sbm_rates(obs: &SimpleGraph, blocks: &Partition) -> Result<EstimateReport> {
    if blocks.n() != obs.n() {
        return Err(Error::invalid(format!("partition covers {} vertices, graph has {}", blocks.n(), obs.n())));
    }
    let n = obs.n();
    let (mut within, mut between) = (0u64, 0u64);
    let (mut within_edges, mut between_edges) = (0u64, 0u64);
    for j in 2..=n {
        for i in 1..j {
            let edge = obs.has_edge(i, j) as u64;
            if blocks.same_block(i, j) {
                within += 1;
                within_edges += edge;
            } else {
                between += 1;
                between_edges += edge;
            }
        }
    }
    if within == 0 || between == 0 {
        let missing = if within == 0 { "within-block" } else { "between-block" };
        return Err(Error::DegenerateDesign(format!("no {missing} pairs")));
    }
    Ok(EstimateReport {
        estimator: "sbm-rates",
        estimates: vec![
            ("p_hat", within_edges as f64 / within as f64),
            ("q_hat", between_edges as f64 / between as f64),
        ],
        n,
        clipped: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    ErdosRenyi,
    Sbm,
}

impl Family {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "er" => Ok(Family::ErdosRenyi),
            "sbm" => Ok(Family::Sbm),
            other => Err(Error::Unsupported(format!("identifiability check for family {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    CompletelyIdentifiable,
    NotCompletelyIdentifiable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::CompletelyIdentifiable => "completely-identifiable",
            Verdict::NotCompletelyIdentifiable => "not-completely-identifiable",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentifiabilityReport {
    pub family: Family,
    pub n: u32,
    pub verdict: Verdict,
    /// ER: smallest distance between laws of distinct grid parameters.
    /// SBM: distance between the witness laws at size `n`.
    pub distance: f64,
    pub detail: String,
}

/// Grid used for the ER witness.
pub const ER_GRID: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

/// Exact identifiability verdict under canonical sampling to `n ≤ 3` vertices.
///
/// ER: distinct grid parameters give distinct laws. SBM: two partitions of
/// `[4]` that differ but agree on `[n]` give the same law on `[n]`.
pub fn identifiability_check(family: Family, n: u32) -> Result<IdentifiabilityReport> {
    if !(2..=3).contains(&n) {
        return Err(Error::range("identifiability size", n as usize, 2, 3));
    }
    match family {
        Family::ErdosRenyi => {
            let laws: Vec<GraphLaw<f64>> =
                ER_GRID.iter().map(|&p| GraphLaw::erdos_renyi(n, p)).collect::<Result<_>>()?;
            let mut distance = f64::INFINITY;
            for (i, a) in laws.iter().enumerate() {
                for b in &laws[i + 1..] {
                    distance = distance.min(a.max_abs_diff(b)?);
                }
            }
            let verdict = if distance > 1e-6 { Verdict::CompletelyIdentifiable } else { Verdict::NotCompletelyIdentifiable };
            Ok(IdentifiabilityReport {
                family,
                n,
                verdict,
                distance,
                detail: format!("{} grid parameters give pairwise distinct laws", ER_GRID.len()),
            })
        }
        Family::Sbm => {
            let b = Partition::from_blocks(4, &[&[1, 2], &[3], &[4]])?;
            let b2 = Partition::from_blocks(4, &[&[1, 2], &[3, 4]])?;
            let (p, q) = (0.8, 0.1);
            let full = GraphLaw::sbm(p, q, &b)?;
            let full2 = GraphLaw::sbm(p, q, &b2)?;
            let distance = full.marginal(n)?.max_abs_diff(&full2.marginal(n)?)?;
            let population_distance = full.max_abs_diff(&full2)?;
            let verdict = if distance <= 1e-12 && population_distance > 1e-6 {
                Verdict::NotCompletelyIdentifiable
            } else {
                Verdict::CompletelyIdentifiable
            };
            Ok(IdentifiabilityReport {
                family,
                n,
                verdict,
                distance,
                detail: format!("B = {b} and B' = {b2} agree on [{n}]; laws on [4] differ by {population_distance:.3}"),
            })
        }
    }
}

/// Largest deviations found by [`label_equivariance_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivarianceReport {
    /// `max |σ·ER(p) - ER(p)|` over permutations σ.
    pub er: f64,
    /// `max |σ·SBM(p,q,B) - SBM(p,q,σB)|` over σ and partitions B.
    pub sbm: f64,
    pub pass: bool,
}

/// Checks the relabeling actions of ER (trivial) and the SBM (`B ↦ σB`)
/// exactly over every permutation and partition of `[n]`, `n ≤ 4`.
pub fn label_equivariance_check<T: Scalar>(n: u32, p: T, q: T, tol: T) -> Result<(EquivarianceReport, T)> {
    if !(1..=4).contains(&n) {
        return Err(Error::range("equivariance size", n as usize, 1, 4));
    }
    let er = GraphLaw::erdos_renyi(n, p.clone())?;
    let mut worst_er = T::zero();
    let mut worst_sbm = T::zero();
    let partitions = Partition::all(n);
    let sbm_laws: Vec<GraphLaw<T>> =
        partitions.iter().map(|b| GraphLaw::sbm(p.clone(), q.clone(), b)).collect::<Result<_>>()?;
    for sigma in Permutation::all(n) {
        let d = er.relabel(&sigma)?.max_abs_diff(&er)?;
        if d > worst_er {
            worst_er = d;
        }
        for (b, law) in partitions.iter().zip(&sbm_laws) {
            let moved = GraphLaw::sbm(p.clone(), q.clone(), &b.relabel(&sigma)?)?;
            let d = law.relabel(&sigma)?.max_abs_diff(&moved)?;
            if d > worst_sbm {
                worst_sbm = d;
            }
        }
    }
    let worst = if worst_er > worst_sbm { worst_er.clone() } else { worst_sbm.clone() };
    let pass = worst <= tol;
    let report = EquivarianceReport { er: worst_er.to_f64_lossy(), sbm: worst_sbm.to_f64_lossy(), pass };
    Ok((report, worst))
}

/// `log L(θ | G̃)` for the thinned ER likelihood with retention `1/rho`.
pub fn thinned_er_log_likelihood(obs: &SimpleGraph, rho: f64, theta: f64) -> f64 {
    let pairs = crate::graph::pair_count(obs.n()) as f64;
    let e = obs.edge_count() as f64;
    let r = theta / rho;
    let term = |count: f64, prob: f64| if count == 0.0 { 0.0 } else { count * prob.ln() };
    term(e, r) + term(pairs - e, 1.0 - r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_graphs;
    use crate::Rational;

    #[test]
    fn mle_examples() {
        let mut g = SimpleGraph::empty(10);
        for (a, b) in [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (4, 5), (6, 7), (8, 9), (9, 10)] {
            g.add_edge(crate::Pair::new(a, b).unwrap()).unwrap();
        }
        let r = mle_thinned_er(&g, None).unwrap();
        assert!((r.get("p_hat").unwrap() - 0.2).abs() < 1e-15);
        assert_eq!(r.get("theta_hat"), Some(1.0));
        assert!(r.clipped);
        let r = mle_thinned_er(&SimpleGraph::empty(5), None).unwrap();
        assert_eq!(r.get("theta_hat"), Some(0.0));
        assert!(!r.clipped);
        assert!(mle_thinned_er(&SimpleGraph::empty(1), None).is_err());
        assert!(mle_thinned_er(&SimpleGraph::empty(3), Some(0.5)).is_err());
    }

    #[test]
    fn mle_maximizes_likelihood() {
        for g in enumerate_graphs(3).unwrap() {
            let closed = mle_thinned_er(&g, None).unwrap().get("theta_hat").unwrap();
            let best = (0..=10_000)
                .map(|i| i as f64 / 10_000.0)
                .max_by(|&a, &b| {
                    thinned_er_log_likelihood(&g, 3.0, a).total_cmp(&thinned_er_log_likelihood(&g, 3.0, b))
                })
                .unwrap();
            assert!((best - closed).abs() < 1e-3, "{g:?}: {best} vs {closed}");
        }
    }

    #[test]
    fn reparam_identity_matches_mle() {
        let g = crate::generators::gen_er(0.01, 200, 3).unwrap();
        let a = mle_thinned_er(&g, None).unwrap();
        let b = estimate_reparam(&g, None, &Bijection::identity()).unwrap();
        assert_eq!(a.get("theta_hat").unwrap().to_bits(), b.get("theta_tilde").unwrap().to_bits());
        let r = estimate_reparam(&SimpleGraph::empty(4), None, &Bijection::theta_over_2_minus_theta()).unwrap();
        assert_eq!(r.get("theta_tilde"), Some(0.0));
    }

    #[test]
    fn bijection_validation() {
        let f = Bijection::theta_over_2_minus_theta();
        assert!((f.apply(0.5) - 1.0 / 3.0).abs() < 1e-15);
        assert!((f.invert(1.0 / 3.0) - 0.5).abs() < 1e-15);
        assert!(Bijection::new("bad", |x| x, |y| y * y).is_err());
        assert!(Bijection::named("square").is_err());
        for name in Bijection::NAMES {
            assert_eq!(Bijection::named(name).unwrap().name(), name);
        }
    }

    #[test]
    fn sbm_rates_examples() {
        assert!(matches!(
            mle_sbm_rates(&SimpleGraph::complete(4), &Partition::singletons(4)),
            Err(Error::DegenerateDesign(_))
        ));
        assert!(mle_sbm_rates(&SimpleGraph::complete(4), &Partition::one_block(4)).is_err());
        let r = mle_sbm_rates(&SimpleGraph::complete(5), &Partition::parse("1,1,2,2,1").unwrap()).unwrap();
        assert_eq!((r.get("p_hat"), r.get("q_hat")), (Some(1.0), Some(1.0)));
        let r = mle_sbm_rates(&SimpleGraph::path(4), &Partition::parse("1,1,2,2").unwrap()).unwrap();
        assert_eq!((r.get("p_hat"), r.get("q_hat")), (Some(1.0), Some(0.25)));
        assert!(mle_sbm_rates(&SimpleGraph::path(4), &Partition::parse("1,1,2").unwrap()).is_err());
    }

    #[test]
    fn identifiability_verdicts() {
        let er = identifiability_check(Family::ErdosRenyi, 2).unwrap();
        assert_eq!(er.verdict, Verdict::CompletelyIdentifiable);
        assert!(er.distance > 0.05);
        let sbm = identifiability_check(Family::Sbm, 3).unwrap();
        assert_eq!(sbm.verdict, Verdict::NotCompletelyIdentifiable);
        assert!(sbm.distance <= 1e-12);
        assert!(identifiability_check(Family::Sbm, 4).is_err());
        assert!(Family::parse("ergm").is_err());
    }

    #[test]
    fn sbm_witness_is_exact_in_rationals() {
        let p = Rational::from_ratio(4, 5);
        let q = Rational::from_ratio(1, 10);
        let b = Partition::from_blocks(4, &[&[1, 2], &[3], &[4]]).unwrap();
        let b2 = Partition::from_blocks(4, &[&[1, 2], &[3, 4]]).unwrap();
        let a = GraphLaw::sbm(p.clone(), q.clone(), &b).unwrap().marginal(3).unwrap();
        let c = GraphLaw::sbm(p, q, &b2).unwrap().marginal(3).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn degenerate_sbm_is_er() {
        let er = GraphLaw::erdos_renyi(3, 0.4).unwrap();
        for b in Partition::all(3) {
            assert!(GraphLaw::sbm(0.4, 0.4, &b).unwrap().max_abs_diff(&er).unwrap() < 1e-15);
        }
    }

    #[test]
    fn equivariance_holds_exactly() {
        let (report, worst) = label_equivariance_check(4, 0.8, 0.1, 1e-12).unwrap();
        assert!(report.pass && worst < 1e-15, "{report:?}");
        let (report, worst) =
            label_equivariance_check(3, Rational::from_ratio(4, 5), Rational::from_ratio(1, 10), Rational::from_ratio(0, 1))
                .unwrap();
        assert!(report.pass);
        assert_eq!(worst, Rational::from_ratio(0, 1));
    }
}
