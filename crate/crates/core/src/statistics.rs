//! Network statistics: edge density, sparsity traces, power-law fits and the
//! constant-mean check for exchangeable models.

use std::collections::HashSet;

use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::generators::ModelSpec;
use crate::graph::{DegreeProfile, Network, SimpleGraph};
use crate::rng::replicate_seed;
use crate::scalar::Scalar;

/// `ε(G) = 2e / (v(v-1))`.
pub fn edge_density<T: Scalar>(g: &SimpleGraph) -> Result<T> {
    density(g.edge_count(), g.n() as usize)
}

fn density<T: Scalar>(edges: usize, vertices: usize) -> Result<T> {
    if vertices < 2 {
        return Err(Error::UndefinedDensity(vertices));
    }
    let v = vertices as u64;
    Ok(T::from_ratio(edges as u64, v * (v - 1) / 2))
}

/// Edge densities of nested sub-networks.
#[derive(Debug, Clone, PartialEq)]
pub struct SparsityTrace {
    pub sizes: Vec<usize>,
    pub densities: Vec<f64>,
}

impl SparsityTrace {
    pub fn is_strictly_decreasing(&self) -> bool {
        self.densities.windows(2).all(|w| w[1] < w[0])
    }
}

/// Densities of `G|[n]` for a vertex-labeled graph, or of the projection of
/// the first `m` edges for an edge-labeled one.
///
/// A projected prefix touching fewer than two vertices has density 0.
pub fn sparsity_trace(g: &Network, sizes: &[usize]) -> Result<SparsityTrace> {
    if sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("trace sizes must be strictly increasing"));
    }
    let available = match g {
        Network::Simple(s) => s.n() as usize,
        Network::Multi(m) => m.m(),
    };
    if let Some(&last) = sizes.last() {
        if last > available {
            return Err(Error::range("trace size", last, 0, available));
        }
    }
    let densities = match g {
        Network::Simple(s) => sizes
            .iter()
            .map(|&n| edge_density(&s.restrict(n as u32)?))
            .collect::<Result<Vec<f64>>>()?,
        Network::Multi(m) => {
            let mut vertices = HashSet::new();
            let mut pairs = HashSet::new();
            let mut out = Vec::with_capacity(sizes.len());
            let mut taken = 0;
            for &size in sizes {
                for p in &m.pairs()[taken..size] {
                    vertices.insert(p.lo());
                    vertices.insert(p.hi());
                    pairs.insert(*p);
                }
                taken = size;
                out.push(density(pairs.len(), vertices.len()).unwrap_or(0.0));
            }
            out
        }
    };
    Ok(SparsityTrace { sizes: sizes.to_vec(), densities })
}

/// Log-log least-squares fit of a degree profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub gamma_hat: f64,
    pub k_min: usize,
    pub k_max: usize,
    pub r2: f64,
    pub points: usize,
}

/// Fits `N_k / v ∝ k^-γ` by least squares over `k ∈ [k_min, k_max]`, where
/// `k_max` is the largest degree with `N_k ≥ 5`. Degrees with `N_k = 0` are skipped.
pub fn fit_power_law(profile: &DegreeProfile, k_min: usize) -> Result<PowerLawFit> {
    const MIN_COUNT: usize = 5;
    const MIN_POINTS: usize = 5;
    let k_min = k_min.max(1);
    let k_max = profile
        .iter()
        .filter(|&(k, c)| k >= k_min && c >= MIN_COUNT)
        .map(|(k, _)| k)
        .max()
        .ok_or_else(|| Error::Fit(format!("no degree ≥ {k_min} occurs {MIN_COUNT} times")))?;
    let v = profile.vertex_count() as f64;
    let (xs, ys): (Vec<f64>, Vec<f64>) = profile
        .iter()
        .filter(|&(k, c)| (k_min..=k_max).contains(&k) && c > 0)
        .map(|(k, c)| ((k as f64).ln(), (c as f64 / v).ln()))
        .unzip();
    if xs.len() < MIN_POINTS {
        return Err(Error::Fit(format!("{} distinct degrees in [{k_min}, {k_max}], need {MIN_POINTS}", xs.len())));
    }
    let len = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / len;
    let my = ys.iter().sum::<f64>() / len;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    if slope >= 0.0 {
        return Err(Error::Fit(format!("degree counts do not decrease (slope {slope})")));
    }
    let r2 = if syy > 0.0 { sxy * sxy / (sxx * syy) } else { 1.0 };
    Ok(PowerLawFit { gamma_hat: -slope, k_min, k_max, r2, points: xs.len() })
}

/// Mean edge density of nested restrictions, per size.
#[derive(Debug, Clone, PartialEq)]
pub struct MartingaleReport {
    pub sizes: Vec<u32>,
    pub means: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub pass: bool,
}

/// Checks that `E ε(G|[n])` does not depend on `n`: all pairwise mean
/// differences must lie within three combined standard errors.
///
/// Each replicate draws one graph at the largest size and restricts it.
pub fn density_martingale_check(model: &ModelSpec, sizes: &[u32], reps: usize, seed: u64) -> Result<MartingaleReport> {
    if !matches!(model, ModelSpec::Er { .. } | ModelSpec::Graphon { .. } | ModelSpec::Ergm { .. }) {
        return Err(Error::invalid(format!(
            "model {} is not exchangeable; the constant-mean check needs ER, graphon or ERGM",
            model.name()
        )));
    }
    if sizes.is_empty() || sizes.iter().any(|&n| n < 2) {
        return Err(Error::invalid("sizes must be non-empty and at least 2"));
    }
    if reps < 2 {
        return Err(Error::invalid("need at least two replicates"));
    }
    let top = *sizes.iter().max().unwrap();
    let top = model.intrinsic_size().unwrap_or(top).max(top);
    let draws: Vec<Vec<f64>> = (0..reps as u64)
        .into_par_iter()
        .map(|r| -> Result<Vec<f64>> {
            let Network::Simple(g) = model.generate(Some(top), replicate_seed(seed, r))? else {
                unreachable!("exchangeable models are vertex-labeled")
            };
            sizes.iter().map(|&n| edge_density(&g.restrict(n)?)).collect()
        })
        .collect::<Result<_>>()?;
    let k = reps as f64;
    let mut means = Vec::with_capacity(sizes.len());
    let mut std_errors = Vec::with_capacity(sizes.len());
    for i in 0..sizes.len() {
        let mean = draws.iter().map(|d| d[i]).sum::<f64>() / k;
        let var = draws.iter().map(|d| (d[i] - mean).powi(2)).sum::<f64>() / (k - 1.0);
        means.push(mean);
        std_errors.push((var / k).sqrt());
    }
    let pass = (0..sizes.len()).all(|i| {
        (i + 1..sizes.len()).all(|j| {
            let tol = 3.0 * (std_errors[i].powi(2) + std_errors[j].powi(2)).sqrt();
            (means[i] - means[j]).abs() <= tol
        })
    });
    Ok(MartingaleReport { sizes: sizes.to_vec(), means, std_errors, pass })
}

/// Pearson goodness-of-fit result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Pearson χ² test of observed counts against cell probabilities.
///
/// Cells with zero probability are dropped; a count in such a cell gives p = 0.
pub fn chi_square_test(observed: &[u64], probs: &[f64]) -> Result<ChiSquareTest> {
    if observed.len() != probs.len() {
        return Err(Error::invalid("observed counts and probabilities differ in length"));
    }
    let total: u64 = observed.iter().sum();
    let mut statistic = 0.0;
    let mut cells = 0usize;
    for (&o, &p) in observed.iter().zip(probs) {
        if p <= 0.0 {
            if o > 0 {
                return Ok(ChiSquareTest { statistic: f64::INFINITY, dof: 0, p_value: 0.0 });
            }
            continue;
        }
        let e = p * total as f64;
        statistic += (o as f64 - e).powi(2) / e;
        cells += 1;
    }
    if cells < 2 {
        return Err(Error::invalid("χ² test needs at least two cells with positive probability"));
    }
    let dof = cells - 1;
    let dist = ChiSquared::new(dof as f64).map_err(|e| Error::invalid(e.to_string()))?;
    Ok(ChiSquareTest { statistic, dof, p_value: 1.0 - dist.cdf(statistic) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_edge_exch, Grid};
    use crate::graph::{pair_count, Multigraph, Permutation};
    use crate::Rational;

    #[test]
    fn density_examples() {
        assert_eq!(edge_density::<f64>(&SimpleGraph::complete(7)).unwrap(), 1.0);
        assert_eq!(edge_density::<f64>(&SimpleGraph::empty(7)).unwrap(), 0.0);
        assert_eq!(edge_density::<Rational>(&SimpleGraph::path(3)).unwrap(), Rational::from_ratio(2, 3));
        assert!(matches!(edge_density::<f64>(&SimpleGraph::empty(1)), Err(Error::UndefinedDensity(1))));
    }

    #[test]
    fn density_is_label_invariant() {
        let g = SimpleGraph::from_edges(5, [(1, 2), (2, 5), (3, 4)]).unwrap();
        for sigma in Permutation::all(5) {
            let h = g.relabel(&sigma).unwrap();
            assert_eq!(edge_density::<f64>(&h).unwrap(), edge_density::<f64>(&g).unwrap());
        }
    }

    #[test]
    fn trace_examples() {
        let t = sparsity_trace(&Network::Simple(SimpleGraph::empty(10)), &[2, 5, 10]).unwrap();
        assert_eq!(t.densities, vec![0.0; 3]);
        assert!(sparsity_trace(&Network::Simple(SimpleGraph::empty(10)), &[5, 5]).is_err());
        assert!(sparsity_trace(&Network::Simple(SimpleGraph::empty(10)), &[11]).is_err());
        let m = Multigraph::from_endpoints([(1, 2), (1, 2), (3, 4)]).unwrap();
        let t = sparsity_trace(&Network::Multi(m), &[1, 2, 3]).unwrap();
        assert_eq!(t.densities, vec![1.0, 1.0, 2.0 / 6.0]);
    }

    #[test]
    fn trace_of_er_stays_near_p() {
        let g = crate::generators::gen_er(0.3, 400, 2).unwrap();
        let t = sparsity_trace(&Network::Simple(g), &[100, 200, 400]).unwrap();
        for (&n, &d) in t.sizes.iter().zip(&t.densities) {
            let pairs = pair_count(n as u32) as f64;
            assert!((d - 0.3).abs() < 3.0 * (0.21 / pairs).sqrt(), "{n}: {d}");
        }
    }

    #[test]
    fn edge_exchangeable_trace_decreases() {
        let g = gen_edge_exch(0.6, 1.0, 10_000, 10_000, 5).unwrap();
        let t = sparsity_trace(&Network::Multi(g), &[100, 1000, 10_000]).unwrap();
        assert!(t.is_strictly_decreasing(), "{:?}", t.densities);
    }

    #[test]
    fn fit_recovers_constructed_exponent() {
        let profile = DegreeProfile::from_counts((1..=100).map(|k| (k, (1e6 / (k * k) as f64).round() as usize)));
        let fit = fit_power_law(&profile, 1).unwrap();
        assert!((fit.gamma_hat - 2.0).abs() < 0.05, "{fit:?}");
        assert!(fit.r2 > 0.99);
        assert_eq!(fit.k_max, 100);
    }

    #[test]
    fn fit_flags_geometric_profile() {
        let profile = DegreeProfile::from_counts((1..=200).map(|k| (k, (1e6 * 0.8f64.powi(k as i32)).round() as usize)));
        let fit = fit_power_law(&profile, 1).unwrap();
        assert!(fit.r2 < 0.9, "{fit:?}");
    }

    #[test]
    fn fit_is_scale_equivariant() {
        let base: Vec<(usize, usize)> = (1..=40).map(|k| (k, 10 + (5000.0 / (k as f64).powf(1.7)) as usize)).collect();
        let a = fit_power_law(&DegreeProfile::from_counts(base.clone()), 2).unwrap();
        let b = fit_power_law(&DegreeProfile::from_counts(base.iter().map(|&(k, c)| (k, 7 * c))), 2).unwrap();
        assert!((a.gamma_hat - b.gamma_hat).abs() < 1e-10);
    }

    #[test]
    fn fit_needs_support() {
        let profile = DegreeProfile::from_counts([(1, 100), (2, 50), (3, 20)]);
        assert!(matches!(fit_power_law(&profile, 1), Err(Error::Fit(_))));
        let flat = DegreeProfile::from_counts((1..=10).map(|k| (k, 10 * k)));
        assert!(matches!(fit_power_law(&flat, 1), Err(Error::Fit(_))));
    }

    #[test]
    fn martingale_check_examples() {
        let r = density_martingale_check(&ModelSpec::Er { p: 0.3 }, &[3, 10, 30], 2000, 1).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.means.iter().all(|m| (m - 0.3).abs() < 0.02));
        let grid = Grid::from_row_major(vec![0.9, 0.1, 0.1, 0.9]).unwrap();
        let r = density_martingale_check(&ModelSpec::Graphon { grid }, &[3, 10, 30], 2000, 1).unwrap();
        assert!(r.pass && r.means.iter().all(|m| (m - 0.5).abs() < 0.03), "{r:?}");
        let r = density_martingale_check(&ModelSpec::Er { p: 0.0 }, &[3, 10], 50, 1).unwrap();
        assert!(r.pass && r.means == vec![0.0, 0.0]);
    }

    #[test]
    fn martingale_check_rejects_non_exchangeable() {
        let sbm = ModelSpec::Sbm { p: 0.5, q: 0.1, blocks: crate::Partition::parse("1,1,2").unwrap() };
        assert!(density_martingale_check(&sbm, &[2, 3], 10, 0).is_err());
        assert!(density_martingale_check(&ModelSpec::Er { p: 0.3 }, &[1, 3], 10, 0).is_err());
    }

    #[test]
    fn martingale_check_is_reproducible() {
        let a = density_martingale_check(&ModelSpec::Er { p: 0.4 }, &[3, 8], 300, 9).unwrap();
        let b = density_martingale_check(&ModelSpec::Er { p: 0.4 }, &[3, 8], 300, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn chi_square_basics() {
        let t = chi_square_test(&[50, 50], &[0.5, 0.5]).unwrap();
        assert_eq!(t.statistic, 0.0);
        assert!((t.p_value - 1.0).abs() < 1e-12);
        let t = chi_square_test(&[90, 10], &[0.5, 0.5]).unwrap();
        assert!(t.p_value < 1e-10);
        assert_eq!(chi_square_test(&[1, 9], &[0.0, 1.0]).unwrap().p_value, 0.0);
        assert!(chi_square_test(&[1], &[1.0]).is_err());
    }
}
