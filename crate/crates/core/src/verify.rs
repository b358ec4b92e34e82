//! Named verification suites, runnable from the command line.
//!
//! Each suite returns one [`Check`] per property. [`Budget::Full`] uses the
//! replicate counts of the acceptance criteria; [`Budget::Quick`] scales them
//! down for smoke runs.

use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::{gen_edge_exch, gen_er, rel_exch_law, Grid, ModelSpec, SbmKernel};
use crate::graph::{DegreeProfile, Network, Partition};
use crate::inference::{
    estimate_reparam, identifiability_check, label_equivariance_check, mle_thinned_er, Bijection, Family, Verdict,
};
use crate::law::{ErgmStat, GraphLaw};
use crate::predict::{predict_exact, predict_mc, McOutcome, PredictMechanism, PredictiveQuery};
use crate::rng::replicate_seed;
use crate::sampling::{thin, universal_embed};
use crate::statistics::{chi_square_test, density_martingale_check, fit_power_law, sparsity_trace};

pub const SUITES: [&str; 11] = [
    "section-6-2",
    "mc-6-2",
    "martingale",
    "power-law",
    "sparsity",
    "estimators",
    "consistency",
    "universal",
    "rel-exch",
    "equivariance",
    "all",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    Full,
    Quick,
}

impl Budget {
    fn pick<T>(self, full: T, quick: T) -> T {
        match self {
            Budget::Full => full,
            Budget::Quick => quick,
        }
    }
}

/// Outcome of one property check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

pub const MECHANISMS: [PredictMechanism; 4] = [
    PredictMechanism::Vertex,
    PredictMechanism::Edge,
    PredictMechanism::SnowballChain,
    PredictMechanism::Thin { rho: 3.0 },
];

/// Predictive probability of `{1,3}` given `({1,2},{2,3})` in a population of
/// three, for each mechanism with the thinning retention of one third.
pub fn closed_form(mechanism: PredictMechanism, p: f64) -> Option<f64> {
    match mechanism {
        PredictMechanism::Vertex => Some(p),
        PredictMechanism::Edge => Some(4.0 * p / (9.0 - 5.0 * p)),
        PredictMechanism::SnowballChain => Some(p / (2.0 - p)),
        PredictMechanism::Thin { rho } if rho == 3.0 => Some(2.0 * p / (3.0 - p)),
        PredictMechanism::Thin { .. } => None,
    }
}

pub fn run_suite(name: &str, budget: Budget, seed: u64) -> Result<Vec<Check>> {
    match name {
        "section-6-2" => section_6_2(),
        "mc-6-2" => mc_6_2(budget, seed),
        "martingale" => martingale(budget, seed),
        "power-law" => power_law(budget, seed),
        "sparsity" => sparsity(budget, seed),
        "estimators" => estimators(budget, seed),
        "consistency" => consistency(),
        "universal" => universal(budget, seed),
        "rel-exch" => rel_exch(),
        "equivariance" => equivariance(),
        "all" => {
            let mut out = Vec::new();
            for suite in &SUITES[..SUITES.len() - 1] {
                out.extend(run_suite(suite, budget, seed)?);
            }
            Ok(out)
        }
        other => Err(Error::invalid(format!("unknown suite {other:?}; known: {}", SUITES.join(", ")))),
    }
}

fn section_6_2() -> Result<Vec<Check>> {
    let start = Instant::now();
    let mut out = Vec::new();
    for m in MECHANISMS {
        let mut worst: f64 = 0.0;
        for i in 1..=9 {
            let p = i as f64 / 10.0;
            let got = predict_exact(&PredictiveQuery::standard(m, p))?;
            worst = worst.max((got - closed_form(m, p).expect("standard mechanism")).abs());
        }
        out.push(Check::new(format!("exact {}", m.name()), worst <= 1e-12, format!("max error {worst:.2e} over p = 0.1..0.9")));
    }
    let elapsed = start.elapsed().as_secs_f64();
    out.push(Check::new("exact runtime", elapsed < 1.0, format!("{elapsed:.3} s")));
    Ok(out)
}

fn mc_6_2(budget: Budget, seed: u64) -> Result<Vec<Check>> {
    let reps = budget.pick(1_000_000, 50_000);
    let mut out = Vec::new();
    for m in MECHANISMS {
        let q = PredictiveQuery::standard(m, 0.5);
        let exact = predict_exact(&q)?;
        match predict_mc(&q, reps, seed)? {
            McOutcome::Estimate { probability, std_error, hits } => {
                let z = (probability - exact).abs() / std_error;
                out.push(Check::new(
                    format!("monte carlo {}", m.name()),
                    z <= 3.0,
                    format!("{probability:.6} ± {std_error:.6} vs exact {exact:.6} ({hits} hits, {z:.2} SE)"),
                ));
            }
            McOutcome::Abstain { hits } => {
                out.push(Check::new(format!("monte carlo {}", m.name()), false, format!("abstained after {hits} hits")))
            }
        }
    }
    Ok(out)
}

fn martingale(budget: Budget, seed: u64) -> Result<Vec<Check>> {
    let reps = budget.pick(10_000, 1_000);
    let sizes = [3, 10, 30];
    let models = [
        ("er", ModelSpec::Er { p: 0.3 }),
        ("graphon", ModelSpec::Graphon { grid: Grid::from_row_major(vec![0.9, 0.1, 0.1, 0.9])? }),
    ];
    models
        .into_iter()
        .map(|(label, model)| {
            let r = density_martingale_check(&model, &sizes, reps, seed)?;
            let means: Vec<String> = r.means.iter().zip(&r.std_errors).map(|(m, s)| format!("{m:.4}±{s:.4}")).collect();
            Ok(Check::new(format!("constant mean {label}"), r.pass, format!("sizes {sizes:?}: {}", means.join(", "))))
        })
        .collect()
}

/// Runs `runs` seeded replicates in parallel, returning them in index order.
fn replicates<T: Send>(runs: u64, seed: u64, f: impl Fn(u64) -> Result<T> + Sync) -> Result<Vec<T>> {
    (0..runs).into_par_iter().map(|r| f(replicate_seed(seed, r))).collect()
}

fn power_law(budget: Budget, seed: u64) -> Result<Vec<Check>> {
    let runs = budget.pick(20, 10);
    let (alpha, theta, truncation, m) = (0.6, 1.0, 100_000, 50_000);
    let gammas = replicates(runs, seed, |s| {
        let g = gen_edge_exch(alpha, theta, truncation, m, s)?;
        Ok(fit_power_law(&DegreeProfile::of_multi(&g), 2)?.gamma_hat)
    })?;
    let inside = gammas.iter().filter(|g| (1.45..=1.75).contains(*g)).count();
    let rate = inside as f64 / runs as f64;
    let mean = gammas.iter().sum::<f64>() / runs as f64;
    Ok(vec![Check::new(
        "power-law exponent",
        rate >= 0.9,
        format!("{inside}/{runs} fits in [1.45, 1.75], mean gamma_hat {mean:.3}, target {}", alpha + 1.0),
    )])
}

fn sparsity(budget: Budget, seed: u64) -> Result<Vec<Check>> {
    let runs = budget.pick(100, 10);
    let sizes = [1_000, 10_000, 100_000];
    let decreasing = replicates(runs, seed, |s| {
        let g = gen_edge_exch(0.6, 1.0, 100_000, sizes[2], s)?;
        Ok(sparsity_trace(&Network::Multi(g), &sizes)?.is_strictly_decreasing())
    })?;
    let count = decreasing.iter().filter(|&&d| d).count();
    Ok(vec![Check::new(
        "projected density decreasing",
        count as f64 >= 0.95 * runs as f64,
        format!("{count}/{runs} traces strictly decreasing at m = {sizes:?}"),
    )])
}

fn estimators(budget: Budget, seed: u64) -> Result<Vec<Check>> {
    let runs = budget.pick(200, 20);
    let n = 2000;
    let f = Bijection::theta_over_2_minus_theta();
    let truth = 0.5;
    let estimates = replicates(runs, seed, |s| {
        let population = gen_er(f.apply(truth), n, s)?;
        let observed = thin(&population, n as f64, s)?;
        let tilde = estimate_reparam(&observed, None, &f)?.get("theta_tilde").unwrap_or(f64::NAN);
        let mle = mle_thinned_er(&observed, None)?.get("theta_hat").unwrap_or(f64::NAN);
        Ok((tilde, mle))
    })?;
    let near = |v: f64, target: f64| (v - target).abs() <= 0.05;
    let tilde_hits = estimates.iter().filter(|e| near(e.0, truth)).count();
    let mle_hits = estimates.iter().filter(|e| near(e.1, f.apply(truth))).count();
    let mean = |k: fn(&(f64, f64)) -> f64| estimates.iter().map(k).sum::<f64>() / runs as f64;
    let need = (0.95 * runs as f64).ceil() as usize;
    Ok(vec![
        Check::new(
            "reparameterized estimator near theta",
            tilde_hits >= need,
            format!("{tilde_hits}/{runs} within 0.05 of {truth}, mean {:.4}", mean(|e| e.0)),
        ),
        Check::new(
            "mle near f of theta",
            mle_hits >= need,
            format!("{mle_hits}/{runs} within 0.05 of 1/3, mean {:.4}", mean(|e| e.1)),
        ),
    ])
}

fn consistency() -> Result<Vec<Check>> {
    let beta = [0.4, -0.7, 1.1];
    let beta_tv = GraphLaw::beta_model(&beta)?.marginal(2)?.total_variation(&GraphLaw::beta_model(&beta[..2])?)?;
    let stats = [ErgmStat::Edges, ErgmStat::Triangles];
    let theta = [-1.0, 0.5];
    let ergm_tv = GraphLaw::ergm(&stats, &theta, 3)?.marginal(2)?.total_variation(&GraphLaw::ergm(&stats, &theta, 2)?)?;
    Ok(vec![
        Check::new("beta-model consistent", beta_tv <= 1e-12, format!("TV(n=3 restricted, n=2) = {beta_tv:.2e}")),
        Check::new("ergm inconsistent", ergm_tv > 1e-3, format!("TV(n=3 restricted, n=2) = {ergm_tv:.4e}")),
    ])
}

fn universal(budget: Budget, seed: u64) -> Result<Vec<Check>> {
    let start = Instant::now();
    let runs = budget.pick(100_000, 10_000);
    let target = GraphLaw::ergm(&[ErgmStat::Edges, ErgmStat::Triangles], &[-1.0, 0.5], 3)?;
    let masks = replicates(runs, seed, |s| Ok(universal_embed(&target, 0.5, s)?.to_mask()))?;
    let mut counts = vec![0u64; target.probs().len()];
    for m in masks {
        counts[m as usize] += 1;
    }
    let test = chi_square_test(&counts, target.probs())?;
    let elapsed = start.elapsed().as_secs_f64();
    Ok(vec![
        Check::new(
            "universal embedding law",
            test.p_value > 0.01,
            format!("chi2 = {:.3}, dof {}, p = {:.4}, {runs} runs", test.statistic, test.dof, test.p_value),
        ),
        Check::new("universal embedding runtime", elapsed < 60.0, format!("{elapsed:.2} s")),
    ])
}

fn rel_exch() -> Result<Vec<Check>> {
    let mut worst: f64 = 0.0;
    for (p, q) in [(0.8, 0.1), (0.5, 0.5)] {
        for b in Partition::all(3) {
            let law = rel_exch_law(&[p, q], &b, &SbmKernel, 3, 1)?;
            worst = worst.max(law.max_abs_diff(&GraphLaw::sbm(p, q, &b)?)?);
        }
    }
    let b = Partition::from_blocks(4, &[&[1, 2], &[3], &[4]])?;
    let b2 = Partition::from_blocks(4, &[&[1, 2], &[3, 4]])?;
    let restricted = rel_exch_law(&[0.8, 0.1], &b, &SbmKernel, 3, 1)?
        .max_abs_diff(&rel_exch_law(&[0.8, 0.1], &b2, &SbmKernel, 3, 1)?)?;
    Ok(vec![
        Check::new("sbm kernel matches blockmodel", worst <= 1e-12, format!("max per-graph difference {worst:.2e}")),
        Check::new(
            "law depends on structure through its restriction",
            restricted <= 1e-12,
            format!("B = {b}, B' = {b2}: difference on [3] {restricted:.2e}"),
        ),
    ])
}

fn equivariance() -> Result<Vec<Check>> {
    let (report, _) = label_equivariance_check(4, 0.8, 0.1, 1e-12)?;
    let er = identifiability_check(Family::ErdosRenyi, 2)?;
    let sbm = identifiability_check(Family::Sbm, 3)?;
    Ok(vec![
        Check::new("er relabeling trivial", report.er <= 1e-12, format!("max deviation {:.2e}", report.er)),
        Check::new("sbm relabeling acts on B", report.sbm <= 1e-12, format!("max deviation {:.2e}", report.sbm)),
        Check::new(
            "er identifiable",
            er.verdict == Verdict::CompletelyIdentifiable,
            format!("{}: min law distance {:.3}", er.verdict, er.distance),
        ),
        Check::new(
            "sbm not identifiable",
            sbm.verdict == Verdict::NotCompletelyIdentifiable,
            format!("{}: {}", sbm.verdict, sbm.detail),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_at_one_half() {
        let v: Vec<f64> = MECHANISMS.iter().map(|&m| closed_form(m, 0.5).unwrap()).collect();
        assert!((v[1] - 0.307692).abs() < 1e-6 && (v[3] - 0.4).abs() < 1e-12);
        assert_eq!(closed_form(PredictMechanism::Thin { rho: 2.0 }, 0.5), None);
    }

    #[test]
    fn exact_suites_pass() {
        for suite in ["section-6-2", "consistency", "rel-exch", "equivariance"] {
            for c in run_suite(suite, Budget::Quick, 0).unwrap() {
                assert!(c.pass, "{suite}: {c:?}");
            }
        }
        assert!(run_suite("nope", Budget::Quick, 0).is_err());
    }
}
