//! Predictive probability of an unobserved edge given data from a known
//! sampling mechanism, for an Erdős–Rényi population.
//!
//! [`predict_exact`] enumerates every population graph and every outcome of
//! the mechanism's randomness; [`predict_mc`] estimates the same conditional
//! probability by rejection sampling through the `sampling` module.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::gen_er;
use crate::graph::{pair_count, Pair, SimpleGraph};
use crate::rng::replicate_seed;
use crate::sampling::{edge_sample, snowball_chain, thin, vertex_sample};
use crate::scalar::Scalar;

/// Largest population handled by exact enumeration.
pub const MAX_EXACT_POPULATION: u32 = 4;

/// Fewest matching runs for which [`predict_mc`] reports an estimate.
pub const MIN_HITS: u64 = 100;

/// How the observed labeled edges were obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PredictMechanism {
    /// Vertices sampled uniformly without replacement and labeled uniformly;
    /// the induced graph is seen on every pair except the target.
    Vertex,
    /// Edges drawn uniformly with replacement, one per observed edge, labeled
    /// by order of discovery. The event is the exact labeled draw sequence.
    Edge,
    /// Chain snowball; the event is the exact sequence of traversed edges.
    SnowballChain,
    /// Each population edge kept with probability `1/rho`, population labels
    /// kept. The event fixes every pair among the query labels, so the
    /// target is seen as absent.
    Thin { rho: f64 },
}

impl PredictMechanism {
    pub fn parse(name: &str, rho: Option<f64>) -> Result<Self> {
        match name {
            "vertex" => Ok(PredictMechanism::Vertex),
            "edge" => Ok(PredictMechanism::Edge),
            "snowball" | "snowball-chain" => Ok(PredictMechanism::SnowballChain),
            "thin" => Ok(PredictMechanism::Thin { rho: rho.unwrap_or(3.0) }),
            other => Err(Error::invalid(format!(
                "unknown mechanism {other:?}; expected vertex, edge, snowball-chain or thin"
            ))),
        }
    }
}

impl PredictMechanism {
    pub fn name(&self) -> &'static str {
        match self {
            PredictMechanism::Vertex => "vertex",
            PredictMechanism::Edge => "edge",
            PredictMechanism::SnowballChain => "snowball-chain",
            PredictMechanism::Thin { .. } => "thin",
        }
    }
}

impl fmt::Display for PredictMechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredictMechanism::Vertex => write!(f, "vertex"),
            PredictMechanism::Edge => write!(f, "edge"),
            PredictMechanism::SnowballChain => write!(f, "snowball-chain"),
            PredictMechanism::Thin { rho } => write!(f, "thin rho={rho}"),
        }
    }
}

/// Probability that `target` is an edge of an ER(`p`) population on
/// `n_pop` vertices, given the observation event.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictiveQuery<T> {
    pub n_pop: u32,
    pub p: T,
    pub mechanism: PredictMechanism,
    pub observed: Vec<Pair>,
    pub target: Pair,
}

/// Parses `"1-2,2-3"`.
pub fn parse_edge_list(text: &str) -> Result<Vec<Pair>> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (a, b) = t
                .trim()
                .split_once('-')
                .ok_or_else(|| Error::invalid(format!("edge {t:?} is not of the form i-j")))?;
            let parse = |s: &str| s.trim().parse::<u32>().map_err(|_| Error::invalid(format!("bad label in {t:?}")));
            Pair::new(parse(a)?, parse(b)?)
        })
        .collect()
}

impl<T: Scalar> PredictiveQuery<T> {
    /// Observed `({1,2},{2,3})`, target `{1,3}`, population of three.
    pub fn standard(mechanism: PredictMechanism, p: T) -> Self {
        PredictiveQuery {
            n_pop: 3,
            p,
            mechanism,
            observed: vec![Pair::sorted(1, 2), Pair::sorted(2, 3)],
            target: Pair::sorted(1, 3),
        }
    }

    /// Number of labels the observation refers to.
    pub fn label_count(&self) -> u32 {
        self.observed.iter().chain([&self.target]).map(|e| e.hi()).max().unwrap_or(0)
    }

    fn retention(&self) -> Result<T> {
        match self.mechanism {
            PredictMechanism::Thin { rho } => {
                let rho = T::from_f64(rho).ok_or_else(|| Error::invalid("rho not representable"))?;
                Ok(T::one() / rho)
            }
            _ => Ok(T::one()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.p.is_probability() {
            return Err(Error::invalid(format!("p = {:?} is not a probability", self.p)));
        }
        if self.observed.contains(&self.target) {
            return Err(Error::invalid("target pair is among the observed edges"));
        }
        let labels = self.label_count();
        if labels > self.n_pop {
            return Err(Error::range("query label", labels as usize, 1, self.n_pop as usize));
        }
        match self.mechanism {
            PredictMechanism::Edge => {
                let seen = self.observed.iter().map(|e| e.hi()).max().unwrap_or(0);
                if self.observed.is_empty() || self.target.hi() > seen {
                    return Err(Error::invalid("edge sampling: target labels must appear in the observed edges"));
                }
            }
            PredictMechanism::Thin { rho } if !(rho >= 1.0 && rho.is_finite()) => {
                return Err(Error::invalid(format!("thinning factor rho = {rho} must be finite and at least 1")));
            }
            _ => {
                let mut sorted = self.observed.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::invalid("observed edges repeat; only edge sampling can draw an edge twice"));
                }
            }
        }
        Ok(())
    }

    /// The degenerate priors fix the target edge regardless of the data.
    fn degenerate(&self) -> Option<T> {
        if self.p == T::zero() {
            Some(T::zero())
        } else if self.p == T::one() {
            Some(T::one())
        } else {
            None
        }
    }
}

/// Joint weights accumulated over the enumeration.
struct Tally<T> {
    event: T,
    event_and_target: T,
}

impl<T: Scalar> Tally<T> {
    fn add(&mut self, weight: T, target_present: bool) {
        if target_present {
            self.event_and_target = self.event_and_target.clone() + weight.clone();
        }
        self.event = self.event.clone() + weight;
    }
}

fn graph_weight<T: Scalar>(p: &T, g: &SimpleGraph) -> T {
    let e = g.edge_count() as u32;
    p.powi(e) * (T::one() - p.clone()).powi(pair_count(g.n()) - e)
}

/// Exact `P(target ∈ G | observation)` by enumerating population graphs
/// (`n_pop ≤ 4`) and all outcomes of the mechanism's randomness.
pub fn predict_exact<T: Scalar>(q: &PredictiveQuery<T>) -> Result<T> {
    q.validate()?;
    if q.n_pop > MAX_EXACT_POPULATION {
        return Err(Error::Capacity {
            what: "exact prediction population",
            n: q.n_pop as usize,
            max: MAX_EXACT_POPULATION as usize,
        });
    }
    if let Some(v) = q.degenerate() {
        return Ok(v);
    }
    let retention = q.retention()?;
    let mut tally = Tally { event: T::zero(), event_and_target: T::zero() };
    for mask in 0..1u32 << pair_count(q.n_pop) {
        let g = SimpleGraph::from_mask(q.n_pop, mask);
        let w = graph_weight(&q.p, &g);
        match q.mechanism {
            PredictMechanism::Vertex => vertex_outcomes(q, &g, w, &mut tally),
            PredictMechanism::Edge => {
                let edges: Vec<Pair> = g.edges().collect();
                if !edges.is_empty() {
                    let draw = T::from_ratio(1, 2 * edges.len() as u64);
                    edge_draw(q, &g, &edges, &draw, &mut Vec::new(), 0, w, &mut tally);
                }
            }
            PredictMechanism::SnowballChain => chain_outcomes(q, &g, w, &mut Vec::new(), &mut tally),
            PredictMechanism::Thin { .. } => thin_outcomes(q, &g, w, &retention, &mut tally),
        }
    }
    if tally.event == T::zero() {
        return Err(Error::ZeroProbability(format!(
            "the observation has probability zero under {} sampling",
            q.mechanism
        )));
    }
    Ok(tally.event_and_target / tally.event)
}

/// Ordered samples of `L` distinct vertices, each with probability `1/(N)_L`.
fn vertex_outcomes<T: Scalar>(q: &PredictiveQuery<T>, g: &SimpleGraph, w: T, tally: &mut Tally<T>) {
    let labels = q.label_count();
    let falling: u64 = (0..labels).map(|i| u64::from(q.n_pop - i)).product();
    let each = w / T::from_ratio(falling, 1);
    let mut ids = Vec::with_capacity(labels as usize);
    for_each_arrangement(q.n_pop, labels, &mut ids, &mut |ids| {
        let id = |l: u32| ids[l as usize - 1];
        let agrees = crate::graph::pairs_within(labels).filter(|&e| e != q.target).all(|e| {
            g.has_edge(id(e.lo()), id(e.hi())) == q.observed.contains(&e)
        });
        if agrees {
            tally.add(each.clone(), g.has_edge(id(q.target.lo()), id(q.target.hi())));
        }
    });
}

fn for_each_arrangement(n: u32, len: u32, ids: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if ids.len() == len as usize {
        f(ids);
        return;
    }
    for v in 1..=n {
        if !ids.contains(&v) {
            ids.push(v);
            for_each_arrangement(n, len, ids, f);
            ids.pop();
        }
    }
}

/// Each draw picks a uniform edge and a uniform endpoint order, with
/// probability `draw = 1/(2e)`; vertices not yet labeled take the next labels
/// in that order.
#[allow(clippy::too_many_arguments)]
fn edge_draw<T: Scalar>(
    q: &PredictiveQuery<T>,
    g: &SimpleGraph,
    edges: &[Pair],
    draw: &T,
    ids: &mut Vec<u32>,
    t: usize,
    weight: T,
    tally: &mut Tally<T>,
) {
    if t == q.observed.len() {
        let (a, b) = (ids[q.target.lo() as usize - 1], ids[q.target.hi() as usize - 1]);
        tally.add(weight, g.has_edge(a, b));
        return;
    }
    let next = weight * draw.clone();
    for e in edges {
        for (a, b) in [(e.lo(), e.hi()), (e.hi(), e.lo())] {
            let before = ids.len();
            for v in [a, b] {
                if !ids.contains(&v) {
                    ids.push(v);
                }
            }
            let label = |v: u32| ids.iter().position(|&w| w == v).unwrap() as u32 + 1;
            if Pair::sorted(label(a), label(b)) == q.observed[t] {
                edge_draw(q, g, edges, draw, ids, t + 1, next.clone(), tally);
            }
            ids.truncate(before);
        }
    }
}

/// Chain snowball: start uniform, then step to a uniform unsampled neighbor,
/// or jump to a uniform unsampled vertex when none exists.
fn chain_outcomes<T: Scalar>(q: &PredictiveQuery<T>, g: &SimpleGraph, w: T, ids: &mut Vec<u32>, tally: &mut Tally<T>) {
    chain_step(q, g, w, ids, &mut Vec::new(), tally);
}

fn chain_step<T: Scalar>(
    q: &PredictiveQuery<T>,
    g: &SimpleGraph,
    weight: T,
    ids: &mut Vec<u32>,
    traversed: &mut Vec<Pair>,
    tally: &mut Tally<T>,
) {
    if ids.len() == q.label_count() as usize {
        if traversed.as_slice() == q.observed.as_slice() {
            let (a, b) = (ids[q.target.lo() as usize - 1], ids[q.target.hi() as usize - 1]);
            tally.add(weight, g.has_edge(a, b));
        }
        return;
    }
    let unsampled: Vec<u32> = (1..=g.n()).filter(|v| !ids.contains(v)).collect();
    let open: Vec<u32> = match ids.last() {
        Some(&cur) => unsampled.iter().copied().filter(|&v| g.has_edge(cur, v)).collect(),
        None => Vec::new(),
    };
    let (choices, step_edge) = if open.is_empty() {
        (unsampled, None)
    } else {
        let t = ids.len() as u32;
        (open, Some(Pair::sorted(t, t + 1)))
    };
    if let Some(e) = step_edge {
        if q.observed.get(traversed.len()) != Some(&e) {
            return;
        }
        traversed.push(e);
    }
    let each = weight / T::from_ratio(choices.len() as u64, 1);
    for v in choices {
        ids.push(v);
        chain_step(q, g, each.clone(), ids, traversed, tally);
        ids.pop();
    }
    if step_edge.is_some() {
        traversed.pop();
    }
}

/// Every retention pattern of the population edges.
fn thin_outcomes<T: Scalar>(q: &PredictiveQuery<T>, g: &SimpleGraph, w: T, r: &T, tally: &mut Tally<T>) {
    let edges: Vec<Pair> = g.edges().collect();
    let labels = q.label_count();
    for kept in 0..1u32 << edges.len() {
        let mut weight = w.clone();
        for i in 0..edges.len() {
            weight = weight * if kept >> i & 1 == 1 { r.clone() } else { T::one() - r.clone() };
        }
        let retained = |e: Pair| edges.iter().position(|&x| x == e).is_some_and(|i| kept >> i & 1 == 1);
        let agrees = crate::graph::pairs_within(labels).all(|e| retained(e) == q.observed.contains(&e));
        if agrees {
            tally.add(weight, g.contains(q.target));
        }
    }
}

/// Result of [`predict_mc`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum McOutcome {
    Estimate { probability: f64, std_error: f64, hits: u64 },
    /// Fewer than [`MIN_HITS`] runs matched the observation.
    Abstain { hits: u64 },
}

/// Rejection-sampling estimate of the predictive probability: simulate a
/// population and a sampling run, keep runs whose observation matches, and
/// report the fraction with the target edge.
pub fn predict_mc(q: &PredictiveQuery<f64>, reps: u64, seed: u64) -> Result<McOutcome> {
    q.validate()?;
    let labels = q.label_count();
    let run = |r: u64| -> Result<Option<bool>> {
        let s = replicate_seed(seed, r);
        let g = gen_er(q.p, q.n_pop, s)?;
        let target = |id: &dyn Fn(u32) -> u32| g.has_edge(id(q.target.lo()), id(q.target.hi()));
        Ok(match q.mechanism {
            PredictMechanism::Vertex => {
                let o = vertex_sample(&g, labels, s)?;
                let crate::Network::Simple(seen) = &o.graph else { unreachable!() };
                let agrees = crate::graph::pairs_within(labels)
                    .filter(|&e| e != q.target)
                    .all(|e| seen.contains(e) == q.observed.contains(&e));
                agrees.then(|| target(&|l| o.provenance[l as usize - 1]))
            }
            PredictMechanism::Edge => {
                if g.edge_count() == 0 {
                    return Ok(None);
                }
                let o = edge_sample(&g, q.observed.len(), s)?;
                (o.sampled_edges == q.observed).then(|| target(&|l| o.provenance[l as usize - 1]))
            }
            PredictMechanism::SnowballChain => {
                let o = snowball_chain(&g, labels, s)?;
                (o.sampled_edges == q.observed).then(|| target(&|l| o.provenance[l as usize - 1]))
            }
            PredictMechanism::Thin { rho } => {
                let t = thin(&g, rho, s)?;
                let agrees = crate::graph::pairs_within(labels).all(|e| t.contains(e) == q.observed.contains(&e));
                agrees.then(|| g.contains(q.target))
            }
        })
    };
    let (hits, successes) = (0..reps)
        .into_par_iter()
        .map(|r| {
            run(r).map(|o| match o {
                Some(present) => (1u64, present as u64),
                None => (0, 0),
            })
        })
        .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
    if hits < MIN_HITS {
        return Ok(McOutcome::Abstain { hits });
    }
    let f = successes as f64 / hits as f64;
    Ok(McOutcome::Estimate { probability: f, std_error: (f * (1.0 - f) / hits as f64).sqrt(), hits })
}
