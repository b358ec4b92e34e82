//! Relatively exchangeable graphs built from a `{0,1}`-valued kernel
//! `g(φ, ψ|[i∨j], U_0, U_i, U_j, U_ij)` of i.i.d. uniforms.

use std::collections::HashMap;

use rand::Rng;

use crate::graph::pairs_within;
use crate::error::{Error, Result};
use crate::graph::{Pair, Partition, PartitionPrefix, SimpleGraph};
use crate::law::{logistic, GraphLaw};
use crate::rng::{stream, Stream};

/// The four uniforms a kernel sees for pair `{i,j}`, `i < j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelUniforms {
    pub global: f64,
    pub first: f64,
    pub second: f64,
    pub pair: f64,
}

pub trait Kernel {
    /// Whether `{i,j}` (`i < j`) is an edge. `psi` is restricted to `[j]`.
    fn connect(&self, phi: &[f64], psi: PartitionPrefix<'_>, i: u32, j: u32, u: &KernelUniforms) -> bool;
}

impl<F> Kernel for F
where
    F: Fn(&[f64], PartitionPrefix<'_>, u32, u32, &KernelUniforms) -> bool,
{
    fn connect(&self, phi: &[f64], psi: PartitionPrefix<'_>, i: u32, j: u32, u: &KernelUniforms) -> bool {
        self(phi, psi, i, j, u)
    }
}

/// Blockmodel kernel, `φ = (p, q)`:
/// `1{U_ij ≤ p}·1{i ≈ j} + 1{U_ij ≤ q}·1{i ≉ j}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SbmKernel;

impl Kernel for SbmKernel {
    fn connect(&self, phi: &[f64], psi: PartitionPrefix<'_>, i: u32, j: u32, u: &KernelUniforms) -> bool {
        let threshold = if psi.same_block(i, j) { phi[0] } else { phi[1] };
        u.pair <= threshold
    }
}

/// `1{U_ij ≤ φ_0}`, ignoring the structure.
#[derive(Debug, Clone, Copy, Default)]
pub struct ThresholdKernel;

impl Kernel for ThresholdKernel {
    fn connect(&self, phi: &[f64], _: PartitionPrefix<'_>, _: u32, _: u32, u: &KernelUniforms) -> bool {
        u.pair <= phi[0]
    }
}

/// Covariate kernel, `φ = θ`: `1{U_ij ≤ logistic(Σ_d θ_d (x_{i,d} + x_{j,d}))}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovariateKernel {
    x: Vec<Vec<f64>>,
}

impl CovariateKernel {
    pub fn new(x: Vec<Vec<f64>>) -> Self {
        CovariateKernel { x }
    }
}

impl Kernel for CovariateKernel {
    fn connect(&self, phi: &[f64], _: PartitionPrefix<'_>, i: u32, j: u32, u: &KernelUniforms) -> bool {
        let (xi, xj) = (&self.x[i as usize - 1], &self.x[j as usize - 1]);
        let eta: f64 = phi.iter().zip(xi.iter().zip(xj)).map(|(t, (a, b))| t * (a + b)).sum();
        u.pair <= logistic(eta)
    }
}

/// Lazily realized `U_0, (U_i), (U_ij)`. Each entry is read from a fixed
/// position of its seeded stream, so its value does not depend on access order.
#[derive(Debug, Clone)]
pub struct LatentUniforms {
    seed: u64,
    global: Option<f64>,
    vertex: HashMap<u32, f64>,
    pair: HashMap<Pair, f64>,
}

impl LatentUniforms {
    pub fn new(seed: u64) -> Self {
        LatentUniforms { seed, global: None, vertex: HashMap::new(), pair: HashMap::new() }
    }

    fn draw(seed: u64, id: Stream, index: u64) -> f64 {
        let mut rng = stream(seed, id);
        rng.set_word_pos(u128::from(index) * 2);
        rng.random()
    }

    pub fn global(&mut self) -> f64 {
        let seed = self.seed;
        *self.global.get_or_insert_with(|| Self::draw(seed, Stream::LatentGlobal, 0))
    }

    pub fn vertex(&mut self, i: u32) -> f64 {
        let seed = self.seed;
        *self.vertex.entry(i).or_insert_with(|| Self::draw(seed, Stream::LatentVertex, u64::from(i - 1)))
    }

    pub fn pair(&mut self, p: Pair) -> f64 {
        let seed = self.seed;
        *self.pair.entry(p).or_insert_with(|| Self::draw(seed, Stream::LatentPair, u64::from(p.colex_index())))
    }

    pub fn for_pair(&mut self, p: Pair) -> KernelUniforms {
        KernelUniforms {
            global: self.global(),
            first: self.vertex(p.lo()),
            second: self.vertex(p.hi()),
            pair: self.pair(p),
        }
    }

    pub fn realized(&self) -> usize {
        usize::from(self.global.is_some()) + self.vertex.len() + self.pair.len()
    }
}

fn check_structure(psi: &Partition, n: u32) -> Result<()> {
    if psi.n() < n {
        return Err(Error::invalid(format!("structure covers {} units, need {n}", psi.n())));
    }
    Ok(())
}

/// Sets `{i,j}` iff `g(φ, ψ|[i∨j], U_0, U_i, U_j, U_ij) = 1`.
pub fn gen_rel_exch<K: Kernel + ?Sized>(phi: &[f64], psi: &Partition, kernel: &K, n: u32, seed: u64) -> Result<SimpleGraph> {
    check_structure(psi, n)?;
    let mut latent = LatentUniforms::new(seed);
    let edges: Vec<Pair> = pairs_within(n)
        .filter(|&e| {
            let u = latent.for_pair(e);
            kernel.connect(phi, psi.prefix(e.hi()), e.lo(), e.hi(), &u)
        })
        .collect();
    Ok(SimpleGraph::from_pairs_unchecked(n, edges))
}

/// Exact law of [`gen_rel_exch`] on `n ≤ 6` vertices.
///
/// The kernel must be nonincreasing in `U_ij` (true for threshold kernels).
/// The `U_ij` integral is then the location of the threshold, found by
/// bisection to machine precision. `U_0, U_1..U_n` are integrated with a
/// midpoint rule of `points` nodes per axis, which is exact for kernels that
/// ignore them.
pub fn rel_exch_law<K: Kernel + ?Sized>(
    phi: &[f64],
    psi: &Partition,
    kernel: &K,
    n: u32,
    points: usize,
) -> Result<GraphLaw<f64>> {
    check_structure(psi, n)?;
    if points == 0 {
        return Err(Error::invalid("quadrature needs at least one node"));
    }
    let axes = n as usize + 1;
    let nodes = points.checked_pow(axes as u32).filter(|&c| c <= 1 << 22).ok_or({
        Error::Capacity { what: "rel-exch quadrature nodes", n: n as usize, max: 1 << 22 }
    })?;
    let mid = |k: usize| (k as f64 + 0.5) / points as f64;
    let mut total = vec![0.0; 1usize << crate::graph::pair_count(n)];
    let mut coords = vec![0.0; axes];
    for code in 0..nodes {
        let mut c = code;
        for slot in coords.iter_mut() {
            *slot = mid(c % points);
            c /= points;
        }
        let law = GraphLaw::independent_edges(n, |e| {
            let edge_at = |u_pair: f64| {
                let u = KernelUniforms {
                    global: coords[0],
                    first: coords[e.lo() as usize],
                    second: coords[e.hi() as usize],
                    pair: u_pair,
                };
                kernel.connect(phi, psi.prefix(e.hi()), e.lo(), e.hi(), &u)
            };
            pair_threshold(edge_at)
        })?;
        for (acc, p) in total.iter_mut().zip(law.probs()) {
            *acc += p / nodes as f64;
        }
    }
    GraphLaw::from_table(n, total)
}

/// Lebesgue measure of `{u ∈ [0,1] : f(u)}` for a nonincreasing indicator `f`.
fn pair_threshold(f: impl Fn(f64) -> bool) -> f64 {
    if f(1.0) {
        return 1.0;
    }
    if !f(0.0) {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..128 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn latent_uniforms_are_order_independent() {
        let mut a = LatentUniforms::new(5);
        let mut b = LatentUniforms::new(5);
        let p = Pair::new(2, 7).unwrap();
        let first = a.pair(p);
        b.vertex(3);
        b.pair(Pair::new(1, 2).unwrap());
        assert_eq!(b.pair(p), first);
        assert_eq!(a.pair(p), first);
        assert_eq!(a.vertex(3), b.vertex(3));
        assert!((0.0..1.0).contains(&a.global()));
        assert_eq!(a.realized(), 3);
    }

    #[test]
    fn zero_kernel_gives_empty_graph() {
        let zero = |_: &[f64], _: PartitionPrefix<'_>, _: u32, _: u32, _: &KernelUniforms| false;
        let g = gen_rel_exch(&[], &Partition::singletons(6), &zero, 6, 1).unwrap();
        assert_eq!(g, SimpleGraph::empty(6));
    }

    #[test]
    fn threshold_search() {
        assert_eq!(pair_threshold(|u| u <= 1.0), 1.0);
        assert_eq!(pair_threshold(|u| u < 0.0), 0.0);
        assert!((pair_threshold(|u| u <= 0.8) - 0.8).abs() < 1e-15);
        assert!(pair_threshold(|u| u <= 0.0).abs() < 1e-15);
    }

    #[test]
    fn structure_must_cover_sample() {
        assert!(gen_rel_exch(&[0.5, 0.5], &Partition::singletons(2), &SbmKernel, 3, 0).is_err());
    }

    #[test]
    fn covariate_kernel_law_matches_direct_probabilities() {
        let x = vec![vec![1.0], vec![-1.0], vec![0.0]];
        let law = rel_exch_law(&[1.0], &Partition::singletons(3), &CovariateKernel::new(x.clone()), 3, 1).unwrap();
        let probs = super::super::independent::covariate_edge_probabilities(&[1.0], &x).unwrap();
        let direct = GraphLaw::independent_edges(3, probs).unwrap();
        assert!(law.max_abs_diff(&direct).unwrap() < 1e-12);
    }
}
