use std::collections::BTreeSet;

use rand::seq::{index, SliceRandom};
use rand::Rng;

use super::{Mechanism, Observation};
use crate::error::{Error, Result};
use crate::graph::{Network, Pair, SimpleGraph};
use crate::rng::{stream, Stream, StreamRng};

fn check_size(n: u32, available: u32) -> Result<()> {
    if n > available {
        return Err(Error::range("sample size", n as usize, 0, available as usize));
    }
    Ok(())
}

fn induced_observation(g: &SimpleGraph, ids: Vec<u32>, mechanism: Mechanism) -> Result<Observation> {
    let observed = g.induced(&ids)?;
    let edges = observed.edges().collect();
    Ok(Observation::new(Network::Simple(observed), mechanism, ids, edges))
}

/// Restriction to the units labeled `1..=n` (vertices, or edges of a multigraph).
pub fn canonical(g: &Network, n: u32) -> Result<Observation> {
    match g {
        Network::Simple(s) => {
            let r = s.restrict(n)?;
            let edges = r.edges().collect();
            Ok(Observation::new(Network::Simple(r), Mechanism::Canonical, (1..=n).collect(), edges))
        }
        Network::Multi(m) => {
            let r = m.prefix(n as usize)?;
            let edges = r.pairs().to_vec();
            let ids: Vec<u32> = r.vertices().into_iter().collect();
            let mut o = Observation::new(Network::Multi(r), Mechanism::Canonical, ids, edges);
            // Edge-labeled restriction keeps the population vertex names.
            o.label_map = o.provenance.iter().map(|&v| (v, v)).collect();
            Ok(o)
        }
    }
}

/// `n` vertices uniformly without replacement, labeled by a uniform bijection.
pub fn vertex_sample(g: &SimpleGraph, n: u32, seed: u64) -> Result<Observation> {
    check_size(n, g.n())?;
    let mut rng = stream(seed, Stream::VertexSample);
    let mut ids: Vec<u32> = (1..=g.n()).collect();
    let (chosen, _) = ids.partial_shuffle(&mut rng, n as usize);
    induced_observation(g, chosen.to_vec(), Mechanism::Vertex)
}

/// `k` edges uniformly with replacement.
///
/// The first edge's endpoints get labels 1 and 2 in uniform order; later
/// vertices get the next free label as they are discovered, two at once in
/// uniform order.
pub fn edge_sample(g: &SimpleGraph, k: usize, seed: u64) -> Result<Observation> {
    let edges: Vec<Pair> = g.edges().collect();
    if edges.is_empty() {
        return Err(Error::Precondition("edge sampling needs at least one edge".into()));
    }
    let mut rng = stream(seed, Stream::EdgeSample);
    let mut ids: Vec<u32> = Vec::new();
    let mut draws = Vec::with_capacity(k);
    for _ in 0..k {
        let e = edges[rng.random_range(0..edges.len())];
        let (a, b) = if rng.random_bool(0.5) { (e.lo(), e.hi()) } else { (e.hi(), e.lo()) };
        for v in [a, b] {
            if !ids.contains(&v) {
                ids.push(v);
            }
        }
        draws.push(e);
    }
    let label = |v: u32| ids.iter().position(|&w| w == v).unwrap() as u32 + 1;
    let labeled: Vec<Pair> = draws.iter().map(|e| e.map(label)).collect();
    let observed = SimpleGraph::from_pairs_unchecked(ids.len() as u32, labeled.iter().copied());
    Ok(Observation::new(Network::Simple(observed), Mechanism::Edge { draws: k }, ids, labeled))
}

/// Breadth-first snowball from a uniform seed vertex.
pub fn snowball_full(g: &SimpleGraph, quota: u32, seed: u64) -> Result<Observation> {
    check_size(quota, g.n())?;
    if quota == 0 {
        return induced_observation(g, Vec::new(), Mechanism::SnowballFull);
    }
    let mut rng = stream(seed, Stream::SnowballFull);
    let start = rng.random_range(1..=g.n());
    snowball_from(g, quota, start, &mut rng)
}

/// Breadth-first snowball from a given population vertex.
pub fn snowball_full_from(g: &SimpleGraph, quota: u32, start: u32, seed: u64) -> Result<Observation> {
    check_size(quota, g.n())?;
    if start == 0 || start > g.n() {
        return Err(Error::range("start vertex", start as usize, 1, g.n() as usize));
    }
    if quota == 0 {
        return induced_observation(g, Vec::new(), Mechanism::SnowballFull);
    }
    snowball_from(g, quota, start, &mut stream(seed, Stream::SnowballFull))
}

fn snowball_from(g: &SimpleGraph, quota: u32, start: u32, rng: &mut StreamRng) -> Result<Observation> {
    let adj = g.adjacency();
    let quota = quota as usize;
    let mut sampled = vec![false; g.n() as usize + 1];
    let mut ids = vec![start];
    sampled[start as usize] = true;
    let mut frontier = vec![start];
    while ids.len() < quota {
        let mut next: BTreeSet<u32> = BTreeSet::new();
        for &v in &frontier {
            next.extend(adj[v as usize - 1].iter().copied().filter(|&w| !sampled[w as usize]));
        }
        let mut next: Vec<u32> = next.into_iter().collect();
        if next.is_empty() {
            // Component exhausted: restart from a uniform unsampled vertex.
            let rest: Vec<u32> = (1..=g.n()).filter(|&v| !sampled[v as usize]).collect();
            next = vec![rest[rng.random_range(0..rest.len())]];
        } else if ids.len() + next.len() > quota {
            let mut keep: Vec<usize> = index::sample(rng, next.len(), quota - ids.len()).into_vec();
            keep.sort_unstable();
            next = keep.into_iter().map(|i| next[i]).collect();
        }
        for &v in &next {
            sampled[v as usize] = true;
        }
        ids.extend_from_slice(&next);
        frontier = next;
    }
    induced_observation(g, ids, Mechanism::SnowballFull)
}

/// Chain snowball: each step moves to a uniform unsampled neighbor of the
/// current vertex, or to a uniform unsampled vertex when there is none.
///
/// `sampled_edges` holds the traversed edges; fallback jumps add none.
pub fn snowball_chain(g: &SimpleGraph, n: u32, seed: u64) -> Result<Observation> {
    check_size(n, g.n())?;
    let mut rng = stream(seed, Stream::SnowballChain);
    let adj = g.adjacency();
    let mut sampled = vec![false; g.n() as usize + 1];
    let mut ids = Vec::with_capacity(n as usize);
    let mut traversed = Vec::new();
    while ids.len() < n as usize {
        let step = match ids.last() {
            None => None,
            Some(&cur) => {
                let open: Vec<u32> = adj[cur as usize - 1].iter().copied().filter(|&w| !sampled[w as usize]).collect();
                (!open.is_empty()).then(|| open[rng.random_range(0..open.len())])
            }
        };
        let v = match step {
            Some(v) => {
                let t = ids.len() as u32;
                traversed.push(Pair::sorted(t, t + 1));
                v
            }
            None => {
                let rest: Vec<u32> = (1..=g.n()).filter(|&v| !sampled[v as usize]).collect();
                rest[rng.random_range(0..rest.len())]
            }
        };
        sampled[v as usize] = true;
        ids.push(v);
    }
    let observed = g.induced(&ids)?;
    Ok(Observation::new(Network::Simple(observed), Mechanism::SnowballChain, ids, traversed))
}

/// Keeps each edge independently with probability `1/rho`; the vertex set is unchanged.
pub fn thin(g: &SimpleGraph, rho: f64, seed: u64) -> Result<SimpleGraph> {
    if !(rho >= 1.0 && rho.is_finite()) {
        return Err(Error::invalid(format!("thinning factor rho = {rho} must be finite and at least 1")));
    }
    let mut rng = stream(seed, Stream::Thin);
    let keep = 1.0 / rho;
    let kept: Vec<Pair> = g.edges().filter(|_| rng.random::<f64>() < keep).collect();
    Ok(SimpleGraph::from_pairs_unchecked(g.n(), kept))
}

/// [`thin`] wrapped as an observation; labels are the population labels.
pub fn thin_observation(g: &SimpleGraph, rho: f64, seed: u64) -> Result<Observation> {
    let t = thin(g, rho, seed)?;
    let edges = t.edges().collect();
    Ok(Observation::new(Network::Simple(t), Mechanism::Thin { rho }, (1..=g.n()).collect(), edges))
}
