use std::collections::VecDeque;

use rand::Rng;

use super::{Mechanism, Observation};
use crate::error::{Error, Result};
use crate::graph::{Network, Pair, SimpleGraph};
use crate::rng::{stream, Stream};

/// Endpoint pairs drawn by [`path_sample`] and the route found for each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathObservation {
    pub endpoints: Vec<(u32, u32)>,
    /// `None` when the endpoints are in different components.
    pub paths: Vec<Option<Vec<u32>>>,
}

impl PathObservation {
    /// Union of the path edges, vertices labeled by first appearance.
    pub fn to_observation(&self) -> Observation {
        let mut ids: Vec<u32> = Vec::new();
        let label = |v: u32, ids: &mut Vec<u32>| match ids.iter().position(|&w| w == v) {
            Some(i) => i as u32 + 1,
            None => {
                ids.push(v);
                ids.len() as u32
            }
        };
        let mut edges = Vec::new();
        for path in self.paths.iter().flatten() {
            let labels: Vec<u32> = path.iter().map(|&v| label(v, &mut ids)).collect();
            edges.extend(labels.windows(2).map(|w| Pair::sorted(w[0], w[1])));
        }
        let graph = SimpleGraph::from_pairs_unchecked(ids.len() as u32, edges.iter().copied());
        Observation::new(Network::Simple(graph), Mechanism::Path { pairs: self.endpoints.len() }, ids, edges)
    }
}

fn distances_to(adj: &[Vec<u32>], target: u32) -> Vec<Option<u32>> {
    let mut dist = vec![None; adj.len() + 1];
    dist[target as usize] = Some(0);
    let mut queue = VecDeque::from([target]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v as usize].unwrap();
        for &w in &adj[v as usize - 1] {
            if dist[w as usize].is_none() {
                dist[w as usize] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Lexicographically smallest shortest path from `s` to `t`.
fn shortest_path(adj: &[Vec<u32>], s: u32, t: u32) -> Option<Vec<u32>> {
    let dist = distances_to(adj, t);
    let mut d = dist[s as usize]?;
    let mut path = vec![s];
    let mut cur = s;
    while d > 0 {
        cur = *adj[cur as usize - 1].iter().find(|&&w| dist[w as usize] == Some(d - 1))?;
        path.push(cur);
        d -= 1;
    }
    Some(path)
}

/// Traceroute-style sampling: `k` uniform ordered pairs of distinct vertices,
/// each recorded with one shortest path between them.
pub fn path_sample(g: &SimpleGraph, k: usize, seed: u64) -> Result<PathObservation> {
    if g.n() < 2 && k > 0 {
        return Err(Error::Precondition("path sampling needs at least two vertices".into()));
    }
    let mut rng = stream(seed, Stream::PathSample);
    let adj = g.adjacency();
    let mut endpoints = Vec::with_capacity(k);
    let mut paths = Vec::with_capacity(k);
    for _ in 0..k {
        let s = rng.random_range(1..=g.n());
        let mut t = rng.random_range(1..g.n());
        if t >= s {
            t += 1;
        }
        endpoints.push((s, t));
        paths.push(shortest_path(&adj, s, t));
    }
    Ok(PathObservation { endpoints, paths })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let g = SimpleGraph::from_edges(2, [(1, 2)]).unwrap();
        let o = path_sample(&g, 1, 0).unwrap();
        assert!(o.paths[0] == Some(vec![1, 2]) || o.paths[0] == Some(vec![2, 1]));
        let star = SimpleGraph::star(3);
        for s in 0..20 {
            let o = path_sample(&star, 1, s).unwrap();
            let (a, b) = o.endpoints[0];
            let path = o.paths[0].as_ref().unwrap();
            let expected = if a == 1 || b == 1 { 2 } else { 3 };
            assert_eq!(path.len(), expected);
        }
        let path = SimpleGraph::path(3);
        assert_eq!(shortest_path(&path.adjacency(), 1, 3), Some(vec![1, 2, 3]));
    }

    #[test]
    fn lexicographic_tie_break_and_unreachable() {
        let cycle = SimpleGraph::from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        assert_eq!(shortest_path(&cycle.adjacency(), 1, 3), Some(vec![1, 2, 3]));
        assert_eq!(shortest_path(&cycle.adjacency(), 3, 1), Some(vec![3, 2, 1]));
        let split = SimpleGraph::from_edges(4, [(1, 2)]).unwrap();
        assert_eq!(shortest_path(&split.adjacency(), 1, 4), None);
    }

    #[test]
    fn paths_follow_edges_and_convert() {
        let g = crate::generators::gen_er(0.2, 30, 4).unwrap();
        let o = path_sample(&g, 25, 8).unwrap();
        for path in o.paths.iter().flatten() {
            assert!(path.windows(2).all(|w| g.has_edge(w[0], w[1])));
        }
        let obs = o.to_observation();
        let Network::Simple(s) = &obs.graph else { panic!() };
        for e in s.edges() {
            assert!(g.has_edge(obs.population_id(e.lo()).unwrap(), obs.population_id(e.hi()).unwrap()));
        }
    }
}
