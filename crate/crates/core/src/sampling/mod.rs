//! Sampling mechanisms: maps from a population network to observed data.
//!
//! Every mechanism is a pure function of the population, its parameters and a
//! seed. Observed labels are `1..=k` for the `k` sampled units; `provenance`
//! lists the population ids in label order.

mod mechanisms;
mod path;
mod universal;

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

pub use mechanisms::{
    canonical, edge_sample, snowball_chain, snowball_full, snowball_full_from, thin, thin_observation, vertex_sample,
};
pub use path::{path_sample, PathObservation};
pub use universal::{universal_embed, universal_embed_traced, Embedding, SCAN_CAP};

use crate::graph::{Network, Pair};

/// Which mechanism produced an observation, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mechanism {
    Canonical,
    Vertex,
    Edge { draws: usize },
    SnowballFull,
    SnowballChain,
    Thin { rho: f64 },
    Path { pairs: usize },
    Universal { p: f64 },
}

impl fmt::Display for Mechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mechanism::Canonical => write!(f, "canonical"),
            Mechanism::Vertex => write!(f, "vertex"),
            Mechanism::Edge { draws } => write!(f, "edge k={draws}"),
            Mechanism::SnowballFull => write!(f, "snowball-full"),
            Mechanism::SnowballChain => write!(f, "snowball-chain"),
            Mechanism::Thin { rho } => write!(f, "thin rho={rho}"),
            Mechanism::Path { pairs } => write!(f, "path k={pairs}"),
            Mechanism::Universal { p } => write!(f, "universal p={p}"),
        }
    }
}

/// Observed network together with how it was obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub graph: Network,
    pub mechanism: Mechanism,
    /// Population ids, indexed by observed label minus one.
    pub provenance: Vec<u32>,
    /// Population id to observed label.
    pub label_map: BTreeMap<u32, u32>,
    /// The labeled edges the mechanism reports, in the order it reported them.
    ///
    /// Edge sampling lists every draw (repeats included), chain snowball lists
    /// the traversed edges, the other mechanisms list the observed edge set.
    pub sampled_edges: Vec<Pair>,
}

impl Observation {
    pub(crate) fn new(graph: Network, mechanism: Mechanism, provenance: Vec<u32>, sampled_edges: Vec<Pair>) -> Self {
        let label_map = provenance.iter().enumerate().map(|(i, &id)| (id, i as u32 + 1)).collect();
        Observation { graph, mechanism, provenance, label_map, sampled_edges }
    }

    /// Population id behind an observed label.
    pub fn population_id(&self, label: u32) -> Option<u32> {
        self.label_map.iter().find(|&(_, &l)| l == label).map(|(&id, _)| id)
    }

    pub fn label_of(&self, population_id: u32) -> Option<u32> {
        self.label_map.get(&population_id).copied()
    }

    /// Edge-list text followed by mechanism and provenance trailers.
    pub fn to_text(&self) -> String {
        let mut out = self.graph.to_text();
        let _ = writeln!(out, "# mechanism: {}", self.mechanism);
        let ids: Vec<String> = self.provenance.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "# sampled: {}", ids.join(" "));
        out
    }
}
