//! Statistical network modeling toolkit.
//!
//! Population-network generators, explicit sampling mechanisms, network
//! statistics, sampling-aware estimators and an exact link-prediction
//! engine. Exact computations over small graphs (law tables, predictive
//! probabilities, densities) are generic over [`Scalar`], so they run in
//! `f64` or in exact rational arithmetic; Monte Carlo code uses `f64`.

pub mod error;
pub mod generators;
pub mod graph;
pub mod inference;
pub mod law;
pub mod predict;
pub mod rng;
pub mod sampling;
pub mod scalar;
pub mod statistics;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{DegreeProfile, Multigraph, Network, Pair, Partition, Permutation, SimpleGraph};
pub use law::GraphLaw;
pub use scalar::{Rational, Scalar};

/// Exact law over labeled graphs in double precision.
pub type Law = GraphLaw<f64>;
/// Exact law over labeled graphs in arbitrary-precision rationals.
pub type RationalLaw = GraphLaw<Rational>;
/// Predictive query evaluated in double precision.
pub type Query = predict::PredictiveQuery<f64>;
/// Predictive query evaluated exactly.
pub type RationalQuery = predict::PredictiveQuery<Rational>;
