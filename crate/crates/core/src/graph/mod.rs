//! Graph data types: vertex-labeled simple graphs, edge-labeled multigraphs,
//! partitions of label prefixes, permutations and degree profiles.

mod degree;
mod enumerate;
pub mod io;
mod multi;
mod pair;
mod partition;
mod perm;
mod simple;

pub use degree::DegreeProfile;
pub use enumerate::{enumerate_graphs, MAX_ENUMERATION_N};
pub use io::Network;
pub use multi::Multigraph;
pub use pair::{pair_count, pairs_within, Pair};
pub use partition::{Partition, PartitionPrefix};
pub use perm::Permutation;
pub use simple::SimpleGraph;
