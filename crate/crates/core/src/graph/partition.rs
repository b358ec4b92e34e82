use std::collections::HashMap;
use std::fmt;

use super::perm::Permutation;
use crate::error::{Error, Result};

/// Set partition of `{1..=n}`; block ids are `1..=B` in order of first appearance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    block_of: Vec<u32>,
}

impl Partition {
    /// Builds a partition from arbitrary block tags, canonicalizing ids.
    pub fn from_labels<T: Eq + std::hash::Hash + Copy>(labels: &[T]) -> Self {
        let mut ids: HashMap<T, u32> = HashMap::new();
        let block_of = labels
            .iter()
            .map(|&t| {
                let next = ids.len() as u32 + 1;
                *ids.entry(t).or_insert(next)
            })
            .collect();
        Partition { block_of }
    }

    /// Builds a partition from a list of blocks, e.g. `[[1,2],[3]]`.
    pub fn from_blocks(n: u32, blocks: &[&[u32]]) -> Result<Self> {
        let mut tag = vec![0usize; n as usize];
        for (b, block) in blocks.iter().enumerate() {
            for &i in *block {
                if i == 0 || i > n {
                    return Err(Error::invalid(format!("label {i} outside 1..={n}")));
                }
                if tag[i as usize - 1] != 0 {
                    return Err(Error::invalid(format!("label {i} in two blocks")));
                }
                tag[i as usize - 1] = b + 1;
            }
        }
        if let Some(i) = tag.iter().position(|&t| t == 0) {
            return Err(Error::invalid(format!("label {} not covered", i + 1)));
        }
        Ok(Self::from_labels(&tag))
    }

    pub fn singletons(n: u32) -> Self {
        Partition { block_of: (1..=n).collect() }
    }

    pub fn one_block(n: u32) -> Self {
        Partition { block_of: vec![1; n as usize] }
    }

    pub fn n(&self) -> u32 {
        self.block_of.len() as u32
    }

    pub fn block_of(&self, i: u32) -> u32 {
        self.block_of[i as usize - 1]
    }

    pub fn block_ids(&self) -> &[u32] {
        &self.block_of
    }

    pub fn block_count(&self) -> u32 {
        self.block_of.iter().copied().max().unwrap_or(0)
    }

    pub fn same_block(&self, i: u32, j: u32) -> bool {
        self.block_of(i) == self.block_of(j)
    }

    pub fn restrict(&self, m: u32) -> Result<Self> {
        if m > self.n() {
            return Err(Error::range("partition restriction", m as usize, 0, self.n() as usize));
        }
        // A prefix of a first-appearance labeling is already canonical.
        Ok(Partition { block_of: self.block_of[..m as usize].to_vec() })
    }

    /// Read-only view of the restriction to `{1..=len}`.
    pub fn prefix(&self, len: u32) -> PartitionPrefix<'_> {
        assert!(len <= self.n());
        PartitionPrefix { partition: self, len }
    }

    /// Image under relabeling: `σ(i)` and `σ(j)` share a block iff `i` and `j` did.
    pub fn relabel(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.len() != self.n() {
            return Err(Error::invalid("permutation size differs from partition size"));
        }
        let mut tags = vec![0u32; self.block_of.len()];
        for i in 1..=self.n() {
            tags[sigma.apply(i) as usize - 1] = self.block_of(i);
        }
        Ok(Self::from_labels(&tags))
    }

    /// Every partition of `{1..=n}` as restricted growth strings, in lexicographic order.
    pub fn all(n: u32) -> Vec<Partition> {
        fn grow(prefix: &mut Vec<u32>, max: u32, n: usize, out: &mut Vec<Partition>) {
            if prefix.len() == n {
                out.push(Partition { block_of: prefix.clone() });
                return;
            }
            for b in 1..=max + 1 {
                prefix.push(b);
                grow(prefix, max.max(b), n, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        grow(&mut Vec::new(), 0, n as usize, &mut out);
        out
    }

    /// Parses `1,1,2` block-id lists.
    pub fn parse(text: &str) -> Result<Self> {
        let tags = text
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::invalid(format!("bad block id {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if tags.is_empty() {
            return Err(Error::invalid("empty partition"));
        }
        Ok(Self::from_labels(&tags))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.block_of.iter().map(u32::to_string).collect();
        write!(f, "{}", ids.join(","))
    }
}

/// Restriction `ψ|[len]` without copying.
#[derive(Debug, Clone, Copy)]
pub struct PartitionPrefix<'a> {
    partition: &'a Partition,
    len: u32,
}

impl PartitionPrefix<'_> {
    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Panics if either label lies outside the visible prefix.
    pub fn same_block(&self, i: u32, j: u32) -> bool {
        assert!(i <= self.len && j <= self.len, "label outside restricted structure");
        self.partition.same_block(i, j)
    }

    pub fn to_partition(&self) -> Partition {
        Partition { block_of: self.partition.block_of[..self.len as usize].to_vec() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_ids() {
        let p = Partition::from_labels(&[7, 7, 3, 7, 9]);
        assert_eq!(p.block_ids(), &[1, 1, 2, 1, 3]);
        assert_eq!(p.block_count(), 3);
        assert_eq!(Partition::parse("2,2,1").unwrap().block_ids(), &[1, 1, 2]);
        let b = Partition::from_blocks(3, &[&[3], &[1, 2]]).unwrap();
        assert_eq!(b.block_ids(), &[1, 1, 2]);
        assert!(Partition::from_blocks(3, &[&[1, 2]]).is_err());
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=5).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52]);
    }

    #[test]
    fn relabel_moves_blocks() {
        let b = Partition::from_blocks(3, &[&[1, 2], &[3]]).unwrap();
        let sigma = Permutation::from_cycles(3, &[&[1, 3]]).unwrap();
        let moved = b.relabel(&sigma).unwrap();
        assert!(moved.same_block(2, 3));
        assert!(!moved.same_block(1, 2));
    }

    proptest! {
        #[test]
        fn restriction_stays_canonical(tags in proptest::collection::vec(0u8..4, 1..12), cut in 0usize..12) {
            let p = Partition::from_labels(&tags);
            let m = cut.min(tags.len()) as u32;
            let r = p.restrict(m).unwrap();
            prop_assert_eq!(Partition::from_labels(r.block_ids()), r.clone());
            for i in 1..=m {
                for j in 1..=m {
                    prop_assert_eq!(r.same_block(i, j), p.same_block(i, j));
                }
            }
        }
    }
}
