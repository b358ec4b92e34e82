use std::fmt;

use crate::error::{Error, Result};

/// Unordered pair of distinct vertex names, stored as `(lo, hi)` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    lo: u32,
    hi: u32,
}

/// Number of unordered pairs on `n` vertices.
pub const fn pair_count(n: u32) -> u32 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// Pairs of `{1..=n}` in colex order: {1,2}, {1,3}, {2,3}, {1,4}, ...
pub fn pairs_within(n: u32) -> impl Iterator<Item = Pair> {
    (2..=n).flat_map(|hi| (1..hi).map(move |lo| Pair { lo, hi }))
}

impl Pair {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a == b {
            return Err(Error::invalid(format!("self-loop {{{a},{a}}}")));
        }
        if a == 0 || b == 0 {
            return Err(Error::invalid("vertex names are positive integers"));
        }
        Ok(Self::sorted(a, b))
    }

    /// Builds a pair from endpoints known to be distinct and positive.
    pub(crate) fn sorted(a: u32, b: u32) -> Self {
        debug_assert!(a != b && a > 0 && b > 0);
        if a < b {
            Pair { lo: a, hi: b }
        } else {
            Pair { lo: b, hi: a }
        }
    }

    pub fn lo(self) -> u32 {
        self.lo
    }

    pub fn hi(self) -> u32 {
        self.hi
    }

    pub fn contains(self, v: u32) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint other than `v`, if `v` is an endpoint.
    pub fn other(self, v: u32) -> Option<u32> {
        if self.lo == v {
            Some(self.hi)
        } else if self.hi == v {
            Some(self.lo)
        } else {
            None
        }
    }

    /// Position in colexicographic order: {1,2}, {1,3}, {2,3}, {1,4}, ...
    pub fn colex_index(self) -> u32 {
        (self.hi - 1) * (self.hi - 2) / 2 + (self.lo - 1)
    }

    pub fn from_colex_index(index: u32) -> Self {
        let mut hi = 2;
        while pair_count(hi) <= index {
            hi += 1;
        }
        let lo = index - pair_count(hi - 1) + 1;
        Pair { lo, hi }
    }

    /// Maps both endpoints through `f`; `f` must keep them distinct.
    pub fn map(self, mut f: impl FnMut(u32) -> u32) -> Self {
        Pair::sorted(f(self.lo), f(self.hi))
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

impl TryFrom<(u32, u32)> for Pair {
    type Error = Error;

    fn try_from((a, b): (u32, u32)) -> Result<Self> {
        Pair::new(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_order() {
        let p = Pair::new(3, 1).unwrap();
        assert_eq!((p.lo(), p.hi()), (1, 3));
        assert_eq!(p, Pair::new(1, 3).unwrap());
        assert!(Pair::new(2, 2).is_err());
        assert!(Pair::new(0, 2).is_err());
        assert_eq!(p.other(3), Some(1));
        assert_eq!(p.other(2), None);
    }

    #[test]
    fn colex_order_prefix() {
        let order: Vec<_> = (0..6).map(Pair::from_colex_index).collect();
        let expected = [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)];
        for (p, (a, b)) in order.iter().zip(expected) {
            assert_eq!((p.lo(), p.hi()), (a, b));
        }
    }

    proptest! {
        #[test]
        fn colex_roundtrip(index in 0u32..5000) {
            prop_assert_eq!(Pair::from_colex_index(index).colex_index(), index);
        }
    }
}
