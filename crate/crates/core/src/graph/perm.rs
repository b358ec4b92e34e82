use crate::error::{Error, Result};

/// Bijection of `{1..n}`; `image(i)` is where label `i` is sent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: u32) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// `images[i - 1]` is the image of `i`.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let slot = (x as usize)
                .checked_sub(1)
                .filter(|&i| i < n)
                .ok_or_else(|| Error::invalid(format!("image {x} outside 1..={n}")))?;
            if std::mem::replace(&mut seen[slot], true) {
                return Err(Error::invalid(format!("image {x} repeated; not a bijection")));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of `1..=n` from cycle notation, e.g. `[[1,3,5,6,7,4],[2]]`.
    pub fn from_cycles(n: u32, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (1..=n).collect();
        let mut touched = vec![false; n as usize];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n {
                    return Err(Error::invalid(format!("cycle entry {x} outside 1..={n}")));
                }
                if std::mem::replace(&mut touched[x as usize - 1], true) {
                    return Err(Error::invalid(format!("{x} appears in two cycles")));
                }
                images[x as usize - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    pub fn len(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize - 1]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize - 1] = i as u32 + 1;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    /// All permutations of `1..=n` in lexicographic order of image vectors.
    pub fn all(n: u32) -> Vec<Permutation> {
        fn extend(prefix: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if prefix.len() == used.len() {
                out.push(Permutation { images: prefix.clone() });
                return;
            }
            for x in 0..used.len() {
                if !used[x] {
                    used[x] = true;
                    prefix.push(x as u32 + 1);
                    extend(prefix, used, out);
                    prefix.pop();
                    used[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        extend(&mut Vec::new(), &mut vec![false; n as usize], &mut out);
        out
    }

    /// Whether the permutation maps `{1..=m}` onto itself.
    pub fn fixes_prefix(&self, m: u32) -> bool {
        (1..=m).all(|i| self.apply(i) <= m)
    }

    /// Restriction to `{1..=m}`; only meaningful when [`Self::fixes_prefix`] holds.
    pub fn restrict(&self, m: u32) -> Result<Self> {
        if !self.fixes_prefix(m) {
            return Err(Error::invalid(format!("permutation does not fix 1..={m} setwise")));
        }
        Ok(Permutation { images: self.images[..m as usize].to_vec() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation() {
        let s = Permutation::from_cycles(7, &[&[1, 3, 5, 6, 7, 4], &[2]]).unwrap();
        assert_eq!(s.images(), &[3, 2, 5, 1, 6, 7, 4]);
        assert_eq!(s.compose(&s.inverse()), Permutation::identity(7));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![1, 1, 2]).is_err());
        assert!(Permutation::from_images(vec![1, 4, 2]).is_err());
        assert!(Permutation::from_cycles(3, &[&[1, 2], &[2, 3]]).is_err());
    }

    #[test]
    fn all_permutations() {
        assert_eq!(Permutation::all(3).len(), 6);
        assert_eq!(Permutation::all(4).len(), 24);
    }
}
