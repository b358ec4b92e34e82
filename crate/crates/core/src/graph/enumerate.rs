use super::pair::pair_count;
use super::simple::SimpleGraph;
use crate::error::{Error, Result};

pub const MAX_ENUMERATION_N: u32 = 6;

/// All labeled simple graphs on `{1..=n}`, ordered by edge mask.
pub fn enumerate_graphs(n: u32) -> Result<Vec<SimpleGraph>> {
    if n > MAX_ENUMERATION_N {
        return Err(Error::Capacity {
            what: "graph enumeration",
            n: n as usize,
            max: MAX_ENUMERATION_N as usize,
        });
    }
    Ok((0..1u32 << pair_count(n)).map(|mask| SimpleGraph::from_mask(n, mask)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts() {
        assert_eq!(enumerate_graphs(1).unwrap().len(), 1);
        assert_eq!(enumerate_graphs(3).unwrap().len(), 8);
        assert_eq!(enumerate_graphs(4).unwrap().len(), 64);
        assert!(matches!(enumerate_graphs(7), Err(Error::Capacity { .. })));
    }

    #[test]
    fn each_graph_once() {
        let all = enumerate_graphs(4).unwrap();
        let distinct: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), all.len());
        assert_eq!(all, enumerate_graphs(4).unwrap());
    }
}
