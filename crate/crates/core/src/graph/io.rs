//! Edge-list text format.
//!
//! ```text
//! simple n=4          multi m=3
//! 1 2                 1 7 9
//! 2 4                 2 7 9
//!                     3 9 12
//! ```
//!
//! Labels are 1-based. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;

use super::multi::Multigraph;
use super::pair::Pair;
use super::simple::SimpleGraph;
use crate::error::{Error, Result};

/// Either kind of network data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Network {
    Simple(SimpleGraph),
    Multi(Multigraph),
}

impl Network {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse { line: 0, msg: "empty input".into() })?;
        let mut words = header.split_whitespace();
        let kind = words.next().unwrap_or("");
        let size = words.next().unwrap_or("");
        let count = |key: &str| -> Result<u32> {
            size.strip_prefix(key)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Parse { line: hline, msg: format!("expected `{key}<count>` in header") })
        };
        match kind {
            "simple" => {
                let n = count("n=")?;
                let mut g = SimpleGraph::empty(n);
                for (line, body) in lines {
                    let [a, b] = parse_fields::<2>(line, body)?;
                    let p = Pair::new(a, b).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
                    if a > b {
                        return Err(Error::Parse { line, msg: format!("expected i < j, got {a} {b}") });
                    }
                    if !g.add_edge(p).map_err(|e| Error::Parse { line, msg: e.to_string() })? {
                        return Err(Error::Parse { line, msg: format!("duplicate edge {p}") });
                    }
                }
                Ok(Network::Simple(g))
            }
            "multi" => {
                let m = count("m=")?;
                let mut g = Multigraph::default();
                for (line, body) in lines {
                    let [eid, a, b] = parse_fields::<3>(line, body)?;
                    if eid as usize != g.m() + 1 {
                        return Err(Error::Parse { line, msg: format!("edge id {eid} out of sequence") });
                    }
                    g.push(Pair::new(a, b).map_err(|e| Error::Parse { line, msg: e.to_string() })?);
                }
                if g.m() != m as usize {
                    return Err(Error::Parse { line: hline, msg: format!("header says m={m}, found {}", g.m()) });
                }
                Ok(Network::Multi(g))
            }
            other => Err(Error::Parse { line: hline, msg: format!("unknown graph kind {other:?}") }),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Network::Simple(g) => write_simple(g),
            Network::Multi(g) => write_multi(g),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Network::Simple(g) => g.n() as usize,
            Network::Multi(g) => g.vertices().len(),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            Network::Simple(g) => g.edge_count(),
            Network::Multi(g) => g.m(),
        }
    }
}

fn parse_fields<const N: usize>(line: usize, body: &str) -> Result<[u32; N]> {
    let values: Vec<u32> = body
        .split_whitespace()
        .map(|w| w.parse().map_err(|_| Error::Parse { line, msg: format!("bad integer {w:?}") }))
        .collect::<Result<_>>()?;
    values
        .try_into()
        .map_err(|v: Vec<u32>| Error::Parse { line, msg: format!("expected {N} fields, found {}", v.len()) })
}

pub fn write_simple(g: &SimpleGraph) -> String {
    let mut out = format!("simple n={}\n", g.n());
    for p in g.edges() {
        let _ = writeln!(out, "{} {}", p.lo(), p.hi());
    }
    out
}

pub fn write_multi(g: &Multigraph) -> String {
    let mut out = format!("multi m={}\n", g.m());
    for (k, p) in g.pairs().iter().enumerate() {
        let _ = writeln!(out, "{} {} {}", k + 1, p.lo(), p.hi());
    }
    out
}

/// Reads the `# sampled: <ids>` provenance trailer, if present.
pub fn read_provenance(text: &str) -> Option<Vec<u32>> {
    text.lines().find_map(|l| {
        let ids = l.trim().strip_prefix("# sampled:")?;
        ids.split_whitespace().map(|w| w.parse().ok()).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_with_comments_and_blanks() {
        let text = "# toy\nsimple n=3\n\n1 2 # first\n2 3\n";
        let g = Network::parse(text).unwrap();
        assert_eq!(g, Network::Simple(SimpleGraph::path(3)));
        let m = Network::parse("multi m=2\n1 7 9\n2 9 7\n").unwrap();
        assert_eq!(m, Network::Multi(Multigraph::from_endpoints([(7, 9), (7, 9)]).unwrap()));
    }

    #[test]
    fn reports_line_numbers() {
        let err = Network::parse("simple n=3\n1 2\n3 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(matches!(Network::parse("simple n=3\n1 4\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Network::parse("multi m=2\n1 1 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Network::parse("multi m=1\n2 1 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(Network::parse("").is_err());
        assert!(Network::parse("directed n=2\n").is_err());
    }

    #[test]
    fn provenance_trailer() {
        assert_eq!(read_provenance("simple n=1\n# sampled: 4 2 9\n"), Some(vec![4, 2, 9]));
        assert_eq!(read_provenance("simple n=1\n"), None);
    }

    proptest! {
        #[test]
        fn simple_roundtrip(n in 1u32..9, mask in any::<u32>()) {
            let g = SimpleGraph::from_mask(n, mask & ((1u64 << super::super::pair_count(n)) - 1) as u32);
            let text = write_simple(&g);
            prop_assert_eq!(Network::parse(&text).unwrap(), Network::Simple(g));
        }

        #[test]
        fn multi_roundtrip(pairs in proptest::collection::vec((1u32..20, 1u32..20), 0..30)) {
            let pairs: Vec<_> = pairs.into_iter().filter(|(a, b)| a != b).collect();
            let g = Multigraph::from_endpoints(pairs).unwrap();
            prop_assert_eq!(Network::parse(&write_multi(&g)).unwrap(), Network::Multi(g));
        }
    }
}
