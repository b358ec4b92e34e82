//! Population-network generators. Each is a deterministic function of its
//! parameters, a size budget and a seed.

mod edge_exch;
mod ergm;
mod grid;
mod growth;
mod independent;
mod rel_exch;

use std::collections::BTreeMap;
use std::fmt;

pub use edge_exch::{gem_weights, gen_edge_exch, MIN_TRUNCATION};
pub use ergm::gen_ergm_exact;
pub use grid::Grid;
pub use growth::{gen_pa, gen_superstar};
pub use independent::{covariate_edge_probabilities, gen_beta, gen_covariate, gen_er, gen_graphon, gen_sbm};
pub use rel_exch::{
    gen_rel_exch, rel_exch_law, CovariateKernel, Kernel, KernelUniforms, LatentUniforms, SbmKernel, ThresholdKernel,
};

use crate::error::{Error, Result};
use crate::graph::{Network, Partition};
use crate::law::ErgmStat;

/// Built-in kernels for relatively exchangeable generation.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelChoice {
    /// `φ = (p, q)`.
    Sbm,
    /// `φ = (p)`.
    Threshold,
    /// `φ = θ`, covariates per vertex.
    Covariate(Vec<Vec<f64>>),
}

/// Parameters of one generator family.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec {
    Er { p: f64 },
    Beta { beta: Vec<f64> },
    Sbm { p: f64, q: f64, blocks: Partition },
    Graphon { grid: Grid },
    Ergm { stats: Vec<ErgmStat>, theta: Vec<f64>, n: u32 },
    Pa { delta: f64 },
    Superstar { p: f64, delta: f64 },
    EdgeExch { alpha: f64, theta: f64, truncation: usize },
    Covariate { theta: Vec<f64>, x: Vec<Vec<f64>> },
    RelExch { phi: Vec<f64>, psi: Partition, kernel: KernelChoice },
}

/// A model plus the size to generate (vertices, or edges for edge-exchangeable).
#[derive(Debug, Clone, PartialEq)]
pub struct ModelRequest {
    pub spec: ModelSpec,
    pub size: Option<u32>,
}

impl ModelSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ModelSpec::Er { .. } => "er",
            ModelSpec::Beta { .. } => "beta",
            ModelSpec::Sbm { .. } => "sbm",
            ModelSpec::Graphon { .. } => "graphon",
            ModelSpec::Ergm { .. } => "ergm",
            ModelSpec::Pa { .. } => "pa",
            ModelSpec::Superstar { .. } => "superstar",
            ModelSpec::EdgeExch { .. } => "edge-exch",
            ModelSpec::Covariate { .. } => "covariate",
            ModelSpec::RelExch { .. } => "rel-exch",
        }
    }

    /// Whether the vertex-labeled law is invariant under all relabelings.
    pub fn is_exchangeable(&self) -> bool {
        matches!(self, ModelSpec::Er { .. } | ModelSpec::Graphon { .. } | ModelSpec::Ergm { .. })
    }

    /// Size implied by the parameters, if any.
    pub fn intrinsic_size(&self) -> Option<u32> {
        match self {
            ModelSpec::Beta { beta } => Some(beta.len() as u32),
            ModelSpec::Sbm { blocks, .. } => Some(blocks.n()),
            ModelSpec::Ergm { n, .. } => Some(*n),
            ModelSpec::Covariate { x, .. } => Some(x.len() as u32),
            ModelSpec::RelExch { psi, .. } => Some(psi.n()),
            _ => None,
        }
    }

    /// Generates a population network. `size` is the vertex count, or the
    /// edge count for the edge-exchangeable model.
    pub fn generate(&self, size: Option<u32>, seed: u64) -> Result<Network> {
        let size = size.or_else(|| self.intrinsic_size());
        let need = || size.ok_or_else(|| Error::invalid(format!("model {} needs a size n=", self.name())));
        let simple = |g: Result<_>| g.map(Network::Simple);
        match self {
            ModelSpec::Er { p } => simple(gen_er(*p, need()?, seed)),
            ModelSpec::Beta { beta } => {
                let n = need()? as usize;
                if n != beta.len() {
                    return Err(Error::invalid("β-model size must equal the length of β"));
                }
                simple(gen_beta(beta, seed))
            }
            ModelSpec::Sbm { p, q, blocks } => {
                let n = need()?;
                simple(gen_sbm(*p, *q, &blocks.restrict(n)?, seed))
            }
            ModelSpec::Graphon { grid } => simple(gen_graphon(grid, need()?, seed)),
            ModelSpec::Ergm { stats, theta, n } => {
                if need()? != *n {
                    return Err(Error::invalid("ERGM size is fixed by its n parameter"));
                }
                simple(gen_ergm_exact(stats, theta, *n, seed))
            }
            ModelSpec::Pa { delta } => gen_pa(*delta, need()?, seed).map(Network::Multi),
            ModelSpec::Superstar { p, delta } => gen_superstar(*p, *delta, need()?, seed).map(Network::Multi),
            ModelSpec::EdgeExch { alpha, theta, truncation } => {
                gen_edge_exch(*alpha, *theta, *truncation, need()? as usize, seed).map(Network::Multi)
            }
            ModelSpec::Covariate { theta, x } => {
                let n = need()? as usize;
                if n > x.len() {
                    return Err(Error::invalid("covariates given for fewer vertices than requested"));
                }
                simple(gen_covariate(theta, &x[..n], seed))
            }
            ModelSpec::RelExch { phi, psi, kernel } => {
                let n = need()?;
                match kernel {
                    KernelChoice::Sbm => simple(gen_rel_exch(phi, psi, &SbmKernel, n, seed)),
                    KernelChoice::Threshold => simple(gen_rel_exch(phi, psi, &ThresholdKernel, n, seed)),
                    KernelChoice::Covariate(x) => {
                        simple(gen_rel_exch(phi, psi, &CovariateKernel::new(x.clone()), n, seed))
                    }
                }
            }
        }
    }
}

impl ModelRequest {
    /// Parses `model=er p=0.3 n=100` style text.
    ///
    /// Keys: `p q n m K alpha theta delta beta B grid stats x phi kernel`.
    /// Lists are comma separated; covariate rows are separated by `;`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut kv: BTreeMap<&str, &str> = BTreeMap::new();
        for token in text.split_whitespace() {
            let (k, v) = token
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("expected key=value, got {token:?}")))?;
            if kv.insert(k, v).is_some() {
                return Err(Error::invalid(format!("key {k:?} given twice")));
            }
        }
        let model = kv.remove("model").ok_or_else(|| Error::invalid("missing model="))?;
        let mut take = |k: &str| kv.remove(k);
        fn real(key: &str, v: Option<&str>) -> Result<f64> {
            let v = v.ok_or_else(|| Error::invalid(format!("missing {key}=")))?;
            v.parse().map_err(|_| Error::invalid(format!("{key}={v:?} is not a number")))
        }
        fn reals(key: &str, v: Option<&str>) -> Result<Vec<f64>> {
            let v = v.ok_or_else(|| Error::invalid(format!("missing {key}=")))?;
            v.split(',')
                .map(|t| t.trim().parse().map_err(|_| Error::invalid(format!("{key}: bad number {t:?}"))))
                .collect()
        }
        fn matrix(key: &str, v: Option<&str>) -> Result<Vec<Vec<f64>>> {
            let v = v.ok_or_else(|| Error::invalid(format!("missing {key}=")))?;
            v.split(';').map(|row| reals(key, Some(row))).collect()
        }
        fn count(key: &str, v: Option<&str>) -> Result<Option<u32>> {
            v.map(|v| v.parse().map_err(|_| Error::invalid(format!("{key}={v:?} is not a count"))))
                .transpose()
        }
        let n = count("n", take("n"))?;
        let spec = match model {
            "er" => ModelSpec::Er { p: real("p", take("p"))? },
            "beta" => ModelSpec::Beta { beta: reals("beta", take("beta"))? },
            "sbm" => ModelSpec::Sbm {
                p: real("p", take("p"))?,
                q: real("q", take("q"))?,
                blocks: Partition::parse(take("B").ok_or_else(|| Error::invalid("missing B="))?)?,
            },
            "graphon" => ModelSpec::Graphon { grid: Grid::from_row_major(reals("grid", take("grid"))?)? },
            "ergm" => {
                let stats = take("stats")
                    .ok_or_else(|| Error::invalid("missing stats="))?
                    .split(',')
                    .map(ErgmStat::parse)
                    .collect::<Result<Vec<_>>>()?;
                let theta = reals("theta", take("theta"))?;
                let n = n.ok_or_else(|| Error::invalid("missing n="))?;
                ModelSpec::Ergm { stats, theta, n }
            }
            "pa" => ModelSpec::Pa { delta: real("delta", take("delta"))? },
            "superstar" => ModelSpec::Superstar { p: real("p", take("p"))?, delta: real("delta", take("delta"))? },
            "edge-exch" => {
                let truncation = count("K", take("K"))?.unwrap_or(1000) as usize;
                ModelSpec::EdgeExch { alpha: real("alpha", take("alpha"))?, theta: real("theta", take("theta"))?, truncation }
            }
            "covariate" => ModelSpec::Covariate { theta: reals("theta", take("theta"))?, x: matrix("x", take("x"))? },
            "rel-exch" => {
                let kernel = match take("kernel").unwrap_or("sbm") {
                    "sbm" => KernelChoice::Sbm,
                    "threshold" => KernelChoice::Threshold,
                    "covariate" => KernelChoice::Covariate(matrix("x", take("x"))?),
                    other => return Err(Error::invalid(format!("unknown kernel {other:?}"))),
                };
                let psi = match take("B") {
                    Some(b) => Partition::parse(b)?,
                    None => Partition::singletons(n.ok_or_else(|| Error::invalid("missing B= or n="))?),
                };
                ModelSpec::RelExch { phi: reals("phi", take("phi"))?, psi, kernel }
            }
            other => return Err(Error::invalid(format!("unknown model {other:?}"))),
        };
        let size = if matches!(spec, ModelSpec::EdgeExch { .. }) { count("m", take("m"))? } else { n };
        if let Some(extra) = kv.keys().next() {
            return Err(Error::invalid(format!("unexpected key {extra:?} for model {model}")));
        }
        Ok(ModelRequest { spec, size })
    }

    pub fn generate(&self, seed: u64) -> Result<Network> {
        self.spec.generate(self.size, seed)
    }
}

fn join(values: &[f64]) -> String {
    values.iter().map(f64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for ModelRequest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "model={}", self.spec.name())?;
        match &self.spec {
            ModelSpec::Er { p } => write!(f, " p={p}")?,
            ModelSpec::Beta { beta } => write!(f, " beta={}", join(beta))?,
            ModelSpec::Sbm { p, q, blocks } => write!(f, " p={p} q={q} B={blocks}")?,
            ModelSpec::Graphon { grid } => write!(f, " grid={}", join(grid.values()))?,
            ModelSpec::Ergm { stats, theta, .. } => {
                let names: Vec<_> = stats.iter().map(|s| s.name()).collect();
                write!(f, " stats={} theta={}", names.join(","), join(theta))?
            }
            ModelSpec::Pa { delta } => write!(f, " delta={delta}")?,
            ModelSpec::Superstar { p, delta } => write!(f, " p={p} delta={delta}")?,
            ModelSpec::EdgeExch { alpha, theta, truncation } => write!(f, " alpha={alpha} theta={theta} K={truncation}")?,
            ModelSpec::Covariate { theta, x } => {
                let rows: Vec<_> = x.iter().map(|r| join(r)).collect();
                write!(f, " theta={} x={}", join(theta), rows.join(";"))?
            }
            ModelSpec::RelExch { phi, psi, kernel } => {
                let k = match kernel {
                    KernelChoice::Sbm => "sbm".to_string(),
                    KernelChoice::Threshold => "threshold".to_string(),
                    KernelChoice::Covariate(x) => {
                        format!("covariate x={}", x.iter().map(|r| join(r)).collect::<Vec<_>>().join(";"))
                    }
                };
                write!(f, " kernel={k} phi={} B={psi}", join(phi))?
            }
        }
        match (&self.spec, self.size) {
            (ModelSpec::EdgeExch { .. }, Some(m)) => write!(f, " m={m}"),
            (_, Some(n)) => write!(f, " n={n}"),
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let r = ModelRequest::parse("model=er p=0.3 n=100").unwrap();
        assert_eq!(r, ModelRequest { spec: ModelSpec::Er { p: 0.3 }, size: Some(100) });
        let r = ModelRequest::parse("model=sbm p=0.8 q=0.1 B=1,1,2").unwrap();
        assert_eq!(r.spec.intrinsic_size(), Some(3));
        let r = ModelRequest::parse("model=graphon grid=0.9,0.1,0.1,0.9 n=20").unwrap();
        assert!(matches!(r.spec, ModelSpec::Graphon { ref grid } if grid.k() == 2));
        let r = ModelRequest::parse("model=edge-exch alpha=0.6 theta=1 K=500 m=40").unwrap();
        assert_eq!(r.size, Some(40));
        let r = ModelRequest::parse("model=covariate theta=1 x=1;-1;0").unwrap();
        assert_eq!(r.spec.intrinsic_size(), Some(3));
        let r = ModelRequest::parse("model=ergm stats=edges,triangles theta=-1,0.5 n=3").unwrap();
        assert!(r.spec.is_exchangeable());
    }

    #[test]
    fn parse_errors() {
        assert!(ModelRequest::parse("p=0.3").is_err());
        assert!(ModelRequest::parse("model=er").is_err());
        assert!(ModelRequest::parse("model=er p=x n=3").is_err());
        assert!(ModelRequest::parse("model=er p=0.1 n=3 bogus=1").is_err());
        assert!(ModelRequest::parse("model=er p=0.1 p=0.2").is_err());
        assert!(ModelRequest::parse("model=nope").is_err());
    }

    #[test]
    fn display_roundtrip() {
        for text in [
            "model=er p=0.3 n=100",
            "model=sbm p=0.8 q=0.1 B=1,1,2",
            "model=edge-exch alpha=0.6 theta=1 K=500 m=40",
            "model=rel-exch kernel=sbm phi=0.8,0.1 B=1,2,2",
            "model=superstar p=0.5 delta=0 n=10",
        ] {
            let r = ModelRequest::parse(text).unwrap();
            assert_eq!(ModelRequest::parse(&r.to_string()).unwrap(), r, "{text}");
        }
    }

    #[test]
    fn dispatch_generates_the_right_kind() {
        let g = ModelRequest::parse("model=pa delta=0 n=10").unwrap().generate(1).unwrap();
        assert!(matches!(g, Network::Multi(ref m) if m.m() == 9));
        let g = ModelRequest::parse("model=er p=0.5 n=3").unwrap().generate(7).unwrap();
        assert!(matches!(g, Network::Simple(ref s) if s.n() == 3));
        assert!(ModelRequest::parse("model=er p=0.5").unwrap().generate(7).is_err());
    }
}
