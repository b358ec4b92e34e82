use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use netlab_core::generators::ModelRequest;
use netlab_core::inference::{estimate_reparam, mle_sbm_rates, mle_thinned_er, Bijection};
use netlab_core::predict::{parse_edge_list, predict_exact, predict_mc, McOutcome, PredictMechanism, PredictiveQuery};
use netlab_core::sampling::{self, Observation};
use netlab_core::scalar::rational_from_decimal;
use netlab_core::statistics::{edge_density, fit_power_law, sparsity_trace};
use netlab_core::verify::{run_suite, Budget};
use netlab_core::{DegreeProfile, Error, GraphLaw, Network, Partition, SimpleGraph};

const SEED_ENV: &str = "NETLAB_SEED";

#[derive(Parser, Debug)]
#[command(name = "netlab", version, about = "Generate, sample and analyze network data")]
struct Cli {
    /// Seed for all randomness; NETLAB_SEED overrides it when set.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Print only key=value lines.
    #[arg(long, global = true)]
    porcelain: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a population network.
    Generate(GenerateArgs),
    /// Apply a sampling mechanism to a network file.
    Sample(SampleArgs),
    /// Summary statistics of a network file.
    Stats(StatsArgs),
    /// Estimate model parameters from an observed graph.
    Estimate(EstimateArgs),
    /// Predictive probability of an unobserved edge.
    Predict(PredictArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct GenerateArgs {
    /// Model as key=value pairs, e.g. "model=er p=0.3 n=100".
    #[arg(long)]
    model: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SampleMechanism {
    Canonical,
    Vertex,
    Edge,
    SnowballFull,
    SnowballChain,
    Thin,
    Path,
    Universal,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long, value_enum)]
    mechanism: SampleMechanism,
    /// Units to sample (vertices, edges, or endpoint pairs for path sampling).
    #[arg(long)]
    size: Option<u32>,
    /// Population network; not used by the universal mechanism.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Thinning factor: each edge is kept with probability 1/rho.
    #[arg(long)]
    rho: Option<f64>,
    /// Edge probability of the universal mechanism's population.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Target law table for the universal mechanism, one probability per graph in mask order.
    #[arg(long)]
    mu: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Fit a power law to the degree profile.
    #[arg(long)]
    power_law: bool,
    #[arg(long, default_value_t = 2)]
    kmin: usize,
    /// Edge densities of nested sub-networks at --sizes.
    #[arg(long)]
    trace: bool,
    /// Comma-separated sizes for --trace.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Dump the degree profile as "k N_k" rows.
    #[arg(long)]
    table: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Estimator {
    ThinnedEr,
    Reparam,
    SbmRates,
}

#[derive(Args, Debug)]
struct EstimateArgs {
    #[arg(long, value_enum)]
    estimator: Estimator,
    #[arg(long = "in")]
    input: PathBuf,
    /// Thinning factor; defaults to the number of observed vertices.
    #[arg(long)]
    rho: Option<f64>,
    /// Named bijection for the reparameterized estimator.
    #[arg(long, default_value = "identity")]
    f: String,
    /// Block labels, e.g. "1,1,2,2".
    #[arg(long)]
    blocks: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum PredictMechanismArg {
    Vertex,
    Edge,
    #[value(alias = "snowball")]
    SnowballChain,
    Thin,
}

#[derive(Args, Debug)]
struct PredictArgs {
    #[arg(long, value_enum)]
    mechanism: PredictMechanismArg,
    /// Edge probability of the Erdős–Rényi population, e.g. 0.5 or 1/3.
    #[arg(long)]
    p: String,
    #[arg(long, conflicts_with = "mc")]
    exact: bool,
    #[arg(long)]
    mc: bool,
    #[arg(long, default_value_t = 1_000_000)]
    reps: u64,
    #[arg(long, default_value = "1-2,2-3")]
    observed: String,
    #[arg(long, default_value = "1-3")]
    target: String,
    /// Population size.
    #[arg(long, default_value_t = 3)]
    n_pop: u32,
    /// Thinning factor for the thin mechanism.
    #[arg(long, default_value_t = 3.0)]
    rho: f64,
    /// Also compute the exact value in rational arithmetic.
    #[arg(long, conflicts_with = "mc")]
    rational: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    /// Use reduced replicate counts.
    #[arg(long)]
    quick: bool,
}

/// Collected output: resolved configuration, then results.
struct Report {
    porcelain: bool,
    config: Vec<(String, String)>,
    lines: Vec<String>,
}

impl Report {
    fn new(porcelain: bool, command: &str, seed: u64) -> Self {
        let config = vec![("command".into(), command.into()), ("seed".into(), seed.to_string())];
        Report { porcelain, config, lines: Vec::new() }
    }

    fn config(&mut self, key: &str, value: impl ToString) {
        self.config.push((key.into(), value.to_string()));
    }

    fn kv(&mut self, key: &str, value: impl ToString) {
        self.lines.push(format!("{key}={}", value.to_string()));
    }

    fn prob(&mut self, key: &str, value: f64) {
        self.kv(key, format!("{value:.6}"));
    }

    /// Free-form text, shown only outside porcelain mode.
    fn text(&mut self, line: impl Into<String>) {
        if !self.porcelain {
            self.lines.push(line.into());
        }
    }

    fn render(&self) -> String {
        let mut out = String::new();
        if self.porcelain {
            for (k, v) in &self.config {
                out.push_str(&format!("config.{k}={v}\n"));
            }
        } else {
            let cfg: Vec<String> = self.config.iter().map(|(k, v)| format!("{k}={v:?}")).collect();
            out.push_str(&format!("# config: {}\n", cfg.join(" ")));
        }
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out
    }
}

/// Failure that maps to exit status 1.
#[derive(Debug)]
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn read_network(path: &Path) -> Result<Network, Failure> {
    Network::parse(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn simple(net: Network, what: &str) -> Result<SimpleGraph, Failure> {
    match net {
        Network::Simple(g) => Ok(g),
        Network::Multi(_) => Err(Failure(format!("{what} needs a simple graph, found a multigraph"))),
    }
}

fn resolve_seed(flag: u64) -> Result<u64, String> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{SEED_ENV}={v:?} is not an unsigned 64-bit integer")),
        Err(_) => Ok(flag),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let seed = match resolve_seed(cli.seed) {
        Ok(s) => s,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let result = match &cli.command {
        Command::Generate(a) => generate(a, seed, cli.porcelain),
        Command::Sample(a) => sample(a, seed, cli.porcelain),
        Command::Stats(a) => stats(a, seed, cli.porcelain),
        Command::Estimate(a) => estimate(a, seed, cli.porcelain),
        Command::Predict(a) => predict(a, seed, cli.porcelain),
        Command::Verify(a) => verify(a, seed, cli.porcelain),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
    }
}

fn emit(report: &Report) {
    print!("{}", report.render());
}

fn generate(a: &GenerateArgs, seed: u64, porcelain: bool) -> Outcome {
    let request = ModelRequest::parse(&a.model)?;
    let net = request.generate(seed)?;
    let mut report = Report::new(porcelain, "generate", seed);
    report.config("model", &request);
    match &a.out {
        Some(path) => {
            write(path, &net.to_text())?;
            report.config("out", path.display());
            report.kv("vertices", net.vertex_count());
            report.kv("edges", net.edge_count());
            emit(&report);
        }
        None => {
            // The graph itself is the output; the config rides along as a comment.
            let mut r = Report::new(false, "generate", seed);
            r.config = report.config;
            print!("{}{}", r.render(), net.to_text());
        }
    }
    Ok(())
}

fn read_law_table(path: &Path) -> Result<GraphLaw<f64>, Failure> {
    let text = read(path)?;
    let probs: Vec<f64> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
        .map(|w| w.parse().map_err(|_| Failure(format!("{}: bad probability {w:?}", path.display()))))
        .collect::<Result<_, _>>()?;
    let n = (1..=5u32)
        .find(|&n| probs.len() == 1 << (n * (n - 1) / 2))
        .ok_or_else(|| Failure(format!("{} entries is not 2^C(n,2) for n ≤ 5", probs.len())))?;
    Ok(GraphLaw::from_table(n, probs)?)
}

fn sample(a: &SampleArgs, seed: u64, porcelain: bool) -> Outcome {
    let mut report = Report::new(porcelain, "sample", seed);
    report.config("mechanism", format!("{:?}", a.mechanism).to_lowercase());
    let population = || -> Result<Network, Failure> {
        let path = a.input.as_ref().ok_or_else(|| Failure("--in is required for this mechanism".into()))?;
        read_network(path)
    };
    let size = || a.size.ok_or_else(|| Failure("--size is required for this mechanism".into()));
    let mut extra = String::new();
    let obs: Observation = match a.mechanism {
        SampleMechanism::Canonical => sampling::canonical(&population()?, size()?)?,
        SampleMechanism::Vertex => sampling::vertex_sample(&simple(population()?, "vertex sampling")?, size()?, seed)?,
        SampleMechanism::Edge => sampling::edge_sample(&simple(population()?, "edge sampling")?, size()? as usize, seed)?,
        SampleMechanism::SnowballFull => {
            sampling::snowball_full(&simple(population()?, "snowball sampling")?, size()?, seed)?
        }
        SampleMechanism::SnowballChain => {
            sampling::snowball_chain(&simple(population()?, "snowball sampling")?, size()?, seed)?
        }
        SampleMechanism::Thin => {
            let rho = a.rho.ok_or_else(|| Failure("--rho is required for thinning".into()))?;
            report.config("rho", rho);
            sampling::thin_observation(&simple(population()?, "thinning")?, rho, seed)?
        }
        SampleMechanism::Path => {
            let paths = sampling::path_sample(&simple(population()?, "path sampling")?, size()? as usize, seed)?;
            for ((s, t), path) in paths.endpoints.iter().zip(&paths.paths) {
                let route = match path {
                    Some(p) => p.iter().map(u32::to_string).collect::<Vec<_>>().join(" "),
                    None => "unreachable".into(),
                };
                extra.push_str(&format!("# path {s}->{t}: {route}\n"));
            }
            paths.to_observation()
        }
        SampleMechanism::Universal => {
            let path = a.mu.as_ref().ok_or_else(|| Failure("--mu is required for the universal mechanism".into()))?;
            report.config("p", a.p);
            report.config("mu", path.display());
            let mu = read_law_table(path)?;
            let e = sampling::universal_embed_traced(&mu, a.p, seed)?;
            let edges = e.graph.edges().collect();
            let mut o = sampling::canonical(&Network::Simple(e.graph), mu.n())?;
            o.provenance = e.vertices;
            o.label_map = o.provenance.iter().enumerate().map(|(i, &v)| (v, i as u32 + 1)).collect();
            o.mechanism = sampling::Mechanism::Universal { p: a.p };
            o.sampled_edges = edges;
            o
        }
    };
    if let Some(n) = a.size {
        report.config("size", n);
    }
    if let Some(p) = &a.input {
        report.config("in", p.display());
    }
    let text = format!("{}{extra}", obs.to_text());
    match &a.out {
        Some(path) => {
            write(path, &text)?;
            report.config("out", path.display());
            report.kv("sampled", obs.provenance.len());
            report.kv("edges", obs.graph.edge_count());
            emit(&report);
        }
        None => {
            let mut r = Report::new(false, "sample", seed);
            r.config = report.config;
            print!("{}{text}", r.render());
        }
    }
    Ok(())
}

fn stats(a: &StatsArgs, seed: u64, porcelain: bool) -> Outcome {
    let net = read_network(&a.input)?;
    let mut report = Report::new(porcelain, "stats", seed);
    report.config("in", a.input.display());
    let profile = match &net {
        Network::Simple(g) => {
            report.kv("kind", "simple");
            report.kv("vertices", g.n());
            report.kv("edges", g.edge_count());
            match edge_density::<f64>(g) {
                Ok(d) => report.prob("density", d),
                Err(_) => report.kv("density", "undefined"),
            }
            DegreeProfile::of_simple(g)
        }
        Network::Multi(m) => {
            let projected = m.project();
            report.kv("kind", "multi");
            report.kv("vertices", projected.n());
            report.kv("edges", m.m());
            report.kv("projected_edges", projected.edge_count());
            match edge_density::<f64>(&projected) {
                Ok(d) => report.prob("density", d),
                Err(_) => report.kv("density", "undefined"),
            }
            DegreeProfile::of_multi(m)
        }
    };
    report.kv("max_degree", profile.max_degree().unwrap_or(0));
    if a.power_law {
        report.config("kmin", a.kmin);
        let fit = fit_power_law(&profile, a.kmin)?;
        report.kv("gamma_hat", format!("{:.6}", fit.gamma_hat));
        report.kv("k_min", fit.k_min);
        report.kv("k_max", fit.k_max);
        report.kv("r2", format!("{:.6}", fit.r2));
    }
    if a.trace {
        if a.sizes.is_empty() {
            return Err(Failure("--trace needs --sizes".into()));
        }
        let trace = sparsity_trace(&net, &a.sizes)?;
        for (n, d) in trace.sizes.iter().zip(&trace.densities) {
            report.prob(&format!("trace.{n}"), *d);
        }
        report.kv("trace.strictly_decreasing", trace.is_strictly_decreasing());
    }
    if a.table {
        report.text("# k N_k");
        for (k, c) in profile.iter() {
            report.text(format!("{k} {c}"));
        }
    }
    emit(&report);
    Ok(())
}

fn estimate(a: &EstimateArgs, seed: u64, porcelain: bool) -> Outcome {
    let g = simple(read_network(&a.input)?, "estimation")?;
    let mut report = Report::new(porcelain, "estimate", seed);
    report.config("estimator", format!("{:?}", a.estimator));
    report.config("in", a.input.display());
    let result = match a.estimator {
        Estimator::ThinnedEr => {
            report.config("rho", a.rho.map_or("n".into(), |r| r.to_string()));
            mle_thinned_er(&g, a.rho)?
        }
        Estimator::Reparam => {
            report.config("rho", a.rho.map_or("n".into(), |r| r.to_string()));
            report.config("f", &a.f);
            estimate_reparam(&g, a.rho, &Bijection::named(&a.f)?)?
        }
        Estimator::SbmRates => {
            let text = a.blocks.as_ref().ok_or_else(|| Failure("--blocks is required for sbm-rates".into()))?;
            report.config("blocks", text);
            mle_sbm_rates(&g, &Partition::parse(text)?)?
        }
    };
    report.kv("estimator", result.estimator);
    report.kv("n", result.n);
    for (name, value) in &result.estimates {
        report.prob(name, *value);
    }
    report.kv("clipped", result.clipped);
    emit(&report);
    Ok(())
}

fn predict(a: &PredictArgs, seed: u64, porcelain: bool) -> Outcome {
    let mechanism = match a.mechanism {
        PredictMechanismArg::Vertex => PredictMechanism::Vertex,
        PredictMechanismArg::Edge => PredictMechanism::Edge,
        PredictMechanismArg::SnowballChain => PredictMechanism::SnowballChain,
        PredictMechanismArg::Thin => PredictMechanism::Thin { rho: a.rho },
    };
    let exact_p = rational_from_decimal(&a.p).ok_or_else(|| Failure(format!("--p {:?} is not a number", a.p)))?;
    let p = netlab_core::Scalar::to_f64_lossy(&exact_p);
    let observed = parse_edge_list(&a.observed)?;
    let target = parse_edge_list(&a.target)?;
    let [target] = target[..] else {
        return Err(Failure("--target must be a single pair".into()));
    };
    let query = PredictiveQuery { n_pop: a.n_pop, p, mechanism, observed: observed.clone(), target };
    let mut report = Report::new(porcelain, "predict", seed);
    report.config("mechanism", mechanism);
    report.config("p", &a.p);
    report.config("n_pop", a.n_pop);
    report.config("observed", &a.observed);
    report.config("target", &a.target);
    if a.mc {
        report.config("reps", a.reps);
        report.kv("method", "mc");
        match predict_mc(&query, a.reps, seed)? {
            McOutcome::Estimate { probability, std_error, hits } => {
                report.prob("value", probability);
                report.prob("se", std_error);
                report.kv("hits", hits);
            }
            McOutcome::Abstain { hits } => {
                report.kv("status", "abstain");
                report.kv("hits", hits);
            }
        }
    } else {
        report.kv("method", "exact");
        report.prob("value", predict_exact(&query)?);
        if a.rational {
            let q = PredictiveQuery { n_pop: a.n_pop, p: exact_p, mechanism, observed, target };
            report.kv("value_exact", predict_exact(&q)?);
        }
    }
    emit(&report);
    Ok(())
}

fn verify(a: &VerifyArgs, seed: u64, porcelain: bool) -> Outcome {
    let budget = if a.quick { Budget::Quick } else { Budget::Full };
    let mut report = Report::new(porcelain, "verify", seed);
    report.config("suite", &a.suite);
    report.config("budget", if a.quick { "quick" } else { "full" });
    let checks = run_suite(&a.suite, budget, seed)?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    for c in &checks {
        let key = c.name.replace(' ', "_");
        report.kv(&format!("check.{key}"), if c.pass { "pass" } else { "fail" });
        report.text(format!("#   {}", c.detail));
    }
    report.kv("failed", failed);
    emit(&report);
    if failed > 0 {
        return Err(Failure(String::new()));
    }
    Ok(())
}
