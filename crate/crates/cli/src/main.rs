use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use plbkit::bounds::{self, rational as q, GraphMode, HardProblem, PotentialKind};
use plbkit::embed::embed;
use plbkit::exact::{default_budget, exact};
use plbkit::harness::{ratio_study, run_experiment, Family, Model, DEFAULT_ETA};
use plbkit::io::{edge_list_string, load_graph};
use plbkit::plb::{check_plb, PlbParams, Property};
use plbkit::report::round_sig12;
use plbkit::solvers::{greedy_cds, greedy_mds, greedy_mis, greedy_vc_degree, matching_vc, Problem};
use plbkit::weights::power_law_weights;
use plbkit::{SamplerPath, SCHEMA_VERSION};

#[derive(Parser)]
#[command(name = "plbkit", version, about = "Power-law bounded graph toolkit")]
struct Cli {
    /// Base seed for random generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for batch commands.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Output file: the graph for `gen` and `embed`, the JSON report otherwise.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the JSON report on stdout even when writing to --out.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a random graph and write it as an edge list.
    Gen(GenArgs),
    /// Fit PLB constants and check the properties whose constants are given.
    Check(CheckArgs),
    /// Run a greedy approximation.
    Solve(SolveArgs),
    /// Solve exactly on small graphs.
    Exact(ExactArgs),
    /// Evaluate a closed-form bound.
    Bound(BoundArgs),
    /// Embed a cubic graph into a PLB graph.
    Embed(EmbedArgs),
    /// Fit PLB constants over many seeds of a random model.
    Experiment(ExperimentArgs),
    /// Compare greedy and exact optima against the guarantees.
    RatioStudy(RatioArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelKind {
    ChungLu,
    Girg,
    Hyperbolic,
    Abplg,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, value_enum)]
    model: ModelKind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    beta_prime: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    wmin: f64,
    #[arg(long, default_value_t = 1)]
    dim: usize,
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    #[arg(long, default_value_t = 0.75)]
    alpha_h: f64,
    #[arg(long, default_value_t = 0.0)]
    c_h: f64,
    #[arg(long, default_value_t = 0.1)]
    t_h: f64,
    #[arg(long)]
    e_alpha: Option<f64>,
    /// Degree exponent of the ABPLG sequence.
    #[arg(long)]
    beta: Option<f64>,
    /// ABPLG: drop loops and collapse parallel edges.
    #[arg(long)]
    simple: bool,
}

impl ModelArgs {
    fn model(&self) -> Result<Model> {
        let n = || {
            self.n
                .ok_or_else(|| anyhow!("--n is required for this model"))
        };
        let bp = || {
            self.beta_prime
                .ok_or_else(|| anyhow!("--beta-prime is required for this model"))
        };
        Ok(match self.model {
            ModelKind::ChungLu => Model::ChungLu {
                n: n()?,
                beta_prime: bp()?,
                w_min: self.wmin,
            },
            ModelKind::Girg => Model::Girg {
                n: n()?,
                beta_prime: bp()?,
                w_min: self.wmin,
                dim: self.dim,
                alpha: self.alpha,
            },
            ModelKind::Hyperbolic => Model::Hyperbolic {
                n: n()?,
                alpha_h: self.alpha_h,
                c_h: self.c_h,
                t_h: self.t_h,
            },
            ModelKind::Abplg => Model::Abplg {
                e_alpha: self
                    .e_alpha
                    .ok_or_else(|| anyhow!("--e-alpha is required for abplg"))?,
                beta: self
                    .beta
                    .ok_or_else(|| anyhow!("--beta is required for abplg"))?,
                simple: self.simple,
            },
        })
    }
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Use the quadratic reference sampler.
    #[arg(long)]
    naive: bool,
    /// Also write the weight sequence, one value per line.
    #[arg(long)]
    weights_out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    beta: f64,
    #[arg(long, default_value_t = 0.0)]
    t: f64,
    #[arg(long)]
    c1: Option<f64>,
    #[arg(long)]
    c2: Option<f64>,
    #[arg(long)]
    c3: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Greedy,
    Matching,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    problem: Problem,
    #[arg(long, value_enum, default_value = "greedy")]
    algo: Algo,
    #[arg(long = "in")]
    input: PathBuf,
    /// Include the per-step trace.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long)]
    problem: Problem,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    A,
    B,
    Bundle,
    Pvl,
    MisLb,
    Hardness,
    Lemma22,
    Zeta,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, value_enum)]
    which: Which,
    /// Comma-separated `key=value` pairs.
    #[arg(long, default_value = "")]
    params: String,
}

#[derive(Args)]
struct EmbedArgs {
    #[arg(long)]
    mode: GraphMode,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    beta: f64,
    #[arg(long, default_value_t = 0.0)]
    t: f64,
    #[arg(long)]
    c2: f64,
    /// Where to write the JSON report.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Exponent slack; PLB is checked at the model exponent minus eta.
    #[arg(long, default_value_t = DEFAULT_ETA)]
    eta: f64,
    /// Check exponent, overriding the one derived from --eta.
    #[arg(long)]
    check_beta: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    t: f64,
    /// Seeds run are seed, seed+1, ..., seed+trials-1.
    #[arg(long, default_value_t = 10)]
    trials: u64,
}

#[derive(Args)]
struct RatioArgs {
    #[arg(long)]
    family: Family,
    #[arg(long, default_value_t = 50)]
    count: usize,
    #[arg(long, default_value_t = 20)]
    size: usize,
    #[arg(long, default_value_t = 3.0)]
    beta: f64,
    #[arg(long, default_value_t = 0.0)]
    t: f64,
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn to_json(v: &impl serde::Serialize) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

/// Writes a JSON report to `--out` if given; prints it when there is no
/// `--out` or `--json` is set, otherwise prints `summary`.
fn emit(cli: &Cli, report: &impl serde::Serialize, summary: String) -> Result<()> {
    let text = to_json(report)?;
    let mut stdout = std::io::stdout().lock();
    match &cli.out {
        Some(path) => {
            write_file(path, &text)?;
            if cli.json {
                stdout.write_all(text.as_bytes())?;
            } else {
                writeln!(stdout, "{summary}")?;
            }
        }
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_gen(cli: &Cli, a: &GenArgs) -> Result<()> {
    let model = a.model.model()?;
    let path = if a.naive {
        SamplerPath::Naive
    } else {
        SamplerPath::Fast
    };
    let g = model.generate_with(cli.seed, path)?;
    if let Some(wpath) = &a.weights_out {
        let ws = match model {
            Model::ChungLu {
                n,
                beta_prime,
                w_min,
            }
            | Model::Girg {
                n,
                beta_prime,
                w_min,
                ..
            } => power_law_weights(n, beta_prime, w_min)?,
            _ => bail!("--weights-out needs a weight-based model (chung-lu or girg)"),
        };
        let mut buf = Vec::new();
        ws.write_to(&mut buf)?;
        fs::write(wpath, buf).with_context(|| format!("writing {}", wpath.display()))?;
    }
    let edges = edge_list_string(&g);
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "model": model,
        "sampler": path,
        "seed": cli.seed,
        "n": g.n(),
        "m": g.num_edges(),
        "pairs": g.num_pairs(),
        "max_degree": g.max_degree(),
    });
    match &cli.out {
        Some(p) => {
            write_file(p, &edges)?;
            if cli.json {
                print!("{}", to_json(&report)?);
            } else {
                println!(
                    "wrote {} (n = {}, m = {})",
                    p.display(),
                    g.n(),
                    g.num_edges()
                );
            }
        }
        None => print!("{edges}"),
    }
    Ok(())
}

fn cmd_check(cli: &Cli, a: &CheckArgs) -> Result<()> {
    let g = load_graph(&a.input)?;
    let mut p = PlbParams::new(a.beta, a.t)?;
    let mut props = Vec::new();
    if let Some(c) = a.c1 {
        p = p.with_c1(c);
        props.push(Property::U);
    }
    if let Some(c) = a.c2 {
        p = p.with_c2(c);
        props.push(Property::L);
    }
    if let Some(c) = a.c3 {
        p = p.with_c3(c);
        props.push(Property::N);
    }
    let r = check_plb(&g, &p, &props)?;
    let summary = format!(
        "c1_fit = {} c2_fit = {} c3_fit = {} pass = {}",
        r.c1_fit,
        r.c2_fit,
        r.c3_fit,
        r.pass()
    );
    emit(cli, &r, summary)
}

fn cmd_solve(cli: &Cli, a: &SolveArgs) -> Result<()> {
    let g = load_graph(&a.input)?;
    let r = match (a.algo, a.problem) {
        (Algo::Matching, Problem::Mvc) => matching_vc(&g),
        (Algo::Matching, p) => bail!("the matching algorithm solves mvc only, not {}", p.as_str()),
        (Algo::Greedy, Problem::Mds) => greedy_mds(&g)?,
        (Algo::Greedy, Problem::Cds) => greedy_cds(&g)?,
        (Algo::Greedy, Problem::Mis) => greedy_mis(&g),
        (Algo::Greedy, Problem::Mvc) => greedy_vc_degree(&g),
    };
    let r = if a.trace { r } else { r.without_trace() };
    let summary = format!(
        "{} {}: size {} valid {}",
        r.problem.as_str(),
        r.algorithm,
        r.size,
        r.valid
    );
    emit(cli, &r, summary)
}

fn cmd_exact(cli: &Cli, a: &ExactArgs) -> Result<()> {
    let g = load_graph(&a.input)?;
    let r = exact(
        &g,
        a.problem,
        a.budget.unwrap_or_else(|| default_budget(a.problem)),
    )?;
    let summary = format!("{} optimum {}", r.problem.as_str(), r.size);
    emit(cli, &r, summary)
}

struct Params(BTreeMap<String, String>);

impl Params {
    fn parse(s: &str) -> Result<Self> {
        let mut m = BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| anyhow!("parameter {part:?} is not key=value"))?;
            m.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Params(m))
    }

    fn raw(&self, k: &str) -> Result<&str> {
        self.0
            .get(k)
            .map(String::as_str)
            .ok_or_else(|| anyhow!("missing parameter {k}"))
    }

    fn f(&self, k: &str) -> Result<f64> {
        let s = self.raw(k)?;
        match q::parse_rational(s) {
            Some(r) => Ok(q::to_f64(&r)),
            None => s
                .parse()
                .with_context(|| format!("parameter {k} = {s:?} is not a number")),
        }
    }

    fn f_or(&self, k: &str, default: f64) -> Result<f64> {
        if self.0.contains_key(k) {
            self.f(k)
        } else {
            Ok(default)
        }
    }

    fn q(&self, k: &str) -> Option<q::Rational> {
        self.0.get(k).and_then(|s| q::parse_rational(s))
    }

    fn q_or(&self, k: &str, default: i64) -> Option<q::Rational> {
        match self.0.get(k) {
            Some(s) => q::parse_rational(s),
            None => Some(q::Rational::from_integer(default.into())),
        }
    }

    fn u(&self, k: &str) -> Result<u64> {
        let s = self.raw(k)?;
        s.parse()
            .with_context(|| format!("parameter {k} = {s:?} is not a non-negative integer"))
    }

    fn parsed<T: std::str::FromStr>(&self, k: &str) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        self.raw(k)?
            .parse()
            .map_err(|e| anyhow!("parameter {k}: {e}"))
    }
}

fn exact_str(r: Option<q::Rational>) -> Value {
    r.map_or(Value::Null, |r| Value::String(q::display(&r)))
}

fn cmd_bound(cli: &Cli, a: &BoundArgs) -> Result<()> {
    let p = Params::parse(&a.params)?;
    let (name, value, exact_value): (&str, Value, Value) = match a.which {
        Which::A => {
            let v = bounds::const_a(p.f("beta")?, p.f_or("t", 0.0)?)?;
            let e = (|| q::const_a(&p.q("beta")?, &p.q_or("t", 0)?))();
            ("a", json!(round_sig12(v)), exact_str(e))
        }
        Which::B => {
            let v = bounds::const_b(p.f("c1")?, p.f("beta")?, p.f_or("t", 0.0)?)?;
            let e = (|| q::const_b(&p.q("c1")?, &p.q("beta")?, &p.q_or("t", 0)?))();
            ("b", json!(round_sig12(v)), exact_str(e))
        }
        Which::Bundle => {
            let v = bounds::guarantee_bundle(p.f("c1")?, p.f("beta")?, p.f_or("t", 0.0)?)?;
            let e = (|| {
                let (c1, beta, t) = (p.q("c1")?, p.q("beta")?, p.q_or("t", 0)?);
                Some(json!({
                    "a": q::display(&q::const_a(&beta, &t)?),
                    "b": q::display(&q::const_b(&c1, &beta, &t)?),
                    "mds_lb_fraction": q::display(&q::mds_lb_fraction(&c1, &beta, &t)?),
                }))
            })();
            ("bundle", serde_json::to_value(v)?, e.unwrap_or(Value::Null))
        }
        Which::Pvl => {
            let kind: PotentialKind =
                p.0.get("kind")
                    .map_or(Ok(PotentialKind::Linear), |s| s.parse())?;
            let v = bounds::pvl_bound(
                kind,
                p.f("c")?,
                p.f("C")?,
                p.f("c1")?,
                p.f("beta")?,
                p.f_or("t", 0.0)?,
                p.f("n")?,
                p.f("m")?,
            )?;
            let e = (|| {
                if kind != PotentialKind::Linear {
                    return None;
                }
                let n_over_m = p.q("n")? / p.q("m")?;
                q::pvl_linear(
                    &p.q("c")?,
                    &p.q("C")?,
                    &p.q("c1")?,
                    &p.q("beta")?,
                    &p.q_or("t", 0)?,
                    &n_over_m,
                )
            })();
            ("pvl", json!(round_sig12(v)), exact_str(e))
        }
        Which::MisLb => {
            let connected =
                p.0.get("connected")
                    .is_some_and(|s| s == "true" || s == "1");
            let dmin = p.u("dmin")?;
            let v = bounds::mis_plbl_lower(
                p.f("c2")?,
                p.f("beta")?,
                p.f_or("t", 0.0)?,
                dmin,
                connected,
            )?;
            let e = (|| {
                q::mis_plbl_lower(
                    &p.q("c2")?,
                    &p.q("beta")?,
                    &p.q_or("t", 0)?,
                    dmin,
                    connected,
                )
            })();
            ("mis-lb", json!(round_sig12(v)), exact_str(e))
        }
        Which::Hardness => {
            let problem: HardProblem = p.parsed("problem")?;
            let mode: GraphMode =
                p.0.get("mode")
                    .map_or(Ok(GraphMode::Multigraph), |s| s.parse())?;
            let c1 = if p.0.contains_key("c1") {
                Some(p.f("c1")?)
            } else {
                None
            };
            let h = bounds::hardness_factor(
                problem,
                mode,
                c1,
                p.f("c2")?,
                p.f("beta")?,
                p.f_or("t", 0.0)?,
                p.f_or("gamma", 0.0)?,
            )?;
            let e = match (p.q("c2"), p.q("beta"), p.q_or("t", 0), p.q_or("gamma", 0)) {
                (Some(c2), Some(beta), Some(t), Some(gamma)) => {
                    let c1q = p.q("c1");
                    q::hardness_factor(problem, mode, c1q.as_ref(), &c2, &beta, &t, &gamma)?
                }
                _ => None,
            };
            ("hardness", serde_json::to_value(h)?, exact_str(e))
        }
        Which::Lemma22 => {
            let (a_, b_) = (p.u("a")?, p.u("b")?);
            let (lhs, rhs) = bounds::lemma22_bound(a_, b_, p.f("c")?)?;
            let e = p.q("c").and_then(|c| q::lemma22(a_, b_, &c)).map(
                |(l, r)| json!({ "lhs": q::display(&l), "rhs": q::display(&r), "holds": l <= r }),
            );
            (
                "lemma22",
                json!({ "lhs": round_sig12(lhs), "rhs": round_sig12(rhs), "holds": lhs <= rhs }),
                e.unwrap_or(Value::Null),
            )
        }
        Which::Zeta => {
            let s = p.f("s")?;
            if s.is_nan() || s <= 1.0 {
                bail!("zeta needs s > 1, got {s}");
            }
            ("zeta", json!(round_sig12(bounds::zeta(s))), Value::Null)
        }
    };
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "which": name,
        "params": p.0,
        "value": value,
        "exact": exact_value,
    });
    emit(cli, &report, format!("{name} = {value}"))
}

fn cmd_embed(cli: &Cli, a: &EmbedArgs) -> Result<()> {
    let g = load_graph(&a.input)?;
    let e = embed(&g, a.mode, a.beta, a.t, a.c2)?;
    let text = to_json(&e)?;
    if let Some(r) = &a.report {
        write_file(r, &text)?;
    }
    match &cli.out {
        Some(p) => {
            write_file(p, &edge_list_string(&e.graph))?;
            if cli.json {
                print!("{text}");
            } else {
                println!(
                    "wrote {} (n = {} from input n = {}, growth {})",
                    p.display(),
                    e.graph.n(),
                    g.n(),
                    e.params_used.c
                );
            }
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_experiment(cli: &Cli, a: &ExperimentArgs) -> Result<()> {
    let model = a.model.model()?;
    let beta = a.check_beta.unwrap_or_else(|| model.check_beta(a.eta));
    let seeds: Vec<u64> = (0..a.trials).map(|i| cli.seed.wrapping_add(i)).collect();
    let r = run_experiment(&model, beta, a.t, &seeds, cli.jobs)?;
    let agg = r.aggregates.as_ref().expect("experiments aggregate");
    let summary = format!(
        "{} trials: c1 median {} max {}, c3 median {} max {}",
        seeds.len(),
        agg.c1.median,
        agg.c1.max,
        agg.c3.median,
        agg.c3.max
    );
    emit(cli, &r, summary)
}

fn cmd_ratio(cli: &Cli, a: &RatioArgs) -> Result<()> {
    let r = ratio_study(a.family, a.count, a.size, a.beta, a.t, cli.seed, cli.jobs)?;
    let rows = r.ratio_study.as_deref().unwrap_or_default();
    let skipped = rows.iter().filter(|x| x.skipped.is_some()).count();
    let violated = rows
        .iter()
        .filter(|x| x.skipped.is_none() && !x.bound_respected)
        .count();
    emit(
        cli,
        &r,
        format!(
            "{} instances, {skipped} skipped, {violated} violating",
            rows.len()
        ),
    )?;
    if violated > 0 {
        bail!("{violated} instances violate a guarantee");
    }
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match &cli.cmd {
        Cmd::Gen(a) => cmd_gen(&cli, a),
        Cmd::Check(a) => cmd_check(&cli, a),
        Cmd::Solve(a) => cmd_solve(&cli, a),
        Cmd::Exact(a) => cmd_exact(&cli, a),
        Cmd::Bound(a) => cmd_bound(&cli, a),
        Cmd::Embed(a) => cmd_embed(&cli, a),
        Cmd::Experiment(a) => cmd_experiment(&cli, a),
        Cmd::RatioStudy(a) => cmd_ratio(&cli, a),
    }
}
