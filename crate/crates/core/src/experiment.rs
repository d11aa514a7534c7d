//! Experiment runner: ground truth, sampling, estimation and evaluation,
//! with the on-disk layout used by the `osnwalk` binary.
//!
//! ```text
//! OUT/truth.json                     exact property values
//! OUT/truth_{in,out}_degree.csv      k,mass,cumulative
//! OUT/traces/{method}_r{rep}.trace   one walk per method and replication
//! OUT/reports/{prop}_{method}_r{rep}.json (+ .csv for distributions)
//! OUT/evaluation.csv                 comparison table
//! ```
//!
//! Replication `r` of method `m` walks with seed
//! `derive_seed(master, stream(m), r)` where `stream(mhrw) = 1` and
//! `stream(rwwj) = 2`, so any replication can be rerun on its own.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{
    cross_collision_order, degree_distribution_estimate, mhrw_order_estimate, mutual_proportion_estimate,
    ratio_average_estimate,
};
use crate::evaluation::{kl_divergence, ks_d_statistic, rrmse, DEFAULT_KL_EPSILON};
use crate::generators::{generate, GenSpec};
use crate::graph::{load_edge_list_file, DirectedGraph};
use crate::report::{ErrorMetrics, EstimateReport, EstimateValue, GroundTruth, Property};
use crate::rng::{derive_seed, mix64};
use crate::sampler::{
    read_trace, sample, write_trace, Method, SamplerConfig, SeedNode, WalkSample, DEFAULT_JUMP_WEIGHT,
    DEFAULT_WALK_PROB,
};

pub const DEFAULT_BUDGET_FRACTION: f64 = 0.15;

const SPLIT_SALT: u64 = 0x5eed_5917;

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    File(PathBuf),
    Gen(GenSpec),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BudgetPolicy {
    Absolute(usize),
    /// `floor(fraction * N)`, at least 1.
    Fraction(f64),
}

impl BudgetPolicy {
    pub fn resolve(self, node_count: usize) -> Result<usize> {
        match self {
            BudgetPolicy::Absolute(0) => Err(Error::Config("budget must be at least 1".into())),
            BudgetPolicy::Absolute(b) => Ok(b),
            BudgetPolicy::Fraction(f) if f > 0.0 && f <= 1.0 => {
                let b = (f * node_count as f64).floor() as usize;
                if b == 0 {
                    Err(Error::Config(format!("budget fraction {f} of {node_count} nodes rounds to zero")))
                } else {
                    Ok(b)
                }
            }
            BudgetPolicy::Fraction(f) => Err(Error::Config(format!("budget fraction {f} outside (0, 1]"))),
        }
    }
}

/// Graph spec as written in a config file: either the compact string form or
/// a table with a `family` key.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GenField {
    Text(String),
    Table(GenSpec),
}

impl GenField {
    fn spec(&self) -> Result<GenSpec> {
        match self {
            GenField::Text(s) => s.parse(),
            GenField::Table(spec) => Ok(spec.clone()),
        }
    }
}

/// Every experiment setting, all optional. Used both for TOML config files
/// and for command-line overrides.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub graph: Option<PathBuf>,
    pub gen: Option<GenField>,
    pub methods: Option<Vec<Method>>,
    pub budget: Option<usize>,
    pub budget_frac: Option<f64>,
    pub walk_prob: Option<f64>,
    pub jump_weight: Option<f64>,
    pub reps: Option<usize>,
    pub seed: Option<u64>,
    pub seed_node: Option<SeedNode>,
    pub props: Option<Vec<Property>>,
    pub out: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Fields set in `over` replace those in `self`. Setting either budget
    /// form clears the other.
    pub fn merged(mut self, over: ConfigFile) -> Self {
        if over.graph.is_some() || over.gen.is_some() {
            self.graph = over.graph;
            self.gen = over.gen;
        }
        if over.budget.is_some() || over.budget_frac.is_some() {
            self.budget = over.budget;
            self.budget_frac = over.budget_frac;
        }
        macro_rules! take {
            ($($f:ident),*) => { $( if over.$f.is_some() { self.$f = over.$f; } )* };
        }
        take!(methods, walk_prob, jump_weight, reps, seed, seed_node, props, out);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub graph: GraphSource,
    pub methods: Vec<Method>,
    pub budget: BudgetPolicy,
    pub walk_prob: f64,
    pub jump_weight: f64,
    pub reps: usize,
    pub seed: u64,
    pub seed_node: SeedNode,
    pub props: Vec<Property>,
    pub out: PathBuf,
}

impl ExperimentConfig {
    pub fn new(graph: GraphSource) -> Self {
        Self {
            graph,
            methods: vec![Method::Mhrw, Method::Rwwj],
            budget: BudgetPolicy::Fraction(DEFAULT_BUDGET_FRACTION),
            walk_prob: DEFAULT_WALK_PROB,
            jump_weight: DEFAULT_JUMP_WEIGHT,
            reps: 1,
            seed: 0,
            seed_node: SeedNode::Uniform,
            props: Property::ALL.to_vec(),
            out: PathBuf::from("out"),
        }
    }

    pub fn from_file(c: ConfigFile) -> Result<Self> {
        let graph = match (c.graph, c.gen) {
            (Some(_), Some(_)) => return Err(Error::Config("give either a graph file or a generator, not both".into())),
            (Some(path), None) => GraphSource::File(path),
            (None, Some(g)) => GraphSource::Gen(g.spec()?),
            (None, None) => return Err(Error::Config("no graph source (graph or gen)".into())),
        };
        let mut cfg = Self::new(graph);
        cfg.budget = match (c.budget, c.budget_frac) {
            (Some(_), Some(_)) => return Err(Error::Config("give either budget or budget_frac, not both".into())),
            (Some(b), None) => BudgetPolicy::Absolute(b),
            (None, Some(f)) => BudgetPolicy::Fraction(f),
            (None, None) => cfg.budget,
        };
        if let Some(m) = c.methods {
            cfg.methods = m;
        }
        cfg.walk_prob = c.walk_prob.unwrap_or(cfg.walk_prob);
        cfg.jump_weight = c.jump_weight.unwrap_or(cfg.jump_weight);
        cfg.reps = c.reps.unwrap_or(cfg.reps);
        cfg.seed = c.seed.unwrap_or(cfg.seed);
        cfg.seed_node = c.seed_node.unwrap_or(cfg.seed_node);
        if let Some(p) = c.props {
            cfg.props = p;
        }
        cfg.out = c.out.unwrap_or(cfg.out);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::Config("replication count must be at least 1".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::Config("no sampling method selected".into()));
        }
        if let BudgetPolicy::Fraction(f) = self.budget {
            if !(f > 0.0 && f <= 1.0) {
                return Err(Error::Config(format!("budget fraction {f} outside (0, 1]")));
            }
        }
        self.sampler_config(1, 0).validate()
    }

    fn sampler_config(&self, budget: usize, rng_seed: u64) -> SamplerConfig {
        SamplerConfig { budget, walk_prob: self.walk_prob, jump_weight: self.jump_weight, rng_seed, seed_node: self.seed_node }
    }
}

fn method_stream(method: Method) -> u64 {
    match method {
        Method::Mhrw => 1,
        Method::Rwwj => 2,
    }
}

/// Seed of replication `rep` of `method` under `master`.
pub fn replication_seed(master: u64, method: Method, rep: usize) -> u64 {
    derive_seed(master, method_stream(method), rep as u64)
}

/// Seed of the random half-split of a sample walked with `rng_seed`.
pub fn split_seed(rng_seed: u64) -> u64 {
    mix64(rng_seed ^ SPLIT_SALT)
}

pub fn load_graph(source: &GraphSource) -> Result<DirectedGraph> {
    match source {
        GraphSource::File(path) => load_edge_list_file(path),
        GraphSource::Gen(spec) => generate(spec),
    }
}

/// One walk of an experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRun {
    pub replication: usize,
    pub sample: WalkSample,
}

pub fn cmd_stats(g: &DirectedGraph) -> Result<GroundTruth> {
    GroundTruth::compute(g)
}

/// Runs every (method, replication) walk.
pub fn cmd_sample(g: &DirectedGraph, cfg: &ExperimentConfig) -> Result<Vec<SampleRun>> {
    cfg.validate()?;
    let budget = cfg.budget.resolve(g.node_count())?;
    let mut runs = Vec::with_capacity(cfg.methods.len() * cfg.reps);
    for &method in &cfg.methods {
        for rep in 0..cfg.reps {
            let sc = cfg.sampler_config(budget, replication_seed(cfg.seed, method, rep));
            runs.push(SampleRun { replication: rep, sample: sample(g, method, &sc)? });
        }
    }
    Ok(runs)
}

fn with_context<T>(r: Result<T>, what: impl FnOnce() -> String) -> Result<T> {
    r.map_err(|e| e.context(what()))
}

/// Estimates every requested property from every run.
///
/// Graph order comes from capture-recapture on each MHRW run and, when a
/// replication has both an MHRW and an RWwJ run, from cross-collisions
/// between the MHRW node set and the RWwJ trace (method `mhrw+rwwj`).
pub fn cmd_estimate(g: &DirectedGraph, runs: &[SampleRun], props: &[Property]) -> Result<Vec<EstimateReport>> {
    let mut reports = Vec::new();
    for &property in props {
        for run in runs {
            let s = &run.sample;
            let ctx = || format!("{property} from {} replication {}", s.method, run.replication);
            let mut seeds = vec![s.config.rng_seed];
            let mut skipped = None;
            let estimate = match property {
                Property::InDegree | Property::OutDegree => {
                    let dir = property.direction().expect("degree property");
                    EstimateValue::Distribution(with_context(degree_distribution_estimate(g, s, dir), ctx)?)
                }
                Property::Order => {
                    if s.method != Method::Mhrw {
                        continue;
                    }
                    let split = split_seed(s.config.rng_seed);
                    seeds.push(split);
                    EstimateValue::Scalar(with_context(mhrw_order_estimate(s, split), ctx)?)
                }
                Property::RatioAverage => {
                    let est = with_context(ratio_average_estimate(g, s), ctx)?;
                    skipped = Some(est.skipped);
                    EstimateValue::Scalar(est.value)
                }
                Property::MutualProportion => EstimateValue::Scalar(with_context(mutual_proportion_estimate(g, s), ctx)?),
            };
            reports.push(EstimateReport {
                property,
                method: s.method.to_string(),
                replication: run.replication,
                estimate,
                ground_truth: None,
                errors: ErrorMetrics::default(),
                config: s.config,
                seeds,
                skipped,
            });
        }
        if property == Property::Order {
            reports.extend(cross_collision_reports(runs)?);
        }
    }
    Ok(reports)
}

fn cross_collision_reports(runs: &[SampleRun]) -> Result<Vec<EstimateReport>> {
    let find = |method: Method, rep: usize| runs.iter().find(|r| r.sample.method == method && r.replication == rep);
    let reps: BTreeSet<usize> = runs.iter().map(|r| r.replication).collect();
    let mut out = Vec::new();
    for rep in reps {
        let (Some(m), Some(w)) = (find(Method::Mhrw, rep), find(Method::Rwwj, rep)) else { continue };
        let uniform = m.sample.distinct_nodes();
        let est = with_context(cross_collision_order(&uniform, &w.sample.trace), || {
            format!("cross-collision order for replication {rep}")
        })?;
        out.push(EstimateReport {
            property: Property::Order,
            method: "mhrw+rwwj".into(),
            replication: rep,
            estimate: EstimateValue::Scalar(est),
            ground_truth: None,
            errors: ErrorMetrics::default(),
            config: w.sample.config,
            seeds: vec![m.sample.config.rng_seed, w.sample.config.rng_seed],
            skipped: None,
        });
    }
    Ok(out)
}

fn csv_num(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Fills ground truth and error metrics into `reports` and renders the
/// comparison table. Distribution rows carry D and KL, scalar rows RRMSE;
/// one `all` row per (property, method) aggregates the replications.
pub fn cmd_evaluate(reports: &mut [EstimateReport], truth: &GroundTruth, kl_epsilon: f64) -> Result<String> {
    reports.sort_by(|a, b| (a.property, &a.method, a.replication).cmp(&(b.property, &b.method, b.replication)));
    let mut csv = String::from("property,method,replication,estimate,truth,d_statistic,kl_divergence,rrmse\n");
    let mut groups: BTreeMap<(Property, String), Vec<usize>> = BTreeMap::new();
    for (idx, r) in reports.iter_mut().enumerate() {
        let t = truth.value(r.property).ok_or_else(|| Error::MissingTruth(r.property.to_string()))?;
        r.errors = match (&r.estimate, &t) {
            (EstimateValue::Distribution(est), EstimateValue::Distribution(td)) => ErrorMetrics {
                d_statistic: Some(ks_d_statistic(est, td)),
                kl_divergence: Some(kl_divergence(td, est, kl_epsilon)?),
                rrmse: None,
            },
            (EstimateValue::Scalar(est), EstimateValue::Scalar(tv)) => {
                ErrorMetrics { rrmse: Some(rrmse(&[*est], *tv)?), ..Default::default() }
            }
            _ => return Err(Error::MissingTruth(format!("{} has mismatched estimate and truth kinds", r.property))),
        };
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.property,
            r.method,
            r.replication,
            csv_num(r.estimate.as_scalar()),
            csv_num(t.as_scalar()),
            csv_num(r.errors.d_statistic),
            csv_num(r.errors.kl_divergence),
            csv_num(r.errors.rrmse),
        ));
        r.ground_truth = Some(t);
        groups.entry((r.property, r.method.clone())).or_default().push(idx);
    }
    for ((property, method), idxs) in groups {
        let n = idxs.len() as f64;
        let mean = |f: &dyn Fn(&EstimateReport) -> Option<f64>| -> Option<f64> {
            idxs.iter().map(|&i| f(&reports[i])).sum::<Option<f64>>().map(|s| s / n)
        };
        let truth_scalar = truth.value(property).and_then(|t| t.as_scalar());
        let group_rrmse = match truth_scalar {
            Some(tv) => {
                let ests: Vec<f64> = idxs.iter().filter_map(|&i| reports[i].estimate.as_scalar()).collect();
                Some(rrmse(&ests, tv)?)
            }
            None => None,
        };
        csv.push_str(&format!(
            "{property},{method},all,{},{},{},{},{}\n",
            csv_num(mean(&|r| r.estimate.as_scalar())),
            csv_num(truth_scalar),
            csv_num(mean(&|r| r.errors.d_statistic)),
            csv_num(mean(&|r| r.errors.kl_divergence)),
            csv_num(group_rrmse),
        ));
    }
    Ok(csv)
}

fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

pub fn write_truth(dir: &Path, truth: &GroundTruth) -> Result<()> {
    write_file(&dir.join("truth.json"), to_json(truth)?)?;
    write_file(&dir.join("truth_in_degree.csv"), truth.in_degree.to_cdf_csv())?;
    write_file(&dir.join("truth_out_degree.csv"), truth.out_degree.to_cdf_csv())
}

pub fn read_truth(path: &Path) -> Result<GroundTruth> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn trace_file_name(method: Method, rep: usize) -> String {
    format!("{method}_r{rep:03}.trace")
}

/// Writes one trace file per run into `dir`, returning the paths.
pub fn write_traces(dir: &Path, g: &DirectedGraph, runs: &[SampleRun]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    runs.iter()
        .map(|run| {
            let path = dir.join(trace_file_name(run.sample.method, run.replication));
            let mut buf = Vec::new();
            write_trace(&mut buf, &run.sample, g)?;
            write_file(&path, buf)?;
            Ok(path)
        })
        .collect()
}

fn replication_from_name(path: &Path) -> Option<usize> {
    let stem = path.file_stem()?.to_str()?;
    stem.rsplit_once("_r")?.1.parse().ok()
}

fn files_with_extension(dir: &Path, ext: &str) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == ext))
        .collect();
    files.sort();
    Ok(files)
}

/// Reads trace files (or every `.trace` file of the given directories).
/// The replication index comes from an `_rNNN` file-name suffix, falling
/// back to the position in the list.
pub fn read_traces(paths: &[PathBuf], g: &DirectedGraph) -> Result<Vec<SampleRun>> {
    let mut files = Vec::new();
    for p in paths {
        if p.is_dir() {
            files.extend(files_with_extension(p, "trace")?);
        } else {
            files.push(p.clone());
        }
    }
    files
        .iter()
        .enumerate()
        .map(|(pos, path)| {
            let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
            let sample = read_trace(BufReader::new(file), g)
                .map_err(|e| e.context(path.display().to_string()))?;
            Ok(SampleRun { replication: replication_from_name(path).unwrap_or(pos), sample })
        })
        .collect()
}

pub fn write_reports(dir: &Path, reports: &[EstimateReport]) -> Result<()> {
    for r in reports {
        let stem = r.file_stem();
        write_file(&dir.join(format!("{stem}.json")), to_json(r)?)?;
        if let EstimateValue::Distribution(d) = &r.estimate {
            write_file(&dir.join(format!("{stem}.csv")), d.to_cdf_csv())?;
        }
    }
    Ok(())
}

pub fn read_reports(dir: &Path) -> Result<Vec<EstimateReport>> {
    files_with_extension(dir, "json")?
        .into_iter()
        .filter(|p| p.file_name().is_some_and(|n| n != "truth.json"))
        .map(|path| {
            let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            serde_json::from_str(&text).map_err(|e| Error::from(e).context(path.display().to_string()))
        })
        .collect()
}

/// What a full pipeline run produced.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub truth: GroundTruth,
    pub budget: usize,
    pub runs: usize,
    pub total_steps: usize,
    pub reports: Vec<EstimateReport>,
    pub table: String,
}

/// stats → sample → estimate → evaluate, writing the full output tree.
pub fn run(cfg: &ExperimentConfig) -> Result<RunSummary> {
    cfg.validate()?;
    let g = load_graph(&cfg.graph)?;
    let truth = cmd_stats(&g)?;
    write_truth(&cfg.out, &truth)?;

    let runs = cmd_sample(&g, cfg)?;
    write_traces(&cfg.out.join("traces"), &g, &runs)?;

    let mut reports = cmd_estimate(&g, &runs, &cfg.props)?;
    let table = cmd_evaluate(&mut reports, &truth, DEFAULT_KL_EPSILON)?;
    write_reports(&cfg.out.join("reports"), &reports)?;
    write_file(&cfg.out.join("evaluation.csv"), &table)?;

    Ok(RunSummary {
        budget: cfg.budget.resolve(g.node_count())?,
        runs: runs.len(),
        total_steps: runs.iter().map(|r| r.sample.len()).sum(),
        truth,
        reports,
        table,
    })
}
