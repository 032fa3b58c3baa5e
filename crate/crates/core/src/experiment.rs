//! Configuration and the `select`, `simulate`, `baseline`, `metrics` and `synth`
//! commands.
//!
//! A configuration is a flat `key = value` file; command-line settings override
//! file entries. Every output embeds the fully resolved key set.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use log::info;
use serde::{Deserialize, Serialize};

use crate::baselines::deg_d_greedy;
use crate::diversity::{
    AttributeWise, ClassDiversity, Concave, DiversityFunction, EntropyDiversity, HammingBalls, HammingDiversity,
    NoDiversity, NumericDiversity, NumericWeighting,
};
use crate::error::{AditumError, Result};
use crate::estimator::{self, EstimationParams, ThetaEstimate};
use crate::graph::{random_graph, DiffusionGraph, NodeId, TargetMode, TargetSet, WeightMode};
use crate::metrics::{write_metrics_csv, MetricsRow};
use crate::profiles::{
    derive_numeric_preferences, quantile_discretize, read_numeric_csv, synth_profiles, ClassMap, ProfileSet, Schema,
    SynthDistribution,
};
use crate::sampler::{generate_corpus, DiffusionModel};
use crate::selector::{build_seed_set, SeedResult, SelectConfig};
use crate::simulator::{simulate, SimulationReport};

/// Every accepted key with its default (empty means unset).
pub const DEFAULTS: &[(&str, &str)] = &[
    ("alpha", "0:1:0.1"),
    ("attributes", "10"),
    ("bins", "10"),
    ("classes", ""),
    ("concave", "log2"),
    ("dataset", ""),
    ("distribution", "uniform"),
    ("diversity", "aw"),
    ("domain_size", "10"),
    ("ell", "1"),
    ("epsilon", "0.1"),
    ("g_mode", "unit"),
    ("gamma", ""),
    ("graph", ""),
    ("jobs", "0"),
    ("k", "5:50:5"),
    ("kind", "profiles"),
    ("lambda", "1"),
    ("lazy", "true"),
    ("mean_degree", "5"),
    ("model", "ic"),
    ("node_weights", "uniform"),
    ("nodes", "1000"),
    ("normalize", "false"),
    ("numeric_profiles", ""),
    ("output", ""),
    ("preferences", ""),
    ("profiles", ""),
    ("results", ""),
    ("runs", "10000"),
    ("schema", ""),
    ("seed", "0"),
    ("seeds", ""),
    ("target", "threshold:0"),
    ("theta_cap", "10000000"),
    ("theta_override", ""),
    ("weight_mode", "uniform_indegree"),
    ("xi", "1"),
];

/// Unresolved `key = value` settings.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawConfig {
    entries: BTreeMap<String, String>,
}

impl RawConfig {
    /// Parses `key = value` lines; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| AditumError::config(format!("line {}: expected `key = value`", i + 1)))?;
            entries.insert(normalize_key(k), v.trim().to_string());
        }
        Ok(RawConfig { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.entries.insert(normalize_key(key), value.into());
    }

    /// Applies a `key=value` override.
    pub fn set_pair(&mut self, pair: &str) -> Result<()> {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| AditumError::usage(format!("`{pair}` is not of the form key=value")))?;
        self.set(k, v.trim());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Merges defaults under the given entries; unknown keys are an error.
    pub fn resolve(&self) -> Result<ExperimentConfig> {
        let unknown: Vec<&str> = self
            .entries
            .keys()
            .filter(|k| !DEFAULTS.iter().any(|(d, _)| d == k))
            .map(String::as_str)
            .collect();
        if !unknown.is_empty() {
            return Err(AditumError::config(format!("unknown configuration keys: {}", unknown.join(", "))));
        }
        let mut resolved: BTreeMap<String, String> =
            DEFAULTS.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        resolved.extend(self.entries.clone());
        ExperimentConfig::from_resolved(resolved)
    }
}

fn normalize_key(k: &str) -> String {
    k.trim().trim_start_matches("--").replace('-', "_")
}

/// Which diversity function drives the selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiversityKind {
    None,
    AttributeWise,
    Hamming,
    Entropy,
    Class,
    NumericUnit,
    NumericDegree,
}

impl std::str::FromStr for DiversityKind {
    type Err = AditumError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "none" => DiversityKind::None,
            "aw" | "attribute-wise" => DiversityKind::AttributeWise,
            "hamming" => DiversityKind::Hamming,
            "entropy" => DiversityKind::Entropy,
            "class" => DiversityKind::Class,
            "numeric-u" => DiversityKind::NumericUnit,
            "numeric-w" => DiversityKind::NumericDegree,
            other => {
                return Err(AditumError::config(format!(
                    "unknown diversity `{other}` (aw, hamming, entropy, class, numeric-u, numeric-w, none)"
                )))
            }
        })
    }
}

/// Where target scores come from.
#[derive(Debug, Clone, PartialEq)]
pub enum NodeWeights {
    /// `t(v) = 1`.
    Uniform,
    /// Min-max normalized in-degree.
    InDegree,
    /// `node t` lines.
    File(PathBuf),
}

/// Typed, validated configuration.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub dataset: String,
    pub graph: Option<PathBuf>,
    pub weight_mode: WeightMode,
    pub node_weights: NodeWeights,
    pub profiles: Option<PathBuf>,
    pub schema: Option<PathBuf>,
    pub numeric_profiles: Option<PathBuf>,
    pub bins: usize,
    pub classes: Option<PathBuf>,
    pub preferences: Option<PathBuf>,
    pub diversity: DiversityKind,
    pub concave: Concave,
    pub lambda: f64,
    pub xi: usize,
    pub k: Vec<usize>,
    pub alpha: Vec<f64>,
    pub target: TargetMode,
    pub model: DiffusionModel,
    pub estimation: EstimationParams,
    pub theta_override: Option<usize>,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub normalize: bool,
    pub lazy: bool,
    /// Worker threads; 0 uses every core.
    pub jobs: usize,
    pub runs: usize,
    pub gamma: Option<f64>,
    pub g_mode: NumericWeighting,
    pub seeds: Option<PathBuf>,
    pub results: Option<PathBuf>,
    pub kind: String,
    pub nodes: usize,
    pub attributes: usize,
    pub domain_size: usize,
    pub distribution: SynthDistribution,
    pub mean_degree: f64,
    /// All keys after merging defaults, as given.
    pub resolved: BTreeMap<String, String>,
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| AditumError::config(format!("invalid value `{value}` for `{key}`")))
}

fn path(value: &str) -> Option<PathBuf> {
    (!value.is_empty()).then(|| PathBuf::from(value))
}

/// Parses `a:b:step` (inclusive) or a comma list.
pub fn parse_real_grid(key: &str, s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let values = if parts.len() == 3 {
        let (a, b, step): (f64, f64, f64) = (parse(key, parts[0])?, parse(key, parts[1])?, parse(key, parts[2])?);
        if !(step > 0.0) || b < a {
            return Err(AditumError::config(format!("empty or invalid range `{s}` for `{key}`")));
        }
        let count = ((b - a) / step + 1e-9).floor() as usize + 1;
        // round away accumulated binary error so 0.1 steps print as 0.3, not 0.30000000000000004
        (0..count).map(|i| ((a + i as f64 * step) * 1e9).round() / 1e9).collect()
    } else {
        s.split(',').map(|p| parse(key, p.trim())).collect::<Result<Vec<f64>>>()?
    };
    if values.is_empty() {
        return Err(AditumError::config(format!("`{key}` is empty")));
    }
    Ok(values)
}

pub fn parse_int_grid(key: &str, s: &str) -> Result<Vec<usize>> {
    let parts: Vec<&str> = s.split(':').collect();
    let values: Vec<usize> = if parts.len() == 3 {
        let (a, b, step): (usize, usize, usize) = (parse(key, parts[0])?, parse(key, parts[1])?, parse(key, parts[2])?);
        if step == 0 || b < a {
            return Err(AditumError::config(format!("empty or invalid range `{s}` for `{key}`")));
        }
        (a..=b).step_by(step).collect()
    } else {
        s.split(',').map(|p| parse(key, p.trim())).collect::<Result<_>>()?
    };
    if values.is_empty() {
        return Err(AditumError::config(format!("`{key}` is empty")));
    }
    Ok(values)
}

fn parse_bool(key: &str, s: &str) -> Result<bool> {
    match s {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(AditumError::config(format!("invalid boolean `{s}` for `{key}`"))),
    }
}

impl ExperimentConfig {
    fn from_resolved(r: BTreeMap<String, String>) -> Result<Self> {
        let get = |k: &str| r.get(k).map(String::as_str).unwrap_or("");
        let graph = path(get("graph"));
        let dataset = match get("dataset") {
            "" => graph
                .as_ref()
                .and_then(|p| p.file_stem())
                .map_or_else(|| "synthetic".to_string(), |s| s.to_string_lossy().into_owned()),
            d => d.to_string(),
        };
        let node_weights = match get("node_weights") {
            "uniform" => NodeWeights::Uniform,
            "indegree" => NodeWeights::InDegree,
            p => NodeWeights::File(PathBuf::from(p)),
        };
        let alpha = parse_real_grid("alpha", get("alpha"))?;
        if let Some(a) = alpha.iter().find(|a| !(0.0..=1.0).contains(*a)) {
            return Err(AditumError::config(format!("α = {a} outside [0,1]")));
        }
        let k = parse_int_grid("k", get("k"))?;
        if k.contains(&0) {
            return Err(AditumError::config("k must be at least 1"));
        }
        let estimation = EstimationParams {
            epsilon: parse("epsilon", get("epsilon"))?,
            ell: parse("ell", get("ell"))?,
            theta_cap: parse("theta_cap", get("theta_cap"))?,
        };
        estimation.validate()?;
        let gamma = match get("gamma") {
            "" => None,
            g => Some(parse::<f64>("gamma", g)?),
        };
        let concave = match get("concave") {
            "log2" => Concave::Log2OnePlus,
            "sqrt" => Concave::Sqrt,
            other => return Err(AditumError::config(format!("unknown concave transform `{other}` (log2, sqrt)"))),
        };
        let jobs: usize = parse("jobs", get("jobs"))?;
        Ok(ExperimentConfig {
            dataset,
            graph,
            weight_mode: get("weight_mode").parse()?,
            node_weights,
            profiles: path(get("profiles")),
            schema: path(get("schema")),
            numeric_profiles: path(get("numeric_profiles")),
            bins: parse("bins", get("bins"))?,
            classes: path(get("classes")),
            preferences: path(get("preferences")),
            diversity: get("diversity").parse()?,
            concave,
            lambda: parse("lambda", get("lambda"))?,
            xi: parse("xi", get("xi"))?,
            k,
            alpha,
            target: get("target").parse()?,
            model: get("model").parse()?,
            estimation,
            theta_override: match get("theta_override") {
                "" => None,
                t => Some(parse("theta_override", t)?),
            },
            seed: parse("seed", get("seed"))?,
            output: path(get("output")),
            normalize: parse_bool("normalize", get("normalize"))?,
            lazy: parse_bool("lazy", get("lazy"))?,
            jobs,
            runs: parse("runs", get("runs"))?,
            gamma,
            g_mode: get("g_mode").parse()?,
            seeds: path(get("seeds")),
            results: path(get("results")),
            kind: get("kind").to_string(),
            nodes: parse("nodes", get("nodes"))?,
            attributes: parse("attributes", get("attributes"))?,
            domain_size: parse("domain_size", get("domain_size"))?,
            distribution: get("distribution").parse()?,
            mean_degree: parse("mean_degree", get("mean_degree"))?,
            resolved: r,
        })
    }
}

fn open(p: &Path) -> Result<BufReader<File>> {
    File::open(p)
        .map(BufReader::new)
        .map_err(|e| AditumError::format(format!("{}: {e}", p.display())))
}

/// Everything loaded from the configured files.
#[derive(Debug)]
pub struct Dataset {
    pub graph: DiffusionGraph,
    pub targets: TargetSet,
    pub profiles: Option<ProfileSet>,
    pub classes: Option<ClassMap>,
    pub preferences: Option<Vec<Vec<f64>>>,
}

impl Dataset {
    pub fn load(cfg: &ExperimentConfig) -> Result<Self> {
        let graph_path = cfg.graph.as_ref().ok_or_else(|| AditumError::config("no graph given"))?;
        let mut graph = DiffusionGraph::load(open(graph_path)?, cfg.weight_mode)?;
        graph = match &cfg.node_weights {
            NodeWeights::Uniform => graph,
            NodeWeights::InDegree => graph.with_indegree_target_scores(),
            NodeWeights::File(p) => graph.load_target_scores(open(p)?)?,
        };
        let profiles = match (&cfg.profiles, &cfg.numeric_profiles) {
            (Some(_), Some(_)) => {
                return Err(AditumError::config("give either `profiles` or `numeric_profiles`, not both"))
            }
            (Some(p), None) => Some(match &cfg.schema {
                Some(s) => ProfileSet::load_csv(open(p)?, Schema::read(open(s)?)?, Some(&graph))?,
                None => ProfileSet::load_csv_inferred(&fs::read_to_string(p)?, Some(&graph))?,
            }),
            (None, Some(p)) => {
                let (names, matrix) = read_numeric_csv(open(p)?, Some(&graph))?;
                Some(quantile_discretize(&names, &matrix, cfg.bins)?)
            }
            (None, None) => None,
        };
        let classes = cfg.classes.as_ref().map(|p| ClassMap::load(open(p)?, &graph)).transpose()?;
        let preferences = match &cfg.preferences {
            Some(p) => {
                let (_, matrix) = read_numeric_csv(open(p)?, Some(&graph))?;
                let dense = matrix
                    .into_iter()
                    .enumerate()
                    .map(|(v, row)| {
                        row.into_iter().collect::<Option<Vec<f64>>>().ok_or_else(|| {
                            AditumError::format(format!("preference vector of node `{}` is incomplete", graph.label(v as NodeId)))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Some(derive_numeric_preferences(&dense)?)
            }
            None => None,
        };
        let targets = TargetSet::select(&graph, cfg.target)?;
        Ok(Dataset {
            graph,
            targets,
            profiles,
            classes,
            preferences,
        })
    }

    fn profiles(&self) -> Result<&ProfileSet> {
        self.profiles
            .as_ref()
            .ok_or_else(|| AditumError::config("this diversity function needs `profiles` or `numeric_profiles`"))
    }

    /// A fresh diversity function of the requested kind.
    pub fn diversity(&self, cfg: &ExperimentConfig) -> Result<Box<dyn DiversityFunction + '_>> {
        Ok(match cfg.diversity {
            DiversityKind::None => Box::new(NoDiversity::new(self.graph.node_count())),
            DiversityKind::AttributeWise => Box::new(AttributeWise::new(self.profiles()?, cfg.lambda)?),
            DiversityKind::Hamming => {
                let balls = HammingBalls::new(&self.graph, self.profiles()?, cfg.xi)?;
                balls.precompute_all();
                Box::new(HammingDiversity::new(balls))
            }
            DiversityKind::Entropy => Box::new(EntropyDiversity::new(self.profiles()?)),
            DiversityKind::Class => {
                let classes = self.classes.as_ref().ok_or_else(|| AditumError::config("class diversity needs `classes`"))?;
                Box::new(ClassDiversity::new(classes, cfg.concave)?)
            }
            DiversityKind::NumericUnit | DiversityKind::NumericDegree => {
                let prefs = self
                    .preferences
                    .as_ref()
                    .ok_or_else(|| AditumError::config("numeric diversity needs `preferences`"))?;
                let weighting = if cfg.diversity == DiversityKind::NumericUnit {
                    NumericWeighting::Unit
                } else {
                    NumericWeighting::OutDegree
                };
                Box::new(NumericDiversity::new(&self.graph, prefs, weighting, cfg.concave)?)
            }
        })
    }

    fn labels(&self, seeds: &[NodeId]) -> Vec<String> {
        seeds.iter().map(|&v| self.graph.label(v).to_string()).collect()
    }

    fn resolve_labels(&self, labels: &[String]) -> Result<Vec<NodeId>> {
        labels
            .iter()
            .map(|l| {
                self.graph
                    .node_id(l)
                    .ok_or_else(|| AditumError::format(format!("seed `{l}` is not a node of the graph")))
            })
            .collect()
    }
}

/// One `(k, α)` grid point of a selection run, as written to disk.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SelectRecord {
    pub config: BTreeMap<String, String>,
    pub theta: ThetaEstimate,
    pub seed_labels: Vec<String>,
    pub result: SeedResult,
    pub metrics: MetricsRow,
}

fn grid_name(prefix: &str, k: usize, param: char, x: f64) -> String {
    format!("{prefix}_k{k}_{param}{x}")
}

fn write_lines(path: &Path, lines: &[String]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for l in lines {
        writeln!(w, "{l}")?;
    }
    w.flush()?;
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// Runs the selection grid. One corpus is built per `k` and shared by every `α`.
pub fn run_select(cfg: &ExperimentConfig, data: &Dataset) -> Result<Vec<SelectRecord>> {
    let mut records = Vec::new();
    for &k in &cfg.k {
        if k > data.graph.node_count() {
            return Err(AditumError::config(format!("k = {k} exceeds the {} graph nodes", data.graph.node_count())));
        }
        let theta = match cfg.theta_override {
            Some(t) => ThetaEstimate {
                kpt_star: None,
                kpt_plus: None,
                theta: t,
                capped: false,
            },
            None => estimator::estimate_theta(&data.graph, &data.targets, &cfg.model, k, &cfg.estimation, cfg.seed)?,
        };
        info!("k = {k}: θ = {}", theta.theta);
        let corpus = generate_corpus(&data.graph, &data.targets, &cfg.model, theta.theta, cfg.seed)?;
        for &alpha in &cfg.alpha {
            let mut div = data.diversity(cfg)?;
            let select = SelectConfig {
                k,
                alpha,
                total_target_score: data.targets.total_score(),
                lazy: cfg.lazy,
                normalize: cfg.normalize,
            };
            let result = build_seed_set(&corpus, div.as_mut(), &select)?;
            let metrics = MetricsRow::from_result(
                &cfg.dataset,
                &cfg.target.to_string(),
                cfg.seed,
                &result,
                data.profiles.as_ref(),
            );
            records.push(SelectRecord {
                config: cfg.resolved.clone(),
                theta,
                seed_labels: data.labels(&result.seeds),
                result,
                metrics,
            });
        }
    }
    Ok(records)
}

/// `select`: runs the grid and writes one JSON record and one seed list per point,
/// plus `metrics.csv`. Without an output directory the metrics go to `out`.
pub fn cmd_select<W: Write>(cfg: &ExperimentConfig, out: W) -> Result<Vec<SelectRecord>> {
    let data = Dataset::load(cfg)?;
    let records = run_select(cfg, &data)?;
    let rows: Vec<MetricsRow> = records.iter().map(|r| r.metrics.clone()).collect();
    match &cfg.output {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            for r in &records {
                let name = grid_name("select", r.result.k, 'a', r.result.alpha);
                write_json(&dir.join(format!("{name}.json")), r)?;
                write_lines(&dir.join(format!("{}.txt", grid_name("seeds", r.result.k, 'a', r.result.alpha))), &r.seed_labels)?;
            }
            write_metrics_csv(File::create(dir.join("metrics.csv"))?, &rows)?;
        }
        None => write_metrics_csv(out, &rows)?,
    }
    Ok(records)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimulationRecord {
    pub config: BTreeMap<String, String>,
    pub source: String,
    pub seed_labels: Vec<String>,
    pub report: SimulationReport,
    /// RIS estimate of the same seed set, when the seeds come from a selection record.
    pub ris_capital: Option<f64>,
    pub relative_error: Option<f64>,
}

fn read_seed_source(p: &Path) -> Result<(Vec<String>, Option<f64>)> {
    let text = fs::read_to_string(p)?;
    if p.extension().is_some_and(|e| e == "json") {
        let rec: SelectRecord = serde_json::from_str(&text)?;
        Ok((rec.seed_labels, Some(rec.result.expected_capital)))
    } else {
        Ok((text.split_whitespace().map(str::to_string).collect(), None))
    }
}

fn simulate_source(cfg: &ExperimentConfig, data: &Dataset, p: &Path) -> Result<SimulationRecord> {
    let (labels, ris) = read_seed_source(p)?;
    let seeds = data.resolve_labels(&labels)?;
    let report = simulate(&data.graph, &data.targets, &cfg.model, &seeds, cfg.runs, cfg.seed)?;
    let relative_error = ris
        .filter(|_| report.mean_capital > 0.0)
        .map(|r| (r - report.mean_capital).abs() / report.mean_capital);
    Ok(SimulationRecord {
        config: cfg.resolved.clone(),
        source: p.display().to_string(),
        seed_labels: labels,
        report,
        ris_capital: ris,
        relative_error,
    })
}

const COMPARISON_COLUMNS: [&str; 8] = [
    "source", "seeds", "runs", "mc_capital", "mc_stderr", "mc_spread", "ris_capital", "relative_error",
];

fn write_comparison<W: Write>(out: W, records: &[SimulationRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COMPARISON_COLUMNS)?;
    let opt = |x: Option<f64>| x.map_or_else(String::new, |v| v.to_string());
    for r in records {
        let name = Path::new(&r.source).file_name().map_or(r.source.clone(), |n| n.to_string_lossy().into_owned());
        w.write_record([
            name,
            r.seed_labels.len().to_string(),
            r.report.runs.to_string(),
            r.report.mean_capital.to_string(),
            r.report.capital_stderr.to_string(),
            r.report.mean_spread.to_string(),
            opt(r.ris_capital),
            opt(r.relative_error),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn sorted_files(dir: &Path, prefix: &str, ext: &str) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension().is_some_and(|e| e == ext)
                && p.file_name().is_some_and(|n| n.to_string_lossy().starts_with(prefix))
        })
        .collect();
    files.sort();
    Ok(files)
}

/// `simulate`: Monte Carlo capital of a seed list (one label per line) or a
/// selection record. A directory of selection records yields one comparison CSV
/// row per record; a single source yields a JSON report.
pub fn cmd_simulate<W: Write>(cfg: &ExperimentConfig, mut out: W) -> Result<Vec<SimulationRecord>> {
    let source = cfg.seeds.as_ref().ok_or_else(|| AditumError::config("simulate needs `seeds`"))?;
    let data = Dataset::load(cfg)?;
    if source.is_dir() {
        let files = sorted_files(source, "select_", "json")?;
        if files.is_empty() {
            return Err(AditumError::format(format!("no selection records in {}", source.display())));
        }
        let records = files
            .iter()
            .map(|p| simulate_source(cfg, &data, p))
            .collect::<Result<Vec<_>>>()?;
        match &cfg.output {
            Some(p) => write_comparison(File::create(p)?, &records)?,
            None => write_comparison(out, &records)?,
        }
        Ok(records)
    } else {
        let record = simulate_source(cfg, &data, source)?;
        match &cfg.output {
            Some(p) => write_json(p, &record)?,
            None => {
                serde_json::to_writer_pretty(&mut out, &record)?;
                writeln!(out)?;
            }
        }
        Ok(vec![record])
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BaselineRecord {
    pub config: BTreeMap<String, String>,
    pub k: usize,
    pub gamma: f64,
    pub seed_labels: Vec<String>,
}

/// `baseline`: Deg-D greedy for every `k` and every `γ` (the configured `gamma`, or
/// `1 − α` over the `α` grid).
pub fn cmd_baseline<W: Write>(cfg: &ExperimentConfig, mut out: W) -> Result<Vec<BaselineRecord>> {
    let data = Dataset::load(cfg)?;
    let prefs = data
        .preferences
        .as_ref()
        .ok_or_else(|| AditumError::config("the Deg-D baseline needs `preferences`"))?;
    let gammas: Vec<f64> = match cfg.gamma {
        Some(g) => vec![g],
        None => cfg.alpha.iter().map(|&a| crate::baselines::gamma_for_alpha(a)).collect(),
    };
    let mut records = Vec::new();
    for &k in &cfg.k {
        for &gamma in &gammas {
            let seeds = deg_d_greedy(&data.graph, prefs, cfg.g_mode, gamma, k)?;
            records.push(BaselineRecord {
                config: cfg.resolved.clone(),
                k,
                gamma,
                seed_labels: data.labels(&seeds),
            });
        }
    }
    match &cfg.output {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            for r in &records {
                let name = grid_name("degd", r.k, 'g', r.gamma);
                write_json(&dir.join(format!("{name}.json")), r)?;
                write_lines(&dir.join(format!("{name}.txt")), &r.seed_labels)?;
            }
        }
        None => {
            for r in &records {
                writeln!(out, "{} {} {}", r.k, r.gamma, r.seed_labels.join(","))?;
            }
        }
    }
    Ok(records)
}

/// `metrics`: gathers the metric rows of every selection record in `results` into
/// one CSV, in file-name order.
pub fn cmd_metrics<W: Write>(cfg: &ExperimentConfig, out: W) -> Result<Vec<MetricsRow>> {
    let dir = cfg.results.as_ref().ok_or_else(|| AditumError::config("metrics needs `results`"))?;
    let rows = sorted_files(dir, "select_", "json")?
        .iter()
        .map(|p| -> Result<MetricsRow> {
            let rec: SelectRecord = serde_json::from_str(&fs::read_to_string(p)?)?;
            Ok(rec.metrics)
        })
        .collect::<Result<Vec<_>>>()?;
    match &cfg.output {
        Some(p) => write_metrics_csv(File::create(p)?, &rows)?,
        None => write_metrics_csv(out, &rows)?,
    }
    Ok(rows)
}

/// `synth`: synthetic profiles (`kind = profiles`) or a random graph
/// (`kind = graph`), written to `output` or `out`.
pub fn cmd_synth<W: Write>(cfg: &ExperimentConfig, out: W) -> Result<()> {
    let sink: Box<dyn Write> = match &cfg.output {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(out),
    };
    match cfg.kind.as_str() {
        "profiles" => {
            let graph = cfg
                .graph
                .as_ref()
                .map(|p| DiffusionGraph::load(open(p)?, cfg.weight_mode))
                .transpose()?;
            let n = graph.as_ref().map_or(cfg.nodes, DiffusionGraph::node_count);
            let sizes = vec![cfg.domain_size; cfg.attributes];
            let profiles = synth_profiles(n, &sizes, cfg.distribution, cfg.seed)?;
            profiles.write_csv(sink, graph.as_ref())?;
            if let Some(s) = &cfg.schema {
                profiles.schema().write(BufWriter::new(File::create(s)?))?;
            }
        }
        "graph" => {
            let graph = random_graph(cfg.nodes, cfg.mean_degree, cfg.seed)?;
            let mut sink = sink;
            graph.write_edge_list(&mut sink)?;
            sink.flush()?;
        }
        other => return Err(AditumError::config(format!("unknown synth kind `{other}` (profiles, graph)"))),
    }
    Ok(())
}
