//! Monte Carlo harness: seeded trials, summaries, CSV and SVG export.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{conditional_pair, gen_ba, gen_gnm, gen_rig, BaParams, GnmParams, RigParams, Seed};
use crate::graph::{simplify, MultiGraph, SimpleGraph};
use crate::partitions::{weighted_count_i_multi, TriPartition, WeightedCountParams};
use crate::treewidth::{exact_treewidth, heuristic_upper, lower_bound_degeneracy, lower_bound_separator, Heuristic, SeparatorCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Model {
    Gnm,
    GnmRep,
    Rig,
    Ba,
    Conditional,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Gnm => "gnm",
            Model::GnmRep => "gnm-rep",
            Model::Rig => "rig",
            Model::Ba => "ba",
            Model::Conditional => "conditional",
        }
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gnm" => Ok(Model::Gnm),
            "gnm-rep" => Ok(Model::GnmRep),
            "rig" => Ok(Model::Rig),
            "ba" => Ok(Model::Ba),
            "conditional" => Ok(Model::Conditional),
            other => Err(Error::invalid(format!("model: unknown model {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Exact,
    MinFill,
    MinDegree,
    Degeneracy,
    Separator,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::MinFill => "min-fill",
            Method::MinDegree => "min-degree",
            Method::Degeneracy => "degeneracy",
            Method::Separator => "separator",
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Method::Exact),
            "min-fill" => Ok(Method::MinFill),
            "min-degree" => Ok(Method::MinDegree),
            "degeneracy" => Ok(Method::Degeneracy),
            "separator" => Ok(Method::Separator),
            other => Err(Error::invalid(format!("methods: unknown method {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub model: Model,
    pub sizes: Vec<usize>,
    /// Edge/vertex ratio for `gnm`, `gnm-rep` and `conditional`.
    pub c: Option<f64>,
    pub p: Option<f64>,
    pub m_universe: Option<usize>,
    pub m_attach: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub methods: Vec<Method>,
    pub d: Option<usize>,
    /// `l = floor(l_fraction * n)` for the separator method and the
    /// conditional model's `|S| = l + 1`.
    pub l_fraction: Option<f64>,
    /// When false, `elapsed_ms` is recorded as 0 so reruns are byte-identical.
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn new(model: Model, sizes: Vec<usize>) -> Self {
        ExperimentConfig {
            model,
            sizes,
            c: None,
            p: None,
            m_universe: None,
            m_attach: None,
            trials: 1,
            seed: 0,
            methods: vec![Method::Exact],
            d: None,
            l_fraction: None,
            timing: true,
        }
    }

    /// Parses `key = value` lines; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut fields: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::parse(idx + 1, "expected `key = value`"))?;
            let key = key.trim().to_string();
            if !CONFIG_KEYS.contains(&key.as_str()) {
                return Err(Error::parse(idx + 1, format!("unknown key {key:?}")));
            }
            if fields.insert(key.clone(), (idx + 1, value.trim().to_string())).is_some() {
                return Err(Error::parse(idx + 1, format!("duplicate key {key:?}")));
            }
        }
        fn get<T: FromStr>(fields: &BTreeMap<String, (usize, String)>, key: &str) -> Result<Option<T>> {
            match fields.get(key) {
                None => Ok(None),
                Some((line, v)) => v.parse().map(Some).map_err(|_| Error::parse(*line, format!("{key}: cannot parse {v:?}"))),
            }
        }
        let model: Model = match fields.get("model") {
            Some((_, v)) => v.parse()?,
            None => return Err(Error::invalid("model: missing")),
        };
        let sizes = match fields.get("n_list") {
            Some((line, v)) => split_list(v)
                .map(|tok| tok.parse::<usize>().map_err(|_| Error::parse(*line, format!("n_list: bad size {tok:?}"))))
                .collect::<Result<Vec<_>>>()?,
            None => return Err(Error::invalid("n_list: missing")),
        };
        let mut cfg = ExperimentConfig::new(model, sizes);
        cfg.c = get(&fields, "c")?;
        cfg.p = get(&fields, "p")?;
        cfg.m_universe = get(&fields, "m_universe")?;
        cfg.m_attach = get(&fields, "m_attach")?;
        cfg.d = get(&fields, "d")?;
        cfg.l_fraction = get(&fields, "l_fraction")?;
        if let Some(t) = get(&fields, "trials")? {
            cfg.trials = t;
        }
        if let Some(s) = get(&fields, "seed")? {
            cfg.seed = s;
        }
        if let Some((_, v)) = fields.get("methods") {
            cfg.methods = split_list(v).map(str::parse).collect::<Result<Vec<_>>>()?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::invalid("trials: must be >= 1"));
        }
        if self.sizes.is_empty() {
            return Err(Error::invalid("n_list: empty"));
        }
        let need = |name: &str, present: bool| {
            if present {
                Ok(())
            } else {
                Err(Error::invalid(format!("{name}: required for model {}", self.model.name())))
            }
        };
        match self.model {
            Model::Gnm | Model::GnmRep => need("c", self.c.is_some())?,
            Model::Rig => {
                need("p", self.p.is_some())?;
                need("m_universe", self.m_universe.is_some())?;
            }
            Model::Ba => need("m_attach", self.m_attach.is_some())?,
            Model::Conditional => {
                need("c", self.c.is_some())?;
                need("d", self.d.is_some())?;
                need("l_fraction", self.l_fraction.is_some())?;
            }
        }
        if let Some(c) = self.c {
            if c.is_nan() || c < 0.0 {
                return Err(Error::invalid("c: must be >= 0"));
            }
        }
        if let Some(f) = self.l_fraction {
            if !(0.0..1.0).contains(&f) {
                return Err(Error::invalid("l_fraction: must lie in [0, 1)"));
            }
        }
        if let Some(d) = self.d {
            if d < 2 {
                return Err(Error::invalid("d: must be >= 2"));
            }
        }
        if self.methods.contains(&Method::Separator) && self.l_fraction.is_none() {
            return Err(Error::invalid("l_fraction: required by the separator method"));
        }
        Ok(())
    }

    fn params_text(&self, n: usize) -> String {
        match self.model {
            Model::Gnm | Model::GnmRep => format!("c={};m={}", fmt_f(self.c.unwrap_or(0.0)), edge_draws(self.c.unwrap_or(0.0), n)),
            Model::Rig => format!("p={};m_universe={}", fmt_f(self.p.unwrap_or(0.0)), self.m_universe.unwrap_or(0)),
            Model::Ba => format!("m_attach={}", self.m_attach.unwrap_or(0)),
            Model::Conditional => format!(
                "c={};m={};l={};d={}",
                fmt_f(self.c.unwrap_or(0.0)),
                edge_draws(self.c.unwrap_or(0.0), n),
                l_of(self.l_fraction.unwrap_or(0.0), n),
                self.d.unwrap_or(0)
            ),
        }
    }
}

const CONFIG_KEYS: [&str; 11] = [
    "model",
    "n_list",
    "c",
    "p",
    "m_universe",
    "m_attach",
    "trials",
    "seed",
    "methods",
    "d",
    "l_fraction",
];

fn split_list(v: &str) -> impl Iterator<Item = &str> {
    v.split(|ch: char| ch == ',' || ch.is_whitespace()).filter(|s| !s.is_empty())
}

fn fmt_f(x: f64) -> String {
    format!("{x}")
}

fn edge_draws(c: f64, n: usize) -> usize {
    (c * n as f64).round() as usize
}

fn l_of(fraction: f64, n: usize) -> usize {
    (fraction * n as f64).floor() as usize
}

/// The conditional model's partition: `S = 0..=l`, then `A` takes the
/// smaller half of the rest.
pub fn conditional_partition(n: usize, l: usize) -> Result<TriPartition> {
    if l + 1 > n {
        return Err(Error::invalid(format!("l_fraction: |S| = {} exceeds n = {n}", l + 1)));
    }
    TriPartition::contiguous(n, l + 1, (n - l - 1) / 2)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub model: String,
    pub n: usize,
    pub params: String,
    #[serde(rename = "trial")]
    pub trial_index: u64,
    #[serde(rename = "seed")]
    pub seed_used: u64,
    pub tw_lower: Option<usize>,
    pub tw_upper: Option<usize>,
    pub tw_exact: Option<usize>,
    pub i_value: Option<f64>,
    /// `ok`, or `;`-separated `resource-limit:<method>` / `skipped:<method>` notes.
    pub outcome: String,
    pub elapsed_ms: u64,
}

pub const CSV_COLUMNS: [&str; 11] = [
    "model",
    "n",
    "params",
    "trial",
    "seed",
    "tw_lower",
    "tw_upper",
    "tw_exact",
    "i_value",
    "outcome",
    "elapsed_ms",
];

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    cfg.validate()?;
    let jobs: Vec<(usize, u64)> = cfg.sizes.iter().flat_map(|&n| (0..cfg.trials as u64).map(move |t| (n, t))).collect();
    jobs.par_iter().map(|&(n, trial)| run_trial(cfg, n, trial)).collect()
}

/// Runs on a dedicated pool of `threads` workers; output is identical to
/// [`run_experiment`].
pub fn run_experiment_with_threads(cfg: &ExperimentConfig, threads: usize) -> Result<Vec<TrialRecord>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::invalid(format!("threads: {e}")))?;
    pool.install(|| run_experiment(cfg))
}

fn run_trial(cfg: &ExperimentConfig, n: usize, trial: u64) -> Result<TrialRecord> {
    let start = Instant::now();
    let seed = Seed::new(cfg.seed, trial);
    let mut i_value = None;
    let graph: SimpleGraph = match cfg.model {
        Model::Gnm => gen_gnm(
            &GnmParams {
                n,
                m: edge_draws(cfg.c.unwrap_or(0.0), n),
                replacement: false,
            },
            seed,
        )?
        .to_simple(),
        Model::GnmRep => gen_gnm(
            &GnmParams {
                n,
                m: edge_draws(cfg.c.unwrap_or(0.0), n),
                replacement: true,
            },
            seed,
        )?
        .to_simple(),
        Model::Rig => {
            let p = RigParams {
                n,
                m: cfg.m_universe.unwrap_or(0),
                p: cfg.p.unwrap_or(0.0),
            };
            gen_rig(&p, seed)?.graph
        }
        Model::Ba => simplify(&gen_ba(
            &BaParams {
                n,
                m: cfg.m_attach.unwrap_or(0),
            },
            seed,
        )?),
        Model::Conditional => {
            let w = conditional_partition(n, l_of(cfg.l_fraction.unwrap_or(0.0), n))?;
            let m = edge_draws(cfg.c.unwrap_or(0.0), n);
            let mg = crate::generators::gen_conditional(n, m, &w, seed)?;
            let params = WeightedCountParams::new(cfg.d.unwrap_or(0))?;
            i_value = Some(weighted_count_i_multi(&mg, w.b(), &params));
            simplify(&mg)
        }
    };
    let mut lower: Option<usize> = None;
    let mut upper: Option<usize> = None;
    let mut exact = None;
    let mut notes: Vec<String> = Vec::new();
    for &method in &cfg.methods {
        match method {
            Method::Exact => match exact_treewidth(&graph) {
                Ok(r) => exact = Some(r.width),
                Err(Error::ResourceLimit { .. }) => notes.push(format!("resource-limit:{}", method.name())),
                Err(e) => return Err(e),
            },
            Method::MinFill | Method::MinDegree => {
                let rule = if method == Method::MinFill {
                    Heuristic::MinFill
                } else {
                    Heuristic::MinDegree
                };
                let w = heuristic_upper(&graph, rule).width;
                upper = Some(upper.map_or(w, |u| u.min(w)));
            }
            Method::Degeneracy => {
                let w = lower_bound_degeneracy(&graph);
                lower = Some(lower.map_or(w, |l| l.max(w)));
            }
            Method::Separator => {
                let l = l_of(cfg.l_fraction.unwrap_or(0.0), n);
                if l <= 4 {
                    notes.push(format!("skipped:{}", method.name()));
                    continue;
                }
                match lower_bound_separator(&graph, l) {
                    Ok(SeparatorCertificate::NoBalancedPartition) => lower = Some(lower.map_or(l + 1, |x| x.max(l + 1))),
                    Ok(SeparatorCertificate::PartitionFound(_)) => {}
                    Err(Error::ResourceLimit { .. }) => notes.push(format!("resource-limit:{}", method.name())),
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(TrialRecord {
        model: cfg.model.name().to_string(),
        n,
        params: cfg.params_text(n),
        trial_index: trial,
        seed_used: cfg.seed,
        tw_lower: lower,
        tw_upper: upper,
        tw_exact: exact,
        i_value,
        outcome: if notes.is_empty() { "ok".to_string() } else { notes.join(";") },
        elapsed_ms: if cfg.timing { start.elapsed().as_millis() as u64 } else { 0 },
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConditionalStats {
    pub trials: usize,
    pub mean_i: f64,
    /// Standard error of `mean_i`.
    pub stderr: f64,
    pub frac_zero: f64,
    /// Standard error of `frac_zero`.
    pub stderr_zero: f64,
    /// Largest `|I(after) - I(before)|` over one resampled draw per trial.
    pub max_abs_delta: f64,
    pub lipschitz_violations: usize,
}

/// Samples the conditional space `trials` times (trial `i` on stream `i`)
/// and records the weighted count over `B`. Each trial also replaces one
/// uniformly chosen draw by a fresh draw from `E_W` and checks the change
/// against `1 + eps`.
pub fn conditional_i_stats(n: usize, m: usize, w: &TriPartition, d: usize, trials: usize, master_seed: u64) -> Result<ConditionalStats> {
    if w.n() != n {
        return Err(Error::invalid(format!("partition covers {} vertices, expected {n}", w.n())));
    }
    if trials == 0 {
        return Err(Error::invalid("trials must be >= 1"));
    }
    if m > 0 && crate::generators::conditional_pair_count(w) == 0 {
        return Err(Error::invalid("E_W is empty"));
    }
    let params = WeightedCountParams::new(d)?;
    let bound = params.lipschitz();
    let samples: Vec<(f64, f64)> = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let mut rng = Seed::new(master_seed, trial).rng();
            let mut mg = MultiGraph::new(n);
            for _ in 0..m {
                let (u, v) = conditional_pair(w, &mut rng);
                mg.push_unchecked(u, v);
            }
            let before = weighted_count_i_multi(&mg, w.b(), &params);
            let delta = if m > 0 {
                let idx = rng.gen_range(0..m);
                let (u, v) = conditional_pair(w, &mut rng);
                mg.replace_edge(idx, u, v).expect("valid draw");
                weighted_count_i_multi(&mg, w.b(), &params) - before
            } else {
                0.0
            };
            (before, delta)
        })
        .collect();
    let k = trials as f64;
    let mean_i = samples.iter().map(|s| s.0).sum::<f64>() / k;
    let var = if trials > 1 {
        samples.iter().map(|s| (s.0 - mean_i).powi(2)).sum::<f64>() / (k - 1.0)
    } else {
        0.0
    };
    let frac_zero = samples.iter().filter(|s| s.0 == 0.0).count() as f64 / k;
    let max_abs_delta = samples.iter().map(|s| s.1.abs()).fold(0.0, f64::max);
    Ok(ConditionalStats {
        trials,
        mean_i,
        stderr: (var / k).sqrt(),
        frac_zero,
        stderr_zero: (frac_zero * (1.0 - frac_zero) / k).sqrt(),
        max_abs_delta,
        lipschitz_violations: samples.iter().filter(|s| s.1.abs() > bound + 1e-12).count(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ColumnStats {
    pub count: usize,
    pub mean: f64,
    /// Sample standard deviation; 0 for a single value.
    pub stddev: f64,
    pub min: f64,
    pub max: f64,
}

impl ColumnStats {
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let k = values.len() as f64;
        let mean = values.iter().sum::<f64>() / k;
        let stddev = if values.len() > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0)).sqrt()
        } else {
            0.0
        };
        Some(ColumnStats {
            count: values.len(),
            mean,
            stddev,
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryStats {
    pub model: String,
    pub n: usize,
    pub params: String,
    pub count: usize,
    pub tw_lower: Option<ColumnStats>,
    pub tw_upper: Option<ColumnStats>,
    pub tw_exact: Option<ColumnStats>,
    pub i_value: Option<ColumnStats>,
    pub elapsed_ms: Option<ColumnStats>,
}

/// Groups by `(model, n, params)` in that order.
pub fn summarize(records: &[TrialRecord]) -> Vec<SummaryStats> {
    let mut groups: BTreeMap<(String, usize, String), Vec<&TrialRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.model.clone(), r.n, r.params.clone())).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((model, n, params), rs)| {
            let col = |f: &dyn Fn(&TrialRecord) -> Option<f64>| ColumnStats::of(&rs.iter().filter_map(|r| f(r)).collect::<Vec<_>>());
            SummaryStats {
                model,
                n,
                params,
                count: rs.len(),
                tw_lower: col(&|r| r.tw_lower.map(|v| v as f64)),
                tw_upper: col(&|r| r.tw_upper.map(|v| v as f64)),
                tw_exact: col(&|r| r.tw_exact.map(|v| v as f64)),
                i_value: col(&|r| r.i_value),
                elapsed_ms: col(&|r| Some(r.elapsed_ms as f64)),
            }
        })
        .collect()
}

pub fn write_records_csv<W: io::Write>(records: &[TrialRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if records.is_empty() {
        w.write_record(CSV_COLUMNS)?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records_csv<R: io::Read>(input: R) -> Result<Vec<TrialRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    let headers = rdr.headers()?.clone();
    if headers.iter().ne(CSV_COLUMNS.iter().copied()) {
        return Err(Error::invalid(format!("unexpected CSV header {:?}", headers.iter().collect::<Vec<_>>())));
    }
    rdr.deserialize().map(|r| r.map_err(Error::from)).collect()
}

pub fn write_summary_csv<W: io::Write>(stats: &[SummaryStats], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["model".to_string(), "n".into(), "params".into(), "count".into()];
    for col in ["tw_lower", "tw_upper", "tw_exact", "i_value", "elapsed_ms"] {
        for stat in ["mean", "stddev", "min", "max"] {
            header.push(format!("{col}_{stat}"));
        }
    }
    w.write_record(&header)?;
    for s in stats {
        let mut row = vec![s.model.clone(), s.n.to_string(), s.params.clone(), s.count.to_string()];
        for col in [&s.tw_lower, &s.tw_upper, &s.tw_exact, &s.i_value, &s.elapsed_ms] {
            match col {
                Some(c) => row.extend([c.mean, c.stddev, c.min, c.max].iter().map(|v| v.to_string())),
                None => row.extend(std::iter::repeat_n(String::new(), 4)),
            }
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// SVG line plot of the mean of `y` against `x`, one polyline per value of
/// the `model` column (a single series if the column is absent). `y` may be
/// a ratio `col1/col2` of two columns.
pub fn plot_svg<R: io::Read>(input: R, x: &str, y: &str) -> Result<String> {
    let mut rdr = csv::Reader::from_reader(input);
    let headers = rdr.headers()?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::invalid(format!("unknown column {name:?}")))
    };
    let xi = col(x)?;
    let (yi, denom) = match y.split_once('/') {
        Some((num, den)) => (col(num)?, Some(col(den)?)),
        None => (col(y)?, None),
    };
    let model_col = headers.iter().position(|h| h == "model");
    let mut series: BTreeMap<String, BTreeMap<OrderedKey, (f64, usize)>> = BTreeMap::new();
    for row in rdr.records() {
        let row = row?;
        let num = |i: usize| row.get(i).and_then(|v| v.parse::<f64>().ok());
        let (Some(xv), Some(mut yv)) = (num(xi), num(yi)) else { continue };
        if let Some(di) = denom {
            match num(di) {
                Some(dv) if dv != 0.0 => yv /= dv,
                _ => continue,
            }
        }
        let name = model_col.and_then(|i| row.get(i)).unwrap_or("series").to_string();
        let e = series.entry(name).or_default().entry(OrderedKey(xv)).or_insert((0.0, 0));
        e.0 += yv;
        e.1 += 1;
    }
    let points: Vec<(String, Vec<(f64, f64)>)> = series
        .into_iter()
        .map(|(name, pts)| (name, pts.into_iter().map(|(k, (sum, cnt))| (k.0, sum / cnt as f64)).collect()))
        .collect();
    Ok(render_svg(&points, x, y))
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct OrderedKey(f64);

impl Eq for OrderedKey {}

impl PartialOrd for OrderedKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrderedKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn render_svg(series: &[(String, Vec<(f64, f64)>)], x_label: &str, y_label: &str) -> String {
    let (w, h, pad) = (640.0, 420.0, 60.0);
    let all = series.iter().flat_map(|(_, p)| p.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 == x0 {
        x1 = x0 + 1.0;
    }
    if y1 == y0 {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| pad + (x - x0) / (x1 - x0) * (w - 2.0 * pad);
    let sy = |y: f64| h - pad - (y - y0) / (y1 - y0) * (h - 2.0 * pad);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<path d="M{pad} {} L{pad} {} L{} {}" fill="none" stroke="black"/>"#,
        pad,
        h - pad,
        w - pad,
        h - pad
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        w / 2.0,
        h - 15.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="15" y="{}" text-anchor="middle" transform="rotate(-90 15 {})">{}</text>"#,
        h / 2.0,
        h / 2.0,
        escape(y_label)
    );
    for (v, anchor, xx, yy) in [(x0, "start", pad, h - pad + 18.0), (x1, "end", w - pad, h - pad + 18.0)] {
        let _ = writeln!(out, r#"<text x="{xx}" y="{yy}" text-anchor="{anchor}" font-size="11">{v}</text>"#);
    }
    for (v, yy) in [(y0, h - pad), (y1, pad)] {
        let _ = writeln!(out, r#"<text x="{}" y="{yy}" text-anchor="end" font-size="11">{v:.4}</text>"#, pad - 5.0);
    }
    for (k, (name, pts)) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let coords: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"><title>{}</title></polyline>"#,
            coords.join(" "),
            escape(name)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" fill="{color}" font-size="12">{}</text>"#,
            w - pad + 5.0,
            pad + 15.0 * k as f64,
            escape(name)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
