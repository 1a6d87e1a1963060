//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification claim failed, 2 usage or input
//! error, 3 resource limit exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;

use crate::analytics::{
    azuma_zero_bound, ba_f, ba_min_m, ba_segment_max, entropy_factor, er_terms, expected_i, monotonicity_scan, rig_term, z_of, z_of_compensated,
    Direction, ErBoundParams, ScanFunction,
};
use crate::error::{Error, Result};
use crate::experiments::{
    conditional_i_stats, run_experiment, run_experiment_with_threads, summarize, write_records_csv, write_summary_csv, ExperimentConfig,
};
use crate::generators::{gen_ba, gen_gnm, gen_ktree, gen_rig, BaParams, GnmParams, RigParams, Seed};
use crate::graph::{simplify, MultiGraph, SimpleGraph};
use crate::partitions::{
    count_balanced_partitions_capped, is_balanced, is_d_rigid, is_l_partition, rigidify, weighted_count_i, TriPartition, WeightedCountParams,
    DEFAULT_SEARCH_CAP,
};
use crate::treewidth::{
    exact_treewidth_capped, heuristic_upper, lower_bound_degeneracy, lower_bound_separator_capped, Heuristic, SeparatorCertificate, DEFAULT_EXACT_CAP,
};

#[derive(Debug, Parser)]
#[command(name = "twlab", version, about = "Treewidth laboratory for random graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenModel {
    Gnm,
    GnmRep,
    Rig,
    Ba,
    Ktree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TwMethod {
    Exact,
    MinFill,
    MinDegree,
    Degeneracy,
    Separator,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PartitionMode {
    Check,
    Rigidify,
    Enumerate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Constants,
    Monotonicity,
    Stochastic,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a random graph and write it as an edge list.
    Gen {
        #[arg(long, value_enum)]
        model: GenModel,
        #[arg(long)]
        n: usize,
        /// Edge count (gnm), universe size (rig) or attachments per vertex (ba).
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        stream: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// For rig: also write each vertex's element set, one line per vertex.
        #[arg(long)]
        sets_out: Option<PathBuf>,
    },
    /// Treewidth bounds for a graph file (parallel edges are merged).
    Tw {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        method: TwMethod,
        #[arg(long)]
        l: Option<usize>,
        /// Write the witnessing tree decomposition here.
        #[arg(long)]
        td_out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
        max_n: usize,
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        search_cap: u128,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Balanced l-partition tools.
    Partition {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum)]
        mode: PartitionMode,
        #[arg(long)]
        partition: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        search_cap: u128,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the numerical claims.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 50)]
        d_trunc: usize,
        #[arg(long, default_value_t = 10)]
        segments: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a Monte Carlo experiment described by a config file.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
        /// Also write grouped summary statistics.
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Record elapsed_ms as 0 for byte-identical reruns.
        #[arg(long)]
        no_timing: bool,
    },
    /// SVG plot of one CSV column against another.
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::ResourceLimit { .. } => 3,
                _ => 2,
            }
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Gen {
            model,
            n,
            m,
            p,
            k,
            seed,
            stream,
            out: path,
            sets_out,
        } => {
            let seed = Seed::new(seed, stream);
            let need = |name: &str, v: Option<usize>| v.ok_or_else(|| Error::invalid(format!("--{name} is required for this model")));
            let text = match model {
                GenModel::Gnm | GenModel::GnmRep => {
                    let params = GnmParams {
                        n,
                        m: need("m", m)?,
                        replacement: model == GenModel::GnmRep,
                    };
                    gen_gnm(&params, seed)?.to_edge_list()
                }
                GenModel::Rig => {
                    let p = p.ok_or_else(|| Error::invalid("--p is required for this model"))?;
                    let sample = gen_rig(&RigParams { n, m: need("m", m)?, p }, seed)?;
                    if let Some(path) = sets_out {
                        let mut sets = String::new();
                        for (v, s) in sample.element_sets.iter().enumerate() {
                            let members: Vec<String> = s.iter().map(|e| e.to_string()).collect();
                            sets.push_str(&format!("{v}: {}\n", members.join(" ")));
                        }
                        fs::write(path, sets)?;
                    }
                    sample.graph.to_edge_list()
                }
                GenModel::Ba => gen_ba(&BaParams { n, m: need("m", m)? }, seed)?.to_edge_list(),
                GenModel::Ktree => gen_ktree(need("k", k)?, n, seed)?.to_edge_list(),
            };
            emit(path.as_deref(), out, &text)?;
            Ok(0)
        }
        Command::Tw {
            input,
            method,
            l,
            td_out,
            max_n,
            search_cap,
            format,
        } => {
            let g = read_graph(&input)?;
            let (label, value, td) = match method {
                TwMethod::Exact => {
                    let r = exact_treewidth_capped(&g, max_n)?;
                    ("exact", r.width.to_string(), Some(r.decomposition))
                }
                TwMethod::MinFill | TwMethod::MinDegree => {
                    let rule = if method == TwMethod::MinFill {
                        Heuristic::MinFill
                    } else {
                        Heuristic::MinDegree
                    };
                    let r = heuristic_upper(&g, rule);
                    (
                        if rule == Heuristic::MinFill { "min-fill" } else { "min-degree" },
                        r.width.to_string(),
                        Some(r.decomposition),
                    )
                }
                TwMethod::Degeneracy => ("degeneracy", lower_bound_degeneracy(&g).to_string(), None),
                TwMethod::Separator => {
                    let l = l.ok_or_else(|| Error::invalid("--l is required for the separator method"))?;
                    match lower_bound_separator_capped(&g, l, search_cap)? {
                        SeparatorCertificate::NoBalancedPartition => ("separator", format!("no-balanced-partition (tw > {l})"), None),
                        SeparatorCertificate::PartitionFound(w) => {
                            if format == Format::Text {
                                writeln!(out, "partition-found")?;
                                out.write_all(w.to_text().as_bytes())?;
                                return Ok(0);
                            }
                            ("separator", "partition-found".to_string(), None)
                        }
                    }
                }
            };
            if let (Some(path), Some(td)) = (td_out, td) {
                fs::write(path, td.to_text())?;
            }
            match format {
                Format::Text => writeln!(out, "{value}")?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(out);
                    w.write_record(["method", "value"])?;
                    w.write_record([label, value.as_str()])?;
                    w.flush()?;
                }
            }
            Ok(0)
        }
        Command::Partition {
            input,
            l,
            d,
            mode,
            partition,
            search_cap,
            format,
        } => {
            let g = read_graph(&input)?;
            let load = || -> Result<TriPartition> {
                let path = partition
                    .as_ref()
                    .ok_or_else(|| Error::invalid("--partition is required for this mode"))?;
                TriPartition::from_text(g.n(), &fs::read_to_string(path)?)
            };
            let rows: Vec<(String, String)> = match mode {
                PartitionMode::Check => {
                    let w = load()?;
                    let mut rows = vec![
                        ("l_partition".to_string(), is_l_partition(&g, &w).to_string()),
                        ("balanced".to_string(), is_balanced(&w, l)?.to_string()),
                        ("d_rigid".to_string(), is_d_rigid(&g, &w, d).to_string()),
                    ];
                    if d >= 2 {
                        rows.push((
                            "weighted_i".to_string(),
                            weighted_count_i(&g, w.b(), &WeightedCountParams::new(d)?).to_string(),
                        ));
                    }
                    rows
                }
                PartitionMode::Rigidify => {
                    let w = rigidify(&g, &load()?, d)?;
                    if format == Format::Text {
                        out.write_all(w.to_text().as_bytes())?;
                        return Ok(0);
                    }
                    let join = |s: &crate::graph::VertexSet| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
                    vec![
                        ("S".to_string(), join(w.s())),
                        ("A".to_string(), join(w.a())),
                        ("B".to_string(), join(w.b())),
                    ]
                }
                PartitionMode::Enumerate => {
                    let c = count_balanced_partitions_capped(&g, l, d, search_cap)?;
                    vec![("j1".to_string(), c.j1.to_string()), ("j2".to_string(), c.j2.to_string())]
                }
            };
            write_rows(out, format, ("key", "value"), &rows)?;
            Ok(0)
        }
        Command::Verify {
            suite,
            d_trunc,
            segments,
            format,
        } => {
            let claims = verify_claims(suite, d_trunc, segments)?;
            write_claims(out, format, &claims)?;
            Ok(if claims.iter().all(|c| c.pass) { 0 } else { 1 })
        }
        Command::Experiment {
            config,
            out: path,
            threads,
            summary,
            no_timing,
        } => {
            let mut cfg = ExperimentConfig::parse(&fs::read_to_string(config)?)?;
            cfg.timing = !no_timing;
            let records = match threads {
                Some(t) => run_experiment_with_threads(&cfg, t)?,
                None => run_experiment(&cfg)?,
            };
            write_records_csv(&records, fs::File::create(path)?)?;
            if let Some(path) = summary {
                write_summary_csv(&summarize(&records), fs::File::create(path)?)?;
            }
            Ok(0)
        }
        Command::Plot { input, x, y, out: path } => {
            let svg = crate::experiments::plot_svg(fs::File::open(input)?, &x, &y)?;
            fs::write(path, svg)?;
            Ok(0)
        }
    }
}

fn emit(path: Option<&Path>, out: &mut dyn Write, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Reads the edge-list format, merging repeated edges.
pub fn read_graph(path: &Path) -> Result<SimpleGraph> {
    Ok(simplify(&MultiGraph::from_edge_list(&fs::read_to_string(path)?)?))
}

fn write_rows(out: &mut dyn Write, format: Format, header: (&str, &str), rows: &[(String, String)]) -> Result<()> {
    match format {
        Format::Text => {
            for (k, v) in rows {
                writeln!(out, "{k}: {v}")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([header.0, header.1])?;
            for (k, v) in rows {
                w.write_record([k, v])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// One checked numerical statement.
#[derive(Clone, Debug, PartialEq)]
pub struct Claim {
    pub id: String,
    pub computed: String,
    pub expected: String,
    pub pass: bool,
}

impl Claim {
    fn new(id: impl Into<String>, computed: impl Into<String>, expected: impl Into<String>, pass: bool) -> Self {
        Claim {
            id: id.into(),
            computed: computed.into(),
            expected: expected.into(),
            pass,
        }
    }
}

fn write_claims(out: &mut dyn Write, format: Format, claims: &[Claim]) -> Result<()> {
    match format {
        Format::Text => {
            let width = claims.iter().map(|c| c.id.len()).max().unwrap_or(0);
            for c in claims {
                let status = if c.pass { "PASS" } else { "FAIL" };
                writeln!(out, "{:<width$} : {status}  computed {}; expected {}", c.id, c.computed, c.expected)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["claim", "computed", "expected", "status"])?;
            for c in claims {
                w.write_record([
                    c.id.as_str(),
                    c.computed.as_str(),
                    c.expected.as_str(),
                    if c.pass { "PASS" } else { "FAIL" },
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn verify_claims(suite: Suite, d_trunc: usize, segments: usize) -> Result<Vec<Claim>> {
    let mut claims = Vec::new();
    if matches!(suite, Suite::Constants | Suite::All) {
        claims.extend(constant_claims(d_trunc, segments)?);
    }
    if matches!(suite, Suite::Monotonicity | Suite::All) {
        claims.extend(monotonicity_claims()?);
    }
    if matches!(suite, Suite::Stochastic | Suite::All) {
        claims.extend(stochastic_claims()?);
    }
    Ok(claims)
}

fn constant_claims(d_trunc: usize, segments: usize) -> Result<Vec<Claim>> {
    let mut c = Vec::new();
    let z = z_of(0.0, 0.0, 1.073, d_trunc)?;
    let zc = z_of_compensated(0.0, 0.0, 1.073, d_trunc)?;
    c.push(Claim::new(
        "z(0,0,1.073) < 1",
        format!("{z:.10} (log-space {zc:.10})"),
        "< 1",
        z < 1.0 && zc < 1.0,
    ));
    c.push(Claim::new(
        "z(0,0,1.073) = 0.9993 +- 1e-3",
        format!("{z:.10}"),
        "0.9993 +- 1e-3",
        (z - 0.9993).abs() <= 1e-3,
    ));

    let phi_ok = [0.5, 1.0, 1.073, 2.0].iter().all(|&cc| {
        [0.0, 0.01, 0.1].iter().all(|&beta| {
            let t = er_terms(&ErBoundParams {
                t: 0.5,
                c: cc,
                beta,
                epsilon: 0.0,
                d_trunc: d_trunc.max(2),
            });
            (t.phi1 - (0.5f64 + beta).powf(cc)).abs() < 1e-12
        })
    });
    c.push(Claim::new(
        "phi1(1/2) = (1/2 + beta)^c",
        if phi_ok { "holds on grid" } else { "mismatch" },
        "identity",
        phi_ok,
    ));

    let seg = ba_segment_max(segments, 0.0)?;
    c.push(Claim::new(
        format!("ba_segment_max({segments}) < 0.9425"),
        format!("{seg:.7}"),
        "< 0.9425",
        seg < 0.9425,
    ));
    let fine = ba_segment_max(10_000, 0.0)?;
    c.push(Claim::new(
        "ba_segment_max(10000) = 0.9424 +- 2e-4",
        format!("{fine:.7}"),
        "0.9424 +- 2e-4",
        (fine - 0.9424).abs() <= 2e-4,
    ));
    let f_quarter = ba_f(0.25, 1.0 / 3.0, 0.0)?;
    c.push(Claim::new(
        "f(1/4) = (7/8)^(1/2) = 0.9354",
        format!("{f_quarter:.7}"),
        "0.9354 +- 5e-5",
        (f_quarter - 0.9354).abs() <= 5e-5,
    ));
    let m = ba_min_m(0.9425)?;
    c.push(Claim::new("ba_min_m(0.9425) = 12", m.to_string(), "12", m == 12));
    let (p11, p12) = (2.0 * 0.9425f64.powi(11), 2.0 * 0.9425f64.powi(12));
    c.push(Claim::new("2 * 0.9425^11 > 1", format!("{p11:.6}"), "> 1", p11 > 1.0));
    c.push(Claim::new("0.9425^12 < 1/2", format!("{:.6}", p12 / 2.0), "< 0.5", p12 < 1.0));

    let rt = rig_term(1.0 / 3.0, 2.0);
    c.push(Claim::new("rig_term(1/3, 2) < 1", format!("{rt:.10}"), "< 1", rt < 1.0));
    c.push(Claim::new(
        "rig_term(1/3, 2) = 0.9702 +- 1e-3",
        format!("{rt:.10}"),
        "0.9702 +- 1e-3",
        (rt - 0.9702).abs() <= 1e-3,
    ));
    let scan = monotonicity_scan(ScanFunction::RigTermFun, 2.0, 0.0, (1.0 / 3.0, 0.5), 1000)?;
    c.push(Claim::new(
        "rig_term decreasing on [1/3, 1/2] at c = 2",
        scan.direction.to_string(),
        "decreasing",
        scan.direction == Direction::Decreasing,
    ));
    Ok(c)
}

fn monotonicity_claims() -> Result<Vec<Claim>> {
    let (c, beta) = (1.073, 1e-3);
    let interval = ((1.0 - beta) / 2.0, 2.0 / 3.0);
    let grid = crate::analytics::DEFAULT_GRID_POINTS;
    let mut claims = Vec::new();
    let r = monotonicity_scan(ScanFunction::RFun, c, beta, interval, grid)?;
    claims.push(Claim::new(
        "r(t) decreasing on [(1-beta)/2, 2/3], c = 1.073",
        format!("{} (min {:.8} at t = {:.5})", r.direction, r.minimum.1, r.minimum.0),
        "decreasing",
        r.direction == Direction::Decreasing,
    ));
    let g = monotonicity_scan(ScanFunction::GFun, c, beta, interval, grid)?;
    claims.push(Claim::new(
        "g(t) increasing on [(1-beta)/2, 2/3], c = 1.073",
        g.direction.to_string(),
        "increasing",
        g.direction == Direction::Increasing,
    ));
    let f = monotonicity_scan(ScanFunction::F0, 1.0, 0.0, (0.01, 0.99), 999)?;
    let ok = (f.minimum.0 - 0.5).abs() < 1e-9 && (f.minimum.1 - 0.5).abs() < 1e-9;
    claims.push(Claim::new(
        "f0 minimum 0.5 at t = 1/2",
        format!("{:.10} at t = {:.6}", f.minimum.1, f.minimum.0),
        "0.5 at t = 0.5",
        ok,
    ));
    let h = entropy_factor(1e-6)?;
    claims.push(Claim::new(
        "f0(t) -> 1 as t -> 0",
        format!("1/f0(1e-6) = {h:.8}"),
        "<= 1.00002",
        h <= 1.00002,
    ));
    Ok(claims)
}

fn stochastic_claims() -> Result<Vec<Claim>> {
    let mut claims = Vec::new();
    let (n, m, l, d) = (60, 64, 3, 3);
    let w = TriPartition::contiguous(n, l + 1, 28)?;
    let trials = 10_000;
    let stats = conditional_i_stats(n, m, &w, d, trials, 0)?;
    let e = expected_i(n, m, w.b().len(), l, d, true)?;
    claims.push(Claim::new(
        "E[I] formula vs conditional sampling",
        format!("mean {:.4} (se {:.4})", stats.mean_i, stats.stderr),
        format!("{e:.4} within 3 se"),
        (stats.mean_i - e).abs() <= 3.0 * stats.stderr,
    ));
    let bound = azuma_zero_bound(e, WeightedCountParams::new(d)?.lipschitz(), m)?;
    claims.push(Claim::new(
        "P(I = 0) <= Azuma bound",
        format!("{:.4} (se {:.4})", stats.frac_zero, stats.stderr_zero),
        format!("<= {bound:.4} + 3 se"),
        stats.frac_zero <= bound + 3.0 * stats.stderr_zero,
    ));
    claims.push(Claim::new(
        "|delta I| <= 1 + eps under draw resampling",
        format!("max {:.4}, {} violations", stats.max_abs_delta, stats.lipschitz_violations),
        "0 violations",
        stats.lipschitz_violations == 0,
    ));

    let exact_m = (0..200u64).all(|s| {
        gen_gnm(
            &GnmParams {
                n: 50,
                m: 300,
                replacement: false,
            },
            Seed::new(3, s),
        )
        .map(|g| g.to_simple().edge_count() == 300)
        .unwrap_or(false)
    });
    claims.push(Claim::new(
        "gen_gnm emits exactly m edges",
        if exact_m { "200/200 runs" } else { "mismatch" },
        "all runs",
        exact_m,
    ));

    let (hits, pairs, p_edge) = rig_pair_frequency(200, 50, 0.1, 100, 0)?;
    let freq = hits as f64 / pairs as f64;
    let se = (p_edge * (1.0 - p_edge) / pairs as f64).sqrt();
    claims.push(Claim::new(
        "gen_rig pair frequency = 1 - (1 - p^2)^m",
        format!("{freq:.4} over {pairs} pairs"),
        format!("{p_edge:.4} +- 3 se ({:.4})", 3.0 * se),
        (freq - p_edge).abs() <= 3.0 * se,
    ));

    let degree_ok = (0..100u64).all(|s| {
        let (n, m) = (300, 3);
        gen_ba(&BaParams { n, m }, Seed::new(5, s))
            .map(|g| g.degrees().iter().sum::<usize>() == 2 * (m * (m + 1) / 2 + m * (n - m - 1)))
            .unwrap_or(false)
    });
    claims.push(Claim::new(
        "gen_ba degree-sum identity",
        if degree_ok { "100/100 runs" } else { "mismatch" },
        "all runs",
        degree_ok,
    ));
    Ok(claims)
}

/// Counts edges over `n / 2` vertex-disjoint pairs in each of `graphs`
/// random intersection graphs; disjoint pairs are independent. Returns
/// `(edges seen, pairs, 1 - (1 - p^2)^m)`.
pub fn rig_pair_frequency(n: usize, m: usize, p: f64, graphs: u64, master: u64) -> Result<(usize, usize, f64)> {
    let mut hits = 0;
    let mut pairs = 0;
    for s in 0..graphs {
        let g = gen_rig(&RigParams { n, m, p }, Seed::new(master, s))?.graph;
        let mut order: Vec<usize> = (0..n).collect();
        let mut rng = Seed::new(master ^ 0x5eed, s).rng();
        for i in (1..n).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        for pair in order.chunks_exact(2) {
            pairs += 1;
            if g.has_edge(pair[0], pair[1]) {
                hits += 1;
            }
        }
    }
    Ok((hits, pairs, 1.0 - (1.0 - p * p).powi(m as i32)))
}

/// Convenience for the binary: runs with the process's stdio.
pub fn main_with_args(argv: impl IntoIterator<Item = OsString>) -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(argv, &mut stdout.lock(), &mut stderr.lock())
}
