//! Seeded samplers for the random graph models.
//!
//! Every call draws from a ChaCha8 stream keyed by `(master, stream_index)`:
//! the 64-bit master seeds the key through `seed_from_u64`, and the stream
//! index selects the ChaCha stream. Outputs therefore depend only on
//! `(params, seed)` and never on thread count or call order. Golden tests
//! pin this contract; changing the PRNG breaks them on purpose.

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, SimpleGraph, VertexSet};
use crate::partitions::TriPartition;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Seed {
    pub master: u64,
    pub stream_index: u64,
}

impl Seed {
    pub fn new(master: u64, stream_index: u64) -> Self {
        Seed { master, stream_index }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master);
        rng.set_stream(self.stream_index);
        rng
    }
}

/// `C(n, 2)` as `u64`.
pub fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Colex pair index: `(u, v)` with `u < v` maps to `v(v-1)/2 + u`.
pub fn pair_to_index(u: usize, v: usize) -> u64 {
    let (u, v) = (u.min(v) as u64, u.max(v) as u64);
    v * (v - 1) / 2 + u
}

pub fn index_to_pair(k: u64) -> (usize, usize) {
    let mut v = ((1.0 + (1.0 + 8.0 * k as f64).sqrt()) / 2.0).floor() as u64;
    while v * (v - 1) / 2 > k {
        v -= 1;
    }
    while (v + 1) * v / 2 <= k {
        v += 1;
    }
    let u = k - v * (v - 1) / 2;
    (u as usize, v as usize)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GnmParams {
    pub n: usize,
    pub m: usize,
    pub replacement: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GnmSample {
    Simple(SimpleGraph),
    Multi(MultiGraph),
}

impl GnmSample {
    pub fn to_simple(&self) -> SimpleGraph {
        match self {
            GnmSample::Simple(g) => g.clone(),
            GnmSample::Multi(mg) => crate::graph::simplify(mg),
        }
    }

    pub fn to_edge_list(&self) -> String {
        match self {
            GnmSample::Simple(g) => g.to_edge_list(),
            GnmSample::Multi(mg) => mg.to_edge_list(),
        }
    }
}

/// `G(n, m)`: without replacement a uniform m-subset of pairs (Floyd's
/// sampler over pair indices), with replacement `m` independent uniform draws.
pub fn gen_gnm(p: &GnmParams, seed: Seed) -> Result<GnmSample> {
    if p.replacement {
        return gen_gnm_multi(p.n, p.m, seed).map(GnmSample::Multi);
    }
    let total = pair_count(p.n);
    if p.m as u64 > total {
        return Err(Error::invalid(format!("m = {} exceeds C({}, 2) = {total}", p.m, p.n)));
    }
    let mut rng = seed.rng();
    let mut chosen: HashSet<u64> = HashSet::with_capacity(p.m);
    let mut order = Vec::with_capacity(p.m);
    for j in (total - p.m as u64)..total {
        let t = rng.gen_range(0..=j);
        let pick = if chosen.contains(&t) { j } else { t };
        chosen.insert(pick);
        order.push(pick);
    }
    let mut g = SimpleGraph::new(p.n);
    for k in order {
        let (u, v) = index_to_pair(k);
        g.add_edge(u, v)?;
    }
    Ok(GnmSample::Simple(g))
}

/// `m` independent uniform draws from all `C(n, 2)` pairs.
pub fn gen_gnm_multi(n: usize, m: usize, seed: Seed) -> Result<MultiGraph> {
    let total = pair_count(n);
    if total == 0 && m > 0 {
        return Err(Error::invalid(format!("no vertex pairs to draw from with n = {n}")));
    }
    let mut rng = seed.rng();
    let mut mg = MultiGraph::new(n);
    for _ in 0..m {
        let (u, v) = index_to_pair(rng.gen_range(0..total));
        mg.push_unchecked(u, v);
    }
    Ok(mg)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RigParams {
    pub n: usize,
    /// Universe size `|M|`.
    pub m: usize,
    pub p: f64,
}

#[derive(Clone, Debug)]
pub struct RigSample {
    pub graph: SimpleGraph,
    /// `element_sets[v]` is `S_v`, a subset of `0..m`.
    pub element_sets: Vec<VertexSet>,
}

/// Random intersection graph: each vertex takes each element independently
/// with probability `p`; `u ~ v` iff their element sets meet.
pub fn gen_rig(p: &RigParams, seed: Seed) -> Result<RigSample> {
    if !(0.0..=1.0).contains(&p.p) {
        return Err(Error::invalid(format!("p = {} outside [0, 1]", p.p)));
    }
    if p.m == 0 {
        return Err(Error::invalid("universe size m must be >= 1"));
    }
    let mut rng = seed.rng();
    let element_sets: Vec<VertexSet> = (0..p.n)
        .map(|_| {
            let mut s = VertexSet::new(p.m);
            for e in 0..p.m {
                if rng.gen_bool(p.p) {
                    s.insert(e);
                }
            }
            s
        })
        .collect();
    let mut graph = SimpleGraph::new(p.n);
    for v in 0..p.n {
        for u in 0..v {
            if !element_sets[u].is_disjoint(&element_sets[v]) {
                graph.add_edge(u, v)?;
            }
        }
    }
    Ok(RigSample { graph, element_sets })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BaParams {
    pub n: usize,
    /// Edges attached per new vertex.
    pub m: usize,
}

/// Preferential attachment. Vertices `0..=m` start as `K_{m+1}`; each later
/// vertex makes `m` sequential picks, choosing `w` with probability
/// proportional to `deg(w) + (times w was already picked for this vertex)`.
/// Repeat picks become parallel edges.
pub fn gen_ba(p: &BaParams, seed: Seed) -> Result<MultiGraph> {
    if p.m == 0 {
        return Err(Error::invalid("attachment count m must be >= 1"));
    }
    if p.n < p.m + 1 {
        return Err(Error::invalid(format!("n = {} < m + 1 = {}", p.n, p.m + 1)));
    }
    let mut rng = seed.rng();
    let mut mg = MultiGraph::new(p.n);
    // Each vertex appears once per unit of degree.
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * (p.m * p.n));
    for v in 0..=p.m {
        for u in 0..v {
            mg.push_unchecked(u, v);
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    let mut picks = Vec::with_capacity(p.m);
    for v in (p.m + 1)..p.n {
        picks.clear();
        for _ in 0..p.m {
            let k = rng.gen_range(0..endpoints.len() + picks.len());
            let w = if k < endpoints.len() { endpoints[k] } else { picks[k - endpoints.len()] };
            picks.push(w);
        }
        for &w in &picks {
            mg.push_unchecked(w, v);
            endpoints.push(w);
            endpoints.push(v);
        }
    }
    Ok(mg)
}

/// Random k-tree on `n` vertices: `K_{k+1}` on `0..=k`, then each new vertex
/// joins a uniformly chosen recorded k-clique. The recorded cliques are the
/// k-subsets of the initial clique plus, for every attachment to `C`, the k
/// cliques `C - {u} + {v}`.
pub fn gen_ktree(k: usize, n: usize, seed: Seed) -> Result<SimpleGraph> {
    if k == 0 {
        return Err(Error::invalid("k must be >= 1"));
    }
    if n < k + 1 {
        return Err(Error::invalid(format!("n = {n} < k + 1 = {}", k + 1)));
    }
    let mut rng = seed.rng();
    let mut g = SimpleGraph::new(n);
    for v in 0..=k {
        for u in 0..v {
            g.add_edge(u, v)?;
        }
    }
    let mut cliques: Vec<Vec<usize>> = (0..=k).map(|skip| (0..=k).filter(|&x| x != skip).collect()).collect();
    for v in (k + 1)..n {
        let target = cliques[rng.gen_range(0..cliques.len())].clone();
        for &u in &target {
            g.add_edge(u, v)?;
        }
        for i in 0..k {
            let mut c = target.clone();
            c[i] = v;
            cliques.push(c);
        }
    }
    Ok(g)
}

/// `|E_W| = C(n, 2) - |A| |B|`.
pub fn conditional_pair_count(w: &TriPartition) -> u64 {
    pair_count(w.n()) - (w.a().len() * w.b().len()) as u64
}

/// `m` independent uniform draws from `E_W`, all pairs except `A x B`.
pub fn gen_conditional(n: usize, m: usize, w: &TriPartition, seed: Seed) -> Result<MultiGraph> {
    if w.n() != n {
        return Err(Error::invalid(format!("partition covers {} vertices, expected {n}", w.n())));
    }
    if m > 0 && conditional_pair_count(w) == 0 {
        return Err(Error::invalid("E_W is empty"));
    }
    let mut rng = seed.rng();
    let mut mg = MultiGraph::new(n);
    for _ in 0..m {
        let (u, v) = conditional_pair(w, &mut rng);
        mg.push_unchecked(u, v);
    }
    Ok(mg)
}

/// One uniform draw from `E_W` by rejection. `E_W` must be nonempty.
pub(crate) fn conditional_pair<R: Rng + ?Sized>(w: &TriPartition, rng: &mut R) -> (usize, usize) {
    let total = pair_count(w.n());
    loop {
        let (u, v) = index_to_pair(rng.gen_range(0..total));
        let crosses = (w.a().contains(u) && w.b().contains(v)) || (w.b().contains(u) && w.a().contains(v));
        if !crosses {
            return (u, v);
        }
    }
}
