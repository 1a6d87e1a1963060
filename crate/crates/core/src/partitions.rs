//! Balanced separator triples `(S, A, B)`, d-rigidity, and the weighted
//! tree-component count over `B`.

use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{components_within, tree_components_within, MultiGraph, SimpleGraph, VertexSet};

/// Default cap on `C(n, l+1) * 2^(n-l-1)` for exhaustive partition search.
pub const DEFAULT_SEARCH_CAP: u128 = 100_000_000;

/// Disjoint cover `(S, A, B)` of the vertex set with `|B| >= |A|`.
///
/// When `|A| == |B|`, `B` is the side holding the smallest vertex of
/// `A ∪ B`, so each unordered `{A, B}` has exactly one representation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TriPartition {
    s: VertexSet,
    a: VertexSet,
    b: VertexSet,
}

impl TriPartition {
    pub fn new(s: VertexSet, a: VertexSet, b: VertexSet) -> Result<Self> {
        let n = s.universe();
        if a.universe() != n || b.universe() != n {
            return Err(Error::invalid("partition parts over different vertex universes"));
        }
        if !s.is_disjoint(&a) || !s.is_disjoint(&b) || !a.is_disjoint(&b) {
            return Err(Error::invalid("partition parts are not pairwise disjoint"));
        }
        if s.len() + a.len() + b.len() != n {
            return Err(Error::invalid("partition parts do not cover all vertices"));
        }
        Ok(Self::normalized(s, a, b))
    }

    fn normalized(s: VertexSet, a: VertexSet, b: VertexSet) -> Self {
        let swap = match a.len().cmp(&b.len()) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => match (a.min(), b.min()) {
                (Some(x), Some(y)) => x < y,
                _ => false,
            },
        };
        if swap {
            TriPartition { s, a: b, b: a }
        } else {
            TriPartition { s, a, b }
        }
    }

    /// `S = 0..s_size`, `A` the next `a_size` vertices, `B` the rest.
    pub fn contiguous(n: usize, s_size: usize, a_size: usize) -> Result<Self> {
        if s_size + a_size > n {
            return Err(Error::invalid(format!("|S| + |A| = {} exceeds n = {n}", s_size + a_size)));
        }
        let s = VertexSet::from_members(n, 0..s_size)?;
        let a = VertexSet::from_members(n, s_size..s_size + a_size)?;
        let b = VertexSet::from_members(n, s_size + a_size..n)?;
        TriPartition::new(s, a, b)
    }

    pub fn n(&self) -> usize {
        self.s.universe()
    }

    pub fn s(&self) -> &VertexSet {
        &self.s
    }

    pub fn a(&self) -> &VertexSet {
        &self.a
    }

    pub fn b(&self) -> &VertexSet {
        &self.b
    }

    /// Separator parameter: `|S| - 1`. `None` if `S` is empty.
    pub fn l(&self) -> Option<usize> {
        self.s.len().checked_sub(1)
    }

    /// Three lines `S: ...`, `A: ...`, `B: ...`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, part) in [("S", &self.s), ("A", &self.a), ("B", &self.b)] {
            out.push_str(name);
            out.push(':');
            for v in part.iter() {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(n: usize, text: &str) -> Result<Self> {
        let mut parts: [Option<VertexSet>; 3] = [None, None, None];
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, rest) = line.split_once(':').ok_or_else(|| Error::parse(idx + 1, "expected `S:`, `A:` or `B:`"))?;
            let slot = match key.trim() {
                "S" => 0,
                "A" => 1,
                "B" => 2,
                other => return Err(Error::parse(idx + 1, format!("unknown part {other:?}"))),
            };
            let mut set = VertexSet::new(n);
            for tok in rest.split_whitespace() {
                let v: usize = tok.parse().map_err(|_| Error::parse(idx + 1, format!("bad vertex {tok:?}")))?;
                if v >= n {
                    return Err(Error::parse(idx + 1, format!("vertex {v} outside 0..{n}")));
                }
                set.insert(v);
            }
            parts[slot] = Some(set);
        }
        let [s, a, b] = parts;
        let missing = |name| Error::parse(0, format!("missing `{name}:` line"));
        TriPartition::new(
            s.ok_or_else(|| missing("S"))?,
            a.ok_or_else(|| missing("A"))?,
            b.ok_or_else(|| missing("B"))?,
        )
    }
}

impl fmt::Debug for TriPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TriPartition")
            .field("s", &self.s)
            .field("a", &self.a)
            .field("b", &self.b)
            .finish()
    }
}

/// Depth `d >= 2` of the weighted count and its step `epsilon = 1/(d-1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightedCountParams {
    d: usize,
    epsilon: f64,
}

impl WeightedCountParams {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::invalid(format!("weighted count needs d >= 2 (got {d}); epsilon = 1/(d-1)")));
        }
        Ok(WeightedCountParams {
            d,
            epsilon: 1.0 / (d as f64 - 1.0),
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Weight of a tree component on `size` vertices; zero above `d`.
    pub fn weight(&self, size: usize) -> f64 {
        if size == 0 || size > self.d {
            0.0
        } else {
            1.0 - (size as f64 - 1.0) * self.epsilon
        }
    }

    /// The Lipschitz constant `1 + epsilon`.
    pub fn lipschitz(&self) -> f64 {
        1.0 + self.epsilon
    }
}

/// Integer balance window `[ceil(r/3), floor(2r/3)]` with `r = n - l - 1`.
pub fn balance_bounds(n: usize, l: usize) -> Option<(usize, usize)> {
    let rest = n.checked_sub(l + 1)?;
    Some((rest.div_ceil(3), 2 * rest / 3))
}

pub fn is_balanced(w: &TriPartition, l: usize) -> Result<bool> {
    if w.s.len() != l + 1 {
        return Err(Error::invalid(format!("|S| = {} but l + 1 = {}", w.s.len(), l + 1)));
    }
    let (lo, hi) = balance_bounds(w.n(), l).expect("|S| <= n");
    let ok = |k: usize| lo <= k && k <= hi;
    Ok(ok(w.a.len()) && ok(w.b.len()))
}

/// `S` separates `A` from `B`: no edge of `g` joins them.
pub fn is_l_partition(g: &SimpleGraph, w: &TriPartition) -> bool {
    w.a.iter().all(|v| g.neighbors(v).iter().all(|&u| !w.b.contains(u)))
}

/// `|B| > |A| + d` and no component of `G[B]` has at most `d` vertices.
pub fn is_d_rigid(g: &SimpleGraph, w: &TriPartition, d: usize) -> bool {
    w.b.len() > w.a.len() + d && components_within(g, &w.b).iter().all(|c| c.len() > d)
}

/// Moves small components of `G[B]` into `A`, smallest first (ties by
/// smallest vertex), until `|B| <= |A| + d` or the triple is d-rigid.
pub fn rigidify(g: &SimpleGraph, w: &TriPartition, d: usize) -> Result<TriPartition> {
    if d == 0 {
        return Err(Error::invalid("rigidify needs d >= 1"));
    }
    if w.n() != g.n() {
        return Err(Error::invalid("partition and graph have different vertex counts"));
    }
    let l = w.l().ok_or_else(|| Error::invalid("separator S is empty"))?;
    if !is_balanced(w, l)? || !is_l_partition(g, w) {
        return Err(Error::invalid("rigidify requires a balanced l-partition"));
    }
    let mut cur = w.clone();
    while cur.b.len() > cur.a.len() + d {
        let smallest = components_within(g, &cur.b)
            .into_iter()
            .filter(|c| c.len() <= d)
            .min_by_key(|c| (c.len(), c.min()));
        let Some(u) = smallest else { break };
        let a = cur.a.union(&u);
        let b = cur.b.difference(&u);
        cur = TriPartition::normalized(cur.s, a, b);
    }
    Ok(cur)
}

/// `I = sum over tree components U of G[B], |U| <= d, of 1 - (|U|-1) * epsilon`.
pub fn weighted_count_i(g: &SimpleGraph, b: &VertexSet, p: &WeightedCountParams) -> f64 {
    tree_components_within(g, b, p.d).expect("d >= 2").iter().map(|c| p.weight(c.len())).sum()
}

/// Unweighted number of tree components of `G[B]` with at most `d` vertices.
pub fn tree_component_count(g: &SimpleGraph, b: &VertexSet, d: usize) -> Result<usize> {
    Ok(tree_components_within(g, b, d)?.len())
}

/// Weighted count on a draw list, where a component of `G[B]` is a tree only
/// if it receives exactly `|U| - 1` draws (a repeated pair is a cycle).
pub fn weighted_count_i_multi(mg: &MultiGraph, b: &VertexSet, p: &WeightedCountParams) -> f64 {
    multi_tree_sizes(mg, b, p.d).into_iter().map(|s| p.weight(s)).sum()
}

pub fn tree_component_count_multi(mg: &MultiGraph, b: &VertexSet, d: usize) -> usize {
    multi_tree_sizes(mg, b, d).len()
}

fn multi_tree_sizes(mg: &MultiGraph, b: &VertexSet, d: usize) -> Vec<usize> {
    let n = mg.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let inside: Vec<(usize, usize)> = mg.edges().iter().copied().filter(|&(u, v)| b.contains(u) && b.contains(v)).collect();
    for &(u, v) in &inside {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
        }
    }
    let mut size = vec![0usize; n];
    let mut draws = vec![0usize; n];
    for v in b.iter() {
        let r = find(&mut parent, v);
        size[r] += 1;
    }
    for &(u, _) in &inside {
        let r = find(&mut parent, u);
        draws[r] += 1;
    }
    b.iter()
        .filter(|&v| find(&mut parent, v) == v)
        .filter(|&r| size[r] <= d && draws[r] + 1 == size[r])
        .map(|r| size[r])
        .collect()
}

/// `I(g - remove + add) - I(g)` over the same `B`.
pub fn edge_swap_delta(g: &SimpleGraph, b: &VertexSet, p: &WeightedCountParams, remove: (usize, usize), add: (usize, usize)) -> Result<f64> {
    if !g.has_edge(remove.0, remove.1) {
        return Err(Error::invalid(format!("edge {remove:?} not in graph")));
    }
    let before = weighted_count_i(g, b, p);
    let mut h = g.clone();
    h.remove_edge(remove.0, remove.1);
    h.add_edge(add.0, add.1)?;
    Ok(weighted_count_i(&h, b, p) - before)
}

/// Counts of balanced l-partitions split by the rigidity alternative.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PartitionCounts {
    /// `|B| <= |A| + d`.
    pub j1: u64,
    /// `|B| > |A| + d` and d-rigid.
    pub j2: u64,
}

impl PartitionCounts {
    pub fn total(&self) -> u64 {
        self.j1 + self.j2
    }
}

pub(crate) fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Size of the naive search space `C(n, l+1) * 2^(n-l-1)`, checked against `cap`.
pub(crate) fn check_search_cap(n: usize, l: usize, cap: u128) -> Result<()> {
    if l + 1 > n {
        return Err(Error::invalid(format!("l + 1 = {} exceeds n = {n}", l + 1)));
    }
    let rest = n - l - 1;
    let space = if rest >= 100 {
        u128::MAX
    } else {
        binomial_u128(n, l + 1).saturating_mul(1u128 << rest)
    };
    if space > cap || n > 64 {
        return Err(Error::ResourceLimit {
            what: format!("exhaustive partition search, n = {n}, l = {l}"),
            actual: space,
            cap,
        });
    }
    Ok(())
}

/// Visits every `S` of size `l + 1` (as a `u64` mask), in colex order.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(u64) -> bool) {
    if k > n {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    let limit: u64 = if n == 64 { 0 } else { 1 << n };
    let mut s: u64 = (1u64 << k) - 1;
    loop {
        if !f(s) {
            return;
        }
        // Gosper's hack
        let c = s & s.wrapping_neg();
        let r = s.wrapping_add(c);
        if r == 0 {
            return;
        }
        s = (((r ^ s) >> 2) / c) | r;
        if limit != 0 && s >= limit {
            return;
        }
    }
}

/// Components of `G[rest]` as masks.
pub(crate) fn mask_components(adj: &[u64], rest: u64) -> Vec<u64> {
    let mut left = rest;
    let mut comps = Vec::new();
    while left != 0 {
        let start = left & left.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & rest & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        left &= !comp;
        comps.push(comp);
    }
    comps
}

/// Calls `f(s, a, b)` for every balanced l-partition of `g` in canonical
/// orientation. Stops early when `f` returns `false`.
pub(crate) fn for_each_balanced_partition(g: &SimpleGraph, l: usize, mut f: impl FnMut(u64, u64, u64) -> bool) {
    let n = g.n();
    let adj = g.masks64();
    let all: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let (lo, hi) = balance_bounds(n, l).expect("checked by caller");
    for_each_subset(n, l + 1, |s| {
        let rest = all & !s;
        let comps = mask_components(&adj, rest);
        let sizes: Vec<u32> = comps.iter().map(|c| c.count_ones()).collect();
        let total = rest.count_ones();
        // A is a union of components; B the remaining ones.
        for pick in 0u64..(1u64 << comps.len()) {
            let mut a = 0u64;
            let mut a_size = 0u32;
            for (i, (&c, &sz)) in comps.iter().zip(&sizes).enumerate() {
                if pick >> i & 1 == 1 {
                    a |= c;
                    a_size += sz;
                }
            }
            let b_size = total - a_size;
            if a_size > b_size || (a_size as usize) < lo || (b_size as usize) > hi {
                continue;
            }
            let b = rest & !a;
            if a_size == b_size && (a & rest & rest.wrapping_neg()) != 0 {
                continue;
            }
            if !f(s, a, b) {
                return false;
            }
        }
        true
    });
}

fn mask_to_set(n: usize, mask: u64) -> VertexSet {
    let mut s = VertexSet::new(n);
    let mut m = mask;
    while m != 0 {
        s.insert(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    s
}

pub(crate) fn triple_from_masks(n: usize, s: u64, a: u64, b: u64) -> TriPartition {
    TriPartition::normalized(mask_to_set(n, s), mask_to_set(n, a), mask_to_set(n, b))
}

/// Counts balanced l-partitions: `j1` with `|B| <= |A| + d`, `j2` with
/// `|B| > |A| + d` that are d-rigid. Each unordered `{A, B}` counts once.
pub fn count_balanced_partitions(g: &SimpleGraph, l: usize, d: usize) -> Result<PartitionCounts> {
    count_balanced_partitions_capped(g, l, d, DEFAULT_SEARCH_CAP)
}

pub fn count_balanced_partitions_capped(g: &SimpleGraph, l: usize, d: usize, cap: u128) -> Result<PartitionCounts> {
    check_search_cap(g.n(), l, cap)?;
    let adj = g.masks64();
    let mut counts = PartitionCounts::default();
    for_each_balanced_partition(g, l, |_, a, b| {
        let (na, nb) = (a.count_ones() as usize, b.count_ones() as usize);
        if nb <= na + d {
            counts.j1 += 1;
        } else if mask_components(&adj, b).iter().all(|c| c.count_ones() as usize > d) {
            counts.j2 += 1;
        }
        true
    });
    Ok(counts)
}
