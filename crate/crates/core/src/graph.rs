//! Undirected graphs on dense vertex labels `0..n`.
//!
//! [`SimpleGraph`] has no loops and no parallel edges. [`MultiGraph`] keeps
//! the full ordered list of edge draws, so that "the i-th edge" of a
//! with-replacement sample stays addressable. Both share one edge-list text
//! format:
//!
//! ```text
//! # comment
//! n 4
//! 0 1
//! 1 2
//! ```

use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// Fixed-universe bitset over `0..universe`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            universe,
            words: vec![0; universe.div_ceil(WORD)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = VertexSet::new(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    /// Builds a set from members, rejecting any member `>= universe`.
    pub fn from_members<I: IntoIterator<Item = usize>>(universe: usize, members: I) -> Result<Self> {
        let mut s = VertexSet::new(universe);
        for v in members {
            if v >= universe {
                return Err(Error::invalid(format!("vertex {v} out of range 0..{universe}")));
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Panics if `v` is outside the universe.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.universe, "vertex {v} out of range 0..{}", self.universe);
        let (w, b) = (v / WORD, v % WORD);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.universe {
            return false;
        }
        let (w, b) = (v / WORD, v % WORD);
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        present
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / WORD] & (1 << (v % WORD)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i * WORD + tz)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn check_universe(&self, other: &VertexSet) {
        assert_eq!(self.universe, other.universe, "vertex sets over different universes");
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.check_universe(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        VertexSet {
            universe: self.universe,
            words,
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.check_universe(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        VertexSet {
            universe: self.universe,
            words,
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.check_universe(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        VertexSet {
            universe: self.universe,
            words,
        }
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.check_universe(other);
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Undirected graph without loops or parallel edges.
#[derive(Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl SimpleGraph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge iterator. Self-loops, out-of-range
    /// endpoints and duplicate edges are errors.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = SimpleGraph::new(n);
        for (u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(Error::invalid(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = SimpleGraph::new(n);
        for v in 0..n {
            for u in 0..v {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = SimpleGraph::new(n);
        for v in 1..n {
            g.insert_unchecked(v - 1, v);
        }
        g
    }

    /// Cycle on `n >= 3` vertices; smaller `n` gives a path.
    pub fn cycle(n: usize) -> Self {
        let mut g = SimpleGraph::path(n);
        if n >= 3 {
            g.insert_unchecked(0, n - 1);
        }
        g
    }

    /// `rows x cols` grid, vertex `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut g = SimpleGraph::new(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    g.insert_unchecked(v, v + 1);
                }
                if r + 1 < rows {
                    g.insert_unchecked(v, v + cols);
                }
            }
        }
        g
    }

    /// Adds `{u, v}`. Returns `Ok(false)` if the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::invalid(format!("edge ({u}, {v}) has endpoint outside 0..{n}")));
        }
        if u == v {
            return Err(Error::invalid(format!("self-loop at vertex {u}")));
        }
        Ok(self.insert_unchecked(u, v))
    }

    fn insert_unchecked(&mut self, u: usize, v: usize) -> bool {
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.edge_count += 1;
                true
            }
        }
    }

    /// Removes `{u, v}`; returns whether it was present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        match self.adj[u].binary_search(&v) {
            Ok(pos) => {
                self.adj[u].remove(pos);
                let pos = self.adj[v].binary_search(&u).expect("adjacency is symmetric");
                self.adj[v].remove(pos);
                self.edge_count -= 1;
                true
            }
            Err(_) => false,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn neighborhood_set(&self, v: usize) -> VertexSet {
        let mut s = VertexSet::new(self.n());
        for &u in &self.adj[v] {
            s.insert(u);
        }
        s
    }

    /// Neighborhoods as `u64` masks. Only valid for `n <= 64`.
    pub(crate) fn masks64(&self) -> Vec<u64> {
        debug_assert!(self.n() <= 64);
        self.adj.iter().map(|nb| nb.iter().fold(0u64, |m, &u| m | (1 << u))).collect()
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses the edge-list format. Duplicate edges are rejected; read as a
    /// [`MultiGraph`] and [`simplify`] to accept them.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let (n, edges) = parse_edge_list(text)?;
        let mut g = SimpleGraph::new(n);
        for (line, u, v) in edges {
            match g.add_edge(u, v) {
                Ok(true) => {}
                Ok(false) => return Err(Error::parse(line, format!("duplicate edge {u} {v}"))),
                Err(e) => return Err(Error::parse(line, e.to_string())),
            }
        }
        Ok(g)
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimpleGraph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Graph given by an ordered list of edge draws; parallel edges allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(n: usize) -> Self {
        MultiGraph { n, edges: Vec::new() }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = MultiGraph::new(n);
        for (u, v) in edges {
            g.push_edge(u, v)?;
        }
        Ok(g)
    }

    /// Every edge of `g` drawn exactly once.
    pub fn from_simple(g: &SimpleGraph) -> Self {
        MultiGraph {
            n: g.n(),
            edges: g.edges().collect(),
        }
    }

    /// Appends one draw; stored as `(min, max)`.
    pub fn push_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::invalid(format!("edge ({u}, {v}) has endpoint outside 0..{}", self.n)));
        }
        if u == v {
            return Err(Error::invalid(format!("self-loop at vertex {u}")));
        }
        self.edges.push((u.min(v), u.max(v)));
        Ok(())
    }

    pub(crate) fn push_unchecked(&mut self, u: usize, v: usize) {
        self.edges.push((u.min(v), u.max(v)));
    }

    /// Replaces draw `index`, returning the previous value.
    pub fn replace_edge(&mut self, index: usize, u: usize, v: usize) -> Result<(usize, usize)> {
        if index >= self.edges.len() {
            return Err(Error::invalid(format!("draw index {index} out of range")));
        }
        if u >= self.n || v >= self.n || u == v {
            return Err(Error::invalid(format!("invalid pair ({u}, {v})")));
        }
        Ok(std::mem::replace(&mut self.edges[index], (u.min(v), u.max(v))))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of draws, counting repeats.
    pub fn draw_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Degree counting parallel edges.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Self> {
        let (n, edges) = parse_edge_list(text)?;
        let mut g = MultiGraph::new(n);
        for (line, u, v) in edges {
            g.push_edge(u, v).map_err(|e| Error::parse(line, e.to_string()))?;
        }
        Ok(g)
    }
}

type RawEdges = Vec<(usize, usize, usize)>;

fn parse_edge_list(text: &str) -> Result<(usize, RawEdges)> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match (n, fields.as_slice()) {
            (None, ["n", count]) => {
                n = Some(count.parse().map_err(|_| Error::parse(line_no, format!("bad vertex count {count:?}")))?);
            }
            (None, _) => return Err(Error::parse(line_no, "expected header `n <count>`")),
            (Some(_), [u, v]) => {
                let u = u.parse().map_err(|_| Error::parse(line_no, format!("bad vertex {u:?}")))?;
                let v = v.parse().map_err(|_| Error::parse(line_no, format!("bad vertex {v:?}")))?;
                edges.push((line_no, u, v));
            }
            (Some(_), _) => return Err(Error::parse(line_no, "expected `u v`")),
        }
    }
    let n = n.ok_or_else(|| Error::parse(0, "missing header `n <count>`"))?;
    Ok((n, edges))
}

/// Induced subgraph `G[U]` relabeled to `0..|U|`.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: SimpleGraph,
    /// `original[new] = old`.
    pub original: Vec<usize>,
    /// `local[old] = Some(new)` for members of `U`.
    pub local: Vec<Option<usize>>,
}

pub fn induced_subgraph(g: &SimpleGraph, u: &VertexSet) -> Result<InducedSubgraph> {
    if u.universe() > g.n() && u.iter().any(|v| v >= g.n()) {
        return Err(Error::invalid(format!("vertex set reaches outside 0..{}", g.n())));
    }
    let original: Vec<usize> = u.iter().collect();
    let mut local = vec![None; g.n()];
    for (new, &old) in original.iter().enumerate() {
        local[old] = Some(new);
    }
    let mut sub = SimpleGraph::new(original.len());
    for (new, &old) in original.iter().enumerate() {
        for &w in g.neighbors(old) {
            if let Some(nw) = local[w] {
                if nw > new {
                    sub.insert_unchecked(new, nw);
                }
            }
        }
    }
    Ok(InducedSubgraph { graph: sub, original, local })
}

/// Connected components, each listed once, ordered by smallest member.
pub fn connected_components(g: &SimpleGraph) -> Vec<VertexSet> {
    components_within(g, &VertexSet::full(g.n()))
}

/// Components of `G[within]`, in original labels.
pub fn components_within(g: &SimpleGraph, within: &VertexSet) -> Vec<VertexSet> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for start in within.iter() {
        if seen[start] {
            continue;
        }
        let mut comp = VertexSet::new(n);
        seen[start] = true;
        stack.push(start);
        while let Some(v) = stack.pop() {
            comp.insert(v);
            for &w in g.neighbors(v) {
                if !seen[w] && within.contains(w) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Number of edges of `g` with both endpoints in `set`.
pub fn induced_edge_count(g: &SimpleGraph, set: &VertexSet) -> usize {
    set.iter()
        .map(|v| g.neighbors(v).iter().filter(|&&w| w > v && set.contains(w)).count())
        .sum()
}

/// Connected components that are trees on at most `d` vertices.
/// Isolated vertices count as trees.
pub fn tree_components_up_to(g: &SimpleGraph, d: usize) -> Result<Vec<VertexSet>> {
    tree_components_within(g, &VertexSet::full(g.n()), d)
}

/// Tree components of `G[within]` with at most `d` vertices, in original labels.
pub fn tree_components_within(g: &SimpleGraph, within: &VertexSet, d: usize) -> Result<Vec<VertexSet>> {
    if d == 0 {
        return Err(Error::invalid("tree component size bound d must be >= 1"));
    }
    Ok(components_within(g, within)
        .into_iter()
        .filter(|c| {
            let size = c.len();
            size <= d && induced_edge_count(g, c) + 1 == size
        })
        .collect())
}

/// Collapses parallel edges; vertex count preserved.
pub fn simplify(mg: &MultiGraph) -> SimpleGraph {
    let mut g = SimpleGraph::new(mg.n());
    for &(u, v) in mg.edges() {
        g.insert_unchecked(u, v);
    }
    g
}
