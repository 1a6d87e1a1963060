//! Exact treewidth for small graphs, greedy upper bounds, and lower bounds.

use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexSet};
use crate::partitions::{check_search_cap, for_each_balanced_partition, triple_from_masks, TriPartition, DEFAULT_SEARCH_CAP};

/// Default vertex cap for [`exact_treewidth`]; the DP table has `2^n` entries.
pub const DEFAULT_EXACT_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<VertexSet>,
    pub tree_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Largest bag size minus one; `-1` for the empty decomposition.
    pub fn width(&self) -> isize {
        self.bags.iter().map(|b| b.len() as isize).max().unwrap_or(0) - 1
    }

    /// `bag <id>: v1 v2 ...` lines followed by `td-edge <id1> <id2>` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, bag) in self.bags.iter().enumerate() {
            let _ = write!(out, "bag {i}:");
            for v in bag.iter() {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        for (a, b) in &self.tree_edges {
            let _ = writeln!(out, "td-edge {a} {b}");
        }
        out
    }

    pub fn from_text(n: usize, text: &str) -> Result<Self> {
        let mut bags: Vec<(usize, VertexSet)> = Vec::new();
        let mut tree_edges = Vec::new();
        let num = |line: usize, tok: &str| tok.parse::<usize>().map_err(|_| Error::parse(line, format!("bad integer {tok:?}")));
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("bag ") {
                let (id, members) = rest.split_once(':').ok_or_else(|| Error::parse(line_no, "expected `bag <id>: ...`"))?;
                let id = num(line_no, id.trim())?;
                let mut bag = VertexSet::new(n);
                for tok in members.split_whitespace() {
                    let v = num(line_no, tok)?;
                    if v >= n {
                        return Err(Error::parse(line_no, format!("vertex {v} outside 0..{n}")));
                    }
                    bag.insert(v);
                }
                bags.push((id, bag));
            } else if let Some(rest) = line.strip_prefix("td-edge ") {
                let ids: Vec<&str> = rest.split_whitespace().collect();
                let [a, b] = ids.as_slice() else {
                    return Err(Error::parse(line_no, "expected `td-edge <id1> <id2>`"));
                };
                tree_edges.push((num(line_no, a)?, num(line_no, b)?));
            } else {
                return Err(Error::parse(line_no, "expected `bag` or `td-edge` line"));
            }
        }
        for (pos, (id, _)) in bags.iter().enumerate() {
            if *id != pos {
                return Err(Error::parse(0, format!("bag ids must be 0..k in order, found {id} at position {pos}")));
            }
        }
        Ok(TreeDecomposition {
            bags: bags.into_iter().map(|(_, b)| b).collect(),
            tree_edges,
        })
    }
}

/// A permutation of `0..n`; `order[0]` is eliminated first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationOrder(Vec<usize>);

impl EliminationOrder {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; order.len()];
        for &v in &order {
            if v >= order.len() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::invalid("elimination order is not a permutation"));
            }
        }
        Ok(EliminationOrder(order))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Heuristic {
    MinDegree,
    MinFill,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    BagOutOfRange { bag: usize },
    TreeEdgeOutOfRange { edge: (usize, usize) },
    NotATree,
    VertexCoverage { vertex: usize },
    EdgeCoverage { edge: (usize, usize) },
    Connectivity { vertex: usize },
}

impl Violation {
    /// Short kebab-case tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::BagOutOfRange { .. } => "bag-range",
            Violation::TreeEdgeOutOfRange { .. } => "tree-edge-range",
            Violation::NotATree => "not-a-tree",
            Violation::VertexCoverage { .. } => "vertex-coverage",
            Violation::EdgeCoverage { .. } => "edge-coverage",
            Violation::Connectivity { .. } => "connectivity",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BagOutOfRange { bag } => write!(f, "bag-range: bag {bag} has a vertex outside the graph"),
            Violation::TreeEdgeOutOfRange { edge } => write!(f, "tree-edge-range: {edge:?} names a missing bag"),
            Violation::NotATree => write!(f, "not-a-tree: tree edges do not form a tree"),
            Violation::VertexCoverage { vertex } => write!(f, "vertex-coverage: vertex {vertex} is in no bag"),
            Violation::EdgeCoverage { edge } => write!(f, "edge-coverage: no bag holds edge {edge:?}"),
            Violation::Connectivity { vertex } => write!(f, "connectivity: bags holding vertex {vertex} are disconnected"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validation {
    pub valid: bool,
    pub width: isize,
    pub violation: Option<Violation>,
}

/// Checks the tree-decomposition axioms and reports the first violation.
pub fn validate_decomposition(g: &SimpleGraph, td: &TreeDecomposition) -> Validation {
    let width = td.width();
    let fail = |v: Violation| Validation {
        valid: false,
        width,
        violation: Some(v),
    };
    let n = g.n();
    let k = td.bags.len();
    for (i, bag) in td.bags.iter().enumerate() {
        if bag.iter().any(|v| v >= n) {
            return fail(Violation::BagOutOfRange { bag: i });
        }
    }
    let mut tree_adj = vec![Vec::new(); k];
    for &(a, b) in &td.tree_edges {
        if a >= k || b >= k || a == b {
            return fail(Violation::TreeEdgeOutOfRange { edge: (a, b) });
        }
        tree_adj[a].push(b);
        tree_adj[b].push(a);
    }
    let is_tree = if k == 0 {
        td.tree_edges.is_empty()
    } else {
        td.tree_edges.len() == k - 1 && reachable(&tree_adj, 0, |_| true).iter().all(|&r| r)
    };
    if !is_tree {
        return fail(Violation::NotATree);
    }
    for v in 0..n {
        if !td.bags.iter().any(|b| b.contains(v)) {
            return fail(Violation::VertexCoverage { vertex: v });
        }
    }
    for (u, v) in g.edges() {
        if !td.bags.iter().any(|b| b.contains(u) && b.contains(v)) {
            return fail(Violation::EdgeCoverage { edge: (u, v) });
        }
    }
    for v in 0..n {
        let holding: Vec<usize> = (0..k).filter(|&i| td.bags[i].contains(v)).collect();
        let seen = reachable(&tree_adj, holding[0], |i| td.bags[i].contains(v));
        if holding.iter().any(|&i| !seen[i]) {
            return fail(Violation::Connectivity { vertex: v });
        }
    }
    Validation {
        valid: true,
        width,
        violation: None,
    }
}

fn reachable(adj: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] && allowed(y) {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// Builds the decomposition induced by eliminating vertices in `order`:
/// bag of `v` is `v` plus its later neighbors in the fill-in graph, attached
/// to the bag of the earliest-eliminated of those neighbors.
pub fn decomposition_from_order(g: &SimpleGraph, order: &EliminationOrder) -> (usize, TreeDecomposition) {
    let n = g.n();
    let order = order.as_slice();
    assert_eq!(order.len(), n, "order length must equal vertex count");
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<VertexSet> = (0..n).map(|v| g.neighborhood_set(v)).collect();
    let mut bags = Vec::with_capacity(n);
    let mut parent_vertex = Vec::with_capacity(n);
    let mut width = 0;
    for &v in order {
        let nb = adj[v].clone();
        width = width.max(nb.len());
        for u in nb.iter() {
            let mut others = nb.clone();
            others.remove(u);
            adj[u].union_with(&others);
            adj[u].remove(v);
        }
        parent_vertex.push(nb.iter().min_by_key(|&u| pos[u]));
        let mut bag = nb;
        bag.insert(v);
        bags.push(bag);
    }
    let mut tree_edges = Vec::with_capacity(n.saturating_sub(1));
    let mut last_root: Option<usize> = None;
    for (i, parent) in parent_vertex.iter().enumerate() {
        match parent {
            Some(u) => tree_edges.push((i, pos[*u])),
            None => {
                if let Some(r) = last_root {
                    tree_edges.push((r, i));
                }
                last_root = Some(i);
            }
        }
    }
    (width, TreeDecomposition { bags, tree_edges })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreewidthResult {
    pub width: usize,
    pub order: EliminationOrder,
    pub decomposition: TreeDecomposition,
}

pub fn exact_treewidth(g: &SimpleGraph) -> Result<TreewidthResult> {
    exact_treewidth_capped(g, DEFAULT_EXACT_CAP)
}

/// Subset DP: `TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|)`,
/// where `Q(S, v)` are the vertices outside `S + v` reachable from `v`
/// through `S`. `TW(V)` is the treewidth; storing the minimizing `v` per
/// subset recovers an optimal elimination order.
pub fn exact_treewidth_capped(g: &SimpleGraph, cap: usize) -> Result<TreewidthResult> {
    let n = g.n();
    if n > cap || n > 30 {
        return Err(Error::ResourceLimit {
            what: "exact treewidth vertex count".into(),
            actual: n as u128,
            cap: cap.min(30) as u128,
        });
    }
    if n == 0 {
        let order = EliminationOrder(Vec::new());
        let (_, decomposition) = decomposition_from_order(g, &order);
        return Ok(TreewidthResult {
            width: 0,
            order,
            decomposition,
        });
    }
    let adj: Vec<u32> = g.masks64().into_iter().map(|m| m as u32).collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let size = 1usize << n;
    let mut tw = vec![u8::MAX; size];
    let mut choice = vec![0u8; size];
    tw[0] = 0;
    for s in 1..size as u32 {
        let mut best = u8::MAX;
        let mut best_v = 0u8;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let base = tw[prev as usize];
            if base >= best {
                continue;
            }
            let q = q_size(&adj, prev, v as usize, full) as u8;
            let val = base.max(q);
            if val < best {
                best = val;
                best_v = v as u8;
            }
        }
        tw[s as usize] = best;
        choice[s as usize] = best_v;
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    let order = EliminationOrder(order);
    let (width, decomposition) = decomposition_from_order(g, &order);
    debug_assert_eq!(width, tw[full as usize] as usize);
    Ok(TreewidthResult { width, order, decomposition })
}

/// `|Q(S, v)|`: vertices outside `S + v` adjacent to the component of `v`
/// in `G[S + v]`.
fn q_size(adj: &[u32], s: u32, v: usize, full: u32) -> u32 {
    let inside = s | (1 << v);
    let mut comp: u32 = 1 << v;
    let mut frontier: u32 = 1 << v;
    let mut boundary: u32 = 0;
    while frontier != 0 {
        let x = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let nb = adj[x];
        boundary |= nb;
        let fresh = nb & s & !comp;
        comp |= fresh;
        frontier |= fresh;
    }
    (boundary & full & !inside).count_ones()
}

/// Greedy elimination by minimum degree or minimum fill-in, ties to the
/// lowest vertex index.
pub fn heuristic_upper(g: &SimpleGraph, rule: Heuristic) -> TreewidthResult {
    let n = g.n();
    let mut adj: Vec<VertexSet> = (0..n).map(|v| g.neighborhood_set(v)).collect();
    let mut alive = VertexSet::full(n);
    let mut order = Vec::with_capacity(n);
    while let Some(first) = alive.min() {
        let score = |v: usize| -> usize {
            match rule {
                Heuristic::MinDegree => adj[v].len(),
                Heuristic::MinFill => {
                    let nb = &adj[v];
                    let present: usize = nb.iter().map(|u| adj[u].intersection_len(nb)).sum();
                    let k = nb.len();
                    (k * k.saturating_sub(1) - present) / 2
                }
            }
        };
        let mut best = first;
        let mut best_score = score(first);
        for v in alive.iter().skip(1) {
            if best_score == 0 {
                break;
            }
            let sc = score(v);
            if sc < best_score {
                best = v;
                best_score = sc;
            }
        }
        let nb = adj[best].clone();
        for u in nb.iter() {
            let mut others = nb.clone();
            others.remove(u);
            adj[u].union_with(&others);
            adj[u].remove(best);
        }
        adj[best] = VertexSet::new(n);
        alive.remove(best);
        order.push(best);
    }
    let order = EliminationOrder(order);
    let (width, decomposition) = decomposition_from_order(g, &order);
    TreewidthResult { width, order, decomposition }
}

/// Degeneracy: the largest minimum degree seen while repeatedly deleting a
/// minimum-degree vertex. A lower bound on treewidth.
pub fn lower_bound_degeneracy(g: &SimpleGraph) -> usize {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_deg + 1];
    for v in 0..n {
        buckets[deg[v]].push(v);
    }
    let mut removed = vec![false; n];
    let mut best = 0;
    let mut low = 0;
    for _ in 0..n {
        let v = loop {
            while buckets[low].is_empty() {
                low += 1;
            }
            let v = buckets[low].pop().expect("nonempty");
            if !removed[v] && deg[v] == low {
                break v;
            }
        };
        removed[v] = true;
        best = best.max(low);
        for &u in g.neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
                buckets[deg[u]].push(u);
                low = low.min(deg[u]);
            }
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparatorCertificate {
    /// No balanced l-partition exists, so `tw > l`.
    NoBalancedPartition,
    PartitionFound(TriPartition),
}

pub fn lower_bound_separator(g: &SimpleGraph, l: usize) -> Result<SeparatorCertificate> {
    lower_bound_separator_capped(g, l, DEFAULT_SEARCH_CAP)
}

/// Exhaustive search over all `(S, A, B)` with `|S| = l + 1`. Any graph of
/// treewidth at most `l > 4` has a balanced l-partition, so an empty search
/// certifies `tw > l`.
pub fn lower_bound_separator_capped(g: &SimpleGraph, l: usize, cap: u128) -> Result<SeparatorCertificate> {
    if l <= 4 {
        return Err(Error::invalid(format!("separator certificate needs l > 4 (got {l})")));
    }
    check_search_cap(g.n(), l, cap)?;
    let mut found = None;
    for_each_balanced_partition(g, l, |s, a, b| {
        found = Some((s, a, b));
        false
    });
    Ok(match found {
        Some((s, a, b)) => SeparatorCertificate::PartitionFound(triple_from_masks(g.n(), s, a, b)),
        None => SeparatorCertificate::NoBalancedPartition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{is_balanced, is_l_partition};

    #[test]
    fn exact_examples() {
        assert_eq!(exact_treewidth(&SimpleGraph::complete(5)).unwrap().width, 4);
        assert_eq!(exact_treewidth(&SimpleGraph::path(4)).unwrap().width, 1);
        assert_eq!(exact_treewidth(&SimpleGraph::cycle(6)).unwrap().width, 2);
        assert_eq!(exact_treewidth(&SimpleGraph::grid(3, 3)).unwrap().width, 3);
        assert_eq!(exact_treewidth(&SimpleGraph::new(4)).unwrap().width, 0);
        assert_eq!(exact_treewidth(&SimpleGraph::new(0)).unwrap().width, 0);
    }

    #[test]
    fn exact_respects_cap() {
        let g = SimpleGraph::path(21);
        match exact_treewidth(&g) {
            Err(Error::ResourceLimit { cap, actual, .. }) => {
                assert_eq!(cap, 20);
                assert_eq!(actual, 21);
            }
            other => panic!("expected resource limit, got {other:?}"),
        }
        assert_eq!(exact_treewidth_capped(&g, 22).unwrap().width, 1);
    }

    #[test]
    fn heuristic_examples() {
        let tree = SimpleGraph::from_edges(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        assert_eq!(heuristic_upper(&tree, Heuristic::MinDegree).width, 1);
        assert_eq!(heuristic_upper(&SimpleGraph::cycle(5), Heuristic::MinFill).width, 2);
        for rule in [Heuristic::MinDegree, Heuristic::MinFill] {
            assert_eq!(heuristic_upper(&SimpleGraph::complete(6), rule).width, 5);
        }
    }

    #[test]
    fn decompositions_validate() {
        for g in [
            SimpleGraph::grid(3, 4),
            SimpleGraph::cycle(7),
            SimpleGraph::new(3),
            SimpleGraph::complete(4),
        ] {
            let e = exact_treewidth(&g).unwrap();
            let v = validate_decomposition(&g, &e.decomposition);
            assert!(v.valid, "{v:?}");
            assert_eq!(v.width, e.width as isize);
            for rule in [Heuristic::MinDegree, Heuristic::MinFill] {
                let h = heuristic_upper(&g, rule);
                assert!(validate_decomposition(&g, &h.decomposition).valid);
            }
        }
    }

    #[test]
    fn validation_examples() {
        let g = SimpleGraph::path(4);
        let single = TreeDecomposition {
            bags: vec![VertexSet::full(4)],
            tree_edges: vec![],
        };
        let v = validate_decomposition(&g, &single);
        assert!(v.valid);
        assert_eq!(v.width, 3);

        let set = |m: &[usize]| VertexSet::from_members(4, m.iter().copied()).unwrap();
        let missing_edge = TreeDecomposition {
            bags: vec![set(&[0, 1]), set(&[2, 3])],
            tree_edges: vec![(0, 1)],
        };
        let v = validate_decomposition(&g, &missing_edge);
        assert!(!v.valid);
        assert_eq!(v.violation.as_ref().map(Violation::kind), Some("edge-coverage"));

        let broken = TreeDecomposition {
            bags: vec![set(&[0, 1]), set(&[1, 2]), set(&[2, 3, 0])],
            tree_edges: vec![(0, 1), (1, 2)],
        };
        let v = validate_decomposition(&g, &broken);
        assert_eq!(v.violation.as_ref().map(Violation::kind), Some("connectivity"));

        let cyclic = TreeDecomposition {
            bags: vec![set(&[0, 1, 2, 3]); 3],
            tree_edges: vec![(0, 1), (1, 2), (2, 0)],
        };
        assert_eq!(validate_decomposition(&g, &cyclic).violation, Some(Violation::NotATree));
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(lower_bound_degeneracy(&SimpleGraph::complete(5)), 4);
        assert_eq!(lower_bound_degeneracy(&SimpleGraph::path(8)), 1);
        assert_eq!(lower_bound_degeneracy(&SimpleGraph::cycle(6)), 2);
        assert_eq!(lower_bound_degeneracy(&SimpleGraph::new(3)), 0);
        assert_eq!(lower_bound_degeneracy(&SimpleGraph::grid(4, 4)), 2);
    }

    #[test]
    fn separator_examples() {
        assert_eq!(
            lower_bound_separator(&SimpleGraph::complete(12), 5).unwrap(),
            SeparatorCertificate::NoBalancedPartition
        );
        let p = SimpleGraph::path(12);
        match lower_bound_separator(&p, 5).unwrap() {
            SeparatorCertificate::PartitionFound(w) => {
                assert!(is_balanced(&w, 5).unwrap());
                assert!(is_l_partition(&p, &w));
            }
            other => panic!("expected a partition, got {other:?}"),
        }
        assert!(lower_bound_separator(&p, 4).is_err());
        assert!(matches!(
            lower_bound_separator(&SimpleGraph::new(40), 5),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn decomposition_text_round_trip() {
        let g = SimpleGraph::grid(2, 3);
        let td = exact_treewidth(&g).unwrap().decomposition;
        let parsed = TreeDecomposition::from_text(6, &td.to_text()).unwrap();
        assert_eq!(parsed, td);
        assert!(TreeDecomposition::from_text(6, "bag 1: 0\n").is_err());
        assert!(TreeDecomposition::from_text(6, "bag 0: 9\n").is_err());
    }

    #[test]
    fn elimination_order_must_be_permutation() {
        assert!(EliminationOrder::new(vec![0, 0, 1]).is_err());
        assert!(EliminationOrder::new(vec![2, 0, 1]).is_ok());
    }
}
