//! Independent brute-force oracles shared by the integration tests. They use
//! only the public graph API and plain loops, never the library's solvers.

#![allow(dead_code)]

use twlab::{SimpleGraph, VertexSet};

fn adjacency_masks(g: &SimpleGraph) -> Vec<u32> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u))).collect()
}

/// Width of the elimination `order` computed on an explicit fill-in graph.
pub fn elimination_width(g: &SimpleGraph, order: &[usize]) -> usize {
    let mut adj = adjacency_masks(g);
    let mut width = 0;
    for &v in order {
        let nb = adj[v];
        width = width.max(nb.count_ones() as usize);
        let mut rest = nb;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            adj[u] |= nb & !(1 << u);
            adj[u] &= !(1 << v);
        }
        adj[v] = 0;
    }
    width
}

/// Minimum elimination width over all `n!` orders (Heap's algorithm).
pub fn brute_force_treewidth(g: &SimpleGraph) -> usize {
    let n = g.n();
    assert!(n <= 9, "brute force is for n <= 9");
    if n == 0 {
        return 0;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut best = elimination_width(g, &perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.min(elimination_width(g, &perm));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

/// Connected components of `G[within]` by plain DFS, as vertex lists.
pub fn components_in(g: &SimpleGraph, within: &[bool]) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if !within[s] || seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let x = comp[k];
            k += 1;
            for &y in g.neighbors(x) {
                if within[y] && !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                }
            }
        }
        comps.push(comp);
    }
    comps
}

/// `sum over tree components U of G[B], |U| <= d, of 1 - (|U| - 1)/(d - 1)`.
pub fn naive_weighted_i(g: &SimpleGraph, b: &VertexSet, d: usize) -> f64 {
    let within: Vec<bool> = (0..g.n()).map(|v| b.contains(v)).collect();
    let eps = 1.0 / (d as f64 - 1.0);
    components_in(g, &within)
        .into_iter()
        .filter(|comp| {
            let edges: usize = comp.iter().map(|&x| g.neighbors(x).iter().filter(|&&y| within[y]).count()).sum::<usize>() / 2;
            comp.len() <= d && edges + 1 == comp.len()
        })
        .map(|comp| 1.0 - (comp.len() as f64 - 1.0) * eps)
        .sum()
}

/// `(j1, j2)` by trying all `3^n` labelings of the vertices as S, A or B and
/// keeping those with `|B| >= |A|`; ties are seen twice and halved.
pub fn naive_partition_counts(g: &SimpleGraph, l: usize, d: usize) -> (u64, u64) {
    let n = g.n();
    let rest = n - l - 1;
    let lo = rest.div_ceil(3);
    let hi = 2 * rest / 3;
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut labels = vec![0u8; n];
    let (mut j1, mut j2) = (0u64, 0u64);
    let (mut j1_ties, mut j2_ties) = (0u64, 0u64);
    let total = 3u64.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        for lab in labels.iter_mut() {
            *lab = (c % 3) as u8;
            c /= 3;
        }
        let count = |k: u8| labels.iter().filter(|&&x| x == k).count();
        let (s, a, b) = (count(0), count(1), count(2));
        if s != l + 1 || b < a || a < lo || a > hi || b < lo || b > hi {
            continue;
        }
        if edges.iter().any(|&(u, v)| labels[u] + labels[v] == 3) {
            continue;
        }
        let tie = a == b;
        if b <= a + d {
            if tie {
                j1_ties += 1;
            } else {
                j1 += 1;
            }
        } else {
            let within: Vec<bool> = labels.iter().map(|&x| x == 2).collect();
            if components_in(g, &within).iter().all(|comp| comp.len() > d) {
                if tie {
                    j2_ties += 1;
                } else {
                    j2 += 1;
                }
            }
        }
    }
    (j1 + j1_ties / 2, j2 + j2_ties / 2)
}

/// Exact `P(S_u and S_v intersect)` by enumerating all `4^m` membership
/// patterns of two vertices over an `m`-element universe.
pub fn rig_pair_probability_enumerated(m: usize, p: f64) -> f64 {
    let mut total = 0.0;
    for pattern in 0u64..(1 << (2 * m)) {
        let mut prob = 1.0;
        let mut meet = false;
        for e in 0..m {
            let in_u = pattern >> (2 * e) & 1 == 1;
            let in_v = pattern >> (2 * e + 1) & 1 == 1;
            prob *= if in_u { p } else { 1.0 - p };
            prob *= if in_v { p } else { 1.0 - p };
            meet |= in_u && in_v;
        }
        if meet {
            total += prob;
        }
    }
    total
}
