//! Slow, direct oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rootpoly::{BipartiteGraph, HyperedgeOrder, IntPolynomial, Side};

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

fn is_spanning_tree(n: usize, edges: &[(usize, usize)], pick: &[usize]) -> bool {
    if pick.len() + 1 != n {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for &i in pick {
        let (a, b) = (find(&mut parent, edges[i].0), find(&mut parent, edges[i].1));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

fn choose_each(
    m: usize,
    k: usize,
    start: usize,
    pick: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if pick.len() == k {
        visit(pick);
        return;
    }
    for i in start..m {
        if m - i < k - pick.len() {
            break;
        }
        pick.push(i);
        choose_each(m, k, i + 1, pick, visit);
        pick.pop();
    }
}

/// Every `(n−1)`-subset of edges that is acyclic, as edge-index lists.
pub fn brute_spanning_trees(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    choose_each(edges.len(), n - 1, 0, &mut Vec::new(), &mut |pick| {
        if is_spanning_tree(n, edges, pick) {
            out.push(pick.to_vec());
        }
    });
    out
}

/// Edges of a bipartite graph on the unified vertex index.
pub fn unified_edges(g: &BipartiteGraph) -> Vec<(usize, usize)> {
    let m = g.class_size(Side::Emerald);
    g.edges().iter().map(|&(e, v)| (e, m + v)).collect()
}

/// Number of spanning trees from a Laplacian minor, by fraction-free
/// elimination.
pub fn matrix_tree_count(n: usize, edges: &[(usize, usize)]) -> BigInt {
    if n <= 1 {
        return BigInt::one();
    }
    let mut lap = vec![vec![BigInt::zero(); n]; n];
    for &(a, b) in edges {
        if a == b {
            continue;
        }
        lap[a][a] += 1;
        lap[b][b] += 1;
        lap[a][b] -= 1;
        lap[b][a] -= 1;
    }
    let mut m: Vec<Vec<BigInt>> = lap[1..].iter().map(|r| r[1..].to_vec()).collect();
    let size = n - 1;
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for k in 0..size {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[size - 1][size - 1]
}

/// `T(x, 1)` by deletion and contraction, as coefficients of `x`.
pub fn deletion_contraction_x1(n: usize, edges: &[(usize, usize)]) -> Vec<i64> {
    fn go(n: usize, edges: &[(usize, usize)]) -> Vec<i64> {
        let Some((&(a, b), rest)) = edges.split_first() else {
            return vec![1];
        };
        if a == b {
            return go(n, rest);
        }
        // Contract b into a and renumber so vertices stay dense.
        let relabel = |v: usize| {
            let v = if v == b { a } else { v };
            if v > b {
                v - 1
            } else {
                v
            }
        };
        let contracted: Vec<(usize, usize)> = rest
            .iter()
            .map(|&(u, v)| (relabel(u), relabel(v)))
            .collect();
        let contraction = go(n - 1, &contracted);
        if connected(n, rest) {
            add(&go(n, rest), &contraction)
        } else {
            let mut shifted = vec![0];
            shifted.extend(contraction);
            shifted
        }
    }
    fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
        (0..a.len().max(b.len()))
            .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
            .collect()
    }
    let mut out = go(n, edges);
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}

pub fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    let mut comps = n;
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            comps -= 1;
        }
    }
    comps <= 1
}

/// Hypertrees straight from the definition: degrees minus one, over all
/// brute-force spanning trees.
pub fn brute_hypertrees(g: &BipartiteGraph, side: Side) -> HashSet<Vec<i64>> {
    let edges = g.edges();
    let unified = unified_edges(g);
    let size = g.class_size(side);
    brute_spanning_trees(g.vertex_count(), &unified)
        .into_iter()
        .map(|tree| {
            let mut f = vec![-1i64; size];
            for i in tree {
                let (e, v) = edges[i];
                f[if side == Side::Emerald { e } else { v }] += 1;
            }
            f
        })
        .collect()
}

/// Interior polynomial from the definition: `e` is inactive when moving one
/// unit from `e` to some earlier hyperedge gives another hypertree.
pub fn brute_interior(trees: &HashSet<Vec<i64>>, order: &HyperedgeOrder) -> IntPolynomial {
    let mut counts = vec![0i64; order.len() + 1];
    for f in trees {
        let inactive = (0..f.len())
            .filter(|&e| {
                f[e] > 0
                    && (0..f.len()).any(|to| {
                        order.less(to, e) && {
                            let mut g = f.clone();
                            g[e] -= 1;
                            g[to] += 1;
                            trees.contains(&g)
                        }
                    })
            })
            .count();
        counts[inactive] += 1;
    }
    IntPolynomial::from_i64s(&counts)
}

/// Number of 4-cycles: pairs of emerald vertices times pairs of common
/// violet neighbors.
pub fn brute_four_cycles(g: &BipartiteGraph) -> usize {
    let m = g.class_size(Side::Emerald);
    let n = g.class_size(Side::Violet);
    let adj: HashSet<(usize, usize)> = g.edges().iter().copied().collect();
    let mut count = 0;
    for a in 0..m {
        for b in a + 1..m {
            let common = (0..n)
                .filter(|&v| adj.contains(&(a, v)) && adj.contains(&(b, v)))
                .count();
            count += common * common.saturating_sub(1) / 2;
        }
    }
    count
}

/// Lattice points of `s·Q_G` by summing `s` vertices in every way.
pub fn brute_dilate_count(g: &BipartiteGraph, s: usize) -> usize {
    let m = g.class_size(Side::Emerald);
    let mut layer: HashSet<Vec<i64>> = HashSet::new();
    layer.insert(vec![0; g.vertex_count()]);
    for _ in 0..s {
        let mut next = HashSet::new();
        for p in &layer {
            for &(e, v) in g.edges() {
                let mut q = p.clone();
                q[e] += 1;
                q[m + v] += 1;
                next.insert(q);
            }
        }
        layer = next;
    }
    layer.len()
}
