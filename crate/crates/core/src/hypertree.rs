//! Hypertrees of the hypergraphs induced by a bipartite graph, the
//! polymatroid rank function `μ`, transfers of valence and tight sets.
//!
//! Choosing a color class as the hyperedges turns `G` into a hypergraph whose
//! vertices are the other class. Subsets of hyperedges are bitmasks over the
//! class order.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::activity::HyperedgeOrder;
use crate::bigraph::{BipartiteGraph, Dsu, EdgeSet, Side, SpanningTree};
use crate::error::{Error, Result};

/// Default cap on the number of hyperedges (the `μ` table has `2^n` entries).
pub const DEFAULT_HYPEREDGE_CAP: usize = 20;
/// Cap on the ground set of [`SubmodularOracle::base_points`].
pub const BASE_POINT_GROUND_CAP: usize = 10;
/// Cap on `μ(S)` for [`SubmodularOracle::base_points`].
pub const BASE_POINT_VALUE_CAP: i64 = 64;

/// A hypertree, as its values in hyperedge-class order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Hypertree(pub Vec<u32>);

impl Hypertree {
    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, e: usize) -> u32 {
        self.0[e]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `f − 1_from + 1_to`, or `None` if `f(from)` is zero.
    pub fn transferred(&self, from: usize, to: usize) -> Option<Hypertree> {
        if self.0[from] == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[from] -= 1;
        v[to] += 1;
        Some(Hypertree(v))
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&x| i64::from(x)).collect()
    }
}

impl fmt::Debug for Hypertree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for Hypertree {
    fn from(v: Vec<u32>) -> Self {
        Hypertree(v)
    }
}

/// A sorted set of hypertrees with constant-time membership.
#[derive(Clone, Debug, Default)]
pub struct HypertreeSet {
    sorted: Vec<Hypertree>,
    index: HashSet<Hypertree>,
}

impl HypertreeSet {
    pub fn new(items: impl IntoIterator<Item = Hypertree>) -> Self {
        let index: HashSet<Hypertree> = items.into_iter().collect();
        let mut sorted: Vec<Hypertree> = index.iter().cloned().collect();
        sorted.sort();
        HypertreeSet { sorted, index }
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn contains(&self, f: &Hypertree) -> bool {
        self.index.contains(f)
    }

    pub fn contains_values(&self, values: &[i64]) -> bool {
        values.iter().all(|&x| x >= 0 && x <= i64::from(u32::MAX))
            && self
                .index
                .contains(&Hypertree(values.iter().map(|&x| x as u32).collect()))
    }

    /// Hypertrees in increasing vector order.
    pub fn iter(&self) -> std::slice::Iter<'_, Hypertree> {
        self.sorted.iter()
    }

    pub fn as_slice(&self) -> &[Hypertree] {
        &self.sorted
    }

    pub fn to_vecs(&self) -> Vec<Vec<i64>> {
        self.sorted.iter().map(Hypertree::as_i64).collect()
    }
}

impl PartialEq for HypertreeSet {
    fn eq(&self, other: &Self) -> bool {
        self.sorted == other.sorted
    }
}

impl Eq for HypertreeSet {}

impl<'a> IntoIterator for &'a HypertreeSet {
    type Item = &'a Hypertree;
    type IntoIter = std::slice::Iter<'a, Hypertree>;

    fn into_iter(self) -> Self::IntoIter {
        self.sorted.iter()
    }
}

/// The hypergraph induced by `graph` when class `side` is taken as the
/// hyperedges, together with its tabulated `μ`.
#[derive(Clone, Debug)]
pub struct Hypergraph<'g> {
    graph: &'g BipartiteGraph,
    side: Side,
    /// Neighborhood of each hyperedge as a mask over the other class.
    neighbors: Vec<u64>,
    mu: Vec<u32>,
}

impl<'g> Hypergraph<'g> {
    pub fn new(graph: &'g BipartiteGraph, side: Side) -> Result<Self> {
        Self::with_cap(graph, side, DEFAULT_HYPEREDGE_CAP)
    }

    pub fn with_cap(graph: &'g BipartiteGraph, side: Side, cap: usize) -> Result<Self> {
        graph.require_connected()?;
        let n = graph.class_size(side);
        if n > cap {
            return Err(Error::CapExceeded {
                what: "hyperedge count",
                limit: cap,
                actual: n,
            });
        }
        let other = side.other();
        let neighbors: Vec<u64> = (0..n)
            .map(|h| {
                graph
                    .incident(side, h)
                    .iter()
                    .fold(0u64, |m, &i| m | 1 << graph.endpoint(i, other))
            })
            .collect();
        // Hyperedges sharing a vertex.
        let linked: Vec<u64> = (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&b| neighbors[a] & neighbors[b] != 0)
                    .fold(0u64, |m, b| m | 1 << b)
            })
            .collect();
        let mut mu = vec![0u32; 1 << n];
        let mut union = vec![0u64; 1 << n];
        for mask in 1usize..1 << n {
            let low = mask.trailing_zeros() as usize;
            union[mask] = union[mask & (mask - 1)] | neighbors[low];
            let mut components = 0;
            let mut left = mask as u64;
            while left != 0 {
                let start = left.trailing_zeros() as usize;
                let mut seen = 1u64 << start;
                let mut frontier = seen;
                while frontier != 0 {
                    let x = frontier.trailing_zeros() as usize;
                    frontier &= frontier - 1;
                    let fresh = linked[x] & mask as u64 & !seen;
                    seen |= fresh;
                    frontier |= fresh;
                }
                left &= !seen;
                components += 1;
            }
            mu[mask] = union[mask].count_ones() - components;
        }
        Ok(Hypergraph {
            graph,
            side,
            neighbors,
            mu,
        })
    }

    pub fn graph(&self) -> &'g BipartiteGraph {
        self.graph
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// The hypergraph with the roles of the two classes exchanged.
    pub fn transpose(&self) -> Result<Hypergraph<'g>> {
        Hypergraph::new(self.graph, self.side.other())
    }

    /// Number of hyperedges.
    pub fn size(&self) -> usize {
        self.neighbors.len()
    }

    pub fn labels(&self) -> &'g [String] {
        self.graph.labels(self.side)
    }

    pub fn full_mask(&self) -> u64 {
        (1u64 << self.size()) - 1
    }

    /// `|V| − 1`: the common coordinate sum of all hypertrees.
    pub fn target(&self) -> u32 {
        self.graph.class_size(self.side.other()) as u32 - 1
    }

    /// `μ(E')` for a hyperedge mask.
    pub fn mu(&self, mask: u64) -> u32 {
        self.mu[mask as usize]
    }

    /// `μ` of a set of hyperedge labels.
    pub fn mu_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<u32> {
        let mut mask = 0u64;
        for l in labels {
            let l = l.as_ref();
            let i = self
                .labels()
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
            mask |= 1 << i;
        }
        Ok(self.mu(mask))
    }

    /// The opposite-class neighbors of a hyperedge, as a mask.
    pub fn neighborhood(&self, h: usize) -> u64 {
        self.neighbors[h]
    }

    /// Membership in `B_H` by scanning every subset inequality.
    pub fn is_hypertree(&self, values: &[i64]) -> bool {
        let n = self.size();
        if values.len() != n || values.iter().any(|&x| x < 0) {
            return false;
        }
        if values.iter().sum::<i64>() != i64::from(self.target()) {
            return false;
        }
        let mut sums = vec![0i64; 1 << n];
        for mask in 1usize..1 << n {
            let low = mask.trailing_zeros() as usize;
            sums[mask] = sums[mask & (mask - 1)] + values[low];
            if sums[mask] > i64::from(self.mu[mask]) {
                return false;
            }
        }
        true
    }

    /// Degree-minus-one vector of a spanning tree at the hyperedges.
    pub fn induced(&self, tree: SpanningTree) -> Hypertree {
        Hypertree(
            (0..self.size())
                .map(|h| self.graph.degree_in(tree.edges(), self.side, h) as u32 - 1)
                .collect(),
        )
    }

    /// `B_H` as the integer points of the base polytope of `μ`.
    pub fn enumerate_hypertrees(&self) -> Result<HypertreeSet> {
        self.graph.require_connected()?;
        let points = polymatroid_base_points(self.size(), |m| i64::from(self.mu(m)));
        Ok(HypertreeSet::new(points.into_iter().map(|p| {
            Hypertree(p.into_iter().map(|x| x as u32).collect())
        })))
    }

    /// `B_H` as the deduplicated hypertrees induced by all spanning trees.
    pub fn enumerate_via_spanning_trees(&self) -> Result<HypertreeSet> {
        let trees = self.graph.enumerate_spanning_trees()?;
        Ok(HypertreeSet::new(
            trees.into_iter().map(|t| self.induced(t)),
        ))
    }

    /// Whether `f − 1_from + 1_to` is a hypertree.
    pub fn can_transfer(&self, f: &Hypertree, from: usize, to: usize) -> bool {
        from != to && self.transfers(f).can(from, to)
    }

    /// Tight-set data of `f`, answering every transfer query at once.
    pub fn transfers(&self, f: &Hypertree) -> Transfers {
        let n = self.size();
        let mut closure = vec![self.full_mask(); n];
        let mut sums = vec![0u32; 1 << n];
        for mask in 1usize..1 << n {
            let low = mask.trailing_zeros() as usize;
            sums[mask] = sums[mask & (mask - 1)] + f.0[low];
            if sums[mask] == self.mu[mask] {
                let mut bits = mask as u64;
                while bits != 0 {
                    let e = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    closure[e] &= mask as u64;
                }
            }
        }
        Transfers {
            positive: f
                .0
                .iter()
                .enumerate()
                .fold(0u64, |m, (i, &x)| if x > 0 { m | 1 << i } else { m }),
            closure,
        }
    }

    /// The smallest hyperedge (under `order`) that `e` can pass valence to,
    /// or `e` itself when no smaller one exists.
    pub fn favorite(&self, order: &HyperedgeOrder, f: &Hypertree, e: usize) -> usize {
        let t = self.transfers(f);
        order
            .iter()
            .take_while(|&x| x != e)
            .find(|&x| t.can(e, x))
            .unwrap_or(e)
    }

    /// Whether `Σ_{E'} f = μ(E')`.
    pub fn is_tight(&self, f: &Hypertree, mask: u64) -> bool {
        let total: u32 = (0..self.size())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| f.0[i])
            .sum();
        total == self.mu(mask)
    }

    /// All nonempty tight sets of `f`.
    pub fn tight_sets(&self, f: &Hypertree) -> Vec<u64> {
        (1..=self.full_mask())
            .filter(|&m| self.is_tight(f, m))
            .collect()
    }

    /// The lexicographically first spanning tree inducing `f`.
    pub fn realize(&self, f: &Hypertree) -> Result<SpanningTree> {
        if !self.is_hypertree(&f.as_i64()) {
            return Err(Error::NotAHypertree(f.0.clone()));
        }
        self.graph.require_connected()?;
        let g = self.graph;
        let m = g.edge_count();
        let need: Vec<usize> = f.0.iter().map(|&x| x as usize + 1).collect();
        let mut search = Realizer {
            g,
            side: self.side,
            need,
            degree: vec![0; self.size()],
            parent: (0..g.vertex_count()).collect(),
            found: None,
        };
        search.grow(0, EdgeSet::EMPTY, m);
        search
            .found
            .map(SpanningTree)
            .ok_or_else(|| Error::NotAHypertree(f.0.clone()))
    }

    /// Partition of the hyperedge set `mask` by the components of the part
    /// of `tree` incident to it.
    pub fn realization_partition(&self, tree: SpanningTree, mask: u64) -> Vec<u64> {
        let g = self.graph;
        let mut dsu = Dsu::new(g.vertex_count());
        for i in tree.edges().iter() {
            let h = g.endpoint(i, self.side);
            if mask >> h & 1 == 1 {
                let (a, b) = g.edge_vertices(i);
                dsu.union(a, b);
            }
        }
        let mut parts: Vec<(usize, u64)> = Vec::new();
        for h in (0..self.size()).filter(|&h| mask >> h & 1 == 1) {
            let root = dsu.find(g.vertex(self.side, h));
            match parts.iter_mut().find(|(r, _)| *r == root) {
                Some((_, m)) => *m |= 1 << h,
                None => parts.push((root, 1 << h)),
            }
        }
        parts.into_iter().map(|(_, m)| m).collect()
    }

    /// `μ` packaged as a standalone set function.
    pub fn oracle(&self) -> SubmodularOracle {
        SubmodularOracle {
            labels: self.labels().to_vec(),
            values: self.mu.iter().map(|&x| i64::from(x)).collect(),
        }
    }

    /// Label-indexed index lookup.
    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels()
            .iter()
            .position(|x| x == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
}

/// Transfer feasibility at a fixed hypertree.
///
/// Tight sets are closed under intersection, so each hyperedge `e` lies in a
/// smallest tight set; valence can move from `a` to `b` iff `f(a) > 0` and
/// `a` belongs to the smallest tight set around `b`.
#[derive(Clone, Debug)]
pub struct Transfers {
    positive: u64,
    closure: Vec<u64>,
}

impl Transfers {
    pub fn can(&self, from: usize, to: usize) -> bool {
        from != to && self.positive >> from & 1 == 1 && self.closure[to] >> from & 1 == 1
    }

    /// Smallest tight set containing `e`.
    pub fn closure(&self, e: usize) -> u64 {
        self.closure[e]
    }
}

struct Realizer<'a> {
    g: &'a BipartiteGraph,
    side: Side,
    need: Vec<usize>,
    degree: Vec<usize>,
    parent: Vec<usize>,
    found: Option<EdgeSet>,
}

impl Realizer<'_> {
    fn root(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn grow(&mut self, next: usize, chosen: EdgeSet, m: usize) {
        if self.found.is_some() {
            return;
        }
        if chosen.len() + 1 == self.g.vertex_count() {
            if self.degree == self.need {
                self.found = Some(chosen);
            }
            return;
        }
        if next == m {
            return;
        }
        // Every hyperedge must still be able to reach its degree.
        for h in 0..self.need.len() {
            let left = self
                .g
                .incident(self.side, h)
                .iter()
                .filter(|&&i| i >= next)
                .count();
            if self.degree[h] + left < self.need[h] {
                return;
            }
        }
        let h = self.g.endpoint(next, self.side);
        if self.degree[h] < self.need[h] {
            let (a, b) = self.g.edge_vertices(next);
            let (ra, rb) = (self.root(a), self.root(b));
            if ra != rb {
                self.parent[rb] = ra;
                self.degree[h] += 1;
                self.grow(next + 1, chosen.with(next), m);
                self.degree[h] -= 1;
                self.parent[rb] = rb;
            }
        }
        self.grow(next + 1, chosen, m);
    }
}

/// Integer points of the base polytope of the set function `value` on
/// `{0..n}`: `x ≥ 0`, `x(S) = value(S)`, `x(U) ≤ value(U)` for every `U`.
///
/// Coordinates are assigned in order; each new coordinate is checked against
/// every subset of the assigned prefix that contains it.
pub(crate) fn polymatroid_base_points(n: usize, value: impl Fn(u64) -> i64) -> Vec<Vec<i64>> {
    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let target = value(full);
    let singles: Vec<i64> = (0..n).map(|i| value(1 << i)).collect();
    let mut tail = vec![0i64; n + 1];
    for i in (0..n).rev() {
        tail[i] = tail[i + 1] + singles[i].max(0);
    }
    let mut sums = vec![0i64; 1 << n];
    let mut point = vec![0i64; n];
    let mut out = Vec::new();
    base_rec(
        0, n, 0, target, &value, &singles, &tail, &mut sums, &mut point, &mut out,
    );
    out
}

#[allow(clippy::too_many_arguments)]
fn base_rec(
    i: usize,
    n: usize,
    total: i64,
    target: i64,
    value: &impl Fn(u64) -> i64,
    singles: &[i64],
    tail: &[i64],
    sums: &mut Vec<i64>,
    point: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if i == n {
        if total == target {
            out.push(point.clone());
        }
        return;
    }
    let lo = (target - total - tail[i + 1]).max(0);
    let hi = singles[i].min(target - total);
    let bit = 1usize << i;
    'values: for t in lo..=hi {
        for u in 0..bit {
            let s = sums[u] + t;
            if s > value((u | bit) as u64) {
                continue 'values;
            }
            sums[u | bit] = s;
        }
        point[i] = t;
        base_rec(
            i + 1,
            n,
            total + t,
            target,
            value,
            singles,
            tail,
            sums,
            point,
            out,
        );
    }
}

/// A set function on the subsets of a labeled ground set, tabulated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmodularOracle {
    labels: Vec<String>,
    values: Vec<i64>,
}

impl SubmodularOracle {
    pub fn from_fn<S: AsRef<str>>(labels: &[S], f: impl Fn(u64) -> i64) -> Result<Self> {
        let n = labels.len();
        if n > DEFAULT_HYPEREDGE_CAP {
            return Err(Error::CapExceeded {
                what: "ground set size",
                limit: DEFAULT_HYPEREDGE_CAP,
                actual: n,
            });
        }
        Ok(SubmodularOracle {
            labels: labels.iter().map(|s| s.as_ref().to_string()).collect(),
            values: (0..1u64 << n).map(f).collect(),
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn value(&self, mask: u64) -> i64 {
        self.values[mask as usize]
    }

    pub fn full_mask(&self) -> u64 {
        (1u64 << self.size()) - 1
    }

    pub fn is_normalized(&self) -> bool {
        self.values[0] == 0
    }

    pub fn is_monotone(&self) -> bool {
        let n = self.size();
        (0..self.values.len())
            .all(|m| (0..n).all(|i| m >> i & 1 == 1 || self.values[m] <= self.values[m | 1 << i]))
    }

    /// Exhaustive check of the local form `μ(A+i) + μ(A+j) ≥ μ(A+i+j) + μ(A)`.
    pub fn is_submodular(&self) -> bool {
        let n = self.size();
        (0..self.values.len()).all(|a| {
            (0..n).filter(|&i| a >> i & 1 == 0).all(|i| {
                (i + 1..n).filter(|&j| a >> j & 1 == 0).all(|j| {
                    let (ai, aj) = (a | 1 << i, a | 1 << j);
                    self.values[ai] + self.values[aj] >= self.values[ai | 1 << j] + self.values[a]
                })
            })
        })
    }

    /// Integer points of the base polytope `B_μ`.
    pub fn base_points(&self) -> Result<Vec<Vec<i64>>> {
        if self.size() > BASE_POINT_GROUND_CAP {
            return Err(Error::CapExceeded {
                what: "ground set size",
                limit: BASE_POINT_GROUND_CAP,
                actual: self.size(),
            });
        }
        let top = self.value(self.full_mask());
        if top > BASE_POINT_VALUE_CAP {
            return Err(Error::CapExceeded {
                what: "value of the ground set",
                limit: BASE_POINT_VALUE_CAP as usize,
                actual: top as usize,
            });
        }
        Ok(polymatroid_base_points(self.size(), |m| self.value(m)))
    }
}
