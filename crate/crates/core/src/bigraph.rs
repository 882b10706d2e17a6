//! Bipartite graphs, their spanning trees, directed cuts and the
//! compatibility relation between spanning trees.
//!
//! Vertices are addressed in two ways: per color class (`Side` plus index
//! into that class) and by a unified index where the emerald class comes
//! first (`0..|E|`) followed by the violet class (`|E|..|E|+|V|`). The
//! unified order is also the coordinate order of lattice points in
//! `Z^E ⊕ Z^V`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::IntPolynomial;

/// Largest number of edges an [`EdgeSet`] can hold.
pub const MAX_EDGES: usize = 64;
/// Default cap on `|E| + |V|` for the exhaustive directed-cut search.
pub const DEFAULT_CUT_CAP: usize = 20;

/// A set of edge indices, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet(pub u64);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    pub fn singleton(edge: usize) -> Self {
        EdgeSet(1 << edge)
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            EdgeSet(u64::MAX)
        } else {
            EdgeSet((1u64 << n) - 1)
        }
    }

    pub fn from_edges(edges: impl IntoIterator<Item = usize>) -> Self {
        edges.into_iter().fold(EdgeSet::EMPTY, |s, e| s.with(e))
    }

    pub fn contains(self, edge: usize) -> bool {
        self.0 >> edge & 1 == 1
    }

    pub fn with(self, edge: usize) -> Self {
        EdgeSet(self.0 | 1 << edge)
    }

    pub fn without(self, edge: usize) -> Self {
        EdgeSet(self.0 & !(1 << edge))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        EdgeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        EdgeSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        EdgeSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn meets(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Edge indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Lexicographic comparison of the sorted index lists.
    pub fn lex_cmp(self, other: Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }

    /// Every subset of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = EdgeSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(EdgeSet(cur))
        })
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A spanning tree, as a set of edge indices of its parent graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpanningTree(pub EdgeSet);

impl SpanningTree {
    pub fn edges(self) -> EdgeSet {
        self.0
    }
}

/// Which color class plays the role of hyperedges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Emerald,
    Violet,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Emerald => Side::Violet,
            Side::Violet => Side::Emerald,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Emerald => "emerald",
            Side::Violet => "violet",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "emerald" | "E" => Ok(Side::Emerald),
            "violet" | "V" => Ok(Side::Violet),
            other => Err(format!(
                "unknown color class `{other}` (expected emerald or violet)"
            )),
        }
    }
}

/// A simple bipartite graph with labeled, ordered color classes.
///
/// Edges are kept sorted by `(emerald index, violet index)`; an edge's index
/// in that order is its identity everywhere else in the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    emerald: Vec<String>,
    violet: Vec<String>,
    edges: Vec<(usize, usize)>,
    connected: bool,
    emerald_edges: Vec<Vec<usize>>,
    violet_edges: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new<S: AsRef<str>>(emerald: &[S], violet: &[S], edges: &[(S, S)]) -> Result<Self> {
        let emerald: Vec<String> = emerald.iter().map(|s| s.as_ref().to_string()).collect();
        let violet: Vec<String> = violet.iter().map(|s| s.as_ref().to_string()).collect();
        if emerald.is_empty() {
            return Err(Error::EmptyClass("emerald"));
        }
        if violet.is_empty() {
            return Err(Error::EmptyClass("violet"));
        }
        let e_index = label_index(&emerald)?;
        let v_index = label_index(&violet)?;
        let mut pairs = Vec::with_capacity(edges.len());
        let mut seen = HashSet::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let e = *e_index
                .get(a)
                .ok_or_else(|| Error::UnknownLabel(a.to_string()))?;
            let v = *v_index
                .get(b)
                .ok_or_else(|| Error::UnknownLabel(b.to_string()))?;
            if !seen.insert((e, v)) {
                return Err(Error::DuplicateEdge(a.to_string(), b.to_string()));
            }
            pairs.push((e, v));
        }
        Self::assemble(emerald, violet, pairs)
    }

    /// Graph on classes labeled `e0, e1, ...` and `v0, v1, ...`.
    pub fn from_indices(
        n_emerald: usize,
        n_violet: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        let emerald: Vec<String> = (0..n_emerald).map(|i| format!("e{i}")).collect();
        let violet: Vec<String> = (0..n_violet).map(|i| format!("v{i}")).collect();
        let named: Vec<(String, String)> = edges
            .iter()
            .map(|&(e, v)| (format!("e{e}"), format!("v{v}")))
            .collect();
        Self::new(&emerald, &violet, &named)
    }

    /// `K_{m,n}` with `m` emerald and `n` violet vertices.
    pub fn complete(m: usize, n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..m).flat_map(|e| (0..n).map(move |v| (e, v))).collect();
        Self::from_indices(m, n, &edges).expect("complete graph is well formed")
    }

    fn assemble(
        emerald: Vec<String>,
        violet: Vec<String>,
        mut edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        if edges.len() > MAX_EDGES {
            return Err(Error::CapExceeded {
                what: "edge count",
                limit: MAX_EDGES,
                actual: edges.len(),
            });
        }
        if emerald.len() + violet.len() > 64 {
            return Err(Error::CapExceeded {
                what: "vertex count",
                limit: 64,
                actual: emerald.len() + violet.len(),
            });
        }
        edges.sort_unstable();
        let mut emerald_edges = vec![Vec::new(); emerald.len()];
        let mut violet_edges = vec![Vec::new(); violet.len()];
        for (i, &(e, v)) in edges.iter().enumerate() {
            emerald_edges[e].push(i);
            violet_edges[v].push(i);
        }
        let mut g = BipartiteGraph {
            emerald,
            violet,
            edges,
            connected: false,
            emerald_edges,
            violet_edges,
        };
        g.connected = g.component_count(g.all_edges()) == 1;
        Ok(g)
    }

    pub fn emerald(&self) -> &[String] {
        &self.emerald
    }

    pub fn violet(&self) -> &[String] {
        &self.violet
    }

    pub fn labels(&self, side: Side) -> &[String] {
        match side {
            Side::Emerald => &self.emerald,
            Side::Violet => &self.violet,
        }
    }

    pub fn class_size(&self, side: Side) -> usize {
        self.labels(side).len()
    }

    pub fn vertex_count(&self) -> usize {
        self.emerald.len() + self.violet.len()
    }

    /// Edges as `(emerald index, violet index)` in edge-index order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edges.len())
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.connected {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Dimension of the root polytope, `|E| + |V| - 2`.
    pub fn dimension(&self) -> usize {
        self.vertex_count() - 2
    }

    pub fn edge_labels(&self, edge: usize) -> (&str, &str) {
        let (e, v) = self.edges[edge];
        (&self.emerald[e], &self.violet[v])
    }

    pub fn edge_index(&self, emerald: usize, violet: usize) -> Option<usize> {
        self.edges.binary_search(&(emerald, violet)).ok()
    }

    pub fn edge_by_labels(&self, emerald: &str, violet: &str) -> Option<usize> {
        let e = self.emerald.iter().position(|l| l == emerald)?;
        let v = self.violet.iter().position(|l| l == violet)?;
        self.edge_index(e, v)
    }

    /// Edge indices incident to vertex `index` of class `side`.
    pub fn incident(&self, side: Side, index: usize) -> &[usize] {
        match side {
            Side::Emerald => &self.emerald_edges[index],
            Side::Violet => &self.violet_edges[index],
        }
    }

    /// The endpoint of `edge` in class `side`.
    pub fn endpoint(&self, edge: usize, side: Side) -> usize {
        let (e, v) = self.edges[edge];
        match side {
            Side::Emerald => e,
            Side::Violet => v,
        }
    }

    /// Unified vertex index.
    pub fn vertex(&self, side: Side, index: usize) -> usize {
        match side {
            Side::Emerald => index,
            Side::Violet => self.emerald.len() + index,
        }
    }

    /// Inverse of [`BipartiteGraph::vertex`].
    pub fn side_of(&self, vertex: usize) -> (Side, usize) {
        if vertex < self.emerald.len() {
            (Side::Emerald, vertex)
        } else {
            (Side::Violet, vertex - self.emerald.len())
        }
    }

    pub fn vertex_label(&self, vertex: usize) -> &str {
        let (side, i) = self.side_of(vertex);
        &self.labels(side)[i]
    }

    /// Unified endpoints `(emerald, violet)` of an edge.
    pub fn edge_vertices(&self, edge: usize) -> (usize, usize) {
        let (e, v) = self.edges[edge];
        (e, self.emerald.len() + v)
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.emerald.len() * self.violet.len()
    }

    /// Degree of the class-`side` vertex `index` within `edges`.
    pub fn degree_in(&self, edges: EdgeSet, side: Side, index: usize) -> usize {
        self.incident(side, index)
            .iter()
            .filter(|&&i| edges.contains(i))
            .count()
    }

    /// Component label of every unified vertex in the subgraph `(all vertices, edges)`.
    pub fn components(&self, edges: EdgeSet) -> Vec<usize> {
        let mut dsu = Dsu::new(self.vertex_count());
        for i in edges.iter() {
            let (a, b) = self.edge_vertices(i);
            dsu.union(a, b);
        }
        (0..self.vertex_count()).map(|v| dsu.find(v)).collect()
    }

    pub fn component_count(&self, edges: EdgeSet) -> usize {
        let comps = self.components(edges);
        comps.iter().enumerate().filter(|&(v, &c)| v == c).count()
    }

    pub fn is_forest(&self, edges: EdgeSet) -> bool {
        self.component_count(edges) + edges.len() == self.vertex_count()
    }

    pub fn is_spanning_tree(&self, edges: EdgeSet) -> bool {
        edges.len() + 1 == self.vertex_count() && self.is_forest(edges)
    }

    /// Edges of the unique path from unified vertex `from` to `to` inside the
    /// forest `forest`, in order starting at `from`. `None` if they are in
    /// different components.
    pub fn forest_path(&self, forest: EdgeSet, from: usize, to: usize) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut adjacency = vec![Vec::new(); n];
        for i in forest.iter() {
            let (a, b) = self.edge_vertices(i);
            adjacency[a].push((b, i));
            adjacency[b].push((a, i));
        }
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(x) = stack.pop() {
            for &(y, i) in &adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, i));
                    stack.push(y);
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut path = Vec::new();
        let mut cur = to;
        while cur != from {
            let (p, i) = parent[cur].expect("visited vertex has a parent");
            path.push(i);
            cur = p;
        }
        path.reverse();
        Some(path)
    }

    /// All spanning trees, in lexicographic order of their sorted edge lists.
    pub fn enumerate_spanning_trees(&self) -> Result<Vec<SpanningTree>> {
        self.require_connected()?;
        let pairs: Vec<(usize, usize)> = (0..self.edges.len())
            .map(|i| self.edge_vertices(i))
            .collect();
        Ok(spanning_trees(self.vertex_count(), &pairs)
            .into_iter()
            .map(SpanningTree)
            .collect())
    }

    /// First Betti number (nullity) `|edges| - |E| - |V| + 1`.
    pub fn first_betti(&self) -> Result<usize> {
        self.require_connected()?;
        Ok(self.edges.len() + 1 - self.vertex_count())
    }

    /// Number of distinct 4-cycles.
    pub fn count_four_cycles(&self) -> usize {
        let masks: Vec<u64> = (0..self.emerald.len())
            .map(|e| {
                self.emerald_edges[e]
                    .iter()
                    .fold(0u64, |m, &i| m | 1 << self.edges[i].1)
            })
            .collect();
        let mut total = 0;
        for a in 0..masks.len() {
            for b in a + 1..masks.len() {
                let common = (masks[a] & masks[b]).count_ones() as usize;
                total += common * common.saturating_sub(1) / 2;
            }
        }
        total
    }

    fn vertex_adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.vertex_count()];
        for i in 0..self.edges.len() {
            let (a, b) = self.edge_vertices(i);
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        adj
    }

    pub fn minimal_directed_cuts(&self) -> Result<Vec<DirectedCut>> {
        self.minimal_directed_cuts_capped(DEFAULT_CUT_CAP)
    }

    /// All minimal directed cuts, found by scanning vertex splittings whose
    /// two sides both induce connected subgraphs.
    pub fn minimal_directed_cuts_capped(&self, cap: usize) -> Result<Vec<DirectedCut>> {
        self.require_connected()?;
        let n = self.vertex_count();
        if n > cap {
            return Err(Error::CapExceeded {
                what: "|E|+|V| for the directed-cut search",
                limit: cap,
                actual: n,
            });
        }
        let adj = self.vertex_adjacency();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let emerald_mask = (1u64 << self.emerald.len()) - 1;
        let mut cuts = Vec::new();
        for source in 1..all {
            // An emerald vertex in S may only have neighbors in S.
            let mut directed = true;
            let mut es = source & emerald_mask;
            while es != 0 {
                let e = es.trailing_zeros() as usize;
                es &= es - 1;
                if adj[e] & !source != 0 {
                    directed = false;
                    break;
                }
            }
            if !directed {
                continue;
            }
            if !induces_connected(&adj, source) || !induces_connected(&adj, all & !source) {
                continue;
            }
            let cut = EdgeSet::from_edges((0..self.edges.len()).filter(|&i| {
                let (e, v) = self.edge_vertices(i);
                source >> v & 1 == 1 && source >> e & 1 == 0
            }));
            if cut.is_empty() {
                continue;
            }
            cuts.push(DirectedCut::new(self, source, cut));
        }
        let minimal: Vec<DirectedCut> = cuts
            .iter()
            .filter(|c| {
                !cuts
                    .iter()
                    .any(|d| d.cut != c.cut && d.cut.is_subset(c.cut))
            })
            .cloned()
            .collect();
        let mut out: Vec<DirectedCut> = Vec::with_capacity(minimal.len());
        for c in minimal {
            if !out.iter().any(|d| d.cut == c.cut) {
                out.push(c);
            }
        }
        out.sort_by(|a, b| a.cut.lex_cmp(b.cut));
        Ok(out)
    }

    /// The star-cut at a unified vertex, as a directed cut (every star-cut of
    /// a bipartite graph is directed).
    pub fn star_cut(&self, vertex: usize) -> DirectedCut {
        let (side, i) = self.side_of(vertex);
        let cut = EdgeSet::from_edges(self.incident(side, i).iter().copied());
        let all = if self.vertex_count() == 64 {
            u64::MAX
        } else {
            (1u64 << self.vertex_count()) - 1
        };
        let source = match side {
            Side::Violet => 1u64 << vertex,
            Side::Emerald => all & !(1u64 << vertex),
        };
        DirectedCut::new(self, source, cut)
    }
}

fn label_index(labels: &[String]) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.as_str(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

fn induces_connected(adj: &[u64], set: u64) -> bool {
    if set == 0 {
        return false;
    }
    let start = set.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let x = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[x] & set & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == set
}

/// A directed cut `C` of a splitting `S ∪ T` in which every cut edge meets
/// `S` at its violet endpoint, together with its sign functional `λ_C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedCut {
    /// Unified vertex mask of `S`.
    pub source: u64,
    pub cut: EdgeSet,
    signs: Vec<i64>,
}

impl DirectedCut {
    fn new(g: &BipartiteGraph, source: u64, cut: EdgeSet) -> Self {
        let signs = (0..g.vertex_count())
            .map(|x| {
                let in_s = source >> x & 1 == 1;
                let violet = matches!(g.side_of(x).0, Side::Violet);
                if in_s == violet {
                    1
                } else {
                    -1
                }
            })
            .collect();
        DirectedCut { source, cut, signs }
    }

    /// `λ_C` on the unit vector of a unified vertex: `+1` on
    /// `(S ∩ V) ∪ (T ∩ E)`, `-1` elsewhere.
    pub fn sign(&self, vertex: usize) -> i64 {
        self.signs[vertex]
    }

    /// `λ_C(p)` for a point of `Z^E ⊕ Z^V` in unified coordinates.
    pub fn evaluate(&self, coords: &[i64]) -> i64 {
        self.signs.iter().zip(coords).map(|(s, c)| s * c).sum()
    }

    pub fn is_star(&self) -> bool {
        let n = self.signs.len() as u32;
        let s = self.source.count_ones();
        s == 1 || s + 1 == n
    }
}

/// True iff some cycle `ε₁ … ε_{2k}` (`k ≥ 2`) has its odd edges in `t1` and
/// its even edges in `t2`; compatible trees are those where this is false.
///
/// Orient `t1` edges emerald→violet and `t2` edges violet→emerald. A directed
/// cycle of length ≥ 4 exists iff some arc `u→w` that is not part of a
/// shared edge has `u` reachable from `w`.
pub fn alternating_cycle_exists(g: &BipartiteGraph, t1: EdgeSet, t2: EdgeSet) -> bool {
    let n = g.vertex_count();
    let mut reach = vec![0u64; n];
    for i in t1.iter() {
        let (e, v) = g.edge_vertices(i);
        reach[e] |= 1 << v;
    }
    for i in t2.iter() {
        let (e, v) = g.edge_vertices(i);
        reach[v] |= 1 << e;
    }
    for k in 0..n {
        let bit = 1u64 << k;
        let row = reach[k];
        for r in reach.iter_mut() {
            if *r & bit != 0 {
                *r |= row;
            }
        }
    }
    let shared = t1.intersection(t2);
    t1.difference(shared).iter().any(|i| {
        let (e, v) = g.edge_vertices(i);
        reach[v] >> e & 1 == 1
    }) || t2.difference(shared).iter().any(|i| {
        let (e, v) = g.edge_vertices(i);
        reach[e] >> v & 1 == 1
    })
}

pub fn compatible(g: &BipartiteGraph, t1: SpanningTree, t2: SpanningTree) -> bool {
    !alternating_cycle_exists(g, t1.0, t2.0)
}

/// Union-find with union by size and path halving.
pub(crate) struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Spanning trees of the multigraph on `n` vertices with edge list `edges`,
/// in lexicographic order of sorted edge-index lists. Empty if disconnected.
pub(crate) fn spanning_trees(n: usize, edges: &[(usize, usize)]) -> Vec<EdgeSet> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut stack_parent: Vec<usize> = (0..n).collect();
    grow(n, edges, 0, EdgeSet::EMPTY, &mut stack_parent, &mut out);
    out
}

fn find_root(parent: &[usize], mut x: usize) -> usize {
    while parent[x] != x {
        x = parent[x];
    }
    x
}

fn grow(
    n: usize,
    edges: &[(usize, usize)],
    next: usize,
    chosen: EdgeSet,
    parent: &mut Vec<usize>,
    out: &mut Vec<EdgeSet>,
) {
    if chosen.len() + 1 == n {
        out.push(chosen);
        return;
    }
    if next == edges.len() || chosen.len() + (edges.len() - next) + 1 < n {
        return;
    }
    // Remaining edges must still be able to connect everything.
    let mut dsu = Dsu::new(n);
    for i in chosen.iter().chain(next..edges.len()) {
        dsu.union(edges[i].0, edges[i].1);
    }
    let root = dsu.find(0);
    if (1..n).any(|v| dsu.find(v) != root) {
        return;
    }
    let (a, b) = edges[next];
    let (ra, rb) = (find_root(parent, a), find_root(parent, b));
    if ra != rb {
        parent[rb] = ra;
        grow(n, edges, next + 1, chosen.with(next), parent, out);
        parent[rb] = rb;
    }
    grow(n, edges, next + 1, chosen, parent, out);
}

/// A loopless multigraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinaryGraph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl OrdinaryGraph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        let index = label_index(&vertices)?;
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let u = *index
                .get(a)
                .ok_or_else(|| Error::UnknownLabel(a.to_string()))?;
            let v = *index
                .get(b)
                .ok_or_else(|| Error::UnknownLabel(b.to_string()))?;
            if u == v {
                return Err(Error::Loop(a.to_string()));
            }
            pairs.push((u, v));
        }
        Self::from_indices_labeled(vertices, pairs)
    }

    /// Graph on vertices labeled `0, 1, ...`.
    pub fn from_indices(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let named: Vec<(String, String)> = edges
            .iter()
            .map(|&(a, b)| (a.to_string(), b.to_string()))
            .collect();
        Self::new(&labels, &named)
    }

    fn from_indices_labeled(vertices: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if edges.len() > MAX_EDGES {
            return Err(Error::CapExceeded {
                what: "edge count",
                limit: MAX_EDGES,
                actual: edges.len(),
            });
        }
        Ok(OrdinaryGraph { vertices, edges })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let mut dsu = Dsu::new(self.vertices.len());
        for &(a, b) in &self.edges {
            dsu.union(a, b);
        }
        let r = dsu.find(0);
        (1..self.vertices.len()).all(|v| dsu.find(v) == r)
    }

    pub fn spanning_trees(&self) -> Result<Vec<EdgeSet>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(spanning_trees(self.vertices.len(), &self.edges))
    }

    /// Subdivides every edge: the emerald class is the original vertex set,
    /// the violet class the original edges (midpoints).
    pub fn incidence_bipartite(&self) -> Result<BipartiteGraph> {
        let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
        let violet: Vec<String> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let key = (a.min(b), a.max(b));
                let k = counts.entry(key).or_insert(0);
                *k += 1;
                let base = format!("{}~{}", self.vertices[a], self.vertices[b]);
                if *k == 1 {
                    base
                } else {
                    format!("{base}#{k}")
                }
            })
            .collect();
        let mut incidences = Vec::with_capacity(2 * self.edges.len());
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            incidences.push((self.vertices[a].clone(), violet[i].clone()));
            incidences.push((self.vertices[b].clone(), violet[i].clone()));
        }
        BipartiteGraph::new(&self.vertices, &violet, &incidences)
    }

    /// `T(x, 1)` as the spanning-tree generating function of classical
    /// internal activity: a tree edge is active when it is the smallest edge
    /// (under `edge_order`) of its fundamental cut.
    pub fn tutte_x1_oracle(&self, edge_order: &[usize]) -> Result<IntPolynomial> {
        let rank = permutation_rank(edge_order, self.edges.len())?;
        let n = self.vertices.len();
        let mut counts = vec![0i64; n.max(1)];
        for tree in self.spanning_trees()? {
            let mut active = 0;
            for t in tree.iter() {
                let mut dsu = Dsu::new(n);
                for u in tree.without(t).iter() {
                    dsu.union(self.edges[u].0, self.edges[u].1);
                }
                let smallest = (0..self.edges.len())
                    .filter(|&c| {
                        let (a, b) = self.edges[c];
                        dsu.find(a) != dsu.find(b)
                    })
                    .min_by_key(|&c| rank[c])
                    .expect("fundamental cut contains the tree edge");
                if smallest == t {
                    active += 1;
                }
            }
            counts[active] += 1;
        }
        Ok(IntPolynomial::new(
            counts.into_iter().map(BigInt::from).collect(),
        ))
    }
}

/// `rank[item] = position` for a permutation given as a list of items.
pub(crate) fn permutation_rank(order: &[usize], n: usize) -> Result<Vec<usize>> {
    if order.len() != n {
        return Err(Error::InvalidOrder(format!(
            "expected {n} entries, got {}",
            order.len()
        )));
    }
    let mut rank = vec![usize::MAX; n];
    for (pos, &item) in order.iter().enumerate() {
        if item >= n || rank[item] != usize::MAX {
            return Err(Error::InvalidOrder(format!(
                "{order:?} is not a permutation"
            )));
        }
        rank[item] = pos;
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k23() -> BipartiteGraph {
        BipartiteGraph::complete(3, 2)
    }

    fn path() -> BipartiteGraph {
        BipartiteGraph::new(&["e0", "e1"], &["v0"], &[("e0", "v0"), ("e1", "v0")]).unwrap()
    }

    fn tree(g: &BipartiteGraph, pairs: &[(&str, &str)]) -> EdgeSet {
        EdgeSet::from_edges(pairs.iter().map(|(a, b)| g.edge_by_labels(a, b).unwrap()))
    }

    #[test]
    fn build_graph_examples() {
        let g = k23();
        assert!(g.is_connected());
        assert_eq!(g.edge_count(), 6);
        let p = path();
        assert!(p.is_connected());
        assert_eq!(p.edge_count(), 2);
        let dup = BipartiteGraph::new(&["e0"], &["v0"], &[("e0", "v0"), ("e0", "v0")]);
        assert_eq!(dup, Err(Error::DuplicateEdge("e0".into(), "v0".into())));
    }

    #[test]
    fn build_graph_errors() {
        let empty: [&str; 0] = [];
        assert_eq!(
            BipartiteGraph::new(&empty, &["v0"], &[]),
            Err(Error::EmptyClass("emerald"))
        );
        assert_eq!(
            BipartiteGraph::new(&["e0"], &["v0"], &[("e0", "v9")]),
            Err(Error::UnknownLabel("v9".into()))
        );
        assert_eq!(
            BipartiteGraph::new(&["e0", "e0"], &["v0"], &[]),
            Err(Error::DuplicateLabel("e0".into()))
        );
        let disconnected = BipartiteGraph::from_indices(2, 2, &[(0, 0), (1, 1)]).unwrap();
        assert!(!disconnected.is_connected());
        assert_eq!(
            disconnected.enumerate_spanning_trees(),
            Err(Error::Disconnected)
        );
        assert_eq!(disconnected.first_betti(), Err(Error::Disconnected));
    }

    #[test]
    fn spanning_tree_counts() {
        assert_eq!(k23().enumerate_spanning_trees().unwrap().len(), 12);
        assert_eq!(
            BipartiteGraph::complete(2, 2)
                .enumerate_spanning_trees()
                .unwrap()
                .len(),
            4
        );
        let p = path();
        assert_eq!(
            p.enumerate_spanning_trees().unwrap(),
            vec![SpanningTree(p.all_edges())]
        );
    }

    #[test]
    fn spanning_trees_are_lexicographically_sorted() {
        let trees = BipartiteGraph::complete(3, 3)
            .enumerate_spanning_trees()
            .unwrap();
        assert!(trees.windows(2).all(|w| w[0].0.lex_cmp(w[1].0).is_lt()));
    }

    #[test]
    fn betti_and_four_cycles() {
        assert_eq!(k23().first_betti().unwrap(), 2);
        assert_eq!(BipartiteGraph::complete(2, 2).first_betti().unwrap(), 1);
        assert_eq!(path().first_betti().unwrap(), 0);
        assert_eq!(k23().count_four_cycles(), 3);
        assert_eq!(BipartiteGraph::complete(2, 2).count_four_cycles(), 1);
        assert_eq!(path().count_four_cycles(), 0);
        assert_eq!(BipartiteGraph::complete(3, 3).count_four_cycles(), 9);
    }

    #[test]
    fn directed_cuts_of_small_graphs() {
        let cuts = k23().minimal_directed_cuts().unwrap();
        assert_eq!(cuts.len(), 5);
        assert!(cuts.iter().all(DirectedCut::is_star));

        let cuts = BipartiteGraph::complete(2, 2)
            .minimal_directed_cuts()
            .unwrap();
        assert_eq!(cuts.len(), 4);
        assert!(cuts.iter().all(DirectedCut::is_star));

        // The star-cut at the middle vertex of a path is not minimal.
        let p = path();
        let cuts = p.minimal_directed_cuts().unwrap();
        assert_eq!(cuts.len(), 2);
        assert!(cuts.iter().all(|c| c.cut.len() == 1));
    }

    #[test]
    fn directed_cut_cap() {
        let g = BipartiteGraph::complete(3, 3);
        assert!(matches!(
            g.minimal_directed_cuts_capped(5),
            Err(Error::CapExceeded {
                limit: 5,
                actual: 6,
                ..
            })
        ));
    }

    #[test]
    fn cut_functional_is_two_on_cut_edges_and_zero_elsewhere() {
        let g = BipartiteGraph::from_indices(
            3,
            3,
            &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0), (0, 2)],
        )
        .unwrap();
        for cut in g.minimal_directed_cuts().unwrap() {
            for i in 0..g.edge_count() {
                let (e, v) = g.edge_vertices(i);
                let value = cut.sign(e) + cut.sign(v);
                assert_eq!(value, if cut.cut.contains(i) { 2 } else { 0 });
            }
        }
    }

    #[test]
    fn alternating_cycles_in_the_square() {
        let g = BipartiteGraph::complete(2, 2);
        let t = |p: &[(&str, &str)]| tree(&g, p);
        let a = t(&[("e0", "v0"), ("e0", "v1"), ("e1", "v0")]);
        let b = t(&[("e0", "v0"), ("e1", "v0"), ("e1", "v1")]);
        let c = t(&[("e0", "v0"), ("e0", "v1"), ("e1", "v1")]);
        let d = t(&[("e0", "v1"), ("e1", "v0"), ("e1", "v1")]);
        assert!(!alternating_cycle_exists(&g, a, a));
        assert!(alternating_cycle_exists(&g, a, b));
        // a and c use crossing diagonals of the square.
        assert!(alternating_cycle_exists(&g, a, c));
        // a and d share the diagonal e0v1–e1v0.
        assert!(!alternating_cycle_exists(&g, a, d));
        assert!(!alternating_cycle_exists(&g, b, c));
    }

    #[test]
    fn incidence_graphs() {
        let triangle = OrdinaryGraph::from_indices(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let b = triangle.incidence_bipartite().unwrap();
        assert_eq!(
            (b.class_size(Side::Emerald), b.class_size(Side::Violet)),
            (3, 3)
        );
        assert_eq!(b.edge_count(), 6);
        assert_eq!(b.first_betti().unwrap(), 1);

        let single = OrdinaryGraph::from_indices(2, &[(0, 1)]).unwrap();
        let b = single.incidence_bipartite().unwrap();
        assert_eq!(b.edge_count(), 2);
        assert_eq!(b.class_size(Side::Violet), 1);

        let parallel = OrdinaryGraph::from_indices(2, &[(0, 1), (0, 1)]).unwrap();
        let b = parallel.incidence_bipartite().unwrap();
        assert_eq!(b.edge_count(), 4);
        assert_eq!(b.count_four_cycles(), 1);
    }

    #[test]
    fn ordinary_graph_errors() {
        assert_eq!(
            OrdinaryGraph::from_indices(2, &[(0, 0)]),
            Err(Error::Loop("0".into()))
        );
        let g = OrdinaryGraph::from_indices(3, &[(0, 1)]).unwrap();
        assert_eq!(g.tutte_x1_oracle(&[0]), Err(Error::Disconnected));
        assert!(matches!(
            OrdinaryGraph::from_indices(2, &[(0, 1)])
                .unwrap()
                .tutte_x1_oracle(&[0, 0]),
            Err(Error::InvalidOrder(_))
        ));
    }

    #[test]
    fn tutte_oracle_examples() {
        let triangle = OrdinaryGraph::from_indices(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(
            triangle.tutte_x1_oracle(&[0, 1, 2]).unwrap(),
            IntPolynomial::from_i64s(&[1, 1, 1])
        );
        let single = OrdinaryGraph::from_indices(2, &[(0, 1)]).unwrap();
        assert_eq!(
            single.tutte_x1_oracle(&[0]).unwrap(),
            IntPolynomial::from_i64s(&[0, 1])
        );
        let parallel = OrdinaryGraph::from_indices(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(
            parallel.tutte_x1_oracle(&[1, 0]).unwrap(),
            IntPolynomial::from_i64s(&[1, 1])
        );
    }

    #[test]
    fn subsets_iterates_all() {
        let s = EdgeSet::from_edges([1, 3, 4]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|x| x.is_subset(s)));
    }

    #[test]
    fn forest_paths() {
        let g = k23();
        let t = tree(
            &g,
            &[("e0", "v0"), ("e0", "v1"), ("e1", "v0"), ("e2", "v1")],
        );
        let from = g.vertex(Side::Emerald, 1);
        let to = g.vertex(Side::Emerald, 2);
        let p = g.forest_path(t, from, to).unwrap();
        let labels: Vec<_> = p.iter().map(|&i| g.edge_labels(i)).collect();
        assert_eq!(
            labels,
            vec![("e1", "v0"), ("e0", "v0"), ("e0", "v1"), ("e2", "v1")]
        );
    }
}
