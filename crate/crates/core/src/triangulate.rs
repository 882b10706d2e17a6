//! Triangulations of `Q_G` as families of pairwise compatible spanning
//! trees, their face numbers, markers, the σ-map onto interior faces, and
//! shellings.
//!
//! Every face of a triangulation is a forest of `G` (the simplex spanned by
//! the vertices `1_e + 1_v` of its edges), so all geometry here is done on
//! edge sets.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::activity::{inactive_set, HyperedgeOrder};
use crate::bigraph::{compatible, BipartiteGraph, DirectedCut, Dsu, EdgeSet, Side, SpanningTree};
use crate::error::{Error, Result};
use crate::hypertree::{Hypergraph, Hypertree};
use crate::scalar::Field;
use crate::IntPolynomial;

/// Step budget of the backtracking builder.
pub const DEFAULT_SEARCH_LIMIT: u64 = 2_000_000;
/// Largest triangulation searched exhaustively for a shelling.
pub const EXHAUSTIVE_SHELLING_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Facet-by-facet depth-first search from a random tree; candidate
    /// order is drawn from `seed`.
    Backtrack { seed: u64 },
    /// Monotone staircases of a complete bipartite graph.
    Staircase,
}

impl Strategy {
    pub fn seed(self) -> Option<u64> {
        match self {
            Strategy::Backtrack { seed } => Some(seed),
            Strategy::Staircase => None,
        }
    }
}

/// A triangulation of `Q_G`.
#[derive(Clone, Debug)]
pub struct Triangulation<'g> {
    graph: &'g BipartiteGraph,
    members: Vec<SpanningTree>,
    cuts: Vec<DirectedCut>,
    strategy: Option<Strategy>,
}

/// Face numbers of a triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceVector {
    /// `f[l]`: faces of dimension `l` (forests with `l + 1` edges), `l = 0..=d`.
    pub f: Vec<u64>,
    /// `f_interior[l]`: interior faces of dimension `l`; `f_interior[0] = 0`.
    pub f_interior: Vec<u64>,
    /// `h(x) = f(x − 1)`.
    pub h: IntPolynomial,
}

impl FaceVector {
    pub fn dimension(&self) -> usize {
        self.f.len() - 1
    }

    /// `f(y) = y^{d+1} + Σ_l f_l y^{d−l}`.
    pub fn f_polynomial(&self) -> IntPolynomial {
        let d = self.dimension();
        let mut coeffs = vec![BigInt::from(0); d + 2];
        coeffs[d + 1] = BigInt::from(1);
        for (l, &x) in self.f.iter().enumerate() {
            coeffs[d - l] = BigInt::from(x);
        }
        IntPolynomial::new(coeffs)
    }

    /// `x^{d+1} h(1/x)`.
    pub fn reversed_h(&self) -> IntPolynomial {
        self.h.reversed(self.dimension() + 1)
    }
}

/// A shelling order with the number of facets along which each member is
/// attached to its predecessors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shelling {
    pub order: Vec<usize>,
    pub c: Vec<usize>,
}

impl Shelling {
    /// `Σ_i x^{d+1−c_i}`.
    pub fn h_polynomial(&self, d: usize) -> IntPolynomial {
        let mut coeffs = vec![BigInt::from(0); d + 2];
        for &c in &self.c {
            coeffs[d + 1 - c] += 1;
        }
        IntPolynomial::new(coeffs)
    }
}

/// Outcome of checking the σ-map in one codimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaCheck {
    pub k: usize,
    /// Pairs `(f, S)` with `|S| = k` and every element of `S` inactive.
    pub pairs: usize,
    /// Interior faces of codimension `k`.
    pub interior_faces: usize,
    pub injective: bool,
    /// Every image is an interior face of the right size, and every such
    /// face is hit.
    pub onto: bool,
}

impl SigmaCheck {
    pub fn passed(&self) -> bool {
        self.injective && self.onto && self.pairs == self.interior_faces
    }
}

pub fn build_triangulation(g: &BipartiteGraph, strategy: Strategy) -> Result<Triangulation<'_>> {
    build_triangulation_with_limit(g, strategy, DEFAULT_SEARCH_LIMIT)
}

pub fn build_triangulation_with_limit(
    g: &BipartiteGraph,
    strategy: Strategy,
    limit: u64,
) -> Result<Triangulation<'_>> {
    g.require_connected()?;
    let cuts = g.minimal_directed_cuts()?;
    let members = match strategy {
        Strategy::Staircase => staircase_members(g)?,
        Strategy::Backtrack { seed } => {
            let target = Hypergraph::new(g, Side::Emerald)?
                .enumerate_hypertrees()?
                .len();
            backtrack_members(g, &cuts, target, seed, limit)?
        }
    };
    Ok(Triangulation {
        graph: g,
        members,
        cuts,
        strategy: Some(strategy),
    })
}

fn staircase_members(g: &BipartiteGraph) -> Result<Vec<SpanningTree>> {
    if !g.is_complete() {
        return Err(Error::NotComplete);
    }
    let (a, b) = (g.class_size(Side::Emerald), g.class_size(Side::Violet));
    let mut out = Vec::new();
    let mut path = EdgeSet::singleton(g.edge_index(0, 0).expect("complete"));
    staircase_rec(g, 0, 0, a, b, &mut path, &mut out);
    Ok(out)
}

fn staircase_rec(
    g: &BipartiteGraph,
    i: usize,
    j: usize,
    a: usize,
    b: usize,
    path: &mut EdgeSet,
    out: &mut Vec<SpanningTree>,
) {
    if i + 1 == a && j + 1 == b {
        out.push(SpanningTree(*path));
        return;
    }
    for (ni, nj) in [(i + 1, j), (i, j + 1)] {
        if ni < a && nj < b {
            let e = g.edge_index(ni, nj).expect("complete");
            let saved = *path;
            *path = path.with(e);
            staircase_rec(g, ni, nj, a, b, path, out);
            *path = saved;
        }
    }
}

fn is_interior(cuts: &[DirectedCut], face: EdgeSet) -> bool {
    cuts.iter().all(|c| c.cut.meets(face))
}

fn random_spanning_tree(g: &BipartiteGraph, rng: &mut ChaCha8Rng) -> EdgeSet {
    let mut edges: Vec<usize> = (0..g.edge_count()).collect();
    edges.shuffle(rng);
    let mut dsu = Dsu::new(g.vertex_count());
    let mut tree = EdgeSet::EMPTY;
    for i in edges {
        let (a, b) = g.edge_vertices(i);
        if dsu.union(a, b) {
            tree = tree.with(i);
        }
    }
    tree
}

struct Builder<'a> {
    g: &'a BipartiteGraph,
    cuts: &'a [DirectedCut],
    target: usize,
    rng: ChaCha8Rng,
    members: Vec<EdgeSet>,
    member_set: HashSet<EdgeSet>,
    facets: HashMap<EdgeSet, u32>,
    open: BTreeSet<EdgeSet>,
    steps: u64,
    limit: u64,
}

impl Builder<'_> {
    fn add(&mut self, t: EdgeSet) {
        self.members.push(t);
        self.member_set.insert(t);
        for e in t.iter() {
            let facet = t.without(e);
            let count = self.facets.entry(facet).or_insert(0);
            *count += 1;
            if is_interior(self.cuts, facet) {
                if *count == 1 {
                    self.open.insert(facet);
                } else {
                    self.open.remove(&facet);
                }
            }
        }
    }

    fn remove(&mut self, t: EdgeSet) {
        self.members.pop();
        self.member_set.remove(&t);
        for e in t.iter() {
            let facet = t.without(e);
            let count = self.facets.get_mut(&facet).expect("facet was counted");
            *count -= 1;
            let left = *count;
            if left == 0 {
                self.facets.remove(&facet);
            }
            if is_interior(self.cuts, facet) {
                if left == 1 {
                    self.open.insert(facet);
                } else {
                    self.open.remove(&facet);
                }
            }
        }
    }

    fn search(&mut self) -> bool {
        self.steps += 1;
        if self.steps > self.limit {
            return false;
        }
        let Some(&facet) = self.open.iter().next() else {
            return self.members.len() == self.target;
        };
        if self.members.len() >= self.target {
            return false;
        }
        let comps = self.g.components(facet);
        let mut candidates: Vec<EdgeSet> = (0..self.g.edge_count())
            .filter(|&i| {
                let (a, b) = self.g.edge_vertices(i);
                comps[a] != comps[b]
            })
            .map(|i| facet.with(i))
            .filter(|t| {
                !self.member_set.contains(t)
                    && self
                        .members
                        .iter()
                        .all(|&m| compatible(self.g, SpanningTree(m), SpanningTree(*t)))
            })
            .collect();
        candidates.shuffle(&mut self.rng);
        for t in candidates {
            self.add(t);
            if self.search() {
                return true;
            }
            self.remove(t);
        }
        false
    }
}

fn backtrack_members(
    g: &BipartiteGraph,
    cuts: &[DirectedCut],
    target: usize,
    seed: u64,
    limit: u64,
) -> Result<Vec<SpanningTree>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = random_spanning_tree(g, &mut rng);
    let mut b = Builder {
        g,
        cuts,
        target,
        rng,
        members: Vec::new(),
        member_set: HashSet::new(),
        facets: HashMap::new(),
        open: BTreeSet::new(),
        steps: 0,
        limit,
    };
    b.add(start);
    if b.search() {
        Ok(b.members.into_iter().map(SpanningTree).collect())
    } else {
        Err(Error::SearchExhausted(b.steps))
    }
}

impl<'g> Triangulation<'g> {
    /// Validates a proposed member list: spanning trees, pairwise
    /// compatible, exactly `|B_H|` of them.
    pub fn from_members(graph: &'g BipartiteGraph, members: Vec<SpanningTree>) -> Result<Self> {
        graph.require_connected()?;
        for m in &members {
            if !graph.is_spanning_tree(m.edges()) {
                return Err(Error::InvalidTriangulation(format!(
                    "{:?} is not a spanning tree",
                    m.edges()
                )));
            }
        }
        for (i, a) in members.iter().enumerate() {
            for b in &members[..i] {
                if a == b || !compatible(graph, *a, *b) {
                    return Err(Error::InvalidTriangulation(format!(
                        "{:?} and {:?} are not compatible",
                        a.edges(),
                        b.edges()
                    )));
                }
            }
        }
        let target = Hypergraph::new(graph, Side::Emerald)?
            .enumerate_hypertrees()?
            .len();
        if members.len() != target {
            return Err(Error::InvalidTriangulation(format!(
                "{} members, but a triangulation has {target}",
                members.len()
            )));
        }
        Ok(Triangulation {
            graph,
            members,
            cuts: graph.minimal_directed_cuts()?,
            strategy: None,
        })
    }

    pub fn graph(&self) -> &'g BipartiteGraph {
        self.graph
    }

    pub fn members(&self) -> &[SpanningTree] {
        &self.members
    }

    pub fn strategy(&self) -> Option<Strategy> {
        self.strategy
    }

    pub fn seed(&self) -> Option<u64> {
        self.strategy.and_then(Strategy::seed)
    }

    pub fn dimension(&self) -> usize {
        self.graph.dimension()
    }

    /// Members as sorted edge lists, for comparing triangulations.
    pub fn canonical(&self) -> Vec<EdgeSet> {
        let mut v: Vec<EdgeSet> = self.members.iter().map(|m| m.edges()).collect();
        v.sort();
        v
    }

    pub fn is_interior_face(&self, face: EdgeSet) -> bool {
        is_interior(&self.cuts, face)
    }

    /// Every nonempty face (subforest of some member).
    pub fn faces(&self) -> HashSet<EdgeSet> {
        let mut out = HashSet::new();
        for m in &self.members {
            for sub in m.edges().subsets() {
                if !sub.is_empty() {
                    out.insert(sub);
                }
            }
        }
        out
    }

    pub fn face_vectors(&self) -> FaceVector {
        let d = self.dimension();
        let mut f = vec![0u64; d + 1];
        let mut f_interior = vec![0u64; d + 1];
        for face in self.faces() {
            let l = face.len() - 1;
            f[l] += 1;
            if self.is_interior_face(face) {
                f_interior[l] += 1;
            }
        }
        let fv = FaceVector {
            f,
            f_interior,
            h: IntPolynomial::zero(),
        };
        let h = fv.f_polynomial().shifted(&BigInt::from(-1));
        FaceVector { h, ..fv }
    }

    /// Emerald and violet hypertree of every member, in member order.
    pub fn marker_hypertrees(&self) -> Result<Vec<(Hypertree, Hypertree)>> {
        let he = Hypergraph::new(self.graph, Side::Emerald)?;
        let hv = Hypergraph::new(self.graph, Side::Violet)?;
        let pairs: Vec<(Hypertree, Hypertree)> = self
            .members
            .iter()
            .map(|&m| (he.induced(m), hv.induced(m)))
            .collect();
        let emerald: HashSet<&Hypertree> = pairs.iter().map(|p| &p.0).collect();
        let violet: HashSet<&Hypertree> = pairs.iter().map(|p| &p.1).collect();
        if emerald.len() != pairs.len() || violet.len() != pairs.len() {
            return Err(Error::InvalidTriangulation(
                "two members induce the same hypertree".into(),
            ));
        }
        Ok(pairs)
    }

    /// The member inducing the emerald hypertree `f`.
    pub fn member_for(&self, he: &Hypergraph<'_>, f: &Hypertree) -> Option<SpanningTree> {
        self.members.iter().copied().find(|&m| he.induced(m) == *f)
    }

    /// The unique member containing `face` in which every edge outside
    /// `face` has its violet endpoint on the side towards `component`
    /// (a set of unified vertices forming one component of `face`).
    pub fn arborescence_tree(&self, face: EdgeSet, component: &[usize]) -> Result<SpanningTree> {
        let root = *component
            .first()
            .ok_or_else(|| Error::Precondition("empty component".into()))?;
        let found: Vec<SpanningTree> = self
            .members
            .iter()
            .copied()
            .filter(|m| face.is_subset(m.edges()) && self.violet_faces_root(*m, face, root))
            .collect();
        match found.as_slice() {
            [one] => Ok(*one),
            [] => Err(Error::Precondition(
                "no member qualifies; the face is not interior".into(),
            )),
            _ => Err(Error::InvalidTriangulation(
                "several members qualify".into(),
            )),
        }
    }

    fn violet_faces_root(&self, tree: SpanningTree, face: EdgeSet, root: usize) -> bool {
        let g = self.graph;
        let parent = rooted_parents(g, tree.edges(), root);
        tree.edges().difference(face).iter().all(|i| {
            let (e, v) = g.edge_vertices(i);
            // The endpoint nearer the root is the parent of the other.
            parent[e] == Some(v)
        })
    }

    /// `Γ_f` minus, for each `e ∈ S`, the first edge of the `Γ_f`-path from
    /// `e` to its favorite.
    pub fn sigma_map(&self, order: &HyperedgeOrder, f: &Hypertree, s: u64) -> Result<EdgeSet> {
        let he = Hypergraph::new(self.graph, Side::Emerald)?;
        self.sigma_with(&he, order, f, s)
    }

    fn sigma_with(
        &self,
        he: &Hypergraph<'_>,
        order: &HyperedgeOrder,
        f: &Hypertree,
        s: u64,
    ) -> Result<EdgeSet> {
        let inactive = inactive_set(he, order, f);
        if let Some(e) = (0..he.size()).find(|&e| s >> e & 1 == 1 && inactive >> e & 1 == 0) {
            return Err(Error::ActiveHyperedge(he.labels()[e].clone()));
        }
        let tree = self
            .member_for(he, f)
            .ok_or_else(|| Error::InvalidTriangulation(format!("no member induces {f:?}")))?;
        let g = self.graph;
        let mut face = tree.edges();
        for e in (0..he.size()).filter(|&e| s >> e & 1 == 1) {
            let fav = he.favorite(order, f, e);
            let path = g
                .forest_path(
                    tree.edges(),
                    g.vertex(Side::Emerald, e),
                    g.vertex(Side::Emerald, fav),
                )
                .expect("spanning tree connects all vertices");
            face = face.without(path[0]);
        }
        Ok(face)
    }

    /// Checks that σ maps the pairs `(f, S)` with `|S| = k` bijectively onto
    /// the interior faces of codimension `k`.
    pub fn verify_sigma_bijection(&self, order: &HyperedgeOrder, k: usize) -> Result<SigmaCheck> {
        let he = Hypergraph::new(self.graph, Side::Emerald)?;
        let target_size = self.dimension() + 1 - k.min(self.dimension() + 1);
        let interior: HashSet<EdgeSet> = if k > self.dimension() {
            HashSet::new()
        } else {
            self.faces()
                .into_iter()
                .filter(|face| face.len() == target_size && self.is_interior_face(*face))
                .collect()
        };
        let mut images = HashSet::new();
        let mut pairs = 0;
        let mut injective = true;
        let mut onto = true;
        for f in &he.enumerate_hypertrees()? {
            let inactive = EdgeSet(inactive_set(&he, order, f));
            for s in inactive.subsets().filter(|s| s.len() == k) {
                pairs += 1;
                let face = self.sigma_with(&he, order, f, s.0)?;
                onto &= interior.contains(&face);
                injective &= images.insert(face);
            }
        }
        onto &= images.len() == interior.len();
        Ok(SigmaCheck {
            k,
            pairs,
            interior_faces: interior.len(),
            injective,
            onto,
        })
    }

    /// A shelling order, if one is found. Exhaustive for small
    /// triangulations, greedy otherwise.
    pub fn find_shelling(&self) -> Option<Shelling> {
        let n = self.members.len();
        let d = self.dimension();
        let mut order = Vec::with_capacity(n);
        let mut c = Vec::with_capacity(n);
        let mut used = vec![false; n];
        let exhaustive = n <= EXHAUSTIVE_SHELLING_CAP;
        for first in 0..n {
            order.push(first);
            c.push(0);
            used[first] = true;
            if self.extend_shelling(d, exhaustive, &mut order, &mut c, &mut used) {
                return Some(Shelling { order, c });
            }
            used[first] = false;
            order.pop();
            c.pop();
            if !exhaustive {
                break;
            }
        }
        None
    }

    fn extend_shelling(
        &self,
        d: usize,
        exhaustive: bool,
        order: &mut Vec<usize>,
        c: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        if order.len() == self.members.len() {
            return true;
        }
        for next in 0..self.members.len() {
            if used[next] {
                continue;
            }
            let Some(ci) = self.attachment(d, order, next) else {
                continue;
            };
            order.push(next);
            c.push(ci);
            used[next] = true;
            if self.extend_shelling(d, exhaustive, order, c, used) {
                return true;
            }
            used[next] = false;
            order.pop();
            c.pop();
            if !exhaustive {
                return false;
            }
        }
        false
    }

    /// Number of facets along which `next` meets the earlier members, if that
    /// intersection is a nonempty union of facets.
    fn attachment(&self, d: usize, earlier: &[usize], next: usize) -> Option<usize> {
        let t = self.members[next].edges();
        let meets: Vec<EdgeSet> = earlier
            .iter()
            .map(|&j| t.intersection(self.members[j].edges()))
            .filter(|x| !x.is_empty())
            .collect();
        let facets: HashSet<EdgeSet> = meets.iter().copied().filter(|x| x.len() == d).collect();
        let pure = meets
            .iter()
            .all(|x| facets.iter().any(|fct| x.is_subset(*fct)));
        (pure && !facets.is_empty()).then_some(facets.len())
    }
}

/// Parent of every unified vertex when `tree` is rooted at `root`.
fn rooted_parents(g: &BipartiteGraph, tree: EdgeSet, root: usize) -> Vec<Option<usize>> {
    let n = g.vertex_count();
    let mut adjacency = vec![Vec::new(); n];
    for i in tree.iter() {
        let (a, b) = g.edge_vertices(i);
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut stack = vec![root];
    while let Some(x) = stack.pop() {
        for &y in &adjacency[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some(x);
                stack.push(y);
            }
        }
    }
    parent
}

/// Barycentric weights of the emerald marker inside the simplex of `tree`:
/// the edge `ev` gets the number of emerald vertices reached from `v`
/// through `ev`, divided by `|E|`. Returned in edge order.
pub fn marker_weights<F: Field>(g: &BipartiteGraph, tree: SpanningTree) -> Vec<(usize, F)> {
    let total = g.class_size(Side::Emerald) as i64;
    tree.edges()
        .iter()
        .map(|i| {
            let (e, _) = g.edge_vertices(i);
            let comps = g.components(tree.edges().without(i));
            let reached = (0..g.class_size(Side::Emerald))
                .filter(|&x| comps[x] == comps[e])
                .count() as i64;
            (i, F::ratio(reached, total))
        })
        .collect()
}
