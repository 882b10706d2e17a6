//! Verification checks that compare independently computed invariants, and
//! the graph corpus they run on.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::activity::{
    cone_fiber, exterior_polynomial, inactive_set, interior_polynomial,
    interior_polynomial_via_mink, minkowski_lattice_counts, partition_class_in,
    polynomial_from_mink_counts, vertex_activity_tutte, Direction, HyperedgeOrder,
};
use crate::bigraph::{BipartiteGraph, OrdinaryGraph, Side};
use crate::error::Result;
use crate::hypertree::{Hypergraph, SubmodularOracle};
use crate::rootpolytope::RootPolytope;
use crate::scalar::binomial;
use crate::triangulate::{build_triangulation, Strategy};
use crate::IntPolynomial;

const XI: &str = "ξ";

/// One named value entering a comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub name: String,
    pub value: String,
}

/// The outcome of one check on one input.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub graph: String,
    pub passed: bool,
    pub witnesses: Vec<Witness>,
    pub seed: Option<u64>,
    pub runtime_ms: f64,
}

impl VerificationReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} [{}]",
            if self.passed { "PASS" } else { "FAIL" },
            self.check,
            self.graph
        )?;
        if let Some(seed) = self.seed {
            write!(f, " seed={seed}")?;
        }
        for w in &self.witnesses {
            write!(f, " | {}: {}", w.name, w.value)?;
        }
        Ok(())
    }
}

struct Check {
    name: &'static str,
    graph: String,
    seed: Option<u64>,
    start: Instant,
    witnesses: Vec<Witness>,
}

impl Check {
    fn new(name: &'static str, graph: &str, seed: Option<u64>) -> Self {
        Check {
            name,
            graph: graph.to_string(),
            seed,
            start: Instant::now(),
            witnesses: Vec::new(),
        }
    }

    fn witness(&mut self, name: impl Into<String>, value: impl fmt::Display) {
        self.witnesses.push(Witness {
            name: name.into(),
            value: value.to_string(),
        });
    }

    fn poly(&mut self, name: impl Into<String>, p: &IntPolynomial) {
        self.witness(name, p.display_in(XI));
    }

    fn finish(self, passed: bool) -> VerificationReport {
        VerificationReport {
            check: self.name.to_string(),
            graph: self.graph,
            passed,
            witnesses: self.witnesses,
            seed: self.seed,
            runtime_ms: self.start.elapsed().as_secs_f64() * 1e3,
        }
    }
}

fn all_equal<T: PartialEq>(items: &[T]) -> bool {
    items.windows(2).all(|w| w[0] == w[1])
}

/// Interior polynomial of both hypergraphs, Ehrhart coefficients of `Q_G`,
/// and the reversed h-vector of a triangulation all coincide.
pub fn verify_main_theorem(
    name: &str,
    g: &BipartiteGraph,
    seed: u64,
) -> Result<VerificationReport> {
    let mut c = Check::new("main-theorem", name, Some(seed));
    let he = Hypergraph::new(g, Side::Emerald)?;
    let hv = Hypergraph::new(g, Side::Violet)?;
    let ie = interior_polynomial(&he, &HyperedgeOrder::identity(he.size()))?;
    let iv = interior_polynomial(&hv, &HyperedgeOrder::identity(hv.size()))?;
    let ehrhart = IntPolynomial::new(RootPolytope::new(g)?.ehrhart_coefficients()?.a);
    let reversed_h = build_triangulation(g, Strategy::Backtrack { seed })?
        .face_vectors()
        .reversed_h();
    c.poly("interior(emerald)", &ie);
    c.poly("interior(violet)", &iv);
    c.poly("ehrhart", &ehrhart);
    c.poly("reversed-h", &reversed_h);
    Ok(c.finish(all_equal(&[ie, iv, ehrhart, reversed_h])))
}

/// Interior polynomials of a hypergraph and its transpose agree, computed
/// from activities under random orders.
pub fn verify_duality(name: &str, g: &BipartiteGraph, seed: u64) -> Result<VerificationReport> {
    let mut c = Check::new("duality", name, Some(seed));
    let he = Hypergraph::new(g, Side::Emerald)?;
    let hv = Hypergraph::new(g, Side::Violet)?;
    let ie = interior_polynomial(&he, &HyperedgeOrder::random(he.size(), seed))?;
    let iv = interior_polynomial(
        &hv,
        &HyperedgeOrder::random(hv.size(), seed.wrapping_add(1)),
    )?;
    c.poly("interior(emerald)", &ie);
    c.poly("interior(violet)", &iv);
    Ok(c.finish(ie == iv))
}

/// Both binomial forms of Saalschütz's identity for `0 ≤ s, q ≤ s_max`, and
/// the interior polynomial of `K_{m+1,n+1}` against `C(m,k)C(n,k)`.
pub fn verify_saalschutz(m: usize, n: usize, s_max: usize) -> Result<VerificationReport> {
    let mut c = Check::new("saalschutz", &format!("K{},{}", m + 1, n + 1), None);
    let (mi, ni) = (m as i64, n as i64);
    let kmax = mi.min(ni);
    let mut first_bad: Option<String> = None;
    for s in 0..=s_max as i64 {
        let lhs = binomial(s + mi, mi) * binomial(s + ni, ni);
        let rhs: BigInt = (0..=kmax)
            .map(|k| binomial(mi, k) * binomial(ni, k) * binomial(s + mi + ni - k, mi + ni))
            .sum();
        if lhs != rhs && first_bad.is_none() {
            first_bad = Some(format!("first form at s={s}: {lhs} vs {rhs}"));
        }
        let q = s;
        let lhs = binomial(q, mi) * binomial(q, ni);
        let rhs: BigInt = (0..=kmax)
            .map(|k| binomial(mi, k) * binomial(ni, k) * binomial(q + k, mi + ni))
            .sum();
        if lhs != rhs && first_bad.is_none() {
            first_bad = Some(format!("second form at q={q}: {lhs} vs {rhs}"));
        }
    }
    c.witness(
        "identities",
        first_bad.as_deref().unwrap_or("exact for all s, q"),
    );
    let g = BipartiteGraph::complete(m + 1, n + 1);
    let h = Hypergraph::new(&g, Side::Emerald)?;
    let computed = interior_polynomial(&h, &HyperedgeOrder::identity(h.size()))?;
    let expected = IntPolynomial::new(
        (0..=kmax)
            .map(|k| binomial(mi, k) * binomial(ni, k))
            .collect(),
    );
    c.poly("interior", &computed);
    c.poly("C(m,k)C(n,k)", &expected);
    Ok(c.finish(first_bad.is_none() && computed == expected))
}

/// The quadratic coefficient of the interior polynomial equals
/// `C(b₁+1, 2) − N` with `N` the number of 4-cycles.
pub fn verify_a2(name: &str, g: &BipartiteGraph) -> Result<VerificationReport> {
    let mut c = Check::new("a2", name, None);
    let h = Hypergraph::new(g, Side::Emerald)?;
    let i = interior_polynomial(&h, &HyperedgeOrder::identity(h.size()))?;
    let b1 = g.first_betti()? as i64;
    let n = g.count_four_cycles();
    let expected = binomial(b1 + 1, 2) - BigInt::from(n);
    c.witness("a2", i.coeff(2));
    c.witness(
        "C(b1+1,2)-N",
        format!("C({},2)-{} = {}", b1 + 1, n, expected),
    );
    Ok(c.finish(i.coeff(2) == expected))
}

/// Vertex-activity `T(x,1)` against classical edge activities, and the
/// number of hypertrees against the number of spanning trees.
pub fn verify_reliability(name: &str, g: &OrdinaryGraph, seed: u64) -> Result<VerificationReport> {
    let mut c = Check::new("reliability", name, Some(seed));
    let vertex_order = HyperedgeOrder::random(g.vertices().len(), seed);
    let edge_order: Vec<usize> = (0..g.edges().len()).collect();
    let by_vertices = vertex_activity_tutte(g, vertex_order.as_slice())?;
    let by_edges = g.tutte_x1_oracle(&edge_order)?;
    let b = g.incidence_bipartite()?;
    let hypertrees = Hypergraph::new(&b, Side::Emerald)?
        .enumerate_hypertrees()?
        .len();
    let trees = g.spanning_trees()?.len();
    c.witness("vertex-activity", by_vertices.display_in("x"));
    c.witness("edge-activity", by_edges.display_in("x"));
    c.witness("hypertrees", hypertrees);
    c.witness("spanning-trees", trees);
    Ok(c.finish(by_vertices == by_edges && hypertrees == trees))
}

/// For the hypergraph whose hyperedges are the edges of `g`:
/// `I(ξ) = ξ^{|V|−1} T(1/ξ, 1)`.
pub fn verify_graph_specialization(
    name: &str,
    g: &OrdinaryGraph,
    seed: u64,
) -> Result<VerificationReport> {
    let mut c = Check::new("graph-specialization", name, Some(seed));
    let b = g.incidence_bipartite()?;
    let h = Hypergraph::new(&b, Side::Violet)?;
    let i = interior_polynomial(&h, &HyperedgeOrder::random(h.size(), seed))?;
    let t = g.tutte_x1_oracle(&(0..g.edges().len()).collect::<Vec<_>>())?;
    let expected = t.reversed(g.vertices().len() - 1);
    c.poly("interior", &i);
    c.poly("reversed T(x,1)", &expected);
    Ok(c.finish(i == expected))
}

/// Activity-based interior polynomial against the `∇` counts, and the
/// exterior polynomial from the `Δ` counts: integral, nonnegative, `X(1) = |B|`.
pub fn verify_mink(name: &str, g: &BipartiteGraph) -> Result<VerificationReport> {
    let mut c = Check::new("mink", name, None);
    let mut ok = true;
    for side in [Side::Emerald, Side::Violet] {
        let h = Hypergraph::new(g, side)?;
        let count = h.enumerate_hypertrees()?.len();
        let by_activity = interior_polynomial(&h, &HyperedgeOrder::identity(h.size()))?;
        let by_counts = interior_polynomial_via_mink(&h)?;
        let x = exterior_polynomial(&h)?;
        c.poly(format!("interior({side})"), &by_activity);
        c.poly(format!("interior-from-counts({side})"), &by_counts);
        c.poly(format!("exterior({side})"), &x);
        c.witness(format!("hypertrees({side})"), count);
        ok &= by_activity == by_counts
            && x.has_nonnegative_coeffs()
            && x.coeff_sum() == BigInt::from(count);
    }
    Ok(c.finish(ok))
}

/// Base points and Minkowski counts of an arbitrary set function: both
/// basis solves must be integral and sum to the number of base points.
pub fn verify_mink_oracle(name: &str, oracle: &SubmodularOracle) -> Result<VerificationReport> {
    let mut c = Check::new("mink", name, None);
    let points = oracle.base_points()?;
    let n = oracle.size();
    c.witness("base-points", points.len());
    let mut ok = true;
    for (label, direction) in [
        ("inverted", Direction::Inverted),
        ("standard", Direction::Standard),
    ] {
        let counts = minkowski_lattice_counts(&points, n - 1, direction)?;
        c.witness(format!("counts({label})"), format!("{counts:?}"));
        match polynomial_from_mink_counts(&counts, n) {
            Ok(p) => {
                ok &= p.coeff_sum() == BigInt::from(points.len());
                c.poly(format!("polynomial({label})"), &p);
            }
            Err(e) => {
                ok = false;
                c.witness(format!("polynomial({label})"), e);
            }
        }
    }
    Ok(c.finish(ok))
}

/// Interior counts against reciprocity, and both face-number expansions
/// against the lattice-point counts, for `s = 1..=s_max`.
pub fn verify_reciprocity(
    name: &str,
    g: &BipartiteGraph,
    s_max: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let mut c = Check::new("reciprocity", name, Some(seed));
    let q = RootPolytope::new(g)?;
    let data = q.ehrhart_coefficients()?;
    let fv = build_triangulation(g, Strategy::Backtrack { seed })?.face_vectors();
    let mut interior = Vec::new();
    let mut predicted = Vec::new();
    let mut from_interior_faces = Vec::new();
    let mut from_faces = Vec::new();
    let mut epsilon = Vec::new();
    for s in 1..=s_max as i64 {
        interior.push(BigInt::from(q.interior_count(s as usize)?));
        predicted.push(data.reciprocal_value(s));
        let expand = |counts: &[u64]| -> BigInt {
            counts
                .iter()
                .enumerate()
                .map(|(l, &x)| BigInt::from(x) * binomial(s - 1, l as i64))
                .sum()
        };
        from_interior_faces.push(expand(&fv.f_interior));
        from_faces.push(expand(&fv.f));
        epsilon.push(data.value(s));
    }
    c.witness("interior-count", format!("{interior:?}"));
    c.witness("(-1)^d eps(-s)", format!("{predicted:?}"));
    c.witness("sum f~_l C(s-1,l)", format!("{from_interior_faces:?}"));
    c.witness("sum f_l C(s-1,l)", format!("{from_faces:?}"));
    c.witness("eps(s)", format!("{epsilon:?}"));
    Ok(c.finish(interior == predicted && interior == from_interior_faces && from_faces == epsilon))
}

/// The σ-map is a bijection onto interior faces in every codimension.
pub fn verify_sigma(name: &str, g: &BipartiteGraph, seed: u64) -> Result<VerificationReport> {
    let mut c = Check::new("sigma", name, Some(seed));
    let t = build_triangulation(g, Strategy::Backtrack { seed })?;
    let order = HyperedgeOrder::random(g.class_size(Side::Emerald), seed);
    let mut ok = true;
    for k in 0..=t.dimension() {
        let check = t.verify_sigma_bijection(&order, k)?;
        c.witness(
            format!("k={k}"),
            format!(
                "pairs {} / interior faces {}{}",
                check.pairs,
                check.interior_faces,
                if check.passed() {
                    ""
                } else {
                    " (not bijective)"
                }
            ),
        );
        ok &= check.passed();
    }
    Ok(c.finish(ok))
}

/// Triangulations from several seeds (and the staircase, for complete
/// graphs) share one h-vector. Reports how many distinct ones were built.
pub fn verify_h_invariance(
    name: &str,
    g: &BipartiteGraph,
    seeds: &[u64],
) -> Result<(VerificationReport, usize)> {
    let mut c = Check::new("h-invariance", name, seeds.first().copied());
    let mut triangulations = Vec::new();
    for &seed in seeds {
        triangulations.push(build_triangulation(g, Strategy::Backtrack { seed })?);
    }
    if g.is_complete() {
        triangulations.push(build_triangulation(g, Strategy::Staircase)?);
    }
    let distinct: HashSet<_> = triangulations.iter().map(|t| t.canonical()).collect();
    let hs: Vec<IntPolynomial> = triangulations.iter().map(|t| t.face_vectors().h).collect();
    let unique_h: HashSet<String> = hs.iter().map(|h| h.display_in("x")).collect();
    c.witness("triangulations", triangulations.len());
    c.witness("distinct", distinct.len());
    for h in &unique_h {
        c.witness("h", h);
    }
    Ok((c.finish(all_equal(&hs)), distinct.len()))
}

/// The interior polynomial is the same under `orders` random orders.
pub fn verify_order_independence(
    name: &str,
    g: &BipartiteGraph,
    orders: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let mut c = Check::new("order-independence", name, Some(seed));
    let mut ok = true;
    for side in [Side::Emerald, Side::Violet] {
        let h = Hypergraph::new(g, side)?;
        let polys = (0..orders as u64)
            .map(|i| {
                interior_polynomial(&h, &HyperedgeOrder::random(h.size(), seed.wrapping_add(i)))
            })
            .collect::<Result<Vec<_>>>()?;
        let distinct: HashSet<String> = polys.iter().map(|p| p.display_in(XI)).collect();
        for p in &distinct {
            c.witness(format!("interior({side})"), p);
        }
        ok &= distinct.len() == 1;
    }
    Ok(c.finish(ok))
}

/// Every point of `B_H − k∇` lies in the class of exactly one hypertree
/// `f`, and that class is `f` minus the `k`-simplex on its active hyperedges.
pub fn verify_partition(
    name: &str,
    g: &BipartiteGraph,
    k_max: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let mut c = Check::new("partition", name, Some(seed));
    let mut ok = true;
    for side in [Side::Emerald, Side::Violet] {
        let h = Hypergraph::new(g, side)?;
        let order = HyperedgeOrder::random(h.size(), seed);
        let all = h.enumerate_hypertrees()?;
        let counts = minkowski_lattice_counts(&all.to_vecs(), k_max, Direction::Inverted)?;
        for (k, &count) in counts.iter().enumerate() {
            let points: HashSet<Vec<i64>> = all
                .iter()
                .flat_map(|f| cone_fiber(f, k, h.full_mask()))
                .collect();
            let mut classes: HashMap<Vec<u32>, HashSet<Vec<i64>>> = HashMap::new();
            for u in &points {
                let f = partition_class_in(&all, &order, k, u)?;
                classes
                    .entry(f.values().to_vec())
                    .or_default()
                    .insert(u.clone());
            }
            let mut side_ok = points.len() == count;
            for f in &all {
                let active = h.full_mask() & !inactive_set(&h, &order, f);
                let expected: HashSet<Vec<i64>> = cone_fiber(f, k, active).into_iter().collect();
                side_ok &= classes.get(f.values()).cloned().unwrap_or_default() == expected;
            }
            c.witness(format!("{side} k={k}"), format!("{} points", points.len()));
            ok &= side_ok;
        }
    }
    Ok(c.finish(ok))
}

/// Expected invariants of the 12-edge plane fixture.
pub struct PlaneFixture;

impl PlaneFixture {
    pub const EMERALD: usize = 4;
    pub const VIOLET: usize = 5;
    pub const EDGES: usize = 12;
    pub const BETTI: usize = 4;
    pub const FOUR_CYCLES: usize = 3;
    pub const SPANNING_TREES: usize = 217;
    pub const HYPERTREES: usize = 16;
    pub const INTERIOR: [i64; 4] = [1, 4, 7, 4];

    /// Whether `g` has the shape this fixture is about.
    pub fn matches(g: &BipartiteGraph) -> bool {
        g.is_connected()
            && g.class_size(Side::Emerald) == Self::EMERALD
            && g.class_size(Side::Violet) == Self::VIOLET
            && g.edge_count() == Self::EDGES
            && g.first_betti().ok() == Some(Self::BETTI)
            && g.count_four_cycles() == Self::FOUR_CYCLES
    }

    /// Checks the counts and polynomial. `None` if `g` does not have the
    /// fixture's shape.
    pub fn verify(name: &str, g: &BipartiteGraph) -> Result<Option<VerificationReport>> {
        if !Self::matches(g) {
            return Ok(None);
        }
        let mut c = Check::new("plane-fixture", name, None);
        let h = Hypergraph::new(g, Side::Emerald)?;
        let i = interior_polynomial(&h, &HyperedgeOrder::identity(h.size()))?;
        let hypertrees = h.enumerate_hypertrees()?.len();
        let trees = g.enumerate_spanning_trees()?.len();
        let b1 = g.first_betti()? as i64;
        let a2 = binomial(b1 + 1, 2) - BigInt::from(g.count_four_cycles());
        c.poly("interior", &i);
        c.witness("hypertrees", hypertrees);
        c.witness("spanning-trees", trees);
        c.witness("C(b1+1,2)-N", &a2);
        let expected = IntPolynomial::from_i64s(&Self::INTERIOR);
        Ok(Some(c.finish(
            i == expected
                && hypertrees == Self::HYPERTREES
                && trees == Self::SPANNING_TREES
                && i.coeff(2) == a2,
        )))
    }
}

/// A bipartite graph with a name.
#[derive(Clone, Debug)]
pub struct NamedGraph {
    pub name: String,
    pub graph: BipartiteGraph,
}

/// An ordinary multigraph with a name.
#[derive(Clone, Debug)]
pub struct NamedOrdinary {
    pub name: String,
    pub graph: OrdinaryGraph,
}

/// Test graphs: fixtures, all small graphs, complete graphs and seeded
/// random graphs.
#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub bipartite: Vec<NamedGraph>,
    pub ordinary: Vec<NamedOrdinary>,
}

/// Default size and seed parameters of [`Corpus::standard`].
pub const SMALL_TOTAL: usize = 8;
pub const COMPLETE_MAX: usize = 4;
pub const RANDOM_BIPARTITE: usize = 50;
pub const RANDOM_TOTAL: usize = 12;
pub const ORDINARY_EDGES: usize = 6;
pub const RANDOM_ORDINARY: usize = 30;
pub const RANDOM_ORDINARY_EDGES: usize = 9;
pub const CORPUS_SEED: u64 = 2024;

impl Corpus {
    pub fn standard() -> Self {
        let mut bipartite = Self::fixtures();
        bipartite.extend(Self::small_bipartite(SMALL_TOTAL));
        bipartite.extend(Self::complete(COMPLETE_MAX));
        bipartite.extend(Self::random_bipartite(
            RANDOM_BIPARTITE,
            RANDOM_TOTAL,
            CORPUS_SEED,
        ));
        let mut ordinary = Self::small_ordinary(ORDINARY_EDGES);
        ordinary.extend(Self::random_ordinary(
            RANDOM_ORDINARY,
            RANDOM_ORDINARY_EDGES,
            CORPUS_SEED,
        ));
        Corpus {
            bipartite,
            ordinary,
        }
    }

    /// `k22`, `k23` (three emerald, two violet vertices), the path
    /// `e0–v0–e1`, and the 12-edge plane fixture.
    pub fn fixtures() -> Vec<NamedGraph> {
        let named = |name: &str, graph: BipartiteGraph| NamedGraph {
            name: name.to_string(),
            graph,
        };
        vec![
            named("k22", BipartiteGraph::complete(2, 2)),
            named("k23", BipartiteGraph::complete(3, 2)),
            named(
                "path",
                BipartiteGraph::from_indices(2, 1, &[(0, 0), (1, 0)]).expect("valid"),
            ),
            named("plane12", plane_fixture()),
        ]
    }

    /// `K_{m,n}` for `1 ≤ m ≤ n ≤ max` (`m` emerald vertices).
    pub fn complete(max: usize) -> Vec<NamedGraph> {
        (1..=max)
            .flat_map(|m| (m..=max).map(move |n| (m, n)))
            .map(|(m, n)| NamedGraph {
                name: format!("K{m},{n}"),
                graph: BipartiteGraph::complete(m, n),
            })
            .collect()
    }

    /// Every connected bipartite graph with `|E| + |V| ≤ max_total` and
    /// `|E| ≤ |V|`, up to isomorphisms that preserve the color classes.
    pub fn small_bipartite(max_total: usize) -> Vec<NamedGraph> {
        let mut out = Vec::new();
        for a in 1..=max_total / 2 {
            for b in a..=max_total - a {
                let mut seen = HashSet::new();
                let cells = a * b;
                for mask in 1u64..1 << cells {
                    let rows: Vec<u64> = (0..a).map(|i| mask >> (i * b) & ((1 << b) - 1)).collect();
                    let canon = canonical_rows(&rows, b);
                    if !seen.insert(canon.clone()) {
                        continue;
                    }
                    let edges: Vec<(usize, usize)> = (0..a)
                        .flat_map(|i| {
                            let row = canon[i];
                            (0..b)
                                .filter(move |&j| row >> j & 1 == 1)
                                .map(move |j| (i, j))
                        })
                        .collect();
                    let g = BipartiteGraph::from_indices(a, b, &edges).expect("valid");
                    if g.is_connected() {
                        out.push(NamedGraph {
                            name: format!(
                                "small{a}+{b}:{}",
                                canon
                                    .iter()
                                    .map(|r| format!("{r:x}"))
                                    .collect::<Vec<_>>()
                                    .join(".")
                            ),
                            graph: g,
                        });
                    }
                }
            }
        }
        out
    }

    /// Seeded Erdős–Rényi bipartite graphs conditioned on connectivity,
    /// with `4 ≤ |E| + |V| ≤ max_total`.
    pub fn random_bipartite(count: usize, max_total: usize, seed: u64) -> Vec<NamedGraph> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let total = rng.gen_range(4..=max_total);
            let a = rng.gen_range(2..=total / 2);
            let b = total - a;
            let p: f64 = rng.gen_range(0.3..0.8);
            loop {
                let edges: Vec<(usize, usize)> = (0..a)
                    .flat_map(|i| (0..b).map(move |j| (i, j)))
                    .filter(|_| rng.gen_bool(p))
                    .collect();
                let g = BipartiteGraph::from_indices(a, b, &edges).expect("valid");
                if g.is_connected() {
                    // Alternate which class is the larger one.
                    let g = if out.len() % 2 == 1 {
                        swap_classes(&g)
                    } else {
                        g
                    };
                    out.push(NamedGraph {
                        name: format!("random{}", out.len()),
                        graph: g,
                    });
                    break;
                }
            }
        }
        out
    }

    /// Every connected loopless multigraph with `1..=max_edges` edges, up to
    /// isomorphism.
    pub fn small_ordinary(max_edges: usize) -> Vec<NamedOrdinary> {
        let mut level: Vec<(usize, Vec<(usize, usize)>)> = vec![(2, vec![(0, 1)])];
        let mut out = Vec::new();
        for m in 1..=max_edges {
            for (n, edges) in &level {
                out.push(NamedOrdinary {
                    name: format!("multi{m}:{n}:{edges:?}"),
                    graph: OrdinaryGraph::from_indices(*n, edges).expect("valid"),
                });
            }
            if m == max_edges {
                break;
            }
            let mut next = HashSet::new();
            for (n, edges) in &level {
                let n = *n;
                for u in 0..n {
                    for v in u + 1..=n {
                        let size = if v == n { n + 1 } else { n };
                        let mut grown = edges.clone();
                        grown.push((u, v));
                        next.insert((size, canonical_multigraph(size, &grown)));
                    }
                }
            }
            let mut next: Vec<_> = next.into_iter().collect();
            next.sort();
            level = next;
        }
        out
    }

    /// Seeded random connected multigraphs with `1..=max_edges` edges.
    pub fn random_ordinary(count: usize, max_edges: usize, seed: u64) -> Vec<NamedOrdinary> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let m = rng.gen_range(1..=max_edges);
            let n = rng.gen_range(2..=(m + 1).min(7));
            let edges: Vec<(usize, usize)> = (0..m)
                .map(|_| {
                    let u = rng.gen_range(0..n);
                    let v = (u + rng.gen_range(1..n)) % n;
                    (u, v)
                })
                .collect();
            let g = OrdinaryGraph::from_indices(n, &edges).expect("valid");
            if g.is_connected() {
                out.push(NamedOrdinary {
                    name: format!("random-multi{}", out.len()),
                    graph: g,
                });
            }
        }
        out
    }

    pub fn find(&self, name: &str) -> Option<&NamedGraph> {
        self.bipartite.iter().find(|g| g.name == name)
    }
}

/// Smallest row list over all column permutations, rows sorted.
fn canonical_rows(rows: &[u64], b: usize) -> Vec<u64> {
    let mut best: Option<Vec<u64>> = None;
    let mut perm: Vec<usize> = (0..b).collect();
    permutations(&mut perm, 0, &mut |p| {
        let mut mapped: Vec<u64> = rows
            .iter()
            .map(|&r| {
                (0..b)
                    .filter(|&j| r >> j & 1 == 1)
                    .fold(0u64, |m, j| m | 1 << p[j])
            })
            .collect();
        mapped.sort_unstable();
        if best.as_ref().is_none_or(|x| mapped < *x) {
            best = Some(mapped);
        }
    });
    best.expect("at least the identity permutation")
}

fn permutations(perm: &mut Vec<usize>, i: usize, visit: &mut impl FnMut(&[usize])) {
    if i == perm.len() {
        visit(perm);
        return;
    }
    for j in i..perm.len() {
        perm.swap(i, j);
        permutations(perm, i + 1, visit);
        perm.swap(i, j);
    }
}

/// Smallest sorted edge list over relabelings that list vertices in order
/// of nonincreasing degree.
fn canonical_multigraph(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut degree = vec![0usize; n];
    for &(u, v) in edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    let mut by_degree: BTreeMap<std::cmp::Reverse<usize>, Vec<usize>> = BTreeMap::new();
    for (v, &d) in degree.iter().enumerate() {
        by_degree.entry(std::cmp::Reverse(d)).or_default().push(v);
    }
    let classes: Vec<Vec<usize>> = by_degree.into_values().collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut label = vec![0usize; n];
    relabel_classes(&classes, 0, 0, &mut label, &mut |label| {
        let mut mapped: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (label[u], label[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        mapped.sort_unstable();
        if best.as_ref().is_none_or(|x| mapped < *x) {
            best = Some(mapped);
        }
    });
    best.expect("at least one relabeling")
}

fn relabel_classes(
    classes: &[Vec<usize>],
    c: usize,
    offset: usize,
    label: &mut [usize],
    visit: &mut impl FnMut(&[usize]),
) {
    if c == classes.len() {
        visit(label);
        return;
    }
    let mut members = classes[c].clone();
    let size = members.len();
    permutations(&mut members, 0, &mut |p| {
        let mut l = label.to_vec();
        for (k, &v) in p.iter().enumerate() {
            l[v] = offset + k;
        }
        relabel_classes(classes, c + 1, offset + size, &mut l, visit);
    });
}

fn swap_classes(g: &BipartiteGraph) -> BipartiteGraph {
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(e, v)| (v, e)).collect();
    BipartiteGraph::from_indices(
        g.class_size(Side::Violet),
        g.class_size(Side::Emerald),
        &edges,
    )
    .expect("valid")
}

/// A plane bipartite graph with 4 emerald and 5 violet vertices, 12 edges,
/// three 4-cycles and 217 spanning trees.
pub fn plane_fixture() -> BipartiteGraph {
    BipartiteGraph::from_indices(4, 5, PLANE_FIXTURE_EDGES).expect("valid")
}

const PLANE_FIXTURE_EDGES: &[(usize, usize)] = &[
    (0, 1),
    (0, 3),
    (0, 4),
    (1, 0),
    (1, 2),
    (1, 4),
    (2, 0),
    (2, 1),
    (2, 3),
    (3, 0),
    (3, 1),
    (3, 2),
];
