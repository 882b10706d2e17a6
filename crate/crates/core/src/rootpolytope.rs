//! The root polytope `Q_G = conv{1_e + 1_v : ev ∈ G}`, its facet
//! functionals, and exact lattice-point counts of its dilations.
//!
//! Points of `Z^E ⊕ Z^V` are coordinate vectors in unified vertex order
//! (emerald first, then violet).

use std::collections::HashSet;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::bigraph::{BipartiteGraph, DirectedCut, Side};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::big_to_json;
use crate::scalar::binomial;
use crate::Rational;

/// Cap on `|E| + |V|` for the coordinate scans.
pub const SCAN_VERTEX_CAP: usize = 12;
/// Cap on the dilation factor for the coordinate scans.
pub const SCAN_DILATION_CAP: usize = 6;

/// A point of `Z^E ⊕ Z^V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Coordinates keyed by vertex label.
    pub fn labeled(&self, g: &BipartiteGraph) -> Vec<(String, i64)> {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &x)| (g.vertex_label(i).to_string(), x))
            .collect()
    }
}

/// Ehrhart data: `ε(0..=d)` and the coefficients `a_k` in the basis
/// `C(s + d − k, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartData {
    pub d: usize,
    pub values: Vec<BigInt>,
    pub a: Vec<BigInt>,
}

impl EhrhartData {
    /// `ε(s)` for any integer `s`, by interpolation through `ε(0..=d)`.
    pub fn value(&self, s: i64) -> BigInt {
        let xs: Vec<Rational> = (0..=self.d as i64)
            .map(|x| Rational::from_integer(x.into()))
            .collect();
        let ys: Vec<Rational> = self
            .values
            .iter()
            .map(|y| Rational::from_integer(y.clone()))
            .collect();
        let v = linalg::lagrange_eval(&xs, &ys, &Rational::from_integer(s.into()));
        debug_assert!(v.is_integer());
        v.to_integer()
    }

    /// `(−1)^d ε(−s)`, the interior count predicted by reciprocity.
    pub fn reciprocal_value(&self, s: i64) -> BigInt {
        let v = self.value(-s);
        if self.d.is_multiple_of(2) {
            v
        } else {
            -v
        }
    }

    pub fn to_json(&self) -> Value {
        self.to_json_up_to(self.d)
    }

    /// Like [`to_json`](Self::to_json) with `ε(0..=s_max)`, at least up to `d`.
    pub fn to_json_up_to(&self, s_max: usize) -> Value {
        let values: Vec<Value> = (0..=s_max.max(self.d) as i64)
            .map(|s| big_to_json(&self.value(s)))
            .collect();
        json!({
            "d": self.d,
            "epsilon_values": values,
            "a_coefficients": self.a.iter().map(big_to_json).collect::<Vec<_>>(),
        })
    }
}

/// `Q_G` with its facet functionals.
#[derive(Clone, Debug)]
pub struct RootPolytope<'g> {
    graph: &'g BipartiteGraph,
    cuts: Vec<DirectedCut>,
}

impl<'g> RootPolytope<'g> {
    pub fn new(graph: &'g BipartiteGraph) -> Result<Self> {
        let cuts = graph.minimal_directed_cuts()?;
        Ok(RootPolytope { graph, cuts })
    }

    pub fn graph(&self) -> &'g BipartiteGraph {
        self.graph
    }

    /// One functional per facet.
    pub fn cuts(&self) -> &[DirectedCut] {
        &self.cuts
    }

    pub fn dimension(&self) -> usize {
        self.graph.dimension()
    }

    /// `1_e + 1_v` for every edge, in edge order.
    pub fn vertices(&self) -> Vec<LatticePoint> {
        (0..self.graph.edge_count())
            .map(|i| self.edge_point(i))
            .collect()
    }

    pub fn edge_point(&self, edge: usize) -> LatticePoint {
        let mut p = vec![0; self.graph.vertex_count()];
        let (e, v) = self.graph.edge_vertices(edge);
        p[e] = 1;
        p[v] = 1;
        LatticePoint(p)
    }

    fn sums(&self, p: &[i64]) -> (i64, i64) {
        let m = self.graph.class_size(Side::Emerald);
        (p[..m].iter().sum(), p[m..].iter().sum())
    }

    /// Membership in `s·Q_G` via the facet description.
    pub fn contains(&self, p: &LatticePoint, s: i64) -> bool {
        p.0.len() == self.graph.vertex_count()
            && self.sums(&p.0) == (s, s)
            && self.cuts.iter().all(|c| c.evaluate(&p.0) >= 0)
    }

    /// Membership in the relative interior of `s·Q_G`.
    pub fn contains_in_interior(&self, p: &LatticePoint, s: i64) -> bool {
        p.0.len() == self.graph.vertex_count()
            && self.sums(&p.0) == (s, s)
            && self.cuts.iter().all(|c| c.evaluate(&p.0) > 0)
    }

    /// Lattice points of `s·Q_G` as all sums of `s` vertices.
    pub fn lattice_points(&self, s: usize) -> Vec<LatticePoint> {
        let n = self.graph.vertex_count();
        let verts = self.vertices();
        let mut layer: HashSet<Vec<i64>> = HashSet::from([vec![0; n]]);
        for _ in 0..s {
            let mut next = HashSet::with_capacity(layer.len() * 2);
            for p in &layer {
                for v in &verts {
                    next.insert(p.iter().zip(&v.0).map(|(a, b)| a + b).collect::<Vec<i64>>());
                }
            }
            layer = next;
        }
        let mut out: Vec<LatticePoint> = layer.into_iter().map(LatticePoint).collect();
        out.sort();
        out
    }

    fn check_scan_caps(&self, s: usize) -> Result<()> {
        let n = self.graph.vertex_count();
        if n > SCAN_VERTEX_CAP {
            return Err(Error::CapExceeded {
                what: "|E|+|V| for a coordinate scan",
                limit: SCAN_VERTEX_CAP,
                actual: n,
            });
        }
        if s > SCAN_DILATION_CAP {
            return Err(Error::CapExceeded {
                what: "dilation factor for a coordinate scan",
                limit: SCAN_DILATION_CAP,
                actual: s,
            });
        }
        Ok(())
    }

    /// Points of the box `[0, s]^{E ⊔ V}` with both coordinate sums `s`
    /// that satisfy `keep`.
    fn scan(&self, s: usize, keep: impl Fn(&LatticePoint) -> bool) -> Result<Vec<LatticePoint>> {
        self.check_scan_caps(s)?;
        let m = self.graph.class_size(Side::Emerald);
        let n = self.graph.class_size(Side::Violet);
        let xs = compositions(m, s);
        let ys = compositions(n, s);
        let mut out = Vec::new();
        for x in &xs {
            for y in &ys {
                let p = LatticePoint(x.iter().chain(y).copied().collect());
                if keep(&p) {
                    out.push(p);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Lattice points of `s·Q_G` by scanning the box against the facets.
    pub fn scan_points(&self, s: usize) -> Result<Vec<LatticePoint>> {
        self.scan(s, |p| self.contains(p, s as i64))
    }

    /// Lattice points strictly inside `s·Q_G`, by the same scan.
    pub fn interior_points(&self, s: usize) -> Result<Vec<LatticePoint>> {
        self.scan(s, |p| self.contains_in_interior(p, s as i64))
    }

    pub fn interior_count(&self, s: usize) -> Result<usize> {
        Ok(self.interior_points(s)?.len())
    }

    /// `ε(s) = |s·Q_G ∩ Z^{E⊕V}|`.
    ///
    /// A point `(x, y)` lies in `s·Q_G` iff it is the marginal pair of a
    /// nonnegative weighting of the edges, i.e. iff `y(U) ≤ x(N(U))` for all
    /// `U ⊆ V`. For each `x` the admissible `y` are counted by a pruned
    /// coordinate search.
    pub fn count(&self, s: usize) -> u64 {
        let g = self.graph;
        let m = g.class_size(Side::Emerald);
        let n = g.class_size(Side::Violet);
        // N(U) as a mask over the emerald class, for every U ⊆ V.
        let mut nbhd = vec![0u64; 1 << n];
        for u in 1usize..1 << n {
            let low = u.trailing_zeros() as usize;
            let own = g
                .incident(Side::Violet, low)
                .iter()
                .fold(0u64, |acc, &i| acc | 1 << g.endpoint(i, Side::Emerald));
            nbhd[u] = nbhd[u & (u - 1)] | own;
        }
        let mut total = 0u64;
        let mut cap = vec![0i64; 1 << n];
        let mut sums = vec![0i64; 1 << n];
        let mut y = vec![0i64; n];
        for x in compositions(m, s) {
            for (u, c) in cap.iter_mut().enumerate() {
                let mut bits = nbhd[u];
                let mut acc = 0;
                while bits != 0 {
                    acc += x[bits.trailing_zeros() as usize];
                    bits &= bits - 1;
                }
                *c = acc;
            }
            total += count_below(0, n, s as i64, &cap, &mut sums, &mut y);
        }
        total
    }

    /// `ε(0..=d)` by counting, and the `a_k` by forward substitution in the
    /// lower unitriangular system `ε(s) = Σ_{k ≤ s} a_k C(s + d − k, d)`.
    pub fn ehrhart_coefficients(&self) -> Result<EhrhartData> {
        let d = self.dimension();
        let values: Vec<BigInt> = (0..=d).map(|s| BigInt::from(self.count(s))).collect();
        let a = coefficients_from_values(d, &values)?;
        Ok(EhrhartData { d, values, a })
    }

    /// Checks `interior_count(s) = (−1)^d ε(−s)` for `s = 1..=s_max`.
    pub fn reciprocity_check(&self, s_max: usize) -> Result<bool> {
        let data = self.ehrhart_coefficients()?;
        for s in 1..=s_max {
            if BigInt::from(self.interior_count(s)?) != data.reciprocal_value(s as i64) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Solves `values[s] = Σ_{k ≤ s} a_k C(s + d − k, d)` exactly.
pub fn coefficients_from_values(d: usize, values: &[BigInt]) -> Result<Vec<BigInt>> {
    let d_i = d as i64;
    let matrix: Vec<Vec<Rational>> = (0..=d_i)
        .map(|s| {
            (0..=d_i)
                .map(|k| Rational::from_integer(binomial(s + d_i - k, d_i)))
                .collect()
        })
        .collect();
    let rhs: Vec<Rational> = values
        .iter()
        .map(|v| Rational::from_integer(v.clone()))
        .collect();
    linalg::solve_lower_triangular(&matrix, &rhs)?
        .into_iter()
        .map(|a| {
            if a.is_integer() {
                Ok(a.to_integer())
            } else {
                Err(Error::NonIntegral(format!("Ehrhart coefficient {a}")))
            }
        })
        .collect()
}

/// Number of `y ∈ Z^n_{≥0}` extending the assigned prefix `y[..i]` with
/// `Σ y = total` and `y(U) ≤ cap[U]` for every `U`.
fn count_below(
    i: usize,
    n: usize,
    total: i64,
    cap: &[i64],
    sums: &mut [i64],
    y: &mut [i64],
) -> u64 {
    let bit = 1usize << i;
    let used: i64 = y[..i].iter().sum();
    let left = total - used;
    let range: Vec<i64> = if i + 1 == n {
        vec![left]
    } else {
        (0..=left).collect()
    };
    let mut found = 0;
    'values: for t in range {
        for u in 0..bit {
            let s = sums[u] + t;
            if s > cap[u | bit] {
                continue 'values;
            }
            sums[u | bit] = s;
        }
        if i + 1 == n {
            found += 1;
        } else {
            y[i] = t;
            found += count_below(i + 1, n, total, cap, sums, y);
        }
    }
    y[i] = 0;
    found
}

/// All `x ∈ Z^n_{≥0}` with `Σ x = s`, in lexicographic order.
pub fn compositions(n: usize, s: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    comp_rec(0, s as i64, &mut cur, &mut out);
    out
}

fn comp_rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    let n = cur.len();
    if n == 0 {
        if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    if i + 1 == n {
        cur[i] = left;
        out.push(cur.clone());
        return;
    }
    for t in 0..=left {
        cur[i] = t;
        comp_rec(i + 1, left - t, cur, out);
    }
    cur[i] = 0;
}
