//! Hyperedge orders, internal activity, the interior polynomial, and the
//! Minkowski-sum lattice counts that determine the interior and exterior
//! polynomials without reference to any order.

use std::collections::HashSet;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bigraph::{permutation_rank, OrdinaryGraph, Side};
use crate::error::{Error, Result};
use crate::hypertree::{Hypergraph, Hypertree, HypertreeSet};
use crate::linalg;
use crate::scalar::binomial;
use crate::{IntPolynomial, Rational};

/// Largest ground set handled by [`minkowski_lattice_count`].
pub const MINKOWSKI_DIMENSION_CAP: usize = 16;

/// A total order on the hyperedges, as a permutation of class indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperedgeOrder {
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl HyperedgeOrder {
    pub fn identity(n: usize) -> Self {
        HyperedgeOrder {
            order: (0..n).collect(),
            rank: (0..n).collect(),
        }
    }

    /// `order[0] < order[1] < ...`; must be a permutation of `0..n`.
    pub fn from_indices(order: Vec<usize>) -> Result<Self> {
        let rank = permutation_rank(&order, order.len())?;
        Ok(HyperedgeOrder { order, rank })
    }

    /// Order given by listing every label of `class` once.
    pub fn from_labels<S: AsRef<str>>(class: &[String], labels: &[S]) -> Result<Self> {
        let order = labels
            .iter()
            .map(|l| {
                let l = l.as_ref();
                class.iter().position(|x| x == l).ok_or_else(|| {
                    Error::InvalidOrder(format!("`{l}` is not in the hyperedge class"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if order.len() != class.len() {
            return Err(Error::InvalidOrder(format!(
                "expected {} labels, got {}",
                class.len(),
                order.len()
            )));
        }
        Self::from_indices(order)
    }

    pub fn random(n: usize, seed: u64) -> Self {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        Self::from_indices(order).expect("shuffle is a permutation")
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn rank(&self, e: usize) -> usize {
        self.rank[e]
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.rank[a] < self.rank[b]
    }

    /// Hyperedges from smallest to largest.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.order.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    fn check(&self, h: &Hypergraph<'_>) -> Result<()> {
        if self.len() == h.size() {
            Ok(())
        } else {
            Err(Error::InvalidOrder(format!(
                "order has {} entries for {} hyperedges",
                self.len(),
                h.size()
            )))
        }
    }
}

/// Mask of the internally inactive hyperedges of `f`.
pub fn inactive_set(h: &Hypergraph<'_>, order: &HyperedgeOrder, f: &Hypertree) -> u64 {
    let t = h.transfers(f);
    (0..h.size())
        .filter(|&e| order.iter().take_while(|&x| x != e).any(|x| t.can(e, x)))
        .fold(0u64, |m, e| m | 1 << e)
}

/// `ῑ(f)`: number of hyperedges that can pass valence to a smaller one.
pub fn internal_inactivity(h: &Hypergraph<'_>, order: &HyperedgeOrder, f: &Hypertree) -> usize {
    inactive_set(h, order, f).count_ones() as usize
}

/// `Σ_f ξ^{ῑ(f)}` over all hypertrees.
pub fn interior_polynomial(h: &Hypergraph<'_>, order: &HyperedgeOrder) -> Result<IntPolynomial> {
    order.check(h)?;
    let mut counts = vec![0i64; h.size()];
    for f in &h.enumerate_hypertrees()? {
        counts[internal_inactivity(h, order, f)] += 1;
    }
    Ok(IntPolynomial::new(
        counts.into_iter().map(BigInt::from).collect(),
    ))
}

/// The order on hypertrees where `f1 < f2` iff `f1` is larger at the
/// smallest hyperedge on which they differ.
pub fn lex_less(f1: &[u32], f2: &[u32], order: &HyperedgeOrder) -> bool {
    order
        .iter()
        .find(|&e| f1[e] != f2[e])
        .is_some_and(|e| f1[e] > f2[e])
}

/// Which simplex is added to `B`: `k∇` (points `b − v`) or `kΔ` (`b + v`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Inverted,
    Standard,
}

type Packed = [i8; MINKOWSKI_DIMENSION_CAP];

fn pack(point: &[i64]) -> Result<Packed> {
    let mut out = [0i8; MINKOWSKI_DIMENSION_CAP];
    for (slot, &x) in out.iter_mut().zip(point) {
        *slot = i8::try_from(x).map_err(|_| Error::CapExceeded {
            what: "coordinate magnitude in a Minkowski count",
            limit: i8::MAX as usize,
            actual: x.unsigned_abs() as usize,
        })?;
    }
    Ok(out)
}

/// Lattice-point counts of `B ∓ kΔ` for `k = 0..=k_max`, where each point is
/// a distinct `b ∓ v` with `b ∈ B` and `v` a nonnegative integer vector of
/// sum `k`. Layers are built one unit vector at a time.
pub fn minkowski_lattice_counts(
    points: &[Vec<i64>],
    k_max: usize,
    direction: Direction,
) -> Result<Vec<usize>> {
    let n = points.first().map_or(0, Vec::len);
    if n > MINKOWSKI_DIMENSION_CAP {
        return Err(Error::CapExceeded {
            what: "dimension of a Minkowski count",
            limit: MINKOWSKI_DIMENSION_CAP,
            actual: n,
        });
    }
    let step: i8 = match direction {
        Direction::Inverted => -1,
        Direction::Standard => 1,
    };
    let mut layer: HashSet<Packed> = points.iter().map(|p| pack(p)).collect::<Result<_>>()?;
    let mut counts = vec![layer.len()];
    for _ in 0..k_max {
        let mut next = HashSet::with_capacity(layer.len() * 2);
        for p in &layer {
            for i in 0..n {
                let mut q = *p;
                q[i] = q[i].checked_add(step).ok_or(Error::CapExceeded {
                    what: "coordinate magnitude in a Minkowski count",
                    limit: i8::MAX as usize,
                    actual: i8::MAX as usize + 1,
                })?;
                next.insert(q);
            }
        }
        layer = next;
        counts.push(layer.len());
    }
    Ok(counts)
}

/// `|(B ∓ kΔ) ∩ Z^n|`.
pub fn minkowski_lattice_count(
    points: &[Vec<i64>],
    k: usize,
    direction: Direction,
) -> Result<usize> {
    Ok(minkowski_lattice_counts(points, k, direction)?[k])
}

/// The unique `a_0..a_{n−1}` with `c_k = Σ_j a_j C(k+n−1−j, n−1−j)` for
/// `k = 0..n−1`, solved over the rationals. Fails unless every `a_j` is an
/// integer.
pub fn polynomial_from_mink_counts(counts: &[usize], n: usize) -> Result<IntPolynomial> {
    if counts.len() != n {
        return Err(Error::Precondition(format!(
            "expected {n} counts, got {}",
            counts.len()
        )));
    }
    let n_i = n as i64;
    let matrix: Vec<Vec<Rational>> = (0..n_i)
        .map(|k| {
            (0..n_i)
                .map(|j| Rational::from_integer(binomial(k + n_i - 1 - j, n_i - 1 - j)))
                .collect()
        })
        .collect();
    let rhs: Vec<Rational> = counts
        .iter()
        .map(|&c| Rational::from_integer(BigInt::from(c)))
        .collect();
    let solution = linalg::solve(&matrix, &rhs)?;
    let coeffs = solution
        .into_iter()
        .map(|a| {
            if a.is_integer() {
                Ok(a.to_integer())
            } else {
                Err(Error::NonIntegral(format!(
                    "basis coefficient {a} from counts {counts:?}"
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPolynomial::new(coeffs))
}

fn polynomial_via_mink(h: &Hypergraph<'_>, direction: Direction) -> Result<IntPolynomial> {
    let points = h.enumerate_hypertrees()?.to_vecs();
    let n = h.size();
    let counts = minkowski_lattice_counts(&points, n - 1, direction)?;
    polynomial_from_mink_counts(&counts, n)
}

/// Exterior polynomial, from the counts of `B_H + kΔ`.
pub fn exterior_polynomial(h: &Hypergraph<'_>) -> Result<IntPolynomial> {
    polynomial_via_mink(h, Direction::Standard)
}

/// Interior polynomial, from the counts of `B_H + k∇`; needs no order.
pub fn interior_polynomial_via_mink(h: &Hypergraph<'_>) -> Result<IntPolynomial> {
    polynomial_via_mink(h, Direction::Inverted)
}

/// The smallest hypertree `f` (in the order of [`lex_less`]) with
/// `u ∈ f + k∇`, i.e. `f ≥ u` and `Σ(f − u) = k`.
pub fn partition_class(
    h: &Hypergraph<'_>,
    order: &HyperedgeOrder,
    k: usize,
    u: &[i64],
) -> Result<Hypertree> {
    order.check(h)?;
    let all = h.enumerate_hypertrees()?;
    partition_class_in(&all, order, k, u)
}

/// [`partition_class`] against a precomputed `B_H`.
pub fn partition_class_in(
    all: &HypertreeSet,
    order: &HyperedgeOrder,
    k: usize,
    u: &[i64],
) -> Result<Hypertree> {
    all.iter()
        .filter(|f| {
            f.len() == u.len()
                && f.values().iter().zip(u).all(|(&a, &b)| i64::from(a) >= b)
                && f.values()
                    .iter()
                    .zip(u)
                    .map(|(&a, &b)| i64::from(a) - b)
                    .sum::<i64>()
                    == k as i64
        })
        .fold(None::<&Hypertree>, |best, f| match best {
            Some(b) if !lex_less(f.values(), b.values(), order) => Some(b),
            _ => Some(f),
        })
        .cloned()
        .ok_or_else(|| Error::Precondition(format!("{u:?} is not in B_H + {k}∇")))
}

/// `f − v` over all `v ≥ 0` of sum `k` supported on `support`.
pub fn cone_fiber(f: &Hypertree, k: usize, support: u64) -> Vec<Vec<i64>> {
    let base = f.as_i64();
    let coords: Vec<usize> = (0..base.len()).filter(|&i| support >> i & 1 == 1).collect();
    let mut out = Vec::new();
    let mut point = base.clone();
    fiber_rec(&coords, 0, k as i64, &mut point, &mut out);
    out
}

fn fiber_rec(coords: &[usize], i: usize, left: i64, point: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if i == coords.len() {
        if left == 0 {
            out.push(point.clone());
        }
        return;
    }
    let c = coords[i];
    for t in 0..=left {
        point[c] -= t;
        fiber_rec(coords, i + 1, left - t, point, out);
        point[c] += t;
    }
}

/// `T(x,1)` of an ordinary graph from the internal activities of the
/// hypergraph whose hyperedges are its vertices (stars of the subdivision):
/// `Σ_h x^{ι(h)−1}` with `ι` the number of active hyperedges.
pub fn vertex_activity_tutte(g: &OrdinaryGraph, vertex_order: &[usize]) -> Result<IntPolynomial> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let b = g.incidence_bipartite()?;
    let h = Hypergraph::new(&b, Side::Emerald)?;
    let order = HyperedgeOrder::from_indices(vertex_order.to_vec())?;
    order.check(&h)?;
    let n = h.size();
    let mut counts = vec![0i64; n];
    for f in &h.enumerate_hypertrees()? {
        let active = n - internal_inactivity(&h, &order, f);
        counts[active - 1] += 1;
    }
    Ok(IntPolynomial::new(
        counts.into_iter().map(BigInt::from).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::BipartiteGraph;

    fn ht(v: &[u32]) -> Hypertree {
        Hypertree(v.to_vec())
    }

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn inactivity_examples() {
        let g = BipartiteGraph::complete(3, 2);
        let h = Hypergraph::new(&g, Side::Emerald).unwrap();
        let id = HyperedgeOrder::identity(3);
        assert_eq!(internal_inactivity(&h, &id, &ht(&[1, 0, 0])), 0);
        assert_eq!(internal_inactivity(&h, &id, &ht(&[0, 1, 0])), 1);
        assert_eq!(internal_inactivity(&h, &id, &ht(&[0, 0, 1])), 1);
    }

    #[test]
    fn lex_smallest_hypertree_is_fully_active() {
        let g = BipartiteGraph::from_indices(
            3,
            3,
            &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0), (0, 2)],
        )
        .unwrap();
        for side in [Side::Emerald, Side::Violet] {
            let h = Hypergraph::new(&g, side).unwrap();
            for seed in 0..4 {
                let order = HyperedgeOrder::random(h.size(), seed);
                let all = h.enumerate_hypertrees().unwrap();
                let smallest = all
                    .iter()
                    .find(|f| {
                        all.iter()
                            .all(|x| x == *f || lex_less(f.values(), x.values(), &order))
                    })
                    .unwrap();
                assert_eq!(internal_inactivity(&h, &order, smallest), 0);
            }
        }
    }

    #[test]
    fn favorite_examples() {
        let g = BipartiteGraph::complete(3, 2);
        let h = Hypergraph::new(&g, Side::Emerald).unwrap();
        let id = HyperedgeOrder::identity(3);
        assert_eq!(h.favorite(&id, &ht(&[0, 0, 1]), 2), 0);
        assert_eq!(h.favorite(&id, &ht(&[1, 0, 0]), 0), 0);
        let sq = BipartiteGraph::complete(2, 2);
        let hs = Hypergraph::new(&sq, Side::Emerald).unwrap();
        assert_eq!(
            hs.favorite(&HyperedgeOrder::identity(2), &ht(&[0, 1]), 1),
            0
        );
    }

    #[test]
    fn interior_polynomial_examples() {
        let sq = BipartiteGraph::complete(2, 2);
        let h = Hypergraph::new(&sq, Side::Emerald).unwrap();
        assert_eq!(
            interior_polynomial(&h, &HyperedgeOrder::identity(2)).unwrap(),
            p(&[1, 1])
        );

        // A value of 1 + 2ξ² for this graph also circulates; the activity
        // count, the h-vector and a₁ = b₁ all give 1 + 2ξ.
        let k23 = BipartiteGraph::complete(3, 2);
        for side in [Side::Emerald, Side::Violet] {
            let h = Hypergraph::new(&k23, side).unwrap();
            let id = HyperedgeOrder::identity(h.size());
            assert_eq!(interior_polynomial(&h, &id).unwrap(), p(&[1, 2]));
        }

        let path =
            BipartiteGraph::new(&["e0", "e1"], &["v0"], &[("e0", "v0"), ("e1", "v0")]).unwrap();
        let h = Hypergraph::new(&path, Side::Emerald).unwrap();
        assert_eq!(
            interior_polynomial(&h, &HyperedgeOrder::identity(2)).unwrap(),
            p(&[1])
        );
    }

    #[test]
    fn lex_less_examples() {
        let id = HyperedgeOrder::identity(3);
        assert!(lex_less(&[1, 0, 0], &[0, 1, 0], &id));
        assert!(!lex_less(&[1, 0, 0], &[1, 0, 0], &id));
        assert!(!lex_less(&[0, 0, 1], &[0, 1, 0], &id));
        let rev = HyperedgeOrder::from_indices(vec![2, 1, 0]).unwrap();
        assert!(lex_less(&[0, 0, 1], &[0, 1, 0], &rev));
    }

    #[test]
    fn orders() {
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let o = HyperedgeOrder::from_labels(&labels, &["c", "a", "b"]).unwrap();
        assert_eq!(o.as_slice(), &[2, 0, 1]);
        assert!(o.less(2, 0));
        assert!(HyperedgeOrder::from_labels(&labels, &["c", "a"]).is_err());
        assert!(HyperedgeOrder::from_labels(&labels, &["c", "a", "a"]).is_err());
        assert!(HyperedgeOrder::from_labels(&labels, &["c", "a", "z"]).is_err());
        assert_eq!(HyperedgeOrder::random(5, 7), HyperedgeOrder::random(5, 7));
    }

    #[test]
    fn minkowski_examples() {
        let b = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(
            minkowski_lattice_count(&b, 1, Direction::Inverted).unwrap(),
            7
        );
        assert_eq!(
            minkowski_lattice_count(&b, 0, Direction::Inverted).unwrap(),
            3
        );
        assert_eq!(
            minkowski_lattice_count(&b, 1, Direction::Standard).unwrap(),
            6
        );
        assert_eq!(
            minkowski_lattice_counts(&b, 2, Direction::Inverted).unwrap(),
            vec![3, 7, 12]
        );
        assert_eq!(
            minkowski_lattice_counts(&b, 2, Direction::Standard).unwrap(),
            vec![3, 6, 10]
        );
    }

    #[test]
    fn basis_solve_examples() {
        assert_eq!(
            polynomial_from_mink_counts(&[3, 7, 12], 3).unwrap(),
            p(&[1, 2])
        );
        assert_eq!(
            polynomial_from_mink_counts(&[3, 6, 10], 3).unwrap(),
            p(&[1, 1, 1])
        );
        assert_eq!(polynomial_from_mink_counts(&[1, 2], 2).unwrap(), p(&[1]));
        assert!(polynomial_from_mink_counts(&[1, 2], 3).is_err());
    }

    #[test]
    fn mink_polynomials() {
        let k23 = BipartiteGraph::complete(3, 2);
        let h = Hypergraph::new(&k23, Side::Emerald).unwrap();
        assert_eq!(exterior_polynomial(&h).unwrap(), p(&[1, 1, 1]));
        assert_eq!(interior_polynomial_via_mink(&h).unwrap(), p(&[1, 2]));
        let sq = BipartiteGraph::complete(2, 2);
        let h = Hypergraph::new(&sq, Side::Emerald).unwrap();
        assert_eq!(exterior_polynomial(&h).unwrap(), p(&[1, 1]));
        assert_eq!(interior_polynomial_via_mink(&h).unwrap(), p(&[1, 1]));
        let path =
            BipartiteGraph::new(&["e0", "e1"], &["v0"], &[("e0", "v0"), ("e1", "v0")]).unwrap();
        let h = Hypergraph::new(&path, Side::Emerald).unwrap();
        assert_eq!(exterior_polynomial(&h).unwrap(), p(&[1]));
        assert_eq!(interior_polynomial_via_mink(&h).unwrap(), p(&[1]));
    }

    #[test]
    fn partition_class_examples() {
        let k23 = BipartiteGraph::complete(3, 2);
        let h = Hypergraph::new(&k23, Side::Emerald).unwrap();
        let id = HyperedgeOrder::identity(3);
        assert_eq!(
            partition_class(&h, &id, 1, &[0, 0, 0]).unwrap(),
            ht(&[1, 0, 0])
        );
        assert_eq!(
            partition_class(&h, &id, 1, &[1, -1, 0]).unwrap(),
            ht(&[1, 0, 0])
        );
        assert_eq!(
            partition_class(&h, &id, 0, &[0, 1, 0]).unwrap(),
            ht(&[0, 1, 0])
        );
        assert!(partition_class(&h, &id, 1, &[1, 1, 0]).is_err());
    }

    #[test]
    fn fibers() {
        let f = ht(&[2, 0, 1]);
        let mut fib = cone_fiber(&f, 2, 0b101);
        fib.sort();
        assert_eq!(fib, vec![vec![0, 0, 1], vec![1, 0, 0], vec![2, 0, -1]]);
        assert_eq!(cone_fiber(&f, 0, 0), vec![vec![2, 0, 1]]);
        assert!(cone_fiber(&f, 1, 0).is_empty());
    }

    #[test]
    fn vertex_activity_examples() {
        let tri = OrdinaryGraph::from_indices(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(
            vertex_activity_tutte(&tri, &[0, 1, 2]).unwrap(),
            p(&[1, 1, 1])
        );
        let single = OrdinaryGraph::from_indices(2, &[(0, 1)]).unwrap();
        assert_eq!(vertex_activity_tutte(&single, &[0, 1]).unwrap(), p(&[0, 1]));
        let par = OrdinaryGraph::from_indices(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(vertex_activity_tutte(&par, &[1, 0]).unwrap(), p(&[1, 1]));
    }
}
