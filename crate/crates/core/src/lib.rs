//! Combinatorics of root polytopes of bipartite graphs.
//!
//! A connected bipartite graph `G` with color classes `E` (emerald) and `V`
//! (violet) induces two hypergraphs, `(V, E)` and `(E, V)`. This crate
//! computes their hypertrees and interior/exterior polynomials, the root
//! polytope `Q_G` with its facets and Ehrhart counts, triangulations of `Q_G`
//! as families of pairwise compatible spanning trees, and the identities that
//! tie all of these together.
//!
//! Numeric code that does not need a specific representation is generic over
//! [`Scalar`]/[`Field`]; the aliases below fix the exact types used by the
//! rest of the crate.

pub mod activity;
pub mod bigraph;
pub mod error;
pub mod harness;
pub mod hypertree;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod rootpolytope;
pub mod scalar;
pub mod triangulate;

pub use activity::{Direction, HyperedgeOrder};
pub use bigraph::{BipartiteGraph, DirectedCut, EdgeSet, OrdinaryGraph, Side, SpanningTree};
pub use error::{Error, Result};
pub use hypertree::{Hypergraph, Hypertree, HypertreeSet, SubmodularOracle};
pub use poly::Polynomial;
pub use rootpolytope::{EhrhartData, LatticePoint, RootPolytope};
pub use scalar::{Field, Scalar};
pub use triangulate::{FaceVector, Strategy, Triangulation};

/// Arbitrary-precision integers; coefficients of every integer polynomial.
pub type Integer = num_bigint::BigInt;
/// Exact rationals used by basis changes, interpolation and marker weights.
pub type Rational = num_rational::BigRational;
/// Polynomials with integer coefficients (interior, exterior, h, Tutte).
pub type IntPolynomial = Polynomial<Integer>;
/// Polynomials with rational coefficients (interpolated Ehrhart polynomials).
pub type RatPolynomial = Polynomial<Rational>;
