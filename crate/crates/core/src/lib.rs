//! Exact-arithmetic connectedness decisions for planar self-affine sets
//! `T(A, D)` built from an expanding integer companion matrix `A` of
//! `x^2 + px + q` and a collinear digit set `D·v`.
//!
//! Every decision runs in arbitrary-precision rational arithmetic; floating
//! point appears only in the `render` module, which draws pictures.
//!
//! The pipeline: `coords` produces rigorous tail bounds for the coordinate
//! series of `A^{-i}v`, `neighbors` turns those bounds into a finite automaton
//! that decides membership of lattice points in `T - T`, `connectivity`
//! assembles the intersection graph over the digits and reads the verdict off
//! graph connectivity, and `radix` evaluates and verifies the eventually
//! periodic expansions that certify each edge.

pub mod algebra;
pub mod cli;
pub mod connectivity;
pub mod coords;
pub mod error;
pub mod neighbors;
pub mod radix;
pub mod render;

pub use algebra::{
    companion, discriminant, is_expanding, normalize_sign, Mat2, QuadraticPoly, Rational,
};
pub use connectivity::{decide, ConnectivityReport, Verdict};
pub use coords::{coord_seq, tail_bounds, CoordSeq, TailBounds};
pub use error::Error;
pub use neighbors::{DigitSystem, LatticePoint, NeighborAutomaton};
pub use radix::RadixExpansion;
