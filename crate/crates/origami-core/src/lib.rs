//! Exact arithmetic for square-tiled surfaces (origamis).
//!
//! An origami is a closed translation surface built from `n` unit squares,
//! encoded by a pair of permutations `(h, v)` where `h(i)` is the square to
//! the right of square `i` and `v(i)` the square on top of it. Everything in
//! this crate is computed over the rationals (or the integers), never in
//! floating point:
//!
//! * [`Origami`]: parsing, singularities, strata, cylinder decompositions in
//!   every rational direction, the `SL(2,Z)` action, isomorphism and
//!   automorphisms;
//! * [`homology`]: the cellular chain complex, integral `H_1` with its
//!   symplectic intersection pairing, waist-curve classes, holonomy and the
//!   non-tautological subspace `H_1^perp`;
//! * [`monodromy`]: Dehn multitwists in periodic directions and their exact
//!   matrices on `H_1` and on `H_1^perp`;
//! * [`spin`] and [`involution`]: the parity of the spin structure (Arf
//!   invariant) and affine `-Id` involutions with their fixed points;
//! * [`surgery`]: bubbling a square handle into a horizontal slit;
//! * [`density`]: Zariski-density certificates for subgroups of `Sp(2m)`
//!   via exact Lie-algebra closure.
//!
//! The crate is `no_std` (requires `alloc`); IO, JSON and the command line
//! front end live in the companion `origami-cli` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod chain;
pub mod cylinder;
pub mod density;
pub mod error;
pub mod homology;
pub mod intersection;
pub mod involution;
pub mod matrix;
pub mod monodromy;
pub mod origami;
pub mod perm;
pub mod sl2z;
pub mod spin;
pub mod surgery;

pub use chain::EdgeChain;
pub use cylinder::Cylinder;
pub use density::{lie_closure, DensityCertificate, DensityOptions, Verdict};
pub use error::Error;
pub use homology::{CycleClass, Homology, PerpBasisKind};
pub use involution::{hyperelliptic_involution, InvolutionWitness};
pub use matrix::QMat;
pub use monodromy::{multitwist, MultitwistAction};
pub use origami::{Origami, StratumSignature};
pub use perm::Permutation;
pub use sl2z::Sl2zMatrix;
pub use spin::{spin_parity, SpinData};
pub use surgery::{bubble_square_handle, BubbleOutcome, SlitSpec};

/// Exact rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;
/// Arbitrary precision integer.
pub type Int = num_bigint::BigInt;

pub(crate) fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}
