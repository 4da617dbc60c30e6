//! Coded caching over a shared link where `K` users share `Λ` helper caches.
//!
//! The crate covers both sides of the optimality argument:
//!
//! * [`placement`] and [`delivery`] run the uncoded placement and the
//!   round-based XOR delivery bit-exactly, including payload decoding.
//! * [`bounds`] evaluates the optimal delay for an association profile, its
//!   lower convex envelope, and the exact converse linear program.
//! * [`indexcoding`] rebuilds the converse from first principles: the
//!   side-information graph, the population-ordered acyclic subgraph, the
//!   cut-set bound and brute-force oracles over whole demand classes.
//! * [`multirequest`] maps the multiple-file-requests problem onto the
//!   shared-cache one.
//!
//! All delays are exact [`Rational`]s. The crate is `no_std` and only needs
//! `alloc`; IO lives in the companion CLI crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod combinatorics;
pub mod delivery;
mod error;
pub mod indexcoding;
pub mod model;
pub mod multirequest;
pub mod placement;

pub use error::Error;

/// Exact rational used for every delay, size and bound.
pub type Rational = num_rational::Ratio<i128>;

pub type Result<T> = core::result::Result<T, Error>;
