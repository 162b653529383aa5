//! Exact structure-constant computer algebra for finite-dimensional Hopf algebras.
//!
//! The crate provides:
//!
//! - [`scalar`]: exact arithmetic in cyclotomic fields ℚ(ζ_N) together with
//!   finite-field specialization for fast one-sided rank certificates;
//! - [`linalg`]: sparse exact and modular linear algebra (elimination, rank,
//!   kernels, fraction-free determinants);
//! - [`algebra`]: Hopf algebras given by sparse structure tensors, axiom
//!   verification in exact/modular/sampled modes, duals, antipode solving and
//!   group-like tooling;
//! - [`present`]: generator/relation presentations with declared normal-form
//!   bases, compiled to structure constants by confluent rewriting;
//! - [`double`]: Drinfeld doubles with their standard R-matrix and quotients
//!   by central group-like elements;
//! - [`quasitri`]: R-matrix verification, Drinfeld and ribbon elements,
//!   factorizability and central pairing tests;
//! - [`builders`]: named constructors (metacyclic groups, group algebras,
//!   abelian extensions, Taft algebras, and the double/quotient pipeline);
//! - [`datum`]: integer linear algebra over products of cyclic groups (Smith
//!   normal form, unique-solution tests, datum condition checkers).
//!
//! The crate is `no_std`-compatible (with `alloc`); the default `std` feature
//! enables caching and the optional `parallel` feature enables multi-threaded
//! verification loops.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

// pub mod algebra;
// pub mod builders;
pub mod datum;
// pub mod double;
pub mod linalg;
// pub mod present;
// pub mod quasitri;
pub mod scalar;

mod sync;
pub mod report;
