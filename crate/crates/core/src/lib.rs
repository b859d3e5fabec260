//! Exact computations for the tensor square `S ⊗ S` of a monogenic Galois
//! number ring `S = Z[θ]`, the endomorphism algebra of its standard
//! projectives, and that algebra's reductions modulo primes of `S`.
//!
//! Everything is exact: integers are arbitrary precision and residue
//! computations happen in finite fields.

pub mod arith;
pub mod bgg;
pub mod error;
pub mod numfield;
pub mod prime;
pub mod strat;
pub mod tensor;

pub use error::{Error, Result};

/// Arbitrary-precision integer used for all global coordinates.
pub type Int = num_bigint::BigInt;
/// Integer polynomial over [`Int`].
pub type ZPoly = arith::IntPoly<Int>;
/// Integer lattice over [`Int`].
pub type ZLattice = arith::IntLattice<Int>;
