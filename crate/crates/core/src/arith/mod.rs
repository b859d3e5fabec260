//! Exact arithmetic: integer polynomials, finite fields, factorization over
//! prime fields and integer lattices in Hermite normal form.

pub mod factor;
pub mod field;
pub mod fpoly;
mod intpoly;
pub mod lattice;
pub mod linalg;

pub use factor::{factor_mod_p, is_irreducible_over_q, is_prime};
pub use field::{Field, FqElem, FqField, PrimeField, Rationals};
pub use intpoly::IntPoly;
pub use lattice::{lattice_hnf, lattice_member, IntLattice};
pub use linalg::Subspace;
