//! Weight enumerators of quantum error-correcting codes.
//!
//! The crate computes the Shor–Laflamme `A` and `B` enumerators of a code
//! either by definition from explicit codewords ([`enumerator::brute_force_enumerators`])
//! or, for stabilizer codes, by counting weights in the group and its
//! centralizer ([`enumerator::stabilizer_enumerators`]). Around that sit the
//! predicates that decide whether a code is real with exactly transversal
//! `X` and `Z`, and the identities such codes satisfy.

pub mod catalog;
pub mod codespace;
pub mod enumerator;
mod gf2;
pub mod pauli;
pub mod stabilizer;

/// Exact rational used for enumerator entries.
pub type Rational = num_rational::Ratio<i128>;

pub use codespace::{AnyCodeSpace, CodeSpace, Exact, Float};
pub use enumerator::{Distance, EnumeratorPair};
pub use pauli::PauliString;
pub use stabilizer::StabilizerGroup;
