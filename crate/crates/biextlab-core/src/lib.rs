//! Exact-arithmetic homological algebra over finitely generated abelian groups.
//!
//! Everything here is computed over ℤ with arbitrary-precision integers and
//! reduces, one way or another, to Smith normal form of an integer matrix:
//! kernels, cokernels, homology, the four bifunctors Hom/Ext¹/⊗/Tor₁, chain
//! and bicomplexes, the canonical flat partial resolution of a two-term
//! complex, the split linear model of the Ψ-groups, and the geometric and
//! homological computations of extension and biextension groups of two-term
//! complexes.
//!
//! The crate is `no_std` (alloc only); all values are immutable after
//! construction and every operation is a pure function of its inputs.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod abgroup;
pub mod bicomplex;
pub mod complex;
pub mod corpus;
pub mod homcomplex;
pub mod matrix;
pub mod pairing;
pub mod psi;
pub mod resolution;
pub mod snf;
pub mod subquotient;

use alloc::string::String;
use core::fmt;

/// Errors shared across the crate. Guard violations are hard errors, never
/// silent truncations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operation that needs a finite group was handed one with free rank > 0.
    InfiniteGroup,
    /// A resolution guard was exceeded; carries the offending order and the limit.
    SizeGuardExceeded { actual: u64, limit: u64 },
    /// A bicomplex failed d∘d = 0 or square anticommutativity at construction.
    BicomplexInvalid(String),
    /// A total complex without grid block labels was passed to a Ψ computation.
    BlockLabelsMissing,
    /// The formality route and the resolution route for a hyper-Ext group
    /// disagreed. This signals an implementation bug and is never swallowed.
    RouteMismatch(String),
    /// A matrix does not define a homomorphism between the given groups.
    IllDefinedHom(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InfiniteGroup => write!(f, "operation requires a finite group"),
            Error::SizeGuardExceeded { actual, limit } => {
                write!(f, "size guard exceeded: order {actual} > limit {limit}")
            }
            Error::BicomplexInvalid(msg) => write!(f, "invalid bicomplex: {msg}"),
            Error::BlockLabelsMissing => write!(f, "total complex has no grid block labels"),
            Error::RouteMismatch(msg) => write!(f, "route mismatch: {msg}"),
            Error::IllDefinedHom(msg) => write!(f, "ill-defined homomorphism: {msg}"),
        }
    }
}
