//! Finite root systems, Weyl groups represented by inversion sets, separable
//! elements, and the pattern-avoidance machinery that characterizes them.
//!
//! Everything is exact: roots are integer vectors in the simple-root basis,
//! the invariant bilinear form is rational, and rank generating functions use
//! arbitrary-precision integer coefficients. No floating point anywhere.
//!
//! The main entry points:
//!
//! * [`CartanType`] / [`RootSystem::build`] — construct a finite root system.
//! * [`weyl::WeylGroup::enumerate`] — list a Weyl group as inversion masks.
//! * [`separable::is_separable`] — decide separability of an element.
//! * [`patterns::forbidden_set`] — the ten minimal non-separable patterns.
//! * [`verify`] — exhaustive checks of the structural identities at desk scale.

pub mod cartan;
pub mod linalg;
pub mod patterns;
pub mod qpoly;
pub mod rootsys;
pub mod separable;
pub mod verify;
pub mod weyl;

pub use cartan::{CartanType, Family};
pub use qpoly::QPolynomial;
pub use rootsys::{Root, RootSystem, SubsystemEmbedding};
pub use weyl::{EnumLimits, Mask, WeylElement, WeylGroup};

/// Errors produced by construction, validation, and guard checks.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("unknown Cartan type: {0}")]
    UnknownCartanType(String),
    #[error("enumeration too large: {0}")]
    EnumerationTooLarge(String),
    #[error("not a finite root system: {0}")]
    NotRootSystem(String),
    #[error("root does not belong to this system")]
    ForeignRoot,
    #[error("root is not positive")]
    NotPositive,
    #[error("not an ascent: simple root {0} is already an inversion")]
    NotAscent(usize),
    #[error("not biconvex")]
    NotBiconvex,
    #[error("elements belong to different systems")]
    MixedSystems,
    #[error("not divisible")]
    NotDivisible,
    #[error("wrong type: {0}")]
    WrongType(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
