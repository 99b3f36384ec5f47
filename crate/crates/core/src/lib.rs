//! Exact algebra for orthogonal groups over small finite fields.
//!
//! The crate decides whether an element of a special orthogonal group
//! SO(V, Q) is a product of two involutions of SO(V, Q), and whether it is
//! conjugate to its inverse there, and builds explicit witnesses: involution
//! pairs, orthogonal square roots, inverting involutions with a prescribed
//! fixed-space dimension, and invariant hyperbolic splittings.
//!
//! Layers, bottom up:
//!
//! - [`field`]: GF(p^k) with p^k ≤ 64 and polynomials over it.
//! - [`linalg`]: matrices acting on row vectors, subspaces in reduced echelon
//!   form, minimal polynomials, primary and Fitting decompositions.
//! - [`quadspace`]: nondefective quadratic spaces.
//! - [`ortho`]: orthogonal maps, reflections, the path-parity test for SO.
//! - [`structure`]: orthogonal decompositions and the type of each summand.
//! - [`witness`]: square roots, inverting involutions, involution pairs,
//!   classifiers.
//! - [`oracle`]: brute-force enumeration of small groups and a battery of
//!   exhaustive checks against the constructive layers.
//! - [`cli`]: the JSON front end used by the `bireflect` binary.

pub mod cli;
pub mod error;
pub mod field;
pub mod linalg;
pub mod oracle;
pub mod ortho;
pub mod quadspace;
pub mod structure;
pub mod witness;

pub use error::{Error, Result};
pub use field::{Elem, FiniteField, Poly};
pub use linalg::{Mat, Subspace};
pub use ortho::OrthMap;
pub use quadspace::QuadSpace;
