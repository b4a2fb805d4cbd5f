//! Contact loci of hyperplane multi-arrangements.
//!
//! For a multi-arrangement `f = h_1^{s_1} ... h_d^{s_d}` in affine space, the
//! `m`-contact locus is the set of `m`-jets along which `f` vanishes to order
//! exactly `m`. It splits into pieces indexed by weighted chains of complete
//! sets of hyperplanes, and every piece is the complement of a product
//! arrangement. This crate computes that decomposition exactly, together with
//! the invariants that follow from it:
//!
//! - [`arrangement`]: hyperplanes over the rationals, flats, restriction,
//!   centralization and products;
//! - [`lattice`]: intersection posets, Möbius values, characteristic and
//!   Betti polynomials, combinatorial types, Orlik–Solomon generators;
//! - [`contact`]: the chain descriptors, component arrangements and the
//!   restricted-locus fiber data;
//! - [`generic`]: closed forms for generic and generic central arrangements;
//! - [`zeta`]: truncated naive motivic zeta functions;
//! - [`jets`]: a brute-force finite-field jet counter used as ground truth.

pub mod arith;
pub mod arrangement;
pub mod budget;
pub mod contact;
pub mod error;
pub mod fixtures;
pub mod generic;
pub mod jets;
pub mod lattice;
pub mod linalg;
pub mod report;
pub mod zeta;

pub use arith::{binom, IntPoly, LaurentPoly, Rational};
pub use arrangement::{Flat, Hyperplane, MultiArrangement};
pub use budget::Budget;
pub use contact::{ChainDescriptor, Component, NuEncoding};
pub use error::{Error, Result};
pub use lattice::{CombinatorialType, IntersectionPoset};
pub use zeta::LaurentSeriesTruncation;
