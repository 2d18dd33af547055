//! Exact density computations for point sets and measures in amenable groups.
//!
//! Supported ambient groups are `ℤ^d`, the discrete Heisenberg group `H₃(ℤ)`
//! and `ℝ^d` represented through finite unions of half-open rational boxes.
//! All arithmetic is exact: integer coordinates for the discrete groups,
//! arbitrary-precision rationals for box endpoints, and `ℤ[φ]` pairs for the
//! Fibonacci cut-and-project scheme. Irrational constants such as `√5` only
//! ever appear inside rational enclosures.
//!
//! The crate computes
//! - Minkowski products, erosions, greedy packings and Haar measures of
//!   compact-set surrogates ([`sets`], [`boxes`]),
//! - the Følner, strong Følner and van Hove boundary operators ([`boundary`]),
//! - Følner sequences, boundary ratios and the thickening construction
//!   ([`folner`]),
//! - uniform lattices, covolumes, Siegel fundamental domains and lattice
//!   densities ([`lattice`]),
//! - cut-and-project model sets, the density formula and almost periods
//!   ([`cutproject`]),
//! - translation-boundedness witnesses, Beurling/Leptin/GKS density
//!   estimators ([`density`]),
//! - seeded verification suites for the inclusion and identity lemmas
//!   ([`verify`]).

pub mod boundary;
pub mod boxes;
pub mod cutproject;
pub mod density;
pub mod error;
pub mod folner;
pub mod group;
pub mod io;
pub mod lattice;
pub mod points;
pub mod rat;
pub mod sets;
pub mod verify;
pub mod zphi;

pub use error::{Error, Result};
pub use group::{GElem, GroupCtx, GroupKind};
pub use rat::Rat;
pub use sets::{GSet, PMeasure};
