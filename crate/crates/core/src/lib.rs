//! Equivariant Hodge–Grothendieck polynomial calculus and Vassiliev–Gorinov
//! spectral-sequence bookkeeping.
//!
//! The layers, bottom-up:
//!
//! - [`sym_char`]: partitions, characters of `S_n`, and the representation ring;
//! - [`motive_ring`]: Tate-type classes and HG polynomials with their dualities;
//! - [`catalog`]: cohomology and Borel–Moore polynomials of recurring spaces;
//! - [`strata`]: Borel–Moore polynomials of resolution strata;
//! - [`spectral`]: bigraded pages, declared differentials, and long exact sequences;
//! - [`scenario`]: the `.vgl` scenario language, its runner, and golden files.

pub mod catalog;
pub mod error;
pub mod motive_ring;
pub mod scenario;
pub mod spectral;
pub mod strata;
pub mod sym_char;

pub use catalog::{Ambient, SpaceId, SpaceKind};
pub use error::{Error, Result};
pub use motive_ring::{BettiPoly, HGPoly, MotiveClass};
pub use spectral::{ConnectingDecl, DiffImage, DifferentialDecl, LesMode, LesRole, Page, Variance};
pub use strata::StratumDescriptor;
pub use sym_char::{Partition, RepVector};
