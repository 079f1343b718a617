//! Classification of Boolean functions modulo Reed-Muller codes under the
//! affine general linear group.
//!
//! The crate computes orbit representatives of the spaces `B(s, t, m)`
//! together with stabilizer orders and generators, counts classes
//! independently with Burnside's formula, counts near-bent functions from a
//! classification, and bounds covering radii with a randomized search for
//! low-weight coset words.

pub mod boolean;
pub mod census;
pub mod classify;
pub mod covrad;
pub mod error;
pub mod group;
pub mod io;

pub use boolean::{BooleanFunction, SpaceSpec, WalshSpectrum};
pub use classify::{ClassRecord, Classification, ClassifyConfig};
pub use error::{Error, Result};
pub use group::{AffineMap, SubgroupOracle};
