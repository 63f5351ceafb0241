//! Finite ∩-semigroups of partial transformations, the abstract systems
//! `(G, ·, ⋏, ξ, δ)` that characterize them, and the faithful
//! representation of such systems by partial maps.
//!
//! Product orientation: an abstract product `x · y` corresponds to the
//! transformation `y ∘ x`, i.e. `x` is applied first.

pub mod abstract_system;
pub mod commands;
pub mod closure;
pub mod error;
pub mod generators;
pub mod instance;
pub mod partial_map;
pub mod relation;
pub mod representation;
pub mod report;
pub mod trans_semigroup;

pub use abstract_system::{AbstractSystem, StarView};
pub use error::{Error, Result};
pub use partial_map::{PartialMap, SubsetA};
pub use relation::{ElemSet, Relation};
pub use report::{Check, Report, Witness};
pub use representation::{DeterminingPair, Representation};
pub use trans_semigroup::TransSystem;
