//! Model checking for finite proximity spaces.
//!
//! Spaces are finite sets with a reflexive, symmetric nearness relation on
//! points; subset nearness, closure, continuity, homotopy, coverings and
//! lifting properties are all decided exactly by search over that relation.

pub mod axioms;
pub mod covering;
pub mod descriptive;
pub mod error;
pub mod fixtures;
pub mod homotopy;
pub mod io;
pub mod lifting;
pub mod maps;
pub mod mapspace;
pub mod space;
pub mod subset;
pub mod suite;

pub use error::{Error, Result};
pub use space::{build_space, Provenance, Space, SpaceSource};
pub use subset::Subset;
