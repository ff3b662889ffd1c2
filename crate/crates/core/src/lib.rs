//! Gentle algebras given by quiver and relations: validation, permitted and
//! forbidden threads, the derived invariant `phi`, an independent check
//! through the repetitive algebra, and classification for at most one cycle.

pub mod classify;
pub mod dot;
pub mod dsl;
pub mod fixtures;
pub mod generator;
pub mod json;
pub mod phi;
pub mod quiver;
pub mod repetitive;
pub mod threads;

pub use phi::{compute_phi, PhiInvariant};
pub use quiver::{build_presentation, validate_gentle, GentlePresentation, RawQuiver};
