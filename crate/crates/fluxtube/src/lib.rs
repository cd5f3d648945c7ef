//! Flux-tube confinement potentials for multiquark systems.
//!
//! The crate models the linear-confinement energy of quark clusters as the
//! minimal total length of a string network joining the quarks:
//!
//! * two quarks: the segment between them,
//! * three quarks: a Y-shaped junction tree (Fermat point of the triangle),
//! * two quarks + two antiquarks: the minimum of two "flip-flop" pairings and
//!   a connected two-junction Steiner tree (`steiner4`).
//!
//! On top of the geometry sit spectral estimates (`spectrum`) bounding the
//! ground-state energy of the four-body system by exactly solvable
//! one-dimensional linear potentials, and a certification harness (`verify`)
//! that stress-tests the variational inequalities those estimates rely on.
//!
//! The `cli` module exposes the whole stack as a small command-line tool.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod spectrum;
pub mod steiner3;
pub mod steiner4;
pub mod verify;

pub use error::{Error, Result};
