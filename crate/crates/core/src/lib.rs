//! Decompositions of a d-dimensional cube into exactly `n` smaller cubes of
//! nearly equal size, with exact certification.
//!
//! * [`planar`] builds two-size squared squares for every `n >= 6`.
//! * [`highdim`] builds certificates (and, when small enough, explicit
//!   tilings) for any dimension using at most `d + 2` side lengths.
//! * [`threesize`] tiles with the three sides `1`, `1/2` and `1/(2^d - 1)`.
//! * [`verify`] checks tilings and certificates in exact arithmetic.

pub mod cli;
pub mod geometry;
pub mod highdim;
pub mod numtheory;
pub mod planar;
pub mod rational;
mod scaled;
pub mod threesize;
pub mod verify;

pub use geometry::{box_volume, subdivide, Cube, GeometryError, LexGrid, Tiling};
pub use rational::{ifloor_root, Rational};

/// Materialization limit used when none is configured.
pub const DEFAULT_MAX_PIECES: u64 = 5_000_000;
