//! Exact-arithmetic tilt-stability and Bogomolov–Gieseker bounds on quintic
//! surfaces and threefolds.
//!
//! Everything is computed over `i128` rationals; there is no floating point
//! anywhere in the numerical layer.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bounds;
pub mod certify;
pub mod characters;
pub mod clifford;
pub mod error;
pub mod piecewise;
pub mod rational;
pub mod scan;
pub mod tilt_walls;

pub use characters::{ReducedCharacter, SlopePoint, QUINTIC_DEGREE};
pub use error::{Error, Result};
pub use piecewise::{Endpoint, Piece, PiecewiseLinearFn};
pub use rational::{q, ParseRationalError, Rational, Slope};
