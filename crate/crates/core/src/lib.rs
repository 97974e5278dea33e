//! Partition Eisenstein series over Ferrers-Young lattices.
//!
//! A partition `λ` places the vertices of its Ferrers-Young diagram at the
//! lattice points `az + b`, reflected into all four quadrants. Summing
//! `ω^{-k}` over those points gives the single-partition series
//! [`f`](eisenstein::f); summing that over all partitions of `n` gives
//! [`g`](eisenstein::g). The crate evaluates both exactly (rational-complex
//! arithmetic) or in floating point, tabulates their generating series, and
//! checks the invariances they satisfy under `z ↦ −z` and `z ↦ −1/z`.
//!
//! ```
//! use parteis::eisenstein::{f, Weight};
//! use parteis::numerics::{Rational, Scalar};
//! use parteis::partitions::Partition;
//!
//! let lambda: Partition = "3,2,2,1".parse().unwrap();
//! let z = Rational::from_gaussian(1, 1);
//! assert_eq!(f(&lambda, &z, Weight(0)).unwrap(), Rational::from_i64(8));
//! ```

pub mod cli;
pub mod eisenstein;
pub mod error;
pub mod lattice;
pub mod numerics;
pub mod partitions;
pub mod verify;

pub use error::{Error, Result};
