#![cfg_attr(not(feature = "std"), no_std)]
//! Exact algebra for the q-difference Lie algebra `Diff_q` (the q = t quantum
//! toroidal gl(1)), its Fock and twisted Fock modules, q-W currents and
//! Whittaker vectors.
//!
//! Everything is computed over Q(t) with `t = q^(1/L)`; no floating point.

extern crate alloc;

pub mod blocks;
pub mod boson;
mod error;
pub mod fock;
pub mod linalg;
pub mod relations;
pub mod partitions;
pub mod scalars;
pub mod twisted;
pub mod vector;
pub mod walgebra;
pub mod whittaker;

pub use error::{Error, Result};
