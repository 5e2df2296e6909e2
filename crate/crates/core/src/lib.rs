//! Exact, finite models of the pointed indexing categories `F` and `G*`,
//! pointed diagrams on them, and the coend-defined left adjoint of
//! restriction along the length-one inclusion `F -> G*`.
//!
//! Everything lives in a truncated universe (pointed sets up to `<N>`,
//! tuples up to length `q_max`, simplicial degrees up to `d`), so every
//! identity is checked by exhaustion rather than approximated.

#![allow(clippy::needless_range_loop)]

pub mod category;
pub mod coend;
pub mod diagram;
pub mod emit;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod pointed;
pub mod relative;
pub mod simplicial;
pub mod skeletal;
pub mod suite;
pub mod tuple;

pub use error::{Error, Result};
