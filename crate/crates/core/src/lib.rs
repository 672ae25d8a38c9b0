//! Orbits of the symplectic group on triple flag varieties.
//!
//! The crate decides which products of symplectic flag varieties have finitely
//! many `Sp_{2n}`-orbits, counts and enumerates the orbits in the finite cases,
//! builds explicit representatives, and decides whether two concrete flag
//! tuples lie in the same orbit by Krull–Schmidt decomposition.

pub mod catalog;
pub mod census;
pub mod classifier;
pub mod compositions;
pub mod decomposer;
pub mod enumerator;
pub mod error;
pub mod exactlin;
pub mod flagobj;

pub use error::{Error, Result};
