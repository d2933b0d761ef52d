//! Exact computations with weighted centers over ℚ: the Mord lattice, the multiorder
//! invariant and canonical centers, Tschirnhaus certificates, weighted blowup charts
//! with the principalization loop, and tube algebras.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod blowup;
pub mod center;
pub mod error;
pub mod invariant;
pub mod parse;
pub mod mord;
pub mod oracle;
pub mod poly;
pub mod rational;
mod roots;
pub mod series;
pub mod tschirnhaus;
pub mod tube;

pub use error::{Error, ErrorClass, Result};
pub use mord::{is_in_mord, LatticeIdeal, MultiOrder};
pub use poly::{Ambient, ExponentVector, Order, PolyIdeal, Polynomial, Substitution, DEFAULT_DEGREE_CAP};
pub use rational::{Extended, Rational};
