//! List decoding of expander-based codes (Tanner and AEL constructions).
//!
//! The decoding pipeline: list decode local views, set up an agreement
//! 2-CSP on the expander, approximate its constraint matrices by a weak
//! regularity cut decomposition, then enumerate assignments that are
//! constant on the atoms of the induced factor and finish each candidate
//! with a unique decoder. Brute-force oracles for every step live in
//! [`oracle`] so that desk-scale instances can be verified exactly.
//!
//! The crate is `no_std` compatible (requires `alloc`); IO, file formats
//! and the CLI live in the companion `listdec` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod ael;
pub mod codes;
pub mod csp;
mod error;
pub mod field;
pub mod graphs;
pub mod listdec;
mod maths;
pub mod oracle;
pub mod regularity;
pub mod tanner;

pub use error::Error;

/// Result alias used across the crate.
pub type Result<T> = core::result::Result<T, Error>;
