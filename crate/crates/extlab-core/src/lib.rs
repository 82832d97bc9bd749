//! Exact linear-extension statistics of finite posets.
//!
//! Everything here is pure and allocation-only (`no_std` + `alloc`): all
//! statistics are computed with arbitrary-precision integers, so inequality
//! verdicts are exact. The crate has three layers:
//!
//! * a brute-force oracle ([`linext`]) that enumerates linear extensions and
//!   computes every statistic directly from its definition;
//! * two independent fast paths for width-two posets: a banded-matrix product
//!   engine ([`matrix`], [`profile`]) and a lattice-path model ([`lattice`]);
//! * executable inequality checks with counterexample extraction ([`checks`]).
//!
//! IO, file formats and the command-line front end live in the companion
//! `extlab` crate.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod checks;
pub mod generate;
pub mod lattice;
pub mod linext;
pub mod matrix;
pub mod poset;
pub mod profile;
pub mod qpoly;

pub use poset::{ChainDecomposition, ElementTriple, Poset, PosetError};
pub use qpoly::QPolynomial;
