//! Weak model sets of lattice subsets.
//!
//! The internal space for subsets of `Z^n` is the compact group
//! `H = prod_p (Z^n / p^k Z^n)` with the diagonal star map `x -> (x mod p^k)_p`.
//! The `k`-free lattice points are the projection set of the window
//! `W = prod_p (Z^n/p^k Z^n \ {0})`, whose boundary has positive Haar measure,
//! so they form a weak (not regular) model set.
//!
//! Modules:
//!
//! - [`arith`]: primes, `k`-free tests, vector gcd, zeta values with error bounds.
//! - [`adic`]: the star map, product windows, Haar and van Hove boundary measures.
//! - [`sieve`]: point generation in boxes, density scans, CRT hole certificates.
//! - [`patterns`]: pattern censuses, the admissibility oracle, entropy reports.
//! - [`euclid`]: a quadratic-irrational regular model set used as a contrast.
//! - [`verify`]: the invariant suite behind `weakmodel verify`.
//! - [`cli`]: argument parsing and subcommand dispatch for the `weakmodel` binary.

pub mod adic;
pub mod arith;
pub mod cli;
mod error;
pub mod euclid;
pub mod format;
pub mod patterns;
pub mod sieve;
pub mod verify;

pub use error::{Error, Result};
