//! Exact Hecke-algebra and Kazhdan-Lusztig computations on length-truncated
//! Coxeter groups, aimed at groups whose Coxeter graph is complete.
//!
//! The pipeline is: a [`CoxeterMatrix`] is realized as a [`GroupBall`] (all
//! elements of length at most `L`); products in the normalized standard basis
//! `T̃_w = q^{-l(w)/2} T_w` give the structure constants `f` ([`hecke`]); the
//! Kazhdan-Lusztig basis, `μ`, the constants `h` and the truncated
//! `a`-function live in [`kl`]; cells, the lowest two-sided cell and its
//! canonical left-cell representatives live in [`cells`]; [`verify`] runs the
//! statement-by-statement test suites over a ball.

pub mod cells;
pub mod cli;
pub mod coxeter;
pub mod cyclotomic;
pub mod error;
pub mod hecke;
pub mod kl;
pub mod laurent;
pub mod verify;

pub use coxeter::{CoxeterMatrix, Elem, GenSet, GroupBall, GroupProfile, Side};
pub use error::{Error, Result};
pub use laurent::{Basis, BasisExpansion, LaurentPoly};
