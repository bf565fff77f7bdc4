//! Exact quadratic-functor calculus for 2-nilpotent simplicial groups.
//!
//! The closed-form evaluators (`sqcalc`, `tables`) are checked against a
//! brute-force Dold-Kan oracle (`doldkan`) built on integer Smith normal
//! form arithmetic (`abelian`, `chaincx`).

pub mod abelian;
pub mod bype;
pub mod chaincx;
pub mod doldkan;
pub mod error;
pub mod expr;
pub mod quadratic;
pub mod sqcalc;
pub mod tables;

pub use error::{Error, Result};
