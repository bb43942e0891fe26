//! Exact tools for cluster-free and covering-triple-free families of
//! `k`-dimensional subspaces of `F_q^n`.
//!
//! The crate is layered bottom-up: [`gfq`] supplies field and matrix
//! arithmetic, [`grassmann`] canonical subspaces and enumeration, [`qarith`]
//! Gaussian binomials, [`families`] the forbidden-configuration predicates and
//! the claiming maps, and [`search`] exact extremal search and the one-to-`m`
//! matching. [`famfile`] and [`verify`] back the command-line driver.

pub mod error;
pub mod famfile;
pub mod families;
pub mod gfq;
pub mod grassmann;
pub mod qarith;
pub mod search;
pub mod verify;

pub use error::{Error, Result};
