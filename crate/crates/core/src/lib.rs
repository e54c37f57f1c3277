//! Exact character tables, p-blocks and principal-block degree checks for
//! finite groups, with the number theory and combinatorics of finite groups of
//! Lie type needed to sweep whole families.

pub mod blocks;
pub mod chartable;
pub mod cli;
pub mod classifier;
pub mod cyclotomic;
pub mod lietype;
pub mod error;
pub mod groups;
pub mod modpoly;
pub mod numtheory;
pub mod partitions;
pub mod permgroup;

pub use error::{Error, Result};
