//! Construction and verification of pentavalent arc-transitive graphs as
//! coset graphs of finite permutation groups.

pub mod canon;
pub mod cli;
pub mod error;
pub mod graph;
pub mod orbital;
pub mod perm;
pub mod verify;
pub mod zoo;

pub use error::{Error, Result};
