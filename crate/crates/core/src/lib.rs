//! Exact computation of formal invariants of meromorphic connections, embedded
//! resolution of plane curve germs, and regularity certificates for pullbacks
//! of connections to curves.

pub mod connection;
pub mod criterion;
pub mod diffmod;
pub mod error;
pub mod fixture;
pub mod resolution;
pub mod scalar;

pub use error::{Error, ErrorClass, Result};
