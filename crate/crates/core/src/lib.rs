//! Exact construction of the Faà di Bruno and plethystic bialgebras from
//! surjections, partitions and transversals, with an independent power-series
//! oracle for every coproduct.

pub mod cli;
pub mod error;
pub mod finset;
pub mod groupoid;
pub mod incidence;
pub mod lambda;
pub mod partition;
pub mod perm;
pub mod rational;
pub mod series;
pub mod simplicial;
pub mod verify;

pub use error::{Error, Result};
