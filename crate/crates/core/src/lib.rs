//! Exact arithmetic for rank-4 rigid local systems of Goursat type G-II.

pub mod error;
pub mod exactnum;

pub use error::{Error, Result};
pub mod catalog;
pub mod construct;
pub mod group;
pub mod hermitian;
pub mod obstruction;
pub mod ode;
pub mod search;
pub mod stargraph;
pub mod verify;
