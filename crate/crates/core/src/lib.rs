//! Exact counting of linear extensions and weak Bruhat ideals, together with
//! the reductions showing both problems are #P-complete.

pub mod acceptance;
pub mod circuit;
pub mod combinatorics;
pub mod compiler;
pub mod error;
pub mod formats;
pub mod gates;
pub mod height2;
pub mod incidence;
pub mod numtheory;
pub mod polyalg;

pub use error::{Error, Result};
