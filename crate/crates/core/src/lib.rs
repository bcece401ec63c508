//! Sparse matrix models for circular and Jacobi β-ensembles.

pub mod cmv;
pub mod distributions;
pub mod ensembles;
pub mod error;
pub mod hist;
pub mod io;
pub mod ks;
pub mod linalg;
pub mod opuc;
pub mod rng;
pub mod szego;
pub mod validate;

pub use error::{Error, Result};
