//! Verification laboratory for factorizable one-dimensional quantum problems
//! and the so(2,2) satellite algebras acting on their bound states.

pub mod cli;
pub mod error;
pub mod algebra;
pub mod factorization;
pub mod jet;
pub mod models;
pub mod numerics;
pub mod operator;
pub mod specfun;
pub mod transform;
pub mod wavefunction;

pub use error::{Error, Result};
