//! Exact computations in the twisted double bialgebras of set compositions,
//! block graphs and finite topologies, their characters, and their images in
//! packed words, integer compositions and polynomials.

pub mod algebra;
pub mod characters;
pub mod cli;
pub mod combinat;
pub mod error;
pub mod fock;
pub mod lincomb;
pub mod rational;
pub mod graphs;
pub mod laws;
pub mod setcomp;
pub mod topology;

pub use error::{Error, Result};
pub use lincomb::LinComb;
pub use rational::Q;
