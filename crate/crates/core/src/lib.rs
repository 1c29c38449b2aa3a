//! Combinatorial tools for sphere pairs in the 4-manifolds `X_{p,q}`:
//! annular link diagrams and their cyclic covers, Kirby diagrams, Smith
//! normal form homology, the bicolored linking parity obstruction and
//! symbolic regular homotopies.

pub mod covers;
pub mod diagrams;
pub mod error;
pub mod homology;
pub mod homotopy;
pub mod kirby;
pub mod obstruction;
pub mod render;

pub use error::{Error, Result};
