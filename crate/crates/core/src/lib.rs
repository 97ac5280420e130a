//! Stanley-Reisner combinatorics, Taylor resolutions and the cohomology ring
//! of moment-angle complexes, with a checker for the equivalent forms of
//! Golodness on complexes whose Taylor resolution is minimal.

pub mod cli;
pub mod complex;
pub mod error;
pub mod golod;
pub mod homology;
pub mod linalg;
pub mod mask;
pub mod taylor;
pub mod zk;

pub use complex::{build_kn, KnComplex, NonFaceSequence, SimplicialComplex};
pub use error::{Error, Result};
pub use linalg::Ring;
pub use mask::VertexMask;
