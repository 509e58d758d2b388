//! Hochschild homology, dual Hochschild cohomology and May-type spectral
//! sequences for finite-dimensional graded algebras over F2.

pub mod algebras;
pub mod complexes;
pub mod f2linalg;
pub mod filtrations;
pub mod homology;
pub mod specseq;
