//! Bounded chain complexes of free abelian groups, their homology, homotopy
//! classes of chain maps and pseudo-homology.

pub mod complex;
pub mod homotopy;
pub mod sparse;

pub use complex::{
    canonical_complex, homology, moore_complex, suspension, tensor_complex, ChainComplex, ChainMap, Degree,
    GradedGroup,
};
pub use homotopy::{homotopy_classes, pseudo_homology, pseudo_homology_with, HomotopyClasses, PseudoHomology};
pub use sparse::{Reduction, SparseComplex, SparseMatrix, SparseVec};
