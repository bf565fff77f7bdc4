//! Finitely generated abelian groups, integer matrices and Smith normal form.

pub mod functor;
pub mod group;
pub mod hom;
pub mod lattice;
pub mod matrix;
pub mod snf;

pub use functor::{
    binary_functor, connecting_map, enumerate_elements, functor_subquotient, induced_map, BinaryKind, ExtClass, Slot,
};
pub use group::{canonicalize, CanonicalGroup, Presentation};
pub use hom::Homomorphism;
pub use lattice::{kernel_basis, presented_homology, solve, solve_matrix, Subquotient};
pub use matrix::{int, IntMatrix};
pub use snf::{smith_normal_form, Snf};
