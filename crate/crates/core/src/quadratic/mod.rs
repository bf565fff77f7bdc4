//! Quadratic Z-modules, quadratic tensor products, their torsion functors
//! and the classical quadratic functors.

pub mod classical;
pub mod delta;
pub mod module;
pub mod qmap;

pub use classical::{
    classical, cross_effect, gamma, graded_square, lambda2, omega, omega_closed, r_closed, r_functor, ClassicalKind,
    SquareKind,
};
pub use delta::{quad_tensor, quad_tensor_map, quad_torsion, quad_torsion_of, DeltaComplex};
pub use module::{l_module, NamedModule, QuadraticZModule};
pub use qmap::{quad_map, quad_map_sparse, QuadBasis, QuadIndex};
