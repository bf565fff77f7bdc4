//! Classification data for 2-nilpotent homotopy types.
//!
//! A homological bype `(B, b, β)` is checked on chain level against
//! `Λ₍#₎C(B)` ([`SqModel`]): `Sq_n(B)` is its homology, `Sq_n(A, B)` its
//! pseudo-homology, and morphism conditions are evaluated with the exact
//! induced map of `C(φ) + α`. Stable bypes and `F`-modules are plain `Z₂`
//! matrices and correspond under [`theta`].

pub mod f2;
pub mod fmodule;
pub mod homological;
pub mod model;
pub mod schema;
pub mod stable;

pub use f2::F2Matrix;
pub use fmodule::{fmodule_check_morphism, theta, theta_inverse, FModule};
pub use homological::{
    check_morphism, find_morphism_witness, identity_hom, validate_bype, Bype, BypeReport, Correction, DegreeCheck,
    GradedHom, MorphismProblem, SearchConfig, Witness,
};
pub use model::SqModel;
pub use stable::{stabilize_bype, stable_equiv, StableBype};
