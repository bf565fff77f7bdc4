//! Simplicial abelian groups, the Dold-Kan functors `N` and `N⁻¹`, and the
//! brute-force derived quadratic functor `M₍#₎(Y) = N((N⁻¹Y) ⊗ M)`.

pub mod oracle;
pub mod simplicial;
pub mod surjection;

pub use oracle::{m_sharp_oracle, m_sharp_oracle_truncated, MSharp};
pub use simplicial::{apply_quadratic_degreewise, denormalize, Normalized, SimplicialAbelianGroup, TruncationPolicy};
pub use surjection::{binomial, FaceImage, Surjection};

/// `N(K)`; see [`SimplicialAbelianGroup::normalize`].
pub fn normalize(k: &SimplicialAbelianGroup) -> crate::Result<Normalized> {
    k.normalize()
}
