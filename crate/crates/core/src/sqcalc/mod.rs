//! The Sq-calculus for `M = Z^Λ`: the case table for `Sq_{n,m}`, the
//! off-diagonal terms, the bype functors, the stable operator and the maps
//! induced by `Ext`.
//!
//! Closed forms are assembled from labeled summands. Extension-type
//! summands (`Λ²T#`, `ΓT#`, `Trp`) are evaluated on chain level and never by
//! splitting their sequences.

pub mod functors;
pub mod induced;
pub mod table;
pub mod value;

pub use functors::{bype_ends, bype_functor, trp, BypeKind, BypeValue};
pub use induced::{
    ext_chain_map, ext_induced, gamma_reduction, nu, shift_map, sq_nm_chain, stabilization_map, ShiftMap,
};
pub use table::{SqTable, TableCell, TableFormat, PRINTED_BLOCKS};
pub use value::{
    sq_full, sq_nij, sq_nm, sq_nm_symbolic, sq_of, stable_sq, stable_terms, stabilize, Case, Inner, Origin,
    SqValue, Stabilization, Summand, SummandFate, Term,
};
