//! Geometric realizations of rank-3 hyperbolic generalized Cartan matrices.
//!
//! A realization is a cyclic list of norm-2 vectors `δ_1..δ_n` of a
//! hyperbolic plane, given only through their pairings `(δ_i, δ_j)`, together
//! with positive twisting coefficients `λ_i`. The roots `α_i = λ_i δ_i` are
//! never stored.

mod cartan;
mod datum;
mod symmetry;
mod table;
mod verify;
mod weyl;

pub use cartan::{cartan_matrix, symmetrized_cartan, CartanMatrix, SymmetrizedCartan};
pub use datum::{assemble_gram, packed_index, packed_len, PolygonDatum};
pub use symmetry::{symmetry_group, DihedralMove, SymmetryGroup, SymmetryKind};
pub use table::{polygon_table, GeometricRealizationTable};
pub use verify::{classify_flags, verify_realization, Check, Flags, GcmType, VerificationReport};
pub use weyl::{divisibility_ok, reflect, weyl_vector, window_gram, WeylData};

use thiserror::Error;

use crate::linalg::{LinalgError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GcmError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("Gram matrix is not hyperbolic (det = {det})")]
    NotHyperbolic { det: Rational },
    #[error("invalid realization: {0}")]
    InvalidRealization(String),
    #[error("cannot decode table: {0}")]
    Decode(String),
    #[error("Weyl square {0} is positive")]
    PositiveWeylSquare(Rational),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
