//! Exact classification of rank-3 hyperbolic generalized Cartan matrices of
//! elliptic type that carry a lattice Weyl vector.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: exact rationals and small matrices.
//! * [`gcm`]: polygon data, Weyl vectors, Cartan matrices, verification.
//! * [`canonical`]: dihedral normal forms.
//! * [`engine`]: the chain-gluing search.
//! * [`goldens`]: embedded reference catalogue and lattice fixtures.

pub mod canonical;
pub mod engine;
pub mod gcm;
pub mod goldens;
pub mod linalg;
