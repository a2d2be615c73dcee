//! The chain-gluing search.
//!
//! For every candidate Weyl square `r` the search seeds all 3-windows of
//! consecutive sides with `(ρ, ρ) = r`, then repeatedly closes chains whose
//! end sides meet (`(δ_1, δ_n) ≥ -2`) and glues the remaining open chains
//! along overlaps of `n - 2` sides. Closed polygons are verified,
//! canonicalised and deduplicated.

mod chain;
mod extend;
mod run;
mod seed;

pub use chain::ChainState;
pub use extend::{extend_step, partition_closed, Extension};
pub use run::{
    run_elliptic, run_parabolic, sort_catalog, CatalogRecord, EngineConfig, EngineReport,
    ParabolicReport, PeriodicChain, SeedMode,
};
pub use seed::{
    collect_radii, seed_triples, seed_triples_exhaustive, window_is_hyperbolic, window_r,
    RadiusSet, SeedIndex, RADIUS_B_MAX, SEED_HARD_CAP,
};

use thiserror::Error;

use crate::gcm::GcmError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("seed scan for a = {a}, c = {c}, lambda = {lambda:?} passed b = {cap} without leaving the target range", cap = SEED_HARD_CAP)]
    MonotonicityCap { a: i64, c: i64, lambda: [i64; 3] },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Gcm(#[from] GcmError),
}
