use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;

use crate::gcm::{divisibility_ok, weyl_vector, window_gram};
use crate::linalg::Rational;

use super::{ChainState, EngineError};

/// Largest `b = -(δ1, δ3)` a monotone seed scan may reach.
pub const SEED_HARD_CAP: i64 = 10_000;

/// Upper bound for `b` when collecting candidate radii.
pub const RADIUS_B_MAX: i64 = 14;

/// Sorted set of candidate Weyl squares.
pub type RadiusSet = BTreeSet<Rational>;

/// `a² + b² + c² + abc > 4`, i.e. the window Gram has negative determinant.
pub fn window_is_hyperbolic(a: i64, b: i64, c: i64) -> bool {
    a * a + b * b + c * c + a * b * c > 4
}

/// `(ρ, ρ)` of a hyperbolic window in closed form.
pub fn window_r(a: i64, b: i64, c: i64, l: [i64; 3]) -> Option<Rational> {
    if !window_is_hyperbolic(a, b, c) {
        return None;
    }
    let (a, b, c) = (a as i128, b as i128, c as i128);
    let (l1, l2, l3) = (l[0] as i128, l[1] as i128, l[2] as i128);
    let num = a * a * l3 * l3 - 2 * a * b * l2 * l3 - 2 * a * c * l1 * l3 - 4 * a * l1 * l2
        + b * b * l2 * l2
        - 2 * b * c * l1 * l2
        - 4 * b * l1 * l3
        + c * c * l1 * l1
        - 4 * c * l2 * l3
        - 4 * (l1 * l1 + l2 * l2 + l3 * l3);
    let den = 2 * (a * a + a * b * c + b * b + c * c - 4);
    Some(Rational::from_bigints(BigInt::from(num), BigInt::from(den)).expect("den > 0"))
}

fn all_pairs_divisible(a: i64, b: i64, c: i64, l: [i64; 3]) -> bool {
    let g = [[2, -a, -b], [-a, 2, -c], [-b, -c, 2]];
    (0..3).all(|i| (0..3).all(|j| i == j || divisibility_ok(l[i], l[j], g[i][j])))
}

fn lambda_triples(lambda_max: i64) -> impl Iterator<Item = [i64; 3]> {
    let r = 1..=lambda_max;
    r.clone().flat_map(move |x| {
        let r = 1..=lambda_max;
        r.clone()
            .flat_map(move |y| (1..=lambda_max).map(move |z| [x, y, z]))
    })
}

/// Every negative Weyl square of a window with `a, c ∈ [0, 2]`,
/// `b ∈ [0, 14]` and `λ_i ≤ λ_max`.
pub fn collect_radii(lambda_max: i64) -> RadiusSet {
    let mut out = RadiusSet::new();
    for l in lambda_triples(lambda_max) {
        for a in 0..=2 {
            for c in 0..=2 {
                for b in 0..=RADIUS_B_MAX {
                    if !all_pairs_divisible(a, b, c, l) {
                        continue;
                    }
                    if let Some(r) = window_r(a, b, c, l) {
                        if r.is_negative() {
                            out.insert(r);
                        }
                    }
                }
            }
        }
    }
    out
}

fn seed_chain(a: i64, b: i64, c: i64, l: [i64; 3]) -> ChainState {
    let w = weyl_vector(&window_gram(a, b, c), l).expect("window is hyperbolic");
    ChainState::window(a, b, c, l, w)
}

/// Windows found by the monotone `b`-scan, indexed by their Weyl square.
///
/// For fixed `(a, c, λ)` the scan for a target `r` walks `b = 0, 1, …`, skips
/// non-hyperbolic windows and windows with `r' < r`, and stops at the first
/// `r' ≥ r`, keeping the window when `r' = r`. Hence a window is found for
/// some target exactly when its `r'` is a strict running maximum along the
/// scan, and it is found for that target only.
#[derive(Clone, Debug, Default)]
pub struct SeedIndex {
    by_r: HashMap<Rational, Vec<ChainState>>,
}

impl SeedIndex {
    /// Builds the index for all targets `≤ r_max`.
    pub fn build(lambda_max: i64, r_max: &Rational) -> Result<Self, EngineError> {
        let mut by_r: HashMap<Rational, Vec<ChainState>> = HashMap::new();
        for l in lambda_triples(lambda_max) {
            for a in 0..=2 {
                for c in 0..=2 {
                    let mut best: Option<Rational> = None;
                    let mut b = 0;
                    loop {
                        if b > SEED_HARD_CAP {
                            return Err(EngineError::MonotonicityCap { a, c, lambda: l });
                        }
                        if let Some(r) = window_r(a, b, c, l) {
                            if best.as_ref().is_none_or(|m| r > *m) {
                                if &r > r_max {
                                    break;
                                }
                                if all_pairs_divisible(a, b, c, l) {
                                    by_r.entry(r.clone())
                                        .or_default()
                                        .push(seed_chain(a, b, c, l));
                                }
                                best = Some(r);
                            }
                        }
                        b += 1;
                    }
                }
            }
        }
        Ok(SeedIndex { by_r })
    }

    pub fn seeds(&self, r: &Rational) -> Vec<ChainState> {
        self.by_r.get(r).cloned().unwrap_or_default()
    }
}

/// The 3-windows of Weyl square `r` reached by the monotone scan.
pub fn seed_triples(r: &Rational, lambda_max: i64) -> Result<Vec<ChainState>, EngineError> {
    Ok(SeedIndex::build(lambda_max, r)?.seeds(r))
}

/// All windows with `b ≤ b_max` and Weyl square exactly `r`, without relying
/// on monotonicity.
pub fn seed_triples_exhaustive(r: &Rational, lambda_max: i64, b_max: i64) -> Vec<ChainState> {
    let mut out = Vec::new();
    for l in lambda_triples(lambda_max) {
        for a in 0..=2 {
            for c in 0..=2 {
                for b in 0..=b_max {
                    if window_r(a, b, c, l).as_ref() == Some(r) && all_pairs_divisible(a, b, c, l) {
                        out.push(seed_chain(a, b, c, l));
                    }
                }
            }
        }
    }
    out
}
