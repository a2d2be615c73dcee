use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::gcm::{divisibility_ok, packed_len, PolygonDatum};
use crate::linalg::{QMatrix, Rational};

use super::ChainState;

/// Splits chains by their end pairing: `(δ_1, δ_len) ≥ -2` closes the chain
/// into a polygon, anything smaller leaves it open. Closed polygons whose
/// `λ` are not coprime are dropped.
pub fn partition_closed(k: Vec<ChainState>) -> (Vec<PolygonDatum>, Vec<ChainState>) {
    let mut closed = Vec::new();
    let mut open = Vec::new();
    for chain in k {
        if chain.end_pairing() >= -2 {
            if lambda_gcd(chain.lambda()) == 1 {
                closed.push(chain.to_datum());
            }
        } else {
            open.push(chain);
        }
    }
    (closed, open)
}

pub(crate) fn lambda_gcd(l: &[i64]) -> i64 {
    use num_integer::Integer;
    l.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Result of one extension round.
#[derive(Clone, Debug, Default)]
pub struct Extension {
    pub chains: Vec<ChainState>,
    pub diagnostics: Vec<String>,
}

/// Glues every pair `(X, Y)` of open chains of length `n - 1` where the last
/// `n - 2` sides of `X` coincide with the first `n - 2` sides of `Y`, solving
/// for the one unknown pairing `(δ_1, δ_n)`.
pub fn extend_step(extendable: &[ChainState], lambda_max: i64) -> Extension {
    let mut out = Extension::default();
    let Some(first) = extendable.first() else {
        return out;
    };
    let m = first.len();
    let mut by_prefix: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    for (i, y) in extendable.iter().enumerate() {
        by_prefix
            .entry(y.segment_key(0, m - 1))
            .or_default()
            .push(i);
    }
    let tails: Vec<Option<[Rational; 3]>> = if m >= 4 {
        extendable.iter().map(|y| Some(y.tail())).collect()
    } else {
        vec![None; extendable.len()]
    };
    for x in extendable {
        let Some(ys) = by_prefix.get(&x.segment_key(1, m - 1)) else {
            continue;
        };
        for &yi in ys {
            let y = &extendable[yi];
            let l1 = x.lambda()[0];
            let ln = y.lambda()[m - 1];
            if ln > lambda_max {
                continue;
            }
            let candidates = match &tails[yi] {
                Some(e) => glue_by_tail(x, e).into_iter().collect(),
                None => glue_quadrangle(x, y, &mut out.diagnostics),
            };
            for g in candidates {
                if g > 0 || !divisibility_ok(l1, ln, g) || !divisibility_ok(ln, l1, g) {
                    continue;
                }
                out.chains.push(join(x, y, g));
            }
        }
    }
    out
}

/// `(δ_1, δ_n) = e_1 (δ_1,δ_2) + e_2 (δ_1,δ_3) + e_3 (δ_1,δ_4)` with `e` the
/// coordinates of `δ_n` in `(δ_2, δ_3, δ_4)`.
fn glue_by_tail(x: &ChainState, e: &[Rational; 3]) -> Option<i64> {
    let g: Rational = (0..3)
        .map(|t| &e[t] * &Rational::from(x.pairing(0, t + 1)))
        .sum();
    g.to_i64()
}

fn quadrangle_gram(x: &ChainState, y: &ChainState, g14: i64) -> QMatrix {
    let p = |i: usize, j: usize| -> i64 {
        match (i.min(j), i.max(j)) {
            (0, 3) => g14,
            (i, j) if j <= 2 => x.pairing(i, j),
            (i, j) => y.pairing(i - 1, j - 1),
        }
    };
    let rows: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| p(i, j)).collect()).collect();
    QMatrix::from_int_rows(&rows).expect("4x4")
}

/// Candidates for `(δ_1, δ_4)` when gluing two windows. Normally the Weyl
/// vector equation `(ρ, δ_4) = -λ_4` fixes it; when the first coordinate of
/// `ρ` vanishes the rank condition is solved instead.
fn glue_quadrangle(x: &ChainState, y: &ChainState, diagnostics: &mut Vec<String>) -> Vec<i64> {
    let ra = &x.weyl().coords;
    let l4 = Rational::from(y.lambda()[2]);
    let g24 = Rational::from(y.pairing(0, 2));
    let g34 = Rational::from(y.pairing(1, 2));
    let rest = &(&ra[1] * &g24) + &(&ra[2] * &g34);
    let det_at = |t: i64| quadrangle_gram(x, y, t).det().expect("square");
    if !ra[0].is_zero() {
        let g14 = (-l4 - rest) / ra[0].clone();
        return match g14.to_i64() {
            Some(t) if det_at(t).is_zero() => vec![t],
            _ => vec![],
        };
    }
    if rest != -l4 {
        return vec![];
    }
    // det G(t) = A t² + B t + C
    let c0 = det_at(0);
    let (p1, m1) = (det_at(1), det_at(-1));
    let two = Rational::from(2);
    let qa = (&(&p1 + &m1) / &two) - c0.clone();
    let qb = &(&p1 - &m1) / &two;
    let to_int = |v: &Rational| -> BigInt {
        assert!(
            v.is_integer(),
            "determinants of integer matrices are integers"
        );
        v.numer().clone()
    };
    let (qa, qb, qc) = (to_int(&qa), to_int(&qb), to_int(&c0));
    let mut roots = Vec::new();
    if qa.is_zero() {
        if qb.is_zero() {
            if qc.is_zero() {
                diagnostics.push(format!(
                    "rank condition does not fix (d1, d4) for windows {:?} / {:?}; skipped",
                    x.window_at(0),
                    y.window_at(0)
                ));
            }
            return roots;
        }
        if (&qc % &qb).is_zero() {
            roots.extend((-&qc / &qb).to_i64());
        }
        return roots;
    }
    let disc = &qb * &qb - BigInt::from(4) * &qa * &qc;
    if disc.is_negative() {
        return roots;
    }
    let s = disc.sqrt();
    if &s * &s != disc {
        return roots;
    }
    for num in [-&qb + &s, -&qb - &s] {
        let den = BigInt::from(2) * &qa;
        if (&num % &den).is_zero() {
            if let Some(t) = (num / den).to_i64() {
                if !roots.contains(&t) {
                    roots.push(t);
                }
            }
        }
    }
    roots
}

fn join(x: &ChainState, y: &ChainState, g1n: i64) -> ChainState {
    let n = x.len() + 1;
    let mut pairings = Vec::with_capacity(packed_len(n));
    for i in 0..n {
        for j in i + 1..n {
            pairings.push(match (i, j) {
                (0, j) if j == n - 1 => g1n,
                (i, j) if j < n - 1 => x.pairing(i, j),
                (i, j) => y.pairing(i - 1, j - 1),
            });
        }
    }
    let mut lambda = x.lambda().to_vec();
    lambda.push(y.lambda()[n - 2]);
    ChainState::from_parts(pairings, lambda, x.weyl_arc().clone())
}
