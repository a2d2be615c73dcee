use std::collections::BTreeSet;

use rank3gcm::canonical::{canonical_datum, PackedDatum};
use rank3gcm::gcm::{verify_realization, PolygonDatum};
use rank3gcm::linalg::Rational;

fn lambda_tuples(n: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| (1..=max).map(move |l| [v.clone(), vec![l]].concat()))
            .collect();
    }
    out
}

pub fn det4(m: &[[i64; 4]; 4]) -> i64 {
    let minor = |r: [usize; 3], c: [usize; 3]| -> i64 {
        m[r[0]][c[0]] * (m[r[1]][c[1]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[1]])
            - m[r[0]][c[1]] * (m[r[1]][c[0]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[0]])
            + m[r[0]][c[2]] * (m[r[1]][c[0]] * m[r[2]][c[1]] - m[r[1]][c[1]] * m[r[2]][c[0]])
    };
    let cols = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];
    (0..4)
        .map(|j| [1, -1, 1, -1][j] * m[0][j] * minor([1, 2, 3], cols[j]))
        .sum()
}

/// Every Gram matrix with diagonal 2, off-diagonal entries in `[-60, 0]`,
/// adjacent entries at least `-2`, and `λ_i ≤ 2`, kept when it verifies with
/// a negative Weyl square.
pub fn brute_force_small_polygons() -> BTreeSet<(Rational, PackedDatum)> {
    let mut out = BTreeSet::new();
    let mut keep = |d: PolygonDatum| {
        let rep = verify_realization(&d);
        if let (true, Some(r)) = (rep.is_valid(), rep.r()) {
            if r.is_negative() {
                out.insert((r.clone(), canonical_datum(&d).1));
            }
        }
    };
    let adj = -2..=0i64;
    for a in adj.clone() {
        for b in adj.clone() {
            for c in adj.clone() {
                for l in lambda_tuples(3, 2) {
                    keep(PolygonDatum::from_gram(&[[2, a, c], [a, 2, b], [c, b, 2]], l).unwrap());
                }
            }
        }
    }
    for a in adj.clone() {
        for b in adj.clone() {
            for c in adj.clone() {
                for e in adj.clone() {
                    for x in -60..=0i64 {
                        for y in -60..=0i64 {
                            let m = [[2, a, x, e], [a, 2, b, y], [x, b, 2, c], [e, y, c, 2]];
                            if det4(&m) != 0 {
                                continue;
                            }
                            for l in lambda_tuples(4, 2) {
                                keep(PolygonDatum::from_gram(&m, l).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }
    out
}
