use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::linalg::{QMatrix, Rational};

use super::{assemble_gram, divisibility_ok, GcmError, PolygonDatum, WeylData};

/// A single failed condition of [`verify_realization`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    /// `(δ_i, δ_j) < -2` for cyclically adjacent `i, j`.
    Adjacent {
        i: usize,
        j: usize,
        value: i64,
    },
    /// `(δ_i, δ_j) > 0`.
    PositivePairing {
        i: usize,
        j: usize,
        value: i64,
    },
    /// `λ_i ∤ λ_j (δ_i, δ_j)`.
    Divisibility {
        i: usize,
        j: usize,
    },
    NotCoprime {
        gcd: i64,
    },
    GramRank {
        rank: usize,
    },
    /// Rank of the λ row stacked on the Gram matrix.
    CRank {
        rank: usize,
    },
    /// No three sides span a hyperbolic plane.
    NoHyperbolicBasis,
    /// `(ρ, δ_i) ≠ -λ_i`.
    Rho {
        i: usize,
        value: Rational,
    },
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Adjacent { i, j, value } => {
                write!(
                    f,
                    "adjacent pairing (d{}, d{}) = {value} < -2",
                    i + 1,
                    j + 1
                )
            }
            Check::PositivePairing { i, j, value } => {
                write!(f, "pairing (d{}, d{}) = {value} is positive", i + 1, j + 1)
            }
            Check::Divisibility { i, j } => write!(
                f,
                "lambda_{} does not divide lambda_{} * (d{}, d{})",
                i + 1,
                j + 1,
                i + 1,
                j + 1
            ),
            Check::NotCoprime { gcd } => write!(f, "twisting coefficients have gcd {gcd}"),
            Check::GramRank { rank } => write!(f, "Gram matrix has rank {rank}, expected 3"),
            Check::CRank { rank } => write!(f, "matrix C has rank {rank}, expected 3"),
            Check::NoHyperbolicBasis => write!(f, "no three sides span a hyperbolic plane"),
            Check::Rho { i, value } => {
                write!(
                    f,
                    "(rho, d{}) = {value}, expected minus lambda_{}",
                    i + 1,
                    i + 1
                )
            }
        }
    }
}

/// Outcome of [`verify_realization`]. `weyl` is present whenever a hyperbolic
/// basis triple was found; its coordinates refer to the sides in `basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub failures: Vec<Check>,
    pub basis: Option<[usize; 3]>,
    pub weyl: Option<WeylData>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    /// The Weyl square, if a Weyl vector exists.
    pub fn r(&self) -> Option<&Rational> {
        match (
            &self.weyl,
            self.failures.iter().any(|c| matches!(c, Check::Rho { .. })),
        ) {
            (Some(w), false) => Some(&w.r),
            _ => None,
        }
    }
}

/// Checks every condition a closed realization must satisfy and collects all
/// failures.
///
/// The Weyl vector is solved on the lexicographically first triple of sides
/// whose Gram minor is non-zero, so the result does not depend on where the
/// cyclic labelling starts.
pub fn verify_realization(d: &PolygonDatum) -> VerificationReport {
    let n = d.n();
    let lambda = d.lambda();
    let mut failures = Vec::new();

    for i in 0..n {
        let v = d.adjacent(i);
        if v < -2 {
            failures.push(Check::Adjacent {
                i,
                j: (i + 1) % n,
                value: v,
            });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let v = d.pairing(i, j);
            if v > 0 {
                failures.push(Check::PositivePairing { i, j, value: v });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && !divisibility_ok(lambda[i], lambda[j], d.pairing(i, j)) {
                failures.push(Check::Divisibility { i, j });
            }
        }
    }
    let gcd = lambda.iter().fold(0i64, |g, &l| g.gcd(&l));
    if gcd != 1 {
        failures.push(Check::NotCoprime { gcd });
    }

    let gram = assemble_gram(d);
    let rank = gram.rank();
    if rank != 3 {
        failures.push(Check::GramRank { rank });
    }
    let c_rank = c_matrix(d, &gram).rank();
    if c_rank != 3 {
        failures.push(Check::CRank { rank: c_rank });
    }

    let (basis, weyl) = match weyl_on_first_basis(d, &gram) {
        Some((basis, w)) => {
            for m in 0..n {
                let value: Rational = (0..3)
                    .map(|t| &w.coords[t] * &Rational::from(d.pairing(basis[t], m)))
                    .sum();
                if value != Rational::from(-lambda[m]) {
                    failures.push(Check::Rho { i: m, value });
                }
            }
            (Some(basis), Some(w))
        }
        None => {
            failures.push(Check::NoHyperbolicBasis);
            (None, None)
        }
    };
    VerificationReport {
        failures,
        basis,
        weyl,
    }
}

/// The `(n+1) × n` matrix with `λ` atop the Gram rows.
fn c_matrix(d: &PolygonDatum, gram: &QMatrix) -> QMatrix {
    let n = d.n();
    let mut entries: Vec<Rational> = d.lambda().iter().map(|&l| Rational::from(l)).collect();
    entries.extend(gram.entries().iter().cloned());
    QMatrix::from_entries(n + 1, n, entries).expect("shape is (n+1) x n")
}

fn weyl_on_first_basis(d: &PolygonDatum, gram: &QMatrix) -> Option<([usize; 3], WeylData)> {
    let n = d.n();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let idx = [i, j, k];
                let g3 = gram.submatrix(&idx, &idx);
                let det = g3.det().expect("square");
                if det.is_zero() {
                    continue;
                }
                let lambda = [d.lambda()[i], d.lambda()[j], d.lambda()[k]];
                // A positive minor means a positive definite plane.
                return super::weyl_vector(&g3, lambda).ok().map(|w| (idx, w));
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GcmType {
    Elliptic,
    Parabolic,
}

impl fmt::Display for GcmType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GcmType::Elliptic => "elliptic",
            GcmType::Parabolic => "parabolic",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Flags {
    #[serde(rename = "type")]
    pub kind: GcmType,
    /// No two adjacent sides are parallel.
    pub compact: bool,
    /// All `λ_i = 1`.
    pub untwisted: bool,
}

pub fn classify_flags(d: &PolygonDatum, w: &WeylData) -> Result<Flags, GcmError> {
    let kind = if w.r.is_negative() {
        GcmType::Elliptic
    } else if w.r.is_zero() {
        GcmType::Parabolic
    } else {
        return Err(GcmError::PositiveWeylSquare(w.r.clone()));
    };
    Ok(Flags {
        kind,
        compact: (0..d.n()).all(|i| d.adjacent(i) != -2),
        untwisted: d.lambda().iter().all(|&l| l == 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcm::GeometricRealizationTable;

    fn datum(rows: &[&[i64]]) -> PolygonDatum {
        GeometricRealizationTable::new(rows.iter().map(|r| r.to_vec()).collect())
            .decode()
            .unwrap()
    }

    #[test]
    fn valid_rows() {
        for (rows, r) in [
            (
                vec![vec![1, 2, 2], vec![0, 1, 2]],
                Rational::new(-59, 2).unwrap(),
            ),
            (vec![vec![2, 1, 1], vec![0, 1, 2]], Rational::from(-22)),
            (
                vec![vec![1, 3, 3, 1], vec![0, 1, 0, 1], vec![3, 3, 3, 3]],
                Rational::from(-7),
            ),
            (
                vec![vec![1, 1, 1, 1], vec![1, 1, 1, 1], vec![4, 4, 4, 4]],
                Rational::from(-1),
            ),
        ] {
            let d = GeometricRealizationTable::new(rows).decode().unwrap();
            let rep = verify_realization(&d);
            assert!(rep.is_valid(), "{:?}", rep.failures);
            assert_eq!(rep.r(), Some(&r));
        }
    }

    #[test]
    fn changed_lambda_is_invalid() {
        let rep = verify_realization(&datum(&[&[2, 1, 2], &[0, 1, 2]]));
        assert!(!rep.is_valid());
        assert!(rep.failures.contains(&Check::Divisibility { i: 2, j: 1 }));
        // a triangle always has a Weyl vector, but not the old one
        assert_ne!(rep.weyl.unwrap().r, Rational::from(-22));
        assert!(!rep
            .failures
            .iter()
            .any(|c| matches!(c, Check::NotCoprime { .. })));
    }

    #[test]
    fn adjacent_minus_three_is_invalid() {
        let rep = verify_realization(&datum(&[&[1, 1, 1], &[0, 3, 2]]));
        assert!(rep.failures.contains(&Check::Adjacent {
            i: 1,
            j: 2,
            value: -3
        }));
    }

    #[test]
    fn reports_every_failure() {
        let d = PolygonDatum::new(3, vec![1, -3, -3], vec![2, 2, 2]).unwrap();
        let rep = verify_realization(&d);
        assert!(rep.failures.contains(&Check::NotCoprime { gcd: 2 }));
        assert!(rep.failures.contains(&Check::PositivePairing {
            i: 0,
            j: 1,
            value: 1
        }));
        assert!(
            rep.failures
                .iter()
                .filter(|c| matches!(c, Check::Adjacent { .. }))
                .count()
                == 2
        );
    }

    #[test]
    fn non_hyperbolic_is_invalid() {
        // Affine A_2^(1): rank 2, no hyperbolic triple.
        let rep = verify_realization(&datum(&[&[1, 1, 1], &[1, 1, 1]]));
        assert!(rep.failures.contains(&Check::GramRank { rank: 2 }));
        assert!(rep.failures.contains(&Check::NoHyperbolicBasis));
    }

    #[test]
    fn flags_examples() {
        let cases: [(&[&[i64]], bool, bool); 3] = [
            (&[&[1, 1, 1], &[0, 1, 2]], false, true),
            (&[&[1, 3, 3, 1], &[0, 1, 0, 1], &[3, 3, 3, 3]], true, false),
            (&[&[1, 1, 1, 1], &[1, 1, 1, 1], &[4, 4, 4, 4]], true, true),
        ];
        for (rows, compact, untwisted) in cases {
            let d = datum(rows);
            let w = verify_realization(&d).weyl.unwrap();
            let f = classify_flags(&d, &w).unwrap();
            assert_eq!(f.kind, GcmType::Elliptic);
            assert_eq!((f.compact, f.untwisted), (compact, untwisted));
            let rotated = d.relabel(|i| (i + 1) % d.n());
            let mirrored = d.relabel(|i| (d.n() - i) % d.n());
            for e in [rotated, mirrored] {
                let w = verify_realization(&e).weyl.unwrap();
                assert_eq!(classify_flags(&e, &w).unwrap(), f);
            }
        }
    }

    #[test]
    fn positive_square_is_rejected() {
        let d = datum(&[&[1, 1, 1], &[0, 1, 2]]);
        let w = WeylData {
            coords: [1.into(), 0.into(), 0.into()],
            r: 1.into(),
        };
        assert!(matches!(
            classify_flags(&d, &w),
            Err(GcmError::PositiveWeylSquare(_))
        ));
    }
}
