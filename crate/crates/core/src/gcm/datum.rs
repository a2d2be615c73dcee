use crate::linalg::QMatrix;

use super::GcmError;

/// Position of the pair `(i, j)`, `i < j`, in the packed upper triangle of an
/// `n`-sided datum. This is the reference program's packing shifted to
/// 0-based indices.
pub fn packed_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

pub fn packed_len(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Combinatorial data of a closed `n`-sided polygon: the pairings
/// `(δ_i, δ_j)` of its norm-2 side normals and the twisting coefficients
/// `λ_i`. Sides are indexed `0..n` in cyclic order; `(δ_i, δ_i) = 2` is
/// implicit.
///
/// Construction only checks shape (`n ≥ 3`, positive `λ`). The sign and
/// adjacency conditions are checked by [`super::verify_realization`] so that
/// malformed data can still be reported on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolygonDatum {
    n: usize,
    pairings: Vec<i64>,
    lambda: Vec<i64>,
}

impl PolygonDatum {
    /// `pairings` holds `(δ_i, δ_j)` for `i < j` in packed order.
    pub fn new(n: usize, pairings: Vec<i64>, lambda: Vec<i64>) -> Result<Self, GcmError> {
        if n < 3 {
            return Err(GcmError::Shape(format!(
                "a polygon needs at least 3 sides, got {n}"
            )));
        }
        if pairings.len() != packed_len(n) {
            return Err(GcmError::Shape(format!(
                "expected {} pairings for n = {n}, got {}",
                packed_len(n),
                pairings.len()
            )));
        }
        if lambda.len() != n {
            return Err(GcmError::Shape(format!(
                "expected {n} twisting coefficients, got {}",
                lambda.len()
            )));
        }
        if let Some(&bad) = lambda.iter().find(|&&l| l < 1) {
            return Err(GcmError::Shape(format!(
                "twisting coefficient {bad} is not positive"
            )));
        }
        Ok(PolygonDatum {
            n,
            pairings,
            lambda,
        })
    }

    /// Builds a datum from a full symmetric Gram matrix with diagonal 2.
    pub fn from_gram<R: AsRef<[i64]>>(gram: &[R], lambda: Vec<i64>) -> Result<Self, GcmError> {
        let n = gram.len();
        for (i, row) in gram.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(GcmError::Shape("Gram matrix is not square".into()));
            }
            if row[i] != 2 {
                return Err(GcmError::Shape(format!(
                    "diagonal entry {i} is {} not 2",
                    row[i]
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if gram[j].as_ref()[i] != v {
                    return Err(GcmError::Shape(format!(
                        "Gram matrix not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let mut pairings = Vec::with_capacity(packed_len(n));
        for i in 0..n {
            for j in i + 1..n {
                pairings.push(gram[i].as_ref()[j]);
            }
        }
        PolygonDatum::new(n, pairings, lambda)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    /// Packed `(δ_i, δ_j)`, `i < j`.
    pub fn pairings(&self) -> &[i64] {
        &self.pairings
    }

    /// `(δ_i, δ_j)` for any `i, j < n`.
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => 2,
            Less => self.pairings[packed_index(self.n, i, j)],
            Greater => self.pairings[packed_index(self.n, j, i)],
        }
    }

    /// `(δ_i, δ_{i+1})` with the index taken cyclically.
    pub fn adjacent(&self, i: usize) -> i64 {
        self.pairing(i, (i + 1) % self.n)
    }

    pub fn int_gram(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.pairing(i, j)).collect())
            .collect()
    }

    /// Relabels sides so that new side `i` is old side `sigma(i)`.
    pub fn relabel(&self, sigma: impl Fn(usize) -> usize) -> PolygonDatum {
        let n = self.n;
        let map: Vec<usize> = (0..n).map(&sigma).collect();
        let mut pairings = Vec::with_capacity(self.pairings.len());
        for i in 0..n {
            for j in i + 1..n {
                pairings.push(self.pairing(map[i], map[j]));
            }
        }
        let lambda = map.iter().map(|&k| self.lambda[k]).collect();
        PolygonDatum {
            n,
            pairings,
            lambda,
        }
    }
}

/// The Gram matrix `((δ_i, δ_j))` of a polygon or open chain.
pub fn assemble_gram(d: &PolygonDatum) -> QMatrix {
    QMatrix::from_int_rows(&d.int_gram()).expect("Gram rows have equal length")
}
