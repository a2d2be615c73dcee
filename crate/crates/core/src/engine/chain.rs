use std::sync::Arc;

use crate::gcm::{packed_index, packed_len, window_gram, PolygonDatum, WeylData};
use crate::linalg::Rational;

/// An open chain `δ_1..δ_len` of consecutive sides. Only `(δ_i, δ_{i+1})`
/// must lie in `{0, -1, -2}`; the pair `(δ_1, δ_len)` is not adjacent yet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainState {
    /// `(δ_i, δ_j)` for `i < j` in packed order for `len` sides.
    pairings: Vec<i64>,
    lambda: Vec<i64>,
    /// `ρ` in the basis of the first three sides; shared along a family.
    weyl: Arc<WeylData>,
}

impl ChainState {
    /// A 3-window with `a = -(δ1,δ2)`, `b = -(δ1,δ3)`, `c = -(δ2,δ3)`.
    pub fn window(a: i64, b: i64, c: i64, lambda: [i64; 3], weyl: WeylData) -> Self {
        ChainState {
            pairings: vec![-a, -b, -c],
            lambda: lambda.to_vec(),
            weyl: Arc::new(weyl),
        }
    }

    pub(crate) fn from_parts(pairings: Vec<i64>, lambda: Vec<i64>, weyl: Arc<WeylData>) -> Self {
        debug_assert_eq!(pairings.len(), packed_len(lambda.len()));
        ChainState {
            pairings,
            lambda,
            weyl,
        }
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    pub fn pairings(&self) -> &[i64] {
        &self.pairings
    }

    pub fn weyl(&self) -> &WeylData {
        &self.weyl
    }

    pub(crate) fn weyl_arc(&self) -> &Arc<WeylData> {
        &self.weyl
    }

    pub fn r(&self) -> &Rational {
        &self.weyl.r
    }

    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => 2,
            Less => self.pairings[packed_index(self.len(), i, j)],
            Greater => self.pairings[packed_index(self.len(), j, i)],
        }
    }

    /// `(δ_1, δ_len)`.
    pub fn end_pairing(&self) -> i64 {
        self.pairing(0, self.len() - 1)
    }

    /// Pairings and `λ` of the sides `from..from + count`.
    pub(crate) fn segment_key(&self, from: usize, count: usize) -> Vec<i64> {
        let mut key = Vec::with_capacity(packed_len(count) + count);
        for i in from..from + count {
            for j in i + 1..from + count {
                key.push(self.pairing(i, j));
            }
        }
        key.extend_from_slice(&self.lambda[from..from + count]);
        key
    }

    /// `(-(δ_i,δ_{i+1}), -(δ_i,δ_{i+2}), -(δ_{i+1},δ_{i+2}), λ_i, λ_{i+1}, λ_{i+2})`.
    pub fn window_at(&self, i: usize) -> [i64; 6] {
        [
            -self.pairing(i, i + 1),
            -self.pairing(i, i + 2),
            -self.pairing(i + 1, i + 2),
            self.lambda[i],
            self.lambda[i + 1],
            self.lambda[i + 2],
        ]
    }

    /// Coordinates of the last side in the basis of the first three.
    pub fn tail(&self) -> [Rational; 3] {
        let n = self.len();
        let g3 = window_gram(
            -self.pairing(0, 1),
            -self.pairing(0, 2),
            -self.pairing(1, 2),
        );
        let rhs: Vec<Rational> = (0..3)
            .map(|i| Rational::from(self.pairing(i, n - 1)))
            .collect();
        let e = g3.solve(&rhs).expect("the first window is hyperbolic");
        [e[0].clone(), e[1].clone(), e[2].clone()]
    }

    /// Closes the chain into a polygon; `(δ_len, δ_1)` becomes adjacent.
    pub fn to_datum(&self) -> PolygonDatum {
        PolygonDatum::new(self.len(), self.pairings.clone(), self.lambda.clone())
            .expect("chains have at least three sides")
    }
}
