use serde::{Deserialize, Serialize};

use crate::linalg::{QMatrix, Rational};

use super::GcmError;

/// A lattice Weyl vector `ρ` expressed in the basis of three consecutive side
/// normals, together with its square `r = (ρ, ρ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylData {
    pub coords: [Rational; 3],
    pub r: Rational,
}

/// Solves `(ρ, δ_i) = -λ_i`, `i = 1, 2, 3`, in the basis `δ_1, δ_2, δ_3` with
/// Gram matrix `g3`. The Gram matrix must be hyperbolic (`det < 0`).
pub fn weyl_vector(g3: &QMatrix, lambda: [i64; 3]) -> Result<WeylData, GcmError> {
    if g3.rows() != 3 || g3.cols() != 3 {
        return Err(GcmError::Shape(format!(
            "expected a 3x3 Gram matrix, got {}x{}",
            g3.rows(),
            g3.cols()
        )));
    }
    let det = g3.det()?;
    if !det.is_negative() {
        return Err(GcmError::NotHyperbolic { det });
    }
    let rhs: Vec<Rational> = lambda.iter().map(|&l| Rational::from(-l)).collect();
    let x = g3.solve(&rhs)?;
    // (ρ, ρ) = Σ x_i (ρ, δ_i) = -Σ λ_i x_i
    let r = -x
        .iter()
        .zip(lambda)
        .map(|(xi, l)| xi * &Rational::from(l))
        .sum::<Rational>();
    let coords = [x[0].clone(), x[1].clone(), x[2].clone()];
    Ok(WeylData { coords, r })
}

/// Gram matrix of a 3-window from `a = -(δ1,δ2)`, `b = -(δ1,δ3)`,
/// `c = -(δ2,δ3)`.
pub fn window_gram(a: i64, b: i64, c: i64) -> QMatrix {
    QMatrix::from_int_rows(&[[2, -a, -b], [-a, 2, -c], [-b, -c, 2]]).expect("3x3")
}

/// `λ_i (δ_i, δ_i) | 2 λ_j (δ_i, δ_j)`, which with `(δ_i, δ_i) = 2` reads
/// `λ_i | λ_j g_ij`.
pub fn divisibility_ok(lambda_i: i64, lambda_j: i64, g_ij: i64) -> bool {
    (lambda_j * g_ij) % lambda_i == 0
}

/// Reflection `x ↦ x - (x, δ_i) δ_i` in the norm-2 side normal `δ_i`, with `x`
/// in the basis `δ_1, δ_2, δ_3` whose Gram matrix is `g3`. `i` is 0-based.
pub fn reflect(x: &[Rational; 3], i: usize, g3: &QMatrix) -> [Rational; 3] {
    assert!(i < 3, "side index {i} out of range");
    let pairing: Rational = (0..3).map(|j| &x[j] * &g3[(j, i)]).sum();
    let mut out = x.clone();
    out[i] -= &pairing;
    out
}
