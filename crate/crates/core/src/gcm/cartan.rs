use serde::Serialize;

use crate::linalg::Rational;

use super::{divisibility_ok, GcmError, PolygonDatum};

/// A generalized Cartan matrix `A = D B` with `D = diag(ε_i)`,
/// `ε_i = 1 / λ_i²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanMatrix {
    pub entries: Vec<Vec<i64>>,
    pub symmetrizer: Vec<Rational>,
}

/// `b_jk = λ_j λ_k (δ_j, δ_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct SymmetrizedCartan {
    pub entries: Vec<Vec<i64>>,
}

/// `a_jk = 2 (α_j, α_k) / (α_j, α_j) = λ_k (δ_j, δ_k) / λ_j`.
pub fn cartan_matrix(d: &PolygonDatum) -> Result<CartanMatrix, GcmError> {
    let n = d.n();
    let lambda = d.lambda();
    let mut entries = vec![vec![0i64; n]; n];
    for (j, row) in entries.iter_mut().enumerate() {
        for (k, a) in row.iter_mut().enumerate() {
            let g = d.pairing(j, k);
            if !divisibility_ok(lambda[j], lambda[k], g) {
                return Err(GcmError::InvalidRealization(format!(
                    "lambda_{} = {} does not divide lambda_{} * (d{}, d{}) = {}",
                    j + 1,
                    lambda[j],
                    k + 1,
                    j + 1,
                    k + 1,
                    lambda[k] * g
                )));
            }
            *a = lambda[k] * g / lambda[j];
        }
    }
    let symmetrizer = lambda
        .iter()
        .map(|&l| Rational::new(1, l * l).expect("lambda is positive"))
        .collect();
    Ok(CartanMatrix {
        entries,
        symmetrizer,
    })
}

pub fn symmetrized_cartan(d: &PolygonDatum) -> SymmetrizedCartan {
    let n = d.n();
    let lambda = d.lambda();
    let entries = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| lambda[j] * lambda[k] * d.pairing(j, k))
                .collect()
        })
        .collect();
    SymmetrizedCartan { entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(rows: &[&[i64]]) -> PolygonDatum {
        super::super::GeometricRealizationTable::new(rows.iter().map(|r| r.to_vec()).collect())
            .decode()
            .unwrap()
    }

    #[test]
    fn untwisted_cartan_is_gram() {
        let d = datum(&[&[1, 1, 1], &[0, 1, 2]]);
        let a = cartan_matrix(&d).unwrap();
        assert_eq!(
            a.entries,
            vec![vec![2, 0, -2], vec![0, 2, -1], vec![-2, -1, 2]]
        );
        assert_eq!(a.entries, d.int_gram());
        assert_eq!(symmetrized_cartan(&d).entries, d.int_gram());
    }

    #[test]
    fn twisted_entries() {
        // r = -6, lambda = (1, 6, 3, 2)
        let d = datum(&[&[1, 6, 3, 2], &[0, 2, 0, 2], &[3, 6, 3, 6]]);
        let a = cartan_matrix(&d).unwrap();
        assert_eq!(a.entries[1][3], -2);
        assert_eq!(a.entries[3][1], -18);
        assert_eq!(a.entries[0][2], -9);
        assert_eq!(a.entries[2][0], -1);

        // r = -22, lambda = (2, 1, 1), (d1, d3) = -2
        let d = datum(&[&[2, 1, 1], &[0, 1, 2]]);
        let a = cartan_matrix(&d).unwrap();
        assert_eq!(a.entries[0][2], -1);
        assert_eq!(a.entries[2][0], -4);
    }

    #[test]
    fn symmetrized_entries() {
        let d = datum(&[&[1, 2, 2], &[0, 1, 2]]);
        let b = symmetrized_cartan(&d);
        assert_eq!(b.entries[1][1], 8);
        assert_eq!(b.entries[1][2], -4);
        assert_eq!(b.entries[0][2], -4);
        let a = cartan_matrix(&d).unwrap();
        for j in 0..3 {
            for k in 0..3 {
                let l2 = d.lambda()[j] * d.lambda()[j];
                assert_eq!(b.entries[j][k], l2 * a.entries[j][k]);
            }
        }
    }

    #[test]
    fn divisibility_failure() {
        let d = datum(&[&[2, 1, 1], &[0, 1, 1]]);
        assert!(matches!(
            cartan_matrix(&d),
            Err(GcmError::InvalidRealization(_))
        ));
    }
}
