use std::fmt;

use serde::Serialize;

use super::{packed_index, packed_len, GcmError, PolygonDatum};

/// The tabular encoding G(A) of a realization: row 0 holds `λ_1..λ_n`, row
/// `i` holds `-(δ_j, δ_{j+i})` for `j = 1..n` with indices taken mod `n`.
/// There are `1 + ⌊n/2⌋` rows. For even `n` the last row lists every
/// antipodal pair twice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct GeometricRealizationTable {
    rows: Vec<Vec<i64>>,
}

impl GeometricRealizationTable {
    /// Wraps raw rows; validation happens in [`Self::decode`].
    pub fn new(rows: Vec<Vec<i64>>) -> Self {
        GeometricRealizationTable { rows }
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<i64>> {
        self.rows
    }

    pub fn decode(&self) -> Result<PolygonDatum, GcmError> {
        let err = |m: String| Err(GcmError::Decode(m));
        let Some(first) = self.rows.first() else {
            return err("empty table".into());
        };
        let n = first.len();
        if n < 3 {
            return err(format!("first row has {n} entries, need at least 3"));
        }
        if self.rows.len() != 1 + n / 2 {
            return err(format!(
                "a table with {n} columns needs {} rows, found {}",
                1 + n / 2,
                self.rows.len()
            ));
        }
        if let Some((i, row)) = self.rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return err(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            ));
        }
        if let Some(&l) = first.iter().find(|&&l| l < 1) {
            return err(format!("twisting coefficient {l} is not positive"));
        }
        let mut pairings: Vec<Option<i64>> = vec![None; packed_len(n)];
        for (i, row) in self.rows.iter().enumerate().skip(1) {
            for (j, &v) in row.iter().enumerate() {
                if v < 0 {
                    return err(format!(
                        "row {} column {} is {v}: pairings must be non-positive",
                        i + 1,
                        j + 1
                    ));
                }
                let k = (j + i) % n;
                let slot = &mut pairings[packed_index(n, j.min(k), j.max(k))];
                match *slot {
                    Some(prev) if prev != -v => {
                        return err(format!(
                            "pairing (d{}, d{}) given as both {} and {}",
                            j + 1,
                            k + 1,
                            -prev,
                            v
                        ));
                    }
                    _ => *slot = Some(-v),
                }
            }
        }
        let pairings = pairings
            .into_iter()
            .map(|p| p.expect("every pair is covered"))
            .collect();
        PolygonDatum::new(n, pairings, first.clone()).map_err(|e| GcmError::Decode(e.to_string()))
    }
}

/// Encodes a datum in G(A) layout.
pub fn polygon_table(d: &PolygonDatum) -> GeometricRealizationTable {
    let n = d.n();
    let mut rows = vec![d.lambda().to_vec()];
    for i in 1..=n / 2 {
        rows.push((0..n).map(|j| -d.pairing(j, (j + i) % n)).collect());
    }
    GeometricRealizationTable { rows }
}

impl fmt::Display for GeometricRealizationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(rows: &[&[i64]]) -> GeometricRealizationTable {
        GeometricRealizationTable::new(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn encode_examples() {
        let d = PolygonDatum::new(3, vec![0, -1, -2], vec![1, 1, 1]).unwrap();
        assert_eq!(polygon_table(&d), table(&[&[1, 1, 1], &[0, 2, 1]]));

        let d = PolygonDatum::from_gram(
            &[
                [2, 0, -3, -1],
                [0, 2, -1, -3],
                [-3, -1, 2, 0],
                [-1, -3, 0, 2],
            ],
            vec![1, 3, 3, 1],
        )
        .unwrap();
        assert_eq!(
            polygon_table(&d),
            table(&[&[1, 3, 3, 1], &[0, 1, 0, 1], &[3, 3, 3, 3]])
        );
    }

    #[test]
    fn decode_round_trip() {
        let t = table(&[&[1, 1, 1], &[0, 1, 2]]);
        let d = t.decode().unwrap();
        assert_eq!(
            d.int_gram(),
            vec![vec![2, 0, -2], vec![0, 2, -1], vec![-2, -1, 2]]
        );
        assert_eq!(polygon_table(&d), t);

        let t = table(&[
            &[1, 3, 4, 3, 1, 3, 4, 3],
            &[0, 0, 0, 0, 0, 0, 0, 0],
            &[4, 4, 4, 14, 4, 4, 4, 14],
            &[6, 6, 24, 24, 6, 6, 24, 24],
            &[4, 20, 34, 20, 4, 20, 34, 20],
        ]);
        assert_eq!(polygon_table(&t.decode().unwrap()), t);
    }

    #[test]
    fn decode_errors() {
        assert!(table(&[]).decode().is_err());
        assert!(table(&[&[1, 1]]).decode().is_err());
        assert!(table(&[&[1, 1, 1]]).decode().is_err());
        assert!(table(&[&[1, 1, 1], &[0, 1]]).decode().is_err());
        assert!(table(&[&[1, 1, 1], &[0, -1, 2]]).decode().is_err());
        assert!(table(&[&[1, 0, 1], &[0, 1, 2]]).decode().is_err());
        // antipodal entries disagree
        assert!(table(&[&[1, 1, 1, 1], &[0, 2, 0, 2], &[4, 4, 5, 4]])
            .decode()
            .is_err());
    }

    #[test]
    fn display_is_space_separated() {
        let t = table(&[&[1, 2, 2], &[0, 1, 2]]);
        assert_eq!(t.to_string(), "1 2 2\n0 1 2");
    }
}
