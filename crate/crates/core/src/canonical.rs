//! Normal forms of polygon data under relabelling of sides by the dihedral
//! group.

use serde::Serialize;

use crate::gcm::{packed_len, DihedralMove, GcmError, PolygonDatum};

/// A datum flattened to `-(δ_j, δ_k)` for `j < k` in packed order followed by
/// `λ_1..λ_n`. Comparing bodies lexicographically orders data.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PackedDatum {
    pub n: usize,
    pub body: Vec<i64>,
}

impl PackedDatum {
    pub fn pack(d: &PolygonDatum) -> Self {
        let mut body: Vec<i64> = d.pairings().iter().map(|&p| -p).collect();
        body.extend_from_slice(d.lambda());
        PackedDatum { n: d.n(), body }
    }

    pub fn unpack(&self) -> Result<PolygonDatum, GcmError> {
        let m = packed_len(self.n);
        if self.body.len() != m + self.n {
            return Err(GcmError::Shape(format!(
                "packed body of length {} does not fit n = {}",
                self.body.len(),
                self.n
            )));
        }
        let pairings = self.body[..m].iter().map(|&p| -p).collect();
        PolygonDatum::new(self.n, pairings, self.body[m..].to_vec())
    }
}

impl From<&PolygonDatum> for PackedDatum {
    fn from(d: &PolygonDatum) -> Self {
        PackedDatum::pack(d)
    }
}

fn images_of(d: &PolygonDatum) -> impl Iterator<Item = PolygonDatum> + '_ {
    DihedralMove::all(d.n()).map(move |m| m.apply(d))
}

/// The `2n` relabellings of `p`: rotations by `0..n`, then reflections.
pub fn dihedral_images(p: &PackedDatum) -> Result<Vec<PackedDatum>, GcmError> {
    let d = p.unpack()?;
    Ok(images_of(&d).map(|e| PackedDatum::pack(&e)).collect())
}

/// Lexicographically smallest dihedral image.
pub fn canonical_form(p: &PackedDatum) -> Result<PackedDatum, GcmError> {
    Ok(canonical_datum(&p.unpack()?).1)
}

/// Canonical representative of a datum together with its packed form.
pub fn canonical_datum(d: &PolygonDatum) -> (PolygonDatum, PackedDatum) {
    images_of(d)
        .map(|e| {
            let p = PackedDatum::pack(&e);
            (e, p)
        })
        .min_by(|a, b| a.1.body.cmp(&b.1.body))
        .expect("a polygon has at least one image")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcm::{polygon_table, symmetry_group, GeometricRealizationTable};
    use proptest::prelude::*;

    fn datum(rows: &[&[i64]]) -> PolygonDatum {
        GeometricRealizationTable::new(rows.iter().map(|r| r.to_vec()).collect())
            .decode()
            .unwrap()
    }

    #[test]
    fn fully_symmetric_orbit() {
        let p = PackedDatum::pack(&datum(&[&[1, 1, 1, 1], &[2, 2, 2, 2], &[6, 6, 6, 6]]));
        let imgs = dihedral_images(&p).unwrap();
        assert_eq!(imgs.len(), 8);
        assert!(imgs.iter().all(|q| *q == p));
    }

    #[test]
    fn rotation_of_quadrangle() {
        let p = PackedDatum::pack(&datum(&[&[1, 3, 3, 1], &[0, 1, 0, 1], &[3, 3, 3, 3]]));
        let imgs = dihedral_images(&p).unwrap();
        assert_eq!(imgs[0], p);
        let t = polygon_table(&imgs[1].unpack().unwrap());
        assert_eq!(
            t.rows(),
            &[vec![3, 3, 1, 1], vec![1, 0, 1, 0], vec![3, 3, 3, 3]]
        );
    }

    #[test]
    fn canonical_examples() {
        let d = datum(&[&[1, 1, 1], &[0, 1, 2]]);
        let (c, p) = canonical_datum(&d);
        assert_eq!(p, PackedDatum::pack(&c));
        // min over images of [-(d1,d2), -(d1,d3), -(d2,d3), lambda]
        assert_eq!(p.body, vec![0, 1, 2, 1, 1, 1]);
    }

    #[test]
    fn unpack_rejects_bad_length() {
        let p = PackedDatum {
            n: 3,
            body: vec![0, 1, 2, 1, 1],
        };
        assert!(p.unpack().is_err());
    }

    fn arb_datum() -> impl Strategy<Value = PolygonDatum> {
        (3usize..=8).prop_flat_map(|n| {
            let m = n * (n - 1) / 2;
            (
                prop::collection::vec(-3i64..=0, m),
                prop::collection::vec(1i64..=3, n),
            )
                .prop_map(move |(p, l)| PolygonDatum::new(n, p, l).unwrap())
        })
    }

    proptest! {
        #[test]
        fn canonical_is_idempotent_and_orbit_constant(d in arb_datum(), k in 0usize..16) {
            let p = PackedDatum::pack(&d);
            let c = canonical_form(&p).unwrap();
            prop_assert_eq!(&canonical_form(&c).unwrap(), &c);
            let imgs = dihedral_images(&p).unwrap();
            prop_assert!(imgs.contains(&p));
            let q = &imgs[k % imgs.len()];
            prop_assert_eq!(&canonical_form(q).unwrap(), &c);
            prop_assert!(imgs.iter().all(|i| c.body <= i.body));
        }

        #[test]
        fn orbit_stabilizer(d in arb_datum()) {
            let p = PackedDatum::pack(&d);
            let imgs = dihedral_images(&p).unwrap();
            let mut distinct = imgs.clone();
            distinct.sort();
            distinct.dedup();
            prop_assert_eq!(distinct.len() * symmetry_group(&d).order, 2 * d.n());
            // closed under the two generators
            for q in &distinct {
                let e = q.unpack().unwrap();
                for m in [DihedralMove::Rotation(1), DihedralMove::Reflection(0)] {
                    prop_assert!(distinct.contains(&PackedDatum::pack(&m.apply(&e))));
                }
            }
        }
    }
}
