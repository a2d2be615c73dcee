use std::collections::BTreeMap;

use rank3gcm::canonical::{canonical_form, dihedral_images, PackedDatum};
use rank3gcm::gcm::{classify_flags, polygon_table, verify_realization};
use rank3gcm::goldens::{
    fixtures, golden_catalog, parse_catalog, symmetric_matrices, verify_fixture, CATALOG_TEXT,
};
use rank3gcm::linalg::Rational;

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d).unwrap()
}

#[test]
fn every_row_is_a_valid_realization_with_its_r() {
    for row in golden_catalog() {
        let d = row.datum().unwrap();
        let rep = verify_realization(&d);
        assert!(rep.is_valid(), "line {}: {:?}", row.line, rep.failures);
        assert_eq!(rep.r(), Some(&row.r), "line {}", row.line);
    }
}

#[test]
fn table_round_trip_on_every_row() {
    for row in golden_catalog() {
        assert_eq!(
            polygon_table(&row.datum().unwrap()),
            row.table,
            "line {}",
            row.line
        );
    }
}

#[test]
fn per_radius_counts() {
    let mut counts: BTreeMap<Rational, usize> = BTreeMap::new();
    for row in golden_catalog() {
        *counts.entry(row.r).or_default() += 1;
    }
    let expected = [
        (q(-59, 2), 1),
        (q(-22, 1), 1),
        (q(-16, 1), 1),
        (q(-23, 2), 1),
        (q(-10, 1), 1),
        (q(-17, 2), 1),
        (q(-7, 1), 2),
        (q(-6, 1), 1),
        (q(-11, 2), 2),
        (q(-4, 1), 5),
        (q(-7, 2), 1),
        (q(-5, 2), 1),
        (q(-13, 6), 1),
        (q(-17, 8), 1),
        (q(-2, 1), 4),
        (q(-3, 2), 2),
        (q(-1, 1), 6),
        (q(-2, 3), 1),
        (q(-5, 8), 1),
        (q(-1, 2), 6),
        (q(-2, 5), 1),
        (q(-7, 18), 1),
        (q(-1, 4), 2),
        (q(-2, 9), 1),
        (q(-1, 6), 13),
        (q(-1, 8), 1),
        (q(-1, 24), 1),
    ];
    assert_eq!(counts, expected.into_iter().collect());
    assert_eq!(counts.values().sum::<usize>(), 60);
}

#[test]
fn flag_counts() {
    let mut untwisted = 0;
    let mut compact = 0;
    let mut compact_untwisted = 0;
    for row in golden_catalog() {
        let d = row.datum().unwrap();
        let f = classify_flags(&d, &verify_realization(&d).weyl.unwrap()).unwrap();
        untwisted += f.untwisted as usize;
        compact += f.compact as usize;
        compact_untwisted += (f.compact && f.untwisted) as usize;
    }
    assert_eq!((untwisted, compact, compact_untwisted), (16, 7, 4));
}

#[test]
fn rows_are_pairwise_inequivalent() {
    let mut seen = std::collections::BTreeSet::new();
    for row in golden_catalog() {
        let c = canonical_form(&PackedDatum::pack(&row.datum().unwrap())).unwrap();
        assert!(seen.insert(c), "line {} repeats an earlier row", row.line);
    }
}

#[test]
fn canonical_form_is_constant_on_orbits_of_rows() {
    for row in golden_catalog() {
        let p = PackedDatum::pack(&row.datum().unwrap());
        let c = canonical_form(&p).unwrap();
        for img in dihedral_images(&p).unwrap() {
            assert_eq!(canonical_form(&img).unwrap(), c);
        }
    }
}

#[test]
fn symmetric_matrices_are_realizations_with_their_r() {
    let m = symmetric_matrices();
    let names: Vec<&str> = m.iter().map(|x| x.name.as_str()).collect();
    assert_eq!(
        names,
        [
            "1,0", "1,I", "1,II", "1,III", "2,0", "2,I", "2,II", "2,III", "3,0", "3,I", "3,II",
            "3,III"
        ]
    );
    for x in &m {
        let rep = verify_realization(&x.datum().unwrap());
        assert!(rep.is_valid(), "A_{{{}}}", x.name);
        assert_eq!(rep.r(), Some(&x.r), "A_{{{}}}", x.name);
    }
    assert_eq!(m[0].r, q(-23, 2));
    assert_eq!(m[11].r, q(-1, 24));
}

#[test]
fn all_fixtures_pass() {
    let m = symmetric_matrices();
    let fs = fixtures();
    assert_eq!(fs.len(), 12);
    let orders: Vec<usize> = fs.iter().map(|f| f.sym_order).collect();
    assert_eq!(orders, [1, 2, 6, 2, 2, 4, 8, 8, 2, 4, 12, 12]);
    for f in &fs {
        let rep = verify_fixture(f, &m);
        assert!(rep.passed(), "fixture {}: {:?}", f.name, rep.failures);
    }
    let det_3ii = fs.iter().find(|f| f.name == "3,II").unwrap();
    assert_eq!(det_3ii.lattice_det, -288);
}

#[test]
fn corrupted_catalog_row_is_caught() {
    let text = CATALOG_TEXT.replacen("0 1 2\n", "0 1 3\n", 1);
    let rows = parse_catalog(&text).unwrap();
    let bad: Vec<_> = rows
        .iter()
        .filter(|r| {
            let rep = verify_realization(&r.datum().unwrap());
            !rep.is_valid() || rep.r() != Some(&r.r)
        })
        .collect();
    assert_eq!(bad.len(), 1);
}
