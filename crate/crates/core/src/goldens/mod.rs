//! Embedded reference data: the catalogue of 60 realizations, the twelve
//! symmetric matrices and their explicit lattice realizations.
//!
//! Catalogue and matrix files share one plain-text format. Each block is a
//! few `key = value` lines (`r = p/q`, optionally `name = ...`) followed by
//! rows of space-separated integers; blocks are separated by blank lines and
//! `#` starts a comment line. A catalogue block's rows are the G(A) table.

mod text;

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Deserialize;
use thiserror::Error;

use crate::canonical::{canonical_datum, PackedDatum};
use crate::engine::CatalogRecord;
use crate::gcm::{symmetry_group, GcmError, GeometricRealizationTable, PolygonDatum};
use crate::linalg::{QMatrix, Rational};

pub use text::{parse_blocks, Block};

pub const CATALOG_TEXT: &str = include_str!("../../data/catalog.txt");
pub const SYMMETRIC_TEXT: &str = include_str!("../../data/symmetric.txt");
pub const FIXTURES_TOML: &str = include_str!("../../data/fixtures.toml");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoldenError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("block at line {line}: {source}")]
    Block { line: usize, source: GcmError },
    #[error("fixture file: {0}")]
    Fixture(String),
}

/// One realization of the reference catalogue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRow {
    pub line: usize,
    pub r: Rational,
    pub table: GeometricRealizationTable,
}

impl CatalogRow {
    pub fn datum(&self) -> Result<PolygonDatum, GcmError> {
        self.table.decode()
    }
}

fn parse_r(b: &Block) -> Result<Rational, GoldenError> {
    b.require("r")?
        .parse()
        .map_err(|e: crate::linalg::LinalgError| GoldenError::Syntax {
            line: b.line,
            msg: e.to_string(),
        })
}

/// Parses catalogue text. Tables are not decoded here so that malformed
/// rows can still be reported per block.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogRow>, GoldenError> {
    parse_blocks(text)?
        .into_iter()
        .map(|b| {
            if b.rows.is_empty() {
                return Err(GoldenError::Syntax {
                    line: b.line,
                    msg: "block has no table".into(),
                });
            }
            Ok(CatalogRow {
                line: b.line,
                r: parse_r(&b)?,
                table: GeometricRealizationTable::new(b.rows),
            })
        })
        .collect()
}

/// The 60 reference realizations, ordered by `r` from `-59/2` to `-1/24`.
pub fn golden_catalog() -> Vec<CatalogRow> {
    parse_catalog(CATALOG_TEXT).expect("embedded catalogue parses")
}

/// A named symmetric matrix with the Weyl square of its realization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedMatrix {
    pub name: String,
    pub r: Rational,
    pub matrix: Vec<Vec<i64>>,
}

impl NamedMatrix {
    /// The untwisted realization whose Gram matrix is this matrix.
    pub fn datum(&self) -> Result<PolygonDatum, GcmError> {
        PolygonDatum::from_gram(&self.matrix, vec![1; self.matrix.len()])
    }
}

pub fn parse_matrices(text: &str) -> Result<Vec<NamedMatrix>, GoldenError> {
    parse_blocks(text)?
        .into_iter()
        .map(|b| {
            Ok(NamedMatrix {
                name: b.require("name")?.to_string(),
                r: parse_r(&b)?,
                matrix: b.rows,
            })
        })
        .collect()
}

/// The twelve symmetric hyperbolic generalized Cartan matrices
/// `A_{1,0}, …, A_{3,III}` of non-compact type.
pub fn symmetric_matrices() -> Vec<NamedMatrix> {
    parse_matrices(SYMMETRIC_TEXT).expect("embedded matrices parse")
}

/// An explicit lattice realization of one of the symmetric matrices.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct LatticeFixture {
    pub name: String,
    pub basis_gram: [[i64; 3]; 3],
    pub roots: Vec<[i64; 3]>,
    pub rho: [Rational; 3],
    pub cartan: String,
    pub r: Rational,
    pub sym_order: usize,
    pub lattice: String,
    pub lattice_det: i64,
}

#[derive(Deserialize)]
struct FixtureFile {
    fixture: Vec<LatticeFixture>,
}

pub fn parse_fixtures(text: &str) -> Result<Vec<LatticeFixture>, GoldenError> {
    toml::from_str::<FixtureFile>(text)
        .map(|f| f.fixture)
        .map_err(|e| GoldenError::Fixture(e.to_string()))
}

pub fn fixtures() -> Vec<LatticeFixture> {
    parse_fixtures(FIXTURES_TOML).expect("embedded fixtures parse")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureReport {
    pub name: String,
    pub failures: Vec<String>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn to_q(v: &[i64; 3]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from(x)).collect()
}

/// gcd of the 3×3 minors of the root coordinates, i.e. the index of the
/// root lattice in `Z³` (0 if the roots do not span).
fn root_index(roots: &[[i64; 3]]) -> i64 {
    let mut g = 0i64;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            for k in j + 1..roots.len() {
                let m = QMatrix::from_int_rows(&[roots[i], roots[j], roots[k]]).expect("3x3");
                let d = m.det().expect("square").to_i64().expect("integer minor");
                g = g.gcd(&d);
            }
        }
    }
    g
}

/// Re-derives every stated property of a lattice fixture.
pub fn verify_fixture(f: &LatticeFixture, matrices: &[NamedMatrix]) -> FixtureReport {
    let mut failures = Vec::new();
    let basis = QMatrix::from_int_rows(&f.basis_gram).expect("3x3");
    let form = |x: &[Rational], y: &[Rational]| basis.bilinear(x, y).expect("length 3");
    let roots: Vec<Vec<Rational>> = f.roots.iter().map(to_q).collect();
    let n = roots.len();

    let gram: Vec<Vec<i64>> = roots
        .iter()
        .map(|x| {
            roots
                .iter()
                .map(|y| form(x, y).to_i64().unwrap_or(i64::MIN))
                .collect()
        })
        .collect();
    for (i, row) in gram.iter().enumerate() {
        if row[i] != 2 {
            failures.push(format!("(d{0}, d{0}) = {1}, expected 2", i + 1, row[i]));
        }
    }
    match matrices.iter().find(|m| m.name == f.cartan) {
        None => failures.push(format!("no matrix named {}", f.cartan)),
        Some(m) => {
            if m.matrix != gram {
                failures.push(format!("root Gram matrix differs from A_{{{}}}", m.name));
            }
            if m.r != f.r {
                failures.push(format!(
                    "fixture r = {} but A_{{{}}} has r = {}",
                    f.r, m.name, m.r
                ));
            }
        }
    }
    for (i, x) in roots.iter().enumerate() {
        let v = form(&f.rho, x);
        if v != Rational::from(-1) {
            failures.push(format!("(rho, d{}) = {v}, expected -1", i + 1));
        }
    }
    let rr = form(&f.rho, &f.rho);
    if rr != f.r {
        failures.push(format!("(rho, rho) = {rr}, expected {}", f.r));
    }
    match PolygonDatum::from_gram(&gram, vec![1; n]) {
        Ok(d) => {
            let order = symmetry_group(&d).order;
            if order != f.sym_order {
                failures.push(format!(
                    "symmetry group order {order}, expected {}",
                    f.sym_order
                ));
            }
        }
        Err(e) => failures.push(format!("root Gram matrix is not a realization: {e}")),
    }
    let idx = root_index(&f.roots);
    let det = basis.det().expect("square").to_i64().expect("integer") * idx * idx;
    if det != f.lattice_det {
        failures.push(format!(
            "root lattice {} has determinant {det}, expected {}",
            f.lattice, f.lattice_det
        ));
    }
    FixtureReport {
        name: f.name.clone(),
        failures,
    }
}

/// Differences between an engine catalogue and the reference data.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossCheckReport {
    /// Reference rows the engine did not produce.
    pub missing: Vec<String>,
    /// Engine records absent from the reference catalogue.
    pub extra: Vec<String>,
    /// Symmetric matrices without a matching engine record, or records
    /// matched with the wrong Weyl square.
    pub matrix_mismatches: Vec<String>,
    /// Reference rows that fail to decode.
    pub invalid_rows: Vec<String>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty()
            && self.extra.is_empty()
            && self.matrix_mismatches.is_empty()
            && self.invalid_rows.is_empty()
    }
}

/// Compares canonical forms of `records` with the reference catalogue and
/// matches every untwisted non-compact record with a symmetric matrix.
pub fn cross_check(
    records: &[CatalogRecord],
    catalog: &[CatalogRow],
    matrices: &[NamedMatrix],
) -> CrossCheckReport {
    let mut rep = CrossCheckReport::default();
    let mut golden: BTreeSet<(Rational, PackedDatum)> = BTreeSet::new();
    for row in catalog {
        match row.datum() {
            Ok(d) => {
                golden.insert((row.r.clone(), canonical_datum(&d).1));
            }
            Err(e) => rep.invalid_rows.push(format!("line {}: {e}", row.line)),
        }
    }
    let engine: BTreeSet<(Rational, PackedDatum)> = records
        .iter()
        .map(|r| (r.r.clone(), r.canonical.clone()))
        .collect();
    let show = |(r, p): &(Rational, PackedDatum)| {
        let t = p
            .unpack()
            .map(|d| crate::gcm::polygon_table(&d).to_string())
            .unwrap_or_default();
        format!("r = {r}: {}", t.replace('\n', " / "))
    };
    rep.missing = golden.difference(&engine).map(show).collect();
    rep.extra = engine.difference(&golden).map(show).collect();

    let symmetric: Vec<&CatalogRecord> = records
        .iter()
        .filter(|r| r.flags.untwisted && !r.flags.compact)
        .collect();
    let mut matched = vec![false; symmetric.len()];
    for m in matrices {
        let key = match m.datum() {
            Ok(d) => canonical_datum(&d).1,
            Err(e) => {
                rep.matrix_mismatches.push(format!("A_{{{}}}: {e}", m.name));
                continue;
            }
        };
        match symmetric.iter().position(|r| r.canonical == key) {
            Some(i) if symmetric[i].r == m.r => matched[i] = true,
            Some(i) => rep.matrix_mismatches.push(format!(
                "A_{{{}}} found at r = {}, expected r = {}",
                m.name, symmetric[i].r, m.r
            )),
            None => rep.matrix_mismatches.push(format!(
                "A_{{{}}} is not the Cartan matrix of any untwisted non-compact record",
                m.name
            )),
        }
    }
    for (i, ok) in matched.iter().enumerate() {
        if !ok {
            rep.matrix_mismatches.push(format!(
                "untwisted non-compact record at r = {} matches no symmetric matrix",
                symmetric[i].r
            ));
        }
    }
    rep
}
