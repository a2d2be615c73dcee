//! Command implementations for the `rank3gcm` binary. Each command writes to
//! the given streams and returns the process exit code.

use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use rank3gcm::engine::{
    run_elliptic, run_parabolic, CatalogRecord, EngineConfig, PeriodicChain, SeedMode,
};
use rank3gcm::gcm::{
    cartan_matrix, classify_flags, symmetrized_cartan, verify_realization, PolygonDatum,
};
use rank3gcm::goldens::{
    cross_check, parse_catalog, parse_fixtures, parse_matrices, verify_fixture, CatalogRow,
    FIXTURES_TOML, SYMMETRIC_TEXT,
};
use rank3gcm::linalg::Rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Elliptic,
    Parabolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Records,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub lambda_max: i64,
    pub mode: Mode,
    pub r_filter: Option<Rational>,
    pub max_sides: usize,
    pub format: Format,
    pub jobs: Option<usize>,
    pub untwisted_only: bool,
    pub noncompact_only: bool,
    pub debug_seed_bound: Option<i64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            lambda_max: 6,
            mode: Mode::Elliptic,
            r_filter: None,
            max_sides: 32,
            format: Format::Table,
            jobs: None,
            untwisted_only: false,
            noncompact_only: false,
            debug_seed_bound: None,
        }
    }
}

impl RunConfig {
    fn engine(&self) -> EngineConfig {
        EngineConfig {
            lambda_max: self.lambda_max,
            max_sides: self.max_sides,
            radius_filter: self.r_filter.clone(),
            seed_mode: match self.debug_seed_bound {
                Some(b_max) => SeedMode::Exhaustive { b_max },
                None => SeedMode::Monotone,
            },
            jobs: self.jobs,
        }
    }

    fn keep(&self, rec: &CatalogRecord) -> bool {
        (!self.untwisted_only || rec.flags.untwisted)
            && (!self.noncompact_only || !rec.flags.compact)
    }
}

/// One line of `records` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordLine {
    pub r: String,
    pub n: usize,
    pub lambda: Vec<i64>,
    /// `(δ_i, δ_j)` for `i < j`, row by row.
    pub pairings: Vec<i64>,
    pub polygon_table: Vec<Vec<i64>>,
    pub cartan: Vec<Vec<i64>>,
    pub symcartan: Vec<Vec<i64>>,
    pub sym_order: usize,
    pub compact: bool,
    pub untwisted: bool,
    #[serde(rename = "type")]
    pub kind: String,
}

impl RecordLine {
    pub fn from_record(rec: &CatalogRecord) -> Self {
        RecordLine {
            r: rec.r.to_string(),
            n: rec.n(),
            lambda: rec.datum.lambda().to_vec(),
            pairings: rec.datum.pairings().to_vec(),
            polygon_table: rec.table.rows().to_vec(),
            cartan: rec.cartan.entries.clone(),
            symcartan: rec.symcartan.entries.clone(),
            sym_order: rec.sym_order,
            compact: rec.flags.compact,
            untwisted: rec.flags.untwisted,
            kind: rec.flags.kind.to_string(),
        }
    }

    /// Rebuilds the record from `n`, `lambda` and `pairings` alone.
    pub fn rederive(&self) -> Result<Self, String> {
        let d = PolygonDatum::new(self.n, self.pairings.clone(), self.lambda.clone())
            .map_err(|e| e.to_string())?;
        let rec = CatalogRecord::from_datum(&d).map_err(|e| e.to_string())?;
        Ok(RecordLine::from_record(&rec))
    }
}

#[derive(Serialize)]
struct PeriodicLine<'a> {
    period: usize,
    first_seen_at: usize,
    signature: &'a [[i64; 6]],
}

fn write_block(out: &mut dyn Write, rec: &CatalogRecord) -> io::Result<()> {
    writeln!(out, "r = {}", rec.r)?;
    writeln!(out, "{}", rec.table)?;
    writeln!(out)
}

fn write_records(out: &mut dyn Write, format: Format, recs: &[&CatalogRecord]) -> io::Result<()> {
    for rec in recs {
        match format {
            Format::Table => write_block(out, rec)?,
            Format::Records => {
                let line = serde_json::to_string(&RecordLine::from_record(rec))?;
                writeln!(out, "{line}")?;
            }
        }
    }
    Ok(())
}

fn write_periodic(out: &mut dyn Write, format: Format, p: &PeriodicChain) -> io::Result<()> {
    match format {
        Format::Table => {
            let ws: Vec<String> = p.signature.iter().map(|w| format!("{w:?}")).collect();
            writeln!(
                out,
                "# periodic: period {} windows {}",
                p.period,
                ws.join(" ")
            )
        }
        Format::Records => {
            let line = PeriodicLine {
                period: p.period,
                first_seen_at: p.first_seen_at,
                signature: &p.signature,
            };
            writeln!(out, "{}", serde_json::to_string(&line)?)
        }
    }
}

pub fn cmd_enumerate(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match enumerate_inner(cfg, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAIL
        }
    }
}

fn enumerate_inner(
    cfg: &RunConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, String> {
    let engine = cfg.engine();
    let (records, periodic, cap_hit, diagnostics) = match cfg.mode {
        Mode::Elliptic => {
            let rep = run_elliptic(&engine).map_err(|e| e.to_string())?;
            (rep.records, Vec::new(), rep.cap_hit, rep.diagnostics)
        }
        Mode::Parabolic => {
            let rep = run_parabolic(&engine).map_err(|e| e.to_string())?;
            (rep.records, rep.periodic, rep.cap_hit, rep.diagnostics)
        }
    };
    let kept: Vec<&CatalogRecord> = records.iter().filter(|r| cfg.keep(r)).collect();
    let io = |e: io::Error| e.to_string();
    write_records(out, cfg.format, &kept).map_err(io)?;
    for p in &periodic {
        write_periodic(out, cfg.format, p).map_err(io)?;
    }
    for d in &diagnostics {
        writeln!(err, "warning: {d}").map_err(io)?;
    }
    writeln!(err, "{} records", kept.len()).map_err(io)?;
    Ok(if cap_hit { EXIT_CAP } else { EXIT_OK })
}

/// Paths overriding the embedded reference data.
#[derive(Clone, Debug, Default)]
pub struct VerifyConfig {
    pub skip_engine: bool,
    pub catalog: Option<std::path::PathBuf>,
    pub matrices: Option<std::path::PathBuf>,
    pub fixtures: Option<std::path::PathBuf>,
    pub jobs: Option<usize>,
}

fn read_or(path: &Option<std::path::PathBuf>, embedded: &str) -> Result<String, String> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display())),
        None => Ok(embedded.to_string()),
    }
}

/// Verifies the reference data and, unless skipped, the engine against it.
pub fn cmd_verify(cfg: &VerifyConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match verify_inner(cfg, out) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn catalog_failures(catalog: &[CatalogRow]) -> Vec<String> {
    let mut failures = Vec::new();
    for row in catalog {
        let d = match row.datum() {
            Ok(d) => d,
            Err(e) => {
                failures.push(format!("line {}: {e}", row.line));
                continue;
            }
        };
        let rep = verify_realization(&d);
        for c in &rep.failures {
            failures.push(format!("line {}: {c}", row.line));
        }
        if rep.is_valid() && rep.r() != Some(&row.r) {
            let got = rep.r().map(|r| r.to_string()).unwrap_or_default();
            failures.push(format!(
                "line {}: Weyl square is {got}, stated {}",
                row.line, row.r
            ));
        }
    }
    failures
}

fn report(out: &mut dyn Write, label: &str, failures: &[String]) -> io::Result<bool> {
    if failures.is_empty() {
        writeln!(out, "PASS {label}")?;
    } else {
        writeln!(out, "FAIL {label}")?;
        for f in failures {
            writeln!(out, "  {f}")?;
        }
    }
    Ok(failures.is_empty())
}

fn verify_inner(cfg: &VerifyConfig, out: &mut dyn Write) -> Result<bool, String> {
    let io = |e: io::Error| e.to_string();
    let catalog_text = read_or(&cfg.catalog, rank3gcm::goldens::CATALOG_TEXT)?;
    let catalog = parse_catalog(&catalog_text).map_err(|e| e.to_string())?;
    let matrices =
        parse_matrices(&read_or(&cfg.matrices, SYMMETRIC_TEXT)?).map_err(|e| e.to_string())?;
    let fixtures =
        parse_fixtures(&read_or(&cfg.fixtures, FIXTURES_TOML)?).map_err(|e| e.to_string())?;
    let mut ok = true;

    let label = format!("catalog self-consistency ({} rows)", catalog.len());
    ok &= report(out, &label, &catalog_failures(&catalog)).map_err(io)?;

    let mut failures = Vec::new();
    for m in &matrices {
        match m.datum() {
            Ok(d) => {
                let rep = verify_realization(&d);
                if !rep.is_valid() || rep.r() != Some(&m.r) {
                    failures.push(format!(
                        "A_{{{}}} is not a realization with r = {}",
                        m.name, m.r
                    ));
                }
            }
            Err(e) => failures.push(format!("A_{{{}}}: {e}", m.name)),
        }
    }
    let label = format!("symmetric matrices ({})", matrices.len());
    ok &= report(out, &label, &failures).map_err(io)?;

    for f in &fixtures {
        let rep = verify_fixture(f, &matrices);
        ok &= report(out, &format!("fixture ({})", f.name), &rep.failures).map_err(io)?;
    }

    if cfg.skip_engine {
        writeln!(out, "SKIP engine cross-check").map_err(io)?;
        return Ok(ok);
    }
    let mut engine = EngineConfig::new(6);
    engine.jobs = cfg.jobs;
    let rep = run_elliptic(&engine).map_err(|e| e.to_string())?;
    let cc = cross_check(&rep.records, &catalog, &matrices);
    let mut failures: Vec<String> = Vec::new();
    failures.extend(cc.invalid_rows.iter().map(|s| format!("invalid row {s}")));
    failures.extend(cc.missing.iter().map(|s| format!("missing {s}")));
    failures.extend(cc.extra.iter().map(|s| format!("extra {s}")));
    failures.extend(cc.matrix_mismatches.iter().cloned());
    if rep.cap_hit {
        failures.push("side cap reached".into());
    }
    let label = format!(
        "engine cross-check (lambda_max = 6, {} records)",
        rep.records.len()
    );
    ok &= report(out, &label, &failures).map_err(io)?;
    Ok(ok)
}

/// Verifies every block of a golden-format file and prints derived data.
pub fn cmd_check(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return EXIT_USAGE;
        }
    };
    let rows = match parse_catalog(&text) {
        Ok(rows) if rows.is_empty() => {
            let _ = writeln!(err, "error: {}: no blocks", path.display());
            return EXIT_USAGE;
        }
        Ok(rows) => rows,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return EXIT_USAGE;
        }
    };
    let mut all_valid = true;
    for row in &rows {
        match check_row(row, out) {
            Ok(valid) => all_valid &= valid,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_FAIL;
            }
        }
    }
    if all_valid {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn write_matrix(out: &mut dyn Write, name: &str, m: &[Vec<i64>]) -> io::Result<()> {
    writeln!(out, "  {name}:")?;
    for row in m {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>4}")).collect();
        writeln!(out, "   {}", cells.join(""))?;
    }
    Ok(())
}

fn check_row(row: &CatalogRow, out: &mut dyn Write) -> io::Result<bool> {
    writeln!(out, "block at line {} (r = {})", row.line, row.r)?;
    let d = match row.datum() {
        Ok(d) => d,
        Err(e) => {
            writeln!(out, "  INVALID: {e}")?;
            return Ok(false);
        }
    };
    let rep = verify_realization(&d);
    let mut valid = rep.is_valid();
    for c in &rep.failures {
        writeln!(out, "  INVALID: {c}")?;
    }
    if let Some(w) = &rep.weyl {
        if rep.is_valid() {
            writeln!(out, "  Weyl square: {}", w.r)?;
            if w.r != row.r {
                writeln!(out, "  INVALID: stated r = {} differs", row.r)?;
                valid = false;
            }
        }
    }
    if !valid {
        return Ok(false);
    }
    let w = rep.weyl.as_ref().expect("valid");
    match classify_flags(&d, w) {
        Ok(f) => writeln!(
            out,
            "  valid: type {}, {}, {}",
            f.kind,
            if f.compact { "compact" } else { "non-compact" },
            if f.untwisted { "untwisted" } else { "twisted" }
        )?,
        Err(e) => {
            writeln!(out, "  INVALID: {e}")?;
            return Ok(false);
        }
    }
    if let Ok(a) = cartan_matrix(&d) {
        write_matrix(out, "A", &a.entries)?;
    }
    write_matrix(out, "B", &symmetrized_cartan(&d).entries)?;
    Ok(true)
}
