use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::canonical::{canonical_datum, PackedDatum};
use crate::gcm::{
    cartan_matrix, classify_flags, polygon_table, symmetrized_cartan, symmetry_group,
    verify_realization, CartanMatrix, Flags, GcmError, GeometricRealizationTable, PolygonDatum,
    SymmetrizedCartan,
};
use crate::linalg::Rational;

use super::extend::{extend_step, partition_closed};
use super::seed::{collect_radii, seed_triples_exhaustive, SeedIndex};
use super::{ChainState, EngineError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeedMode {
    /// Monotone `b`-scan.
    Monotone,
    /// Every `b` up to the bound; reports windows the monotone scan misses.
    Exhaustive { b_max: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub lambda_max: i64,
    pub max_sides: usize,
    /// Restrict the run to one Weyl square.
    pub radius_filter: Option<Rational>,
    pub seed_mode: SeedMode,
    /// Worker threads; `None` uses all processors.
    pub jobs: Option<usize>,
}

impl EngineConfig {
    pub fn new(lambda_max: i64) -> Self {
        EngineConfig {
            lambda_max,
            max_sides: 32,
            radius_filter: None,
            seed_mode: SeedMode::Monotone,
            jobs: None,
        }
    }

    fn validate(&self) -> Result<(), EngineError> {
        if self.lambda_max < 1 {
            return Err(EngineError::Config(format!(
                "lambda_max = {} < 1",
                self.lambda_max
            )));
        }
        if self.max_sides < 3 {
            return Err(EngineError::Config(format!(
                "max_sides = {} < 3",
                self.max_sides
            )));
        }
        Ok(())
    }

    fn pool(&self) -> Result<rayon::ThreadPool, EngineError> {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(j) = self.jobs {
            b = b.num_threads(j.max(1));
        }
        b.build().map_err(|e| EngineError::Config(e.to_string()))
    }
}

/// One classified realization, stored in canonical labelling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogRecord {
    pub r: Rational,
    #[serde(skip)]
    pub datum: PolygonDatum,
    #[serde(skip)]
    pub canonical: PackedDatum,
    pub table: GeometricRealizationTable,
    pub cartan: CartanMatrix,
    pub symcartan: SymmetrizedCartan,
    pub sym_order: usize,
    pub flags: Flags,
}

impl CatalogRecord {
    /// Verifies `d` and derives all matrices and flags. The datum is first
    /// moved to its canonical labelling.
    pub fn from_datum(d: &PolygonDatum) -> Result<Self, GcmError> {
        let (datum, canonical) = canonical_datum(d);
        let report = verify_realization(&datum);
        if !report.is_valid() {
            let msgs: Vec<String> = report.failures.iter().map(|c| c.to_string()).collect();
            return Err(GcmError::InvalidRealization(msgs.join("; ")));
        }
        let weyl = report.weyl.expect("valid realizations have a Weyl vector");
        Ok(CatalogRecord {
            r: weyl.r.clone(),
            table: polygon_table(&datum),
            cartan: cartan_matrix(&datum)?,
            symcartan: symmetrized_cartan(&datum),
            sym_order: symmetry_group(&datum).order,
            flags: classify_flags(&datum, &weyl)?,
            datum,
            canonical,
        })
    }

    pub fn n(&self) -> usize {
        self.datum.n()
    }

    fn sort_key(&self) -> (&Rational, usize, &[i64]) {
        (&self.r, self.n(), &self.canonical.body)
    }
}

pub fn sort_catalog(records: &mut [CatalogRecord]) {
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

#[derive(Clone, Debug, Default)]
pub struct EngineReport {
    pub records: Vec<CatalogRecord>,
    /// Some chain reached `max_sides` while still open.
    pub cap_hit: bool,
    pub radii_searched: usize,
    pub diagnostics: Vec<String>,
}

/// A chain whose last window repeats an earlier one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicChain {
    pub period: usize,
    /// Least rotation of the windows over one period.
    pub signature: Vec<[i64; 6]>,
    /// Length of the shortest chain that exhibited the period.
    pub first_seen_at: usize,
}

#[derive(Clone, Debug, Default)]
pub struct ParabolicReport {
    pub records: Vec<CatalogRecord>,
    pub periodic: Vec<PeriodicChain>,
    pub cap_hit: bool,
    pub diagnostics: Vec<String>,
}

struct RadiusOutcome {
    closed: Vec<PolygonDatum>,
    periodic: Vec<PeriodicChain>,
    cap_hit: bool,
    diagnostics: Vec<String>,
}

fn search_radius(
    r: &Rational,
    seeds: Vec<ChainState>,
    cfg: &EngineConfig,
    detect_periods: bool,
) -> RadiusOutcome {
    let mut out = RadiusOutcome {
        closed: Vec::new(),
        periodic: Vec::new(),
        cap_hit: false,
        diagnostics: Vec::new(),
    };
    let mut chains = seeds;
    loop {
        let (closed, mut open) = partition_closed(chains);
        out.closed.extend(closed);
        if detect_periods {
            open.retain(|c| match periodicity(c) {
                Some(p) => {
                    out.periodic.push(p);
                    false
                }
                None => true,
            });
        }
        if open.is_empty() {
            break;
        }
        if open[0].len() >= cfg.max_sides {
            out.cap_hit = true;
            out.diagnostics.push(format!(
                "r = {r}: {} open chains reached the {}-side cap",
                open.len(),
                cfg.max_sides
            ));
            break;
        }
        let ext = extend_step(&open, cfg.lambda_max);
        out.diagnostics
            .extend(ext.diagnostics.into_iter().map(|d| format!("r = {r}: {d}")));
        chains = ext.chains;
    }
    out
}

/// Detects a repeat of the newest window and returns the period it implies.
fn periodicity(c: &ChainState) -> Option<PeriodicChain> {
    if c.len() < 4 {
        return None;
    }
    let last = c.len() - 3;
    let newest = c.window_at(last);
    let p = (0..last).rev().find(|&i| c.window_at(i) == newest)?;
    let cycle: Vec<[i64; 6]> = (p..last).map(|i| c.window_at(i)).collect();
    let signature = (0..cycle.len())
        .map(|k| {
            cycle[k..]
                .iter()
                .chain(&cycle[..k])
                .copied()
                .collect::<Vec<_>>()
        })
        .min()
        .expect("period is positive");
    Some(PeriodicChain {
        period: last - p,
        signature,
        first_seen_at: c.len(),
    })
}

fn dedup_records(
    closed: impl IntoIterator<Item = PolygonDatum>,
    diagnostics: &mut Vec<String>,
) -> Vec<CatalogRecord> {
    let mut seen: BTreeMap<PackedDatum, PolygonDatum> = BTreeMap::new();
    for d in closed {
        let (c, p) = canonical_datum(&d);
        seen.entry(p).or_insert(c);
    }
    let mut records = Vec::new();
    for d in seen.into_values() {
        match CatalogRecord::from_datum(&d) {
            Ok(rec) => records.push(rec),
            Err(e) => diagnostics.push(format!("closed polygon rejected by verification: {e}")),
        }
    }
    records
}

fn check_seed_mode(
    cfg: &EngineConfig,
    r: &Rational,
    seeds: &[ChainState],
    diagnostics: &mut Vec<String>,
) {
    if let SeedMode::Exhaustive { b_max } = cfg.seed_mode {
        let have: HashSet<[i64; 6]> = seeds.iter().map(|s| s.window_at(0)).collect();
        for s in seed_triples_exhaustive(r, cfg.lambda_max, b_max) {
            let w = s.window_at(0);
            if !have.contains(&w) {
                diagnostics.push(format!(
                    "r = {r}: window {w:?} is missed by the monotone scan"
                ));
            }
        }
    }
}

/// Classifies all realizations of elliptic type with `λ_i ≤ λ_max`.
pub fn run_elliptic(cfg: &EngineConfig) -> Result<EngineReport, EngineError> {
    cfg.validate()?;
    let mut radii: Vec<Rational> = collect_radii(cfg.lambda_max).into_iter().collect();
    if let Some(f) = &cfg.radius_filter {
        radii.retain(|r| r == f);
    }
    let Some(r_max) = radii.last().cloned() else {
        return Ok(EngineReport::default());
    };
    let index = SeedIndex::build(cfg.lambda_max, &r_max)?;
    let pool = cfg.pool()?;
    let outcomes: Vec<(Rational, RadiusOutcome, Vec<String>)> = pool.install(|| {
        radii
            .par_iter()
            .map(|r| {
                let seeds = index.seeds(r);
                let mut diags = Vec::new();
                check_seed_mode(cfg, r, &seeds, &mut diags);
                (r.clone(), search_radius(r, seeds, cfg, false), diags)
            })
            .collect()
    });

    let mut report = EngineReport {
        radii_searched: radii.len(),
        ..Default::default()
    };
    for (r, o, diags) in outcomes {
        report.diagnostics.extend(diags);
        report.diagnostics.extend(o.diagnostics);
        report.cap_hit |= o.cap_hit;
        for rec in dedup_records(o.closed, &mut report.diagnostics) {
            if rec.r != r {
                report.diagnostics.push(format!(
                    "record found under r = {r} has Weyl square {}",
                    rec.r
                ));
                continue;
            }
            report.records.push(rec);
        }
    }
    sort_catalog(&mut report.records);
    Ok(report)
}

/// The same search at `r = 0`. Open chains that start repeating a window are
/// set aside as periodic instead of being extended forever.
pub fn run_parabolic(cfg: &EngineConfig) -> Result<ParabolicReport, EngineError> {
    cfg.validate()?;
    let r = Rational::zero();
    let seeds = SeedIndex::build(cfg.lambda_max, &r)?.seeds(&r);
    let mut report = ParabolicReport::default();
    check_seed_mode(cfg, &r, &seeds, &mut report.diagnostics);
    let pool = cfg.pool()?;
    let o = pool.install(|| search_radius(&r, seeds, cfg, true));
    report.diagnostics.extend(o.diagnostics);
    report.cap_hit = o.cap_hit;
    report.records = dedup_records(o.closed, &mut report.diagnostics);
    sort_catalog(&mut report.records);

    let mut by_sig: BTreeMap<Vec<[i64; 6]>, PeriodicChain> = BTreeMap::new();
    for p in o.periodic {
        by_sig
            .entry(p.signature.clone())
            .and_modify(|q| q.first_seen_at = q.first_seen_at.min(p.first_seen_at))
            .or_insert(p);
    }
    report.periodic = by_sig.into_values().collect();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcm::{weyl_vector, window_gram};

    #[test]
    fn periodicity_is_shift_invariant() {
        // A fake chain whose windows repeat with period 2.
        let w = weyl_vector(&window_gram(2, 3, 2), [1, 1, 1]).unwrap();
        let n = 7;
        let mut pairings = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                pairings.push(match j - i {
                    1 => -2 + ((i % 2) as i64),
                    2 => -3,
                    _ => -10,
                });
            }
        }
        let lambda = vec![1; n];
        let c = ChainState::from_parts(pairings, lambda, std::sync::Arc::new(w));
        let p = periodicity(&c).unwrap();
        assert_eq!(p.period, 2);
        let sub = |from: usize, len: usize| {
            let mut ps = Vec::new();
            for i in from..from + len {
                for j in i + 1..from + len {
                    ps.push(c.pairing(i, j));
                }
            }
            ChainState::from_parts(ps, vec![1; len], c.weyl_arc().clone())
        };
        let shifted = periodicity(&sub(1, 6)).unwrap();
        assert_eq!(shifted.signature, p.signature);
        assert!(periodicity(&sub(0, 4)).is_none());
    }
}
