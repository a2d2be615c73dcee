use std::fmt;

use serde::Serialize;

use super::PolygonDatum;

/// An element of the dihedral group acting on side labels `0..n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DihedralMove {
    /// New side `i` is old side `i + k`.
    Rotation(usize),
    /// New side `i` is old side `k - i`.
    Reflection(usize),
}

impl DihedralMove {
    /// The old label that moves to position `i`.
    pub fn source(self, n: usize, i: usize) -> usize {
        match self {
            DihedralMove::Rotation(k) => (i + k) % n,
            DihedralMove::Reflection(k) => (k % n + n - i % n) % n,
        }
    }

    pub fn apply(self, d: &PolygonDatum) -> PolygonDatum {
        let n = d.n();
        d.relabel(|i| self.source(n, i))
    }

    /// All `2n` moves, rotations first.
    pub fn all(n: usize) -> impl Iterator<Item = DihedralMove> {
        (0..n)
            .map(DihedralMove::Rotation)
            .chain((0..n).map(DihedralMove::Reflection))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SymmetryKind {
    Trivial,
    /// Generated by a rotation of order `k`.
    Cyclic(usize),
    /// `D_k`, of order `2k`.
    Dihedral(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryGroup {
    pub order: usize,
    pub kind: SymmetryKind,
    pub generators: Vec<DihedralMove>,
}

impl fmt::Display for SymmetryGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SymmetryKind::Trivial => write!(f, "trivial"),
            SymmetryKind::Cyclic(k) => write!(f, "C_{k}"),
            SymmetryKind::Dihedral(k) => write!(f, "D_{k}"),
        }
    }
}

/// Stabilizer of the decorated cycle (pairings and `λ`) in the dihedral group
/// of order `2n`.
pub fn symmetry_group(d: &PolygonDatum) -> SymmetryGroup {
    let n = d.n();
    let fixes = |m: DihedralMove| m.apply(d) == *d;
    let rotations: Vec<usize> = (1..n)
        .filter(|&k| fixes(DihedralMove::Rotation(k)))
        .collect();
    let reflection = (0..n).map(DihedralMove::Reflection).find(|&m| fixes(m));
    let cyclic_order = rotations.len() + 1;

    let mut generators = Vec::new();
    if let Some(&k) = rotations.first() {
        generators.push(DihedralMove::Rotation(k));
    }
    generators.extend(reflection);

    let (order, kind) = match (cyclic_order, reflection) {
        (1, None) => (1, SymmetryKind::Trivial),
        (m, None) => (m, SymmetryKind::Cyclic(m)),
        (m, Some(_)) => (2 * m, SymmetryKind::Dihedral(m)),
    };
    SymmetryGroup {
        order,
        kind,
        generators,
    }
}
