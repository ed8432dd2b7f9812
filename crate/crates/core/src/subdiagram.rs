//! Index sets of centralizer bases: subdiagrams matched under a shift.
//!
//! For a shift `s` the candidates live in `D = Γ ∩ (T − s)`, where `T` is the
//! target diagram (`Γ` itself, or `σ(Γ′)` for a pair). Closure under left
//! and down moves inside `Γ` together with closure of `C + s` under right and
//! up moves inside `T` forces `C` to absorb every neighbour it has in `D`, so
//! the admissible `C` are exactly the components of `D` passing both closure
//! checks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::datum::{LieType, PairDatum};
use crate::diagram::{
    connected_components, sigma_cells, translate_cells, Cell, CellSet, SkewDiagram,
};

/// A bidegree `(p, q)` stored doubled.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i32, i32)", into = "(i32, i32)")]
pub struct Shift {
    pub a: i32,
    pub b: i32,
}

impl Shift {
    pub const ZERO: Shift = Shift { a: 0, b: 0 };

    /// Shift given in doubled units.
    pub const fn new(a: i32, b: i32) -> Self {
        Self { a, b }
    }

    /// Shift `(p, q)` with integer entries.
    pub const fn int(p: i32, q: i32) -> Self {
        Self { a: 2 * p, b: 2 * q }
    }

    pub fn is_integral(self) -> bool {
        self.a % 2 == 0 && self.b % 2 == 0
    }

    pub fn is_nonnegative(self) -> bool {
        self.a >= 0 && self.b >= 0
    }

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    /// `p + q`, which must be an integer.
    pub fn p_plus_q(self) -> i32 {
        debug_assert!((self.a + self.b) % 2 == 0);
        (self.a + self.b) / 2
    }

    pub fn p_plus_q_even(self) -> bool {
        self.p_plus_q().rem_euclid(2) == 0
    }

    pub fn apply(self, c: Cell) -> Cell {
        c.translate(self.a, self.b)
    }
}

impl From<(i32, i32)> for Shift {
    fn from((a, b): (i32, i32)) -> Self {
        Self::new(a, b)
    }
}

impl From<Shift> for (i32, i32) {
    fn from(s: Shift) -> Self {
        (s.a, s.b)
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Cell::new(self.a, self.b))
    }
}

impl fmt::Debug for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumError {
    #[error("NegativeShift: the overlap description needs p, q >= 0, got {0}")]
    NegativeShift(Shift),
    #[error("NonIntegralShift: self pairs need integer p, q, got {0}")]
    NonIntegralShift(Shift),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    Single,
    Cross,
    #[serde(rename = "self")]
    SelfPair,
}

/// One basis index in degree `shift`.
///
/// `Single`: `C ⊆ Γᵏ` and `c_prime = C + s`.
/// `Cross`/`SelfPair`: `C ⊆ Γᵏ`, `c_prime ⊆ Γˡ`, `C + s = σ(c_prime)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexEntry {
    pub shift: Shift,
    pub kind: EntryKind,
    pub k: u8,
    pub l: u8,
    pub c: CellSet,
    pub c_prime: CellSet,
}

impl IndexEntry {
    /// Self pair with `C = C′` (only possible for odd `p + q`).
    pub fn is_self_paired(&self) -> bool {
        self.kind == EntryKind::SelfPair && self.c == self.c_prime
    }
}

fn closed_down_left(c: &CellSet, ambient: &CellSet) -> bool {
    c.iter().all(|x| {
        [x.left(), x.down()]
            .iter()
            .all(|n| !ambient.contains(n) || c.contains(n))
    })
}

fn closed_up_right(c: &CellSet, ambient: &CellSet) -> bool {
    c.iter().all(|x| {
        [x.right(), x.up()]
            .iter()
            .all(|n| !ambient.contains(n) || c.contains(n))
    })
}

/// Components `C` of `source ∩ (target − s)` with `C` a skew subdiagram of
/// `source` and `C + s` a σ-skew subdiagram of `target`.
fn matched_components(source: &CellSet, target: &CellSet, s: Shift) -> Vec<CellSet> {
    let overlap: CellSet = source
        .iter()
        .copied()
        .filter(|&c| target.contains(&s.apply(c)))
        .collect();
    connected_components(&overlap)
        .into_iter()
        .filter(|comp| {
            closed_down_left(comp, source)
                && closed_up_right(&translate_cells(comp, s.a, s.b), target)
        })
        .collect()
}

/// Skew subdiagrams `C` of `Γ` with `C + s` a σ-skew subdiagram of `Γ`.
pub fn enum_single(gamma: &SkewDiagram, s: Shift) -> Vec<CellSet> {
    matched_components(gamma.cells(), gamma.cells(), s)
}

/// Components of `(Γ − s) ∩ Γ` for `p, q ≥ 0`.
pub fn enum_components_overlap(gamma: &SkewDiagram, s: Shift) -> Result<Vec<CellSet>, EnumError> {
    if !s.is_nonnegative() {
        return Err(EnumError::NegativeShift(s));
    }
    let overlap: CellSet = gamma
        .iter()
        .copied()
        .filter(|&c| gamma.contains(&s.apply(c)))
        .collect();
    Ok(connected_components(&overlap))
}

/// Pairs `(C, C′)`, `C` a skew subdiagram of `Γ`, `C′` one of `Γ′`, with
/// `C + s = σ(C′)`.
pub fn enum_cross(gamma: &SkewDiagram, gamma_p: &SkewDiagram, s: Shift) -> Vec<(CellSet, CellSet)> {
    let target = sigma_cells(gamma_p.cells());
    matched_components(gamma.cells(), &target, s)
        .into_iter()
        .map(|c| {
            let cp = sigma_cells(&translate_cells(&c, s.a, s.b));
            (c, cp)
        })
        .collect()
}

/// Unordered pairs `{C, C′}` of skew subdiagrams of a symmetric `Γ` with
/// `C + s = σ(C′)`; `C = C′` only for odd `p + q`. Each pair is reported once
/// with `C ≤ C′`.
pub fn enum_self(gamma: &SkewDiagram, s: Shift) -> Result<Vec<(CellSet, CellSet)>, EnumError> {
    if !s.is_integral() {
        return Err(EnumError::NonIntegralShift(s));
    }
    let even = s.p_plus_q_even();
    Ok(enum_cross(gamma, gamma, s)
        .into_iter()
        .filter(|(c, cp)| if c == cp { !even } else { c < cp })
        .collect())
}

/// Half-widths of the shift box for a list of diagrams, doubled units:
/// `|a| ≤ max width(Γ) + width(Γ′)`, same for heights.
pub fn shift_box<'a>(diagrams: impl IntoIterator<Item = &'a SkewDiagram>) -> (i32, i32) {
    let (w, h) = diagrams
        .into_iter()
        .fold((0, 0), |(w, h), d| (w.max(d.width()), h.max(d.height())));
    (2 * w, 2 * h)
}

/// Every shift in the box, in `(a, b)` order.
pub fn shifts_in_box(bound: (i32, i32)) -> Vec<Shift> {
    let mut out = Vec::new();
    for a in -bound.0..=bound.0 {
        for b in -bound.1..=bound.1 {
            out.push(Shift::new(a, b));
        }
    }
    out
}

fn positive_shifts(bound: (i32, i32)) -> impl Iterator<Item = Shift> {
    shifts_in_box(bound)
        .into_iter()
        .filter(|s| s.is_nonnegative() && !s.is_zero())
}

fn all_nonzero_shifts(bound: (i32, i32)) -> impl Iterator<Item = Shift> {
    shifts_in_box(bound).into_iter().filter(|s| !s.is_zero())
}

pub fn card_e_plus_single(gamma: &SkewDiagram) -> usize {
    positive_shifts(shift_box([gamma]))
        .map(|s| enum_single(gamma, s).len())
        .sum()
}

pub fn card_e_full_single(gamma: &SkewDiagram) -> usize {
    all_nonzero_shifts(shift_box([gamma]))
        .map(|s| enum_single(gamma, s).len())
        .sum()
}

fn self_count(gamma: &SkewDiagram, s: Shift) -> usize {
    if s.is_integral() {
        enum_self(gamma, s).map(|v| v.len()).unwrap_or(0)
    } else {
        0
    }
}

pub fn card_e_plus_self(gamma: &SkewDiagram) -> usize {
    positive_shifts(shift_box([gamma]))
        .map(|s| self_count(gamma, s))
        .sum()
}

pub fn card_e_full_self(gamma: &SkewDiagram) -> usize {
    all_nonzero_shifts(shift_box([gamma]))
        .map(|s| self_count(gamma, s))
        .sum()
}

pub fn card_e_plus_cross(gamma: &SkewDiagram, gamma_p: &SkewDiagram) -> usize {
    positive_shifts(shift_box([gamma, gamma_p]))
        .map(|s| enum_cross(gamma, gamma_p, s).len())
        .sum()
}

pub fn card_e_full_cross(gamma: &SkewDiagram, gamma_p: &SkewDiagram) -> usize {
    all_nonzero_shifts(shift_box([gamma, gamma_p]))
        .map(|s| enum_cross(gamma, gamma_p, s).len())
        .sum()
}

/// Shift box covering every pair of components of a datum.
pub fn datum_shift_box(datum: &PairDatum) -> (i32, i32) {
    shift_box(datum.components().map(|(_, d)| d))
}

/// Every index entry of degree `s`, sorted canonically. Empty at `s = 0`.
pub fn assemble_index(datum: &PairDatum, s: Shift) -> Vec<IndexEntry> {
    let mut out = Vec::new();
    if s.is_zero() {
        return out;
    }
    if datum.lie_type() == LieType::A {
        let (k, gamma) = datum.components().next().expect("type A has a diagram");
        for c in enum_single(gamma, s) {
            let cp = translate_cells(&c, s.a, s.b);
            out.push(IndexEntry {
                shift: s,
                kind: EntryKind::Single,
                k,
                l: k,
                c,
                c_prime: cp,
            });
        }
        return out;
    }
    let comps: Vec<(u8, &SkewDiagram)> = datum.components().collect();
    for (idx, &(k, gk)) in comps.iter().enumerate() {
        if s.is_integral() {
            for (c, cp) in enum_self(gk, s).expect("integral shift") {
                out.push(IndexEntry {
                    shift: s,
                    kind: EntryKind::SelfPair,
                    k,
                    l: k,
                    c,
                    c_prime: cp,
                });
            }
        }
        for &(l, gl) in &comps[idx + 1..] {
            for (c, cp) in enum_cross(gk, gl, s) {
                out.push(IndexEntry {
                    shift: s,
                    kind: EntryKind::Cross,
                    k,
                    l,
                    c,
                    c_prime: cp,
                });
            }
        }
    }
    out.sort_by(|x, y| {
        (x.c.iter().next(), x.k, x.l, &x.c, &x.c_prime).cmp(&(
            y.c.iter().next(),
            y.k,
            y.l,
            &y.c,
            &y.c_prime,
        ))
    });
    out
}

/// Shifts of the datum's box that can index a graded piece (`p + q ∈ Z`).
pub fn datum_shifts(datum: &PairDatum) -> Vec<Shift> {
    shifts_in_box(datum_shift_box(datum))
        .into_iter()
        .filter(|s| (s.a + s.b) % 2 == 0)
        .collect()
}

/// Nonempty index sets over the datum's shifts.
pub fn index_by_shift(datum: &PairDatum) -> Vec<(Shift, Vec<IndexEntry>)> {
    datum_shifts(datum)
        .into_iter()
        .map(|s| (s, assemble_index(datum, s)))
        .filter(|(_, v)| !v.is_empty())
        .collect()
}
