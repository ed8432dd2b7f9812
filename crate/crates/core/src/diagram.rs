//! Half-integer lattice diagrams and skew diagrams.
//!
//! A cell stores *doubled* coordinates: `Cell { a, b }` is the point
//! `(a/2, b/2)`. Lattice neighbours are therefore 2 apart in one coordinate,
//! and the four cosets `Z² + (0|½, 0|½)` are told apart by the parities of
//! `a` and `b`.
//!
//! Cells order canonically top-to-bottom, left-to-right: `b` descending, then
//! `a` ascending. Every `BTreeSet<Cell>` in the crate iterates in that order.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::linalg::{rat, Rational};

/// A lattice point in doubled coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(i32, i32)", into = "(i32, i32)")]
pub struct Cell {
    pub a: i32,
    pub b: i32,
}

impl Cell {
    pub const ORIGIN: Cell = Cell { a: 0, b: 0 };

    pub const fn new(a: i32, b: i32) -> Self {
        Self { a, b }
    }

    /// Cell at integer coordinates `(i, j)`.
    pub const fn int(i: i32, j: i32) -> Self {
        Self { a: 2 * i, b: 2 * j }
    }

    pub fn x(&self) -> Rational {
        rat(self.a as i64, 2)
    }

    pub fn y(&self) -> Rational {
        rat(self.b as i64, 2)
    }

    pub fn sigma(self) -> Self {
        Self::new(-self.a, -self.b)
    }

    pub fn translate(self, da: i32, db: i32) -> Self {
        Self::new(self.a + da, self.b + db)
    }

    pub fn left(self) -> Self {
        self.translate(-2, 0)
    }
    pub fn right(self) -> Self {
        self.translate(2, 0)
    }
    pub fn down(self) -> Self {
        self.translate(0, -2)
    }
    pub fn up(self) -> Self {
        self.translate(0, 2)
    }

    pub fn neighbours(self) -> [Cell; 4] {
        [self.left(), self.right(), self.down(), self.up()]
    }

    /// `(a mod 2, b mod 2)`, the coset of the cell.
    pub fn parity(self) -> (u8, u8) {
        (self.a.rem_euclid(2) as u8, self.b.rem_euclid(2) as u8)
    }

    /// `(−1)^(i+j)` for a cell with `i + j` integral.
    pub fn sign(self) -> i64 {
        let s = self.a + self.b;
        debug_assert!(s % 2 == 0, "i+j not integral at {self}");
        if (s / 2).rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

impl From<(i32, i32)> for Cell {
    fn from((a, b): (i32, i32)) -> Self {
        Self::new(a, b)
    }
}

impl From<Cell> for (i32, i32) {
    fn from(c: Cell) -> Self {
        (c.a, c.b)
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        other.b.cmp(&self.b).then(self.a.cmp(&other.a))
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn fmt_half(v: i32, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if v % 2 == 0 {
        write!(f, "{}", v / 2)
    } else {
        write!(f, "{}/2", v)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        fmt_half(self.a, f)?;
        write!(f, ",")?;
        fmt_half(self.b, f)?;
        write!(f, ")")
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type CellSet = BTreeSet<Cell>;

pub fn sigma_cells(cells: &CellSet) -> CellSet {
    cells.iter().map(|c| c.sigma()).collect()
}

pub fn translate_cells(cells: &CellSet, da: i32, db: i32) -> CellSet {
    cells.iter().map(|c| c.translate(da, db)).collect()
}

/// Four-neighbour connectivity. The empty set counts as connected.
pub fn is_connected(cells: &CellSet) -> bool {
    connected_components(cells).len() <= 1
}

/// Connected components in canonical order of their first cell.
pub fn connected_components(cells: &CellSet) -> Vec<CellSet> {
    let mut seen = CellSet::new();
    let mut out = Vec::new();
    for &start in cells {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = CellSet::new();
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(c) = queue.pop_front() {
            comp.insert(c);
            for n in c.neighbours() {
                if cells.contains(&n) && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        out.push(comp);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("EmptyDiagram: a skew diagram needs at least one cell")]
    EmptyDiagram,
    #[error("NotOneCoset: cells {0} and {1} lie in different cosets of Z²")]
    NotOneCoset(Cell, Cell),
    #[error("NotConnected: the cells split into {0} connected components")]
    NotConnected(usize),
    #[error("SkewClosureViolated: {0} and {1} are present but {2} is missing")]
    SkewClosureViolated(Cell, Cell, Cell),
    #[error("NotASubset: {0} is not a cell of the ambient diagram")]
    NotASubset(Cell),
    #[error("MixedCoset: the cells do not share a single coset")]
    MixedCoset,
    #[error("NotCentrallySymmetric: the diagram is not invariant under (i,j) -> (-i,-j)")]
    NotCentrallySymmetric,
}

/// Which coset of `Z²` a diagram lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SymmetryClass {
    /// `Z²`
    Integral,
    /// `Z² + (½, 0)`
    SemiIntegralX,
    /// `Z² + (0, ½)`
    SemiIntegralY,
    /// `Z² + (½, ½)`
    NonIntegral,
}

impl SymmetryClass {
    pub fn from_parity(p: (u8, u8)) -> Self {
        match p {
            (0, 0) => SymmetryClass::Integral,
            (1, 0) => SymmetryClass::SemiIntegralX,
            (0, 1) => SymmetryClass::SemiIntegralY,
            _ => SymmetryClass::NonIntegral,
        }
    }

    pub fn parity(self) -> (u8, u8) {
        match self {
            SymmetryClass::Integral => (0, 0),
            SymmetryClass::SemiIntegralX => (1, 0),
            SymmetryClass::SemiIntegralY => (0, 1),
            SymmetryClass::NonIntegral => (1, 1),
        }
    }

    pub fn is_semi_integral(self) -> bool {
        matches!(
            self,
            SymmetryClass::SemiIntegralX | SymmetryClass::SemiIntegralY
        )
    }

    pub const ALL: [SymmetryClass; 4] = [
        SymmetryClass::Integral,
        SymmetryClass::SemiIntegralX,
        SymmetryClass::SemiIntegralY,
        SymmetryClass::NonIntegral,
    ];
}

/// Coset class of an arbitrary cell set.
pub fn coset_class(cells: &CellSet) -> Result<SymmetryClass, DiagramError> {
    let mut it = cells.iter();
    let first = it.next().ok_or(DiagramError::EmptyDiagram)?;
    if it.any(|c| c.parity() != first.parity()) {
        return Err(DiagramError::MixedCoset);
    }
    Ok(SymmetryClass::from_parity(first.parity()))
}

/// Corner and angle cells of a skew diagram.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerReport {
    pub ne_corners: Vec<Cell>,
    pub sw_corners: Vec<Cell>,
    pub ne_angles: Vec<Cell>,
    pub sw_angles: Vec<Cell>,
}

/// The three standard forms of a near rectangular diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NearRectType {
    /// Removing the orbit of the left SW corner leaves a rectangle.
    TypeA,
    /// Removing the orbit of the right SW corner leaves a rectangle.
    TypeB,
    /// The two SW corners are diagonal neighbours.
    TypeC,
}

/// A validated skew diagram: finite, nonempty, in one coset, connected, and
/// closed under the diagonal condition.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "DiagramJson", into = "DiagramJson")]
pub struct SkewDiagram {
    cells: CellSet,
}

/// Wire form `{"cells": [[a, b], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramJson {
    pub cells: Vec<Cell>,
}

impl TryFrom<DiagramJson> for SkewDiagram {
    type Error = DiagramError;
    fn try_from(raw: DiagramJson) -> Result<Self, Self::Error> {
        SkewDiagram::new(raw.cells)
    }
}

impl From<SkewDiagram> for DiagramJson {
    fn from(d: SkewDiagram) -> Self {
        DiagramJson {
            cells: d.cells.into_iter().collect(),
        }
    }
}

/// Checks the diagonal condition on any cell set.
fn check_skew_closure(cells: &CellSet) -> Result<(), DiagramError> {
    for &c in cells {
        let diag = c.translate(2, 2);
        if cells.contains(&diag) {
            for missing in [c.right(), c.up()] {
                if !cells.contains(&missing) {
                    return Err(DiagramError::SkewClosureViolated(c, diag, missing));
                }
            }
        }
    }
    Ok(())
}

/// Validates a cell set as a skew diagram.
pub fn validate_cells(cells: &CellSet) -> Result<(), DiagramError> {
    let first = *cells.iter().next().ok_or(DiagramError::EmptyDiagram)?;
    if let Some(&bad) = cells.iter().find(|c| c.parity() != first.parity()) {
        return Err(DiagramError::NotOneCoset(first, bad));
    }
    let n = connected_components(cells).len();
    if n != 1 {
        return Err(DiagramError::NotConnected(n));
    }
    check_skew_closure(cells)
}

impl SkewDiagram {
    pub fn new(cells: impl IntoIterator<Item = Cell>) -> Result<Self, DiagramError> {
        let cells: CellSet = cells.into_iter().collect();
        validate_cells(&cells)?;
        Ok(Self { cells })
    }

    /// Builds from integer coordinates `(i, j)`.
    pub fn from_int(points: &[(i32, i32)]) -> Result<Self, DiagramError> {
        Self::new(points.iter().map(|&(i, j)| Cell::int(i, j)))
    }

    /// Builds from doubled coordinates `(a, b)`.
    pub fn from_doubled(points: &[(i32, i32)]) -> Result<Self, DiagramError> {
        Self::new(points.iter().map(|&(a, b)| Cell::new(a, b)))
    }

    pub(crate) fn from_cells_unchecked(cells: CellSet) -> Self {
        debug_assert!(validate_cells(&cells).is_ok());
        Self { cells }
    }

    pub fn cells(&self) -> &CellSet {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: &Cell) -> bool {
        self.cells.contains(c)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter()
    }

    pub fn sigma(&self) -> SkewDiagram {
        SkewDiagram::from_cells_unchecked(sigma_cells(&self.cells))
    }

    /// Translates by `(da/2, db/2)`.
    pub fn translate(&self, da: i32, db: i32) -> SkewDiagram {
        SkewDiagram::from_cells_unchecked(translate_cells(&self.cells, da, db))
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        self.cells.iter().all(|c| self.cells.contains(&c.sigma()))
    }

    /// Coset class; this is the symmetry type when the diagram is centrally
    /// symmetric.
    pub fn symmetry_class(&self) -> SymmetryClass {
        let first = self.cells.iter().next().expect("nonempty");
        SymmetryClass::from_parity(first.parity())
    }

    /// `(min a, max a, min b, max b)` in doubled units.
    pub fn bounds(&self) -> (i32, i32, i32, i32) {
        let mut it = self.cells.iter();
        let f = it.next().expect("nonempty");
        it.fold((f.a, f.a, f.b, f.b), |(a0, a1, b0, b1), c| {
            (a0.min(c.a), a1.max(c.a), b0.min(c.b), b1.max(c.b))
        })
    }

    /// Horizontal extent in doubled units (`max a − min a`).
    pub fn width(&self) -> i32 {
        let (a0, a1, _, _) = self.bounds();
        a1 - a0
    }

    /// Vertical extent in doubled units.
    pub fn height(&self) -> i32 {
        let (_, _, b0, b1) = self.bounds();
        b1 - b0
    }

    /// Number of columns occupied.
    pub fn column_count(&self) -> usize {
        (self.width() / 2 + 1) as usize
    }

    /// Number of rows occupied.
    pub fn row_count(&self) -> usize {
        (self.height() / 2 + 1) as usize
    }

    pub fn corners(&self) -> CornerReport {
        let has = |c: Cell| self.cells.contains(&c);
        let mut r = CornerReport::default();
        for &c in &self.cells {
            let (rt, up) = (has(c.right()), has(c.up()));
            if !rt && !up {
                r.ne_corners.push(c);
            } else if rt && up && !has(c.translate(2, 2)) {
                r.ne_angles.push(c);
            }
            let (lf, dn) = (has(c.left()), has(c.down()));
            if !lf && !dn {
                r.sw_corners.push(c);
            } else if lf && dn && !has(c.translate(-2, -2)) {
                r.sw_angles.push(c);
            }
        }
        r
    }

    pub fn sw_corners(&self) -> Vec<Cell> {
        self.corners().sw_corners
    }

    pub fn barycentre(&self) -> (Rational, Rational) {
        let n = self.cells.len() as i64;
        let sa: i64 = self.cells.iter().map(|c| c.a as i64).sum();
        let sb: i64 = self.cells.iter().map(|c| c.b as i64).sum();
        (rat(sa, 2 * n), rat(sb, 2 * n))
    }

    pub fn has_zero_barycentre(&self) -> bool {
        let (x, y) = self.barycentre();
        x.is_zero() && y.is_zero()
    }

    /// Exactly one SW corner or exactly one NE corner.
    pub fn satisfies_y(&self) -> bool {
        let r = self.corners();
        r.sw_corners.len() == 1 || r.ne_corners.len() == 1
    }

    fn require_symmetric(&self) -> Result<(), DiagramError> {
        if self.is_centrally_symmetric() {
            Ok(())
        } else {
            Err(DiagramError::NotCentrallySymmetric)
        }
    }

    pub fn is_rectangular(&self) -> Result<bool, DiagramError> {
        self.require_symmetric()?;
        Ok(self.sw_corners().len() == 1)
    }

    /// Every standard form the diagram matches, in the order a, b, c.
    pub fn near_rectangular_clauses(&self) -> Result<Vec<NearRectType>, DiagramError> {
        self.require_symmetric()?;
        let sw = self.sw_corners();
        if sw.len() != 2 {
            return Ok(Vec::new());
        }
        let (left, right) = if sw[0].a < sw[1].a {
            (sw[0], sw[1])
        } else {
            (sw[1], sw[0])
        };
        let rectangular_without = |c: Cell| {
            let mut rest = self.cells.clone();
            rest.remove(&c);
            rest.remove(&c.sigma());
            validate_cells(&rest).is_ok()
                && SkewDiagram::from_cells_unchecked(rest).sw_corners().len() == 1
        };
        let mut out = Vec::new();
        if rectangular_without(left) {
            out.push(NearRectType::TypeA);
        }
        if rectangular_without(right) {
            out.push(NearRectType::TypeB);
        }
        if left == right.translate(-2, 2) {
            out.push(NearRectType::TypeC);
        }
        Ok(out)
    }

    pub fn near_rectangular(&self) -> Result<Option<NearRectType>, DiagramError> {
        Ok(self.near_rectangular_clauses()?.first().copied())
    }

    pub fn is_near_rectangular(&self) -> Result<bool, DiagramError> {
        Ok(!self.near_rectangular_clauses()?.is_empty())
    }

    /// Rectangular, or non-integral and near rectangular.
    pub fn satisfies_r(&self) -> Result<bool, DiagramError> {
        Ok(self.is_rectangular()?
            || (self.symmetry_class() == SymmetryClass::NonIntegral
                && self.is_near_rectangular()?))
    }
}

impl fmt::Debug for SkewDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.cells.iter()).finish()
    }
}

fn require_subset(c: &CellSet, gamma: &SkewDiagram) -> Result<(), DiagramError> {
    match c.iter().find(|x| !gamma.contains(x)) {
        Some(&bad) => Err(DiagramError::NotASubset(bad)),
        None => Ok(()),
    }
}

/// `C` is a skew diagram and closed downward/leftward inside `Γ`.
pub fn is_skew_subdiagram(c: &CellSet, gamma: &SkewDiagram) -> Result<bool, DiagramError> {
    require_subset(c, gamma)?;
    if validate_cells(c).is_err() {
        return Ok(false);
    }
    Ok(c.iter().all(|x| {
        [x.left(), x.down()]
            .iter()
            .all(|n| !gamma.contains(n) || c.contains(n))
    }))
}

/// `σ(C)` is a skew subdiagram of `σ(Γ)`: closed upward/rightward inside `Γ`.
pub fn is_sigma_skew_subdiagram(c: &CellSet, gamma: &SkewDiagram) -> Result<bool, DiagramError> {
    require_subset(c, gamma)?;
    if validate_cells(c).is_err() {
        return Ok(false);
    }
    Ok(c.iter().all(|x| {
        [x.right(), x.up()]
            .iter()
            .all(|n| !gamma.contains(n) || c.contains(n))
    }))
}
