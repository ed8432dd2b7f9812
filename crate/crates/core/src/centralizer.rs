//! Centralizer of a nilpotent pair: explicit basis elements built from index
//! entries, and an independent kernel computation to check them against.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::datum::{LieType, PairDatum};
use crate::diagram::Cell;
use crate::linalg::{ExactMatrix, SparseSystem};
use crate::realization::{BasisIndex, Realization};
use crate::subdiagram::{
    datum_shift_box, datum_shifts, index_by_shift, EntryKind, IndexEntry, Shift,
};

/// One basis element of the centralizer.
#[derive(Debug, Clone)]
pub struct CentralizerElement {
    pub entry: IndexEntry,
    pub x: ExactMatrix,
    /// `(source, target, coefficient)` for each nonzero matrix entry.
    pub coefficients: Vec<(BasisIndex, BasisIndex, i64)>,
}

impl CentralizerElement {
    pub fn shift(&self) -> Shift {
        self.entry.shift
    }
}

#[derive(Debug, Clone, Default)]
pub struct GradedCentralizerBasis {
    pub pieces: BTreeMap<Shift, Vec<CentralizerElement>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Dims {
    pub dim_z: usize,
    pub dim_zplus: usize,
    pub dim_zplus_int: usize,
}

impl GradedCentralizerBasis {
    pub fn dims(&self) -> Dims {
        dims_from_counts(self.pieces.iter().map(|(s, v)| (*s, v.len())))
    }

    pub fn elements(&self) -> impl Iterator<Item = &CentralizerElement> {
        self.pieces.values().flatten()
    }

    pub fn positive_elements(&self) -> impl Iterator<Item = &CentralizerElement> {
        self.elements().filter(|e| e.shift().is_nonnegative())
    }
}

fn dims_from_counts(counts: impl Iterator<Item = (Shift, usize)>) -> Dims {
    let mut d = Dims {
        dim_z: 0,
        dim_zplus: 0,
        dim_zplus_int: 0,
    };
    for (s, n) in counts {
        d.dim_z += n;
        if s.is_nonnegative() {
            d.dim_zplus += n;
            if s.is_integral() {
                d.dim_zplus_int += n;
            }
        }
    }
    d
}

/// Per-shift number of index entries.
pub fn combinatorial_counts(datum: &PairDatum) -> BTreeMap<Shift, usize> {
    index_by_shift(datum)
        .into_iter()
        .map(|(s, v)| (s, v.len()))
        .collect()
}

/// Dimensions from the index sets alone.
pub fn dims(datum: &PairDatum) -> Dims {
    dims_from_counts(combinatorial_counts(datum).into_iter())
}

/// Coefficients of the element attached to `entry`, normalized to `+1` at the
/// first cell of `C`.
pub fn element_coefficients(
    lie: LieType,
    entry: &IndexEntry,
) -> Vec<(BasisIndex, BasisIndex, i64)> {
    let s = entry.shift;
    let (k, l) = (entry.k, entry.l);
    let mut out = Vec::new();
    let mut emit =
        |from: u8, to: u8, cells: &std::collections::BTreeSet<Cell>, coef: &dyn Fn(Cell) -> i64| {
            for &c in cells {
                out.push((
                    BasisIndex { k: from, cell: c },
                    BasisIndex {
                        k: to,
                        cell: s.apply(c),
                    },
                    coef(c),
                ));
            }
        };
    match entry.kind {
        EntryKind::Single => emit(k, k, &entry.c, &|_| 1),
        EntryKind::Cross | EntryKind::SelfPair => {
            let paired = entry.c == entry.c_prime;
            let even = s.p_plus_q_even();
            let (on_c, on_cp): (Box<dyn Fn(Cell) -> i64>, Box<dyn Fn(Cell) -> i64>) = match lie {
                LieType::B | LieType::D if even => (Box::new(|_| 1), Box::new(|_| -1)),
                LieType::B | LieType::D => {
                    (Box::new(|c: Cell| c.sign()), Box::new(|c: Cell| c.sign()))
                }
                LieType::C => {
                    let mu = if even { -1 } else { 1 };
                    (Box::new(|_| 1), Box::new(move |_| mu))
                }
                LieType::A => unreachable!("type A has single entries only"),
            };
            emit(k, l, &entry.c, &*on_c);
            if !paired {
                emit(l, k, &entry.c_prime, &*on_cp);
            }
        }
    }
    let first = *entry.c.iter().next().expect("nonempty");
    let lead = out
        .iter()
        .find(|(src, _, _)| src.k == k && src.cell == first)
        .map(|t| t.2)
        .unwrap();
    if lead < 0 {
        for t in &mut out {
            t.2 = -t.2;
        }
    }
    out
}

pub fn build_element(r: &Realization, entry: &IndexEntry) -> CentralizerElement {
    let coefficients = element_coefficients(r.datum.lie_type(), entry);
    let x = r.matrix_from_entries(&coefficients);
    CentralizerElement {
        entry: entry.clone(),
        x,
        coefficients,
    }
}

pub fn combinatorial_basis(datum: &PairDatum) -> GradedCentralizerBasis {
    let r = Realization::build(datum);
    combinatorial_basis_for(&r)
}

pub fn combinatorial_basis_for(r: &Realization) -> GradedCentralizerBasis {
    let pieces = index_by_shift(&r.datum)
        .into_iter()
        .map(|(s, entries)| (s, entries.iter().map(|e| build_element(r, e)).collect()))
        .collect();
    GradedCentralizerBasis { pieces }
}

/// The linear system `[x, e₁] = [x, e₂] = 0, x ∈ g` in the unknowns
/// `x[row][col]` (column index `row·n + col`).
pub fn centralizer_system(r: &Realization) -> SparseSystem {
    let n = r.dim();
    let var = |row: usize, col: usize| row * n + col;
    let mut sys = SparseSystem::new(n * n);
    let to_i64 = |v: &crate::linalg::Rational| -> i64 {
        assert!(v.is_integer(), "integral structure constants");
        i64::try_from(v.to_integer()).expect("small")
    };
    for e in [&r.e1, &r.e2] {
        let nz: Vec<(usize, usize, i64)> =
            e.nonzeros().map(|(i, j, v)| (i, j, to_i64(v))).collect();
        // ([x,e])_{i,j} = Σ_m x_{i,m} e_{m,j} − e_{i,m} x_{m,j}
        let mut by_col: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
        let mut by_row: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
        for &(m, j, v) in &nz {
            by_col[j].push((m, v));
            by_row[m].push((j, v));
        }
        for i in 0..n {
            for j in 0..n {
                let mut row = Vec::new();
                for &(m, v) in &by_col[j] {
                    row.push((var(i, m), v));
                }
                for &(m, v) in &by_row[i] {
                    row.push((var(m, j), -v));
                }
                sys.push(row);
            }
        }
    }
    match &r.gram {
        None => sys.push((0..n).map(|i| (var(i, i), 1)).collect()),
        Some(g) => {
            let gnz: Vec<(usize, usize, i64)> =
                g.nonzeros().map(|(i, j, v)| (i, j, to_i64(v))).collect();
            let mut g_row: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
            let mut g_col: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
            for &(i, j, v) in &gnz {
                g_row[i].push((j, v));
                g_col[j].push((i, v));
            }
            // (xᵀG + Gx)_{u,v} = Σ_m x_{m,u} G_{m,v} + G_{u,m} x_{m,v}
            for u in 0..n {
                for v in u..n {
                    let mut row = Vec::new();
                    for &(m, gv) in &g_col[v] {
                        row.push((var(m, u), gv));
                    }
                    for &(m, gv) in &g_row[u] {
                        row.push((var(m, v), gv));
                    }
                    sys.push(row);
                }
            }
        }
    }
    sys
}

/// Degree of the unknown `x[row][col]`, doubled.
fn unknown_degree(r: &Realization, row: usize, col: usize) -> Shift {
    let (a, b) = (r.basis[row].cell, r.basis[col].cell);
    Shift::new(a.a - b.a, a.b - b.b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Nonzero kernel dimensions by degree.
    pub per_shift: BTreeMap<Shift, usize>,
    /// Kernel dimension of the undecomposed system.
    pub total: usize,
}

impl OracleResult {
    pub fn dim_at(&self, s: Shift) -> usize {
        self.per_shift.get(&s).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> Dims {
        dims_from_counts(self.per_shift.iter().map(|(s, n)| (*s, *n)))
    }
}

/// Groups unknowns by degree.
fn degree_blocks(r: &Realization) -> BTreeMap<Shift, Vec<usize>> {
    let n = r.dim();
    let mut blocks: BTreeMap<Shift, Vec<usize>> = BTreeMap::new();
    for row in 0..n {
        for col in 0..n {
            blocks
                .entry(unknown_degree(r, row, col))
                .or_default()
                .push(row * n + col);
        }
    }
    blocks
}

/// Kernel dimensions of the centralizer system, split by `(h₁, h₂)`-degree.
/// Uses only the matrices of the realization.
pub fn oracle_centralizer(r: &Realization) -> OracleResult {
    let sys = centralizer_system(r);
    let total = sys.nullity();
    let n = r.dim();
    let mut block_of = vec![Shift::ZERO; n * n];
    let blocks = degree_blocks(r);
    for (s, vars) in &blocks {
        for &v in vars {
            block_of[v] = *s;
        }
    }
    let mut rows_by_block: BTreeMap<Shift, Vec<Vec<(usize, i64)>>> = BTreeMap::new();
    for row in &sys.rows {
        let s = block_of[row[0].0];
        assert!(
            row.iter().all(|&(c, _)| block_of[c] == s),
            "system is graded"
        );
        rows_by_block.entry(s).or_default().push(row.clone());
    }
    let mut per_shift = BTreeMap::new();
    for (s, vars) in &blocks {
        let mut local = vec![usize::MAX; n * n];
        for (i, &v) in vars.iter().enumerate() {
            local[v] = i;
        }
        let mut sub = SparseSystem::new(vars.len());
        for row in rows_by_block.get(s).into_iter().flatten() {
            sub.push(row.iter().map(|&(c, v)| (local[c], v)).collect());
        }
        let k = sub.nullity();
        if k > 0 {
            per_shift.insert(*s, k);
        }
    }
    let sum: usize = per_shift.values().sum();
    assert_eq!(sum, total, "graded pieces add up to the full kernel");
    OracleResult { per_shift, total }
}

/// Dimension of the solution space supported on the element's entries.
pub fn support_kernel_dim(r: &Realization, element: &CentralizerElement) -> usize {
    let n = r.dim();
    let sys = centralizer_system(r);
    let mut cols: Vec<usize> = element
        .coefficients
        .iter()
        .map(|(src, dst, _)| {
            r.position(dst.k, dst.cell).unwrap() * n + r.position(src.k, src.cell).unwrap()
        })
        .collect();
    cols.sort_unstable();
    cols.dedup();
    sys.restrict(&cols).nullity()
}

/// Checks that an element commutes with `e₁, e₂`, lies in `g`, and has the
/// expected degree.
pub fn verify_element(r: &Realization, el: &CentralizerElement) -> Result<(), String> {
    if !el.x.commutator(&r.e1).unwrap().is_zero() {
        return Err(format!("{:?}: [x,e1] != 0", el.entry));
    }
    if !el.x.commutator(&r.e2).unwrap().is_zero() {
        return Err(format!("{:?}: [x,e2] != 0", el.entry));
    }
    if !r.in_lie_algebra(&el.x).unwrap() {
        return Err(format!("{:?}: not in g", el.entry));
    }
    if r.graded_degree(&el.x) != Some(el.shift()) {
        return Err(format!(
            "{:?}: degree {:?} != {}",
            el.entry,
            r.graded_degree(&el.x),
            el.shift()
        ));
    }
    Ok(())
}

pub fn is_abelian<'a>(elements: impl IntoIterator<Item = &'a ExactMatrix>) -> bool {
    let v: Vec<&ExactMatrix> = elements.into_iter().collect();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            match v[i].commutator(v[j]) {
                Ok(c) if c.is_zero() => {}
                _ => return false,
            }
        }
    }
    true
}

/// All positive-quadrant basis elements commute pairwise.
pub fn check_zplus_abelian(datum: &PairDatum) -> bool {
    let basis = combinatorial_basis(datum);
    is_abelian(basis.positive_elements().map(|e| &e.x))
}

/// A commuting family of `rank` elements in the integer positive quadrant:
/// positive single entries (type A), positive self entries (B, C, D), plus
/// for type D one cross entry pairing a SW corner of `Γ²` with one of `Γ³`.
pub fn build_abelian_subalgebra(datum: &PairDatum) -> Vec<CentralizerElement> {
    let basis = combinatorial_basis(datum);
    let positive_int = |e: &&CentralizerElement| {
        let s = e.shift();
        s.is_nonnegative() && s.is_integral()
    };
    let mut chosen: Vec<CentralizerElement> = basis
        .elements()
        .filter(positive_int)
        .filter(|e| matches!(e.entry.kind, EntryKind::Single | EntryKind::SelfPair))
        .cloned()
        .collect();
    if datum.lie_type() == LieType::D {
        if let (Some(g2), Some(g3)) = (datum.gamma(2), datum.gamma(3)) {
            let sw2 = g2.sw_corners();
            let sw3 = g3.sw_corners();
            let candidates = basis.elements().filter(positive_int).filter(|e| {
                let en = &e.entry;
                en.kind == EntryKind::Cross
                    && (en.k, en.l) == (2, 3)
                    && en.c.len() == 1
                    && en.c_prime.len() == 1
                    && sw2.contains(en.c.iter().next().unwrap())
                    && sw3.contains(en.c_prime.iter().next().unwrap())
            });
            for cand in candidates {
                if is_abelian(chosen.iter().map(|e| &e.x).chain([&cand.x])) {
                    chosen.push(cand.clone());
                    break;
                }
            }
        }
    }
    chosen
}

/// Per-shift comparison row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftRow {
    pub shift: Shift,
    pub combinatorial: usize,
    pub oracle: Option<usize>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

/// Table over every shift where either side is nonzero, plus `(0,0)`.
pub fn comparison_table(datum: &PairDatum, with_oracle: bool) -> Vec<ShiftRow> {
    let counts = combinatorial_counts(datum);
    let oracle = with_oracle.then(|| oracle_centralizer(&Realization::build(datum)));
    let mut shifts: Vec<Shift> = counts.keys().copied().collect();
    if let Some(o) = &oracle {
        shifts.extend(o.per_shift.keys().copied());
    }
    shifts.push(Shift::ZERO);
    shifts.sort();
    shifts.dedup();
    shifts
        .into_iter()
        .map(|s| {
            let c = counts.get(&s).copied().unwrap_or(0);
            let o = oracle.as_ref().map(|o| o.dim_at(s));
            ShiftRow {
                shift: s,
                combinatorial: c,
                oracle: o,
                matches: o.map(|o| o == c),
            }
        })
        .collect()
}

/// Oracle degrees all lie inside the combinatorial shift range.
pub fn oracle_within_box(datum: &PairDatum, oracle: &OracleResult) -> bool {
    let (ba, bb) = datum_shift_box(datum);
    let shifts = datum_shifts(datum);
    oracle
        .per_shift
        .keys()
        .all(|s| s.a.abs() <= ba && s.b.abs() <= bb && shifts.contains(s))
}
