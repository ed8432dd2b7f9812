//! Exhaustive catalogs of skew diagrams.
//!
//! A skew diagram is a stack of row intervals `[L_t, R_t]` (bottom to top)
//! where both ends move weakly left going up and consecutive rows share a
//! column. Shapes are generated from that description directly.

use crate::diagram::{Cell, SkewDiagram, SymmetryClass};

/// Rows in doubled coordinates: `(b, lo, hi)`.
type Rows = Vec<(i32, i32, i32)>;

fn rows_to_diagram(rows: &[(i32, i32, i32)]) -> SkewDiagram {
    let cells = rows
        .iter()
        .flat_map(|&(b, lo, hi)| (lo..=hi).step_by(2).map(move |a| Cell::new(a, b)));
    SkewDiagram::new(cells).expect("row construction yields skew diagrams")
}

/// All skew diagrams with `n` cells up to translation, integral, with the
/// leftmost cell of the bottom row at the origin. Sorted canonically.
pub fn shapes(n: usize) -> Vec<SkewDiagram> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut rows: Rows = Vec::new();
    for len in 1..=n as i32 {
        rows.push((0, 0, 2 * (len - 1)));
        grow_up(&mut rows, n - len as usize, &mut out);
        rows.pop();
    }
    out.sort();
    out
}

fn grow_up(rows: &mut Rows, budget: usize, out: &mut Vec<SkewDiagram>) {
    if budget == 0 {
        out.push(rows_to_diagram(rows));
        return;
    }
    let &(b, lo, hi) = rows.last().unwrap();
    let budget_i = budget as i32;
    // Next row [lo', hi'] with hi' in [lo, hi] and lo' <= lo.
    for hi2 in (lo..=hi).step_by(2) {
        for len in 1..=budget_i {
            let lo2 = hi2 - 2 * (len - 1);
            if lo2 > lo {
                continue;
            }
            rows.push((b + 2, lo2, hi2));
            grow_up(rows, budget - len as usize, out);
            rows.pop();
        }
    }
}

/// Every translate of `shapes(n)` is exactly one skew diagram class; this
/// counts them.
pub fn shape_count(n: usize) -> usize {
    shapes(n).len()
}

/// All centrally symmetric skew diagrams with `n` cells in the given coset.
/// Sorted canonically.
pub fn symmetric_diagrams(n: usize, class: SymmetryClass) -> Vec<SkewDiagram> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let (pa, pb) = class.parity();
    let pa = pa as i32;
    if pb == 0 {
        // Odd number of rows; the middle row sits at y = 0 and is [-hi, hi].
        for len in 1..=n {
            if (len as i32 + pa) % 2 == 0 || (n - len) % 2 != 0 {
                continue;
            }
            let hi = len as i32 - 1;
            let mut rows = vec![(0, -hi, hi)];
            grow_down(&mut rows, (n - len) / 2, &mut out);
        }
    } else {
        // Even number of rows; build the row at y = -1/2 and mirror.
        if n % 2 != 0 {
            return out;
        }
        let half = (n / 2) as i32;
        for len in 1..=half {
            let lo_min = -2 * (len - 1) - pa;
            let mut lo = lo_min;
            while lo <= 0 {
                let hi = lo + 2 * (len - 1);
                if lo + hi >= 0 {
                    let mut rows = vec![(-1, lo, hi)];
                    grow_down(&mut rows, (half - len) as usize, &mut out);
                }
                lo += 2;
            }
        }
    }
    out.sort();
    out
}

/// Extends the lower half downward, then mirrors it through the origin.
fn grow_down(rows: &mut Rows, budget: usize, out: &mut Vec<SkewDiagram>) {
    if budget == 0 {
        let mut all = rows.clone();
        for &(b, lo, hi) in rows.iter() {
            if b != 0 {
                all.push((-b, -hi, -lo));
            }
        }
        out.push(rows_to_diagram(&all));
        return;
    }
    let &(b, lo, hi) = rows.last().unwrap();
    let budget_i = budget as i32;
    // Next row below: lo' in [lo, hi], hi' >= hi.
    for lo2 in (lo..=hi).step_by(2) {
        for len in 1..=budget_i {
            let hi2 = lo2 + 2 * (len - 1);
            if hi2 < hi {
                continue;
            }
            rows.push((b - 2, lo2, hi2));
            grow_down(rows, budget - len as usize, out);
            rows.pop();
        }
    }
}

/// Symmetric diagrams of every class, sizes `1..=max_n`.
pub fn all_symmetric_up_to(max_n: usize) -> Vec<SkewDiagram> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for class in SymmetryClass::ALL {
            out.extend(symmetric_diagrams(n, class));
        }
    }
    out
}
