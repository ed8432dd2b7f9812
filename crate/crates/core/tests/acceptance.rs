//! Acceptance criteria. Each test prints one `criterion N: PASS|FAIL` line.
//!
//! Run with `cargo test -p nilpair-core --test acceptance -- --nocapture`.

use std::collections::BTreeSet;

use nilpair_core::catalog::{shapes, symmetric_diagrams};
use nilpair_core::centralizer::{
    build_abelian_subalgebra, check_zplus_abelian, combinatorial_basis_for, combinatorial_counts,
    dims, is_abelian, oracle_centralizer, oracle_within_box, verify_element,
};
use nilpair_core::classify::{
    enumerate_data, min_rank, origin_pair_minimal, predict, refined_almost_principal, search,
    verdict, SearchPredicate,
};
use nilpair_core::datum::{DatumError, LieType, PairDatum};
use nilpair_core::diagram::{Cell, SkewDiagram, SymmetryClass};
use nilpair_core::linalg::ExactMatrix;
use nilpair_core::realization::{verify_realization, BasisIndex, Realization};
use nilpair_core::subdiagram::{card_e_plus_cross, card_e_plus_self, card_e_plus_single, Shift};

fn report(n: u32, failures: &[String], summary: &str) {
    if failures.is_empty() {
        println!("criterion {n}: PASS ({summary})");
    } else {
        println!(
            "criterion {n}: FAIL ({summary}; {} failures)",
            failures.len()
        );
        for f in failures.iter().take(10) {
            println!("    {f}");
        }
    }
    assert!(
        failures.is_empty(),
        "criterion {n} failed: {:?}",
        &failures[..failures.len().min(10)]
    );
}

fn strip3() -> SkewDiagram {
    SkewDiagram::from_int(&[(-1, 0), (0, 0), (1, 0)]).unwrap()
}

fn near_rect5() -> SkewDiagram {
    SkewDiagram::from_int(&[(-1, 1), (0, 1), (0, 0), (0, -1), (1, -1)]).unwrap()
}

fn plus7() -> SkewDiagram {
    SkewDiagram::from_int(&[(-1, 1), (0, 1), (-1, 0), (0, 0), (1, 0), (0, -1), (1, -1)]).unwrap()
}

#[test]
fn criterion_1_positive_single_count() {
    let mut failures = Vec::new();
    let mut total = 0;
    for n in 1..=8 {
        for g in shapes(n) {
            total += 1;
            let c = card_e_plus_single(&g);
            if c != n - 1 {
                failures.push(format!("{g:?}: {c} != {}", n - 1));
            }
        }
    }
    report(
        1,
        &failures,
        &format!("{total} shapes with at most 8 cells"),
    );
}

#[test]
fn criterion_2_positive_self_count() {
    let mut failures = Vec::new();
    let mut total = 0;
    for n in 1..=12 {
        for class in SymmetryClass::ALL {
            for g in symmetric_diagrams(n, class) {
                total += 1;
                let c = card_e_plus_self(&g);
                if c != n / 2 {
                    failures.push(format!("{g:?}: {c} != {}", n / 2));
                }
            }
        }
    }
    report(
        2,
        &failures,
        &format!("{total} symmetric diagrams with at most 12 cells"),
    );
}

#[test]
fn criterion_3_cross_counts() {
    let mut failures = Vec::new();
    let ex = card_e_plus_cross(&strip3(), &near_rect5());
    if ex != 2 {
        failures.push(format!("strip/near-rectangle pair: {ex} != 2"));
    }
    let mut origin_pairs = 0;
    let mut equality = 0;
    for n1 in (1..=11).step_by(2) {
        for n2 in (3..=12 - n1).step_by(2) {
            for g in symmetric_diagrams(n1, SymmetryClass::Integral) {
                for gp in symmetric_diagrams(n2, SymmetryClass::Integral) {
                    if g.cells().intersection(gp.cells()).count() != 1 {
                        continue;
                    }
                    origin_pairs += 1;
                    let c = card_e_plus_cross(&g, &gp);
                    let predicted = origin_pair_minimal(&g, &gp);
                    equality += (c == 1) as usize;
                    if c < 1 || (c == 1) != predicted {
                        failures.push(format!("{g:?} {gp:?}: card {c}, clause {predicted}"));
                    }
                }
            }
        }
    }
    let mut mixed_pairs = 0;
    for n1 in 1..=11 {
        for n2 in 1..=12 - n1 {
            for c1 in SymmetryClass::ALL {
                for c2 in SymmetryClass::ALL {
                    if c1 == c2 {
                        continue;
                    }
                    for g in symmetric_diagrams(n1, c1) {
                        for gp in symmetric_diagrams(n2, c2) {
                            mixed_pairs += 1;
                            if card_e_plus_cross(&g, &gp) < 1 {
                                failures.push(format!("{g:?} {gp:?}: empty"));
                            }
                        }
                    }
                }
            }
        }
    }
    report(
        3,
        &failures,
        &format!(
            "{origin_pairs} origin-sharing pairs ({equality} with equality), {mixed_pairs} mixed-coset pairs, example pair gives {ex}"
        ),
    );
}

#[test]
fn criterion_4_oracle_equivalence() {
    let mut failures = Vec::new();
    let mut count = 0;
    let mut elements = 0;
    for lie in LieType::ALL {
        for rank in min_rank(lie)..=6 {
            for d in enumerate_data(lie, rank).unwrap() {
                if d.dim_v() > 14 {
                    continue;
                }
                count += 1;
                let r = Realization::build(&d);
                let oracle = oracle_centralizer(&r);
                let counts = combinatorial_counts(&d);
                if oracle.per_shift != counts {
                    failures.push(format!(
                        "{d:?}: oracle {:?} vs {:?}",
                        oracle.per_shift, counts
                    ));
                }
                if oracle.dim_at(Shift::ZERO) != 0 {
                    failures.push(format!("{d:?}: nonzero degree-0 piece"));
                }
                if !oracle_within_box(&d, &oracle) {
                    failures.push(format!("{d:?}: oracle degree outside shift box"));
                }
                if rank <= 4 {
                    for el in combinatorial_basis_for(&r).elements() {
                        elements += 1;
                        if let Err(e) = verify_element(&r, el) {
                            failures.push(e);
                        }
                    }
                }
            }
        }
    }
    report(
        4,
        &failures,
        &format!(
            "{count} data with dim V <= 14, {elements} explicit elements re-verified at rank <= 4"
        ),
    );
}

#[test]
fn criterion_5_non_wonderful_d4() {
    let mut failures = Vec::new();
    let d = PairDatum::type_d(None, Some(strip3()), Some(near_rect5()), 1).unwrap();
    let dm = dims(&d);
    let v = verdict(&d);
    let oracle = oracle_centralizer(&Realization::build(&d));
    if d.rank() != 4 {
        failures.push(format!("rank {}", d.rank()));
    }
    if dm.dim_zplus != 5 || dm.dim_zplus_int != 5 {
        failures.push(format!("positive quadrant {dm:?}"));
    }
    if v.is_wonderful {
        failures.push("reported wonderful".into());
    }
    if oracle.dims() != dm || oracle.total != dm.dim_z {
        failures.push(format!(
            "oracle {:?} vs combinatorial {dm:?}",
            oracle.dims()
        ));
    }
    // Self entries 1 + 3 plus cross entries at (0,1), (1,1), (2,-1); the
    // oracle kernel has the same total.
    if dm.dim_z != 7 {
        failures.push(format!("total {}", dm.dim_z));
    }
    report(
        5,
        &failures,
        &format!(
            "positive quadrant {} > rank 4, not wonderful, total {} (oracle {})",
            dm.dim_zplus, dm.dim_z, oracle.total
        ),
    );
}

/// `x v_{i,j} = coef(i,j) v_{i+di, j+dj}` wherever both cells lie in `Γ`.
fn formula_matrix(
    r: &Realization,
    di: i32,
    dj: i32,
    coef: impl Fn(i32, i32) -> i64,
) -> ExactMatrix {
    let mut entries = Vec::new();
    for b in &r.basis {
        let (i, j) = (b.cell.a / 2, b.cell.b / 2);
        let target = Cell::int(i + di, j + dj);
        if r.position(b.k, target).is_some() {
            entries.push((
                *b,
                BasisIndex {
                    k: b.k,
                    cell: target,
                },
                coef(i, j),
            ));
        }
    }
    r.matrix_from_entries(&entries)
}

#[test]
fn criterion_6_seven_cell_example() {
    let mut failures = Vec::new();
    let d = PairDatum::type_b(Some(plus7()), None).unwrap();
    let r = Realization::build(&d);
    let oracle = oracle_centralizer(&r);
    let expected: BTreeSet<Shift> = [(1, 0), (0, 1), (1, 1), (2, -1), (-1, 2)]
        .iter()
        .map(|&(p, q)| Shift::int(p, q))
        .collect();
    if oracle.total != 5 {
        failures.push(format!("oracle total {}", oracle.total));
    }
    let found: BTreeSet<Shift> = oracle.per_shift.keys().copied().collect();
    if found != expected || oracle.per_shift.values().any(|&n| n != 1) {
        failures.push(format!("oracle pieces {:?}", oracle.per_shift));
    }
    if combinatorial_counts(&d) != oracle.per_shift {
        failures.push("combinatorial count differs from oracle".into());
    }
    let odd = |i: i32, j: i32| if (i + j + 1) % 2 == 0 { 1 } else { -1 };
    let x1 = r.matrix_from_entries(&[
        (
            BasisIndex {
                k: 1,
                cell: Cell::int(0, -1),
            },
            BasisIndex {
                k: 1,
                cell: Cell::int(1, 0),
            },
            1,
        ),
        (
            BasisIndex {
                k: 1,
                cell: Cell::int(-1, 0),
            },
            BasisIndex {
                k: 1,
                cell: Cell::int(0, 1),
            },
            -1,
        ),
    ]);
    let printed = [
        ("x1", x1, Shift::int(1, 1)),
        ("x2", formula_matrix(&r, 0, 1, odd), Shift::int(0, 1)),
        ("x3", formula_matrix(&r, 1, 0, odd), Shift::int(1, 0)),
        ("x4", formula_matrix(&r, 2, -1, odd), Shift::int(2, -1)),
        ("x5", formula_matrix(&r, -1, 2, odd), Shift::int(-1, 2)),
    ];
    for (name, x, s) in &printed {
        if x.is_zero() {
            failures.push(format!("{name} is zero"));
            continue;
        }
        if !x.commutator(&r.e1).unwrap().is_zero() || !x.commutator(&r.e2).unwrap().is_zero() {
            failures.push(format!("{name} does not commute"));
        }
        if !r.in_lie_algebra(x).unwrap() {
            failures.push(format!("{name} not orthogonal"));
        }
        if r.graded_degree(x) != Some(*s) {
            failures.push(format!("{name} degree {:?}", r.graded_degree(x)));
        }
    }
    let flat = ExactMatrix::from_rows(
        printed
            .iter()
            .map(|(_, x, _)| x.entries().to_vec())
            .collect(),
    )
    .unwrap();
    if flat.rank() != 5 {
        failures.push(format!("printed elements span {}", flat.rank()));
    }
    report(
        6,
        &failures,
        "7-cell diagram in so7: five printed elements commute, are orthogonal, and span the centralizer",
    );
}

#[test]
fn criterion_7_clause_agreement() {
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    let mut refined_ok = true;
    for lie in LieType::ALL {
        let top = if lie == LieType::A { 6 } else { 5 };
        let mut n = 0;
        let mut ap = 0;
        for rank in min_rank(lie)..=top {
            for d in enumerate_data(lie, rank).unwrap() {
                n += 1;
                let v = verdict(&d);
                ap += v.is_almost_principal as usize;
                if !v.agrees {
                    failures.push(format!("{d:?}: {v:?}"));
                }
                if let Some(refined) = refined_almost_principal(&d) {
                    refined_ok &= refined == v.is_almost_principal;
                }
                let both_rect = matches!(lie, LieType::B | LieType::C)
                    && match (d.gamma(1), d.gamma(2)) {
                        (Some(a), Some(b)) => {
                            a.is_rectangular().unwrap() && b.is_rectangular().unwrap()
                        }
                        _ => false,
                    };
                if both_rect && !v.zplus_equals_z {
                    failures.push(format!("{d:?}: rectangular pair with Z != Z+"));
                }
            }
        }
        summary.push(format!("{lie}: {n} data, {ap} almost principal"));
        let found = search(lie, top, SearchPredicate::AlmostPrincipal).unwrap();
        match lie {
            LieType::A | LieType::D => {
                if !found.is_empty() {
                    failures.push(format!("{lie}: almost principal data exist"));
                }
            }
            _ => {
                let listed: Vec<_> = (min_rank(lie)..=top)
                    .flat_map(|r| enumerate_data(lie, r).unwrap())
                    .filter(|d| predict(d).almost_principal)
                    .collect();
                let got: Vec<_> = found.into_iter().map(|(d, _)| d).collect();
                if got != listed {
                    failures.push(format!(
                        "{lie}: search gives {} almost principal data, clause families list {}",
                        got.len(),
                        listed.len()
                    ));
                }
            }
        }
    }
    summary.push(format!(
        "coset-refined type C rule {}",
        if refined_ok {
            "matches"
        } else {
            "does not match"
        }
    ));
    report(7, &failures, &summary.join(", "));
}

#[test]
fn criterion_8_abelian_subalgebras() {
    let mut failures = Vec::new();
    let mut ap = 0;
    let mut checked = 0;
    for lie in LieType::ALL {
        let top = if lie == LieType::A { 6 } else { 5 };
        for (d, _) in search(lie, top, SearchPredicate::AlmostPrincipal).unwrap() {
            ap += 1;
            if !check_zplus_abelian(&d) {
                failures.push(format!("{d:?}: positive quadrant not abelian"));
            }
        }
        for rank in min_rank(lie)..=4 {
            for d in enumerate_data(lie, rank).unwrap() {
                checked += 1;
                let ab = build_abelian_subalgebra(&d);
                if ab.len() != d.rank() || !is_abelian(ab.iter().map(|e| &e.x)) {
                    failures.push(format!("{d:?}: {} elements", ab.len()));
                }
                if ab
                    .iter()
                    .any(|e| !e.shift().is_nonnegative() || !e.shift().is_integral())
                {
                    failures.push(format!(
                        "{d:?}: element outside the integer positive quadrant"
                    ));
                }
            }
        }
    }
    report(
        8,
        &failures,
        &format!(
            "{ap} almost principal data abelian, {checked} data with rank-size abelian families"
        ),
    );
}

#[test]
fn criterion_9_negative_controls() {
    let mut failures = Vec::new();
    let d = PairDatum::type_b(Some(plus7()), None).unwrap();
    let mut r = Realization::build(&d);
    if !verify_realization(&r).all_passed() {
        failures.push("clean realization rejected".into());
    }
    let (i, j, v) =
        r.e1.nonzeros()
            .map(|(i, j, v)| (i, j, v.clone()))
            .next()
            .unwrap();
    r.e1.set(i, j, -v);
    let rep = verify_realization(&r);
    if !rep.failures().any(|c| c.name.contains("[e1,e2]")) {
        failures.push("sign corruption not detected".into());
    }
    let cut: Vec<Cell> = plus7()
        .iter()
        .copied()
        .filter(|c| *c != Cell::int(0, 1))
        .collect();
    let cut = SkewDiagram::new(cut).unwrap();
    match PairDatum::type_b(Some(cut), None) {
        Err(DatumError::CardinalityMismatch { .. }) => {}
        other => failures.push(format!("deleting a cell gave {other:?}")),
    }
    report(
        9,
        &failures,
        "sign corruption and a deleted cell both rejected",
    );
}
