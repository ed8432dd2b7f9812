//! Explicit matrices `e₁, e₂, h₁, h₂` and the invariant form for a datum.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::datum::{LieType, PairDatum};
use crate::diagram::Cell;
use crate::linalg::{format_rational, rat, rat_int, ExactMatrix, MatrixError, Rational};
use crate::subdiagram::Shift;

/// Basis vector `v^k_{cell}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisIndex {
    pub k: u8,
    pub cell: Cell,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    None,
    Symmetric,
    Alternating,
}

#[derive(Debug, Clone)]
pub struct Realization {
    pub datum: PairDatum,
    pub basis: Vec<BasisIndex>,
    index: HashMap<BasisIndex, usize>,
    pub e1: ExactMatrix,
    pub e2: ExactMatrix,
    pub h1: ExactMatrix,
    pub h2: ExactMatrix,
    pub form: FormKind,
    /// `gram[u][v] = (b_u, b_v)`; absent for type A.
    pub gram: Option<ExactMatrix>,
}

/// `(−1)^(i+j+1/2)` for a semi-integral cell.
fn alt_sign(c: Cell) -> i64 {
    let s = c.a + c.b;
    assert!(s.rem_euclid(2) == 1, "i+j+1/2 not integral at {c}");
    if ((s + 1) / 2).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl Realization {
    pub fn build(datum: &PairDatum) -> Realization {
        let lie = datum.lie_type();
        let mut basis = Vec::new();
        for (k, g) in datum.components() {
            let parity_sum = g.iter().next().map(|c| (c.a + c.b).rem_euclid(2));
            match lie {
                LieType::B | LieType::D => assert_eq!(parity_sum, Some(0), "i+j must be integral"),
                LieType::C => assert_eq!(parity_sum, Some(1), "i+j+1/2 must be integral"),
                LieType::A => {}
            }
            basis.extend(g.iter().map(|&cell| BasisIndex { k, cell }));
        }
        let n = basis.len();
        let index: HashMap<BasisIndex, usize> =
            basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();

        let (bx, by) = match lie {
            LieType::A => datum.gamma(1).unwrap().barycentre(),
            _ => (Rational::zero(), Rational::zero()),
        };

        let mut e1 = ExactMatrix::zeros(n, n);
        let mut e2 = ExactMatrix::zeros(n, n);
        let mut h1 = Vec::with_capacity(n);
        let mut h2 = Vec::with_capacity(n);
        for (col, b) in basis.iter().enumerate() {
            let (c1, c2) = match lie {
                LieType::A | LieType::C => (1, 1),
                LieType::B | LieType::D => (b.cell.sign(), -b.cell.sign()),
            };
            let right = BasisIndex {
                k: b.k,
                cell: b.cell.right(),
            };
            if let Some(&row) = index.get(&right) {
                e1.set(row, col, rat_int(c1));
            }
            let up = BasisIndex {
                k: b.k,
                cell: b.cell.up(),
            };
            if let Some(&row) = index.get(&up) {
                e2.set(row, col, rat_int(c2));
            }
            h1.push(b.cell.x() - &bx);
            h2.push(b.cell.y() - &by);
        }

        let (form, gram) = match lie {
            LieType::A => (FormKind::None, None),
            _ => {
                let mut g = ExactMatrix::zeros(n, n);
                for (u, b) in basis.iter().enumerate() {
                    let mirror = BasisIndex {
                        k: b.k,
                        cell: b.cell.sigma(),
                    };
                    let v = index[&mirror];
                    let d = if lie == LieType::C {
                        alt_sign(b.cell)
                    } else {
                        1
                    };
                    g.set(u, v, rat_int(d));
                }
                let kind = if lie == LieType::C {
                    FormKind::Alternating
                } else {
                    FormKind::Symmetric
                };
                (kind, Some(g))
            }
        };

        Realization {
            datum: datum.clone(),
            basis,
            index,
            e1,
            e2,
            h1: ExactMatrix::diagonal(&h1),
            h2: ExactMatrix::diagonal(&h2),
            form,
            gram,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, k: u8, cell: Cell) -> Option<usize> {
        self.index.get(&BasisIndex { k, cell }).copied()
    }

    /// `x ∈ g`: trace zero for type A, form-skew otherwise.
    pub fn in_lie_algebra(&self, x: &ExactMatrix) -> Result<bool, MatrixError> {
        let n = self.dim();
        if x.rows() != n || x.cols() != n {
            return Err(MatrixError::DimensionMismatch {
                left: (x.rows(), x.cols()),
                right: (n, n),
            });
        }
        match &self.gram {
            None => Ok(x.trace()?.is_zero()),
            Some(g) => Ok(x.transpose().mul(g)?.add(&g.mul(x)?)?.is_zero()),
        }
    }

    /// `(p, q)` with `[h₁, x] = p·x` and `[h₂, x] = q·x`, if `x` is homogeneous.
    pub fn graded_degree(&self, x: &ExactMatrix) -> Option<Shift> {
        let (r, c, _) = x.nonzeros().next()?;
        let p = self.h1.get(r, r) - self.h1.get(c, c);
        let q = self.h2.get(r, r) - self.h2.get(c, c);
        let ok1 = self.h1.commutator(x).ok()? == x.scale(&p);
        let ok2 = self.h2.commutator(x).ok()? == x.scale(&q);
        if !(ok1 && ok2) {
            return None;
        }
        let two = rat_int(2);
        let a = (&p * &two).to_integer();
        let b = (&q * &two).to_integer();
        Some(Shift::new(
            i32::try_from(a).expect("small"),
            i32::try_from(b).expect("small"),
        ))
    }

    /// Matrix of `v_u ↦ coef · v_{u+s}` style maps, from explicit entries.
    pub fn matrix_from_entries(&self, entries: &[(BasisIndex, BasisIndex, i64)]) -> ExactMatrix {
        let n = self.dim();
        let mut x = ExactMatrix::zeros(n, n);
        for (src, dst, coef) in entries {
            let c = self.index[src];
            let r = self.index[dst];
            x.set(r, c, rat_int(*coef));
        }
        x
    }

    pub fn describe(&self, i: usize) -> String {
        let b = self.basis[i];
        format!("v^{}_{}", b.k, b.cell)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "datum": self.datum.to_json(),
            "basis": self.basis.iter().map(|b| json!({"k": b.k, "cell": [b.cell.a, b.cell.b]})).collect::<Vec<_>>(),
            "e1": matrix_json(&self.e1),
            "e2": matrix_json(&self.e2),
            "h1": matrix_json(&self.h1),
            "h2": matrix_json(&self.h2),
            "form": self.form,
            "gram": self.gram.as_ref().map(matrix_json),
        })
    }
}

/// Dense rows of `"n/d"` strings.
pub fn matrix_json(m: &ExactMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| {
                Value::Array(
                    m.row(r)
                        .iter()
                        .map(|v| Value::String(format_rational(v)))
                        .collect(),
                )
            })
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Names the first basis vector on which `m` is nonzero.
fn zero_witness(r: &Realization, m: &ExactMatrix) -> Option<String> {
    m.nonzeros().next().map(|(row, col, v)| {
        format!(
            "applied to {} gives {} on {}",
            r.describe(col),
            format_rational(v),
            r.describe(row)
        )
    })
}

fn is_nilpotent(m: &ExactMatrix) -> bool {
    m.pow(m.rows() as u32).map(|p| p.is_zero()).unwrap_or(false)
}

/// Checks every defining identity of the realization.
pub fn verify_realization(r: &Realization) -> VerifyReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, diff: ExactMatrix| {
        let witness = zero_witness(r, &diff);
        checks.push(Check {
            name: name.into(),
            passed: witness.is_none(),
            witness,
        });
    };
    let br = |x: &ExactMatrix, y: &ExactMatrix| x.commutator(y).expect("square");
    push("[e1,e2]=0", br(&r.e1, &r.e2));
    push("[h1,e1]=e1", br(&r.h1, &r.e1).sub(&r.e1).unwrap());
    push("[h2,e2]=e2", br(&r.h2, &r.e2).sub(&r.e2).unwrap());
    push("[h1,e2]=0", br(&r.h1, &r.e2));
    push("[h2,e1]=0", br(&r.h2, &r.e1));
    push("[h1,h2]=0", br(&r.h1, &r.h2));

    let mut flag = |name: &str, passed: bool, witness: Option<String>| {
        checks.push(Check {
            name: name.into(),
            passed,
            witness: if passed { None } else { witness },
        });
    };
    flag(
        "e1 nilpotent",
        is_nilpotent(&r.e1),
        Some("e1^n != 0".into()),
    );
    flag(
        "e2 nilpotent",
        is_nilpotent(&r.e2),
        Some("e2^n != 0".into()),
    );
    for (name, m) in [("e1", &r.e1), ("e2", &r.e2), ("h1", &r.h1), ("h2", &r.h2)] {
        let ok = r.in_lie_algebra(m).unwrap_or(false);
        let witness = match &r.gram {
            Some(g) => zero_witness(
                r,
                &m.transpose()
                    .mul(g)
                    .unwrap()
                    .add(&g.mul(m).unwrap())
                    .unwrap(),
            ),
            None => Some("nonzero trace".into()),
        };
        flag(&format!("{name} in g"), ok, witness);
    }
    let entries_ok = [&r.e1, &r.e2]
        .iter()
        .all(|m| m.nonzeros().all(|(_, _, v)| v.is_one() || (-v).is_one()));
    flag(
        "e entries in {-1,0,1}",
        entries_ok,
        Some("entry outside {-1,0,1}".into()),
    );
    if let Some(g) = &r.gram {
        let gt = g.transpose();
        let (sym_ok, name) = match r.form {
            FormKind::Alternating => (gt == g.scale(&rat(-1, 1)), "gram antisymmetric"),
            _ => (&gt == g, "gram symmetric"),
        };
        flag(name, sym_ok, Some("transpose mismatch".into()));
        flag(
            "gram nondegenerate",
            g.rank() == g.rows(),
            Some(format!("rank {} < {}", g.rank(), g.rows())),
        );
    }
    VerifyReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::SkewDiagram;

    fn plus7() -> SkewDiagram {
        SkewDiagram::from_int(&[(-1, 1), (0, 1), (-1, 0), (0, 0), (1, 0), (0, -1), (1, -1)])
            .unwrap()
    }

    fn bi(i: i32, j: i32) -> BasisIndex {
        BasisIndex {
            k: 1,
            cell: Cell::int(i, j),
        }
    }

    #[test]
    fn type_a_domino() {
        let g = SkewDiagram::from_doubled(&[(-1, 0), (1, 0)]).unwrap();
        let r = Realization::build(&PairDatum::type_a(g).unwrap());
        assert_eq!(
            r.e1,
            ExactMatrix::from_i64_rows(&[vec![0, 0], vec![1, 0]]).unwrap()
        );
        assert!(r.e2.is_zero());
        assert_eq!(r.h1, ExactMatrix::diagonal(&[rat(-1, 2), rat(1, 2)]));
        assert!(verify_realization(&r).all_passed());
    }

    #[test]
    fn type_a_off_centre_is_barycentred() {
        let g = SkewDiagram::from_int(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        let r = Realization::build(&PairDatum::type_a(g).unwrap());
        assert!(r.h1.trace().unwrap().is_zero());
        assert!(verify_realization(&r).all_passed());
    }

    #[test]
    fn type_b_sign_rule() {
        let r = Realization::build(&PairDatum::type_b(Some(plus7()), None).unwrap());
        let o = r.position(1, Cell::ORIGIN).unwrap();
        let right = r.position(1, Cell::int(1, 0)).unwrap();
        let up = r.position(1, Cell::int(0, 1)).unwrap();
        assert_eq!(r.e1.get(right, o), &rat_int(1));
        assert_eq!(r.e2.get(up, o), &rat_int(-1));
        let rep = verify_realization(&r);
        assert!(rep.all_passed(), "{rep:?}");
    }

    #[test]
    fn type_c_alternating_form() {
        let g1 = SkewDiagram::from_doubled(&[(0, -1), (0, 1)]).unwrap();
        let g2 = SkewDiagram::from_doubled(&[(-1, 0), (1, 0)]).unwrap();
        let r = Realization::build(&PairDatum::type_c(Some(g1), Some(g2)).unwrap());
        assert_eq!(r.form, FormKind::Alternating);
        let rep = verify_realization(&r);
        assert!(rep.all_passed(), "{rep:?}");
        assert!(rep.checks.iter().any(|c| c.name == "gram antisymmetric"));
    }

    #[test]
    fn type_d_doubled_origin() {
        let g2 = SkewDiagram::from_int(&[(-1, 0), (0, 0), (1, 0)]).unwrap();
        let g3 = SkewDiagram::from_int(&[(-1, 1), (0, 1), (0, 0), (0, -1), (1, -1)]).unwrap();
        let r = Realization::build(&PairDatum::type_d(None, Some(g2), Some(g3), 1).unwrap());
        assert_eq!(r.dim(), 8);
        let a = r.position(2, Cell::ORIGIN).unwrap();
        let b = r.position(3, Cell::ORIGIN).unwrap();
        assert!(a < b);
        assert!(verify_realization(&r).all_passed());
    }

    #[test]
    fn corrupted_sign_is_caught() {
        let mut r = Realization::build(&PairDatum::type_b(Some(plus7()), None).unwrap());
        let o = r.position(1, Cell::ORIGIN).unwrap();
        let right = r.position(1, Cell::int(1, 0)).unwrap();
        r.e1.set(right, o, rat_int(-1));
        let rep = verify_realization(&r);
        let bad: Vec<_> = rep.failures().map(|c| c.name.as_str()).collect();
        assert!(bad.contains(&"[e1,e2]=0"), "{bad:?}");
        let w = rep.checks[0].witness.as_ref().unwrap();
        assert!(w.contains("v^1_"), "{w}");
    }

    #[test]
    fn membership_and_degrees() {
        let r = Realization::build(&PairDatum::type_b(Some(plus7()), None).unwrap());
        assert!(r.in_lie_algebra(&r.e1).unwrap());
        assert!(!r.in_lie_algebra(&ExactMatrix::identity(7)).unwrap());
        assert!(r.in_lie_algebra(&ExactMatrix::identity(3)).is_err());
        // x1: v_{0,-1} -> v_{1,0}, v_{-1,0} -> -v_{0,1}.
        let x1 = r.matrix_from_entries(&[(bi(0, -1), bi(1, 0), 1), (bi(-1, 0), bi(0, 1), -1)]);
        assert!(r.in_lie_algebra(&x1).unwrap());
        assert_eq!(r.graded_degree(&x1), Some(Shift::int(1, 1)));
        assert_eq!(r.graded_degree(&r.e1), Some(Shift::int(1, 0)));
        // x4: v_{i,j} -> (-1)^{i+j+1} v_{i+2,j-1} on its support.
        let x4 = r.matrix_from_entries(&[(bi(-1, 1), bi(1, 0), -1), (bi(-1, 0), bi(1, -1), 1)]);
        assert_eq!(r.graded_degree(&x4), Some(Shift::int(2, -1)));
        let mixed = r.e1.add(&r.h1).unwrap();
        assert_eq!(r.graded_degree(&mixed), None);
    }

    #[test]
    fn nilpotency_index_bounded_by_extent() {
        let r = Realization::build(&PairDatum::type_b(Some(plus7()), None).unwrap());
        let g = plus7();
        assert!(r.e1.pow(g.column_count() as u32).unwrap().is_zero());
        assert!(r.e2.pow(g.row_count() as u32).unwrap().is_zero());
    }
}
