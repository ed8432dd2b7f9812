//! Classification of data: wonderful, principal, almost principal.
//!
//! Each property is decided twice, once from centralizer dimensions and once
//! from diagram predicates alone, and the verdict records whether they agree.

use std::str::FromStr;

use serde::Serialize;

use crate::catalog::{shapes, symmetric_diagrams};
use crate::centralizer::{dims, Dims};
use crate::datum::{LieType, PairDatum};
use crate::diagram::{Cell, NearRectType, SkewDiagram, SymmetryClass};
use crate::subdiagram::{index_by_shift, EntryKind};

pub const DEFAULT_RANK_BOUND: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("RankTooLarge: rank {rank} exceeds bound {bound}")]
    RankTooLarge { rank: usize, bound: usize },
    #[error("unknown predicate {0:?}")]
    UnknownPredicate(String),
}

/// Clause-based predictions, computed from diagram shapes only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub wonderful: bool,
    pub zplus_equals_rank: bool,
    pub principal: bool,
    pub almost_principal: bool,
    /// Names of the clauses that fired.
    pub equality_case: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationVerdict {
    pub lie_type: LieType,
    pub rank: usize,
    pub dim_z: usize,
    pub dim_zplus: usize,
    pub dim_zplus_int: usize,
    pub is_wonderful: bool,
    pub is_principal: bool,
    pub is_almost_principal: bool,
    pub zplus_equals_rank: bool,
    pub zplus_equals_z: bool,
    pub prediction: Prediction,
    pub agrees: bool,
}

fn single_origin(g: &SkewDiagram) -> bool {
    g.len() == 1 && g.contains(&Cell::ORIGIN)
}

fn rect(g: &SkewDiagram) -> bool {
    g.is_rectangular().expect("symmetric component")
}

fn r_cond(g: &SkewDiagram) -> bool {
    g.satisfies_r().expect("symmetric component")
}

fn near_clauses(g: &SkewDiagram) -> Vec<NearRectType> {
    g.near_rectangular_clauses().expect("symmetric component")
}

/// The pair `(Γ, Γ′)` of integral diagrams meeting only at the origin has
/// exactly one positive cross entry: either `Γ` is the origin and `Γ′` has a
/// single SW corner in the closed third quadrant, or both are rectangular.
pub fn origin_pair_minimal(g: &SkewDiagram, gp: &SkewDiagram) -> bool {
    let one_low_corner = gp
        .sw_corners()
        .iter()
        .filter(|c| c.a <= 0 && c.b <= 0)
        .count()
        == 1;
    (single_origin(g) && one_low_corner) || (rect(g) && rect(gp))
}

pub fn predict(datum: &PairDatum) -> Prediction {
    let g = |k| datum.gamma(k);
    let mut case = Vec::new();
    let mut note = |s: &str| case.push(s.to_string());
    let p = match datum.lie_type() {
        LieType::A => {
            let gamma = g(1).unwrap();
            let y = gamma.satisfies_y();
            note("type A");
            if y {
                note("one SW or one NE corner");
            }
            Prediction {
                wonderful: true,
                zplus_equals_rank: true,
                principal: y,
                almost_principal: false,
                equality_case: Vec::new(),
            }
        }
        LieType::B => {
            let g1 = g(1).unwrap();
            let g2 = g(2);
            let empty2 = g2.is_none();
            let principal = empty2 && r_cond(g1);
            let near_ab = empty2
                && near_clauses(g1)
                    .iter()
                    .any(|c| matches!(c, NearRectType::TypeA | NearRectType::TypeB));
            let origin_rect = single_origin(g1) && g2.is_some_and(rect);
            if empty2 {
                note("gamma2 empty");
            }
            if principal {
                note("gamma1 rectangular");
            }
            if near_ab {
                note("gamma1 near rectangular (a or b), gamma2 empty");
            }
            if origin_rect {
                note("gamma1 origin, gamma2 rectangular");
            }
            Prediction {
                wonderful: true,
                zplus_equals_rank: empty2,
                principal,
                almost_principal: near_ab || origin_rect,
                equality_case: Vec::new(),
            }
        }
        LieType::C => {
            let (g1, g2) = (g(1), g(2));
            let lone = match (g1, g2) {
                (Some(x), None) | (None, Some(x)) => Some(x),
                _ => None,
            };
            let principal = lone.is_some_and(r_cond);
            let near = lone.is_some_and(|x| !near_clauses(x).is_empty());
            let axis_rects = match (g1, g2) {
                (Some(a), Some(b)) => {
                    rect(a) && rect(b) && a.iter().all(|c| c.a == 0) && b.iter().all(|c| c.b == 0)
                }
                _ => false,
            };
            if lone.is_some() {
                note("one component empty");
            }
            if principal {
                note("remaining component rectangular");
            }
            if near {
                note("remaining component near rectangular");
            }
            if axis_rects {
                note("vertical and horizontal strips through the origin");
            }
            Prediction {
                wonderful: true,
                zplus_equals_rank: lone.is_some(),
                principal,
                almost_principal: near || axis_rects,
                equality_case: Vec::new(),
            }
        }
        LieType::D => {
            let (g1, g2, g3) = (g(1), g(2), g(3));
            let pair_min = match (g2, g3) {
                (Some(a), Some(b)) => origin_pair_minimal(a, b),
                _ => false,
            };
            let only1 = g2.is_none();
            let principal = match (g1, g2, g3) {
                (None, Some(a), Some(b)) => r_cond(a) && r_cond(b),
                (Some(a), None, None) => r_cond(a),
                _ => false,
            };
            if only1 {
                note("gamma2, gamma3 empty");
            }
            if pair_min {
                note("origin pair has one positive cross entry");
            }
            if principal {
                note("all components satisfy R");
            }
            Prediction {
                wonderful: only1 || pair_min,
                zplus_equals_rank: only1 || (g1.is_none() && pair_min),
                principal,
                almost_principal: false,
                equality_case: Vec::new(),
            }
        }
    };
    Prediction {
        equality_case: case,
        ..p
    }
}

/// Almost-principal test for type C that also accounts for the coset of a
/// lone near-rectangular component: clause a) only counts inside
/// `Z × (Z+½)` and clause b) only inside `(Z+½) × Z`, unless clause c) also
/// holds. Returns `None` for other types.
pub fn refined_almost_principal(datum: &PairDatum) -> Option<bool> {
    if datum.lie_type() != LieType::C {
        return None;
    }
    Some(match (datum.gamma(1), datum.gamma(2)) {
        (Some(x), None) | (None, Some(x)) => {
            let cl = near_clauses(x);
            let class = x.symmetry_class();
            cl.contains(&NearRectType::TypeC)
                || (cl.contains(&NearRectType::TypeA) && class == SymmetryClass::SemiIntegralY)
                || (cl.contains(&NearRectType::TypeB) && class == SymmetryClass::SemiIntegralX)
        }
        _ => predict(datum).almost_principal,
    })
}

/// Type C cross entries sit at shifts with both coordinates half-odd.
fn cross_shifts_half_integral(datum: &PairDatum) -> bool {
    datum.lie_type() != LieType::C
        || index_by_shift(datum).iter().all(|(s, es)| {
            es.iter()
                .all(|e| e.kind != EntryKind::Cross || (s.a % 2 != 0 && s.b % 2 != 0))
        })
}

pub fn verdict(datum: &PairDatum) -> ClassificationVerdict {
    let Dims {
        dim_z,
        dim_zplus,
        dim_zplus_int,
    } = dims(datum);
    let rank = datum.rank();
    let prediction = predict(datum);
    let is_wonderful = dim_zplus_int == rank;
    let is_principal = dim_z == rank;
    let is_almost_principal = dim_z == rank + 1;
    let zplus_equals_rank = dim_zplus == rank;
    let agrees = prediction.wonderful == is_wonderful
        && prediction.principal == is_principal
        && prediction.almost_principal == is_almost_principal
        && prediction.zplus_equals_rank == zplus_equals_rank
        && dim_zplus >= rank
        && cross_shifts_half_integral(datum);
    ClassificationVerdict {
        lie_type: datum.lie_type(),
        rank,
        dim_z,
        dim_zplus,
        dim_zplus_int,
        is_wonderful,
        is_principal,
        is_almost_principal,
        zplus_equals_rank,
        zplus_equals_z: dim_zplus == dim_z,
        prediction,
        agrees,
    }
}

pub fn min_rank(lie: LieType) -> usize {
    match lie {
        LieType::D => 2,
        _ => 1,
    }
}

fn opt(d: SkewDiagram) -> Option<SkewDiagram> {
    Some(d)
}

fn sym_or_empty(n: usize, class: SymmetryClass) -> Vec<Option<SkewDiagram>> {
    if n == 0 {
        vec![None]
    } else {
        symmetric_diagrams(n, class).into_iter().map(opt).collect()
    }
}

/// Every datum of the given type and rank, sorted and duplicate-free.
pub fn enumerate_data(lie: LieType, rank: usize) -> Result<Vec<PairDatum>, ClassifyError> {
    enumerate_data_bounded(lie, rank, DEFAULT_RANK_BOUND)
}

pub fn enumerate_data_bounded(
    lie: LieType,
    rank: usize,
    bound: usize,
) -> Result<Vec<PairDatum>, ClassifyError> {
    if rank > bound {
        return Err(ClassifyError::RankTooLarge { rank, bound });
    }
    let mut out = Vec::new();
    if rank < min_rank(lie) {
        return Ok(out);
    }
    let ok = "enumerated data are valid";
    match lie {
        LieType::A => {
            for s in shapes(rank + 1) {
                out.push(PairDatum::type_a(s).expect(ok));
            }
        }
        LieType::B => {
            let total = 2 * rank + 1;
            for n1 in (1..=total).step_by(2) {
                for g1 in symmetric_diagrams(n1, SymmetryClass::Integral) {
                    for g2 in sym_or_empty(total - n1, SymmetryClass::NonIntegral) {
                        out.push(PairDatum::type_b(Some(g1.clone()), g2).expect(ok));
                    }
                }
            }
        }
        LieType::C => {
            let total = 2 * rank;
            for n1 in 0..=total {
                for g1 in sym_or_empty(n1, SymmetryClass::SemiIntegralY) {
                    for g2 in sym_or_empty(total - n1, SymmetryClass::SemiIntegralX) {
                        if g1.is_none() && g2.is_none() {
                            continue;
                        }
                        out.push(PairDatum::type_c(g1.clone(), g2).expect(ok));
                    }
                }
            }
        }
        LieType::D => {
            let total = 2 * rank;
            for g1 in symmetric_diagrams(total, SymmetryClass::NonIntegral) {
                for eps in [1, 2] {
                    out.push(PairDatum::type_d(Some(g1.clone()), None, None, eps).expect(ok));
                }
            }
            for n1 in (0..total).step_by(2) {
                let rest = total - n1;
                for g1 in sym_or_empty(n1, SymmetryClass::NonIntegral) {
                    for n2 in (1..rest).step_by(2) {
                        let n3 = rest - n2;
                        let g2s = symmetric_diagrams(n2, SymmetryClass::Integral);
                        let g3s = symmetric_diagrams(n3, SymmetryClass::Integral);
                        for g2 in &g2s {
                            for g3 in &g3s {
                                if g3.len() < 2 || g2.cells().intersection(g3.cells()).count() != 1
                                {
                                    continue;
                                }
                                out.push(
                                    PairDatum::type_d(
                                        g1.clone(),
                                        Some(g2.clone()),
                                        Some(g3.clone()),
                                        1,
                                    )
                                    .expect(ok),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchPredicate {
    Principal,
    AlmostPrincipal,
    Wonderful,
    NotWonderful,
    ZplusEqualsZ,
}

impl SearchPredicate {
    pub fn holds(self, v: &ClassificationVerdict) -> bool {
        match self {
            SearchPredicate::Principal => v.is_principal,
            SearchPredicate::AlmostPrincipal => v.is_almost_principal,
            SearchPredicate::Wonderful => v.is_wonderful,
            SearchPredicate::NotWonderful => !v.is_wonderful,
            SearchPredicate::ZplusEqualsZ => v.zplus_equals_z,
        }
    }
}

impl FromStr for SearchPredicate {
    type Err = ClassifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "principal" => Ok(Self::Principal),
            "almost_principal" => Ok(Self::AlmostPrincipal),
            "wonderful" => Ok(Self::Wonderful),
            "not_wonderful" => Ok(Self::NotWonderful),
            "zplus_equals_z" => Ok(Self::ZplusEqualsZ),
            _ => Err(ClassifyError::UnknownPredicate(s.to_string())),
        }
    }
}

/// Data of ranks up to `rank_bound` satisfying the predicate.
pub fn search(
    lie: LieType,
    rank_bound: usize,
    predicate: SearchPredicate,
) -> Result<Vec<(PairDatum, ClassificationVerdict)>, ClassifyError> {
    let mut out = Vec::new();
    for rank in min_rank(lie)..=rank_bound {
        for d in enumerate_data_bounded(lie, rank, rank_bound.max(DEFAULT_RANK_BOUND))? {
            let v = verdict(&d);
            if predicate.holds(&v) {
                out.push((d, v));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub rank: usize,
    pub data: usize,
    pub principal: usize,
    pub almost_principal: usize,
    pub wonderful: usize,
    pub zplus_equals_z: usize,
    pub disagreements: usize,
}

impl CensusRow {
    pub fn add(&mut self, v: &ClassificationVerdict) {
        self.data += 1;
        self.principal += v.is_principal as usize;
        self.almost_principal += v.is_almost_principal as usize;
        self.wonderful += v.is_wonderful as usize;
        self.zplus_equals_z += v.zplus_equals_z as usize;
        self.disagreements += !v.agrees as usize;
    }
}

pub fn census(lie: LieType, rank_bound: usize) -> Result<Vec<CensusRow>, ClassifyError> {
    let mut rows = Vec::new();
    for rank in min_rank(lie)..=rank_bound {
        let mut row = CensusRow {
            rank,
            ..Default::default()
        };
        for d in enumerate_data_bounded(lie, rank, rank_bound.max(DEFAULT_RANK_BOUND))? {
            row.add(&verdict(&d));
        }
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::validate_datum;

    fn strip3() -> SkewDiagram {
        SkewDiagram::from_int(&[(-1, 0), (0, 0), (1, 0)]).unwrap()
    }

    fn near_rect5() -> SkewDiagram {
        SkewDiagram::from_int(&[(-1, 1), (0, 1), (0, 0), (0, -1), (1, -1)]).unwrap()
    }

    #[test]
    fn d4_example_not_wonderful() {
        let d = PairDatum::type_d(None, Some(strip3()), Some(near_rect5()), 1).unwrap();
        let v = verdict(&d);
        assert!(!v.is_wonderful);
        assert_eq!(v.dim_zplus_int, 5);
        assert!(v.agrees, "{v:?}");
    }

    #[test]
    fn b2_origin_and_square_is_almost_principal() {
        let sq = SkewDiagram::from_doubled(&[(-1, -1), (1, -1), (-1, 1), (1, 1)]).unwrap();
        let o = SkewDiagram::from_int(&[(0, 0)]).unwrap();
        let d = PairDatum::type_b(Some(o), Some(sq)).unwrap();
        let v = verdict(&d);
        assert_eq!(v.rank, 2);
        assert_eq!(v.dim_z, 3);
        assert!(v.is_almost_principal && v.agrees);
    }

    #[test]
    fn semi_integral_near_rectangle_with_two_extra_entries() {
        // Clause a) in (Z+½) × Z: both corner entries land outside the
        // positive quadrant.
        let g = SkewDiagram::from_doubled(&[
            (-3, 2),
            (-1, 2),
            (1, 2),
            (-1, 0),
            (1, 0),
            (-1, -2),
            (1, -2),
            (3, -2),
        ])
        .unwrap();
        assert_eq!(
            g.near_rectangular_clauses().unwrap(),
            vec![NearRectType::TypeA]
        );
        let d = PairDatum::type_c(None, Some(g)).unwrap();
        let v = verdict(&d);
        assert_eq!(v.dim_z, v.rank + 2);
        assert!(v.prediction.almost_principal);
        assert!(!v.agrees);
        assert_eq!(refined_almost_principal(&d), Some(false));
    }

    #[test]
    fn rank_one_counts() {
        assert_eq!(enumerate_data(LieType::A, 1).unwrap().len(), 2);
        // Γ¹ = origin with the 2x2 square is rank 2, so rank 1 is Γ¹ alone.
        let b1 = enumerate_data(LieType::B, 1).unwrap();
        assert_eq!(b1.len(), 2);
        assert!(b1.iter().all(|d| d.gamma(2).is_none()));
    }

    #[test]
    fn rank_bound_enforced() {
        assert_eq!(
            enumerate_data(LieType::B, 7),
            Err(ClassifyError::RankTooLarge { rank: 7, bound: 6 })
        );
    }

    #[test]
    fn enumerated_data_round_trip_through_validation() {
        for lie in LieType::ALL {
            for rank in 1..=3 {
                let data = enumerate_data(lie, rank).unwrap();
                let mut sorted = data.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted, data);
                for d in data {
                    let back = validate_datum(&d.to_json().to_string()).unwrap();
                    assert_eq!(back, d);
                }
            }
        }
    }

    #[test]
    fn small_ranks_agree() {
        for lie in LieType::ALL {
            for rank in 1..=3 {
                for d in enumerate_data(lie, rank).unwrap() {
                    let v = verdict(&d);
                    assert!(v.agrees, "{d:?} {v:?}");
                }
            }
        }
    }

    #[test]
    fn predicate_names() {
        assert_eq!(
            "almost-principal".parse::<SearchPredicate>().unwrap(),
            SearchPredicate::AlmostPrincipal
        );
        assert_eq!(
            "Zplus_equals_Z".parse::<SearchPredicate>().unwrap(),
            SearchPredicate::ZplusEqualsZ
        );
        assert!("nope".parse::<SearchPredicate>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn verdict_booleans_follow_dimensions(t in 0usize..4, rank in 1usize..=5, pick in any::<prop::sample::Index>()) {
                let lie = LieType::ALL[t];
                let rank = rank.max(min_rank(lie));
                let data = enumerate_data(lie, rank).unwrap();
                let d = &data[pick.index(data.len())];
                let v = verdict(d);
                prop_assert_eq!(v.is_wonderful, v.dim_zplus_int == v.rank);
                prop_assert_eq!(v.is_principal, v.dim_z == v.rank);
                prop_assert_eq!(v.is_almost_principal, v.dim_z == v.rank + 1);
                prop_assert!(v.dim_zplus >= v.rank);
                prop_assert!(v.dim_zplus_int <= v.dim_zplus && v.dim_zplus <= v.dim_z);
                if let Some(refined) = refined_almost_principal(d) {
                    prop_assert_eq!(refined, v.is_almost_principal);
                }
            }
        }
    }
}
