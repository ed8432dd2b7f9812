//! Classification data: one skew diagram (type A) or a tuple of centrally
//! symmetric ones (types B, C, D).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{Cell, DiagramError, SkewDiagram, SymmetryClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
}

impl LieType {
    pub const ALL: [LieType; 4] = [LieType::A, LieType::B, LieType::C, LieType::D];
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for LieType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(LieType::A),
            "B" => Ok(LieType::B),
            "C" => Ok(LieType::C),
            "D" => Ok(LieType::D),
            other => Err(format!("unknown Lie type {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DatumError {
    #[error("WrongCoset: component {component} must be {expected:?}, found {found:?}")]
    WrongCoset {
        component: u8,
        expected: SymmetryClass,
        found: SymmetryClass,
    },
    #[error("CardinalityMismatch: {detail}")]
    CardinalityMismatch { detail: String },
    #[error("BarycentreNonzero: barycentre is ({x}, {y})")]
    BarycentreNonzero { x: String, y: String },
    #[error("OriginConditionViolated: {detail}")]
    OriginConditionViolated { detail: String },
    #[error("EpsilonInvalid: {detail}")]
    EpsilonInvalid { detail: String },
    #[error("NotCentrallySymmetric: component {0} is not centrally symmetric")]
    NotCentrallySymmetric(u8),
    #[error("ComponentNotAllowed: type {lie_type} has no component {component}")]
    ComponentNotAllowed { lie_type: LieType, component: u8 },
    #[error("invalid diagram in component {component}: {source}")]
    Diagram {
        component: u8,
        #[source]
        source: DiagramError,
    },
}

/// A validated classification datum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairDatum {
    lie_type: LieType,
    rank: usize,
    gammas: [Option<SkewDiagram>; 3],
    epsilon: Option<u8>,
}

/// Wire form of a datum. Components are `{"cells": ...}` objects or null.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct RawDatum {
    #[serde(rename = "type")]
    pub lie_type: Option<LieType>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default)]
    pub gamma1: Option<RawCells>,
    #[serde(default)]
    pub gamma2: Option<RawCells>,
    #[serde(default)]
    pub gamma3: Option<RawCells>,
    #[serde(default)]
    pub epsilon: Option<u8>,
    /// Type A only: when false the diagram must already have barycentre 0.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalize: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCells {
    pub cells: Vec<Cell>,
}

impl From<&SkewDiagram> for RawCells {
    fn from(d: &SkewDiagram) -> Self {
        RawCells {
            cells: d.iter().copied().collect(),
        }
    }
}

fn class_of(k: u8, d: &Option<SkewDiagram>, expected: SymmetryClass) -> Result<(), DatumError> {
    match d {
        Some(d) if d.symmetry_class() != expected => Err(DatumError::WrongCoset {
            component: k,
            expected,
            found: d.symmetry_class(),
        }),
        _ => Ok(()),
    }
}

fn size(d: &Option<SkewDiagram>) -> usize {
    d.as_ref().map_or(0, |d| d.len())
}

impl PairDatum {
    /// Validates the components for the given type. Ranks derive from the
    /// cardinalities.
    pub fn new(
        lie_type: LieType,
        gammas: [Option<SkewDiagram>; 3],
        epsilon: Option<u8>,
    ) -> Result<Self, DatumError> {
        Self::build(lie_type, gammas, epsilon, true, None)
    }

    fn build(
        lie_type: LieType,
        gammas: [Option<SkewDiagram>; 3],
        epsilon: Option<u8>,
        normalize: bool,
        stated_rank: Option<usize>,
    ) -> Result<Self, DatumError> {
        use SymmetryClass::*;
        let not_allowed = |component| DatumError::ComponentNotAllowed {
            lie_type,
            component,
        };
        if lie_type != LieType::D {
            if gammas[2].is_some() {
                return Err(not_allowed(3));
            }
            if epsilon.is_some() {
                return Err(DatumError::EpsilonInvalid {
                    detail: format!("type {lie_type} carries no epsilon"),
                });
            }
        }
        let total: usize = gammas.iter().map(size).sum();
        let rank = match lie_type {
            LieType::A => {
                if gammas[1].is_some() {
                    return Err(not_allowed(2));
                }
                let g = gammas[0]
                    .as_ref()
                    .ok_or_else(|| DatumError::CardinalityMismatch {
                        detail: "type A needs a nonempty diagram".into(),
                    })?;
                if g.len() < 2 {
                    return Err(DatumError::CardinalityMismatch {
                        detail: "type A needs at least 2 cells (rank >= 1)".into(),
                    });
                }
                if !normalize && !g.has_zero_barycentre() {
                    let (x, y) = g.barycentre();
                    return Err(DatumError::BarycentreNonzero {
                        x: x.to_string(),
                        y: y.to_string(),
                    });
                }
                g.len() - 1
            }
            LieType::B => {
                class_of(1, &gammas[0], Integral)?;
                class_of(2, &gammas[1], NonIntegral)?;
                if total % 2 == 0 {
                    return Err(DatumError::CardinalityMismatch {
                        detail: format!("|Γ¹|+|Γ²| = {total} must equal 2·rank+1"),
                    });
                }
                if total < 3 {
                    return Err(DatumError::CardinalityMismatch {
                        detail: format!("|Γ¹|+|Γ²| = {total} gives rank 0"),
                    });
                }
                (total - 1) / 2
            }
            LieType::C => {
                class_of(1, &gammas[0], SemiIntegralY)?;
                class_of(2, &gammas[1], SemiIntegralX)?;
                if total % 2 != 0 || total == 0 {
                    return Err(DatumError::CardinalityMismatch {
                        detail: format!("|Γ¹|+|Γ²| = {total} must equal 2·rank"),
                    });
                }
                total / 2
            }
            LieType::D => {
                class_of(1, &gammas[0], NonIntegral)?;
                class_of(2, &gammas[1], Integral)?;
                class_of(3, &gammas[2], Integral)?;
                match (&gammas[1], &gammas[2]) {
                    (None, None) => match epsilon {
                        Some(1) | Some(2) => {}
                        other => {
                            return Err(DatumError::EpsilonInvalid {
                                detail: format!("epsilon must be 1 or 2, got {other:?}"),
                            })
                        }
                    },
                    (Some(g2), Some(g3)) => {
                        let meet: Vec<Cell> =
                            g2.iter().filter(|c| g3.contains(c)).copied().collect();
                        if meet != [Cell::ORIGIN] {
                            return Err(DatumError::OriginConditionViolated {
                                detail: format!("Γ²∩Γ³ = {meet:?}, expected {{(0,0)}}"),
                            });
                        }
                        if g3.len() == 1 {
                            return Err(DatumError::OriginConditionViolated {
                                detail: "Γ³ = {(0,0)} is excluded".into(),
                            });
                        }
                        if epsilon != Some(1) {
                            return Err(DatumError::EpsilonInvalid {
                                detail: format!(
                                    "epsilon must be 1 when Γ² and Γ³ are nonempty, got {epsilon:?}"
                                ),
                            });
                        }
                    }
                    _ => {
                        return Err(DatumError::OriginConditionViolated {
                            detail: "Γ² and Γ³ must be both empty or both nonempty".into(),
                        })
                    }
                }
                if total % 2 != 0 || total < 4 {
                    return Err(DatumError::CardinalityMismatch {
                        detail: format!("|Γ¹|+|Γ²|+|Γ³| = {total} must equal 2·rank, rank >= 2"),
                    });
                }
                total / 2
            }
        };
        if let Some(r) = stated_rank {
            if r != rank {
                return Err(DatumError::CardinalityMismatch {
                    detail: format!("stated rank {r} but the cardinalities give {rank}"),
                });
            }
        }
        if lie_type != LieType::A {
            for (i, g) in gammas.iter().enumerate() {
                if let Some(g) = g {
                    if !g.is_centrally_symmetric() {
                        return Err(DatumError::NotCentrallySymmetric(i as u8 + 1));
                    }
                }
            }
        }
        Ok(Self {
            lie_type,
            rank,
            gammas,
            epsilon,
        })
    }

    pub fn type_a(gamma: SkewDiagram) -> Result<Self, DatumError> {
        Self::new(LieType::A, [Some(gamma), None, None], None)
    }

    pub fn type_b(g1: Option<SkewDiagram>, g2: Option<SkewDiagram>) -> Result<Self, DatumError> {
        Self::new(LieType::B, [g1, g2, None], None)
    }

    pub fn type_c(g1: Option<SkewDiagram>, g2: Option<SkewDiagram>) -> Result<Self, DatumError> {
        Self::new(LieType::C, [g1, g2, None], None)
    }

    pub fn type_d(
        g1: Option<SkewDiagram>,
        g2: Option<SkewDiagram>,
        g3: Option<SkewDiagram>,
        epsilon: u8,
    ) -> Result<Self, DatumError> {
        Self::new(LieType::D, [g1, g2, g3], Some(epsilon))
    }

    pub fn from_raw(raw: RawDatum) -> Result<Self, DatumError> {
        let lie_type = raw
            .lie_type
            .ok_or_else(|| DatumError::CardinalityMismatch {
                detail: "missing \"type\"".into(),
            })?;
        let conv = |k: u8, r: Option<RawCells>| -> Result<Option<SkewDiagram>, DatumError> {
            match r {
                None => Ok(None),
                Some(r) if r.cells.is_empty() => Ok(None),
                Some(r) => {
                    SkewDiagram::new(r.cells)
                        .map(Some)
                        .map_err(|source| DatumError::Diagram {
                            component: k,
                            source,
                        })
                }
            }
        };
        let gammas = [
            conv(1, raw.gamma1)?,
            conv(2, raw.gamma2)?,
            conv(3, raw.gamma3)?,
        ];
        Self::build(
            lie_type,
            gammas,
            raw.epsilon,
            raw.normalize.unwrap_or(true),
            raw.rank,
        )
    }

    pub fn to_raw(&self) -> RawDatum {
        let conv = |g: &Option<SkewDiagram>| g.as_ref().map(RawCells::from);
        RawDatum {
            lie_type: Some(self.lie_type),
            rank: Some(self.rank),
            gamma1: conv(&self.gammas[0]),
            gamma2: conv(&self.gammas[1]),
            gamma3: conv(&self.gammas[2]),
            epsilon: self.epsilon,
            normalize: None,
        }
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn epsilon(&self) -> Option<u8> {
        self.epsilon
    }

    /// Component `k` in `1..=3`.
    pub fn gamma(&self, k: u8) -> Option<&SkewDiagram> {
        self.gammas.get(k as usize - 1).and_then(|g| g.as_ref())
    }

    /// Nonempty components with their labels, ascending.
    pub fn components(&self) -> impl Iterator<Item = (u8, &SkewDiagram)> {
        self.gammas
            .iter()
            .enumerate()
            .filter_map(|(i, g)| g.as_ref().map(|g| (i as u8 + 1, g)))
    }

    /// Dimension of the natural representation.
    pub fn dim_v(&self) -> usize {
        self.components().map(|(_, g)| g.len()).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_raw()).expect("serializable")
    }
}

impl Serialize for PairDatum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_raw().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PairDatum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawDatum::deserialize(d)?;
        PairDatum::from_raw(raw).map_err(serde::de::Error::custom)
    }
}

/// Parses and validates a datum from JSON text.
pub fn validate_datum(json: &str) -> Result<PairDatum, ValidateError> {
    let raw: RawDatum =
        serde_json::from_str(json).map_err(|e| ValidateError::Parse(e.to_string()))?;
    PairDatum::from_raw(raw).map_err(ValidateError::Datum)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValidateError {
    #[error("ParseError: {0}")]
    Parse(String),
    #[error(transparent)]
    Datum(DatumError),
}
