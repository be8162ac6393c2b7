//! Reflection relations satisfied by companion bases.
//!
//! Relation words are lists of basis indices. A word `w_1 w_2 … w_L` stands
//! for the product `t_{w_1}·t_{w_2}·…·t_{w_L}` of reflection matrices acting
//! on column vectors, so the rightmost letter acts first.

mod affine;
mod coxeter;
mod cycle;
mod group;
mod order;
mod path_system;
mod verify;

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::companion::CompanionError;
use crate::diagram::{Diagram, DiagramError};
use crate::matrix::MatrixError;
use crate::roots::RootError;
use crate::sqrt_ring::SqrtError;

pub use affine::{
    affine_dn_check, affine_dn_seed, affine_dn_setup, normalize_affine_dn, AffineDnReport,
    AffineDnSetup,
};
pub use coxeter::{
    check_weight_ge4_walk, two_infinity_order, TwoInfinity, WalkOptions, WalkReport, WalkViolation,
};
pub use cycle::cycle_relation;
pub use group::{group_order, GroupOrder};
pub use order::{edge_order_table, order_from_x, pair_order, pair_relation};
pub use path_system::{
    basis_coefficients, enumerate_increasing_paths, normalize_signs, path_system_relation,
    CoefficientEntry, IncreasingPath, PathPolicy, PathSystem,
};
pub use verify::{verify_involutions, verify_relation, word_matrix, VerifyOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("x = {0} is negative")]
    NegativeX(BigInt),
    #[error("cycle {0:?} is not an induced cycle")]
    NotInduced(Vec<usize>),
    #[error("cycle {0:?} is not oriented")]
    NotOriented(Vec<usize>),
    #[error("vertex {} is not on the cycle", .0 + 1)]
    NotOnCycle(usize),
    #[error("invalid path system: {0}")]
    InvalidPathSystem(String),
    #[error(
        "sign normalization did not terminate; companion is not admissible on the path system"
    )]
    CannotNormalize,
    #[error("companion signs are not normalized: {0}")]
    NormalizationRequired(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("relation {} failed verification at power {power:?}", .report.word_string())]
    VerificationFailed {
        power: Option<u32>,
        report: Box<RelationReport>,
    },
    #[error("word letter {} out of range", .0 + 1)]
    BadWord(usize),
    #[error(transparent)]
    Sqrt(#[from] SqrtError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Companion(#[from] CompanionError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Order of a product of two reflections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => write!(f, "∞"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Order::Finite(m) => s.serialize_u32(*m),
            Order::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Order {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) if s == "inf" => Ok(Order::Infinite),
            serde_json::Value::Number(n) => n
                .as_u64()
                .and_then(|m| u32::try_from(m).ok())
                .map(Order::Finite)
                .ok_or_else(|| D::Error::custom("order must be a small positive integer")),
            other => Err(D::Error::custom(format!("invalid order {other}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    Pair,
    Cycle,
    PathSystem,
    #[serde(rename = "affine-Dn")]
    AffineDn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerificationStatus {
    Unverified,
    ProvenFiniteByMatrix,
    CertifiedInfiniteByX,
    Failed,
}

/// One letter `t_v` of a relation word. Letters coming from an inverse
/// segment `t^{(-k)}` are marked; they are serialized as `-(v+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub vertex: usize,
    pub inverse_segment: bool,
}

impl Letter {
    pub fn plain(vertex: usize) -> Self {
        Self {
            vertex,
            inverse_segment: false,
        }
    }

    pub fn inverse(vertex: usize) -> Self {
        Self {
            vertex,
            inverse_segment: true,
        }
    }
}

/// A relation `(word)^m = e` together with the integer `x` that determines
/// `m` and the verification outcome.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelationReport {
    pub kind: RelationKind,
    pub word: Vec<Letter>,
    pub x: BigInt,
    pub m: Order,
    pub verified: VerificationStatus,
}

impl RelationReport {
    pub fn new(kind: RelationKind, word: Vec<Letter>, x: BigInt) -> Result<Self, RelationError> {
        let m = order_from_x(&x)?;
        Ok(Self {
            kind,
            word,
            x,
            m,
            verified: VerificationStatus::Unverified,
        })
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.word.iter().map(|l| l.vertex)
    }

    /// Word with 1-based labels, e.g. `t1 t2 t3 t2`.
    pub fn word_string(&self) -> String {
        self.word
            .iter()
            .map(|l| format!("t{}", l.vertex + 1))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = serde_json::to_value(self.verified)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default();
        let kind = serde_json::to_value(self.kind)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default();
        write!(
            f,
            "{kind:<12} ({})^{} = e   x = {}   [{status}]",
            self.word_string(),
            self.m,
            self.x
        )
    }
}

#[derive(Serialize, Deserialize)]
struct ReportDoc {
    kind: RelationKind,
    word: Vec<i64>,
    x: i128,
    m: Order,
    verified: VerificationStatus,
}

impl Serialize for RelationReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let doc = ReportDoc {
            kind: self.kind,
            word: self
                .word
                .iter()
                .map(|l| {
                    let label = l.vertex as i64 + 1;
                    if l.inverse_segment {
                        -label
                    } else {
                        label
                    }
                })
                .collect(),
            x: self
                .x
                .to_i128()
                .ok_or_else(|| serde::ser::Error::custom("x exceeds 128 bits"))?,
            m: self.m,
            verified: self.verified,
        };
        doc.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RelationReport {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = ReportDoc::deserialize(d)?;
        let word = doc
            .word
            .iter()
            .map(|&w| match w {
                0 => Err(D::Error::custom("word letters are 1-based")),
                w if w > 0 => Ok(Letter::plain(w as usize - 1)),
                w => Ok(Letter::inverse((-w) as usize - 1)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let x = BigInt::from(doc.x);
        let m = order_from_x(&x).map_err(D::Error::custom)?;
        if m != doc.m {
            return Err(D::Error::custom(format!(
                "m = {} does not match x = {}",
                doc.m, doc.x
            )));
        }
        Ok(Self {
            kind: doc.kind,
            word,
            x,
            m,
            verified: doc.verified,
        })
    }
}

/// Pair relations for every pair of vertices and cycle relations for every
/// oriented chordless cycle and every starting vertex on it.
pub fn standard_relations(g: &Diagram) -> Result<Vec<RelationReport>, RelationError> {
    let mut out = Vec::new();
    for i in 0..g.n() {
        for j in (i + 1)..g.n() {
            out.push(pair_relation(g, i, j)?);
        }
    }
    for cycle in g.enumerate_cycles().iter().filter(|c| c.oriented) {
        for &v in &cycle.vertices {
            out.push(cycle_relation(g, &cycle.vertices, v)?);
        }
    }
    Ok(out)
}

/// Cycle relations for the oriented chordless cycles through `vertex`.
pub fn cycle_relations_through(
    g: &Diagram,
    vertex: usize,
) -> Result<Vec<RelationReport>, RelationError> {
    let mut out = Vec::new();
    for cycle in g
        .enumerate_cycles()
        .iter()
        .filter(|c| c.oriented && c.contains(vertex))
    {
        for &v in &cycle.vertices {
            out.push(cycle_relation(g, &cycle.vertices, v)?);
        }
    }
    Ok(out)
}
