//! JSON documents exchanged by the CLI and the session service.
//!
//! Vertices are 1-based on the wire and 0-based everywhere else.

use serde::{Deserialize, Serialize};

use crate::companion::Companion;
use crate::diagram::{Diagram, Edge};
use crate::matrix::SkewMatrix;
use crate::roots::{CompanionBasis, CompanionTriple, RootLattice, RootVec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub n: usize,
    pub b: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<i64>>,
}

impl From<SkewMatrix> for MatrixDoc {
    fn from(m: SkewMatrix) -> Self {
        Self {
            n: m.n(),
            b: m.rows().to_vec(),
            d: Some(m.symmetrizer().to_vec()),
        }
    }
}

impl TryFrom<MatrixDoc> for SkewMatrix {
    type Error = String;

    fn try_from(doc: MatrixDoc) -> Result<Self, String> {
        if doc.b.len() != doc.n {
            return Err(format!("n = {} but b has {} rows", doc.n, doc.b.len()));
        }
        match &doc.d {
            Some(d) => SkewMatrix::with_symmetrizer(doc.b, d),
            None => SkewMatrix::new(doc.b),
        }
        .map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub tail: usize,
    pub head: usize,
    pub weight: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDoc {
    pub n: usize,
    pub edges: Vec<EdgeDoc>,
}

impl From<Diagram> for DiagramDoc {
    fn from(g: Diagram) -> Self {
        Self {
            n: g.n(),
            edges: g
                .edges()
                .map(|e| EdgeDoc {
                    tail: e.tail + 1,
                    head: e.head + 1,
                    weight: e.weight,
                })
                .collect(),
        }
    }
}

impl TryFrom<DiagramDoc> for Diagram {
    type Error = String;

    fn try_from(doc: DiagramDoc) -> Result<Self, String> {
        let edges = doc
            .edges
            .iter()
            .map(|e| {
                if e.tail == 0 || e.head == 0 {
                    Err("vertices are 1-based".to_string())
                } else {
                    Ok(Edge {
                        tail: e.tail - 1,
                        head: e.head - 1,
                        weight: e.weight,
                    })
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Diagram::new(doc.n, edges).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompanionDoc {
    pub a: Vec<Vec<i64>>,
    pub matrix: SkewMatrix,
}

impl From<Companion> for CompanionDoc {
    fn from(c: Companion) -> Self {
        Self {
            a: c.rows().to_vec(),
            matrix: c.matrix().clone(),
        }
    }
}

impl TryFrom<CompanionDoc> for Companion {
    type Error = String;

    fn try_from(doc: CompanionDoc) -> Result<Self, String> {
        Companion::new(doc.a, doc.matrix).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDoc {
    pub vectors: Vec<Vec<i64>>,
}

impl From<CompanionBasis> for BasisDoc {
    fn from(b: CompanionBasis) -> Self {
        Self {
            vectors: b.vectors().iter().map(|v| v.0.clone()).collect(),
        }
    }
}

impl TryFrom<BasisDoc> for CompanionBasis {
    type Error = String;

    fn try_from(doc: BasisDoc) -> Result<Self, String> {
        let n = doc.vectors.len();
        if doc.vectors.iter().any(|v| v.len() != n) {
            return Err("basis vectors must have one coordinate per vector".into());
        }
        Ok(CompanionBasis::new(
            doc.vectors.into_iter().map(RootVec).collect(),
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub cartan: Vec<Vec<i64>>,
    pub d: Vec<i64>,
}

impl From<RootLattice> for LatticeDoc {
    fn from(l: RootLattice) -> Self {
        Self {
            cartan: l.cartan().to_vec(),
            d: l.symmetrizer().to_vec(),
        }
    }
}

impl TryFrom<LatticeDoc> for RootLattice {
    type Error = String;

    fn try_from(doc: LatticeDoc) -> Result<Self, String> {
        let n = doc.cartan.len();
        if doc.d.len() != n || doc.cartan.iter().any(|r| r.len() != n) {
            return Err("cartan and d must agree in size".into());
        }
        if doc.d.iter().any(|&x| x <= 0) {
            return Err("d must be positive".into());
        }
        for i in 0..n {
            if doc.cartan[i][i] != 2 {
                return Err("cartan diagonal must be 2".into());
            }
            for j in 0..n {
                if doc.d[i] as i128 * doc.cartan[i][j] as i128
                    != doc.d[j] as i128 * doc.cartan[j][i] as i128
                {
                    return Err("d does not symmetrize cartan".into());
                }
            }
        }
        Ok(RootLattice::from_cartan(doc.cartan, doc.d))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleDoc {
    pub lattice: RootLattice,
    pub companion: Companion,
    pub basis: CompanionBasis,
}

impl From<CompanionTriple> for TripleDoc {
    fn from(t: CompanionTriple) -> Self {
        Self {
            lattice: t.lattice,
            companion: t.companion,
            basis: t.basis,
        }
    }
}

impl TryFrom<TripleDoc> for CompanionTriple {
    type Error = String;

    fn try_from(doc: TripleDoc) -> Result<Self, String> {
        if doc.basis.n() != doc.companion.n() || doc.lattice.n() != doc.companion.n() {
            return Err("lattice, companion and basis sizes differ".into());
        }
        doc.basis
            .check_realizes(&doc.lattice, &doc.companion)
            .map_err(|e| e.to_string())?;
        Ok(CompanionTriple::from_parts(
            doc.lattice,
            doc.companion,
            doc.basis,
        ))
    }
}
