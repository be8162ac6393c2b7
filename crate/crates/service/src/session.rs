//! Sessions: a seed, a history tree of mutations and a cursor into it.

use std::sync::Arc;

use clusterweyl::corpus::find_acyclic_ancestor;
use clusterweyl::relations::{
    cycle_relations_through, edge_order_table, standard_relations, verify_relation, Order,
    RelationError, RelationReport, VerifyOptions,
};
use clusterweyl::roots::companion_basis_for;
use clusterweyl::{
    Companion, CompanionBasis, CompanionTriple, Diagram, EpsPolicy, Sign, SkewMatrix,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// States searched for an acyclic ancestor of a cyclic seed.
const ANCESTOR_SEARCH: usize = 20_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SessionError {
    #[error("{0}")]
    Invalid(String),
    #[error("unknown node {0}")]
    UnknownNode(usize),
    #[error("cursor is at node {actual}, not {expected}")]
    StaleCursor { expected: usize, actual: usize },
    #[error("replay diverged at node {0}")]
    ReplayMismatch(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeOrder {
    pub i: usize,
    pub j: usize,
    pub order: Order,
}

/// Everything the explorer shows for one node. Vertices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snapshot {
    pub node: usize,
    pub parent: Option<usize>,
    pub vertex: Option<usize>,
    pub eps: Option<Sign>,
    pub matrix: SkewMatrix,
    pub diagram: Diagram,
    pub acyclic: bool,
    #[serde(rename = "all-weights-ge4")]
    pub all_weights_ge4: bool,
    pub companion: Option<Companion>,
    pub basis: Option<CompanionBasis>,
    pub admissible: Option<bool>,
    pub edge_orders: Vec<EdgeOrder>,
    /// Relations refreshed at this node: everything at the root, cycles
    /// through the mutated vertex afterwards.
    pub relations: Vec<RelationReport>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Export {
    pub id: String,
    pub seed: SkewMatrix,
    pub cursor: usize,
    pub nodes: Vec<Snapshot>,
}

#[derive(Debug, Clone)]
struct Node {
    snapshot: Arc<Snapshot>,
    triple: Option<CompanionTriple>,
}

#[derive(Debug, Clone)]
pub struct Session {
    id: String,
    seed: SkewMatrix,
    nodes: Vec<Node>,
    cursor: usize,
}

fn relation_error(e: RelationError) -> SessionError {
    SessionError::Invalid(e.to_string())
}

fn snapshot(
    node: usize,
    parent: Option<usize>,
    step: Option<(usize, Sign)>,
    matrix: SkewMatrix,
    triple: Option<&CompanionTriple>,
    warnings: Vec<String>,
) -> Result<Snapshot, SessionError> {
    let diagram = Diagram::of(&matrix);
    let relations = match step {
        None => standard_relations(&diagram),
        Some((k, _)) => cycle_relations_through(&diagram, k),
    }
    .map_err(relation_error)?;
    let edge_orders = edge_order_table(&diagram)
        .into_iter()
        .map(|((i, j), order)| EdgeOrder {
            i: i + 1,
            j: j + 1,
            order,
        })
        .collect();
    let acyclic = diagram.is_acyclic();
    let all_weights_ge4 = diagram.edges().all(|e| e.weight >= 4);
    Ok(Snapshot {
        node,
        parent,
        vertex: step.map(|(k, _)| k + 1),
        eps: step.map(|(_, e)| e),
        acyclic,
        all_weights_ge4,
        companion: triple.map(|t| t.companion.clone()),
        basis: triple.map(|t| t.basis.clone()),
        admissible: triple.map(|t| t.companion.is_admissible()),
        edge_orders,
        relations,
        warnings,
        matrix,
        diagram,
    })
}

impl Session {
    pub fn new(id: String, seed: SkewMatrix) -> Result<Self, SessionError> {
        let mut warnings = Vec::new();
        let triple = if Diagram::of(&seed).is_acyclic() {
            Some(CompanionTriple::seed(&seed).map_err(|e| SessionError::Invalid(e.to_string()))?)
        } else {
            match find_acyclic_ancestor(&seed, ANCESTOR_SEARCH) {
                Some((ancestor, seq)) => {
                    warnings.push(format!(
                        "seed diagram has oriented cycles; companion and basis come from an acyclic ancestor via [{}] with ε = -1",
                        seq.to_one_based()
                            .iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    ));
                    companion_basis_for(&ancestor, &seq, &EpsPolicy::Fixed(Sign::Minus)).ok()
                }
                None => {
                    warnings.push(
                        "seed diagram has oriented cycles and no acyclic ancestor was found; companion and basis are unavailable"
                            .into(),
                    );
                    None
                }
            }
        };
        let root = snapshot(0, None, None, seed.clone(), triple.as_ref(), warnings)?;
        Ok(Self {
            id,
            seed,
            nodes: vec![Node {
                snapshot: Arc::new(root),
                triple,
            }],
            cursor: 0,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn cursor(&self) -> usize {
        self.cursor
    }

    /// Number of nodes in the history tree.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn current(&self) -> Arc<Snapshot> {
        self.nodes[self.cursor].snapshot.clone()
    }

    pub fn node(&self, node: usize) -> Result<Arc<Snapshot>, SessionError> {
        self.nodes
            .get(node)
            .map(|n| n.snapshot.clone())
            .ok_or(SessionError::UnknownNode(node))
    }

    /// Mutates at 1-based `vertex` from the cursor, appending a child node.
    /// With `expected` set, fails if the cursor has moved away from it.
    pub fn mutate(
        &mut self,
        vertex: usize,
        eps: Sign,
        expected: Option<usize>,
    ) -> Result<Arc<Snapshot>, SessionError> {
        if let Some(expected) = expected {
            if expected != self.cursor {
                return Err(SessionError::StaleCursor {
                    expected,
                    actual: self.cursor,
                });
            }
        }
        let n = self.seed.n();
        if vertex == 0 || vertex > n {
            return Err(SessionError::Invalid(format!(
                "vertex {vertex} out of range 1..={n}"
            )));
        }
        let k = vertex - 1;
        let parent = &self.nodes[self.cursor];
        let matrix = parent
            .snapshot
            .matrix
            .mutate(k)
            .map_err(|e| SessionError::Invalid(e.to_string()))?;
        let mut warnings = Vec::new();
        let triple = match &parent.triple {
            Some(t) => match t.mutate(k, eps) {
                Ok(t) => Some(t),
                Err(e) => {
                    warnings.push(format!("companion basis dropped: {e}"));
                    None
                }
            },
            None => None,
        };
        let id = self.nodes.len();
        let snap = snapshot(
            id,
            Some(self.cursor),
            Some((k, eps)),
            matrix,
            triple.as_ref(),
            warnings,
        )?;
        self.nodes.push(Node {
            snapshot: Arc::new(snap),
            triple,
        });
        self.cursor = id;
        Ok(self.current())
    }

    pub fn move_cursor(&mut self, node: usize) -> Result<Arc<Snapshot>, SessionError> {
        if node >= self.nodes.len() {
            return Err(SessionError::UnknownNode(node));
        }
        self.cursor = node;
        Ok(self.current())
    }

    /// Relations at the cursor: the stored ones, or all of them with
    /// `full`. With `verify`, each is checked by matrix computation.
    pub fn relations(&self, full: bool, verify: bool) -> Result<Vec<RelationReport>, SessionError> {
        let node = &self.nodes[self.cursor];
        let reports = if full {
            standard_relations(&node.snapshot.diagram).map_err(relation_error)?
        } else {
            node.snapshot.relations.clone()
        };
        if !verify {
            return Ok(reports);
        }
        let Some(triple) = &node.triple else {
            return Err(SessionError::Invalid(
                "no companion basis at this node; relations cannot be verified".into(),
            ));
        };
        reports
            .iter()
            .map(
                |r| match verify_relation(r, triple, VerifyOptions::default()) {
                    Ok(v) => Ok(v),
                    Err(RelationError::VerificationFailed { report, .. }) => Ok(*report),
                    Err(e) => Err(relation_error(e)),
                },
            )
            .collect()
    }

    pub fn export(&self) -> Export {
        Export {
            id: self.id.clone(),
            seed: self.seed.clone(),
            cursor: self.cursor,
            nodes: self.nodes.iter().map(|n| (*n.snapshot).clone()).collect(),
        }
    }

    /// Rebuilds a session from an export by replaying every node, and
    /// checks each rebuilt snapshot against the exported one.
    pub fn replay(id: String, export: &Export) -> Result<Self, SessionError> {
        let mut session = Session::new(id, export.seed.clone())?;
        for (i, snap) in export.nodes.iter().enumerate() {
            if i == 0 {
                if *session.current() != *snap {
                    return Err(SessionError::ReplayMismatch(0));
                }
                continue;
            }
            let (Some(parent), Some(vertex), Some(eps)) = (snap.parent, snap.vertex, snap.eps)
            else {
                return Err(SessionError::ReplayMismatch(i));
            };
            session.move_cursor(parent)?;
            let rebuilt = session.mutate(vertex, eps, None)?;
            if *rebuilt != *snap {
                return Err(SessionError::ReplayMismatch(i));
            }
        }
        session.move_cursor(export.cursor)?;
        Ok(session)
    }
}
