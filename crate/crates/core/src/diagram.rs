//! Weighted diagrams of skew-symmetrizable matrices.
//!
//! The diagram of `B` has an edge `i → j` exactly when `b_ji > 0`, weighted
//! by `|b_ij·b_ji|`. Diagrams have no loops and at most one edge per pair,
//! and the product of the weights around every cycle of the underlying
//! graph is a perfect square.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::matrix::SkewMatrix;
use crate::sqrt_ring::{square_free_part, SqrtNum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("loop at vertex {}", .0 + 1)]
    Loop(usize),
    #[error("more than one edge between {} and {}", .0 + 1, .1 + 1)]
    DuplicateEdge(usize, usize),
    #[error("edge {} -> {} has zero weight", .0 + 1, .1 + 1)]
    ZeroWeight(usize, usize),
    #[error("weight product around a cycle through edge {} - {} is not a perfect square", .0 + 1, .1 + 1)]
    NotPerfectSquare(usize, usize),
    #[error("mutation at {} leaves the square-root ring on pair {} - {}: {value}", .k + 1, .i + 1, .j + 1)]
    InvalidDiagram {
        k: usize,
        i: usize,
        j: usize,
        value: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub weight: u128,
}

/// Directed graph without loops or 2-cycles, with positive integer weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "crate::wire::DiagramDoc", into = "crate::wire::DiagramDoc")]
pub struct Diagram {
    n: usize,
    // keyed by (tail, head)
    edges: BTreeMap<(usize, usize), u128>,
}

/// Induced cycle of the underlying undirected graph.
///
/// Oriented cycles list their vertices in edge direction, so
/// `vertices[t] → vertices[t + 1]` for every `t` (indices mod length).
/// Every cycle starts at its smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub oriented: bool,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// Unordered consecutive pairs, including the closing pair.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let len = self.vertices.len();
        (0..len).map(move |t| (self.vertices[t], self.vertices[(t + 1) % len]))
    }

    /// The same cycle listed from `v`, keeping the traversal direction.
    pub fn rotated_to(&self, v: usize) -> Option<Vec<usize>> {
        let pos = self.vertices.iter().position(|&x| x == v)?;
        let mut out = self.vertices[pos..].to_vec();
        out.extend_from_slice(&self.vertices[..pos]);
        Some(out)
    }
}

impl Diagram {
    /// Validated constructor.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, DiagramError> {
        let mut map = BTreeMap::new();
        for e in edges {
            for v in [e.tail, e.head] {
                if v >= n {
                    return Err(DiagramError::VertexOutOfRange { v: v + 1, n });
                }
            }
            if e.tail == e.head {
                return Err(DiagramError::Loop(e.tail));
            }
            if e.weight == 0 {
                return Err(DiagramError::ZeroWeight(e.tail, e.head));
            }
            if map.contains_key(&(e.tail, e.head)) || map.contains_key(&(e.head, e.tail)) {
                return Err(DiagramError::DuplicateEdge(e.tail, e.head));
            }
            map.insert((e.tail, e.head), e.weight);
        }
        let g = Self { n, edges: map };
        g.check_perfect_square()?;
        Ok(g)
    }

    pub fn edgeless(n: usize) -> Self {
        Self {
            n,
            edges: BTreeMap::new(),
        }
    }

    /// The diagram of a skew-symmetrizable matrix.
    pub fn of(m: &SkewMatrix) -> Self {
        let n = m.n();
        let mut edges = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                if m.entry(j, i) > 0 {
                    edges.insert((i, j), m.weight(i, j));
                }
            }
        }
        Self { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges
            .iter()
            .map(|(&(tail, head), &weight)| Edge { tail, head, weight })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Weight of the directed edge `tail → head`, if present.
    pub fn directed_weight(&self, tail: usize, head: usize) -> Option<u128> {
        self.edges.get(&(tail, head)).copied()
    }

    /// Weight of the edge between `i` and `j` in either direction (0 if none).
    pub fn weight(&self, i: usize, j: usize) -> u128 {
        self.directed_weight(i, j)
            .or_else(|| self.directed_weight(j, i))
            .unwrap_or(0)
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.weight(i, j) != 0
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.adjacent(u, v)).collect()
    }

    pub fn min_weight(&self) -> Option<u128> {
        self.edges.values().copied().min()
    }

    /// Signed square root of the weight between `i` and `j`: `+√w` when the
    /// edge points `j → i` (the sign of `b_ij` in a realizing matrix), `-√w`
    /// when it points `i → j`.
    fn signed_root(&self, i: usize, j: usize) -> SqrtNum {
        if let Some(w) = self.directed_weight(j, i) {
            SqrtNum::from_sqrt(w)
        } else if let Some(w) = self.directed_weight(i, j) {
            -SqrtNum::from_sqrt(w)
        } else {
            SqrtNum::zero()
        }
    }

    /// Checks that every cycle has square weight product.
    ///
    /// Equivalent to the square-free classes of the weights being a
    /// coboundary: there are vertex classes `c_v` with
    /// `class(w_uv) = c_u·c_v` modulo squares. Fundamental cycles of a
    /// spanning forest generate all cycles, so checking the non-tree edges
    /// suffices.
    pub fn check_perfect_square(&self) -> Result<(), DiagramError> {
        let mut label: Vec<Option<u128>> = vec![None; self.n];
        let mult = |a: u128, b: u128| {
            let g = num_integer::gcd(a, b);
            (a / g) * (b / g)
        };
        for root in 0..self.n {
            if label[root].is_some() {
                continue;
            }
            label[root] = Some(1);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let lu = label[u].expect("visited");
                for v in 0..self.n {
                    let w = self.weight(u, v);
                    if w == 0 {
                        continue;
                    }
                    let expected = mult(lu, square_free_part(w));
                    match label[v] {
                        None => {
                            label[v] = Some(expected);
                            queue.push_back(v);
                        }
                        Some(lv) if lv != expected => {
                            return Err(DiagramError::NotPerfectSquare(u, v));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(())
    }

    /// Diagram mutation at `k`.
    ///
    /// Edges at `k` are reversed. For every oriented path `i → k → j` the
    /// edge between `i` and `j` is replaced according to
    /// `±√γ ± √γ' = √(αβ)`, computed here as the signed update
    /// `c'_ij = c_ij - √(αβ)` with `c_ij = ±√γ` as in [`Self::signed_root`].
    pub fn mutate(&self, k: usize) -> Result<Diagram, DiagramError> {
        if k >= self.n {
            return Err(DiagramError::VertexOutOfRange {
                v: k + 1,
                n: self.n,
            });
        }
        let sources: Vec<(usize, u128)> = (0..self.n)
            .filter_map(|i| self.directed_weight(i, k).map(|w| (i, w)))
            .collect();
        let targets: Vec<(usize, u128)> = (0..self.n)
            .filter_map(|j| self.directed_weight(k, j).map(|w| (j, w)))
            .collect();

        let mut edges = BTreeMap::new();
        for (&(t, h), &w) in &self.edges {
            if t == k || h == k {
                edges.insert((h, t), w);
            } else {
                edges.insert((t, h), w);
            }
        }
        for &(i, alpha) in &sources {
            for &(j, beta) in &targets {
                let updated = &self.signed_root(i, j) - &SqrtNum::from_sqrt(alpha * beta);
                edges.remove(&(i, j));
                edges.remove(&(j, i));
                let (coeff, sqfree) =
                    updated
                        .single_term()
                        .map_err(|_| DiagramError::InvalidDiagram {
                            k,
                            i,
                            j,
                            value: updated.to_string(),
                        })?;
                if coeff.is_zero() {
                    continue;
                }
                let weight = (&coeff * &coeff)
                    .to_u128()
                    .and_then(|c2| c2.checked_mul(sqfree))
                    .ok_or_else(|| DiagramError::InvalidDiagram {
                        k,
                        i,
                        j,
                        value: updated.to_string(),
                    })?;
                // negative c'_ij means the new edge points i → j
                if coeff.is_negative() {
                    edges.insert((i, j), weight);
                } else {
                    edges.insert((j, i), weight);
                }
            }
        }
        Ok(Diagram { n: self.n, edges })
    }

    /// True iff there is no directed cycle (Kahn's algorithm).
    pub fn is_acyclic(&self) -> bool {
        let mut indegree = vec![0usize; self.n];
        for &(_, h) in self.edges.keys() {
            indegree[h] += 1;
        }
        let mut queue: VecDeque<usize> = (0..self.n).filter(|&v| indegree[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop_front() {
            removed += 1;
            for (&(t, h), _) in self.edges.range((v, 0)..(v + 1, 0)) {
                debug_assert_eq!(t, v);
                indegree[h] -= 1;
                if indegree[h] == 0 {
                    queue.push_back(h);
                }
            }
        }
        removed == self.n
    }

    /// All chordless cycles of length at least 3 of the underlying graph.
    ///
    /// Each cycle appears once, rooted at its smallest vertex. The search
    /// grows chordless paths from the root through larger vertices only and
    /// is exponential in the worst case; intended for `n ≤ 14`.
    pub fn enumerate_cycles(&self) -> Vec<Cycle> {
        let n = self.n;
        let adj: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| self.adjacent(i, j)).collect())
            .collect();
        let mut out = Vec::new();
        let mut path = Vec::with_capacity(n);
        for root in 0..n {
            path.clear();
            path.push(root);
            self.extend_chordless(&adj, &mut path, &mut out);
        }
        out.sort();
        out
    }

    fn extend_chordless(&self, adj: &[Vec<bool>], path: &mut Vec<usize>, out: &mut Vec<Cycle>) {
        let root = path[0];
        let last = *path.last().expect("non-empty path");
        for v in (root + 1)..self.n {
            if !adj[last][v] || path.contains(&v) {
                continue;
            }
            // v may only touch the last vertex and, when closing, the root
            let interior = path.get(1..path.len().saturating_sub(1)).unwrap_or(&[]);
            if interior.iter().any(|&p| adj[p][v]) {
                continue;
            }
            if path.len() >= 2 && adj[root][v] {
                // closes a cycle; each cycle is found in both directions,
                // keep the one whose second vertex is smaller than its last
                if path[1] < v {
                    let mut vertices = path.clone();
                    vertices.push(v);
                    out.push(self.make_cycle(vertices));
                }
                continue;
            }
            path.push(v);
            self.extend_chordless(adj, path, out);
            path.pop();
        }
    }

    fn make_cycle(&self, vertices: Vec<usize>) -> Cycle {
        let len = vertices.len();
        let forward = (0..len).all(|t| {
            self.directed_weight(vertices[t], vertices[(t + 1) % len])
                .is_some()
        });
        let backward = (0..len).all(|t| {
            self.directed_weight(vertices[(t + 1) % len], vertices[t])
                .is_some()
        });
        if backward {
            // list in edge direction, still starting at the root
            let mut rev = vec![vertices[0]];
            rev.extend(vertices[1..].iter().rev());
            return Cycle {
                vertices: rev,
                oriented: true,
            };
        }
        Cycle {
            vertices,
            oriented: forward,
        }
    }

    /// True iff `vertices` induces a cycle in the listed cyclic order.
    pub fn is_induced_cycle(&self, vertices: &[usize]) -> bool {
        let len = vertices.len();
        if len < 3 {
            return false;
        }
        for a in 0..len {
            for b in (a + 1)..len {
                let consecutive = b == a + 1 || (a == 0 && b == len - 1);
                if self.adjacent(vertices[a], vertices[b]) != consecutive {
                    return false;
                }
            }
        }
        true
    }

    /// True iff `vertices` is an oriented induced cycle traversed in edge
    /// direction.
    pub fn is_oriented_induced_cycle(&self, vertices: &[usize]) -> bool {
        let len = vertices.len();
        self.is_induced_cycle(vertices)
            && (0..len).all(|t| {
                self.directed_weight(vertices[t], vertices[(t + 1) % len])
                    .is_some()
            })
    }
}

/// The diagram of `m`.
pub fn diagram_of(m: &SkewMatrix) -> Diagram {
    Diagram::of(m)
}
