//! Quasi-Cartan companions of skew-symmetrizable matrices.
//!
//! A companion `A` of `B` has `a_ii = 2`, `|a_ij| = |b_ij|` off the diagonal,
//! and is symmetrized by the same `d` as `B`. It is admissible when every
//! chordless cycle of the diagram carries an odd number of positive entries
//! if the cycle is oriented and an even number otherwise.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Cycle, Diagram};
use crate::matrix::{MatrixError, MutationSequence, SkewMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompanionError {
    #[error("companion has {got} rows, matrix has {n}")]
    Shape { got: usize, n: usize },
    #[error("diagonal entry at vertex {} must be 2", .0 + 1)]
    Diagonal(usize),
    #[error("|a_{}{}| differs from |b_{}{}|", .0 + 1, .1 + 1, .0 + 1, .1 + 1)]
    Magnitude(usize, usize),
    #[error("a_{}{} and a_{}{} have different signs", .0 + 1, .1 + 1, .1 + 1, .0 + 1)]
    SignSymmetry(usize, usize),
    #[error("companion is not admissible (failing cycle {0:?}); pass force to mutate anyway")]
    NotAdmissibleInput(Vec<usize>),
    #[error("no admissible companion: parity conditions of cycles {0:?} are inconsistent")]
    NoSolution(Vec<Vec<usize>>),
    #[error("mutation sequence does not lead from the seed to the companion's matrix")]
    SequenceMismatch,
    #[error("seed diagram is not acyclic")]
    SeedNotAcyclic,
    #[error("ε list has {got} entries for a sequence of length {len}")]
    EpsLength { got: usize, len: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// The sign `ε = ±1` used in companion and basis mutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i64", try_from = "i64")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl From<Sign> for i64 {
    fn from(s: Sign) -> i64 {
        s.value()
    }
}

impl TryFrom<i64> for Sign {
    type Error = String;
    fn try_from(v: i64) -> Result<Self, Self::Error> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(format!("sign must be 1 or -1, got {other}")),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// How ε is chosen at each step of a mutation sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EpsPolicy {
    Fixed(Sign),
    PerStep(Vec<Sign>),
}

impl EpsPolicy {
    pub fn resolve(&self, len: usize) -> Result<Vec<Sign>, CompanionError> {
        match self {
            EpsPolicy::Fixed(s) => Ok(vec![*s; len]),
            EpsPolicy::PerStep(v) if v.len() == len => Ok(v.clone()),
            EpsPolicy::PerStep(v) => Err(CompanionError::EpsLength { got: v.len(), len }),
        }
    }
}

/// Result of an admissibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Admissibility {
    pub admissible: bool,
    pub witness: Option<Cycle>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(
    try_from = "crate::wire::CompanionDoc",
    into = "crate::wire::CompanionDoc"
)]
pub struct Companion {
    a: Vec<Vec<i64>>,
    matrix: SkewMatrix,
}

impl Companion {
    /// Checks the companion invariants against `matrix`.
    pub fn new(a: Vec<Vec<i64>>, matrix: SkewMatrix) -> Result<Self, CompanionError> {
        let n = matrix.n();
        if a.len() != n || a.iter().any(|r| r.len() != n) {
            return Err(CompanionError::Shape { got: a.len(), n });
        }
        let d = matrix.symmetrizer();
        for i in 0..n {
            if a[i][i] != 2 {
                return Err(CompanionError::Diagonal(i));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if a[i][j].abs() != matrix.entry(i, j).abs() {
                    return Err(CompanionError::Magnitude(i, j));
                }
                if a[i][j].signum() != a[j][i].signum()
                    || d[i] as i128 * a[i][j] as i128 != d[j] as i128 * a[j][i] as i128
                {
                    return Err(CompanionError::SignSymmetry(i, j));
                }
            }
        }
        Ok(Self { a, matrix })
    }

    /// The generalized Cartan companion `a_ij = -|b_ij|`.
    pub fn generalized_cartan(m: &SkewMatrix) -> Self {
        let n = m.n();
        let a = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { 2 } else { -m.entry(i, j).abs() })
                    .collect()
            })
            .collect();
        Self {
            a,
            matrix: m.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn matrix(&self) -> &SkewMatrix {
        &self.matrix
    }

    pub fn diagram(&self) -> Diagram {
        Diagram::of(&self.matrix)
    }

    /// Checks the sign condition on every chordless cycle of the diagram.
    pub fn admissibility(&self) -> Admissibility {
        self.admissibility_on(&self.diagram().enumerate_cycles())
    }

    pub fn is_admissible(&self) -> bool {
        self.admissibility().admissible
    }

    /// Same as [`Self::admissibility`] with a precomputed cycle list.
    pub fn admissibility_on(&self, cycles: &[Cycle]) -> Admissibility {
        let witness = cycles.iter().find(|c| !self.cycle_ok(c)).cloned();
        Admissibility {
            admissible: witness.is_none(),
            witness,
        }
    }

    fn cycle_ok(&self, c: &Cycle) -> bool {
        let positive = c.pairs().filter(|&(u, v)| self.a[u][v] > 0).count();
        (positive % 2 == 1) == c.oriented
    }

    /// ε-mutation at `k`, paired with matrix mutation:
    ///
    /// * `a'_ik = ε·sgn(b_ki)·a_ik` and `a'_kj = ε·sgn(b_kj)·a_kj`,
    /// * `a'_ij = a_ij - sgn(a_ik·a_kj)·[b_ik·b_kj]₊` for `i, j ≠ k`.
    ///
    /// Mutating with `ε` and then with `-ε` at the same vertex returns the
    /// original companion. Non-admissible input is rejected unless `force`
    /// is set, in which case the output is returned unchecked.
    pub fn mutate(&self, k: usize, eps: Sign, force: bool) -> Result<Companion, CompanionError> {
        self.matrix.check_vertex(k)?;
        if !force {
            let report = self.admissibility();
            if let Some(w) = report.witness {
                return Err(CompanionError::NotAdmissibleInput(w.vertices));
            }
        }
        let b = &self.matrix;
        let n = self.n();
        let e = eps.value();
        let mut a = self.a.clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            a[i][k] = e * b.entry(k, i).signum() * self.a[i][k];
            a[k][i] = e * b.entry(k, i).signum() * self.a[k][i];
            for j in 0..n {
                if j == k || j == i {
                    continue;
                }
                let prod = b.entry(i, k) as i128 * b.entry(k, j) as i128;
                if prod > 0 {
                    let s = (self.a[i][k] * self.a[k][j]).signum() as i128;
                    let v = self.a[i][j] as i128 - s * prod;
                    a[i][j] = i64::try_from(v).map_err(|_| MatrixError::Overflow(k))?;
                }
            }
        }
        let matrix = b.mutate(k)?;
        if force {
            return Ok(Companion { a, matrix });
        }
        Companion::new(a, matrix)
    }

    /// Negates row and column `k`.
    pub fn sign_change(&self, k: usize) -> Companion {
        let mut a = self.a.clone();
        for i in 0..self.n() {
            if i != k {
                a[i][k] = -a[i][k];
                a[k][i] = -a[k][i];
            }
        }
        Companion {
            a,
            matrix: self.matrix.clone(),
        }
    }

    /// Applies `a_ij ↦ s_i·s_j·a_ij`.
    pub fn apply_signs(&self, signs: &[i64]) -> Companion {
        let n = self.n();
        let a = (0..n)
            .map(|i| (0..n).map(|j| signs[i] * signs[j] * self.a[i][j]).collect())
            .collect();
        Companion {
            a,
            matrix: self.matrix.clone(),
        }
    }

    /// Representative of the sign-change orbit: every edge of a BFS
    /// spanning forest of the support graph is made negative.
    pub fn canonical_signs(&self) -> (Companion, Vec<i64>) {
        let n = self.n();
        let mut signs = vec![0i64; n];
        for root in 0..n {
            if signs[root] != 0 {
                continue;
            }
            signs[root] = 1;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for v in 0..n {
                    if v == u || self.a[u][v] == 0 || signs[v] != 0 {
                        continue;
                    }
                    // want s_u·s_v·a_uv < 0
                    signs[v] = -signs[u] * self.a[u][v].signum();
                    queue.push_back(v);
                }
            }
        }
        (self.apply_signs(&signs), signs)
    }
}

impl fmt::Display for Companion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.a {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "[{}]", cells.join(""))?;
        }
        Ok(())
    }
}

/// Generalized Cartan companion of `m`.
pub fn generalized_cartan(m: &SkewMatrix) -> Companion {
    Companion::generalized_cartan(m)
}

/// Decides whether `c2 = S·c1·S` for a diagonal sign matrix `S` and returns
/// the signs when it does. Signs are propagated along a spanning forest of
/// the support graph and checked on every other edge; isolated vertices get
/// `+1`.
pub fn equal_up_to_sign_changes(c1: &Companion, c2: &Companion) -> Option<Vec<i64>> {
    let n = c1.n();
    if c2.n() != n {
        return None;
    }
    for i in 0..n {
        for j in 0..n {
            if c1.a[i][j].abs() != c2.a[i][j].abs() {
                return None;
            }
        }
    }
    let mut signs = vec![0i64; n];
    for root in 0..n {
        if signs[root] != 0 {
            continue;
        }
        signs[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if v == u || c1.a[u][v] == 0 {
                    continue;
                }
                let ratio = c1.a[u][v].signum() * c2.a[u][v].signum();
                let wanted = signs[u] * ratio;
                if signs[v] == 0 {
                    signs[v] = wanted;
                    queue.push_back(v);
                } else if signs[v] != wanted {
                    return None;
                }
            }
        }
    }
    Some(signs)
}

/// Row of a GF(2) linear system: edge variables, right-hand side, and the
/// set of original equations combined into it.
#[derive(Clone)]
struct ParityRow {
    coeffs: Vec<u64>,
    rhs: bool,
    origin: Vec<u64>,
}

fn bit_set(words: &mut [u64], i: usize) {
    words[i / 64] ^= 1 << (i % 64);
}

fn bit_get(words: &[u64], i: usize) -> bool {
    words[i / 64] >> (i % 64) & 1 == 1
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Finds an admissible companion of `m` by solving the cycle parity
/// conditions over GF(2), one variable per edge (1 = positive entry).
/// Free variables are set to 0, so acyclic diagrams yield the generalized
/// Cartan companion.
pub fn find_admissible(m: &SkewMatrix) -> Result<Companion, CompanionError> {
    let g = Diagram::of(m);
    let edges: Vec<(usize, usize)> = g.edges().map(|e| (e.tail, e.head)).collect();
    let index: HashMap<(usize, usize), usize> = edges
        .iter()
        .enumerate()
        .flat_map(|(idx, &(t, h))| [((t, h), idx), ((h, t), idx)])
        .collect();
    let cycles = g.enumerate_cycles();
    let words = edges.len().div_ceil(64).max(1);
    let origin_words = cycles.len().div_ceil(64).max(1);

    let mut rows: Vec<ParityRow> = cycles
        .iter()
        .enumerate()
        .map(|(ci, c)| {
            let mut coeffs = vec![0u64; words];
            for (u, v) in c.pairs() {
                bit_set(&mut coeffs, index[&(u, v)]);
            }
            let mut origin = vec![0u64; origin_words];
            bit_set(&mut origin, ci);
            ParityRow {
                coeffs,
                rhs: c.oriented,
                origin,
            }
        })
        .collect();

    // Gauss-Jordan elimination
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next = 0;
    for col in 0..edges.len() {
        let Some(p) = (next..rows.len()).find(|&r| bit_get(&rows[r].coeffs, col)) else {
            continue;
        };
        rows.swap(next, p);
        let pivot = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && bit_get(&row.coeffs, col) {
                xor_into(&mut row.coeffs, &pivot.coeffs);
                row.rhs ^= pivot.rhs;
                xor_into(&mut row.origin, &pivot.origin);
            }
        }
        pivots.push((next, col));
        next += 1;
    }
    if let Some(bad) = rows[next..].iter().find(|r| r.rhs) {
        let involved = (0..cycles.len())
            .filter(|&ci| bit_get(&bad.origin, ci))
            .map(|ci| cycles[ci].vertices.clone())
            .collect();
        return Err(CompanionError::NoSolution(involved));
    }
    let mut positive = vec![false; edges.len()];
    for &(r, col) in &pivots {
        positive[col] = rows[r].rhs;
    }
    let mut a = Companion::generalized_cartan(m).a;
    for (idx, &(t, h)) in edges.iter().enumerate() {
        if positive[idx] {
            a[t][h] = -a[t][h];
            a[h][t] = -a[h][t];
        }
    }
    Companion::new(a, m.clone())
}

/// Outcome of [`reachability_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reachability {
    pub reachable: bool,
    /// ε used at each step, when reachable.
    pub eps: Option<Vec<Sign>>,
    /// Sign vector taking the mutated companion to the target.
    pub signs: Option<Vec<i64>>,
}

/// Decides whether `target` arises from the generalized Cartan companion of
/// the acyclic seed `m0` by ε-mutation along `seq` followed by sign changes.
///
/// With `policy = None` every ε assignment is searched. States reached at
/// each step are deduplicated up to simultaneous sign changes, which commute
/// with ε-mutation.
pub fn reachability_check(
    m0: &SkewMatrix,
    seq: &MutationSequence,
    target: &Companion,
    policy: Option<&EpsPolicy>,
) -> Result<Reachability, CompanionError> {
    if !Diagram::of(m0).is_acyclic() {
        return Err(CompanionError::SeedNotAcyclic);
    }
    seq.validate(m0.n())?;
    if &m0.mutate_along(seq)? != target.matrix() {
        return Err(CompanionError::SequenceMismatch);
    }
    let choices: Vec<Vec<Sign>> = match policy {
        Some(p) => p.resolve(seq.len())?.into_iter().map(|s| vec![s]).collect(),
        None => vec![vec![Sign::Minus, Sign::Plus]; seq.len()],
    };
    // canonical companion -> (actual companion, ε history)
    let start = Companion::generalized_cartan(m0);
    let mut frontier: HashMap<Companion, (Companion, Vec<Sign>)> = HashMap::new();
    frontier.insert(start.canonical_signs().0, (start, Vec::new()));
    for (k, options) in seq.iter().zip(&choices) {
        let mut next: HashMap<Companion, (Companion, Vec<Sign>)> = HashMap::new();
        for (c, history) in frontier.values() {
            for &eps in options {
                let mutated = c.mutate(k, eps, false)?;
                let key = mutated.canonical_signs().0;
                next.entry(key).or_insert_with(|| {
                    let mut h = history.clone();
                    h.push(eps);
                    (mutated, h)
                });
            }
        }
        frontier = next;
    }
    for (c, history) in frontier.values() {
        if let Some(signs) = equal_up_to_sign_changes(c, target) {
            return Ok(Reachability {
                reachable: true,
                eps: Some(history.clone()),
                signs: Some(signs),
            });
        }
    }
    Ok(Reachability {
        reachable: false,
        eps: None,
        signs: None,
    })
}
