use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;

use super::{verify_relation, Letter, RelationError, RelationKind, RelationReport, VerifyOptions};
use crate::companion::{Companion, EpsPolicy, Sign};
use crate::diagram::Diagram;
use crate::matrix::{MutationSequence, SkewMatrix};
use crate::roots::{companion_basis_for, CompanionTriple, RootVec};

/// Acyclic seed of type D̃ₙ on `n + 1` vertices (`n ≥ 4`): leaves 0 and 1
/// point into 2, the path `2 → 3 → … → n-2` follows, and `n-2` points to
/// the leaves `n-1` and `n`. For `n = 4` this is the star centred at 2.
pub fn affine_dn_seed(n: usize) -> Result<SkewMatrix, RelationError> {
    if n < 4 {
        return Err(RelationError::PreconditionViolated("D̃ₙ needs n ≥ 4".into()));
    }
    let mut edges = vec![(0, 2), (1, 2), (n - 2, n - 1), (n - 2, n)];
    edges.extend((2..n - 2).map(|v| (v, v + 1)));
    let mut b = vec![vec![0i64; n + 1]; n + 1];
    for (u, v) in edges {
        // u → v means b_vu > 0
        b[v][u] = 1;
        b[u][v] = -1;
    }
    Ok(SkewMatrix::new(b)?)
}

/// Everything needed to run the D̃ₙ check.
#[derive(Debug, Clone)]
pub struct AffineDnSetup {
    pub seed: SkewMatrix,
    /// Mutations from `seed` to the matrix carrying the pattern.
    pub sequence: MutationSequence,
    /// Companion triple after `sequence`, signs normalized.
    pub triple: CompanionTriple,
    pub signs: Vec<i64>,
    /// `labeling[t]` is the vertex carrying pattern label `t + 1`.
    pub labeling: Vec<usize>,
}

/// Searches the mutation class of the D̃ₙ seed breadth-first for a matrix
/// carrying the pattern, threads the seed's triple to it with ε = -1 and
/// normalizes signs.
///
/// The pattern forces a unicyclic diagram whose cycle is oriented and
/// passes through labels 3 and n+1. No matrix in the D̃₄ class is
/// unicyclic, so `n = 4` fails with `PreconditionViolated`.
pub fn affine_dn_setup(n: usize) -> Result<AffineDnSetup, RelationError> {
    let seed = affine_dn_seed(n)?;
    let mut parent: HashMap<SkewMatrix, Option<(SkewMatrix, usize)>> = HashMap::new();
    parent.insert(seed.clone(), None);
    let mut queue = VecDeque::from([seed.clone()]);
    while let Some(m) = queue.pop_front() {
        if let Some(labeling) = pattern_labeling(&Diagram::of(&m)) {
            let mut seq = Vec::new();
            let mut at = m.clone();
            while let Some(Some((prev, k))) = parent.get(&at) {
                seq.push(*k);
                at = prev.clone();
            }
            seq.reverse();
            let sequence = MutationSequence::new(seq);
            let triple = companion_basis_for(&seed, &sequence, &EpsPolicy::Fixed(Sign::Minus))?;
            let (_, signs) = normalize_affine_dn(&triple.companion, &labeling)?;
            return Ok(AffineDnSetup {
                seed,
                sequence,
                triple: triple.apply_signs(&signs),
                signs,
                labeling,
            });
        }
        for k in 0..m.n() {
            let next = m.mutate(k)?;
            if !parent.contains_key(&next) {
                if parent.len() >= SEARCH_CAP {
                    break;
                }
                parent.insert(next.clone(), Some((m.clone(), k)));
                queue.push_back(next);
            }
        }
    }
    Err(RelationError::PreconditionViolated(format!(
        "no diagram in the D̃{n} mutation class carries the pattern"
    )))
}

const SEARCH_CAP: usize = 200_000;

/// A labeling of `g` as the pattern, if one exists: `g` is unicyclic with
/// unit weights and an oriented cycle; cutting the cycle edge `{3, n+1}`
/// leaves a tree with a three-vertex branch `{1, 2, 3}` (a path with 2
/// adjacent to 3) hanging off the rest, which is labelled breadth-first
/// from n+1 with decreasing labels.
fn pattern_labeling(g: &Diagram) -> Option<Vec<usize>> {
    let size = g.n();
    if size < 5 || g.edge_count() != size || g.edges().any(|e| e.weight != 1) {
        return None;
    }
    let cycles = g.enumerate_cycles();
    let [cycle] = cycles.as_slice() else {
        return None;
    };
    if !cycle.oriented {
        return None;
    }
    for (x, y) in cycle.pairs() {
        for (u, w) in [(x, y), (y, x)] {
            // u carries label 3, w carries label n+1; drop the edge u–w
            let adj =
                |a: usize, b: usize| g.adjacent(a, b) && !((a, b) == (u, w) || (a, b) == (w, u));
            let component = |start: usize, cut: (usize, usize)| -> Vec<usize> {
                let mut seen = vec![start];
                let mut queue = VecDeque::from([start]);
                while let Some(a) = queue.pop_front() {
                    for b in 0..size {
                        let crossing = (a, b) == cut || (b, a) == cut;
                        if !crossing && adj(a, b) && !seen.contains(&b) {
                            seen.push(b);
                            queue.push_back(b);
                        }
                    }
                }
                seen
            };
            for a in 0..size {
                for b in 0..size {
                    if !adj(a, b) {
                        continue;
                    }
                    let side = component(a, (a, b));
                    if side.len() != 3 || !side.contains(&u) || side.contains(&w) {
                        continue;
                    }
                    let others: Vec<usize> = side.iter().copied().filter(|&v| v != u).collect();
                    let (one, two) = match (adj(u, others[0]), adj(u, others[1])) {
                        (true, true) => (others[0], others[1]),
                        (true, false) => (others[1], others[0]),
                        (false, true) => (others[0], others[1]),
                        (false, false) => continue,
                    };
                    let mut labeling = vec![one, two, u];
                    let rest = component(w, (a, b));
                    let mut rest_labels = rest.clone();
                    rest_labels.reverse();
                    labeling.extend(rest_labels);
                    if labeling.len() == size {
                        return Some(labeling);
                    }
                }
            }
        }
    }
    None
}

/// Induced edges among the labelled vertices, as label pairs `a < b`.
fn pattern_edges(g: &Diagram, labeling: &[usize]) -> Result<Vec<(usize, usize)>, RelationError> {
    let n = labeling.len().saturating_sub(1);
    if n < 4 {
        return Err(RelationError::PreconditionViolated(
            "labeling must cover at least 5 vertices".into(),
        ));
    }
    let mut sorted = labeling.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != labeling.len() || sorted.iter().any(|&v| v >= g.n()) {
        return Err(RelationError::PreconditionViolated(
            "labeling must name distinct vertices".into(),
        ));
    }
    let mut edges = Vec::new();
    for a in 0..=n {
        for b in (a + 1)..=n {
            if g.adjacent(labeling[a], labeling[b]) {
                edges.push((a, b));
            }
        }
    }
    if !edges.contains(&(2, n)) {
        return Err(RelationError::PreconditionViolated(format!(
            "labels 3 and {} must be adjacent",
            n + 1
        )));
    }
    Ok(edges)
}

fn special(n: usize, a: usize, b: usize) -> bool {
    (a.min(b), a.max(b)) == (2, n)
}

/// Sign changes making `a[3][n+1] > 0` and every other edge among the
/// labelled vertices negative.
pub fn normalize_affine_dn(
    c: &Companion,
    labeling: &[usize],
) -> Result<(Companion, Vec<i64>), RelationError> {
    let edges = pattern_edges(&c.diagram(), labeling)?;
    let n = labeling.len() - 1;
    let mut signs = vec![0i64; c.n()];
    for start in 0..=n {
        if signs[labeling[start]] != 0 {
            continue;
        }
        signs[labeling[start]] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            for &(x, y) in &edges {
                let b = match (x == a, y == a) {
                    (true, _) => y,
                    (_, true) => x,
                    _ => continue,
                };
                let (u, v) = (labeling[a], labeling[b]);
                if signs[v] == 0 {
                    let want = if special(n, a, b) { 1 } else { -1 };
                    signs[v] = want * signs[u] * c.entry(u, v).signum();
                    queue.push_back(b);
                }
            }
        }
    }
    for s in signs.iter_mut().filter(|s| **s == 0) {
        *s = 1;
    }
    let out = c.apply_signs(&signs);
    if affine_defect(&out, labeling, &edges).is_some() {
        return Err(RelationError::CannotNormalize);
    }
    Ok((out, signs))
}

fn affine_defect(c: &Companion, labeling: &[usize], edges: &[(usize, usize)]) -> Option<String> {
    let n = labeling.len() - 1;
    edges.iter().find_map(|&(a, b)| {
        let e = c.entry(labeling[a], labeling[b]);
        (special(n, a, b) != (e > 0))
            .then(|| format!("a[{}][{}] = {e} has the wrong sign", a + 1, b + 1))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineDnReport {
    pub n: usize,
    pub gamma: RootVec,
    pub delta: RootVec,
    /// `(γ, δ)` in the symmetrized form.
    pub pairing: i128,
    /// `γ = t_1 t_2(β_3)` and `δ = t_4 … t_n(β_{n+1})` hold as computed.
    pub reflections_match: bool,
    pub relation: RelationReport,
}

impl AffineDnReport {
    pub fn passed(&self) -> bool {
        self.pairing == 0
            && self.reflections_match
            && self.relation.verified == super::VerificationStatus::ProvenFiniteByMatrix
    }
}

/// With `γ = β_1 + β_2 + β_3` and `δ = β_4 + … + β_{n+1}` (pattern labels),
/// checks `(γ, δ) = 0` and `(t_1 t_2 t_3 t_2 t_1 · t_4 … t_n t_{n+1} t_n … t_4)² = e`.
pub fn affine_dn_check(
    triple: &CompanionTriple,
    labeling: &[usize],
) -> Result<AffineDnReport, RelationError> {
    let edges = pattern_edges(&triple.companion.diagram(), labeling)?;
    let n = labeling.len() - 1;
    if let Some(msg) = affine_defect(&triple.companion, labeling, &edges) {
        return Err(RelationError::NormalizationRequired(msg));
    }
    let lattice = &triple.lattice;
    let beta = |label: usize| triple.basis.vector(labeling[label]);
    let sum = |labels: std::ops::RangeInclusive<usize>| -> Result<RootVec, RelationError> {
        let mut acc = RootVec::zero(triple.n());
        for t in labels {
            acc = acc.add_scaled(1, beta(t))?;
        }
        Ok(acc)
    };
    let gamma = sum(0..=2)?;
    let delta = sum(3..=n)?;

    let via_gamma = lattice.reflect(beta(0), &lattice.reflect(beta(1), beta(2))?)?;
    let mut via_delta = beta(n).clone();
    for t in (3..n).rev() {
        via_delta = lattice.reflect(beta(t), &via_delta)?;
    }
    let reflections_match = via_gamma == gamma && via_delta == delta;
    let pairing = lattice.bilinear(&gamma, &delta);

    let mut labels = vec![0, 1, 2, 1, 0];
    labels.extend(3..=n);
    labels.extend((3..n).rev());
    let word = labels.iter().map(|&t| Letter::plain(labeling[t])).collect();
    let x = BigInt::from(lattice.gram_pairing(&gamma, &delta)?)
        * BigInt::from(lattice.gram_pairing(&delta, &gamma)?);
    let relation = RelationReport::new(RelationKind::AffineDn, word, x)?;
    let relation = match verify_relation(&relation, triple, VerifyOptions::default()) {
        Ok(r) => r,
        Err(RelationError::VerificationFailed { report, .. }) => *report,
        Err(e) => return Err(e),
    };
    Ok(AffineDnReport {
        n,
        gamma,
        delta,
        pairing,
        reflections_match,
        relation,
    })
}
