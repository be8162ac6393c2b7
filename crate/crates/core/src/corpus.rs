//! Seed matrices for tests and batch runs: named Dynkin types and random
//! acyclic seeds, with one reproducible RNG stream per case.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use std::collections::{HashMap, VecDeque};

use crate::companion::Sign;
use crate::diagram::Diagram;
use crate::matrix::{MatrixError, MutationSequence, SkewMatrix};

/// RNG for case `index` of a batch seeded with `seed`.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Matrix with `b_vu = up`, `b_uv = -down` for each `(u, v, up, down)`,
/// i.e. an edge `u → v` of weight `up·down`.
fn from_edges(n: usize, edges: &[(usize, usize, i64, i64)]) -> SkewMatrix {
    let mut b = vec![vec![0i64; n]; n];
    for &(u, v, up, down) in edges {
        b[v][u] = up;
        b[u][v] = -down;
    }
    SkewMatrix::new(b).expect("named seeds are skew-symmetrizable")
}

/// Linearly oriented `A_n` with `b_{i,i+1} = 1`, so edges run `i+1 → i`.
pub fn type_a(n: usize) -> SkewMatrix {
    let edges: Vec<_> = (1..n).map(|v| (v, v - 1, 1, 1)).collect();
    from_edges(n, &edges)
}

/// `B_n`: `A_n` with the last edge of weight 2, the long entry in the
/// column of the last vertex.
pub fn type_b(n: usize) -> SkewMatrix {
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v, 1, 1)).collect();
    if let Some(last) = edges.last_mut() {
        *last = (n - 2, n - 1, 1, 2);
    }
    from_edges(n, &edges)
}

/// `C_n`: the transpose pattern of `B_n`.
pub fn type_c(n: usize) -> SkewMatrix {
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v, 1, 1)).collect();
    if let Some(last) = edges.last_mut() {
        *last = (n - 2, n - 1, 2, 1);
    }
    from_edges(n, &edges)
}

/// `D_n` (`n ≥ 4`): a path `0 → … → n-2` with the extra leaf `n-3 → n-1`.
pub fn type_d(n: usize) -> SkewMatrix {
    let mut edges: Vec<_> = (1..n - 1).map(|v| (v - 1, v, 1, 1)).collect();
    edges.push((n - 3, n - 1, 1, 1));
    from_edges(n, &edges)
}

pub fn type_g2() -> SkewMatrix {
    from_edges(2, &[(0, 1, 1, 3)])
}

/// Parses `A3`, `B2`, `C4`, `D5`, `G2` or `Dt5` (affine D̃₅).
pub fn named_seed(name: &str) -> Option<SkewMatrix> {
    let (kind, rank) = name.split_at(name.find(|c: char| c.is_ascii_digit())?);
    let rank: usize = rank.parse().ok()?;
    match (kind, rank) {
        ("A", 1..) => Some(type_a(rank)),
        ("B", 2..) => Some(type_b(rank)),
        ("C", 2..) => Some(type_c(rank)),
        ("D", 4..) => Some(type_d(rank)),
        ("G", 2) => Some(type_g2()),
        ("Dt", 4..) => crate::relations::affine_dn_seed(rank).ok(),
        _ => None,
    }
}

/// Shape of randomly generated acyclic seeds.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedConfig {
    pub min_n: usize,
    pub max_n: usize,
    /// Probability that a pair of vertices is joined.
    pub edge_probability: f64,
    /// Allowed edge weights.
    pub weights: Vec<u128>,
    /// Symmetrizer entries are drawn from here.
    pub symmetrizers: Vec<i64>,
}

impl Default for SeedConfig {
    fn default() -> Self {
        Self {
            min_n: 2,
            max_n: 8,
            edge_probability: 0.5,
            weights: vec![1, 2, 3, 4],
            symmetrizers: vec![1, 1, 2, 3],
        }
    }
}

/// Random acyclic seed. A symmetrizer `d` is drawn first and every edge is
/// realized as `b_ij = t·d_j/g`, `b_ji = -t·d_i/g` with `g = gcd(d_i, d_j)`,
/// so `d` symmetrizes the result by construction; pairs admitting no
/// allowed weight stay unjoined. Edges point forward in a random vertex
/// order.
pub fn random_acyclic_seed<R: Rng>(rng: &mut R, config: &SeedConfig) -> SkewMatrix {
    let n = rng.gen_range(config.min_n..=config.max_n);
    let d: Vec<i64> = (0..n)
        .map(|_| *config.symmetrizers.choose(rng).unwrap_or(&1))
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut b = vec![vec![0i64; n]; n];
    for x in 0..n {
        for y in (x + 1)..n {
            if !rng.gen_bool(config.edge_probability) {
                continue;
            }
            let (u, v) = (order[x], order[y]);
            let g = num_integer::gcd(d[u], d[v]);
            let (pu, pv) = (d[v] / g, d[u] / g);
            // weight = t²·pu·pv
            let options: Vec<i64> = (1..=8)
                .filter(|&t| {
                    let w = (t * t * pu * pv) as u128;
                    config.weights.contains(&w)
                })
                .collect();
            let Some(&t) = options.choose(rng) else {
                continue;
            };
            // edge u → v: b_vu > 0
            b[v][u] = t * pv;
            b[u][v] = -t * pu;
        }
    }
    SkewMatrix::with_symmetrizer(b, &d).expect("realized with symmetrizer d")
}

/// Random sequence of `len` mutations without immediate repeats.
pub fn random_sequence<R: Rng>(rng: &mut R, n: usize, len: usize) -> MutationSequence {
    let mut seq: Vec<usize> = Vec::with_capacity(len);
    while seq.len() < len && n > 0 {
        let k = rng.gen_range(0..n);
        if n == 1 || seq.last() != Some(&k) {
            seq.push(k);
        }
    }
    MutationSequence::new(seq)
}

pub fn random_signs<R: Rng>(rng: &mut R, len: usize) -> Vec<Sign> {
    (0..len)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect()
}

/// Every matrix reachable from `m0` by at most `depth` mutations, each
/// with one shortest sequence reaching it.
pub fn reachable_within(
    m0: &SkewMatrix,
    depth: usize,
) -> Result<Vec<(SkewMatrix, MutationSequence)>, MatrixError> {
    let mut seen = std::collections::HashSet::from([m0.clone()]);
    let mut frontier = vec![(m0.clone(), MutationSequence::default())];
    let mut out = frontier.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for (m, seq) in &frontier {
            for k in 0..m.n() {
                let child = m.mutate(k)?;
                if seen.insert(child.clone()) {
                    let mut s = seq.as_slice().to_vec();
                    s.push(k);
                    next.push((child, MutationSequence::new(s)));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(out)
}

/// Breadth-first search of the mutation class of `m` for an acyclic
/// matrix, visiting at most `max_states` matrices. Returns the acyclic
/// seed and the sequence leading from it back to `m`.
pub fn find_acyclic_ancestor(
    m: &SkewMatrix,
    max_states: usize,
) -> Option<(SkewMatrix, MutationSequence)> {
    let mut parent: HashMap<SkewMatrix, Option<(SkewMatrix, usize)>> = HashMap::new();
    parent.insert(m.clone(), None);
    let mut queue = VecDeque::from([m.clone()]);
    while let Some(cur) = queue.pop_front() {
        if Diagram::of(&cur).is_acyclic() {
            // path from m to cur, reversed, leads from cur back to m
            let mut seq = Vec::new();
            let mut at = cur.clone();
            while let Some(Some((prev, k))) = parent.get(&at) {
                seq.push(*k);
                at = prev.clone();
            }
            return Some((cur, MutationSequence::new(seq)));
        }
        for k in 0..cur.n() {
            let Ok(next) = cur.mutate(k) else { continue };
            if !parent.contains_key(&next) {
                if parent.len() >= max_states {
                    return None;
                }
                parent.insert(next.clone(), Some((cur.clone(), k)));
                queue.push_back(next);
            }
        }
    }
    None
}
