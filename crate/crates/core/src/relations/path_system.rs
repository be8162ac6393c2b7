use std::collections::BTreeSet;

use super::{Letter, RelationError, RelationKind, RelationReport};
use crate::companion::Companion;
use crate::diagram::Diagram;
use crate::roots::{CompanionTriple, RootVec};
use crate::sqrt_ring::SqrtNum;

/// Edge `i → j` of weight `a` together with directed paths `p_1 … p_r` from
/// `j` to `i`. Only the interior vertices of each path are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathSystem {
    i: usize,
    j: usize,
    a: u128,
    paths: Vec<Vec<usize>>,
}

/// Which interior steps an increasing path may take.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum PathPolicy {
    /// Path-membership index never decreases along the path.
    #[default]
    NondecreasingIndex,
    /// Every step goes to a vertex later in the concatenation `p_1 … p_r`.
    Forward,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncreasingPath {
    pub vertices: Vec<usize>,
    pub weight: u128,
}

impl PathSystem {
    pub fn new(
        g: &Diagram,
        i: usize,
        j: usize,
        paths: Vec<Vec<usize>>,
    ) -> Result<Self, RelationError> {
        let bad = |msg: String| Err(RelationError::InvalidPathSystem(msg));
        let n = g.n();
        if i >= n || j >= n || i == j {
            return bad(format!("bad edge endpoints {} and {}", i + 1, j + 1));
        }
        let Some(a) = g.directed_weight(i, j) else {
            return bad(format!("no edge {} -> {}", i + 1, j + 1));
        };
        if paths.is_empty() {
            return bad("no paths".into());
        }
        let mut seen = BTreeSet::new();
        for (k, p) in paths.iter().enumerate() {
            if p.is_empty() {
                return bad(format!("path {} has no interior vertices", k + 1));
            }
            for &v in p {
                if v >= n || v == i || v == j || !seen.insert(v) {
                    return bad(format!(
                        "vertex {} of path {} is out of range, an endpoint, or shared",
                        v + 1,
                        k + 1
                    ));
                }
            }
            let mut cycle = vec![j];
            cycle.extend_from_slice(p);
            cycle.push(i);
            if !g.is_oriented_induced_cycle(&cycle) {
                return bad(format!(
                    "path {} does not close to an oriented induced cycle",
                    k + 1
                ));
            }
        }
        Ok(Self { i, j, a, paths })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn a(&self) -> u128 {
        self.a
    }

    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    /// `{i, j}` and every interior vertex.
    pub fn vertices(&self) -> Vec<usize> {
        let mut out = vec![self.j];
        out.extend(self.paths.iter().flatten());
        out.push(self.i);
        out
    }

    /// `(k, position in the concatenation)` of an interior vertex.
    fn locate(&self, v: usize) -> Option<(usize, usize)> {
        let mut pos = 0;
        for (k, p) in self.paths.iter().enumerate() {
            if let Some(l) = p.iter().position(|&x| x == v) {
                return Some((k, pos + l));
            }
            pos += p.len();
        }
        None
    }

    /// Interiors of all oriented induced cycles through the edge `i → j`,
    /// each listed from `j`'s successor to `i`'s predecessor.
    pub fn candidate_paths(g: &Diagram, i: usize, j: usize) -> Vec<Vec<usize>> {
        if g.directed_weight(i, j).is_none() {
            return Vec::new();
        }
        g.enumerate_cycles()
            .into_iter()
            .filter(|c| c.oriented && c.contains(i) && c.contains(j))
            .filter_map(|c| {
                let from_j = c.rotated_to(j)?;
                (from_j.last() == Some(&i)).then(|| from_j[1..from_j.len() - 1].to_vec())
            })
            .collect()
    }

    /// Every edge of the induced subdiagram on the system's vertices.
    fn edges(&self, g: &Diagram) -> Vec<(usize, usize)> {
        let vs = self.vertices();
        let mut out = Vec::new();
        for (x, &u) in vs.iter().enumerate() {
            for &v in &vs[x + 1..] {
                if g.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

/// Increasing paths from `j` to `i`.
pub fn enumerate_increasing_paths(
    ps: &PathSystem,
    g: &Diagram,
    policy: PathPolicy,
) -> Result<Vec<IncreasingPath>, RelationError> {
    increasing_paths_from(ps, g, ps.j, policy)
}

/// Increasing paths from `start` (either `j`, `i` or an interior vertex) to
/// `i`. The stationary path is the only one from `i`.
pub(crate) fn increasing_paths_from(
    ps: &PathSystem,
    g: &Diagram,
    start: usize,
    policy: PathPolicy,
) -> Result<Vec<IncreasingPath>, RelationError> {
    let mut out = Vec::new();
    if start == ps.i {
        out.push(IncreasingPath {
            vertices: vec![start],
            weight: 1,
        });
        return Ok(out);
    }
    let mut path = vec![start];
    extend(ps, g, policy, &mut path, 1, &mut out)?;
    Ok(out)
}

fn extend(
    ps: &PathSystem,
    g: &Diagram,
    policy: PathPolicy,
    path: &mut Vec<usize>,
    weight: u128,
    out: &mut Vec<IncreasingPath>,
) -> Result<(), RelationError> {
    let v = *path.last().expect("path is never empty");
    let overflow = || RelationError::PreconditionViolated("path weight exceeds 128 bits".into());
    if v != ps.j {
        if let Some(w) = g.directed_weight(v, ps.i) {
            let mut vertices = path.clone();
            vertices.push(ps.i);
            out.push(IncreasingPath {
                vertices,
                weight: weight.checked_mul(w).ok_or_else(overflow)?,
            });
        }
    }
    let here = ps.locate(v);
    for next in ps.paths.iter().flatten().copied() {
        if path.contains(&next) {
            continue;
        }
        let w = if v == ps.j {
            match g.directed_weight(v, next) {
                Some(w) => w,
                None => continue,
            }
        } else {
            match g.weight(v, next) {
                0 => continue,
                w => w,
            }
        };
        let there = ps.locate(next).expect("interior vertex");
        let allowed = match (here, policy) {
            (None, _) => true,
            (Some((k, _)), PathPolicy::NondecreasingIndex) => there.0 >= k,
            (Some((_, pos)), PathPolicy::Forward) => there.1 > pos,
        };
        if !allowed {
            continue;
        }
        path.push(next);
        extend(
            ps,
            g,
            policy,
            path,
            weight.checked_mul(w).ok_or_else(overflow)?,
            out,
        )?;
        path.pop();
    }
    Ok(())
}

/// Sign changes making `a_ij > 0` and every other edge of the system
/// nonpositive: flip `j` if needed, then sweep each path from `j`, flipping
/// the head of the first positive edge.
pub fn normalize_signs(
    c: &Companion,
    ps: &PathSystem,
) -> Result<(Companion, Vec<i64>), RelationError> {
    let g = c.diagram();
    PathSystem::new(&g, ps.i, ps.j, ps.paths.clone())?;
    let n = c.n();
    let mut signs = vec![1i64; n];
    let mut cur = c.clone();
    let mut flip = |cur: &mut Companion, v: usize| {
        *cur = cur.sign_change(v);
        signs[v] = -signs[v];
    };
    if cur.entry(ps.i, ps.j) < 0 {
        flip(&mut cur, ps.j);
    }
    for p in &ps.paths {
        let mut seq = vec![ps.j];
        seq.extend_from_slice(p);
        seq.push(ps.i);
        for w in seq.windows(2) {
            let (u, v) = (w[0], w[1]);
            if cur.entry(u, v) > 0 {
                if v == ps.i {
                    return Err(RelationError::CannotNormalize);
                }
                flip(&mut cur, v);
            }
        }
    }
    if normalization_defect(&cur, ps, &g).is_some() {
        return Err(RelationError::CannotNormalize);
    }
    Ok((cur, signs))
}

fn normalization_defect(c: &Companion, ps: &PathSystem, g: &Diagram) -> Option<String> {
    if c.entry(ps.i, ps.j) <= 0 {
        return Some(format!("a[{}][{}] must be positive", ps.i + 1, ps.j + 1));
    }
    ps.edges(g)
        .into_iter()
        .filter(|&(u, v)| !(u.min(v) == ps.i.min(ps.j) && u.max(v) == ps.i.max(ps.j)))
        .find(|&(u, v)| c.entry(u, v) > 0)
        .map(|(u, v)| format!("a[{}][{}] must be nonpositive", u + 1, v + 1))
}

/// Relation `(t_j t^(1) … t^(r) t_i t^(-r) … t^(-1))^m = e` with
/// `x = (√a - Σ √w(q))²` over increasing paths `q` from `j` to `i`, where
/// `w(q)` is the product of the edge weights along `q`.
pub fn path_system_relation(
    ps: &PathSystem,
    c: &Companion,
    policy: PathPolicy,
) -> Result<RelationReport, RelationError> {
    let g = c.diagram();
    PathSystem::new(&g, ps.i, ps.j, ps.paths.clone())?;
    if let Some(msg) = normalization_defect(c, ps, &g) {
        return Err(RelationError::NormalizationRequired(msg));
    }
    let sum: SqrtNum = enumerate_increasing_paths(ps, &g, policy)?
        .iter()
        .map(|q| SqrtNum::from_sqrt(q.weight))
        .sum();
    let diff = SqrtNum::from_sqrt(ps.a) - sum;
    let x = (&diff * &diff).as_integer()?;

    let mut word = vec![Letter::plain(ps.j)];
    word.extend(ps.paths.iter().flatten().map(|&v| Letter::plain(v)));
    word.push(Letter::plain(ps.i));
    for p in ps.paths.iter().rev() {
        word.extend(p.iter().rev().map(|&v| Letter::inverse(v)));
    }
    RelationReport::new(RelationKind::PathSystem, word, x)
}

/// One vertex of the coefficient check: the coordinate of
/// `β = t^(1) … t^(r)(β_i)` along `β_u`, and the sum of `√w(q)` over
/// increasing paths from `u` to `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientEntry {
    pub vertex: usize,
    pub coefficient: i64,
    pub path_sum: SqrtNum,
    pub holds: bool,
}

/// Coordinates of `β = t^(1) … t^(r)(β_i)` in the companion basis, checked
/// against `coefficient(β_u) = √(d_i/d_u) · Σ √w(q)` for every vertex `u`
/// (vertices outside the paths must have coefficient zero).
/// The triple's companion must be normalized for `ps`.
pub fn basis_coefficients(
    triple: &CompanionTriple,
    ps: &PathSystem,
    policy: PathPolicy,
) -> Result<Vec<CoefficientEntry>, RelationError> {
    let g = triple.companion.diagram();
    PathSystem::new(&g, ps.i, ps.j, ps.paths.clone())?;
    if let Some(msg) = normalization_defect(&triple.companion, ps, &g) {
        return Err(RelationError::NormalizationRequired(msg));
    }
    let lattice = &triple.lattice;
    let mut beta: RootVec = triple.basis.vector(ps.i).clone();
    for &v in ps.paths.iter().flatten().rev() {
        beta = lattice.reflect(triple.basis.vector(v), &beta)?;
    }
    let coords = triple
        .basis
        .coordinate_matrix()
        .solve(beta.coords())
        .ok_or_else(|| {
            RelationError::PreconditionViolated("companion basis is not a lattice basis".into())
        })?;

    let d = lattice.symmetrizer();
    let on_paths: BTreeSet<usize> = ps.paths.iter().flatten().copied().chain([ps.i]).collect();
    let mut out = Vec::with_capacity(coords.len());
    for (u, &coefficient) in coords.iter().enumerate() {
        let path_sum: SqrtNum = if on_paths.contains(&u) {
            increasing_paths_from(ps, &g, u, policy)?
                .iter()
                .map(|q| SqrtNum::from_sqrt(q.weight))
                .sum()
        } else {
            SqrtNum::zero()
        };
        // coefficient · d_u = √(d_i d_u) · Σ √w(q)
        let lhs = SqrtNum::from_integer(coefficient as i128 * d[u] as i128);
        let rhs = SqrtNum::from_sqrt((d[ps.i] as u128) * (d[u] as u128)) * path_sum.clone();
        out.push(CoefficientEntry {
            vertex: u,
            coefficient,
            path_sum,
            holds: lhs == rhs,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Edge;
    use crate::matrix::SkewMatrix;
    use crate::relations::{cycle_relation, Order};
    use num_bigint::BigInt;

    fn e(tail: usize, head: usize, weight: u128) -> Edge {
        Edge { tail, head, weight }
    }

    // i = 0, j = 1, edge 0 → 1; two paths 1 → 2 → 0 and 1 → 3 → 0
    fn two_paths(cross: Option<Edge>) -> Diagram {
        let mut edges = vec![e(0, 1, 1), e(1, 2, 1), e(2, 0, 1), e(1, 3, 1), e(3, 0, 1)];
        edges.extend(cross);
        Diagram::new(4, edges).unwrap()
    }

    #[test]
    fn validation() {
        let g = two_paths(None);
        assert!(PathSystem::new(&g, 0, 1, vec![vec![2], vec![3]]).is_ok());
        assert!(PathSystem::new(&g, 1, 0, vec![vec![2]]).is_err());
        assert!(PathSystem::new(&g, 0, 1, vec![vec![2], vec![2]]).is_err());
        assert!(PathSystem::new(&g, 0, 1, vec![]).is_err());
        let mut cands = PathSystem::candidate_paths(&g, 0, 1);
        cands.sort();
        assert_eq!(cands, [vec![2], vec![3]]);
    }

    #[test]
    fn increasing_paths_without_cross_edges() {
        let g = two_paths(None);
        let one = PathSystem::new(&g, 0, 1, vec![vec![2]]).unwrap();
        let paths = enumerate_increasing_paths(&one, &g, PathPolicy::default()).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].vertices, [1, 2, 0]);
        let two = PathSystem::new(&g, 0, 1, vec![vec![2], vec![3]]).unwrap();
        assert_eq!(
            enumerate_increasing_paths(&two, &g, PathPolicy::default())
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn increasing_paths_with_cross_edge() {
        let g = two_paths(Some(e(2, 3, 4)));
        let ps = PathSystem::new(&g, 0, 1, vec![vec![2], vec![3]]).unwrap();
        let paths: Vec<_> = enumerate_increasing_paths(&ps, &g, PathPolicy::default())
            .unwrap()
            .into_iter()
            .map(|q| (q.vertices, q.weight))
            .collect();
        assert!(paths.contains(&(vec![1, 2, 3, 0], 4)));
        assert!(!paths.iter().any(|(v, _)| v == &[1, 3, 2, 0]));
        assert_eq!(paths.len(), 3);
    }

    #[test]
    fn single_path_agrees_with_cycle() {
        let g = Diagram::new(3, [e(0, 1, 1), e(1, 2, 1), e(2, 0, 1)]).unwrap();
        let m = SkewMatrix::new(vec![vec![0, -1, 1], vec![1, 0, -1], vec![-1, 1, 0]]).unwrap();
        assert_eq!(crate::diagram::diagram_of(&m), g);
        let c = Companion::new(vec![vec![2, 1, -1], vec![1, 2, -1], vec![-1, -1, 2]], m).unwrap();
        let ps = PathSystem::new(&g, 0, 1, vec![vec![2]]).unwrap();
        let r = path_system_relation(&ps, &c, PathPolicy::default()).unwrap();
        assert_eq!((r.x.clone(), r.m), (BigInt::from(0), Order::Finite(2)));
        let cyc = cycle_relation(&g, &[1, 2, 0], 1).unwrap();
        assert_eq!(cyc.x, r.x);
        assert_eq!(
            serde_json::to_value(&r).unwrap()["word"],
            serde_json::json!([2, 3, 1, -3])
        );
    }

    #[test]
    fn normalization_sweep() {
        let m = SkewMatrix::new(vec![vec![0, -1, 1], vec![1, 0, -1], vec![-1, 1, 0]]).unwrap();
        let ps = PathSystem::new(&crate::diagram::diagram_of(&m), 0, 1, vec![vec![2]]).unwrap();
        // admissible: one positive entry, on {1, 2}
        let c = Companion::new(
            vec![vec![2, -1, -1], vec![-1, 2, 1], vec![-1, 1, 2]],
            m.clone(),
        )
        .unwrap();
        assert!(c.is_admissible());
        let (norm, signs) = normalize_signs(&c, &ps).unwrap();
        assert!(norm.entry(0, 1) > 0 && norm.entry(1, 2) < 0 && norm.entry(2, 0) < 0);
        assert_eq!(c.apply_signs(&signs), norm);
        let (again, id) = normalize_signs(&norm, &ps).unwrap();
        assert_eq!((again, id), (norm, vec![1, 1, 1]));
        // Cartan-like signs are not admissible on an oriented triangle
        let bad =
            Companion::new(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]], m).unwrap();
        assert_eq!(
            normalize_signs(&bad, &ps),
            Err(RelationError::CannotNormalize)
        );
        assert!(matches!(
            path_system_relation(&ps, &bad, PathPolicy::default()),
            Err(RelationError::NormalizationRequired(_))
        ));
    }
}
