use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{pair_order, Order, RelationError};
use crate::diagram::Diagram;
use crate::matrix::SkewMatrix;
use crate::roots::{RootError, RootLattice, RootVec};

/// Order of `s_u s_v` read off the geometric representation, alongside the
/// order computed in the root lattice itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoInfinity {
    /// `B(u, v) = 2k` in the geometric form.
    pub k: BigInt,
    pub order: Order,
    pub lattice_x: BigInt,
    pub lattice_order: Order,
}

/// Writes a real root as `s_{w_1} … s_{w_s}(α_k)` by descent: while the
/// root is not simple, reflect in a simple root it pairs positively with.
fn descend(lattice: &RootLattice, root: &RootVec) -> Result<(Vec<usize>, usize), RelationError> {
    let n = lattice.n();
    let not_real = || RelationError::Root(RootError::NotReal(0));
    let mut beta = if root.coords().iter().all(|&x| x <= 0) {
        -root
    } else {
        root.clone()
    };
    let mut word = Vec::new();
    loop {
        if beta.coords().iter().any(|&x| x < 0) || beta.is_zero() {
            return Err(not_real());
        }
        if let Some(k) = (0..n).find(|&k| beta == RootVec::simple(n, k)) {
            return Ok((word, k));
        }
        let i = (0..n)
            .find(|&i| lattice.bilinear(&beta, &RootVec::simple(n, i)) > 0)
            .ok_or_else(not_real)?;
        beta = lattice.reflect(&RootVec::simple(n, i), &beta)?;
        word.push(i);
    }
}

/// Order of `s_u s_v` when every pair of simple reflections has order 2
/// or ∞. The roots are carried to the geometric representation with
/// `B(α_i, α_j) ∈ {0, -2}`; the order is ∞ iff `B(u, v) ≠ 0`.
pub fn two_infinity_order(
    lattice: &RootLattice,
    u: &RootVec,
    v: &RootVec,
) -> Result<TwoInfinity, RelationError> {
    let n = lattice.n();
    let a0 = lattice.cartan();
    for i in 0..n {
        for j in (i + 1)..n {
            let x = a0[i][j] * a0[j][i];
            if (1..4).contains(&x) {
                return Err(RelationError::PreconditionViolated(format!(
                    "vertices {} and {} have m = {}",
                    i + 1,
                    j + 1,
                    super::order_from_x(&BigInt::from(x))?
                )));
            }
        }
    }
    if u == v || *u == -v {
        return Err(RelationError::PreconditionViolated("u = ±v".into()));
    }

    let form = |x: &[BigInt], y: &[BigInt]| -> BigInt {
        let mut s = BigInt::zero();
        for i in 0..n {
            for j in 0..n {
                let b = if i == j {
                    2
                } else if a0[i][j] != 0 {
                    -2
                } else {
                    0
                };
                if b != 0 {
                    s += &x[i] * &y[j] * b;
                }
            }
        }
        s
    };
    let geometric = |root: &RootVec| -> Result<Vec<BigInt>, RelationError> {
        let (word, k) = descend(lattice, root)?;
        let mut x: Vec<BigInt> = (0..n).map(|t| BigInt::from((t == k) as i64)).collect();
        for &i in word.iter().rev() {
            let e: Vec<BigInt> = (0..n).map(|t| BigInt::from((t == i) as i64)).collect();
            let c = form(&x, &e);
            x[i] -= c;
        }
        Ok(x)
    };
    let (gu, gv) = (geometric(u)?, geometric(v)?);
    let b = form(&gu, &gv);
    let k: BigInt = &b / 2;
    let order = if k.is_zero() {
        Order::Finite(2)
    } else {
        Order::Infinite
    };
    let (lattice_x, lattice_order) = pair_order(lattice, u, v)?;
    Ok(TwoInfinity {
        k: k.abs(),
        order,
        lattice_x,
        lattice_order,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkOptions {
    pub steps: usize,
    pub seed: u64,
    /// Mutations producing an entry above this are refused; the walk steps
    /// back instead.
    pub entry_cap: i64,
}

impl Default for WalkOptions {
    fn default() -> Self {
        Self {
            steps: 10_000,
            seed: 0,
            entry_cap: 1_000_000_000_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkViolation {
    pub step: usize,
    pub vertex: usize,
    pub tail: usize,
    pub head: usize,
    pub weight: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkReport {
    pub steps: usize,
    /// Steps reaching a new matrix.
    pub applied: usize,
    /// Steps that undid the previous mutation because the proposed one hit
    /// the entry cap.
    pub retreats: usize,
    /// Proposals refused at the entry cap.
    pub capped: usize,
    pub min_weight: Option<u128>,
    pub max_entry: i64,
    pub violations: Vec<WalkViolation>,
}

impl WalkReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Random mutation walk from an acyclic seed whose edge weights are all at
/// least 4, recording every edge weight below 4 that appears.
///
/// Each step proposes a vertex other than the one just mutated. If the
/// result would exceed the entry cap, the walk retreats one step along its
/// path instead, so entries stay bounded and every step moves.
pub fn check_weight_ge4_walk(
    m0: &SkewMatrix,
    options: WalkOptions,
) -> Result<WalkReport, RelationError> {
    let g0 = Diagram::of(m0);
    if !g0.is_acyclic() {
        return Err(RelationError::PreconditionViolated(
            "seed diagram is not acyclic".into(),
        ));
    }
    if g0.edges().any(|e| e.weight < 4) {
        return Err(RelationError::PreconditionViolated(
            "seed has an edge of weight below 4".into(),
        ));
    }
    let n = m0.n();
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut report = WalkReport {
        steps: options.steps,
        applied: 0,
        retreats: 0,
        capped: 0,
        min_weight: g0.min_weight(),
        max_entry: m0.max_abs_entry(),
        violations: Vec::new(),
    };
    if n < 2 {
        return Ok(report);
    }
    // path[i] = (vertex mutated to reach matrices[i + 1])
    let mut matrices = vec![m0.clone()];
    let mut path: Vec<usize> = Vec::new();
    for step in 0..options.steps {
        let last = path.last().copied();
        let k = loop {
            let k = rng.gen_range(0..n);
            if Some(k) != last {
                break k;
            }
        };
        let current = matrices.last().expect("walk keeps its seed");
        let next = match current.mutate(k) {
            Ok(next) if next.max_abs_entry() <= options.entry_cap => next,
            _ => {
                report.capped += 1;
                if path.pop().is_some() {
                    matrices.pop();
                    report.retreats += 1;
                }
                continue;
            }
        };
        let g = Diagram::of(&next);
        for e in g.edges() {
            if e.weight < 4 {
                report.violations.push(WalkViolation {
                    step,
                    vertex: k,
                    tail: e.tail,
                    head: e.head,
                    weight: e.weight,
                });
            }
        }
        report.min_weight = match (report.min_weight, g.min_weight()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        report.max_entry = report.max_entry.max(next.max_abs_entry());
        report.applied += 1;
        path.push(k);
        matrices.push(next);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(rows: Vec<Vec<i64>>) -> RootLattice {
        RootLattice::from_seed(&SkewMatrix::new(rows).unwrap()).unwrap()
    }

    #[test]
    fn simple_pairs() {
        let l = lattice(vec![vec![0, 2, 0], vec![-2, 0, 0], vec![0, 0, 0]]);
        let e = |i| RootVec::simple(3, i);
        let r = two_infinity_order(&l, &e(0), &e(1)).unwrap();
        assert_eq!((r.k.clone(), r.order), (BigInt::from(1), Order::Infinite));
        assert_eq!(r.lattice_order, Order::Infinite);
        let r = two_infinity_order(&l, &e(0), &e(2)).unwrap();
        assert_eq!(r.order, Order::Finite(2));
        assert_eq!(r.lattice_order, Order::Finite(2));
    }

    #[test]
    fn reflected_root() {
        // u = s_2(α_1) = α_1 + 2α_2 in the weight-4 lattice: B(u, α_2) = 2
        let l = lattice(vec![vec![0, 2], vec![-2, 0]]);
        let u = l
            .reflect(&RootVec::simple(2, 1), &RootVec::simple(2, 0))
            .unwrap();
        assert_eq!(u, RootVec(vec![1, 2]));
        let r = two_infinity_order(&l, &u, &RootVec::simple(2, 1)).unwrap();
        assert_eq!((r.k.clone(), r.order), (BigInt::from(1), Order::Infinite));
    }

    #[test]
    fn precondition() {
        let l = lattice(vec![vec![0, 1], vec![-1, 0]]);
        assert!(matches!(
            two_infinity_order(&l, &RootVec::simple(2, 0), &RootVec::simple(2, 1)),
            Err(RelationError::PreconditionViolated(_))
        ));
        let l = lattice(vec![vec![0, 2], vec![-2, 0]]);
        let e = RootVec::simple(2, 0);
        assert!(two_infinity_order(&l, &e, &-&e).is_err());
    }

    #[test]
    fn rank_two_walk() {
        let m = SkewMatrix::new(vec![vec![0, 2], vec![-2, 0]]).unwrap();
        let r = check_weight_ge4_walk(
            &m,
            WalkOptions {
                steps: 1000,
                ..WalkOptions::default()
            },
        )
        .unwrap();
        assert_eq!(r.min_weight, Some(4));
        assert!(r.ok());
        assert_eq!(r.applied, 1000);
    }

    #[test]
    fn path_mutation_weight() {
        let m = SkewMatrix::new(vec![vec![0, 2, 0], vec![-2, 0, 2], vec![0, -2, 0]]).unwrap();
        let g = Diagram::of(&m.mutate(1).unwrap());
        assert_eq!(g.weight(0, 2), 16);
    }

    #[test]
    fn walk_rejects_small_weights() {
        let m = SkewMatrix::new(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        assert!(check_weight_ge4_walk(&m, WalkOptions::default()).is_err());
    }
}
