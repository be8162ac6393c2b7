//! Skew-symmetrizable integer matrices and their mutation.
//!
//! Vertices are 0-based everywhere inside the crate. The JSON documents in
//! [`crate::wire`] and the CLI use 1-based vertex labels.

use std::collections::VecDeque;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("matrix must have at least one row")]
    Empty,
    #[error("diagonal entry at vertex {} is nonzero", .0 + 1)]
    NonZeroDiagonal(usize),
    #[error("entries ({},{}) and ({},{}) do not have opposite signs", .0 + 1, .1 + 1, .1 + 1, .0 + 1)]
    SignMismatch(usize, usize),
    #[error("matrix is not skew-symmetrizable: ratio constraints conflict at ({},{})", .0 + 1, .1 + 1)]
    NotSkewSymmetrizable(usize, usize),
    #[error("symmetrizer has length {got}, expected {n}")]
    SymmetrizerLength { got: usize, n: usize },
    #[error("symmetrizer must be positive and satisfy d_i b_ij = -d_j b_ji")]
    BadSymmetrizer,
    #[error("vertex {k} out of range 1..={n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("integer overflow while mutating at vertex {}", .0 + 1)]
    Overflow(usize),
}

/// Integer `n×n` matrix `B` with a positive diagonal symmetrizer `d` such
/// that `diag(d)·B` is skew-symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "crate::wire::MatrixDoc", into = "crate::wire::MatrixDoc")]
pub struct SkewMatrix {
    b: Vec<Vec<i64>>,
    d: Vec<i64>,
}

fn check_shape(b: &[Vec<i64>]) -> Result<usize, MatrixError> {
    let n = b.len();
    if n == 0 {
        return Err(MatrixError::Empty);
    }
    for (row, r) in b.iter().enumerate() {
        if r.len() != n {
            return Err(MatrixError::NotSquare {
                row,
                len: r.len(),
                n,
            });
        }
    }
    for i in 0..n {
        if b[i][i] != 0 {
            return Err(MatrixError::NonZeroDiagonal(i));
        }
        for j in (i + 1)..n {
            let (x, y) = (b[i][j], b[j][i]);
            if x.signum() != -y.signum() {
                return Err(MatrixError::SignMismatch(i, j));
            }
        }
    }
    Ok(n)
}

/// Componentwise-minimal positive symmetrizer of `b`.
///
/// Solves `d_i·b_ij = -d_j·b_ji` by propagating ratios along a spanning
/// forest of the support graph, checks every remaining edge, then clears
/// denominators and common factors per connected component.
pub fn compute_symmetrizer(b: &[Vec<i64>]) -> Result<Vec<i64>, MatrixError> {
    let n = check_shape(b)?;
    let mut ratio: Vec<Option<Ratio<i128>>> = vec![None; n];
    let mut component = vec![usize::MAX; n];
    let mut n_components = 0;
    for root in 0..n {
        if ratio[root].is_some() {
            continue;
        }
        ratio[root] = Some(Ratio::from_integer(1));
        component[root] = n_components;
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let di = ratio[i].expect("visited");
            for j in 0..n {
                if b[i][j] == 0 {
                    continue;
                }
                // d_j = d_i · b_ij / (-b_ji)
                let dj = di * Ratio::new(b[i][j] as i128, -(b[j][i] as i128));
                match ratio[j] {
                    None => {
                        ratio[j] = Some(dj);
                        component[j] = n_components;
                        queue.push_back(j);
                    }
                    Some(existing) if existing != dj => {
                        return Err(MatrixError::NotSkewSymmetrizable(i, j));
                    }
                    Some(_) => {}
                }
            }
        }
        n_components += 1;
    }
    let ratio: Vec<Ratio<i128>> = ratio.into_iter().map(|r| r.expect("all visited")).collect();
    let mut d = vec![0i64; n];
    for c in 0..n_components {
        let members: Vec<usize> = (0..n).filter(|&v| component[v] == c).collect();
        let lcm = members
            .iter()
            .fold(1i128, |acc, &v| acc.lcm(ratio[v].denom()));
        let scaled: Vec<i128> = members
            .iter()
            .map(|&v| (ratio[v] * Ratio::from_integer(lcm)).to_integer())
            .collect();
        let g = scaled.iter().fold(0i128, |acc, x| acc.gcd(x));
        for (&v, s) in members.iter().zip(scaled) {
            d[v] = i64::try_from(s / g).map_err(|_| MatrixError::BadSymmetrizer)?;
        }
    }
    Ok(d)
}

impl SkewMatrix {
    /// Validates `b` and computes its canonical symmetrizer.
    pub fn new(b: Vec<Vec<i64>>) -> Result<Self, MatrixError> {
        let d = compute_symmetrizer(&b)?;
        Ok(Self { b, d })
    }

    /// Validates a caller-supplied symmetrizer. The stored symmetrizer is
    /// always the canonical one, which differs from `d` at most by a
    /// positive factor per connected component.
    pub fn with_symmetrizer(b: Vec<Vec<i64>>, d: &[i64]) -> Result<Self, MatrixError> {
        let m = Self::new(b)?;
        if d.len() != m.n() {
            return Err(MatrixError::SymmetrizerLength {
                got: d.len(),
                n: m.n(),
            });
        }
        if d.iter().any(|&x| x <= 0) {
            return Err(MatrixError::BadSymmetrizer);
        }
        for i in 0..m.n() {
            for j in 0..m.n() {
                let lhs = d[i] as i128 * m.b[i][j] as i128;
                let rhs = -(d[j] as i128) * m.b[j][i] as i128;
                if lhs != rhs {
                    return Err(MatrixError::BadSymmetrizer);
                }
            }
        }
        Ok(m)
    }

    pub fn zero(n: usize) -> Self {
        Self {
            b: vec![vec![0; n]; n],
            d: vec![1; n],
        }
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.d.iter().all(|&x| x == 1)
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.b.iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// Edge weight `|b_ij·b_ji|` between `i` and `j` (zero when unconnected).
    pub fn weight(&self, i: usize, j: usize) -> u128 {
        (self.b[i][j] as i128 * self.b[j][i] as i128).unsigned_abs()
    }

    pub fn check_vertex(&self, k: usize) -> Result<(), MatrixError> {
        if k < self.n() {
            Ok(())
        } else {
            Err(MatrixError::IndexOutOfRange {
                k: k + 1,
                n: self.n(),
            })
        }
    }

    /// Matrix mutation at `k`:
    /// `b'_ij = -b_ij` if `k ∈ {i, j}`, else `b_ij + sgn(b_ik)·[b_ik·b_kj]₊`.
    pub fn mutate(&self, k: usize) -> Result<SkewMatrix, MatrixError> {
        self.check_vertex(k)?;
        let n = self.n();
        let mut b = self.b.clone();
        for i in 0..n {
            for j in 0..n {
                if i == k || j == k {
                    b[i][j] = -self.b[i][j];
                    continue;
                }
                let bik = self.b[i][k] as i128;
                let prod = bik * self.b[k][j] as i128;
                if prod > 0 {
                    let v = self.b[i][j] as i128 + bik.signum() * prod;
                    b[i][j] = i64::try_from(v).map_err(|_| MatrixError::Overflow(k))?;
                }
            }
        }
        Ok(SkewMatrix {
            b,
            d: self.d.clone(),
        })
    }

    pub fn mutate_along(&self, seq: &MutationSequence) -> Result<SkewMatrix, MatrixError> {
        seq.iter().try_fold(self.clone(), |m, k| m.mutate(k))
    }
}

impl fmt::Display for SkewMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .b
            .iter()
            .flatten()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        for row in &self.b {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        write!(f, "d = {:?}", self.d)
    }
}

/// Ordered list of mutation vertices, stored 0-based.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MutationSequence(Vec<usize>);

impl MutationSequence {
    pub fn new(vertices: Vec<usize>) -> Self {
        Self(vertices)
    }

    /// Builds a sequence from 1-based labels.
    pub fn from_one_based(labels: &[usize]) -> Result<Self, MatrixError> {
        labels
            .iter()
            .map(|&l| {
                l.checked_sub(1)
                    .ok_or(MatrixError::IndexOutOfRange { k: 0, n: 0 })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|k| k + 1).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn validate(&self, n: usize) -> Result<(), MatrixError> {
        match self.0.iter().find(|&&k| k >= n) {
            Some(&k) => Err(MatrixError::IndexOutOfRange { k: k + 1, n }),
            None => Ok(()),
        }
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for MutationSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.0.iter().map(|k| (k + 1).to_string()).collect();
        write!(f, "{}", labels.join(","))
    }
}
