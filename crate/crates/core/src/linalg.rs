//! Small dense integer matrices acting on column vectors.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Square `i64` matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Self { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self {
            n,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<i64>]) -> Self {
        let n = columns.len();
        let mut data = vec![0; n * n];
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), n, "matrix must be square");
            for (i, &x) in col.iter().enumerate() {
                data[i * n + j] = x;
            }
        }
        Self { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data
            .chunks(self.n.max(1))
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        Self { n, data }
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| self.data[i * n + j] == i64::from(i == j)))
    }

    /// Product `self · rhs`, or `None` on overflow.
    pub fn checked_mul(&self, rhs: &IntMatrix) -> Option<IntMatrix> {
        let n = self.n;
        debug_assert_eq!(n, rhs.n);
        let mut data = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.data[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let y = rhs.data[k * n + j];
                    data[i * n + j] = data[i * n + j].checked_add(x.checked_mul(y)?)?;
                }
            }
        }
        Some(IntMatrix { n, data })
    }

    pub fn apply(&self, v: &[i64]) -> Option<Vec<i64>> {
        let n = self.n;
        (0..n)
            .map(|i| {
                (0..n).try_fold(0i64, |acc, j| {
                    acc.checked_add(self.data[i * n + j].checked_mul(v[j])?)
                })
            })
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = self
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        let mut sign = 1;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        &m[n - 1][n - 1] * sign
    }

    /// Exact integer solution of `self · x = rhs`, if the matrix is
    /// invertible and the solution integral.
    pub fn solve(&self, rhs: &[i64]) -> Option<Vec<i64>> {
        let n = self.n;
        if rhs.len() != n {
            return None;
        }
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..=n)
                    .map(|j| {
                        let x = if j < n { self.get(i, j) } else { rhs[i] };
                        BigRational::from_integer(BigInt::from(x))
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, pivot);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..=n {
                        let delta = &f * &m[col][c];
                        m[r][c] -= delta;
                    }
                }
            }
        }
        m.iter()
            .map(|row| {
                let x = &row[n];
                if x.is_integer() {
                    x.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn to_big(&self) -> BigMatrix {
        BigMatrix {
            n: self.n,
            data: self.data.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>4}")).collect();
            writeln!(f, "[{}]", cells.join(""))?;
        }
        Ok(())
    }
}

/// Square matrix with arbitrary-precision entries, for powers whose
/// entries may grow without bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl BigMatrix {
    pub fn identity(n: usize) -> Self {
        IntMatrix::identity(n).to_big()
    }

    pub fn mul(&self, rhs: &BigMatrix) -> BigMatrix {
        let n = self.n;
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let x = &self.data[i * n + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += x * &rhs.data[k * n + j];
                }
            }
        }
        BigMatrix { n, data }
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let want = if i == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                };
                self.data[i * n + j] == want
            })
        })
    }

    /// Largest absolute entry, saturating at `u64::MAX`.
    pub fn max_abs(&self) -> u64 {
        self.data
            .iter()
            .map(|x| x.magnitude().to_u64().unwrap_or(u64::MAX))
            .max()
            .unwrap_or(0)
    }
}
