//! Root lattice of an acyclic seed, reflections, and companion bases.
//!
//! Roots are integer coordinate vectors in the basis of simple roots. The
//! invariant form is `(α_i, α_j) = d_i·a0_ij` where `a0` is the generalized
//! Cartan matrix of the seed, and the pairing is
//! `<u, v^∨> = 2(v, u)/(v, v)`.

use std::fmt;
use std::ops::{Add, Neg};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::companion::{Companion, CompanionError, EpsPolicy, Sign};
use crate::diagram::Diagram;
use crate::linalg::IntMatrix;
use crate::matrix::{MatrixError, MutationSequence, SkewMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("root has zero norm")]
    ZeroNorm,
    #[error("pairing {num}/{den} is not an integer")]
    NonIntegral { num: i128, den: i128 },
    #[error("vector has length {got}, lattice has rank {n}")]
    Dimension { got: usize, n: usize },
    #[error("integer overflow in root arithmetic")]
    Overflow,
    #[error("seed diagram is not acyclic")]
    SeedNotAcyclic,
    #[error("basis Gram entry ({}, {}) is {got}, companion has {expected}", .i + 1, .j + 1)]
    GramMismatch {
        i: usize,
        j: usize,
        expected: i64,
        got: i64,
    },
    #[error("basis vector {} is not a real root of the expected length", .0 + 1)]
    NotReal(usize),
    #[error(transparent)]
    Companion(#[from] CompanionError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Integer coordinates in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVec(pub Vec<i64>);

impl RootVec {
    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// All coordinates nonnegative or all nonpositive.
    pub fn is_sign_coherent(&self) -> bool {
        self.0.iter().all(|&x| x >= 0) || self.0.iter().all(|&x| x <= 0)
    }

    /// `self + factor·other`, checked.
    pub fn add_scaled(&self, factor: i64, other: &RootVec) -> Result<RootVec, RootError> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| {
                factor
                    .checked_mul(b)
                    .and_then(|fb| a.checked_add(fb))
                    .ok_or(RootError::Overflow)
            })
            .collect::<Result<Vec<_>, _>>()
            .map(RootVec)
    }
}

impl Neg for &RootVec {
    type Output = RootVec;
    fn neg(self) -> RootVec {
        RootVec(self.0.iter().map(|x| -x).collect())
    }
}

impl Add for &RootVec {
    type Output = RootVec;
    fn add(self, rhs: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Free function form of [`RootVec::is_sign_coherent`].
pub fn is_sign_coherent(v: &RootVec) -> bool {
    v.is_sign_coherent()
}

/// Root lattice `ℤⁿ` with the invariant symmetric form of a symmetrizable
/// generalized Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "crate::wire::LatticeDoc", into = "crate::wire::LatticeDoc")]
pub struct RootLattice {
    a0: Vec<Vec<i64>>,
    d: Vec<i64>,
    gram: Vec<Vec<i64>>,
}

impl RootLattice {
    /// Lattice of the generalized Cartan matrix of an acyclic seed.
    pub fn from_seed(m0: &SkewMatrix) -> Result<Self, RootError> {
        if !Diagram::of(m0).is_acyclic() {
            return Err(RootError::SeedNotAcyclic);
        }
        let a0 = Companion::generalized_cartan(m0).rows().to_vec();
        Ok(Self::from_cartan(a0, m0.symmetrizer().to_vec()))
    }

    /// Lattice for a symmetrizable matrix `a0` with `d_i·a0_ij` symmetric.
    pub fn from_cartan(a0: Vec<Vec<i64>>, d: Vec<i64>) -> Self {
        let n = a0.len();
        let gram: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| d[i] * a0[i][j]).collect())
            .collect();
        debug_assert!((0..n).all(|i| (0..n).all(|j| gram[i][j] == gram[j][i])));
        Self { a0, d, gram }
    }

    pub fn n(&self) -> usize {
        self.a0.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.a0
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    fn check(&self, v: &RootVec) -> Result<(), RootError> {
        if v.len() == self.n() {
            Ok(())
        } else {
            Err(RootError::Dimension {
                got: v.len(),
                n: self.n(),
            })
        }
    }

    /// `(u, v) = uᵀ·gram·v`.
    pub fn bilinear(&self, u: &RootVec, v: &RootVec) -> i128 {
        let n = self.n();
        let mut acc = 0i128;
        for i in 0..n {
            if u.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                acc += u.0[i] as i128 * self.gram[i][j] as i128 * v.0[j] as i128;
            }
        }
        acc
    }

    /// `<u, v^∨> = 2(v, u)/(v, v)`, rejecting non-integral values.
    pub fn gram_pairing(&self, u: &RootVec, v: &RootVec) -> Result<i64, RootError> {
        self.check(u)?;
        self.check(v)?;
        let den = self.bilinear(v, v);
        if den == 0 {
            return Err(RootError::ZeroNorm);
        }
        let num = 2 * self.bilinear(v, u);
        if num % den != 0 {
            return Err(RootError::NonIntegral { num, den });
        }
        i64::try_from(num / den).map_err(|_| RootError::Overflow)
    }

    /// Reflection `s_β(v) = v - <v, β^∨>·β`.
    pub fn reflect(&self, beta: &RootVec, v: &RootVec) -> Result<RootVec, RootError> {
        let c = self.gram_pairing(v, beta)?;
        v.add_scaled(-c, beta)
    }

    /// Matrix of `s_β` in the simple-root basis, acting on column vectors.
    pub fn reflection_matrix(&self, beta: &RootVec) -> Result<IntMatrix, RootError> {
        let n = self.n();
        let columns = (0..n)
            .map(|j| self.reflect(beta, &RootVec::simple(n, j)).map(|r| r.0))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntMatrix::from_columns(&columns))
    }

    /// The basis of simple roots, which realizes `a0`.
    pub fn simple_basis(&self) -> CompanionBasis {
        let n = self.n();
        CompanionBasis {
            vectors: (0..n).map(|i| RootVec::simple(n, i)).collect(),
        }
    }
}

/// Ordered basis `β_1, …, β_n` of real roots whose pairing matrix
/// `a_ij = <β_j, β_i^∨>` is a given companion.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "crate::wire::BasisDoc", into = "crate::wire::BasisDoc")]
pub struct CompanionBasis {
    vectors: Vec<RootVec>,
}

impl CompanionBasis {
    pub fn new(vectors: Vec<RootVec>) -> Self {
        Self { vectors }
    }

    pub fn vectors(&self) -> &[RootVec] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &RootVec {
        &self.vectors[i]
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    /// Coordinate matrix with `β_j` as column `j`.
    pub fn coordinate_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<i64>> = self.vectors.iter().map(|v| v.0.clone()).collect();
        IntMatrix::from_columns(&cols)
    }

    pub fn determinant(&self) -> BigInt {
        self.coordinate_matrix().determinant()
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    /// `a_ij = <β_j, β_i^∨>`.
    pub fn pairing_matrix(&self, lattice: &RootLattice) -> Result<Vec<Vec<i64>>, RootError> {
        let n = self.n();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| lattice.gram_pairing(&self.vectors[j], &self.vectors[i]))
                    .collect()
            })
            .collect()
    }

    /// Checks the Gram condition against `c` and that `(β_i, β_i) = 2·d_i`.
    pub fn check_realizes(&self, lattice: &RootLattice, c: &Companion) -> Result<(), RootError> {
        let d = c.matrix().symmetrizer();
        for (i, beta) in self.vectors.iter().enumerate() {
            if lattice.bilinear(beta, beta) != 2 * d[i] as i128 || !beta.is_sign_coherent() {
                return Err(RootError::NotReal(i));
            }
        }
        let gram = self.pairing_matrix(lattice)?;
        for (i, row) in gram.iter().enumerate() {
            for (j, &got) in row.iter().enumerate() {
                let expected = c.entry(i, j);
                if got != expected {
                    return Err(RootError::GramMismatch {
                        i,
                        j,
                        expected,
                        got,
                    });
                }
            }
        }
        Ok(())
    }

    /// `β_k ↦ -β_k`, the basis counterpart of a companion sign change.
    pub fn sign_change(&self, k: usize) -> CompanionBasis {
        let mut vectors = self.vectors.clone();
        vectors[k] = -&vectors[k];
        Self { vectors }
    }

    pub fn apply_signs(&self, signs: &[i64]) -> CompanionBasis {
        let vectors = self
            .vectors
            .iter()
            .zip(signs)
            .map(|(v, &s)| if s < 0 { -v } else { v.clone() })
            .collect();
        Self { vectors }
    }

    /// Raw basis mutation without the Gram check:
    /// `β'_k = -β_k`; `β'_i = β_i - a_ki·β_k` when `ε·b_ki > 0`;
    /// `β'_i = β_i` otherwise.
    fn mutated(&self, c: &Companion, k: usize, eps: Sign) -> Result<CompanionBasis, RootError> {
        let b = c.matrix();
        let beta_k = &self.vectors[k];
        let vectors = self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, beta)| {
                if i == k {
                    Ok(-beta_k)
                } else if eps.value() * b.entry(k, i) > 0 {
                    beta.add_scaled(-c.entry(k, i), beta_k)
                } else {
                    Ok(beta.clone())
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { vectors })
    }
}

/// Basis mutation paired with ε-mutation of the realized companion `c`.
/// The result is checked to realize `c.mutate(k, eps)`.
pub fn mutate_basis(
    lattice: &RootLattice,
    basis: &CompanionBasis,
    c: &Companion,
    k: usize,
    eps: Sign,
) -> Result<CompanionBasis, RootError> {
    Ok(
        CompanionTriple::from_parts(lattice.clone(), c.clone(), basis.clone())
            .mutate(k, eps)?
            .basis,
    )
}

/// Matrix, companion and companion basis threaded together through
/// mutations, with the lattice of the acyclic seed they started from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "crate::wire::TripleDoc", into = "crate::wire::TripleDoc")]
pub struct CompanionTriple {
    pub lattice: RootLattice,
    pub companion: Companion,
    pub basis: CompanionBasis,
}

impl CompanionTriple {
    /// Seed triple: generalized Cartan companion and simple roots.
    pub fn seed(m0: &SkewMatrix) -> Result<Self, RootError> {
        let lattice = RootLattice::from_seed(m0)?;
        let basis = lattice.simple_basis();
        Ok(Self {
            lattice,
            companion: Companion::generalized_cartan(m0),
            basis,
        })
    }

    pub fn from_parts(lattice: RootLattice, companion: Companion, basis: CompanionBasis) -> Self {
        Self {
            lattice,
            companion,
            basis,
        }
    }

    pub fn matrix(&self) -> &SkewMatrix {
        self.companion.matrix()
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn mutate(&self, k: usize, eps: Sign) -> Result<CompanionTriple, RootError> {
        let companion = self.companion.mutate(k, eps, false)?;
        let basis = self.basis.mutated(&self.companion, k, eps)?;
        basis.check_realizes(&self.lattice, &companion)?;
        Ok(Self {
            lattice: self.lattice.clone(),
            companion,
            basis,
        })
    }

    /// Simultaneous sign change at `k` of the companion and `β_k`.
    pub fn sign_change(&self, k: usize) -> CompanionTriple {
        Self {
            lattice: self.lattice.clone(),
            companion: self.companion.sign_change(k),
            basis: self.basis.sign_change(k),
        }
    }

    pub fn apply_signs(&self, signs: &[i64]) -> CompanionTriple {
        Self {
            lattice: self.lattice.clone(),
            companion: self.companion.apply_signs(signs),
            basis: self.basis.apply_signs(signs),
        }
    }

    /// Reflection matrices `t_i = s_{β_i}` for the whole basis.
    pub fn reflections(&self) -> Result<Vec<IntMatrix>, RootError> {
        self.basis
            .vectors()
            .iter()
            .map(|b| self.lattice.reflection_matrix(b))
            .collect()
    }
}

/// Threads the seed triple of `m0` through `seq` with the given ε policy.
pub fn companion_basis_for(
    m0: &SkewMatrix,
    seq: &MutationSequence,
    policy: &EpsPolicy,
) -> Result<CompanionTriple, RootError> {
    seq.validate(m0.n())?;
    let eps = policy.resolve(seq.len())?;
    seq.iter()
        .zip(eps)
        .try_fold(CompanionTriple::seed(m0)?, |t, (k, e)| t.mutate(k, e))
}
