//! Exact arithmetic in the ring of integer combinations of square roots.
//!
//! A [`SqrtNum`] is a finite sum `c_1·√s_1 + … + c_k·√s_k` with every `s`
//! square-free and every `c` a nonzero integer. The rational part is stored
//! under the key `s = 1`. The ring is closed under `+`, `-` and `*` since
//! `√a·√b = g·√(ab/g²)` with `g² ` the largest square dividing `ab`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SqrtError {
    #[error("value is not a rational integer: term {coeff}·√{sqfree}")]
    NotRational { sqfree: u128, coeff: BigInt },
    #[error("value has more than one square-free class: {0}")]
    MixedClasses(SqrtNum),
}

/// Splits `w` into `(c, s)` with `w = c²·s` and `s` square-free.
///
/// Trial division up to `√w`; fine for the weights this crate handles
/// (well below 10¹²). `w = 0` gives `(0, 1)`.
pub fn square_free_decompose(w: u128) -> (u128, u128) {
    if w == 0 {
        return (0, 1);
    }
    let mut rest = w;
    let mut square_root = 1u128;
    let mut sqfree = 1u128;
    let mut p = 2u128;
    while p * p <= rest {
        let mut exp = 0u32;
        while rest.is_multiple_of(p) {
            rest /= p;
            exp += 1;
        }
        if exp > 0 {
            square_root *= p.pow(exp / 2);
            if exp % 2 == 1 {
                sqfree *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // whatever remains is 1 or a prime
    sqfree *= rest;
    (square_root, sqfree)
}

/// Square-free part of `w` (with `0 ↦ 1`).
pub fn square_free_part(w: u128) -> u128 {
    square_free_decompose(w).1
}

/// Exact integer square root, if `w` is a perfect square.
pub fn exact_isqrt(w: u128) -> Option<u128> {
    let (c, s) = square_free_decompose(w);
    (s == 1).then_some(c)
}

/// Element of `ℤ[√2, √3, √5, …]` in normal form.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SqrtNum {
    terms: BTreeMap<u128, BigInt>,
}

impl SqrtNum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        let mut out = Self::zero();
        out.push_term(1, value.into());
        out
    }

    /// `√w` in normal form `c·√s`.
    pub fn from_sqrt(w: u128) -> Self {
        let (c, s) = square_free_decompose(w);
        let mut out = Self::zero();
        out.push_term(s, BigInt::from(c));
        out
    }

    /// `coeff·√sqfree`; `sqfree` need not be square-free.
    pub fn term(coeff: impl Into<BigInt>, radicand: u128) -> Self {
        Self::from_sqrt(radicand) * Self::from_integer(coeff)
    }

    fn push_term(&mut self, sqfree: u128, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(sqfree).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&sqfree);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `(sqfree, coeff)` pairs in increasing `sqfree` order.
    pub fn terms(&self) -> impl Iterator<Item = (u128, &BigInt)> {
        self.terms.iter().map(|(s, c)| (*s, c))
    }

    /// The integer value, when the number is rational.
    pub fn as_integer(&self) -> Result<BigInt, SqrtError> {
        match self.terms.iter().find(|(s, _)| **s != 1) {
            Some((s, c)) => Err(SqrtError::NotRational {
                sqfree: *s,
                coeff: c.clone(),
            }),
            None => Ok(self.terms.get(&1).cloned().unwrap_or_default()),
        }
    }

    /// Returns `(c, s)` when the number is `c·√s` for a single class `s`.
    /// Zero is reported as `(0, 1)`.
    pub fn single_term(&self) -> Result<(BigInt, u128), SqrtError> {
        match self.terms.len() {
            0 => Ok((BigInt::zero(), 1)),
            1 => {
                let (s, c) = self.terms.iter().next().expect("one term");
                Ok((c.clone(), *s))
            }
            _ => Err(SqrtError::MixedClasses(self.clone())),
        }
    }

    /// Square of a single-class number as an integer: `(c√s)² = c²s`.
    pub fn square_single(&self) -> Result<BigInt, SqrtError> {
        let (c, s) = self.single_term()?;
        Ok(&c * &c * BigInt::from(s))
    }

    /// Floating-point approximation.
    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(s, c)| c.to_f64().unwrap_or(f64::NAN) * (*s as f64).sqrt())
            .sum()
    }

    /// Sign of the value. Exact for single-class numbers; mixed numbers
    /// fall back to a float comparison.
    pub fn signum(&self) -> i32 {
        match self.single_term() {
            Ok((c, _)) => {
                if c.is_positive() {
                    1
                } else if c.is_negative() {
                    -1
                } else {
                    0
                }
            }
            Err(_) => {
                let v = self.to_f64();
                if v > 0.0 {
                    1
                } else if v < 0.0 {
                    -1
                } else {
                    0
                }
            }
        }
    }
}

impl From<i64> for SqrtNum {
    fn from(v: i64) -> Self {
        Self::from_integer(v)
    }
}

impl Add<&SqrtNum> for &SqrtNum {
    type Output = SqrtNum;
    fn add(self, rhs: &SqrtNum) -> SqrtNum {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for SqrtNum {
    type Output = SqrtNum;
    fn add(mut self, rhs: SqrtNum) -> SqrtNum {
        self += &rhs;
        self
    }
}

impl AddAssign<&SqrtNum> for SqrtNum {
    fn add_assign(&mut self, rhs: &SqrtNum) {
        for (s, c) in &rhs.terms {
            self.push_term(*s, c.clone());
        }
    }
}

impl Neg for &SqrtNum {
    type Output = SqrtNum;
    fn neg(self) -> SqrtNum {
        SqrtNum {
            terms: self.terms.iter().map(|(s, c)| (*s, -c)).collect(),
        }
    }
}

impl Neg for SqrtNum {
    type Output = SqrtNum;
    fn neg(self) -> SqrtNum {
        -&self
    }
}

impl Sub<&SqrtNum> for &SqrtNum {
    type Output = SqrtNum;
    fn sub(self, rhs: &SqrtNum) -> SqrtNum {
        self + &(-rhs)
    }
}

impl Sub for SqrtNum {
    type Output = SqrtNum;
    fn sub(self, rhs: SqrtNum) -> SqrtNum {
        &self - &rhs
    }
}

impl Mul<&SqrtNum> for &SqrtNum {
    type Output = SqrtNum;
    fn mul(self, rhs: &SqrtNum) -> SqrtNum {
        let mut out = SqrtNum::zero();
        for (s1, c1) in &self.terms {
            for (s2, c2) in &rhs.terms {
                // s1, s2 square-free: s1·s2 = g²·(s1·s2/g²) with g = gcd(s1, s2)
                let g = num_integer::gcd(*s1, *s2);
                let sqfree = (s1 / g) * (s2 / g);
                out.push_term(sqfree, c1 * c2 * BigInt::from(g));
            }
        }
        out
    }
}

impl Mul for SqrtNum {
    type Output = SqrtNum;
    fn mul(self, rhs: SqrtNum) -> SqrtNum {
        &self * &rhs
    }
}

impl std::iter::Sum for SqrtNum {
    fn sum<I: Iterator<Item = SqrtNum>>(iter: I) -> Self {
        iter.fold(SqrtNum::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for SqrtNum {
    fn product<I: Iterator<Item = SqrtNum>>(iter: I) -> Self {
        iter.fold(SqrtNum::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for SqrtNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (s, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (*s == 1, magnitude.is_one()) {
                (true, _) => write!(f, "{magnitude}")?,
                (false, true) => write!(f, "√{s}")?,
                (false, false) => write!(f, "{magnitude}√{s}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    sqfree: u128,
    coeff: i128,
}

impl Serialize for SqrtNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let docs = self
            .terms
            .iter()
            .map(|(s, c)| {
                c.to_i128()
                    .map(|coeff| TermDoc { sqfree: *s, coeff })
                    .ok_or_else(|| serde::ser::Error::custom("coefficient exceeds 128 bits"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        docs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SqrtNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let docs = Vec::<TermDoc>::deserialize(deserializer)?;
        let mut out = SqrtNum::zero();
        for doc in docs {
            if doc.sqfree == 0 || square_free_part(doc.sqfree) != doc.sqfree {
                return Err(D::Error::custom(format!(
                    "{} is not a positive square-free integer",
                    doc.sqfree
                )));
            }
            out.push_term(doc.sqfree, BigInt::from(doc.coeff));
        }
        Ok(out)
    }
}
