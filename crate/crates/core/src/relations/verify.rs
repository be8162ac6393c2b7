use num_bigint::BigInt;

use super::{Order, RelationError, RelationReport, VerificationStatus};
use crate::linalg::{BigMatrix, IntMatrix};
use crate::roots::CompanionTriple;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Powers checked to be non-identity for relations with `m = ∞`.
    pub infinite_power_bound: u32,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            infinite_power_bound: 60,
        }
    }
}

/// Matrix of the word, leftmost letter applied last.
pub fn word_matrix(
    report: &RelationReport,
    reflections: &[IntMatrix],
) -> Result<BigMatrix, RelationError> {
    let n = reflections.first().map_or(0, IntMatrix::n);
    report
        .vertices()
        .try_fold(BigMatrix::identity(n), |acc, v| {
            reflections
                .get(v)
                .map(|t| acc.mul(&t.to_big()))
                .ok_or(RelationError::BadWord(v))
        })
}

/// Fills in the verification status of `report` by exact matrix
/// computation in the lattice of `triple`.
pub fn verify_relation(
    report: &RelationReport,
    triple: &CompanionTriple,
    options: VerifyOptions,
) -> Result<RelationReport, RelationError> {
    let reflections = triple.reflections()?;
    let w = word_matrix(report, &reflections)?;
    let fail = |power: Option<u32>| {
        let mut failed = report.clone();
        failed.verified = VerificationStatus::Failed;
        Err(RelationError::VerificationFailed {
            power,
            report: Box::new(failed),
        })
    };
    let (bound, status) = match report.m {
        Order::Finite(m) => (m, VerificationStatus::ProvenFiniteByMatrix),
        Order::Infinite => {
            if report.x < BigInt::from(4) {
                return fail(None);
            }
            (
                options.infinite_power_bound,
                VerificationStatus::CertifiedInfiniteByX,
            )
        }
    };
    let mut power = w.clone();
    for p in 1..=bound {
        if p > 1 {
            power = power.mul(&w);
        }
        let identity = power.is_identity();
        let last = p == bound && report.m != Order::Infinite;
        if identity != last {
            return fail(Some(p));
        }
    }
    let mut out = report.clone();
    out.verified = status;
    Ok(out)
}

/// Checks `t_i² = e` for every basis reflection; returns the first index
/// that fails.
pub fn verify_involutions(triple: &CompanionTriple) -> Result<(), RelationError> {
    for (i, t) in triple.reflections()?.iter().enumerate() {
        let sq = t.to_big().mul(&t.to_big());
        if t.is_identity() || !sq.is_identity() {
            return Err(RelationError::PreconditionViolated(format!(
                "t{} is not an involution",
                i + 1
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::diagram_of;
    use crate::matrix::SkewMatrix;
    use crate::relations::{pair_relation, Letter, RelationKind};

    fn triple(rows: Vec<Vec<i64>>) -> CompanionTriple {
        CompanionTriple::seed(&SkewMatrix::new(rows).unwrap()).unwrap()
    }

    #[test]
    fn a2_pair() {
        let t = triple(vec![vec![0, 1], vec![-1, 0]]);
        let r = pair_relation(&diagram_of(t.matrix()), 0, 1).unwrap();
        let v = verify_relation(&r, &t, VerifyOptions::default()).unwrap();
        assert_eq!(v.verified, VerificationStatus::ProvenFiniteByMatrix);
        verify_involutions(&t).unwrap();
    }

    #[test]
    fn weight_four_pair_is_infinite() {
        let t = triple(vec![vec![0, 2], vec![-2, 0]]);
        let r = pair_relation(&diagram_of(t.matrix()), 0, 1).unwrap();
        assert_eq!(r.m, Order::Infinite);
        let v = verify_relation(&r, &t, VerifyOptions::default()).unwrap();
        assert_eq!(v.verified, VerificationStatus::CertifiedInfiniteByX);
    }

    #[test]
    fn wrong_order_fails_with_power() {
        let t = triple(vec![vec![0, 1], vec![-1, 0]]);
        let mut r = pair_relation(&diagram_of(t.matrix()), 0, 1).unwrap();
        r.x = BigInt::from(0);
        r.m = Order::Finite(2);
        match verify_relation(&r, &t, VerifyOptions::default()) {
            Err(RelationError::VerificationFailed { power, report }) => {
                assert_eq!(power, Some(2));
                assert_eq!(report.verified, VerificationStatus::Failed);
            }
            other => panic!("{other:?}"),
        }
        r.x = BigInt::from(2);
        r.m = Order::Finite(4);
        assert!(matches!(
            verify_relation(&r, &t, VerifyOptions::default()),
            Err(RelationError::VerificationFailed { power: Some(3), .. })
        ));
    }

    #[test]
    fn bad_letter() {
        let t = triple(vec![vec![0, 1], vec![-1, 0]]);
        let r = RelationReport::new(RelationKind::Pair, vec![Letter::plain(5)], BigInt::from(0))
            .unwrap();
        assert_eq!(
            verify_relation(&r, &t, VerifyOptions::default()),
            Err(RelationError::BadWord(5))
        );
    }
}
