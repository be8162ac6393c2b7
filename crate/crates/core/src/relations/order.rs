use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::{Letter, Order, RelationError, RelationKind, RelationReport};
use crate::diagram::Diagram;
use crate::roots::{RootLattice, RootVec};

/// `0 ↦ 2, 1 ↦ 3, 2 ↦ 4, 3 ↦ 6, x ≥ 4 ↦ ∞`.
pub fn order_from_x(x: &BigInt) -> Result<Order, RelationError> {
    if x.is_negative() {
        return Err(RelationError::NegativeX(x.clone()));
    }
    Ok(match x.to_u8() {
        Some(0) => Order::Finite(2),
        Some(1) => Order::Finite(3),
        Some(2) => Order::Finite(4),
        Some(3) => Order::Finite(6),
        _ => Order::Infinite,
    })
}

/// `x = <u, v^∨>·<v, u^∨>` and the order of `s_u·s_v`.
pub fn pair_order(
    lattice: &RootLattice,
    u: &RootVec,
    v: &RootVec,
) -> Result<(BigInt, Order), RelationError> {
    let x = BigInt::from(lattice.gram_pairing(u, v)?) * BigInt::from(lattice.gram_pairing(v, u)?);
    let m = order_from_x(&x)?;
    Ok((x, m))
}

/// `m_ij` for every pair `i < j`, read off the edge weight.
pub fn edge_order_table(g: &Diagram) -> BTreeMap<(usize, usize), Order> {
    let mut table = BTreeMap::new();
    for i in 0..g.n() {
        for j in (i + 1)..g.n() {
            let m = order_from_x(&BigInt::from(g.weight(i, j))).expect("weights are nonnegative");
            table.insert((i, j), m);
        }
    }
    table
}

/// The relation `(t_i t_j)^{m_ij} = e`, with `x` the edge weight.
pub fn pair_relation(g: &Diagram, i: usize, j: usize) -> Result<RelationReport, RelationError> {
    RelationReport::new(
        RelationKind::Pair,
        vec![Letter::plain(i), Letter::plain(j)],
        BigInt::from(g.weight(i, j)),
    )
}
