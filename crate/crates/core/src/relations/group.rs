use std::collections::{HashSet, VecDeque};

use crate::linalg::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupOrder {
    Finite(usize),
    Exceeded(usize),
}

/// Size of the group generated by `generators`, by breadth-first closure.
/// Gives up once more than `cap` elements are found or an entry no longer
/// fits in `i64` (which only happens in infinite groups).
pub fn group_order(generators: &[IntMatrix], cap: usize) -> GroupOrder {
    let Some(first) = generators.first() else {
        return GroupOrder::Finite(1);
    };
    let id = IntMatrix::identity(first.n());
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let Some(h) = g.checked_mul(s) else {
                return GroupOrder::Exceeded(cap);
            };
            if seen.insert(h.clone()) {
                if seen.len() > cap {
                    return GroupOrder::Exceeded(cap);
                }
                queue.push_back(h);
            }
        }
    }
    GroupOrder::Finite(seen.len())
}
