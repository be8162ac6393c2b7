use super::{Letter, RelationError, RelationKind, RelationReport};
use crate::diagram::Diagram;
use crate::sqrt_ring::SqrtNum;

/// Orients `vertices` along its edges, or reports why it is not an oriented
/// induced cycle.
pub(crate) fn orient_cycle(g: &Diagram, vertices: &[usize]) -> Result<Vec<usize>, RelationError> {
    if !g.is_induced_cycle(vertices) {
        return Err(RelationError::NotInduced(vertices.to_vec()));
    }
    if g.is_oriented_induced_cycle(vertices) {
        return Ok(vertices.to_vec());
    }
    let rev: Vec<usize> = vertices.iter().rev().copied().collect();
    if g.is_oriented_induced_cycle(&rev) {
        Ok(rev)
    } else {
        Err(RelationError::NotOriented(vertices.to_vec()))
    }
}

/// Relation `(t_i t_{i+1} … t_{i+d-1} t_{i+d-2} … t_{i+1})^m = e` for an
/// oriented induced cycle traversed from `i` along its edges, with
/// `x = (q_i … q_{i+d-2} - q_{i+d-1})²` where `q` is the square root of
/// an edge weight.
pub fn cycle_relation(
    g: &Diagram,
    vertices: &[usize],
    i: usize,
) -> Result<RelationReport, RelationError> {
    let oriented = orient_cycle(g, vertices)?;
    let pos = oriented
        .iter()
        .position(|&v| v == i)
        .ok_or(RelationError::NotOnCycle(i))?;
    let d = oriented.len();
    let c: Vec<usize> = (0..d).map(|t| oriented[(pos + t) % d]).collect();

    let q = |t: usize| SqrtNum::from_sqrt(g.weight(c[t], c[(t + 1) % d]));
    let run: SqrtNum = (0..d - 1).map(q).product();
    let diff = run - q(d - 1);
    let x = (&diff * &diff).as_integer()?;

    let mut word: Vec<Letter> = c.iter().map(|&v| Letter::plain(v)).collect();
    word.extend(c[1..d - 1].iter().rev().map(|&v| Letter::plain(v)));
    RelationReport::new(RelationKind::Cycle, word, x)
}
