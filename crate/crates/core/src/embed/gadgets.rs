use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solvers::Problem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetKind {
    Cycle,
    RegularCycle,
    Star,
}

/// Two `n`-cycles whose `i`-th vertices are joined by `d - 2` parallel
/// edges; every vertex has degree `d`. Vertices `0..n` form the first cycle.
pub fn regular_cycle(n: usize, d: u32) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid(format!(
            "regular cycle needs n >= 3, got {n}"
        )));
    }
    if d < 3 {
        return Err(Error::invalid(format!(
            "regular cycle needs d >= 3, got {d}"
        )));
    }
    Ok(regular_cycle_unchecked(n, d))
}

/// As [`regular_cycle`], also allowing `n = 2` (each cycle a double edge)
/// and `d = 2` (two disjoint cycles).
pub(crate) fn regular_cycle_unchecked(n: usize, d: u32) -> Graph {
    let mut edges = Vec::with_capacity(3 * n);
    for i in 0..n {
        let j = (i + 1) % n;
        edges.push((i.min(j), i.max(j), 1));
        edges.push(((n + i).min(n + j), (n + i).max(n + j), 1));
        if d > 2 {
            edges.push((i, n + i, d - 2));
        }
    }
    Graph::from_normalized(2 * n, edges)
}

/// Cycle on `n >= 2` vertices; `n = 2` gives a double edge.
pub(crate) fn cycle_graph(n: usize) -> Graph {
    let edges = (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            (i.min(j), i.max(j), 1)
        })
        .collect();
    Graph::from_normalized(n, edges)
}

/// Star with centre 0 and `size - 1` leaves, each spoke of multiplicity `mult`.
pub(crate) fn star_graph(size: usize, mult: u32) -> Graph {
    Graph::from_normalized(size, (1..size).map(|v| (0, v, mult)).collect())
}

/// Closed-form optimum of a gadget. `n` is the vertex count for cycles and
/// stars and the length of each of the two cycles for regular cycles.
pub fn gadget_opt(kind: GadgetKind, n: usize, problem: Problem) -> Result<usize> {
    let min_n = match kind {
        GadgetKind::Cycle | GadgetKind::Star | GadgetKind::RegularCycle => 2,
    };
    if n < min_n {
        return Err(Error::invalid(format!("{kind:?} of size {n} is too small")));
    }
    let even = n.is_multiple_of(2);
    let value = match (kind, problem) {
        (GadgetKind::Cycle, Problem::Mds) => n.div_ceil(3),
        (GadgetKind::Cycle, Problem::Mis) => n / 2,
        (GadgetKind::Cycle, Problem::Mvc) => n.div_ceil(2),
        (GadgetKind::RegularCycle, Problem::Mds) => (2 * n).div_ceil(4) + usize::from(n % 4 == 2),
        (GadgetKind::RegularCycle, Problem::Mis) => {
            if even {
                n
            } else {
                n - 1
            }
        }
        (GadgetKind::RegularCycle, Problem::Mvc) => {
            if even {
                n
            } else {
                n + 1
            }
        }
        (GadgetKind::Star, Problem::Mds | Problem::Mvc) => 1,
        (GadgetKind::Star, Problem::Mis) => n - 1,
        (_, Problem::Cds) => {
            return Err(Error::Unsupported(format!(
                "no closed-form {problem} optimum for {kind:?}"
            )))
        }
    };
    Ok(value)
}
