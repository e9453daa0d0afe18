//! Greedy approximation algorithms for dominating sets, connected dominating
//! sets, independent sets and vertex covers, with solution validation.
//!
//! Ties are always broken towards the smallest vertex id. Parallel edges
//! count towards degrees where a rule is phrased in degrees, but domination
//! and covering only look at adjacency.

mod dominating;
mod independent;

pub use dominating::{greedy_cds, greedy_mds};
pub use independent::{greedy_mis, greedy_vc_degree, matching_vc};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dsu::Dsu;
use crate::error::Error;
use crate::graph::Graph;
use crate::report::SCHEMA_VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Mds,
    Cds,
    Mis,
    Mvc,
}

impl Problem {
    pub const ALL: [Problem; 4] = [Problem::Mds, Problem::Cds, Problem::Mis, Problem::Mvc];

    pub fn as_str(self) -> &'static str {
        match self {
            Problem::Mds => "mds",
            Problem::Cds => "cds",
            Problem::Mis => "mis",
            Problem::Mvc => "mvc",
        }
    }

    /// True for minimisation problems.
    pub fn minimize(self) -> bool {
        self != Problem::Mis
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "mds" => Ok(Problem::Mds),
            "cds" => Ok(Problem::Cds),
            "mis" => Ok(Problem::Mis),
            "mvc" | "vc" => Ok(Problem::Mvc),
            other => Err(Error::invalid(format!("unknown problem {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub vertex: usize,
    pub gain: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveResult {
    pub schema_version: u32,
    pub problem: Problem,
    pub algorithm: &'static str,
    /// Sorted vertex ids.
    pub solution: Vec<usize>,
    pub size: usize,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceStep>>,
}

impl SolveResult {
    pub(crate) fn new(
        g: &Graph,
        problem: Problem,
        algorithm: &'static str,
        mut solution: Vec<usize>,
        trace: Vec<TraceStep>,
    ) -> Self {
        solution.sort_unstable();
        let valid = validate_solution(g, problem, &solution).valid;
        Self {
            schema_version: SCHEMA_VERSION,
            problem,
            algorithm,
            size: solution.len(),
            solution,
            valid,
            trace: Some(trace),
        }
    }

    pub fn without_trace(mut self) -> Self {
        self.trace = None;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    OutOfRange { vertex: usize },
    Undominated { vertex: usize },
    Disconnected { a: usize, b: usize },
    Adjacent { u: usize, v: usize },
    NotMaximal { vertex: usize },
    Uncovered { u: usize, v: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub valid: bool,
    pub witness: Option<Witness>,
}

impl Validation {
    fn fail(w: Witness) -> Self {
        Self {
            valid: false,
            witness: Some(w),
        }
    }

    fn ok() -> Self {
        Self {
            valid: true,
            witness: None,
        }
    }
}

/// Checks feasibility of `s` for `problem` and returns a violation on
/// failure: the undominated vertex of largest id, otherwise the first
/// offending edge or vertex in id order.
pub fn validate_solution(g: &Graph, problem: Problem, s: &[usize]) -> Validation {
    let n = g.n();
    let mut member = vec![false; n];
    for &v in s {
        if v >= n {
            return Validation::fail(Witness::OutOfRange { vertex: v });
        }
        member[v] = true;
    }
    match problem {
        Problem::Mds | Problem::Cds => {
            if let Some(v) = (0..n).rfind(|&v| !member[v] && !g.neighbor_ids(v).any(|u| member[u]))
            {
                return Validation::fail(Witness::Undominated { vertex: v });
            }
            if problem == Problem::Cds {
                let mut dsu = Dsu::new(n);
                for &(u, v, _) in g.edges() {
                    if member[u] && member[v] {
                        dsu.union(u, v);
                    }
                }
                let mut chosen = (0..n).filter(|&v| member[v]);
                if let Some(first) = chosen.next() {
                    let root = dsu.find(first);
                    if let Some(b) = chosen.find(|&v| dsu.find(v) != root) {
                        return Validation::fail(Witness::Disconnected { a: first, b });
                    }
                } else if n > 0 {
                    return Validation::fail(Witness::Undominated { vertex: 0 });
                }
            }
        }
        Problem::Mis => {
            for &(u, v, _) in g.edges() {
                if member[u] && member[v] {
                    return Validation::fail(Witness::Adjacent { u, v });
                }
            }
            if let Some(v) = (0..n).find(|&v| !member[v] && !g.neighbor_ids(v).any(|u| member[u])) {
                return Validation::fail(Witness::NotMaximal { vertex: v });
            }
        }
        Problem::Mvc => {
            for &(u, v, _) in g.edges() {
                if !member[u] && !member[v] {
                    return Validation::fail(Witness::Uncovered { u, v });
                }
            }
        }
    }
    Validation::ok()
}

pub(crate) fn reject_isolated(g: &Graph) -> Result<(), Error> {
    match g.first_isolated() {
        Some(v) => Err(Error::IsolatedVertex(v)),
        None => Ok(()),
    }
}

/// Runs the default algorithm for `problem`.
pub fn solve(g: &Graph, problem: Problem) -> Result<SolveResult, Error> {
    match problem {
        Problem::Mds => greedy_mds(g),
        Problem::Cds => greedy_cds(g),
        Problem::Mis => Ok(greedy_mis(g)),
        Problem::Mvc => Ok(greedy_vc_degree(g)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn validation_examples() {
        let p4 = path(4);
        assert!(validate_solution(&p4, Problem::Mds, &[1, 2]).valid);
        assert_eq!(
            validate_solution(&p4, Problem::Mds, &[0]).witness,
            Some(Witness::Undominated { vertex: 3 })
        );
        let k3 = complete(3);
        assert_eq!(
            validate_solution(&k3, Problem::Mis, &[0, 1]).witness,
            Some(Witness::Adjacent { u: 0, v: 1 })
        );
        assert_eq!(
            validate_solution(&p4, Problem::Mis, &[0]).witness,
            Some(Witness::NotMaximal { vertex: 2 })
        );
        assert_eq!(
            validate_solution(&p4, Problem::Cds, &[0, 3]).witness,
            Some(Witness::Disconnected { a: 0, b: 3 })
        );
        assert_eq!(
            validate_solution(&p4, Problem::Mvc, &[1]).witness,
            Some(Witness::Uncovered { u: 2, v: 3 })
        );
        assert!(!validate_solution(&p4, Problem::Mvc, &[9]).valid);
    }

    #[test]
    fn problem_names() {
        for p in Problem::ALL {
            assert_eq!(p.as_str().parse::<Problem>().unwrap(), p);
        }
        assert!("tsp".parse::<Problem>().is_err());
    }
}
