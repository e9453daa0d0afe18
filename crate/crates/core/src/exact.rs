//! Exact optima for small instances, as ground truth for the greedy
//! algorithms. Vertex sets are `u64` bitmasks, so no oracle accepts more than
//! 64 vertices, and each has a vertex budget that is a hard error.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::report::SCHEMA_VERSION;
use crate::solvers::{greedy_mds, greedy_mis, Problem};

pub const MDS_BUDGET: usize = 30;
pub const MIS_BUDGET: usize = 40;
pub const MVC_BUDGET: usize = 40;
pub const CDS_BUDGET: usize = 20;

pub fn default_budget(problem: Problem) -> usize {
    match problem {
        Problem::Mds => MDS_BUDGET,
        Problem::Cds => CDS_BUDGET,
        Problem::Mis => MIS_BUDGET,
        Problem::Mvc => MVC_BUDGET,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactResult {
    pub schema_version: u32,
    pub problem: Problem,
    pub n: usize,
    pub size: usize,
    /// An optimal solution, sorted.
    pub witness: Vec<usize>,
}

impl ExactResult {
    fn new(problem: Problem, n: usize, mask: u64) -> Self {
        let witness = bits(mask).collect::<Vec<_>>();
        Self {
            schema_version: SCHEMA_VERSION,
            problem,
            n,
            size: witness.len(),
            witness,
        }
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_budget(g: &Graph, budget: usize) -> Result<()> {
    if g.n() > budget {
        return Err(Error::BudgetExceeded { n: g.n(), budget });
    }
    if g.n() > 64 {
        return Err(Error::Unsupported(format!(
            "exact oracles handle at most 64 vertices, got {}",
            g.n()
        )));
    }
    Ok(())
}

/// Open-neighbourhood masks.
fn neighbour_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbor_ids(v).fold(0u64, |m, u| m | (1 << u)))
        .collect()
}

/// Dispatches on `problem` with the given budget.
pub fn exact(g: &Graph, problem: Problem, budget: usize) -> Result<ExactResult> {
    match problem {
        Problem::Mds => exact_mds(g, budget),
        Problem::Cds => exact_cds(g, budget),
        Problem::Mis => exact_mis(g, budget),
        Problem::Mvc => exact_mvc(g, budget),
    }
}

struct MdsSearch {
    closed: Vec<u64>,
    best: u64,
    best_size: usize,
    /// Smallest number of chosen vertices seen with this undominated set.
    seen: HashMap<u64, usize>,
}

impl MdsSearch {
    fn run(&mut self, undominated: u64, chosen: u64, count: usize) {
        if undominated == 0 {
            if count < self.best_size {
                self.best_size = count;
                self.best = chosen;
            }
            return;
        }
        if count + 1 >= self.best_size {
            return;
        }
        match self.seen.get(&undominated) {
            Some(&c) if c <= count => return,
            _ => {
                self.seen.insert(undominated, count);
            }
        }
        let remaining = undominated.count_ones() as usize;
        let max_cover = self
            .closed
            .iter()
            .map(|&c| (c & undominated).count_ones() as usize)
            .max()
            .unwrap_or(1);
        if count + remaining.div_ceil(max_cover) >= self.best_size {
            return;
        }
        // the undominated vertex with the fewest ways to be dominated
        let u = bits(undominated)
            .min_by_key(|&u| self.closed[u].count_ones())
            .expect("non-empty");
        let mut options: Vec<usize> = bits(self.closed[u]).collect();
        options.sort_by_key(|&v| std::cmp::Reverse((self.closed[v] & undominated).count_ones()));
        for v in options {
            self.run(undominated & !self.closed[v], chosen | (1 << v), count + 1);
        }
    }
}

/// Minimum dominating set by branch and bound over closed neighbourhoods.
pub fn exact_mds(g: &Graph, budget: usize) -> Result<ExactResult> {
    check_budget(g, budget)?;
    let n = g.n();
    let open = neighbour_masks(g);
    let closed: Vec<u64> = (0..n).map(|v| open[v] | (1 << v)).collect();
    let (best, best_size) = match greedy_mds(g) {
        Ok(r) => (r.solution.iter().fold(0u64, |m, &v| m | (1 << v)), r.size),
        Err(_) => (full_mask(n), n),
    };
    let mut search = MdsSearch {
        closed,
        best,
        best_size,
        seen: HashMap::new(),
    };
    search.run(full_mask(n), 0, 0);
    Ok(ExactResult::new(Problem::Mds, n, search.best))
}

struct MisSearch {
    adj: Vec<u64>,
    best: u64,
    best_size: usize,
}

impl MisSearch {
    /// Upper bound on the independence number of `p` by greedy clique cover.
    fn clique_cover(&self, mut p: u64) -> usize {
        let mut cliques = 0;
        while p != 0 {
            let v = p.trailing_zeros() as usize;
            let mut candidates = p & self.adj[v];
            p &= !(1 << v);
            while candidates != 0 {
                let u = candidates.trailing_zeros() as usize;
                p &= !(1 << u);
                candidates &= self.adj[u];
            }
            cliques += 1;
        }
        cliques
    }

    fn run(&mut self, mut p: u64, mut chosen: u64, mut size: usize) {
        // vertices of residual degree at most one can always be taken
        loop {
            let low = bits(p).find(|&v| (self.adj[v] & p).count_ones() <= 1);
            match low {
                Some(v) => {
                    chosen |= 1 << v;
                    size += 1;
                    p &= !(self.adj[v] | (1 << v));
                }
                None => break,
            }
        }
        if p == 0 {
            if size > self.best_size {
                self.best_size = size;
                self.best = chosen;
            }
            return;
        }
        if size + self.clique_cover(p) <= self.best_size {
            return;
        }
        let v = bits(p)
            .max_by_key(|&v| ((self.adj[v] & p).count_ones(), std::cmp::Reverse(v)))
            .expect("non-empty");
        self.run(p & !(self.adj[v] | (1 << v)), chosen | (1 << v), size + 1);
        self.run(p & !(1 << v), chosen, size);
    }
}

fn mis_mask(g: &Graph) -> u64 {
    let adj = neighbour_masks(g);
    let greedy = greedy_mis(g);
    let mut search = MisSearch {
        adj,
        best: greedy.solution.iter().fold(0u64, |m, &v| m | (1 << v)),
        best_size: greedy.size,
    };
    search.run(full_mask(g.n()), 0, 0);
    search.best
}

/// Maximum independent set by branch and bound with clique-cover pruning.
pub fn exact_mis(g: &Graph, budget: usize) -> Result<ExactResult> {
    check_budget(g, budget)?;
    Ok(ExactResult::new(Problem::Mis, g.n(), mis_mask(g)))
}

/// Minimum vertex cover as the complement of a maximum independent set;
/// parallel edges collapse.
pub fn exact_mvc(g: &Graph, budget: usize) -> Result<ExactResult> {
    check_budget(g, budget)?;
    let mis = mis_mask(g);
    Ok(ExactResult::new(
        Problem::Mvc,
        g.n(),
        full_mask(g.n()) & !mis,
    ))
}

fn is_connected_mask(adj: &[u64], set: u64) -> bool {
    if set == 0 {
        return false;
    }
    let mut reached = 1u64 << set.trailing_zeros();
    let mut frontier = reached;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & set & !reached;
        reached |= new;
        frontier |= new;
    }
    reached == set
}

/// Minimum connected dominating set by enumerating subsets in increasing size.
pub fn exact_cds(g: &Graph, budget: usize) -> Result<ExactResult> {
    check_budget(g, budget)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    if n == 0 {
        return Ok(ExactResult::new(Problem::Cds, 0, 0));
    }
    let adj = neighbour_masks(g);
    let full = full_mask(n);
    for k in 1..=n {
        // Gosper's hack over k-subsets
        let mut set = (1u64 << k) - 1;
        while set <= full {
            let dominated = bits(set).fold(set, |m, v| m | adj[v]);
            if dominated == full && is_connected_mask(&adj, set) {
                return Ok(ExactResult::new(Problem::Cds, n, set));
            }
            let c = set & set.wrapping_neg();
            let r = set + c;
            set = (((r ^ set) >> 2) / c) | r;
        }
    }
    unreachable!("the full vertex set of a connected graph is a connected dominating set")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_chung_lu, gen_random_regular};
    use crate::graph::fixtures::*;
    use crate::solvers::validate_solution;
    use crate::weights::power_law_weights;

    fn brute(g: &Graph, problem: Problem) -> usize {
        let n = g.n();
        let mut best: Option<usize> = None;
        for set in 0u64..(1 << n) {
            let s: Vec<usize> = bits(set).collect();
            if !validate_solution(g, problem, &s).valid {
                continue;
            }
            let k = s.len();
            best = Some(match best {
                None => k,
                Some(b) if problem.minimize() => b.min(k),
                Some(b) => b.max(k),
            });
        }
        best.unwrap()
    }

    #[test]
    fn named_graphs() {
        let b = |p| default_budget(p);
        assert_eq!(exact_mds(&cycle(6), b(Problem::Mds)).unwrap().size, 2);
        assert_eq!(exact_mds(&star(9), b(Problem::Mds)).unwrap().size, 1);
        assert_eq!(exact_mds(&path(4), b(Problem::Mds)).unwrap().size, 2);
        assert_eq!(exact_mis(&star(9), b(Problem::Mis)).unwrap().size, 9);
        assert_eq!(exact_mis(&cycle(6), b(Problem::Mis)).unwrap().size, 3);
        assert_eq!(exact_mis(&complete(3), b(Problem::Mis)).unwrap().size, 1);
        assert_eq!(exact_mvc(&star(9), b(Problem::Mvc)).unwrap().size, 1);
        assert_eq!(exact_mvc(&cycle(6), b(Problem::Mvc)).unwrap().size, 3);
        let multi = Graph::from_edges(2, [(0, 1, 3)]).unwrap();
        assert_eq!(exact_mvc(&multi, b(Problem::Mvc)).unwrap().size, 1);
        assert_eq!(exact_cds(&star(4), b(Problem::Cds)).unwrap().size, 1);
        assert_eq!(
            exact_cds(&path(4), b(Problem::Cds)).unwrap().witness,
            vec![1, 2]
        );
        assert_eq!(exact_cds(&cycle(6), b(Problem::Cds)).unwrap().size, 4);
        assert_eq!(exact_mds(&petersen(), 30).unwrap().size, 3);
        assert_eq!(exact_mis(&petersen(), 40).unwrap().size, 4);
    }

    #[test]
    fn budgets_are_hard() {
        let g = cycle(31);
        assert!(matches!(
            exact_mds(&g, MDS_BUDGET),
            Err(Error::BudgetExceeded { n: 31, budget: 30 })
        ));
        assert!(exact_cds(&cycle(21), CDS_BUDGET).is_err());
        assert!(matches!(
            exact_cds(&Graph::from_pairs(4, [(0, 1), (2, 3)]).unwrap(), 20),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn agrees_with_enumeration() {
        let mut graphs = vec![cycle(7), path(9), star(6), complete(5), petersen()];
        for seed in 0..6 {
            graphs.push(gen_random_regular(12, 3, seed).unwrap());
            let ws = power_law_weights(14, 2.5, 1.5).unwrap();
            graphs.push(gen_chung_lu(&ws, seed));
        }
        for g in &graphs {
            for problem in Problem::ALL {
                if problem == Problem::Cds && !g.is_connected() {
                    continue;
                }
                let r = exact(g, problem, 64).unwrap();
                assert_eq!(r.size, brute(g, problem), "{problem} on {:?}", g.edges());
                assert!(validate_solution(g, problem, &r.witness).valid);
            }
            let mis = exact_mis(g, 40).unwrap().size;
            assert_eq!(exact_mvc(g, 40).unwrap().size + mis, g.n());
            if g.is_connected() {
                assert!(exact_mds(g, 30).unwrap().size <= exact_cds(g, 20).unwrap().size);
            }
        }
    }

    #[test]
    fn medium_instances_finish() {
        let g = gen_random_regular(30, 3, 7).unwrap();
        let mds = exact_mds(&g, 30).unwrap();
        assert!(validate_solution(&g, Problem::Mds, &mds.witness).valid);
        assert!(mds.size >= 30usize.div_ceil(4));
        let g = gen_random_regular(40, 3, 7).unwrap();
        let mis = exact_mis(&g, 40).unwrap();
        assert!(validate_solution(&g, Problem::Mis, &mis.witness).valid);
    }
}
