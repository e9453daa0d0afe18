use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{Problem, SolveResult, TraceStep};
use crate::graph::Graph;

/// Minimum-degree greedy for independent sets: take the vertex of smallest
/// residual degree, delete it and its neighbours, repeat.
pub fn greedy_mis(g: &Graph) -> SolveResult {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.distinct_degree(v)).collect();
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        (0..n).map(|v| Reverse((deg[v], v))).collect();
    let mut chosen = Vec::new();
    let mut trace = Vec::new();

    while let Some(Reverse((d, v))) = heap.pop() {
        if !alive[v] || d != deg[v] {
            continue;
        }
        chosen.push(v);
        trace.push(TraceStep {
            vertex: v,
            gain: d as i64,
        });
        alive[v] = false;
        let removed: Vec<usize> = g.neighbor_ids(v).filter(|&u| alive[u]).collect();
        for &u in &removed {
            alive[u] = false;
        }
        for &u in &removed {
            for w in g.neighbor_ids(u) {
                if alive[w] {
                    deg[w] -= 1;
                    heap.push(Reverse((deg[w], w)));
                }
            }
        }
    }
    SolveResult::new(g, Problem::Mis, "greedy-min-degree", chosen, trace)
}

/// Maximum-degree greedy for vertex cover: take the vertex of largest
/// residual degree and delete its edges until none remain.
pub fn greedy_vc_degree(g: &Graph) -> SolveResult {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.distinct_degree(v)).collect();
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> =
        (0..n).map(|v| (deg[v], Reverse(v))).collect();
    let mut chosen = Vec::new();
    let mut trace = Vec::new();

    while let Some((d, Reverse(v))) = heap.pop() {
        if d == 0 {
            break;
        }
        if !alive[v] || d != deg[v] {
            continue;
        }
        chosen.push(v);
        trace.push(TraceStep {
            vertex: v,
            gain: d as i64,
        });
        alive[v] = false;
        for u in g.neighbor_ids(v) {
            if alive[u] {
                deg[u] -= 1;
                heap.push((deg[u], Reverse(u)));
            }
        }
    }
    SolveResult::new(g, Problem::Mvc, "greedy-max-degree", chosen, trace)
}

/// Both endpoints of a maximal matching built by a lexicographic edge scan.
pub fn matching_vc(g: &Graph) -> SolveResult {
    let mut covered = vec![false; g.n()];
    let mut chosen = Vec::new();
    let mut trace = Vec::new();
    for &(u, v, _) in g.edges() {
        if !covered[u] && !covered[v] {
            covered[u] = true;
            covered[v] = true;
            chosen.extend([u, v]);
            trace.push(TraceStep { vertex: u, gain: 2 });
        }
    }
    SolveResult::new(g, Problem::Mvc, "matching", chosen, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn mis_examples() {
        assert_eq!(greedy_mis(&path(4)).solution, vec![0, 2]);
        assert_eq!(greedy_mis(&complete(3)).solution, vec![0]);
        assert_eq!(greedy_mis(&star(5)).solution, vec![1, 2, 3, 4, 5]);
        assert_eq!(greedy_mis(&Graph::empty(3)).size, 3);
    }

    #[test]
    fn vc_examples() {
        assert_eq!(greedy_vc_degree(&star(5)).solution, vec![0]);
        assert_eq!(greedy_vc_degree(&path(4)).solution, vec![1, 2]);
        assert_eq!(greedy_vc_degree(&complete(3)).solution, vec![0, 1]);
        assert!(greedy_vc_degree(&Graph::empty(2)).solution.is_empty());
    }

    #[test]
    fn matching_examples() {
        assert_eq!(matching_vc(&path(2)).solution, vec![0, 1]);
        assert_eq!(matching_vc(&complete(3)).solution, vec![0, 1]);
        assert_eq!(matching_vc(&path(4)).size, 4);
    }

    #[test]
    fn parallel_edges_do_not_inflate_degree_order() {
        // vertex 0 has multidegree 6 but only one neighbour
        let g = Graph::from_edges(4, [(0, 1, 6), (1, 2, 1), (2, 3, 1), (1, 3, 1)]).unwrap();
        let vc = greedy_vc_degree(&g);
        assert_eq!(vc.trace.as_ref().unwrap()[0].vertex, 1);
        assert!(vc.valid);
    }
}
