use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{reject_isolated, Problem, SolveResult, TraceStep};
use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Repeatedly adds the vertex covering the most undominated vertices of its
/// closed neighbourhood. Gains only shrink, so stale heap entries are
/// re-scored on pop.
pub fn greedy_mds(g: &Graph) -> Result<SolveResult> {
    reject_isolated(g)?;
    let n = g.n();
    let mut dominated = vec![false; n];
    let mut remaining = n;
    let gain_of = |v: usize, dominated: &[bool]| {
        usize::from(!dominated[v]) + g.neighbor_ids(v).filter(|&u| !dominated[u]).count()
    };
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> = (0..n)
        .map(|v| (g.distinct_degree(v) + 1, Reverse(v)))
        .collect();
    let mut chosen = Vec::new();
    let mut trace = Vec::new();

    while remaining > 0 {
        let (stored, Reverse(v)) = heap.pop().expect("undominated vertices remain");
        let gain = gain_of(v, &dominated);
        if gain != stored {
            if gain > 0 {
                heap.push((gain, Reverse(v)));
            }
            continue;
        }
        chosen.push(v);
        trace.push(TraceStep {
            vertex: v,
            gain: gain as i64,
        });
        for u in std::iter::once(v).chain(g.neighbor_ids(v)) {
            if !dominated[u] {
                dominated[u] = true;
                remaining -= 1;
            }
        }
    }
    Ok(SolveResult::new(g, Problem::Mds, "greedy", chosen, trace))
}

/// Potential-function greedy for connected domination. With `p(C)` the number
/// of components of `G[C]` and `q(C)` the number of components of the
/// spanning subgraph formed by the edges touching `C`, it adds the vertex that
/// lowers `p + q` the most (smallest id on ties) until `p + q = 2`, i.e. `C`
/// is connected and dominating.
///
/// Adding `v` merges `k_p` components of `G[C]` and `k_q` spanning
/// components. `k_q` never grows as `C` grows, and `k_p` grows by at most one
/// per new member neighbour, so gains are evaluated lazily from a max-heap of
/// upper bounds.
pub fn greedy_cds(g: &Graph) -> Result<SolveResult> {
    reject_isolated(g)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let mut member = vec![false; n];
    let mut inner = Dsu::new(n);
    let mut spanning = Dsu::new(n);
    let (mut p, mut q) = (0usize, n);
    let mut stamp = vec![usize::MAX; n];
    let mut round = 0usize;
    let mut chosen = Vec::new();
    let mut trace = Vec::new();

    let mut gain_of = |v: usize, member: &[bool], inner: &mut Dsu, spanning: &mut Dsu| {
        round += 1;
        let mut k_p = 0;
        for u in g.neighbor_ids(v).filter(|&u| member[u]) {
            let r = inner.find(u);
            if stamp[r] != round {
                stamp[r] = round;
                k_p += 1;
            }
        }
        round += 1;
        let mut k_q = 0;
        for u in std::iter::once(v).chain(g.neighbor_ids(v)) {
            let r = spanning.find(u);
            if stamp[r] != round {
                stamp[r] = round;
                k_q += 1;
            }
        }
        (k_p, k_q)
    };

    let mut bound: Vec<usize> = (0..n).map(|v| g.distinct_degree(v) + 1).collect();
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> =
        (0..n).map(|v| (bound[v], Reverse(v))).collect();

    while p + q > 2 {
        let Some((key, Reverse(v))) = heap.pop() else {
            break;
        };
        if member[v] || key != bound[v] {
            continue;
        }
        let (k_p, k_q) = gain_of(v, &member, &mut inner, &mut spanning);
        let gain = k_p + k_q;
        if gain < key {
            bound[v] = gain;
            heap.push((gain, Reverse(v)));
            continue;
        }
        if gain <= 2 {
            break;
        }
        member[v] = true;
        p = p + 1 - k_p;
        q -= k_q - 1;
        for u in g.neighbor_ids(v) {
            if member[u] {
                inner.union(u, v);
            } else {
                bound[u] += 1;
                heap.push((bound[u], Reverse(u)));
            }
            spanning.union(u, v);
        }
        chosen.push(v);
        trace.push(TraceStep {
            vertex: v,
            gain: gain as i64 - 2,
        });
    }
    if p + q > 2 {
        return Err(Error::Construction(format!(
            "connected domination greedy stalled at potential {}",
            p + q
        )));
    }
    Ok(SolveResult::new(
        g,
        Problem::Cds,
        "greedy-potential",
        chosen,
        trace,
    ))
}

/// Reference version of [`greedy_cds`] that evaluates every gain each round.
#[cfg(test)]
fn greedy_cds_scan(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut member = vec![false; n];
    let mut inner = Dsu::new(n);
    let mut spanning = Dsu::new(n);
    let (mut p, mut q) = (0usize, n);
    let mut chosen = Vec::new();
    while p + q > 2 {
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for v in (0..n).filter(|&v| !member[v]) {
            let mut rp: Vec<usize> = g
                .neighbor_ids(v)
                .filter(|&u| member[u])
                .map(|u| inner.find(u))
                .collect();
            rp.sort_unstable();
            rp.dedup();
            let mut rq: Vec<usize> = std::iter::once(v)
                .chain(g.neighbor_ids(v))
                .map(|u| spanning.find(u))
                .collect();
            rq.sort_unstable();
            rq.dedup();
            let gain = rp.len() + rq.len();
            if best.is_none_or(|b| gain > b.0) {
                best = Some((gain, v, rp.len(), rq.len()));
            }
        }
        let (_, v, k_p, k_q) = best.unwrap();
        member[v] = true;
        p = p + 1 - k_p;
        q -= k_q - 1;
        for u in g.neighbor_ids(v) {
            if member[u] {
                inner.union(u, v);
            }
            spanning.union(u, v);
        }
        chosen.push(v);
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn mds_examples() {
        assert_eq!(greedy_mds(&star(5)).unwrap().solution, vec![0]);
        let p4 = greedy_mds(&path(4)).unwrap();
        assert_eq!(p4.solution, vec![1, 2]);
        let trace = p4.trace.unwrap();
        assert_eq!((trace[0].vertex, trace[0].gain), (1, 3));
        assert_eq!((trace[1].vertex, trace[1].gain), (2, 1));
        let c6 = greedy_mds(&cycle(6)).unwrap();
        assert_eq!(c6.size, 2);
        assert!(c6.valid);
    }

    #[test]
    fn mds_rejects_isolated() {
        let g = Graph::from_pairs(3, [(0, 1)]).unwrap();
        assert!(matches!(greedy_mds(&g), Err(Error::IsolatedVertex(2))));
    }

    #[test]
    fn cds_examples() {
        assert_eq!(greedy_cds(&star(5)).unwrap().solution, vec![0]);
        assert_eq!(greedy_cds(&path(4)).unwrap().solution, vec![1, 2]);
        assert_eq!(greedy_cds(&complete(3)).unwrap().solution, vec![0]);
        let c6 = greedy_cds(&cycle(6)).unwrap();
        assert_eq!(c6.size, 4);
        assert!(c6.valid);
        assert!(greedy_cds(&petersen()).unwrap().valid);
    }

    #[test]
    fn lazy_cds_matches_scan() {
        use crate::harness::random_plb_instance;
        for seed in 0..30 {
            let g = random_plb_instance(300, 2.2, seed).unwrap();
            let lazy = greedy_cds(&g).unwrap();
            assert!(lazy.valid);
            let order = lazy
                .trace
                .unwrap()
                .iter()
                .map(|s| s.vertex)
                .collect::<Vec<_>>();
            assert_eq!(order, greedy_cds_scan(&g), "seed {seed}");
        }
        for g in [petersen(), cycle(9), path(7), complete(5)] {
            let lazy = greedy_cds(&g)
                .unwrap()
                .trace
                .unwrap()
                .iter()
                .map(|s| s.vertex)
                .collect::<Vec<_>>();
            assert_eq!(lazy, greedy_cds_scan(&g));
        }
    }

    #[test]
    fn cds_rejects_disconnected() {
        let g = Graph::from_pairs(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(greedy_cds(&g), Err(Error::Disconnected)));
    }

    #[test]
    fn multigraph_semantics() {
        let g = Graph::from_edges(3, [(0, 1, 5), (1, 2, 1)]).unwrap();
        assert_eq!(greedy_mds(&g).unwrap().solution, vec![1]);
        assert_eq!(greedy_cds(&g).unwrap().solution, vec![1]);
    }
}
