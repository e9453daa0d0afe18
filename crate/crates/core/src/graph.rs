//! Loop-free undirected multigraphs with dense vertex ids `0..n`.
//!
//! A [`Graph`] is immutable once built. Parallel edges are stored once per
//! unordered pair together with their multiplicity, and the degree of a
//! vertex counts every parallel copy.

use serde::Serialize;

use crate::error::{Error, Result};

/// Index of the degree bucket `[2^d, 2^{d+1})` holding `degree`, or `None` for
/// degree zero.
#[inline]
pub fn bucket_of(degree: u64) -> Option<usize> {
    if degree == 0 {
        None
    } else {
        Some((63 - degree.leading_zeros()) as usize)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Unordered pairs as `(u, v, multiplicity)` with `u < v`, sorted.
    edges: Vec<(usize, usize, u32)>,
    offsets: Vec<usize>,
    adjacency: Vec<(usize, u32)>,
    degrees: Vec<u64>,
    simple: bool,
}

impl Graph {
    /// Builds a graph from `(u, v, multiplicity)` triples. Repeated pairs
    /// accumulate their multiplicities.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u32)>,
    {
        let mut pairs = Vec::new();
        for (u, v, mult) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    context: "edge".into(),
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(Error::invalid(format!("loop at vertex {u}")));
            }
            if mult == 0 {
                continue;
            }
            pairs.push((u.min(v), u.max(v), mult));
        }
        Ok(Self::from_normalized(n, pairs))
    }

    /// Builds a simple-multiplicity graph from plain pairs.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges(n, pairs.into_iter().map(|(u, v)| (u, v, 1)))
    }

    pub fn empty(n: usize) -> Self {
        Self::from_normalized(n, Vec::new())
    }

    /// `pairs` must already satisfy `u < v < n` and `mult >= 1`.
    pub(crate) fn from_normalized(n: usize, mut pairs: Vec<(usize, usize, u32)>) -> Self {
        pairs.sort_unstable();
        let mut edges: Vec<(usize, usize, u32)> = Vec::with_capacity(pairs.len());
        for (u, v, m) in pairs {
            match edges.last_mut() {
                Some(last) if last.0 == u && last.1 == v => last.2 += m,
                _ => edges.push((u, v, m)),
            }
        }

        let mut counts = vec![0usize; n + 1];
        let mut degrees = vec![0u64; n];
        for &(u, v, m) in &edges {
            counts[u + 1] += 1;
            counts[v + 1] += 1;
            degrees[u] += u64::from(m);
            degrees[v] += u64::from(m);
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let offsets = counts;
        let mut cursor = offsets.clone();
        let mut adjacency = vec![(0usize, 0u32); 2 * edges.len()];
        for &(u, v, m) in &edges {
            adjacency[cursor[u]] = (v, m);
            cursor[u] += 1;
            adjacency[cursor[v]] = (u, m);
            cursor[v] += 1;
        }
        for v in 0..n {
            adjacency[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        let simple = edges.iter().all(|&(_, _, m)| m == 1);

        Self {
            n,
            edges,
            offsets,
            adjacency,
            degrees,
            simple,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of distinct adjacent pairs.
    #[inline]
    pub fn num_pairs(&self) -> usize {
        self.edges.len()
    }

    /// Number of edges counted with multiplicity.
    pub fn num_edges(&self) -> u64 {
        self.edges.iter().map(|&(_, _, m)| u64::from(m)).sum()
    }

    /// Distinct pairs `(u, v, multiplicity)` with `u < v`, in lexicographic order.
    #[inline]
    pub fn edges(&self) -> &[(usize, usize, u32)] {
        &self.edges
    }

    /// Distinct neighbours of `v` with multiplicities, sorted by id.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[(usize, u32)] {
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn neighbor_ids(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.neighbors(v).iter().map(|&(u, _)| u)
    }

    /// Number of distinct neighbours.
    #[inline]
    pub fn distinct_degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> u64 {
        self.degrees[v]
    }

    #[inline]
    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// Multiplicity of the pair `{u, v}`, zero when absent.
    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        let nb = self.neighbors(u);
        match nb.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) => nb[i].1,
            Err(_) => 0,
        }
    }

    #[inline]
    pub fn is_simple(&self) -> bool {
        self.simple
    }

    pub fn max_degree(&self) -> u64 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Minimum degree over non-isolated vertices.
    pub fn min_positive_degree(&self) -> Option<u64> {
        self.degrees.iter().copied().filter(|&d| d > 0).min()
    }

    pub fn first_isolated(&self) -> Option<usize> {
        self.degrees.iter().position(|&d| d == 0)
    }

    /// Connected component label per vertex, labels assigned in order of the
    /// smallest vertex id of each component.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for u in self.neighbor_ids(v) {
                    if label[u] == usize::MAX {
                        label[u] = count;
                        stack.push(u);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().1 == 1
    }

    pub fn degree_buckets(&self) -> DegreeBuckets {
        DegreeBuckets::of(self)
    }

    /// Sum of degrees over `set`.
    pub fn volume(&self, set: &[usize]) -> Result<u64> {
        set.iter().try_fold(0u64, |acc, &v| {
            if v >= self.n {
                Err(Error::VertexOutOfRange {
                    context: "volume".into(),
                    vertex: v,
                    n: self.n,
                })
            } else {
                Ok(acc + self.degrees[v])
            }
        })
    }

    /// The same graph with every multiplicity reduced to one.
    pub fn skeleton(&self) -> Graph {
        if self.simple {
            return self.clone();
        }
        let pairs = self.edges.iter().map(|&(u, v, _)| (u, v, 1)).collect();
        Self::from_normalized(self.n, pairs)
    }

    /// Disjoint union; vertex ids of `parts[i]` are shifted by the returned offset `i`.
    pub fn disjoint_union(parts: &[&Graph]) -> (Graph, Vec<usize>) {
        let mut offsets = Vec::with_capacity(parts.len());
        let mut pairs = Vec::new();
        let mut base = 0;
        for g in parts {
            offsets.push(base);
            pairs.extend(g.edges.iter().map(|&(u, v, m)| (u + base, v + base, m)));
            base += g.n;
        }
        (Self::from_normalized(base, pairs), offsets)
    }
}

/// Vertex counts per degree bucket `[2^d, 2^{d+1})`; degree-zero vertices are
/// tallied separately in `isolated`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeBuckets {
    pub counts: Vec<usize>,
    pub isolated: usize,
}

impl DegreeBuckets {
    pub fn of(g: &Graph) -> Self {
        let mut counts = Vec::new();
        let mut isolated = 0;
        for &deg in g.degrees() {
            match bucket_of(deg) {
                None => isolated += 1,
                Some(d) => {
                    if counts.len() <= d {
                        counts.resize(d + 1, 0);
                    }
                    counts[d] += 1;
                }
            }
        }
        Self { counts, isolated }
    }

    pub fn count(&self, d: usize) -> usize {
        self.counts.get(d).copied().unwrap_or(0)
    }

    /// Number of vertices with positive degree.
    pub fn non_isolated(&self) -> usize {
        self.counts.iter().sum()
    }
}
