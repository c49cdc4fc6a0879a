use std::collections::VecDeque;

use super::ColoredDigraph;
use crate::error::{Error, Result};

/// A binary relation on `0..n`, kept as sorted distinct pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl Relation {
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        for &(u, v) in &pairs {
            if u >= n || v >= n {
                return Err(Error::InvalidDigraph(format!("pair ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidDigraph(format!("loop at {u}")));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Relation { n, pairs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.pairs.binary_search(&(u, v)).is_ok()
    }

    /// `αr = {β : (α, β) ∈ r}`.
    pub fn out_neighbors(&self, u: usize) -> Vec<usize> {
        let start = self.pairs.partition_point(|&(a, _)| a < u);
        self.pairs[start..]
            .iter()
            .take_while(|&&(a, _)| a == u)
            .map(|&(_, b)| b)
            .collect()
    }

    /// `{α : (α, β) ∈ r}`.
    pub fn in_neighbors(&self, v: usize) -> Vec<usize> {
        self.pairs
            .iter()
            .filter(|&&(_, b)| b == v)
            .map(|&(a, _)| a)
            .collect()
    }

    pub fn max_out_degree(&self) -> usize {
        let mut deg = vec![0usize; self.n];
        for &(u, _) in &self.pairs {
            deg[u] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.pairs {
            adj[u].push(v);
        }
        adj
    }

    /// Vertices reachable from `source` (including itself).
    pub fn reachable_from(&self, source: usize) -> Vec<bool> {
        reach(&self.adjacency(), source)
    }

    pub fn is_reachable_from(&self, source: usize) -> bool {
        source < self.n && self.reachable_from(source).into_iter().all(|b| b)
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let adj = self.adjacency();
        let mut radj = vec![Vec::new(); self.n];
        for &(u, v) in &self.pairs {
            radj[v].push(u);
        }
        reach(&adj, 0).into_iter().all(|b| b) && reach(&radj, 0).into_iter().all(|b| b)
    }
}

fn reach(adj: &[Vec<usize>], source: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    seen[source] = true;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Connectivity requirement for the small-class union.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanningMode {
    Strong,
    /// Every vertex reachable from the given source.
    ReachableFrom(usize),
}

/// Largest out-degree of arc class `s`.
pub fn maximal_valency(x: &ColoredDigraph, s: usize) -> Result<usize> {
    if s >= x.num_arc_colors() {
        return Err(Error::InvalidColor(s));
    }
    Ok(valencies(x)[s])
}

/// Maximal valency of every arc class, indexed by color.
pub fn valencies(x: &ColoredDigraph) -> Vec<usize> {
    let q = x.num_arc_colors();
    let mut out = vec![0usize; q];
    let mut count = vec![0usize; q];
    for u in 0..x.n() {
        count.iter_mut().for_each(|c| *c = 0);
        for v in 0..x.n() {
            if let Some(c) = x.arc_color(u, v) {
                count[c] += 1;
            }
        }
        for (o, &c) in out.iter_mut().zip(&count) {
            *o = (*o).max(c);
        }
    }
    out
}

/// Union `s_k` of all arc classes of maximal valency at most `k`.
pub fn small_union(x: &ColoredDigraph, k: usize) -> Result<Relation> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let val = valencies(x);
    Relation::new(
        x.n(),
        x.arcs()
            .filter(|&(_, _, c)| val[c] <= k)
            .map(|(u, v, _)| (u, v)),
    )
}

pub fn is_k_spanning(x: &ColoredDigraph, k: usize, mode: SpanningMode) -> Result<bool> {
    let r = small_union(x, k)?;
    Ok(match mode {
        SpanningMode::Strong => r.is_strongly_connected(),
        SpanningMode::ReachableFrom(s) => {
            if s >= x.n() {
                return Err(Error::PointOutOfRange {
                    point: s,
                    degree: x.n(),
                });
            }
            r.is_reachable_from(s)
        }
    })
}

/// Least `k ≥ 1` for which `x` is `k`-spanning, if any.
pub fn min_spanning_k(x: &ColoredDigraph, mode: SpanningMode) -> Option<usize> {
    let mut candidates: Vec<usize> = valencies(x).into_iter().map(|v| v.max(1)).collect();
    candidates.push(1);
    candidates.sort_unstable();
    candidates.dedup();
    candidates
        .into_iter()
        .find(|&k| is_k_spanning(x, k, mode).unwrap_or(false))
}
