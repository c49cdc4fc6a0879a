//! Two-dimensional Weisfeiler-Leman refinement with individualized sets.
//!
//! Colors are renumbered every round by sorting `(old color, signature)`
//! keys and ranking them, so the result is deterministic and commutes with
//! relabelings of the input. Because the old color leads every key, each
//! round refines the previous partition and keeps its class order.

use crate::error::{Error, Result};
use crate::exec::{map_range, ExecMode};
use crate::structures::{compact, ColoredDigraph};

/// A coloring of all ordered pairs, diagonal included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairColoring {
    n: usize,
    colors: Vec<u32>,
    num_colors: usize,
    round: usize,
}

impl PairColoring {
    /// Initial colors from vertex colors, arc colors in both directions and
    /// membership in each member of `tau`.
    pub fn initial(x: &ColoredDigraph, tau: &[Vec<usize>]) -> Result<Self> {
        let n = x.n();
        let mut member = vec![vec![0u64; tau.len()]; n];
        for (i, set) in tau.iter().enumerate() {
            for &v in set {
                if v >= n {
                    return Err(Error::PointOutOfRange { point: v, degree: n });
                }
                member[v][i] = 1;
            }
        }
        let none = x.num_arc_colors() as u64;
        let code = |u: usize, v: usize| x.arc_color(u, v).map_or(none, |c| c as u64);
        let mut keys: Vec<Vec<u64>> = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                let mut key = if u == v {
                    vec![0, x.vertex_color(u) as u64, 0, 0, 0]
                } else {
                    vec![
                        1,
                        code(u, v),
                        x.vertex_color(u) as u64,
                        x.vertex_color(v) as u64,
                        code(v, u),
                    ]
                };
                key.extend_from_slice(&member[u]);
                key.extend_from_slice(&member[v]);
                keys.push(key);
            }
        }
        let ranks = compact(&keys);
        let num_colors = ranks.iter().max().map_or(0, |&m| m + 1);
        Ok(PairColoring {
            n,
            colors: ranks.into_iter().map(|r| r as u32).collect(),
            num_colors,
            round: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> usize {
        self.colors[u * self.n + v] as usize
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn round(&self) -> usize {
        self.round
    }

    pub fn is_stable(&self) -> bool {
        iterate_round(self, ExecMode::Sequential).num_colors == self.num_colors
    }
}

/// One refinement step: the new color of `(u, v)` is determined by its old
/// color and the multiset of `(c(u, w), c(w, v))` over all `w`.
pub fn iterate_round(c: &PairColoring, mode: ExecMode) -> PairColoring {
    let n = c.n;
    let rows: Vec<Vec<(u32, Vec<u64>)>> = map_range(mode, n, |u| {
        (0..n)
            .map(|v| {
                let mut sig: Vec<u64> = (0..n)
                    .map(|w| ((c.colors[u * n + w] as u64) << 32) | c.colors[w * n + v] as u64)
                    .collect();
                sig.sort_unstable();
                (c.colors[u * n + v], sig)
            })
            .collect()
    });
    let keys: Vec<(u32, Vec<u64>)> = rows.into_iter().flatten().collect();
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut colors = vec![0u32; keys.len()];
    let mut next = 0u32;
    for (i, &idx) in order.iter().enumerate() {
        if i > 0 && keys[idx] != keys[order[i - 1]] {
            next += 1;
        }
        colors[idx] = next;
    }
    PairColoring {
        n,
        colors,
        num_colors: if keys.is_empty() { 0 } else { next as usize + 1 },
        round: c.round + 1,
    }
}

/// Iterates to the stable coloring.
pub fn stable_coloring(x: &ColoredDigraph, tau: &[Vec<usize>], mode: ExecMode) -> Result<PairColoring> {
    let mut c = PairColoring::initial(x, tau)?;
    loop {
        let next = iterate_round(&c, mode);
        if next.num_colors == c.num_colors {
            return Ok(c);
        }
        c = next;
    }
}

/// `WL2(X, τ)`: vertex classes are the diagonal colors, arc classes the
/// off-diagonal colors of actual arcs.
pub fn wl2(x: &ColoredDigraph, tau: &[Vec<usize>]) -> Result<ColoredDigraph> {
    wl2_with(x, tau, ExecMode::default())
}

pub fn wl2_with(x: &ColoredDigraph, tau: &[Vec<usize>], mode: ExecMode) -> Result<ColoredDigraph> {
    let c = stable_coloring(x, tau, mode)?;
    Ok(coloring_to_digraph(x, &c))
}

fn coloring_to_digraph(x: &ColoredDigraph, c: &PairColoring) -> ColoredDigraph {
    let n = x.n();
    let vcolors = compact(&(0..n).map(|v| c.color(v, v)).collect::<Vec<_>>());
    let arcs: Vec<(usize, usize)> = x.arcs().map(|(u, v, _)| (u, v)).collect();
    let acolors = compact(&arcs.iter().map(|&(u, v)| c.color(u, v)).collect::<Vec<_>>());
    ColoredDigraph::new(
        n,
        vcolors,
        arcs.iter().zip(acolors).map(|(&(u, v), a)| (u, v, a)),
    )
    .expect("refined coloring is contiguous")
}
