//! Individualization-refinement backtracking over the full symmetric group.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use super::{SearchStats, UnionFind};
use crate::perm::{PermGroup, Permutation};
use crate::structures::ColoredDigraph;

/// Ordered partition given by a cell index per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Partition {
    cell: Vec<u32>,
    cells: usize,
}

impl Partition {
    fn from_colors(colors: &[usize]) -> Self {
        let cells = colors.iter().max().map_or(0, |&m| m + 1);
        Partition {
            cell: colors.iter().map(|&c| c as u32).collect(),
            cells,
        }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.cell.len()
    }

    fn members(&self, c: u32) -> Vec<usize> {
        (0..self.cell.len()).filter(|&v| self.cell[v] == c).collect()
    }

    /// First cell with more than one vertex.
    fn target_cell(&self) -> Option<u32> {
        let mut size = vec![0usize; self.cells];
        for &c in &self.cell {
            size[c as usize] += 1;
        }
        size.iter().position(|&s| s > 1).map(|c| c as u32)
    }

    /// Splits `v` off its cell, placing it first.
    fn individualize(&self, v: usize) -> Partition {
        let t = self.cell[v];
        let cell = self
            .cell
            .iter()
            .enumerate()
            .map(|(w, &c)| {
                if c > t || (c == t && w != v) {
                    c + 1
                } else {
                    c
                }
            })
            .collect();
        Partition {
            cell,
            cells: self.cells + 1,
        }
    }
}

/// Refines to the coarsest equitable partition below `p`, returning a trace
/// that is equal for partitions related by an isomorphism.
fn refine(g: &ColoredDigraph, p: &mut Partition) -> u64 {
    let n = g.n();
    let mut hasher = DefaultHasher::new();
    loop {
        if p.is_discrete() {
            break;
        }
        let keys: Vec<(u32, Vec<(u32, u64)>)> = (0..n)
            .map(|v| {
                let mut sig: Vec<(u32, u64)> = (0..n)
                    .filter(|&w| w != v)
                    .map(|w| (p.cell[w], g.pair_code(v, w)))
                    .collect();
                sig.sort_unstable();
                (p.cell[v], sig)
            })
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut next = 0u32;
        let mut cell = vec![0u32; n];
        for (i, &v) in order.iter().enumerate() {
            if i == 0 || keys[v] != keys[order[i - 1]] {
                if i > 0 {
                    next += 1;
                }
                keys[v].hash(&mut hasher);
            }
            cell[v] = next;
        }
        let cells = next as usize + 1;
        p.cell = cell;
        if cells == p.cells {
            break;
        }
        p.cells = cells;
    }
    let mut sizes = vec![0u32; p.cells];
    for &c in &p.cell {
        sizes[c as usize] += 1;
    }
    sizes.hash(&mut hasher);
    hasher.finish()
}

struct Level {
    part: Partition,
    trace: u64,
    /// Target cell and the vertex individualized on the left path.
    choice: Option<(u32, usize)>,
}

struct Searcher<'a> {
    left: &'a ColoredDigraph,
    right: &'a ColoredDigraph,
    path: Vec<Level>,
    stats: &'a mut SearchStats,
}

impl<'a> Searcher<'a> {
    fn new(left: &'a ColoredDigraph, right: &'a ColoredDigraph, stats: &'a mut SearchStats) -> Self {
        let mut part = Partition::from_colors(left.vertex_colors());
        let mut trace = refine(left, &mut part);
        let mut path = Vec::new();
        loop {
            match part.target_cell() {
                None => {
                    path.push(Level {
                        part,
                        trace,
                        choice: None,
                    });
                    break;
                }
                Some(t) => {
                    let v = part.members(t)[0];
                    let mut child = part.individualize(v);
                    let child_trace = refine(left, &mut child);
                    path.push(Level {
                        part,
                        trace,
                        choice: Some((t, v)),
                    });
                    part = child;
                    trace = child_trace;
                }
            }
        }
        stats.nodes += path.len() as u64;
        Searcher {
            left,
            right,
            path,
            stats,
        }
    }

    fn depth(&self) -> usize {
        self.path.len() - 1
    }

    /// Any isomorphism whose right-side node at `level` is `right`.
    fn extend(&mut self, level: usize, right: &Partition) -> Option<Permutation> {
        self.stats.nodes += 1;
        if level == self.depth() {
            let left = &self.path[level].part;
            let mut by_cell = vec![0usize; right.cell.len()];
            for (w, &c) in right.cell.iter().enumerate() {
                by_cell[c as usize] = w;
            }
            let images: Vec<usize> = left.cell.iter().map(|&c| by_cell[c as usize]).collect();
            let p = Permutation::from_images_unchecked(images);
            return self.left.is_isomorphism(self.right, &p).then_some(p);
        }
        let (t, _) = self.path[level].choice.unwrap();
        let want = self.path[level + 1].trace;
        for w in right.members(t) {
            let mut child = right.individualize(w);
            if refine(self.right, &mut child) != want {
                continue;
            }
            if let Some(p) = self.extend(level + 1, &child) {
                return Some(p);
            }
        }
        None
    }

    fn right_root(&self) -> Option<Partition> {
        let mut part = Partition::from_colors(self.right.vertex_colors());
        let trace = refine(self.right, &mut part);
        (trace == self.path[0].trace && part.cells == self.path[0].part.cells).then_some(part)
    }
}

/// Generators of `Aut(x)`, found level by level along the first path.
pub(crate) fn automorphism_generators(x: &ColoredDigraph, stats: &mut SearchStats) -> Vec<Permutation> {
    let mut s = Searcher::new(x, x, stats);
    let mut gens: Vec<Permutation> = Vec::new();
    for level in (0..s.depth()).rev() {
        let (t, v) = s.path[level].choice.unwrap();
        let mut uf = UnionFind::new(x.n());
        for g in &gens {
            uf.absorb(g);
        }
        let mut failed: Vec<usize> = Vec::new();
        let want = s.path[level + 1].trace;
        for w in s.path[level].part.members(t) {
            if uf.same(w, v) || failed.iter().any(|&f| uf.same(f, w)) {
                continue;
            }
            let mut child = s.path[level].part.individualize(w);
            let found = if refine(x, &mut child) == want {
                s.extend(level + 1, &child)
            } else {
                None
            };
            match found {
                Some(g) => {
                    uf.absorb(&g);
                    gens.push(g);
                }
                None => failed.push(w),
            }
        }
    }
    gens
}

pub(crate) fn automorphism_group(x: &ColoredDigraph, stats: &mut SearchStats) -> PermGroup {
    PermGroup::new(x.n(), automorphism_generators(x, stats))
}

/// Some isomorphism `x -> y`, if any.
pub(crate) fn find_isomorphism(
    x: &ColoredDigraph,
    y: &ColoredDigraph,
    stats: &mut SearchStats,
) -> Option<Permutation> {
    if x.n() != y.n() {
        return None;
    }
    let mut s = Searcher::new(x, y, stats);
    let root = s.right_root()?;
    s.extend(0, &root)
}
