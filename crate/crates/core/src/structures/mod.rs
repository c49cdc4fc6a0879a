//! Colored digraphs, relations and hypergraphs.

mod digraph;
mod relation;

pub use digraph::ColoredDigraph;
pub(crate) use digraph::compact;
pub use relation::{
    is_k_spanning, maximal_valency, min_spanning_k, small_union, valencies, Relation,
    SpanningMode,
};

use crate::error::{Error, Result};

/// Hypergraph on `0..m` with a set of distinct hyperedges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    m: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Sorts each edge; repeated edges are dropped.
    pub fn new(m: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut out: Vec<Vec<usize>> = Vec::with_capacity(edges.len());
        for mut e in edges {
            e.sort_unstable();
            e.dedup();
            if let Some(&x) = e.iter().find(|&&x| x >= m) {
                return Err(Error::PointOutOfRange { point: x, degree: m });
            }
            if out.contains(&e) {
                log::warn!("dropping repeated hyperedge {e:?}");
                continue;
            }
            out.push(e);
        }
        Ok(Hypergraph { m, edges: out })
    }

    pub fn num_vertices(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// Whether `p` maps the edge set onto itself.
    pub fn is_automorphism(&self, p: &crate::perm::Permutation) -> bool {
        let mut set: Vec<Vec<usize>> = self.edges.clone();
        set.sort();
        self.edges.iter().all(|e| {
            let mut img: Vec<usize> = e.iter().map(|&x| p.image(x)).collect();
            img.sort_unstable();
            set.binary_search(&img).is_ok()
        })
    }
}

/// Induced subdigraph together with the map back to original vertices.
#[derive(Clone, Debug)]
pub struct Induced {
    pub graph: ColoredDigraph,
    /// `back_map[i]` is the original index of new vertex `i`.
    pub back_map: Vec<usize>,
}

impl Induced {
    /// New index of an original vertex.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.back_map.binary_search(&v).ok()
    }
}

/// Subdigraph on `subset`, re-indexed in ascending order with colors
/// compacted.
pub fn induced(x: &ColoredDigraph, subset: &[usize]) -> Result<Induced> {
    let mut back_map = subset.to_vec();
    back_map.sort_unstable();
    back_map.dedup();
    if back_map.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(&v) = back_map.iter().find(|&&v| v >= x.n()) {
        return Err(Error::PointOutOfRange {
            point: v,
            degree: x.n(),
        });
    }
    let m = back_map.len();
    let vcolors = compact(
        &back_map
            .iter()
            .map(|&v| x.vertex_color(v))
            .collect::<Vec<_>>(),
    );
    let mut raw = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if let Some(c) = x.arc_color(back_map[i], back_map[j]) {
                raw.push((i, j, c));
            }
        }
    }
    let acolors = compact(&raw.iter().map(|a| a.2).collect::<Vec<_>>());
    let graph = ColoredDigraph::new(
        m,
        vcolors,
        raw.iter().zip(acolors).map(|(&(i, j, _), c)| (i, j, c)),
    )?;
    Ok(Induced { graph, back_map })
}

/// `x'` refines `x`: both have the same arcs, every class of `x'` lies in a
/// single class of `x`, and that class map is monotone.
pub fn finer_or_equal_partitions(finer: &ColoredDigraph, coarser: &ColoredDigraph) -> Result<bool> {
    if finer.n() != coarser.n() {
        return Err(Error::DegreeMismatch(finer.n(), coarser.n()));
    }
    let n = finer.n();
    let mut vmap: Vec<Option<usize>> = vec![None; finer.num_vertex_colors()];
    for v in 0..n {
        let slot = &mut vmap[finer.vertex_color(v)];
        match slot {
            Some(c) if *c != coarser.vertex_color(v) => return Ok(false),
            _ => *slot = Some(coarser.vertex_color(v)),
        }
    }
    let mut amap: Vec<Option<usize>> = vec![None; finer.num_arc_colors()];
    for u in 0..n {
        for v in 0..n {
            match (finer.arc_color(u, v), coarser.arc_color(u, v)) {
                (None, None) => {}
                (Some(a), Some(b)) => {
                    let slot = &mut amap[a];
                    match slot {
                        Some(c) if *c != b => return Ok(false),
                        _ => *slot = Some(b),
                    }
                }
                _ => return Ok(false),
            }
        }
    }
    let monotone = |m: &[Option<usize>]| m.windows(2).all(|w| w[0] <= w[1]);
    Ok(monotone(&vmap) && monotone(&amap))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ColoredDigraph {
        ColoredDigraph::tournament(
            4,
            vec![0, 1, 1, 0],
            [(0, 1, 0), (1, 2, 1), (2, 0, 0), (3, 0, 1), (3, 1, 0), (2, 3, 1)],
        )
        .unwrap()
    }

    #[test]
    fn induced_examples() {
        let x = sample();
        let all = induced(&x, &[0, 1, 2, 3]).unwrap();
        assert_eq!(all.graph, x);
        assert_eq!(all.back_map, vec![0, 1, 2, 3]);

        let single = induced(&x, &[2]).unwrap();
        assert_eq!(single.graph.n(), 1);
        assert_eq!(single.graph.num_arcs(), 0);

        let sub = induced(&x, &[1, 2]).unwrap();
        assert_eq!(sub.graph.vertex_colors(), &[0, 0]);
        assert_eq!(sub.graph.arc_color(0, 1), Some(0));
        assert_eq!(sub.position(2), Some(1));
        assert!(induced(&x, &[]).is_err());
    }

    #[test]
    fn induced_composes() {
        let x = sample();
        let outer = induced(&x, &[0, 2, 3]).unwrap();
        let inner = induced(&outer.graph, &[1, 2]).unwrap();
        let direct = induced(&x, &[2, 3]).unwrap();
        assert_eq!(inner.graph, direct.graph);
        let composed: Vec<usize> = inner.back_map.iter().map(|&i| outer.back_map[i]).collect();
        assert_eq!(composed, direct.back_map);
    }

    #[test]
    fn refinement_order() {
        let x = sample();
        assert!(finer_or_equal_partitions(&x, &x).unwrap());
        let split = x.with_vertex_colors(vec![0, 1, 2, 0]).unwrap();
        assert!(finer_or_equal_partitions(&split, &x).unwrap());
        let merged = x.with_vertex_colors(vec![0; 4]).unwrap();
        assert!(!finer_or_equal_partitions(&merged, &x).unwrap());
        assert!(finer_or_equal_partitions(&x, &merged).unwrap());
        let one = ColoredDigraph::tournament(1, vec![0], []).unwrap();
        assert!(finer_or_equal_partitions(&one, &x).is_err());
    }

    #[test]
    fn hypergraph_dedup_and_automorphism() {
        let h = Hypergraph::new(4, vec![vec![1, 0], vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(h.edges().len(), 2);
        let swap = crate::perm::Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap();
        assert!(h.is_automorphism(&swap));
        let bad = crate::perm::Permutation::from_cycles(4, &[&[1, 2]]).unwrap();
        assert!(!h.is_automorphism(&bad));
        assert!(Hypergraph::new(2, vec![vec![2]]).is_err());
    }
}
