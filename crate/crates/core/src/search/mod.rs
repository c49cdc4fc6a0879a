//! Automorphism and isomorphism searches.
//!
//! [`aut_digraph_cap`] and [`aut_hypergraph_cap`] search the base-image tree
//! of a solvable group `K`; [`tournament_iso`] and [`automorphism_group`]
//! use individualization-refinement over the full symmetric group. The
//! brute-force oracles in [`oracle`] share no code with either.

mod group;
pub mod oracle;
mod refine;

use crate::error::{Error, Result};
use crate::perm::{Coset, PermGroup, Permutation};
use crate::structures::{ColoredDigraph, Hypergraph};

pub use oracle::{brute_aut, brute_iso, brute_iso_prescribed, DEFAULT_ORACLE_CAP};

/// Backtracking node counter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
}

impl SearchStats {
    pub fn merge(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub(crate) fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Merges every point with its image under `g`.
    pub(crate) fn absorb(&mut self, g: &Permutation) {
        for x in 0..g.degree() {
            self.union(x, g.image(x));
        }
    }
}

struct DigraphProperty<'a>(&'a ColoredDigraph);

impl group::Property for DigraphProperty<'_> {
    fn point_ok(&self, x: usize, y: usize) -> bool {
        self.0.vertex_color(x) == self.0.vertex_color(y)
    }

    fn pair_ok(&self, x1: usize, x2: usize, y1: usize, y2: usize) -> bool {
        self.0.pair_code(x1, x2) == self.0.pair_code(y1, y2)
    }

    fn accepts(&self, g: &Permutation) -> bool {
        self.0.is_automorphism(g)
    }
}

struct HypergraphProperty<'a> {
    h: &'a Hypergraph,
    /// Number of hyperedges containing both points (one point on the diagonal).
    together: Vec<u32>,
}

impl<'a> HypergraphProperty<'a> {
    fn new(h: &'a Hypergraph) -> Self {
        let m = h.num_vertices();
        let mut together = vec![0u32; m * m];
        for e in h.edges() {
            for &a in e {
                for &b in e {
                    together[a * m + b] += 1;
                }
            }
        }
        HypergraphProperty { h, together }
    }
}

impl group::Property for HypergraphProperty<'_> {
    fn point_ok(&self, x: usize, y: usize) -> bool {
        let m = self.h.num_vertices();
        self.together[x * m + x] == self.together[y * m + y]
    }

    fn pair_ok(&self, x1: usize, x2: usize, y1: usize, y2: usize) -> bool {
        let m = self.h.num_vertices();
        self.together[x1 * m + x2] == self.together[y1 * m + y2]
    }

    fn accepts(&self, g: &Permutation) -> bool {
        self.h.is_automorphism(g)
    }
}

/// `Aut(X) ∩ K` for solvable `K`.
pub fn aut_digraph_cap(x: &ColoredDigraph, k: &PermGroup) -> Result<PermGroup> {
    aut_digraph_cap_with(x, k, &mut SearchStats::default())
}

pub fn aut_digraph_cap_with(
    x: &ColoredDigraph,
    k: &PermGroup,
    stats: &mut SearchStats,
) -> Result<PermGroup> {
    if k.degree() != x.n() {
        return Err(Error::DegreeMismatch(k.degree(), x.n()));
    }
    if !k.is_solvable() {
        return Err(Error::NotSolvable);
    }
    Ok(group::subgroup_search(k, &DigraphProperty(x), stats))
}

/// `Aut(H) ∩ K` for solvable `K`.
pub fn aut_hypergraph_cap(h: &Hypergraph, k: &PermGroup) -> Result<PermGroup> {
    aut_hypergraph_cap_with(h, k, &mut SearchStats::default())
}

pub fn aut_hypergraph_cap_with(
    h: &Hypergraph,
    k: &PermGroup,
    stats: &mut SearchStats,
) -> Result<PermGroup> {
    if k.degree() != h.num_vertices() {
        return Err(Error::DegreeMismatch(k.degree(), h.num_vertices()));
    }
    if !k.is_solvable() {
        return Err(Error::NotSolvable);
    }
    Ok(group::subgroup_search(k, &HypergraphProperty::new(h), stats))
}

/// `Aut(X)` of an arbitrary colored digraph.
pub fn automorphism_group(x: &ColoredDigraph) -> PermGroup {
    refine::automorphism_group(x, &mut SearchStats::default())
}

pub fn automorphism_group_with(x: &ColoredDigraph, stats: &mut SearchStats) -> PermGroup {
    refine::automorphism_group(x, stats)
}

/// `ISO(T, T') = Aut(T)·π` for colored tournaments.
pub fn tournament_iso(t: &ColoredDigraph, t2: &ColoredDigraph) -> Result<Coset> {
    tournament_iso_with(t, t2, &mut SearchStats::default())
}

pub fn tournament_iso_with(
    t: &ColoredDigraph,
    t2: &ColoredDigraph,
    stats: &mut SearchStats,
) -> Result<Coset> {
    t.check_tournament()?;
    t2.check_tournament()?;
    let rep = match refine::find_isomorphism(t, t2, stats) {
        Some(p) => p,
        None => return Ok(Coset::Empty),
    };
    let aut = refine::automorphism_group(t, stats);
    Ok(Coset::new(aut, rep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn cycle3() -> ColoredDigraph {
        ColoredDigraph::uncolored_tournament(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn cap_examples() {
        let x = cycle3();
        let k = PermGroup::new(3, vec![Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap()]);
        assert_eq!(aut_digraph_cap(&x, &k).unwrap().order(), BigUint::from(3u32));
        assert!(aut_digraph_cap(&x, &PermGroup::trivial(3)).unwrap().is_trivial());
        let distinct = x.with_vertex_colors(vec![0, 1, 2]).unwrap();
        assert!(aut_digraph_cap(&distinct, &k).unwrap().is_trivial());
        assert_eq!(
            aut_digraph_cap(&x, &PermGroup::symmetric(5).restrict(&[0, 1, 2, 3, 4]).unwrap())
                .unwrap_err(),
            Error::DegreeMismatch(5, 3)
        );
    }

    #[test]
    fn cap_rejects_non_solvable() {
        let h = Hypergraph::new(5, vec![vec![0, 1, 2, 3, 4]]).unwrap();
        assert_eq!(
            aut_hypergraph_cap(&h, &PermGroup::symmetric(5)).unwrap_err(),
            Error::NotSolvable
        );
    }

    #[test]
    fn hypergraph_examples() {
        let k = PermGroup::symmetric(4);
        let singletons = Hypergraph::new(4, (0..4).map(|x| vec![x]).collect()).unwrap();
        assert!(aut_hypergraph_cap(&singletons, &k).unwrap().same_group(&k));
        let full = Hypergraph::new(4, vec![vec![0, 1, 2, 3]]).unwrap();
        assert!(aut_hypergraph_cap(&full, &k).unwrap().same_group(&k));
        let pair = Hypergraph::new(4, vec![vec![0, 1]]).unwrap();
        assert_eq!(aut_hypergraph_cap(&pair, &k).unwrap().order(), BigUint::from(4u32));
    }

    #[test]
    fn iso_examples() {
        let c = cycle3();
        let coset = tournament_iso(&c, &c).unwrap();
        assert!(coset.representative().unwrap().is_identity());
        assert_eq!(coset.len(), BigUint::from(3u32));
        let tr = ColoredDigraph::uncolored_tournament(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(tournament_iso(&c, &tr).unwrap().is_empty());
        let not_t = ColoredDigraph::new(3, vec![0; 3], [(0, 1, 0)]).unwrap();
        assert!(tournament_iso(&not_t, &c).is_err());
    }
}
