//! Base-image backtracking for `P ∩ K` where `K` is given by a BSGS and `P`
//! is the set of permutations preserving some structure.

use super::{SearchStats, UnionFind};
use crate::perm::{PermGroup, Permutation};

/// Structure preserved by the wanted subgroup.
pub(crate) trait Property {
    /// Necessary condition on a single point and its image.
    fn point_ok(&self, x: usize, y: usize) -> bool;
    /// Necessary condition on two points and their images.
    fn pair_ok(&self, x1: usize, x2: usize, y1: usize, y2: usize) -> bool;
    /// Exact test on a complete element.
    fn accepts(&self, g: &Permutation) -> bool;
}

struct BaseSearch<'a, P: Property> {
    group: &'a PermGroup,
    base: Vec<usize>,
    property: &'a P,
    images: Vec<usize>,
    stats: &'a mut SearchStats,
}

impl<P: Property> BaseSearch<'_, P> {
    fn consistent(&self, level: usize, y: usize) -> bool {
        let b = self.base[level];
        self.property.point_ok(b, y)
            && (0..level).all(|l| self.property.pair_ok(self.base[l], b, self.images[l], y))
    }

    /// Any accepted element `u_{m-1} ⋯ u_level · prefix`.
    fn extend(&mut self, level: usize, prefix: &Permutation) -> Option<Permutation> {
        self.stats.nodes += 1;
        if level == self.base.len() {
            return self.property.accepts(prefix).then(|| prefix.clone());
        }
        let orbit = self.group.basic_orbit(level).to_vec();
        for x in orbit {
            let y = prefix.image(x);
            if !self.consistent(level, y) {
                continue;
            }
            let u = self.group.transversal_element(level, x).unwrap();
            let next = u.then(prefix);
            self.images[level] = y;
            if let Some(g) = self.extend(level + 1, &next) {
                return Some(g);
            }
        }
        None
    }
}

/// Generators of the subgroup of `group` whose elements have `property`.
pub(crate) fn subgroup_search<P: Property>(
    group: &PermGroup,
    property: &P,
    stats: &mut SearchStats,
) -> PermGroup {
    let n = group.degree();
    let base = group.base();
    let mut search = BaseSearch {
        group,
        base: base.clone(),
        property,
        images: base.clone(),
        stats,
    };
    let mut gens: Vec<Permutation> = Vec::new();
    for level in (0..base.len()).rev() {
        let b = base[level];
        let mut uf = UnionFind::new(n);
        for g in &gens {
            uf.absorb(g);
        }
        let mut failed: Vec<usize> = Vec::new();
        let mut orbit = group.basic_orbit(level).to_vec();
        orbit.sort_unstable();
        for x in orbit {
            if x == b || uf.same(x, b) || failed.iter().any(|&f| uf.same(f, x)) {
                continue;
            }
            search.images[..level].copy_from_slice(&base[..level]);
            let found = if search.consistent(level, x) {
                search.images[level] = x;
                let u = group.transversal_element(level, x).unwrap().clone();
                search.extend(level + 1, &u)
            } else {
                None
            };
            match found {
                Some(g) => {
                    uf.absorb(&g);
                    gens.push(g);
                }
                None => failed.push(x),
            }
        }
    }
    PermGroup::new(n, gens)
}
