//! Exhaustive ground truth: every color-respecting bijection is tried, with
//! partial assignments cut as soon as an arc color disagrees.

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::structures::ColoredDigraph;

pub const DEFAULT_ORACLE_CAP: usize = 9;

struct Enumerator<'a> {
    x: &'a ColoredDigraph,
    y: &'a ColoredDigraph,
    forced: Vec<Option<usize>>,
    image: Vec<usize>,
    used: Vec<bool>,
    first_only: bool,
    found: Vec<Permutation>,
}

impl Enumerator<'_> {
    fn fits(&self, u: usize, w: usize) -> bool {
        if self.used[w] || self.x.vertex_color(u) != self.y.vertex_color(w) {
            return false;
        }
        (0..u).all(|v| {
            let fv = self.image[v];
            self.x.arc_color(u, v) == self.y.arc_color(w, fv)
                && self.x.arc_color(v, u) == self.y.arc_color(fv, w)
        })
    }

    fn run(&mut self, u: usize) {
        if self.first_only && !self.found.is_empty() {
            return;
        }
        let n = self.x.n();
        if u == n {
            self.found
                .push(Permutation::from_images_unchecked(self.image.clone()));
            return;
        }
        let candidates: Vec<usize> = match self.forced[u] {
            Some(w) => vec![w],
            None => (0..n).collect(),
        };
        for w in candidates {
            if self.fits(u, w) {
                self.used[w] = true;
                self.image[u] = w;
                self.run(u + 1);
                self.used[w] = false;
            }
        }
    }
}

/// Isomorphisms `x -> y` extending the prescribed `(vertex, image)` pairs.
pub fn brute_iso_prescribed(
    x: &ColoredDigraph,
    y: &ColoredDigraph,
    prescribed: &[(usize, usize)],
    first_only: bool,
    cap: usize,
) -> Result<Vec<Permutation>> {
    let n = x.n();
    if n > cap {
        return Err(Error::OverOracleCap { n, cap });
    }
    if y.n() != n {
        return Ok(Vec::new());
    }
    let mut forced = vec![None; n];
    for &(u, w) in prescribed {
        if u >= n || w >= n {
            return Err(Error::PointOutOfRange {
                point: u.max(w),
                degree: n,
            });
        }
        match forced[u] {
            Some(prev) if prev != w => return Ok(Vec::new()),
            _ => forced[u] = Some(w),
        }
    }
    let mut e = Enumerator {
        x,
        y,
        forced,
        image: vec![0; n],
        used: vec![false; n],
        first_only,
        found: Vec::new(),
    };
    e.run(0);
    Ok(e.found)
}

/// Every isomorphism `x -> y`.
pub fn brute_iso(x: &ColoredDigraph, y: &ColoredDigraph, cap: usize) -> Result<Vec<Permutation>> {
    brute_iso_prescribed(x, y, &[], false, cap)
}

/// `Aut(x)` generated by all of its elements.
pub fn brute_aut(x: &ColoredDigraph, cap: usize) -> Result<PermGroup> {
    let all = brute_iso(x, x, cap)?;
    let mut group = PermGroup::trivial(x.n());
    for p in all {
        if !group.contains(&p) {
            group = group.extended(p);
        }
    }
    Ok(group)
}
