use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use super::Permutation;
use crate::error::{Error, Result};

/// Group order; tournament automorphism groups overflow machine words quickly.
pub type BigOrder = BigUint;

const DERIVED_SERIES_CAP: usize = 64;

#[derive(Clone)]
struct Level {
    point: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Permutation>,
    /// `transversal[x] = Some(u)` with `point^u = x`.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        let mut level = Level {
            point,
            gens: Vec::new(),
            transversal: vec![None; degree],
            orbit: Vec::new(),
        };
        level.rebuild_orbit();
        level
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal.iter_mut().for_each(|t| *t = None);
        self.transversal[self.point] = Some(Permutation::identity(degree));
        self.orbit.clear();
        self.orbit.push(self.point);
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for s in &self.gens {
                let y = s.image(x);
                if self.transversal[y].is_none() {
                    let u = self.transversal[x].as_ref().unwrap().then(s);
                    self.transversal[y] = Some(u);
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }
}

/// A permutation group held as a base and strong generating set.
///
/// Built by deterministic Schreier-Sims; base points are taken in ascending
/// order unless a prefix is requested.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
        }
    }

    /// Panics if the generators disagree on the degree.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Self {
        Self::try_new(degree, generators).expect("generator degree mismatch")
    }

    pub fn try_new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_base_prefix(degree, generators, &[])
    }

    /// Symmetric group on `degree` points.
    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::from_cycles(degree, &[&[0, 1]]).unwrap());
        }
        if degree >= 3 {
            let cycle: Vec<usize> = (0..degree).collect();
            gens.push(Permutation::from_cycles(degree, &[&cycle]).unwrap());
        }
        Self::new(degree, gens)
    }

    /// Cyclic group generated by a single permutation.
    pub fn cyclic(p: Permutation) -> Self {
        Self::new(p.degree(), vec![p])
    }

    pub fn with_base_prefix(
        degree: usize,
        generators: Vec<Permutation>,
        prefix: &[usize],
    ) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        for &b in prefix {
            if b >= degree {
                return Err(Error::PointOutOfRange { point: b, degree });
            }
        }
        let mut gens: Vec<Permutation> = Vec::new();
        for g in generators {
            if !g.is_identity() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        let mut group = PermGroup {
            degree,
            generators: gens,
            levels: Vec::new(),
        };
        group.schreier_sims(prefix);
        Ok(group)
    }

    fn schreier_sims(&mut self, prefix: &[usize]) {
        let degree = self.degree;
        let mut base: Vec<usize> = Vec::new();
        for &b in prefix {
            if !base.contains(&b) {
                base.push(b);
            }
        }
        for g in &self.generators {
            if base.iter().all(|&b| g.image(b) == b) {
                base.push(g.first_moved_point().unwrap());
            }
        }
        let mut levels: Vec<Level> = base.iter().map(|&b| Level::new(b, degree)).collect();
        for g in &self.generators {
            for (i, level) in levels.iter_mut().enumerate() {
                level.gens.push(g.clone());
                if g.image(base[i]) != base[i] {
                    break;
                }
            }
        }
        for level in levels.iter_mut() {
            level.rebuild_orbit();
        }

        let mut i = levels.len() as isize - 1;
        while i >= 0 {
            let li = i as usize;
            let mut new_gen: Option<(Permutation, usize)> = None;
            'scan: for oi in 0..levels[li].orbit.len() {
                let x = levels[li].orbit[oi];
                for s in &levels[li].gens {
                    let y = s.image(x);
                    let ux = levels[li].transversal[x].as_ref().unwrap();
                    let uy = levels[li].transversal[y].as_ref().unwrap();
                    let uxs = ux.then(s);
                    if &uxs == uy {
                        continue;
                    }
                    let schreier = uxs.then(&uy.inverse());
                    let (h, j) = strip(&levels, schreier, li + 1);
                    if j < levels.len() || !h.is_identity() {
                        new_gen = Some((h, j));
                        break 'scan;
                    }
                }
            }
            match new_gen {
                Some((h, j)) => {
                    if j == levels.len() {
                        let b = h.first_moved_point().unwrap();
                        levels.push(Level::new(b, degree));
                    }
                    for level in levels.iter_mut().take(j + 1).skip(li + 1) {
                        level.gens.push(h.clone());
                        level.rebuild_orbit();
                    }
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
        self.levels = levels;
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn base_len(&self) -> usize {
        self.levels.len()
    }

    /// All strong generators, deduplicated.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in &self.levels {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Fundamental orbit of the `i`-th base point.
    pub fn basic_orbit(&self, i: usize) -> &[usize] {
        &self.levels[i].orbit
    }

    /// Coset representative `u` at level `i` with `base[i]^u = x`.
    pub fn transversal_element(&self, i: usize, x: usize) -> Option<&Permutation> {
        self.levels[i].transversal[x].as_ref()
    }

    pub fn order(&self) -> BigOrder {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.orbit.len() == 1)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (h, j) = strip(&self.levels, p.clone(), 0);
        j == self.levels.len() && h.is_identity()
    }

    pub fn orbit(&self, x: usize) -> Result<Vec<usize>> {
        if x >= self.degree {
            return Err(Error::PointOutOfRange {
                point: x,
                degree: self.degree,
            });
        }
        Ok(orbit_of(x, &self.generators, self.degree))
    }

    /// Rebuilds the BSGS with `prefix` as the leading base points.
    pub fn rebase(&self, prefix: &[usize]) -> Result<PermGroup> {
        let mut g = PermGroup::with_base_prefix(self.degree, self.strong_generators(), prefix)?;
        g.generators = self.generators.clone();
        Ok(g)
    }

    /// Pointwise stabilizer of `points`, in order.
    pub fn stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        let g = self.rebase(points)?;
        let mut distinct = 0;
        let mut seen = Vec::new();
        for &p in points {
            if !seen.contains(&p) {
                seen.push(p);
                distinct += 1;
            }
        }
        let levels: Vec<Level> = g.levels[distinct..].to_vec();
        let generators = levels.first().map(|l| l.gens.clone()).unwrap_or_default();
        Ok(PermGroup {
            degree: self.degree,
            generators,
            levels,
        })
    }

    pub fn point_stabilizer(&self, x: usize) -> Result<PermGroup> {
        self.stabilizer(&[x])
    }

    /// Some element mapping `x` to `y`, if one exists.
    pub fn transporter(&self, x: usize, y: usize) -> Result<Option<Permutation>> {
        let g = self.rebase(&[x])?;
        if y >= self.degree {
            return Err(Error::PointOutOfRange {
                point: y,
                degree: self.degree,
            });
        }
        Ok(match g.levels.first() {
            Some(l) if l.point == x => l.transversal[y].clone(),
            _ if x == y => Some(Permutation::identity(self.degree)),
            _ => None,
        })
    }

    /// Enumerates every element; only sensible for small groups.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for g in &out {
                for &x in &level.orbit {
                    next.push(g.then(level.transversal[x].as_ref().unwrap()));
                }
            }
            out = next;
        }
        out
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let x = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = g.then(level.transversal[x].as_ref().unwrap());
        }
        g
    }

    /// Group generated by `self` and `extra`.
    pub fn extended(&self, extra: Permutation) -> PermGroup {
        let mut gens = self.generators.clone();
        gens.push(extra);
        let mut strong = self.strong_generators();
        strong.push(gens.last().unwrap().clone());
        let mut g = PermGroup::with_base_prefix(self.degree, strong, &self.base())
            .expect("degree checked by caller");
        g.generators = gens;
        g.generators.retain(|p| !p.is_identity());
        g
    }

    /// Smallest normal subgroup of `self` containing `seeds`.
    pub fn normal_closure<I>(&self, seeds: I) -> PermGroup
    where
        I: IntoIterator<Item = Permutation>,
    {
        let mut closure = PermGroup::trivial(self.degree);
        let mut queue: VecDeque<Permutation> = VecDeque::new();
        for s in seeds {
            if !closure.contains(&s) {
                closure = closure.extended(s.clone());
                queue.push_back(s);
            }
        }
        while let Some(h) = queue.pop_front() {
            for g in &self.generators {
                let c = h.conjugate_by(g);
                if !closure.contains(&c) {
                    closure = closure.extended(c.clone());
                    queue.push_back(c);
                }
            }
        }
        closure
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let gens = &self.generators;
        let mut comms = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                let c = a.commutator(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(comms)
    }

    /// Whether the derived series reaches the trivial group.
    pub fn is_solvable(&self) -> bool {
        let mut g = self.clone();
        for _ in 0..DERIVED_SERIES_CAP {
            if g.is_trivial() {
                return true;
            }
            let d = g.derived_subgroup();
            if d.order() == g.order() {
                return false;
            }
            g = d;
        }
        panic!("derived series longer than {DERIVED_SERIES_CAP}");
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    /// Equal as sets of permutations.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && self.is_subgroup_of(other)
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order().to_string())
            .field("generators", &self.generators)
            .finish()
    }
}

fn strip(levels: &[Level], mut g: Permutation, from: usize) -> (Permutation, usize) {
    for (j, level) in levels.iter().enumerate().skip(from) {
        let x = g.image(level.point);
        match &level.transversal[x] {
            Some(u) => g = g.then(&u.inverse()),
            None => return (g, j),
        }
    }
    (g, levels.len())
}

pub(crate) fn orbit_of(x: usize, gens: &[Permutation], degree: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[x] = true;
    let mut orbit = vec![x];
    let mut i = 0;
    while i < orbit.len() {
        let y = orbit[i];
        for g in gens {
            let z = g.image(y);
            if !seen[z] {
                seen[z] = true;
                orbit.push(z);
            }
        }
        i += 1;
    }
    orbit.sort_unstable();
    orbit
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn cyc(n: usize, c: &[usize]) -> Permutation {
        Permutation::from_cycles(n, &[c]).unwrap()
    }

    /// Closure of the generators under composition.
    fn enumerate(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let id = Permutation::identity(degree);
        seen.insert(id.clone());
        let mut stack = vec![id];
        while let Some(p) = stack.pop() {
            for g in gens {
                let q = p.then(g);
                if seen.insert(q.clone()) {
                    stack.push(q);
                }
            }
        }
        seen
    }

    fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
        use rand::seq::SliceRandom;
        let mut v: Vec<usize> = (0..n).collect();
        v.shuffle(rng);
        Permutation::from_images(v).unwrap()
    }

    fn random_group(rng: &mut ChaCha8Rng) -> (usize, Vec<Permutation>) {
        let n = rng.gen_range(1..=8);
        let k = rng.gen_range(0..=2);
        let mut gens = Vec::new();
        for _ in 0..k {
            // Sparse permutations keep the groups small enough to enumerate.
            let mut p: Vec<usize> = (0..n).collect();
            if n >= 2 {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                p.swap(a, b);
                if n >= 4 && rng.gen_bool(0.5) {
                    let c = rng.gen_range(0..n);
                    let d = rng.gen_range(0..n);
                    p.swap(c, d);
                }
            }
            gens.push(Permutation::from_images(p).unwrap());
        }
        if rng.gen_bool(0.2) {
            gens.push(random_perm(rng, n));
        }
        (n, gens)
    }

    #[test]
    fn trivial_and_cyclic_orders() {
        assert_eq!(PermGroup::new(5, vec![]).order(), BigUint::one());
        assert_eq!(PermGroup::new(3, vec![cyc(3, &[0, 1, 2])]).order(), 3u32.into());
    }

    #[test]
    fn symmetric_four_matches_enumeration() {
        let g = PermGroup::new(4, vec![cyc(4, &[0, 1]), cyc(4, &[0, 1, 2, 3])]);
        let all = enumerate(4, g.generators());
        assert_eq!(all.len(), 24);
        assert_eq!(g.order(), 24u32.into());
        assert!(all.iter().all(|p| g.contains(p)));
    }

    #[test]
    fn order_matches_enumeration_on_random_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let (n, gens) = random_group(&mut rng);
            let g = PermGroup::new(n, gens.clone());
            let all = enumerate(n, &gens);
            if all.len() > 10_000 {
                continue;
            }
            assert_eq!(g.order(), BigUint::from(all.len()));
            let listed: HashSet<Permutation> = g.elements().into_iter().collect();
            assert_eq!(listed, all);
        }
    }

    #[test]
    fn stabilizer_examples() {
        let c3 = PermGroup::new(3, vec![cyc(3, &[0, 1, 2])]);
        assert!(c3.point_stabilizer(0).unwrap().is_trivial());
        let s3 = PermGroup::symmetric(3);
        assert_eq!(s3.orbit(0).unwrap(), vec![0, 1, 2]);
        assert!(s3.orbit(3).is_err());
    }

    #[test]
    fn orbit_stabilizer_on_random_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let (n, gens) = random_group(&mut rng);
            let g = PermGroup::new(n, gens.clone());
            let all = enumerate(n, &gens);
            for x in 0..n {
                let stab = g.point_stabilizer(x).unwrap();
                let orbit = g.orbit(x).unwrap();
                assert_eq!(g.order(), stab.order() * BigUint::from(orbit.len()));
                let fixing = all.iter().filter(|p| p.image(x) == x).count();
                assert_eq!(stab.order(), BigUint::from(fixing));
                for p in &all {
                    assert_eq!(stab.contains(p), p.image(x) == x);
                }
            }
        }
    }

    #[test]
    fn transporter_maps_points() {
        let g = PermGroup::new(5, vec![cyc(5, &[0, 1, 2, 3, 4])]);
        let t = g.transporter(1, 4).unwrap().unwrap();
        assert_eq!(t.image(1), 4);
        assert!(g.contains(&t));
        let h = PermGroup::new(4, vec![cyc(4, &[0, 1])]);
        assert!(h.transporter(0, 3).unwrap().is_none());
        assert!(h.transporter(3, 3).unwrap().unwrap().is_identity());
    }

    #[test]
    fn solvability() {
        assert!(PermGroup::trivial(4).is_solvable());
        assert!(PermGroup::new(5, vec![cyc(5, &[0, 1, 2, 3, 4])]).is_solvable());
        assert!(PermGroup::symmetric(4).is_solvable());
        assert!(!PermGroup::symmetric(5).is_solvable());
        let a5 = PermGroup::new(5, vec![cyc(5, &[0, 1, 2]), cyc(5, &[0, 1, 2, 3, 4])]);
        assert_eq!(a5.order(), 60u32.into());
        assert_eq!(PermGroup::symmetric(5).derived_subgroup().order(), 60u32.into());
        assert!(!a5.is_solvable());
    }

    #[test]
    fn odd_order_groups_are_solvable() {
        // C3 wr C3 on 9 points, order 81.
        let gens = vec![
            cyc(9, &[0, 1, 2]),
            Permutation::from_cycles(9, &[&[0, 3, 6], &[1, 4, 7], &[2, 5, 8]]).unwrap(),
        ];
        let g = PermGroup::new(9, gens);
        assert_eq!(g.order(), 81u32.into());
        assert!(g.is_solvable());
        // Frobenius group of order 21.
        let f21 = PermGroup::new(
            7,
            vec![
                cyc(7, &[0, 1, 2, 3, 4, 5, 6]),
                Permutation::from_cycles(7, &[&[1, 2, 4], &[3, 6, 5]]).unwrap(),
            ],
        );
        assert_eq!(f21.order(), 21u32.into());
        assert!(f21.is_solvable());
    }

    #[test]
    fn random_words_are_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let (n, gens) = random_group(&mut rng);
            if gens.is_empty() {
                continue;
            }
            let g = PermGroup::new(n, gens.clone());
            let mut w = Permutation::identity(n);
            for _ in 0..20 {
                w = w.then(&gens[rng.gen_range(0..gens.len())]);
                assert!(g.contains(&w));
            }
            let r = g.random_element(&mut rng);
            assert!(g.contains(&r));
        }
    }
}
