use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

impl PermGroup {
    /// `G × H` acting on `0..deg(G)` followed by `deg(G)..deg(G)+deg(H)`.
    pub fn direct_product(&self, other: &PermGroup) -> PermGroup {
        let total = self.degree() + other.degree();
        let mut gens: Vec<Permutation> = self
            .generators()
            .iter()
            .map(|g| g.embed(0, total))
            .collect();
        gens.extend(
            other
                .generators()
                .iter()
                .map(|g| g.embed(self.degree(), total)),
        );
        PermGroup::new(total, gens)
    }

    /// Restriction `G^Δ` to an invariant set, re-indexed by position in the
    /// sorted set.
    pub fn restrict(&self, delta: &[usize]) -> Result<PermGroup> {
        let mut sorted = delta.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut pos = vec![usize::MAX; self.degree()];
        for (i, &x) in sorted.iter().enumerate() {
            if x >= self.degree() {
                return Err(Error::PointOutOfRange {
                    point: x,
                    degree: self.degree(),
                });
            }
            pos[x] = i;
        }
        let mut gens = Vec::with_capacity(self.generators().len());
        for g in self.generators() {
            let mut images = Vec::with_capacity(sorted.len());
            for &x in &sorted {
                let y = pos[g.image(x)];
                if y == usize::MAX {
                    return Err(Error::NotInvariant);
                }
                images.push(y);
            }
            gens.push(Permutation::from_images_unchecked(images));
        }
        Ok(PermGroup::new(sorted.len(), gens))
    }

    /// Action on an ordered family of disjoint blocks.
    pub fn induced_action(&self, blocks: &[Vec<usize>]) -> Result<BlockAction> {
        BlockAction::new(self, blocks)
    }
}

/// The homomorphism from a group to the permutations of a block family.
#[derive(Clone, Debug)]
pub struct BlockAction {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<Option<usize>>,
    generator_images: Vec<(Permutation, Permutation)>,
    image: PermGroup,
}

impl BlockAction {
    fn new(group: &PermGroup, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut block_of = vec![None; group.degree()];
        let mut sorted_blocks = Vec::with_capacity(blocks.len());
        for (i, b) in blocks.iter().enumerate() {
            let mut b = b.clone();
            b.sort_unstable();
            for &x in &b {
                if x >= group.degree() {
                    return Err(Error::PointOutOfRange {
                        point: x,
                        degree: group.degree(),
                    });
                }
                if block_of[x].is_some() {
                    return Err(Error::NotABlockAction);
                }
                block_of[x] = Some(i);
            }
            sorted_blocks.push(b);
        }
        let mut action = BlockAction {
            blocks: sorted_blocks,
            block_of,
            generator_images: Vec::new(),
            image: PermGroup::trivial(blocks.len()),
        };
        let mut images = Vec::new();
        for g in group.generators() {
            let img = action.try_apply(g).ok_or(Error::NotABlockAction)?;
            images.push((g.clone(), img));
        }
        action.image = PermGroup::new(
            blocks.len(),
            images.iter().map(|(_, i)| i.clone()).collect(),
        );
        action.generator_images = images;
        Ok(action)
    }

    fn try_apply(&self, g: &Permutation) -> Option<Permutation> {
        let mut images = Vec::with_capacity(self.blocks.len());
        let mut hit = vec![false; self.blocks.len()];
        for b in &self.blocks {
            let target = match b.first() {
                Some(&x) => self.block_of[g.image(x)]?,
                None => return None,
            };
            let tb = &self.blocks[target];
            if tb.len() != b.len() || hit[target] {
                return None;
            }
            if b.iter().any(|&x| self.block_of[g.image(x)] != Some(target)) {
                return None;
            }
            hit[target] = true;
            images.push(target);
        }
        Some(Permutation::from_images_unchecked(images))
    }

    /// Image of any element of the source group.
    pub fn apply(&self, g: &Permutation) -> Result<Permutation> {
        self.try_apply(g).ok_or(Error::NotABlockAction)
    }

    pub fn image(&self) -> &PermGroup {
        &self.image
    }

    pub fn generator_images(&self) -> &[(Permutation, Permutation)] {
        &self.generator_images
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn p(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn direct_product_orders() {
        let c3 = PermGroup::new(3, vec![p(3, &[&[0, 1, 2]])]);
        let c5 = PermGroup::new(5, vec![p(5, &[&[0, 1, 2, 3, 4]])]);
        let prod = c3.direct_product(&c5);
        assert_eq!(prod.degree(), 8);
        assert_eq!(prod.order(), BigUint::from(15u32));
        assert!(prod.restrict(&[0, 1, 2]).unwrap().same_group(&c3));
        assert!(prod.restrict(&[3, 4, 5, 6, 7]).unwrap().same_group(&c5));

        let t = PermGroup::trivial(2);
        let tp = t.direct_product(&c5);
        assert_eq!(tp.order(), BigUint::from(5u32));
        assert_eq!(tp.orbit(0).unwrap(), vec![0]);
    }

    #[test]
    fn restriction() {
        let g = PermGroup::new(4, vec![p(4, &[&[0, 1], &[2, 3]])]);
        let r = g.restrict(&[0, 1]).unwrap();
        assert!(r.same_group(&PermGroup::new(2, vec![p(2, &[&[0, 1]])])));
        assert!(g.restrict(&[0, 1, 2, 3]).unwrap().same_group(&g));
        assert_eq!(g.restrict(&[0, 2]).unwrap_err(), Error::NotInvariant);
    }

    #[test]
    fn block_actions() {
        let g = PermGroup::new(
            6,
            vec![p(6, &[&[0, 2, 4], &[1, 3, 5]]), p(6, &[&[0, 1]])],
        );
        let singletons: Vec<Vec<usize>> = (0..6).map(|x| vec![x]).collect();
        let a = g.induced_action(&singletons).unwrap();
        assert!(a.image().same_group(&g));

        let whole = g.induced_action(&[vec![0, 1, 2, 3, 4, 5]]).unwrap();
        assert!(whole.image().is_trivial());

        let pairs = g
            .induced_action(&[vec![0, 1], vec![2, 3], vec![4, 5]])
            .unwrap();
        assert_eq!(pairs.image().order(), BigUint::from(3u32));
        let h = &g.generators()[0];
        assert_eq!(pairs.apply(h).unwrap(), p(3, &[&[0, 1, 2]]));

        assert_eq!(
            g.induced_action(&[vec![0, 2], vec![1, 3], vec![4, 5]])
                .unwrap_err(),
            Error::NotABlockAction
        );
    }
}
