use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A bijection of `{0..n-1}` acting on the right: `x^(pq) = (x^p)^q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::PointOutOfRange { point: x, degree });
                }
                if touched[x] {
                    return Err(Error::NotAPermutation(format!("cycles overlap at {x}")));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    #[inline]
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    /// `self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse()
            .then(&other.inverse())
            .then(self)
            .then(other)
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i != x)
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Shifts the permutation onto `offset..offset+degree` of a larger domain.
    pub fn embed(&self, offset: usize, total: usize) -> Permutation {
        assert!(offset + self.degree() <= total);
        let mut images: Vec<usize> = (0..total).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = offset + x;
        }
        Permutation { images }
    }

    /// Permutation on `domain` points (a sorted subset of a larger domain of
    /// size `total`) lifted to the larger domain, identity elsewhere.
    pub fn lift(&self, domain: &[usize], total: usize) -> Permutation {
        assert_eq!(domain.len(), self.degree());
        let mut images: Vec<usize> = (0..total).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[domain[i]] = domain[x];
        }
        Permutation { images }
    }

    /// One-line image list, e.g. `p: 2 0 1`.
    pub fn to_line(&self) -> String {
        let mut s = String::from("p:");
        for x in &self.images {
            s.push(' ');
            s.push_str(&x.to_string());
        }
        s
    }
}

impl Mul<&Permutation> for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix("p:")
            .ok_or_else(|| Error::NotAPermutation(s.to_string()))?;
        let images = body
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::NotAPermutation(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn image_chase(p: &Permutation, q: &Permutation) -> Vec<usize> {
        (0..p.degree()).map(|x| q.image(p.image(x))).collect()
    }

    #[test]
    fn compose_identity() {
        let p = Permutation::from_cycles(4, &[&[0, 2, 3]]).unwrap();
        assert_eq!(Permutation::identity(4).compose(&p).unwrap(), p);
    }

    #[test]
    fn compose_inverse_pair() {
        let p = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let q = Permutation::from_cycles(3, &[&[0, 2, 1]]).unwrap();
        assert!(p.compose(&q).unwrap().is_identity());
    }

    #[test]
    fn compose_transpositions_right_action() {
        // 0 -> 1 -> 2, 1 -> 0 -> 0, 2 -> 2 -> 1
        let p = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let q = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let r = p.compose(&q).unwrap();
        assert_eq!(r.images(), image_chase(&p, &q).as_slice());
        assert_eq!(r.images(), &[2, 0, 1]);
        assert_eq!(r, Permutation::from_cycles(3, &[&[0, 2, 1]]).unwrap());
    }

    #[test]
    fn compose_degree_mismatch() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert_eq!(p.compose(&q), Err(Error::DegreeMismatch(3, 4)));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn line_and_cycle_formats() {
        let p = Permutation::from_images(vec![2, 0, 1, 3]).unwrap();
        assert_eq!(p.to_line(), "p: 2 0 1 3");
        assert_eq!(p.to_string(), "(0 2 1)");
        assert_eq!("p: 2 0 1 3".parse::<Permutation>().unwrap(), p);
        assert_eq!(Permutation::identity(2).to_string(), "()");
    }

    #[test]
    fn pow_and_commutator() {
        let c = Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        assert!(c.pow(5).is_identity());
        assert_eq!(c.pow(2), c.then(&c));
        assert!(c.commutator(&c.pow(3)).is_identity());
    }
}
