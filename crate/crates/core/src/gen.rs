//! Instance generators: Cayley tournaments of odd-order groups and seeded
//! random colored tournaments.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::structures::{compact, is_k_spanning, min_spanning_k, ColoredDigraph, SpanningMode};

const SAMPLING_BUDGET: usize = 10_000;

/// A finite group of odd order on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OddGroup {
    /// `Z_n` with identity 0.
    Cyclic(usize),
    /// `table[a][b] = a·b`.
    Table(Vec<Vec<usize>>),
}

impl OddGroup {
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 || n.is_multiple_of(2) {
            return Err(Error::InvalidCayley(format!("group order {n} is not odd")));
        }
        Ok(OddGroup::Cyclic(n))
    }

    /// Validates the table as a group of odd order.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || n.is_multiple_of(2) {
            return Err(Error::InvalidCayley(format!("group order {n} is not odd")));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidCayley("table is not square over 0..n".into()));
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidCayley("no identity".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == e) {
                return Err(Error::InvalidCayley(format!("{a} has no inverse")));
            }
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidCayley("not associative".into()));
                    }
                }
            }
        }
        Ok(OddGroup::Table(table))
    }

    pub fn order(&self) -> usize {
        match self {
            OddGroup::Cyclic(n) => *n,
            OddGroup::Table(t) => t.len(),
        }
    }

    pub fn identity(&self) -> usize {
        match self {
            OddGroup::Cyclic(_) => 0,
            OddGroup::Table(t) => (0..t.len())
                .find(|&e| (0..t.len()).all(|a| t[e][a] == a))
                .unwrap(),
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self {
            OddGroup::Cyclic(n) => (a + b) % n,
            OddGroup::Table(t) => t[a][b],
        }
    }

    pub fn inverse(&self, a: usize) -> usize {
        match self {
            OddGroup::Cyclic(n) => (n - a) % n,
            OddGroup::Table(t) => {
                let e = self.identity();
                (0..t.len()).find(|&b| t[a][b] == e).unwrap()
            }
        }
    }

    /// Subgroup generated by `gens`, as a membership vector.
    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let n = self.order();
        let mut inside = vec![false; n];
        let e = self.identity();
        inside[e] = true;
        let mut stack = vec![e];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    stack.push(y);
                }
            }
        }
        inside
    }
}

fn check_connection_parts(group: &OddGroup, parts: &[Vec<usize>]) -> Result<Vec<Option<usize>>> {
    let n = group.order();
    let e = group.identity();
    let mut part_of: Vec<Option<usize>> = vec![None; n];
    for (i, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(Error::InvalidCayley(format!("part {i} is empty")));
        }
        for &a in part {
            if a >= n {
                return Err(Error::InvalidCayley(format!("{a} is not a group element")));
            }
            if a == e {
                return Err(Error::InvalidCayley("identity in connection set".into()));
            }
            if part_of[a].is_some() {
                return Err(Error::InvalidCayley(format!("{a} appears twice")));
            }
            part_of[a] = Some(i);
        }
    }
    for g in (0..n).filter(|&g| g != e) {
        let hits = part_of[g].is_some() as usize + part_of[group.inverse(g)].is_some() as usize;
        if hits != 1 {
            return Err(Error::InvalidCayley(format!(
                "connection set must contain exactly one of {g} and its inverse"
            )));
        }
    }
    Ok(part_of)
}

/// `Cay(G, A)` with arc `(x, x·a)` colored by the part containing `a`.
pub fn cayley_tournament(group: &OddGroup, parts: &[Vec<usize>]) -> Result<ColoredDigraph> {
    let part_of = check_connection_parts(group, parts)?;
    let n = group.order();
    let mut arcs = Vec::with_capacity(n * (n - 1) / 2);
    for x in 0..n {
        for (a, part) in part_of.iter().enumerate() {
            if let Some(i) = part {
                arcs.push((x, group.mul(x, a), *i));
            }
        }
    }
    ColoredDigraph::tournament(n, vec![0; n], arcs)
}

/// Whether the parts of size at most `k` generate the group.
pub fn is_spanning_connection(group: &OddGroup, parts: &[Vec<usize>], k: usize) -> Result<bool> {
    check_connection_parts(group, parts)?;
    let small: Vec<usize> = parts
        .iter()
        .filter(|p| p.len() <= k)
        .flatten()
        .copied()
        .collect();
    Ok(group.closure(&small).into_iter().all(|b| b))
}

/// Connection set of `Z_n` containing `g` or `n - g` for each `g`, chosen by
/// the low bits of `mask`.
pub fn circulant_connection_set(n: usize, mask: u64) -> Vec<usize> {
    (1..=n / 2)
        .map(|g| if mask >> (g - 1) & 1 == 0 { g } else { n - g })
        .collect()
}

/// Random `k`-spanning colored tournament on an odd number of vertices.
///
/// A circulant tournament is split into parts, some of them singletons;
/// arcs of the parts larger than `k` are then reoriented and recolored at
/// random among `num_extra_colors` fresh colors. Rejection-sampled until the
/// result is `k`-spanning.
pub fn random_k_spanning(n: usize, k: usize, num_extra_colors: usize, seed: u64) -> Result<ColoredDigraph> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidCayley(format!("{n} is even")));
    }
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLING_BUDGET {
        let mut a = circulant_connection_set(n, rng.gen());
        a.shuffle(&mut rng);
        let mut parts: Vec<Vec<usize>> = Vec::new();
        let mut rest = a.as_slice();
        while !rest.is_empty() {
            let size = if rng.gen_bool(0.5) {
                1
            } else {
                rng.gen_range(1..=rest.len())
            };
            parts.push(rest[..size].to_vec());
            rest = &rest[size..];
        }
        let base = cayley_tournament(&OddGroup::Cyclic(n), &parts)?;
        let q = parts.len();
        let mut arcs: Vec<(usize, usize, usize)> = Vec::new();
        for (u, v, c) in base.arcs() {
            if parts[c].len() <= k || num_extra_colors == 0 {
                arcs.push((u, v, c));
                continue;
            }
            let (u, v) = if rng.gen_bool(0.3) { (v, u) } else { (u, v) };
            let c = if rng.gen_bool(0.5) {
                q + rng.gen_range(0..num_extra_colors)
            } else {
                c
            };
            arcs.push((u, v, c));
        }
        let colors = compact(&arcs.iter().map(|a| a.2).collect::<Vec<_>>());
        let x = ColoredDigraph::tournament(
            n,
            vec![0; n],
            arcs.iter().zip(colors).map(|(&(u, v, _), c)| (u, v, c)),
        )?;
        if is_k_spanning(&x, k, SpanningMode::Strong)? {
            return Ok(x);
        }
    }
    Err(Error::SamplingBudget(SAMPLING_BUDGET))
}

/// Random colored tournament on any `n`, with up to `vertex_colors` and
/// `arc_colors` colors, rejection-sampled until it is `k`-spanning for some
/// `k`. Returns the least such `k`.
pub fn random_colored_tournament(
    n: usize,
    vertex_colors: usize,
    arc_colors: usize,
    seed: u64,
) -> Result<(ColoredDigraph, usize)> {
    if n == 2 {
        return Err(Error::InvalidDigraph("no tournament on 2 vertices is strongly connected".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLING_BUDGET {
        let x = random_tournament(&mut rng, n, vertex_colors, arc_colors)?;
        if let Some(k) = min_spanning_k(&x, SpanningMode::Strong) {
            return Ok((x, k));
        }
    }
    Err(Error::SamplingBudget(SAMPLING_BUDGET))
}

pub(crate) fn random_tournament<R: Rng>(
    rng: &mut R,
    n: usize,
    vertex_colors: usize,
    arc_colors: usize,
) -> Result<ColoredDigraph> {
    let vc: Vec<usize> = (0..n)
        .map(|_| rng.gen_range(0..vertex_colors.max(1)))
        .collect();
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let c = rng.gen_range(0..arc_colors.max(1));
            if rng.gen_bool(0.5) {
                arcs.push((u, v, c));
            } else {
                arcs.push((v, u, c));
            }
        }
    }
    let ac = compact(&arcs.iter().map(|a| a.2).collect::<Vec<_>>());
    ColoredDigraph::tournament(
        n,
        compact(&vc),
        arcs.iter().zip(ac).map(|(&(u, v, _), c)| (u, v, c)),
    )
}
