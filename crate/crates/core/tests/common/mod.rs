//! Seeded instance corpus shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spantourn::gen::random_colored_tournament;
use spantourn::search::brute_iso;
use spantourn::structures::{is_k_spanning, min_spanning_k, SpanningMode};
use spantourn::{ColoredDigraph, Permutation};

pub const SAMPLE_CAP: usize = 500;
pub const RANDOM_INSTANCES: usize = 200;

#[derive(Clone, Debug)]
pub struct Instance {
    pub x: ColoredDigraph,
    pub k: usize,
}

/// Restricted growth strings of length `len`, i.e. set partitions with
/// blocks numbered by first occurrence.
pub fn restricted_growth(len: usize, max_blocks: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, len: usize, max_blocks: usize, used: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for b in 0..(used + 1).min(max_blocks) {
            prefix.push(b);
            go(prefix, len, max_blocks, used.max(b + 1), out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), len, max_blocks.max(1), 0, &mut out);
    out
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Tournament with pair `i` of [`pairs`] reversed when bit `i` of `mask`
/// is set. Colors must already be contiguous.
pub fn build(n: usize, mask: u64, arc_colors: &[usize], vertex_colors: &[usize]) -> ColoredDigraph {
    let arcs = pairs(n).into_iter().enumerate().map(|(i, (u, v))| {
        if mask >> i & 1 == 0 {
            (u, v, arc_colors[i])
        } else {
            (v, u, arc_colors[i])
        }
    });
    ColoredDigraph::tournament(n, vertex_colors.to_vec(), arcs).unwrap()
}

/// Colored tournaments on at most `max_n` vertices that are `k`-spanning
/// for some `k ≤ n`. Every (orientation, arc partition, vertex partition)
/// triple is listed when there are at most [`SAMPLE_CAP`] of them, and
/// [`SAMPLE_CAP`] seeded samples are drawn otherwise.
pub fn small_corpus(max_n: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for n in 1..=max_n {
        let m = n * (n - 1) / 2;
        let arc_parts = restricted_growth(m, m);
        let vertex_parts = restricted_growth(n, n);
        let total = (1u128 << m) * arc_parts.len() as u128 * vertex_parts.len() as u128;
        let mut candidates: Vec<ColoredDigraph> = Vec::new();
        if total <= SAMPLE_CAP as u128 {
            for mask in 0..1u64 << m {
                for a in &arc_parts {
                    for v in &vertex_parts {
                        candidates.push(build(n, mask, a, v));
                    }
                }
            }
        } else {
            for _ in 0..SAMPLE_CAP {
                let mask = rng.gen::<u64>() & ((1u64 << m) - 1);
                let a = &arc_parts[rng.gen_range(0..arc_parts.len())];
                let v = &vertex_parts[rng.gen_range(0..vertex_parts.len())];
                candidates.push(build(n, mask, a, v));
            }
        }
        for x in candidates {
            if let Some(k) = min_spanning_k(&x, SpanningMode::Strong) {
                if k <= n {
                    out.push(Instance { x, k });
                }
            }
        }
    }
    out
}

/// Seeded random instances with `6 ≤ n ≤ 9`.
pub fn random_corpus(count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ffee);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(6..=9);
            let (x, k) = random_colored_tournament(
                n,
                rng.gen_range(1..=3),
                rng.gen_range(1..=5),
                1000 + i as u64,
            )
            .unwrap();
            Instance { x, k }
        })
        .collect()
}

pub fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        images.swap(i, rng.gen_range(0..=i));
    }
    Permutation::from_images(images).unwrap()
}

/// Reverses some directed triangle whose three arcs share a color. Every
/// vertex keeps its out-degree in every arc class.
pub fn reverse_triangle<R: Rng>(rng: &mut R, x: &ColoredDigraph) -> Option<ColoredDigraph> {
    let n = x.n();
    let mut triangles = Vec::new();
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if u < v && u < w {
                    if let (Some(a), Some(b), Some(c)) = (x.arc_color(u, v), x.arc_color(v, w), x.arc_color(w, u)) {
                        if a == b && b == c {
                            triangles.push((u, v, w));
                        }
                    }
                }
            }
        }
    }
    if triangles.is_empty() {
        return None;
    }
    let (u, v, w) = triangles[rng.gen_range(0..triangles.len())];
    let flipped = [(u, v), (v, w), (w, u)];
    let arcs = x.arcs().map(|(a, b, c)| {
        if flipped.contains(&(a, b)) {
            (b, a, c)
        } else {
            (a, b, c)
        }
    });
    ColoredDigraph::tournament(n, x.vertex_colors().to_vec(), arcs).ok()
}

#[derive(Clone, Debug)]
pub struct Pair {
    pub x: ColoredDigraph,
    pub y: ColoredDigraph,
    pub k: usize,
    pub isomorphic: bool,
}

fn spanning_k(x: &ColoredDigraph, y: &ColoredDigraph) -> Option<usize> {
    let k = min_spanning_k(x, SpanningMode::Strong)?.max(min_spanning_k(y, SpanningMode::Strong)?);
    (is_k_spanning(x, k, SpanningMode::Strong).ok()? && is_k_spanning(y, k, SpanningMode::Strong).ok()?)
        .then_some(k)
}

/// `count` isomorphic pairs `(X, X^σ)` and `count` non-isomorphic pairs on
/// at most `max_n` vertices. Half of the non-isomorphic pairs differ by a
/// reversed triangle and so share every class size and valency.
pub fn pair_corpus(count: usize, max_n: usize) -> Vec<Pair> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xbeef);
    let sizes: Vec<usize> = (1..=max_n).filter(|&n| n != 2).collect();
    let mut out = Vec::new();
    let mut seed = 5000u64;
    while out.len() < count {
        seed += 1;
        let n = sizes[rng.gen_range(0..sizes.len())];
        let (x, k) = random_colored_tournament(n, rng.gen_range(1..=2), rng.gen_range(1..=4), seed).unwrap();
        let y = x.relabel(&random_perm(&mut rng, n));
        out.push(Pair {
            x,
            y,
            k,
            isomorphic: true,
        });
    }
    let mut negatives = 0;
    let mut attempts = 0;
    while negatives < count {
        attempts += 1;
        assert!(attempts < 1_000_000, "could not build non-isomorphic pairs");
        seed += 1;
        let n = sizes[rng.gen_range(1..sizes.len())];
        let (x, _) = random_colored_tournament(n, rng.gen_range(1..=2), rng.gen_range(1..=3), seed).unwrap();
        let y = if negatives % 2 == 0 {
            match reverse_triangle(&mut rng, &x) {
                Some(y) => y.relabel(&random_perm(&mut rng, n)),
                None => continue,
            }
        } else {
            random_colored_tournament(n, x.num_vertex_colors(), x.num_arc_colors(), seed + 7_000_000)
                .unwrap()
                .0
        };
        let Some(k) = spanning_k(&x, &y) else {
            continue;
        };
        if !brute_iso(&x, &y, 9).unwrap().is_empty() {
            continue;
        }
        out.push(Pair {
            x,
            y,
            k,
            isomorphic: false,
        });
        negatives += 1;
    }
    out
}

pub fn sorted(mut v: Vec<Permutation>) -> Vec<Permutation> {
    v.sort_by(|a, b| a.images().cmp(b.images()));
    v
}
