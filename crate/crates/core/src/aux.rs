//! One extension step: from a group `K` on a vertex class `Γ` to a group on
//! a class `Δ` that is reached from `Γ` by a small arc class `D`.
//!
//! Either every local tournament `X(γ) = X[γD]` is isomorphic to a fixed
//! one and the step yields a solvable group on `Δ` containing `Aut(X)^Δ`,
//! or the local tournaments (or the coverage of `Δ`) split the classes and
//! the step yields a strictly finer colored digraph instead.

use crate::error::{Error, Result};
use crate::exec::{map_slice, ExecMode};
use crate::perm::{BlockAction, PermGroup, Permutation};
use crate::search::{
    aut_hypergraph_cap_with, automorphism_group_with, tournament_iso_with, SearchStats,
};
use crate::structures::{induced, ColoredDigraph, Hypergraph, Induced};
use crate::wl2::wl2_with;

/// The pair `(Γ, Δ)` with the relation `D ⊆ Γ × Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartite {
    gamma: Vec<usize>,
    delta: Vec<usize>,
    pairs: Vec<(usize, usize)>,
    out_sets: Vec<Vec<usize>>,
}

impl Bipartite {
    /// Only the shape is checked here: sorted distinct nonempty disjoint
    /// sides and `D ⊆ Γ × Δ`.
    pub fn new(gamma: &[usize], delta: &[usize], pairs: &[(usize, usize)]) -> Result<Self> {
        let gamma = sorted_set(gamma, "Γ")?;
        let delta = sorted_set(delta, "Δ")?;
        if gamma.iter().any(|g| delta.binary_search(g).is_ok()) {
            return Err(Error::InvalidAuxInput("Γ and Δ intersect".into()));
        }
        let mut pairs = pairs.to_vec();
        pairs.sort_unstable();
        pairs.dedup();
        if pairs.is_empty() {
            return Err(Error::InvalidAuxInput("D is empty".into()));
        }
        let mut out_sets = vec![Vec::new(); gamma.len()];
        for &(g, d) in &pairs {
            let gi = gamma
                .binary_search(&g)
                .map_err(|_| Error::InvalidAuxInput(format!("({g}, {d}) not in Γ × Δ")))?;
            if delta.binary_search(&d).is_err() {
                return Err(Error::InvalidAuxInput(format!("({g}, {d}) not in Γ × Δ")));
            }
            out_sets[gi].push(d);
        }
        Ok(Bipartite {
            gamma,
            delta,
            pairs,
            out_sets,
        })
    }

    pub fn gamma(&self) -> &[usize] {
        &self.gamma
    }

    pub fn delta(&self) -> &[usize] {
        &self.delta
    }

    /// `D` in lexicographic order; a pair's position is its point in the
    /// domain of the wreath group.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// `γD` for the `i`-th element of `Γ`.
    pub fn out_set(&self, i: usize) -> &[usize] {
        &self.out_sets[i]
    }

    pub fn pair_index(&self, g: usize, d: usize) -> Option<usize> {
        self.pairs.binary_search(&(g, d)).ok()
    }

    /// Elements of `Δ` with no `D`-predecessor.
    pub fn uncovered(&self) -> Vec<usize> {
        let mut hit = vec![false; self.delta.len()];
        for &(_, d) in &self.pairs {
            hit[self.delta.binary_search(&d).unwrap()] = true;
        }
        self.delta
            .iter()
            .zip(hit)
            .filter(|(_, h)| !h)
            .map(|(&d, _)| d)
            .collect()
    }
}

fn sorted_set(s: &[usize], name: &str) -> Result<Vec<usize>> {
    let mut v = s.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.is_empty() {
        return Err(Error::InvalidAuxInput(format!("{name} is empty")));
    }
    if v.len() != s.len() {
        return Err(Error::InvalidAuxInput(format!("{name} has repeated vertices")));
    }
    Ok(v)
}

/// `X[γD]` together with the original arc colors it uses. Two local
/// tournaments are compared only when their palettes agree, which makes
/// the color compaction inside [`induced`] the same map on both.
#[derive(Clone, Debug)]
pub struct LocalTournament {
    pub induced: Induced,
    pub palette: Vec<usize>,
}

/// `X(γ)` for the `i`-th element of `Γ`; `None` when `γD` is empty.
pub fn local_tournament(x: &ColoredDigraph, block: &Bipartite, i: usize) -> Result<Option<LocalTournament>> {
    let out = block.out_set(i);
    if out.is_empty() {
        return Ok(None);
    }
    let ind = induced(x, out)?;
    ind.graph.check_tournament()?;
    let mut palette: Vec<usize> = Vec::new();
    for &u in out {
        for &v in out {
            if let Some(c) = x.arc_color(u, v) {
                palette.push(c);
            }
        }
    }
    palette.sort_unstable();
    palette.dedup();
    Ok(Some(LocalTournament {
        induced: ind,
        palette,
    }))
}

/// Isomorphism data for the local tournaments.
#[derive(Clone, Debug)]
pub struct IsoFamily {
    /// Position of `γ₀` in `Γ`.
    pub reference: usize,
    /// `Aut(X(γ₀))` on local indices.
    pub base_group: PermGroup,
    /// `h_γ : X(γ₀) → X(γ)` on local indices, for `γ` isomorphic to `γ₀`.
    pub representatives: Vec<Option<Permutation>>,
    /// The partition `π` of `Γ` by isomorphism type of `X(γ)`, as sets of
    /// vertices; the `γ` with empty `γD` form one cell.
    pub classes: Vec<Vec<usize>>,
}

fn local_iso(
    a: &LocalTournament,
    b: &LocalTournament,
    stats: &mut SearchStats,
) -> Result<Option<Permutation>> {
    if a.palette != b.palette || a.induced.graph.n() != b.induced.graph.n() {
        return Ok(None);
    }
    Ok(tournament_iso_with(&a.induced.graph, &b.induced.graph, stats)?
        .representative()
        .cloned())
}

pub fn iso_family(x: &ColoredDigraph, block: &Bipartite, mode: ExecMode, stats: &mut SearchStats) -> Result<IsoFamily> {
    let m = block.gamma().len();
    let locals = (0..m)
        .map(|i| local_tournament(x, block, i))
        .collect::<Result<Vec<_>>>()?;
    let reference = 0;
    let base = locals[reference].as_ref();
    let matched: Vec<(Result<Option<Permutation>>, SearchStats)> = map_slice(mode, &locals, |l| {
        let mut st = SearchStats::default();
        let r = match (base, l) {
            (Some(a), Some(b)) => local_iso(a, b, &mut st),
            _ => Ok(None),
        };
        (r, st)
    });
    let mut representatives = Vec::with_capacity(m);
    for (r, st) in matched {
        stats.merge(st);
        representatives.push(r?);
    }
    let base_group = match base {
        Some(a) => automorphism_group_with(&a.induced.graph, stats),
        None => PermGroup::trivial(1),
    };

    // Cells of π, each with the position of its first member.
    let mut cells: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut empty: Vec<usize> = Vec::new();
    for i in 0..m {
        let g = block.gamma()[i];
        let Some(li) = &locals[i] else {
            empty.push(g);
            continue;
        };
        if representatives[i].is_some() {
            match cells.first_mut() {
                Some((0, cell)) => cell.push(g),
                _ => cells.insert(0, (0, vec![g])),
            }
            continue;
        }
        let mut placed = false;
        for (first, cell) in cells.iter_mut() {
            if *first == reference || locals[*first].is_none() {
                continue;
            }
            if local_iso(locals[*first].as_ref().unwrap(), li, stats)?.is_some() {
                cell.push(g);
                placed = true;
                break;
            }
        }
        if !placed {
            cells.push((i, vec![g]));
        }
    }
    let mut classes: Vec<Vec<usize>> = cells.into_iter().map(|(_, c)| c).collect();
    if !empty.is_empty() {
        classes.push(empty);
    }
    classes.sort_by_key(|c| c[0]);
    Ok(IsoFamily {
        reference,
        base_group,
        representatives,
        classes,
    })
}

/// `W = A ≀_Γ K` acting on the positions of `D`: the base group has one copy
/// of `A = Aut(X(γ₀))` per `γ`, carried over by `h_γ`, and `K` permutes the
/// copies through the representatives.
pub fn wreath_group(block: &Bipartite, family: &IsoFamily, k: &PermGroup) -> Result<PermGroup> {
    let m = block.gamma().len();
    if k.degree() != m {
        return Err(Error::DegreeMismatch(k.degree(), m));
    }
    let reps: Vec<&Permutation> = family
        .representatives
        .iter()
        .map(|r| r.as_ref())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InvalidAuxInput("local tournaments are not all isomorphic".into()))?;
    let size = block.pairs().len();
    let index = |gi: usize, local: usize| {
        block
            .pair_index(block.gamma()[gi], block.out_set(gi)[local])
            .unwrap()
    };
    let mut gens = Vec::new();
    for (gi, h) in reps.iter().enumerate() {
        let h_inv = h.inverse();
        for u in family.base_group.generators() {
            let c = h_inv.then(u).then(h);
            let mut images: Vec<usize> = (0..size).collect();
            for j in 0..c.degree() {
                images[index(gi, j)] = index(gi, c.image(j));
            }
            gens.push(Permutation::from_images_unchecked(images));
        }
    }
    for g in k.generators() {
        let mut images = vec![0usize; size];
        for (gi, h) in reps.iter().enumerate() {
            let target = g.image(gi);
            let f = h.inverse().then(reps[target]);
            for j in 0..f.degree() {
                images[index(gi, j)] = index(target, f.image(j));
            }
        }
        gens.push(Permutation::from_images_unchecked(images));
    }
    Ok(PermGroup::new(size, gens))
}

/// Hypergraph on the positions of `D` with one hyperedge `{(γ, δ) ∈ D}` per
/// covered `δ`, in ascending order of `δ`. Returns the covered `δ` too.
pub fn pair_hypergraph(block: &Bipartite) -> Result<(Hypergraph, Vec<usize>)> {
    let mut edges: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, &(_, d)) in block.pairs().iter().enumerate() {
        match edges.iter_mut().find(|(e, _)| *e == d) {
            Some((_, e)) => e.push(i),
            None => edges.push((d, vec![i])),
        }
    }
    edges.sort_by_key(|e| e.0);
    let deltas = edges.iter().map(|e| e.0).collect();
    let h = Hypergraph::new(block.pairs().len(), edges.into_iter().map(|e| e.1).collect())?;
    Ok((h, deltas))
}

#[derive(Clone, Debug)]
pub enum AuxOutput {
    /// A coloring strictly finer than the input, with the same
    /// automorphism group.
    Refined(ColoredDigraph),
    /// `L ≤ W` on the positions of `D`, its action on the hyperedges and the
    /// image of that action, read as a group on the positions of `Δ`.
    Group {
        l: PermGroup,
        action: BlockAction,
        image: PermGroup,
    },
}

fn check_inputs(x: &ColoredDigraph, block: &Bipartite, k: &PermGroup) -> Result<()> {
    for side in [block.gamma(), block.delta()] {
        if let Some(&v) = side.iter().find(|&&v| v >= x.n()) {
            return Err(Error::PointOutOfRange {
                point: v,
                degree: x.n(),
            });
        }
        if x.vertex_class(x.vertex_color(side[0])) != side {
            return Err(Error::InvalidAuxInput("Γ and Δ must be vertex classes".into()));
        }
    }
    let (g0, d0) = block.pairs()[0];
    let c = x
        .arc_color(g0, d0)
        .ok_or_else(|| Error::InvalidAuxInput(format!("({g0}, {d0}) is not an arc")))?;
    for &g in block.gamma() {
        for &d in block.delta() {
            let in_d = block.pair_index(g, d).is_some();
            if in_d != (x.arc_color(g, d) == Some(c)) {
                return Err(Error::InvalidAuxInput(
                    "D must be an arc class restricted to Γ × Δ".into(),
                ));
            }
        }
    }
    induced(x, block.delta())?.graph.check_tournament()?;
    if k.degree() != block.gamma().len() {
        return Err(Error::DegreeMismatch(k.degree(), block.gamma().len()));
    }
    if !k.is_solvable() {
        return Err(Error::NotSolvable);
    }
    Ok(())
}

/// Runs the extension step on `x`. `k` acts on the positions of the sorted
/// `Γ` and is assumed to contain `Aut(X)^Γ`.
pub fn aux(
    x: &ColoredDigraph,
    gamma: &[usize],
    delta: &[usize],
    d: &[(usize, usize)],
    k: &PermGroup,
) -> Result<AuxOutput> {
    aux_with(x, gamma, delta, d, k, ExecMode::default(), &mut SearchStats::default())
}

pub fn aux_with(
    x: &ColoredDigraph,
    gamma: &[usize],
    delta: &[usize],
    d: &[(usize, usize)],
    k: &PermGroup,
    mode: ExecMode,
    stats: &mut SearchStats,
) -> Result<AuxOutput> {
    let block = Bipartite::new(gamma, delta, d)?;
    check_inputs(x, &block, k)?;
    let family = iso_family(x, &block, mode, stats)?;
    let uncovered = block.uncovered();
    if family.classes.len() > 1 || !uncovered.is_empty() {
        let mut tau = family.classes.clone();
        if !uncovered.is_empty() {
            tau.push(
                block
                    .delta()
                    .iter()
                    .copied()
                    .filter(|v| uncovered.binary_search(v).is_err())
                    .collect(),
            );
        }
        log::debug!("aux: refining with {} cells", tau.len());
        return Ok(AuxOutput::Refined(wl2_with(x, &tau, mode)?));
    }
    let w = wreath_group(&block, &family, k)?;
    let (h, _) = pair_hypergraph(&block)?;
    let l = aut_hypergraph_cap_with(&h, &w, stats)?;
    let action = l.induced_action(h.edges())?;
    let image = action.image().clone();
    Ok(AuxOutput::Group { l, action, image })
}
