//! Automorphism groups and isomorphism cosets of `k`-spanning colored
//! tournaments.
//!
//! [`aut_spanning`] grows a set `Σ` of vertex classes together with a
//! solvable group on each class that contains the restriction of `Aut(X)`,
//! one [`aux`] step at a time. When a step refines the coloring instead,
//! the refinement is lifted to all of `X` and the loop restarts. The final
//! product group caps `Aut(X)`.
//!
//! [`iso_spanning`] reduces to automorphisms of a gadget on `3n + 1`
//! vertices, one gadget per candidate image of a fixed vertex.

use crate::aux::{aux_with, AuxOutput};
use crate::error::{Error, Result};
use crate::exec::{find_first, ExecMode};
use crate::perm::{Coset, PermGroup, Permutation};
use crate::search::{aut_digraph_cap_with, automorphism_group_with, SearchStats};
use crate::structures::{
    compact, induced, is_k_spanning, valencies, ColoredDigraph, Induced, SpanningMode,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub mode: ExecMode,
    /// Maximum number of restarts; `None` means `n²`.
    pub restart_budget: Option<usize>,
}

/// Covered set `Σ` and the group on it, kept as a direct product of one
/// factor per vertex class.
#[derive(Clone, Debug)]
pub struct LoopState {
    sigma: Vec<usize>,
    factors: Vec<(Vec<usize>, PermGroup)>,
}

impl LoopState {
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// Each factor acts on the positions of its sorted class.
    pub fn factors(&self) -> &[(Vec<usize>, PermGroup)] {
        &self.factors
    }

    pub fn factor(&self, class: &[usize]) -> Option<&PermGroup> {
        self.factors
            .iter()
            .find(|(c, _)| c.as_slice() == class)
            .map(|(_, g)| g)
    }

    /// Whether the restriction of `a` to `Σ` lies in `K`. `a` must map every
    /// class of `Σ` onto itself.
    pub fn contains_restriction(&self, a: &Permutation) -> bool {
        self.factors.iter().all(|(class, g)| {
            let images: Option<Vec<usize>> = class
                .iter()
                .map(|&v| class.binary_search(&a.image(v)).ok())
                .collect();
            match images.map(Permutation::from_images) {
                Some(Ok(p)) => g.contains(&p),
                _ => false,
            }
        })
    }

    /// `K` on the sorted `Σ`.
    pub fn k_on_sigma(&self) -> PermGroup {
        let gens = self
            .factors
            .iter()
            .flat_map(|(class, g)| {
                let domain: Vec<usize> = class
                    .iter()
                    .map(|v| self.sigma.binary_search(v).unwrap())
                    .collect();
                g.generators()
                    .iter()
                    .map(move |p| p.lift(&domain, self.sigma.len()))
                    .collect::<Vec<_>>()
            })
            .collect();
        PermGroup::new(self.sigma.len(), gens)
    }

    fn k_on(&self, n: usize) -> PermGroup {
        let gens = self
            .factors
            .iter()
            .flat_map(|(class, g)| g.generators().iter().map(move |p| p.lift(class, n)))
            .collect();
        PermGroup::new(n, gens)
    }
}

/// Progress reported to an observer of [`aut_spanning_run`].
pub enum LoopEvent<'a> {
    /// Start of an iteration of the inner loop.
    Iteration {
        x: &'a ColoredDigraph,
        state: &'a LoopState,
    },
    /// An extension step, in the indices of the subdigraph on `Γ ∪ Δ`.
    Step {
        x: &'a ColoredDigraph,
        input: &'a Induced,
        gamma: &'a [usize],
        delta: &'a [usize],
        d: &'a [(usize, usize)],
        k: &'a PermGroup,
        output: &'a AuxOutput,
    },
    Restart {
        before: &'a ColoredDigraph,
        after: &'a ColoredDigraph,
    },
}

#[derive(Clone, Debug)]
pub struct AutRun {
    pub group: PermGroup,
    pub restarts: usize,
    pub stats: SearchStats,
    /// The coloring the loop finished on.
    pub refined: ColoredDigraph,
}

/// A vertex class `Γ ⊆ Σ`, a class `Δ` outside `Σ`, and the part of a small
/// arc class that runs from `Γ` to `Δ`. The choice is the least
/// `(arc color, color of Γ, color of Δ)`.
pub type SpanningClasses = (Vec<usize>, Vec<usize>, Vec<(usize, usize)>);

pub fn find_spanning_classes(
    x: &ColoredDigraph,
    sigma: &[usize],
    k: usize,
) -> Result<Option<SpanningClasses>> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let n = x.n();
    let mut in_sigma = vec![false; n];
    for &v in sigma {
        if v >= n {
            return Err(Error::PointOutOfRange { point: v, degree: n });
        }
        in_sigma[v] = true;
    }
    let val = valencies(x);
    let best = x
        .arcs()
        .filter(|&(u, v, c)| in_sigma[u] && !in_sigma[v] && val[c] <= k)
        .map(|(u, v, c)| (c, x.vertex_color(u), x.vertex_color(v)))
        .min();
    let Some((c, gc, dc)) = best else {
        return Ok(None);
    };
    let gamma = x.vertex_class(gc);
    let delta = x.vertex_class(dc);
    let d = gamma
        .iter()
        .flat_map(|&g| delta.iter().map(move |&v| (g, v)))
        .filter(|&(g, v)| x.arc_color(g, v) == Some(c))
        .collect();
    Ok(Some((gamma, delta, d)))
}

/// `Aut(X)` for a colored tournament whose small arc classes (maximal
/// valency at most `k`) form a strongly connected digraph.
pub fn aut_spanning(x: &ColoredDigraph, k: usize) -> Result<PermGroup> {
    Ok(aut_spanning_run(x, k, SpanningMode::Strong, &RunOptions::default(), None)?.group)
}

/// Recolors `x` by the rank of `(old color, color in y)`, where `y` lives on
/// the vertices `back_map` and the other vertices get a fixed second entry.
fn lift_vertex_colors(x: &ColoredDigraph, y: &ColoredDigraph, back_map: &[usize]) -> Result<ColoredDigraph> {
    let mut second = vec![0usize; x.n()];
    for (i, &v) in back_map.iter().enumerate() {
        second[v] = y.vertex_color(i);
    }
    let keys: Vec<(usize, usize)> = (0..x.n()).map(|v| (x.vertex_color(v), second[v])).collect();
    x.with_vertex_colors(compact(&keys))
}

pub fn aut_spanning_run(
    x: &ColoredDigraph,
    k: usize,
    spanning: SpanningMode,
    opts: &RunOptions,
    mut observer: Option<&mut dyn FnMut(LoopEvent<'_>)>,
) -> Result<AutRun> {
    x.check_tournament()?;
    if !is_k_spanning(x, k, spanning)? {
        return Err(Error::NotSpanning { k });
    }
    let n = x.n();
    let budget = opts.restart_budget.unwrap_or(n * n);
    let mut stats = SearchStats::default();
    let mut current = x.clone();
    let mut restarts = 0;
    'restart: loop {
        let classes = current.vertex_classes();
        let start = match spanning {
            SpanningMode::Strong => classes
                .iter()
                .enumerate()
                .min_by_key(|(c, class)| (class.len(), *c))
                .map(|(_, class)| class.clone())
                .unwrap(),
            SpanningMode::ReachableFrom(s) => current.vertex_class(current.vertex_color(s)),
        };
        let k0 = automorphism_group_with(&induced(&current, &start)?.graph, &mut stats);
        let mut state = LoopState {
            sigma: start.clone(),
            factors: vec![(start, k0)],
        };
        while state.sigma.len() < n {
            if let Some(obs) = observer.as_mut() {
                obs(LoopEvent::Iteration {
                    x: &current,
                    state: &state,
                });
            }
            let (gamma, delta, d) = find_spanning_classes(&current, &state.sigma, k)?
                .ok_or(Error::NotSpanning { k })?;
            let mut both = gamma.clone();
            both.extend_from_slice(&delta);
            let y = induced(&current, &both)?;
            let local = |v: usize| y.position(v).unwrap();
            let gamma_y: Vec<usize> = gamma.iter().map(|&v| local(v)).collect();
            let delta_y: Vec<usize> = delta.iter().map(|&v| local(v)).collect();
            let d_y: Vec<(usize, usize)> = d.iter().map(|&(g, v)| (local(g), local(v))).collect();
            let k_gamma = state.factor(&gamma).expect("Γ is a class of Σ").clone();
            let out = aux_with(&y.graph, &gamma_y, &delta_y, &d_y, &k_gamma, opts.mode, &mut stats)?;
            if let Some(obs) = observer.as_mut() {
                obs(LoopEvent::Step {
                    x: &current,
                    input: &y,
                    gamma: &gamma_y,
                    delta: &delta_y,
                    d: &d_y,
                    k: &k_gamma,
                    output: &out,
                });
            }
            match out {
                AuxOutput::Refined(refined) => {
                    let next = lift_vertex_colors(&current, &refined, &y.back_map)?;
                    if next.num_vertex_colors() <= current.num_vertex_colors() {
                        return Err(Error::Incompatible("refinement did not split a class".into()));
                    }
                    restarts += 1;
                    log::debug!("restart {restarts}: {} vertex classes", next.num_vertex_colors());
                    if let Some(obs) = observer.as_mut() {
                        obs(LoopEvent::Restart {
                            before: &current,
                            after: &next,
                        });
                    }
                    if restarts > budget {
                        return Err(Error::RestartBudget(budget));
                    }
                    current = next;
                    continue 'restart;
                }
                AuxOutput::Group { image, .. } => {
                    state.sigma.extend_from_slice(&delta);
                    state.sigma.sort_unstable();
                    state.factors.push((delta, image));
                }
            }
        }
        let k_all = state.k_on(n);
        let group = aut_digraph_cap_with(&current, &k_all, &mut stats)?;
        return Ok(AutRun {
            group,
            restarts,
            stats,
            refined: current,
        });
    }
}

/// The gadget for `X`, `Y` and a pair `(α, β)`: copies `Ω` of `X`, `Δ` of
/// `Y` and `Ω'` of `X`, joined `Ω → Δ → Ω' → Ω`, and a new vertex `μ` that
/// beats everything, with `μ → α, β, α'` in a class of its own.
#[derive(Clone, Debug)]
pub struct Gadget {
    pub graph: ColoredDigraph,
    /// Vertices of `X`; `Ω` is `0..n`, `Δ` is `n..2n`, `Ω'` is `2n..3n`.
    pub n: usize,
    pub alpha: usize,
    pub beta: usize,
    pub alpha_prime: usize,
    pub mu: usize,
}

pub fn build_gadget(x: &ColoredDigraph, y: &ColoredDigraph, alpha: usize, beta: usize) -> Result<Gadget> {
    let n = x.n();
    if y.n() != n {
        return Err(Error::Incompatible(format!("{n} and {} vertices", y.n())));
    }
    if x.num_vertex_colors() != y.num_vertex_colors() || x.num_arc_colors() != y.num_arc_colors() {
        return Err(Error::Incompatible("different numbers of classes".into()));
    }
    for v in [alpha, beta] {
        if v >= n {
            return Err(Error::PointOutOfRange { point: v, degree: n });
        }
    }
    let q = x.num_arc_colors();
    let mu = 3 * n;
    let (a, b, a2) = (alpha, n + beta, 2 * n + alpha);
    let mut arcs: Vec<(usize, usize, usize)> = Vec::with_capacity((3 * n + 1) * 3 * n / 2);
    for (u, v, c) in x.arcs() {
        arcs.push((u, v, c));
        arcs.push((2 * n + u, 2 * n + v, c));
    }
    for (u, v, c) in y.arcs() {
        arcs.push((n + u, n + v, c));
    }
    for i in 0..n {
        for j in 0..n {
            arcs.push((i, n + j, q));
            arcs.push((n + i, 2 * n + j, q));
            arcs.push((2 * n + i, j, q));
        }
    }
    for v in 0..3 * n {
        let c = if v == a || v == b || v == a2 { q + 1 } else { q + 2 };
        arcs.push((mu, v, c));
    }
    let mut vc: Vec<usize> = x.vertex_colors().to_vec();
    vc.extend_from_slice(y.vertex_colors());
    vc.extend_from_slice(x.vertex_colors());
    vc.push(x.num_vertex_colors());
    let graph = ColoredDigraph::tournament(3 * n + 1, vc, arcs)?;
    Ok(Gadget {
        graph,
        n,
        alpha: a,
        beta: b,
        alpha_prime: a2,
        mu,
    })
}

/// Some element of `group` with `α ↦ β ↦ α' ↦ α`.
pub fn three_cycle_element(group: &PermGroup, g: &Gadget) -> Result<Option<Permutation>> {
    let (a, b, a2) = (g.alpha, g.beta, g.alpha_prime);
    let Some(t1) = group.transporter(a, b)? else {
        return Ok(None);
    };
    let t1_inv = t1.inverse();
    let Some(t2) = group.stabilizer(&[a])?.transporter(b, t1_inv.image(a2))? else {
        return Ok(None);
    };
    let target = t2.inverse().image(t1_inv.image(a));
    let Some(t3) = group.stabilizer(&[a, b])?.transporter(a2, target)? else {
        return Ok(None);
    };
    Ok(Some(t3.then(&t2).then(&t1)))
}

/// Same vertex and arc class sizes and the same maximal valency per arc
/// class. Isomorphic digraphs agree on all of these.
pub fn same_profile(x: &ColoredDigraph, y: &ColoredDigraph) -> bool {
    fn sizes(g: &ColoredDigraph) -> (Vec<usize>, Vec<usize>) {
        let mut vs = vec![0; g.num_vertex_colors()];
        for v in 0..g.n() {
            vs[g.vertex_color(v)] += 1;
        }
        let mut arcs = vec![0; g.num_arc_colors()];
        for (_, _, c) in g.arcs() {
            arcs[c] += 1;
        }
        (vs, arcs)
    }
    x.n() == y.n() && sizes(x) == sizes(y) && valencies(x) == valencies(y)
}

#[derive(Clone, Debug, Default)]
pub struct IsoOptions {
    pub run: RunOptions,
    /// Process every `β` instead of stopping at the first success.
    pub exhaustive: bool,
}

#[derive(Clone, Debug)]
pub struct IsoRun {
    pub coset: Coset,
    /// The isomorphism found for each processed `β`; in the default mode
    /// only the least successful `β` and those before it are filled in.
    pub per_beta: Vec<Option<Permutation>>,
    pub restarts: usize,
    pub stats: SearchStats,
}

/// `ISO(X, Y)` for `k`-spanning colored tournaments.
pub fn iso_spanning(x: &ColoredDigraph, y: &ColoredDigraph, k: usize) -> Result<Coset> {
    Ok(iso_spanning_run(x, y, k, &IsoOptions::default())?.coset)
}

struct BetaOutcome {
    iso: Option<Permutation>,
    restarts: usize,
    stats: SearchStats,
}

fn try_beta(x: &ColoredDigraph, y: &ColoredDigraph, k: usize, beta: usize, opts: &RunOptions) -> Result<BetaOutcome> {
    let gadget = build_gadget(x, y, 0, beta)?;
    let inner = RunOptions {
        mode: ExecMode::Sequential,
        ..*opts
    };
    let run = aut_spanning_run(
        &gadget.graph,
        k.max(3),
        SpanningMode::ReachableFrom(gadget.mu),
        &inner,
        None,
    )?;
    let iso = match three_cycle_element(&run.group, &gadget)? {
        Some(f) => {
            let n = gadget.n;
            let images: Vec<usize> = (0..n).map(|v| f.image(v).wrapping_sub(n)).collect();
            let p = Permutation::from_images(images)
                .map_err(|_| Error::Incompatible("gadget element does not map Ω onto Δ".into()))?;
            if !x.is_isomorphism(y, &p) {
                return Err(Error::Incompatible("gadget element is not an isomorphism".into()));
            }
            Some(p)
        }
        None => None,
    };
    Ok(BetaOutcome {
        iso,
        restarts: run.restarts,
        stats: run.stats,
    })
}

pub fn iso_spanning_run(x: &ColoredDigraph, y: &ColoredDigraph, k: usize, opts: &IsoOptions) -> Result<IsoRun> {
    x.check_tournament()?;
    y.check_tournament()?;
    for g in [x, y] {
        if !is_k_spanning(g, k, SpanningMode::Strong)? {
            return Err(Error::NotSpanning { k });
        }
    }
    let n = x.n();
    if !same_profile(x, y) {
        return Ok(IsoRun {
            coset: Coset::Empty,
            per_beta: Vec::new(),
            restarts: 0,
            stats: SearchStats::default(),
        });
    }
    let mut stats = SearchStats::default();
    let mut restarts = 0;
    let mut per_beta: Vec<Option<Permutation>> = Vec::new();
    let first = if opts.exhaustive {
        let outcomes = crate::exec::map_range(opts.run.mode, n, |b| try_beta(x, y, k, b, &opts.run));
        for o in outcomes {
            let o = o?;
            stats.merge(o.stats);
            restarts += o.restarts;
            per_beta.push(o.iso);
        }
        per_beta.iter().flatten().next().cloned()
    } else {
        let found = find_first(opts.run.mode, n, |b| match try_beta(x, y, k, b, &opts.run) {
            Ok(o) if o.iso.is_none() => None,
            other => Some(other),
        });
        match found {
            Some((b, outcome)) => {
                let o = outcome?;
                stats.merge(o.stats);
                restarts += o.restarts;
                per_beta = vec![None; b];
                per_beta.push(o.iso.clone());
                o.iso
            }
            None => {
                per_beta = vec![None; n];
                None
            }
        }
    };
    let coset = match first {
        Some(rep) => {
            let run = aut_spanning_run(x, k, SpanningMode::Strong, &opts.run, None)?;
            stats.merge(run.stats);
            restarts += run.restarts;
            let rep = if x == y { Permutation::identity(n) } else { rep };
            Coset::new(run.group, rep)
        }
        None => Coset::Empty,
    };
    Ok(IsoRun {
        coset,
        per_beta,
        restarts,
        stats,
    })
}
