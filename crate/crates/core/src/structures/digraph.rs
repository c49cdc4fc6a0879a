use crate::error::{Error, Result};

const NO_ARC: u32 = u32::MAX;

/// A digraph with ordered vertex-color and arc-color partitions.
///
/// Colors are contiguous indices starting at 0 and their integer order is
/// the linear order of the classes. Arcs are held in a dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColoredDigraph {
    n: usize,
    vertex_color: Vec<usize>,
    arcs: Vec<u32>,
    num_vertex_colors: usize,
    num_arc_colors: usize,
}

impl ColoredDigraph {
    /// Validates loops, duplicate arcs and color contiguity.
    pub fn new<I>(n: usize, vertex_color: Vec<usize>, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        if n == 0 {
            return Err(Error::InvalidDigraph("no vertices".into()));
        }
        if vertex_color.len() != n {
            return Err(Error::InvalidDigraph(format!(
                "expected {n} vertex colors, got {}",
                vertex_color.len()
            )));
        }
        let num_vertex_colors = check_contiguous(&vertex_color)
            .map_err(|c| Error::InvalidDigraph(format!("vertex color {c} unused")))?;
        let mut matrix = vec![NO_ARC; n * n];
        let mut colors = Vec::new();
        for (u, v, c) in arcs {
            if u >= n || v >= n {
                return Err(Error::InvalidDigraph(format!("arc {u} {v} out of range")));
            }
            if u == v {
                return Err(Error::InvalidDigraph(format!("loop at {u}")));
            }
            if matrix[u * n + v] != NO_ARC {
                return Err(Error::InvalidDigraph(format!("duplicate arc {u} {v}")));
            }
            matrix[u * n + v] = c as u32;
            colors.push(c);
        }
        let num_arc_colors = check_contiguous(&colors)
            .map_err(|c| Error::InvalidDigraph(format!("arc color {c} unused")))?;
        Ok(ColoredDigraph {
            n,
            vertex_color,
            arcs: matrix,
            num_vertex_colors,
            num_arc_colors,
        })
    }

    /// Like [`ColoredDigraph::new`] but also requires the tournament property.
    pub fn tournament<I>(n: usize, vertex_color: Vec<usize>, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        let g = Self::new(n, vertex_color, arcs)?;
        g.check_tournament()?;
        Ok(g)
    }

    /// Single vertex color, single arc color.
    pub fn uncolored_tournament(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        Self::tournament(n, vec![0; n], arcs.iter().map(|&(u, v)| (u, v, 0)))
    }

    pub fn check_tournament(&self) -> Result<()> {
        for u in 0..self.n {
            for v in u + 1..self.n {
                match (self.arc_color(u, v), self.arc_color(v, u)) {
                    (Some(_), Some(_)) => {
                        return Err(Error::NotATournament(format!("both arcs {u}<->{v}")))
                    }
                    (None, None) => {
                        return Err(Error::NotATournament(format!("no arc between {u} and {v}")))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    pub fn is_tournament(&self) -> bool {
        self.check_tournament().is_ok()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertex_color(&self, v: usize) -> usize {
        self.vertex_color[v]
    }

    pub fn vertex_colors(&self) -> &[usize] {
        &self.vertex_color
    }

    #[inline]
    pub fn arc_color(&self, u: usize, v: usize) -> Option<usize> {
        match self.arcs[u * self.n + v] {
            NO_ARC => None,
            c => Some(c as usize),
        }
    }

    /// Both directions of a pair packed into one comparable code.
    #[inline]
    pub(crate) fn pair_code(&self, u: usize, v: usize) -> u64 {
        let out = self.arcs[u * self.n + v].wrapping_add(1) as u64;
        let inc = self.arcs[v * self.n + u].wrapping_add(1) as u64;
        (out << 32) | inc
    }

    pub fn num_vertex_colors(&self) -> usize {
        self.num_vertex_colors
    }

    pub fn num_arc_colors(&self) -> usize {
        self.num_arc_colors
    }

    /// Arcs sorted by `(u, v)`.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (0..self.n).filter_map(move |v| self.arc_color(u, v).map(|c| (u, v, c)))
        })
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.iter().filter(|&&c| c != NO_ARC).count()
    }

    /// Vertex-color classes in color order, each sorted.
    pub fn vertex_classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.num_vertex_colors];
        for v in 0..self.n {
            classes[self.vertex_color[v]].push(v);
        }
        classes
    }

    pub fn vertex_class(&self, color: usize) -> Vec<usize> {
        (0..self.n).filter(|&v| self.vertex_color[v] == color).collect()
    }

    pub fn arc_class(&self, color: usize) -> Vec<(usize, usize)> {
        self.arcs()
            .filter(|&(_, _, c)| c == color)
            .map(|(u, v, _)| (u, v))
            .collect()
    }

    /// Same arcs, new vertex coloring.
    pub fn with_vertex_colors(&self, vertex_color: Vec<usize>) -> Result<Self> {
        ColoredDigraph::new(self.n, vertex_color, self.arcs())
    }

    /// Image under a relabeling `v -> sigma(v)`.
    pub fn relabel(&self, sigma: &crate::perm::Permutation) -> ColoredDigraph {
        assert_eq!(sigma.degree(), self.n);
        let n = self.n;
        let mut vertex_color = vec![0; n];
        let mut arcs = vec![NO_ARC; n * n];
        for u in 0..n {
            vertex_color[sigma.image(u)] = self.vertex_color[u];
            for v in 0..n {
                arcs[sigma.image(u) * n + sigma.image(v)] = self.arcs[u * n + v];
            }
        }
        ColoredDigraph {
            n,
            vertex_color,
            arcs,
            num_vertex_colors: self.num_vertex_colors,
            num_arc_colors: self.num_arc_colors,
        }
    }

    /// Whether `p` maps this digraph onto `other`, colors included.
    pub fn is_isomorphism(&self, other: &ColoredDigraph, p: &crate::perm::Permutation) -> bool {
        if self.n != other.n || p.degree() != self.n {
            return false;
        }
        (0..self.n).all(|u| {
            let pu = p.image(u);
            self.vertex_color[u] == other.vertex_color[pu]
                && (0..self.n).all(|v| {
                    self.arcs[u * self.n + v] == other.arcs[pu * self.n + p.image(v)]
                })
        })
    }

    pub fn is_automorphism(&self, p: &crate::perm::Permutation) -> bool {
        self.is_isomorphism(self, p)
    }
}

impl std::fmt::Debug for ColoredDigraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ColoredDigraph")
            .field("n", &self.n)
            .field("vertex_color", &self.vertex_color)
            .field("arcs", &self.arcs().collect::<Vec<_>>())
            .finish()
    }
}

/// Number of colors if `0..max` are all used, else the first unused color.
fn check_contiguous(colors: &[usize]) -> std::result::Result<usize, usize> {
    let count = colors.iter().max().map_or(0, |&m| m + 1);
    let mut used = vec![false; count];
    for &c in colors {
        used[c] = true;
    }
    match used.iter().position(|u| !u) {
        Some(c) => Err(c),
        None => Ok(count),
    }
}

/// Renumbers arbitrary labels to `0..k` preserving their relative order.
pub(crate) fn compact<T: Ord + Clone>(labels: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = labels.to_vec();
    sorted.sort();
    sorted.dedup();
    labels
        .iter()
        .map(|l| sorted.binary_search(l).unwrap())
        .collect()
}
