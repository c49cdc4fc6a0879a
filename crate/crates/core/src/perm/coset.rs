use super::{BigOrder, PermGroup, Permutation};
use num_traits::Zero;

/// Right coset `G·rep`, or the empty set.
#[derive(Clone, Debug)]
pub enum Coset {
    Empty,
    NonEmpty {
        representative: Permutation,
        group: PermGroup,
    },
}

impl Coset {
    pub fn new(group: PermGroup, representative: Permutation) -> Self {
        assert_eq!(group.degree(), representative.degree());
        Coset::NonEmpty {
            representative,
            group,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Coset::Empty)
    }

    pub fn representative(&self) -> Option<&Permutation> {
        match self {
            Coset::Empty => None,
            Coset::NonEmpty { representative, .. } => Some(representative),
        }
    }

    pub fn group(&self) -> Option<&PermGroup> {
        match self {
            Coset::Empty => None,
            Coset::NonEmpty { group, .. } => Some(group),
        }
    }

    pub fn len(&self) -> BigOrder {
        match self {
            Coset::Empty => BigOrder::zero(),
            Coset::NonEmpty { group, .. } => group.order(),
        }
    }

    /// `p ∈ G·rep` iff `p·rep⁻¹ ∈ G`.
    pub fn contains(&self, p: &Permutation) -> bool {
        match self {
            Coset::Empty => false,
            Coset::NonEmpty {
                representative,
                group,
            } => {
                p.degree() == representative.degree()
                    && group.contains(&p.then(&representative.inverse()))
            }
        }
    }

    pub fn elements(&self) -> Vec<Permutation> {
        match self {
            Coset::Empty => Vec::new(),
            Coset::NonEmpty {
                representative,
                group,
            } => group
                .elements()
                .into_iter()
                .map(|g| g.then(representative))
                .collect(),
        }
    }
}
