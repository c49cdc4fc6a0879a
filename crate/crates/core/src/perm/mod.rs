//! Permutations and permutation groups.
//!
//! Points act on the right throughout: `x^(pq) = (x^p)^q`, so
//! [`Permutation::compose`] applies its receiver first.

mod action;
mod coset;
mod group;
mod permutation;

pub use action::BlockAction;
pub use coset::Coset;
pub use group::{BigOrder, PermGroup};
pub use permutation::Permutation;
