//! Automorphism groups and isomorphism cosets of colored tournaments whose
//! arc classes of small maximal valency span the vertex set.
//!
//! ```
//! use spantourn::driver::{aut_spanning, iso_spanning};
//! use spantourn::gen::{cayley_tournament, OddGroup};
//!
//! let x = cayley_tournament(&OddGroup::Cyclic(7), &[vec![1], vec![2], vec![4]]).unwrap();
//! assert_eq!(aut_spanning(&x, 1).unwrap().order(), 7u32.into());
//! assert!(!iso_spanning(&x, &x, 1).unwrap().is_empty());
//! ```

pub mod aux;
pub mod ctf;
pub mod driver;
pub mod error;
pub mod exec;
pub mod gen;
pub mod perm;
pub mod search;
pub mod structures;
pub mod wl2;

pub use ctf::{emit_ctf, parse_ctf};
pub use driver::{aut_spanning, iso_spanning};
pub use error::{Error, Result};
pub use exec::ExecMode;
pub use perm::{BigOrder, Coset, PermGroup, Permutation};
pub use structures::ColoredDigraph;
