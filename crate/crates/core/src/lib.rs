//! Exact lattice-free cuts, closures and max-facet-width for rational
//! polyhedra.

pub mod error;
pub mod cut;
pub mod exact;
pub mod families;
pub mod hnf;
pub mod io;
pub mod lattice;
pub mod polyhedron;

pub use error::{Error, Result};

// The guide's listings run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/polyhedra.md")]
    mod polyhedra {}
    #[doc = include_str!("../../../book/src/width.md")]
    mod width {}
    #[doc = include_str!("../../../book/src/removal.md")]
    mod removal {}
    #[doc = include_str!("../../../book/src/dominance.md")]
    mod dominance {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
