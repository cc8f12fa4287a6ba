use std::ops::RangeInclusive;

use super::{closure_with_cuts, Closure};
use crate::error::Result;
use crate::families::{relevant_splits, splits};
use crate::polyhedron::Polyhedron;

/// A finite family of bodies, given explicitly or by a generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CutFamily {
    Bodies(Vec<Polyhedron>),
    /// Splits with `‖a‖∞ ≤ max_norm`. Without an offset range, only the
    /// offsets whose split interior meets `P` are generated.
    Splits {
        max_norm: u64,
        offsets: Option<RangeInclusive<i64>>,
    },
}

impl CutFamily {
    /// The members relevant for `P`, in a deterministic order.
    pub fn expand(&self, p: &Polyhedron) -> Result<Vec<Polyhedron>> {
        match self {
            CutFamily::Bodies(b) => Ok(b.clone()),
            CutFamily::Splits {
                max_norm,
                offsets: Some(r),
            } => Ok(splits(p.dim(), *max_norm, r.clone())?
                .into_iter()
                .map(|s| s.body())
                .collect()),
            CutFamily::Splits {
                max_norm,
                offsets: None,
            } => Ok(relevant_splits(p, *max_norm)?
                .into_iter()
                .map(|s| s.body())
                .collect()),
        }
    }
}

/// Closure of `P` under a generated family, with the cut list indexed by
/// position in `family.expand(p)`.
pub fn closure_of_family(p: &Polyhedron, family: &CutFamily, workers: usize) -> Result<Closure> {
    closure_with_cuts(p, &family.expand(p)?, workers)
}
