use num_traits::ToPrimitive;

use super::{classify_edges, par_map, remove_interior, EdgeClassification, PartitionSignature};
use crate::error::{Error, Result};
use crate::exact::{denominator_lcm, factorial, rat_int, Int};
use crate::lattice::max_facet_width;
use crate::polyhedron::Polyhedron;

/// `y_L = (h·m)! · (1/λ_1, …, 1/λ_s)` over the bisected edges of `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominanceVector {
    pub scale: Int,
    pub entries: Vec<Int>,
    pub signature: PartitionSignature,
}

/// Computes `y_L`, where `h` is the least common denominator of the vertex
/// coordinates of `P` and `m = m(L)`.
///
/// With `expected` given, the partition induced by `L` must match it.
pub fn dominance_vector(
    p: &Polyhedron,
    l: &Polyhedron,
    expected: Option<&PartitionSignature>,
) -> Result<DominanceVector> {
    let cls = classify_edges(p, l)?;
    if let Some(sig) = expected {
        if *sig != cls.signature {
            return Err(Error::PartitionMismatch);
        }
    }
    let m = max_facet_width(l)?.finite().ok_or(Error::InfiniteWidth)?;
    let h = denominator_lcm(p.vertices().iter().flatten());
    let hm = (h * Int::from(m))
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument("h·m too large".into()))?;
    let scale = factorial(hm);
    let entries = cls
        .bisected
        .iter()
        .map(|b| {
            let y = rat_int(&scale) / &b.lambda;
            if y.is_integer() {
                Ok(y.to_integer())
            } else {
                Err(Error::Invariant(format!("(hm)!/λ = {y} is not an integer")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DominanceVector {
        scale,
        entries,
        signature: cls.signature,
    })
}

/// `R_L(P)` with the edge data that allows comparison without inclusion
/// tests when partitions agree.
#[derive(Clone, Debug)]
pub struct Dominator {
    classification: Option<EdgeClassification>,
    hull: Polyhedron,
}

impl Dominator {
    pub fn new(p: &Polyhedron, l: &Polyhedron) -> Result<Self> {
        let edge_route = p.is_line_free()
            && l.dim() == p.dim()
            && l.is_full_dimensional()
            && !l.facets().is_empty()
            && l.recession_is_linear();
        let classification = if edge_route && !p.is_empty() {
            Some(classify_edges(p, l)?)
        } else {
            None
        };
        Ok(Dominator {
            classification,
            hull: remove_interior(p, l)?,
        })
    }

    pub fn hull(&self) -> &Polyhedron {
        &self.hull
    }

    /// `R_self(P) ⊆ R_other(P)`.
    pub fn dominates(&self, other: &Dominator) -> Result<bool> {
        if let (Some(a), Some(b)) = (&self.classification, &other.classification) {
            if a.signature == b.signature {
                return Ok(a.bisected.iter().zip(&b.bisected).all(|(x, y)| x.lambda >= y.lambda));
            }
        }
        other.hull.contains(&self.hull)
    }
}

/// `R_{L'}(P) ⊆ R_L(P)`.
pub fn dominates(p: &Polyhedron, l_prime: &Polyhedron, l: &Polyhedron) -> Result<bool> {
    Dominator::new(p, l_prime)?.dominates(&Dominator::new(p, l)?)
}

/// Indices of an antichain `ℒ'` dominating every member, found greedily in
/// input order: a member is skipped if a kept one dominates it, and evicts
/// every kept member it dominates.
pub fn minimal_dominating_subfamily(p: &Polyhedron, family: &[Polyhedron]) -> Result<Vec<usize>> {
    minimal_dominating_subfamily_with(p, family, 1)
}

pub fn minimal_dominating_subfamily_with(
    p: &Polyhedron,
    family: &[Polyhedron],
    workers: usize,
) -> Result<Vec<usize>> {
    let doms = par_map(family, workers, |l| Dominator::new(p, l))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut kept: Vec<usize> = Vec::new();
    'next: for i in 0..doms.len() {
        for &j in &kept {
            if doms[j].dominates(&doms[i])? {
                continue 'next;
            }
        }
        let mut survivors = Vec::with_capacity(kept.len() + 1);
        for &j in &kept {
            if !doms[i].dominates(&doms[j])? {
                survivors.push(j);
            }
        }
        survivors.push(i);
        kept = survivors;
    }
    kept.sort_unstable();
    Ok(kept)
}
