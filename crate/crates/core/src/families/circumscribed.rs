use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{gcd_normalize, rat_int, Int, ZVector};
use crate::lattice::{
    enumeration_bounds, for_each_box_point, is_lattice_free, is_maximal_lattice_free,
    lattice_points, max_facet_width, Width,
};
use crate::polyhedron::{Constraint, Polyhedron};

use super::{abs_le, is_nonzero, sq_norm};

/// Facet candidates for maximal lattice-free bodies `L` of width `m` with
/// `conv(L ∩ ℤ^d) = P`.
///
/// Every facet of such an `L` carries an integer point of `P`, so it reads
/// `⟨a, x⟩ ≤ max_P ⟨a, x⟩` with `a` primitive. Its width data is then
/// integral with `q = 1`, so the norm bound applies to `a` itself, and
/// `max_P − min_P ≤ m`.
pub fn circumscribed_candidates(p: &Polyhedron, m: u64) -> Result<Vec<Constraint>> {
    let bounds = enumeration_bounds(p, m)?;
    let d = p.dim();
    let r = bounds.norm_bound.sqrt();
    let lo = vec![-r.clone(); d];
    let hi = vec![r; d];
    let mm = rat_int(&Int::from(m));
    let mut out = Vec::new();
    let mut failure = None;
    for_each_box_point(&lo, &hi, |a| {
        if failure.is_some() || !is_nonzero(a) || sq_norm(a) > bounds.norm_bound {
            return;
        }
        if !gcd_normalize(a).map(|(_, g)| g.is_one()).unwrap_or(false) {
            return;
        }
        let (hi, lo) = match (p.maximize(a), p.minimize(a)) {
            (Ok(Some(h)), Ok(Some(l))) => (h, l),
            (Err(e), _) | (_, Err(e)) => {
                failure = Some(e);
                return;
            }
            _ => return,
        };
        if &hi - &lo > mm || !abs_le(&hi.to_integer(), &bounds.offset_bound) {
            return;
        }
        out.push(Constraint::new(a.clone(), hi).expect("nonzero normal"));
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(out)
}

/// All maximal lattice-free polytopes `L` with `conv(L ∩ ℤ^d) = P` and
/// `m(L) = m`, sorted by their canonical constraint lists.
pub fn enumerate_circumscribed(p: &Polyhedron, m: u64) -> Result<Vec<Polyhedron>> {
    let candidates = circumscribed_candidates(p, m)?;
    enumerate_from_candidates(p, m, &candidates)
}

/// The search behind [`enumerate_circumscribed`] over a given candidate
/// list. Subsets have at most `min(2^d, |P ∩ ℤ^d|)` members, since each
/// facet of a maximal body holds its own integer point; a subset with a
/// redundant member is not extended.
pub fn enumerate_from_candidates(p: &Polyhedron, m: u64, candidates: &[Constraint]) -> Result<Vec<Polyhedron>> {
    if p.is_empty() || !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let d = p.dim();
    let points = lattice_points(p)?;
    let max_size = points.len().min(1usize << d.min(16));
    let mut chosen: Vec<usize> = Vec::new();
    let mut found: Vec<Polyhedron> = Vec::new();
    search(p, m, candidates, &points, max_size, 0, &mut chosen, &mut found)?;
    found.sort_by(|a, b| a.hrep().constraints.cmp(&b.hrep().constraints));
    found.dedup();
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn search(
    p: &Polyhedron,
    m: u64,
    candidates: &[Constraint],
    points: &[ZVector],
    max_size: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    found: &mut Vec<Polyhedron>,
) -> Result<()> {
    for i in start..candidates.len() {
        chosen.push(i);
        let cs: Vec<Constraint> = chosen.iter().map(|&j| candidates[j].clone()).collect();
        let l = Polyhedron::from_constraints(p.dim(), cs)?;
        if l.facets().len() == chosen.len() {
            if l.is_bounded() && accept(p, m, &l, points)? {
                found.push(l);
            }
            if chosen.len() < max_size {
                search(p, m, candidates, points, max_size, i + 1, chosen, found)?;
            }
        }
        chosen.pop();
    }
    Ok(())
}

fn accept(p: &Polyhedron, m: u64, l: &Polyhedron, points: &[ZVector]) -> Result<bool> {
    debug_assert!(l.contains(p)?);
    if lattice_points(l)? != points {
        return Ok(false);
    }
    if max_facet_width(l)? != Width::Finite(m) {
        return Ok(false);
    }
    Ok(is_lattice_free(l)? && is_maximal_lattice_free(l)?)
}
