//! Integer points, lattice-freeness, maximality and max-facet-width.

mod bounds;
mod equivalence;

pub use bounds::{enumeration_bounds, EnumerationBounds};
pub use equivalence::{zd_equivalent, ZdWitness};

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{ceil, floor, rat_int, to_rational, Int, ZVector};
use crate::hnf::LatticeChart;
use crate::polyhedron::{Constraint, Polyhedron};

/// A max-facet-width value: a natural number or `+∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Width {
    Finite(u64),
    Infinite,
}

impl Width {
    pub fn finite(self) -> Option<u64> {
        match self {
            Width::Finite(m) => Some(m),
            Width::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Width::Finite(_))
    }
}

impl fmt::Display for Width {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Width::Finite(m) => write!(f, "{m}"),
            Width::Infinite => write!(f, "inf"),
        }
    }
}

/// Calls `visit` on every integer point of the box `∏ [lo_i, hi_i]`, in
/// lexicographic order.
pub(crate) fn for_each_box_point(lo: &[Int], hi: &[Int], mut visit: impl FnMut(&ZVector)) {
    let d = lo.len();
    if (0..d).any(|i| lo[i] > hi[i]) {
        return;
    }
    let mut cur: ZVector = lo.to_vec();
    loop {
        visit(&cur);
        let mut i = d;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                cur[i + 1..d].clone_from_slice(&lo[i + 1..d]);
                break;
            }
        }
    }
}

/// `P ∩ ℤ^d` for a polytope, sorted lexicographically.
pub fn lattice_points(p: &Polyhedron) -> Result<Vec<ZVector>> {
    if p.is_empty() {
        return Ok(Vec::new());
    }
    if !p.is_bounded() {
        return Err(Error::Unbounded);
    }
    let d = p.dim();
    let lo: ZVector = (0..d)
        .map(|i| ceil(p.vertices().iter().map(|v| &v[i]).min().expect("nonempty")))
        .collect();
    let hi: ZVector = (0..d)
        .map(|i| floor(p.vertices().iter().map(|v| &v[i]).max().expect("nonempty")))
        .collect();
    let mut out = Vec::new();
    for_each_box_point(&lo, &hi, |z| {
        if p.contains_point(&to_rational(z)) {
            out.push(z.clone());
        }
    });
    Ok(out)
}

/// Is there an integer point satisfying every constraint strictly?
///
/// Integer points with `⟨a, z⟩ < b` are exactly those with
/// `⟨a, z⟩ ≤ ⌈b⌉ − 1`, so this is integer feasibility of a tightened system.
/// Lines are quotiented out by a unimodular chart; for the remaining rays
/// it suffices to search `conv(V) + Σ [0,1]·r_j`.
fn has_interior_lattice_point(l: &Polyhedron) -> Result<bool> {
    if l.is_empty() || !l.is_full_dimensional() {
        return Ok(false);
    }
    let chart = LatticeChart::new(l.lines(), l.dim())?;
    let qdim = l.dim() - chart.lineality_dim();
    if qdim == 0 {
        return Ok(true);
    }
    let tightened = l
        .constraints()
        .iter()
        .map(|c| {
            let b = rat_int(&(ceil(c.bound()) - Int::one()));
            Constraint::new(chart.quotient_normal(c.normal()), b)
        })
        .collect::<Result<Vec<_>>>()?;
    let q = Polyhedron::from_constraints(qdim, tightened)?;
    if q.is_empty() {
        return Ok(false);
    }
    let lo: ZVector = (0..qdim)
        .map(|i| {
            let v = q.vertices().iter().map(|v| &v[i]).min().expect("nonempty");
            let r: Int = q.rays().iter().map(|r| r[i].clone().min(Int::zero())).sum();
            floor(v) + r
        })
        .collect();
    let hi: ZVector = (0..qdim)
        .map(|i| {
            let v = q.vertices().iter().map(|v| &v[i]).max().expect("nonempty");
            let r: Int = q.rays().iter().map(|r| r[i].clone().max(Int::zero())).sum();
            ceil(v) + r
        })
        .collect();
    let mut found = false;
    for_each_box_point(&lo, &hi, |z| {
        if !found && q.contains_point(&to_rational(z)) {
            found = true;
        }
    });
    Ok(found)
}

/// `int(L) ∩ ℤ^d = ∅` for a `d`-dimensional polyhedron. Empty or
/// lower-dimensional sets are not lattice-free bodies and give `false`.
pub fn is_lattice_free(l: &Polyhedron) -> Result<bool> {
    if l.is_empty() || !l.is_full_dimensional() {
        return Ok(false);
    }
    Ok(!has_interior_lattice_point(l)?)
}

/// Lovász's facet test: a lattice-free polyhedron is maximal iff the
/// relative interior of every facet holds an integer point. Unbounded
/// bodies must have a linear recession cone and are tested on their
/// bounded factor.
pub fn is_maximal_lattice_free(l: &Polyhedron) -> Result<bool> {
    if !is_lattice_free(l)? {
        return Err(Error::NotLatticeFree);
    }
    if !l.recession_is_linear() {
        return Ok(false);
    }
    let factor = bounded_factor(l)?;
    let points = lattice_points(&factor.body)?;
    let facets = factor.body.facets();
    Ok((0..facets.len()).all(|f| {
        points.iter().any(|z| {
            let x = to_rational(z);
            facets[f].is_tight(&x)
                && facets
                    .iter()
                    .enumerate()
                    .all(|(g, c)| g == f || c.contains_strictly(&x))
        })
    }))
}

/// `L = Zᵀ(ℝ^k × body)` for a polyhedron with linear recession cone.
#[derive(Clone, Debug)]
pub struct BoundedFactor {
    pub chart: LatticeChart,
    pub body: Polyhedron,
}

/// Splits off the lineality space of `L` by a unimodular chart.
pub fn bounded_factor(l: &Polyhedron) -> Result<BoundedFactor> {
    if l.is_empty() {
        return Err(Error::Empty);
    }
    if !l.recession_is_linear() {
        return Err(Error::Unbounded);
    }
    let chart = LatticeChart::new(l.lines(), l.dim())?;
    let qdim = l.dim() - chart.lineality_dim();
    let cs = l
        .constraints()
        .iter()
        .map(|c| Constraint::new(chart.quotient_normal(c.normal()), c.bound().clone()))
        .collect::<Result<Vec<_>>>()?;
    let body = Polyhedron::from_constraints(qdim, cs)?;
    debug_assert!(body.is_bounded());
    Ok(BoundedFactor { chart, body })
}

/// One pair `b − m ≤ ⟨a, x⟩ ≤ b` of a width representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slab {
    pub normal: ZVector,
    pub upper: Int,
}

/// Minimal max-facet-width representation of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthRepresentation {
    pub width: u64,
    pub slabs: Vec<Slab>,
}

/// Per-facet requirement `⌈q_F · (β_F − min_L ⟨a_F, x⟩)⌉`, where
/// `β_F = p/q_F` is the facet's right-hand side in lowest terms.
fn facet_requirement(l: &Polyhedron, f: &Constraint) -> Result<(Int, Int)> {
    let q = f.bound().denom().clone();
    let min = l
        .minimize(f.normal())?
        .ok_or_else(|| Error::Invariant("facet direction unbounded below".into()))?;
    let req = ceil(&((f.bound() - min) * rat_int(&q)));
    Ok((q, req))
}

/// A width-minimal representation `L = ∩ {b_i − m ≤ ⟨a_i, x⟩ ≤ b_i}` with
/// integral data, or `None` when `m(L) = +∞`.
pub fn width_representation(l: &Polyhedron) -> Result<Option<WidthRepresentation>> {
    if l.is_empty() || !l.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    if l.facets().is_empty() || !l.recession_is_linear() {
        return Ok(None);
    }
    let mut width = Int::zero();
    let mut slabs = Vec::with_capacity(l.facets().len());
    for f in l.facets() {
        let (q, req) = facet_requirement(l, f)?;
        width = width.max(req);
        slabs.push(Slab {
            normal: f.normal().iter().map(|a| a * &q).collect(),
            upper: (f.bound() * rat_int(&q)).to_integer(),
        });
    }
    let width = width
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument("width exceeds u64".into()))?;
    Ok(Some(WidthRepresentation { width, slabs }))
}

/// Max-facet-width `m(L)`.
pub fn max_facet_width(l: &Polyhedron) -> Result<Width> {
    Ok(match width_representation(l)? {
        Some(r) => Width::Finite(r.width),
        None => Width::Infinite,
    })
}

/// `sup` of member widths; the empty family has width 0.
pub fn family_width<'a, I: IntoIterator<Item = &'a Polyhedron>>(family: I) -> Result<Width> {
    let mut w = Width::Finite(0);
    for l in family {
        w = w.max(max_facet_width(l)?);
    }
    Ok(w)
}

/// A validated lattice-free body with write-once caches.
#[derive(Debug)]
pub struct LatticeFreeBody {
    body: Polyhedron,
    width: OnceLock<Width>,
    points: OnceLock<Option<Vec<ZVector>>>,
}

impl LatticeFreeBody {
    pub fn new(body: Polyhedron) -> Result<Self> {
        if !body.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        if !is_lattice_free(&body)? {
            return Err(Error::NotLatticeFree);
        }
        Ok(LatticeFreeBody {
            body,
            width: OnceLock::new(),
            points: OnceLock::new(),
        })
    }

    pub fn body(&self) -> &Polyhedron {
        &self.body
    }

    pub fn into_body(self) -> Polyhedron {
        self.body
    }

    pub fn width(&self) -> Width {
        *self
            .width
            .get_or_init(|| max_facet_width(&self.body).expect("full-dimensional by construction"))
    }

    /// `L ∩ ℤ^d`, or `None` for unbounded bodies.
    pub fn lattice_points(&self) -> Option<&[ZVector]> {
        self.points
            .get_or_init(|| lattice_points(&self.body).ok())
            .as_deref()
    }

    pub fn is_maximal(&self) -> bool {
        is_maximal_lattice_free(&self.body).expect("lattice-free by construction")
    }
}

impl Clone for LatticeFreeBody {
    fn clone(&self) -> Self {
        LatticeFreeBody {
            body: self.body.clone(),
            width: self.width.clone(),
            points: self.points.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{qvec, rat, zvec};

    fn split(a: &[i64], i: i64) -> Polyhedron {
        Polyhedron::from_constraints(
            a.len(),
            vec![
                Constraint::from_i64(a, rat(i, 1)),
                Constraint::from_i64(&a.iter().map(|x| -x).collect::<Vec<_>>(), rat(1 - i, 1)),
            ],
        )
        .unwrap()
    }

    fn cross(d: usize) -> Polyhedron {
        // |2x_1 − 1| + … + |2x_d − 1| ≤ d
        let mut cs = Vec::new();
        for mask in 0..(1u32 << d) {
            let a: Vec<i64> = (0..d).map(|j| if mask >> j & 1 == 1 { -1 } else { 1 }).collect();
            let s: i64 = a.iter().sum();
            cs.push(Constraint::from_i64(&a, rat(d as i64 + s, 2)));
        }
        Polyhedron::from_constraints(d, cs).unwrap()
    }

    fn square(lo: (i64, i64), hi: (i64, i64)) -> Polyhedron {
        Polyhedron::cuboid(&[rat(lo.0, lo.1), rat(lo.0, lo.1)], &[rat(hi.0, hi.1), rat(hi.0, hi.1)]).unwrap()
    }

    #[test]
    fn box_enumeration_order() {
        let mut seen = Vec::new();
        for_each_box_point(&zvec(&[0, 0]), &zvec(&[1, 1]), |z| seen.push(z.clone()));
        assert_eq!(seen, vec![zvec(&[0, 0]), zvec(&[0, 1]), zvec(&[1, 0]), zvec(&[1, 1])]);
    }

    #[test]
    fn lattice_points_examples() {
        let pts = lattice_points(&square((0, 1), (1, 1))).unwrap();
        assert_eq!(pts, vec![zvec(&[0, 0]), zvec(&[0, 1]), zvec(&[1, 0]), zvec(&[1, 1])]);
        assert_eq!(lattice_points(&cross(2)).unwrap(), pts);
        assert_eq!(lattice_points(&split(&[1, 0], 1)), Err(Error::Unbounded));
    }

    #[test]
    fn lattice_freeness() {
        assert!(is_lattice_free(&split(&[1, 0], 1)).unwrap());
        assert!(!is_lattice_free(&square((-1, 2), (3, 2))).unwrap());
        assert!(is_lattice_free(&cross(3)).unwrap());
        // unbounded with non-linear recession cone: {0 ≤ x1 ≤ 1/2, x2 ≥ 0}
        let strip = Polyhedron::from_constraints(
            2,
            vec![
                Constraint::from_i64(&[1, 0], rat(1, 2)),
                Constraint::from_i64(&[-1, 0], rat(0, 1)),
                Constraint::from_i64(&[0, -1], rat(0, 1)),
            ],
        )
        .unwrap();
        assert!(is_lattice_free(&strip).unwrap());
        // a wedge that eventually swallows integer points
        let wedge = Polyhedron::from_constraints(
            2,
            vec![
                Constraint::from_i64(&[-2, 1], rat(0, 1)),
                Constraint::from_i64(&[3, -1], rat(0, 1)),
                Constraint::from_i64(&[-1, 0], rat(-1, 10)),
            ],
        )
        .unwrap();
        assert!(!is_lattice_free(&wedge).unwrap());
        assert!(!is_lattice_free(&Polyhedron::universe(2)).unwrap());
    }

    #[test]
    fn maximality() {
        assert!(is_maximal_lattice_free(&split(&[1, 0], 1)).unwrap());
        assert!(!is_maximal_lattice_free(&square((0, 1), (1, 1))).unwrap());
        assert!(is_maximal_lattice_free(&cross(2)).unwrap());
        assert!(is_maximal_lattice_free(&cross(3)).unwrap());
        assert_eq!(
            is_maximal_lattice_free(&square((-1, 2), (3, 2))),
            Err(Error::NotLatticeFree)
        );
        // split with a skew direction
        assert!(is_maximal_lattice_free(&split(&[2, 3], 4)).unwrap());
    }

    #[test]
    fn width_examples() {
        assert_eq!(max_facet_width(&split(&[1, 0], 1)).unwrap(), Width::Finite(1));
        assert_eq!(max_facet_width(&split(&[1, -2], -3)).unwrap(), Width::Finite(1));
        let thin = Polyhedron::from_constraints(
            2,
            vec![
                Constraint::from_i64(&[1, 0], rat(1, 2)),
                Constraint::from_i64(&[-1, 0], rat(0, 1)),
            ],
        )
        .unwrap();
        assert_eq!(max_facet_width(&thin).unwrap(), Width::Finite(1));
        let half = Polyhedron::from_constraints(2, vec![Constraint::from_i64(&[1, 0], rat(0, 1))]).unwrap();
        assert_eq!(max_facet_width(&half).unwrap(), Width::Infinite);
        assert_eq!(max_facet_width(&Polyhedron::universe(2)).unwrap(), Width::Infinite);
        assert_eq!(max_facet_width(&cross(2)).unwrap(), Width::Finite(2));
        assert_eq!(max_facet_width(&square((0, 1), (2, 1))).unwrap(), Width::Finite(2));
    }

    #[test]
    fn family_widths() {
        assert_eq!(family_width(std::iter::empty()).unwrap(), Width::Finite(0));
        let fam = [split(&[1, 1], 0), square((0, 1), (2, 1))];
        assert_eq!(family_width(&fam).unwrap(), Width::Finite(2));
    }

    #[test]
    fn representation_reproduces_body() {
        let tri = Polyhedron::polytope(
            2,
            vec![qvec(&[(1, 2), (0, 1)]), qvec(&[(1, 2), (1, 1)]), qvec(&[(3, 2), (1, 2)])],
        )
        .unwrap();
        let rep = width_representation(&tri).unwrap().unwrap();
        let m = Int::from(rep.width);
        let mut cs = Vec::new();
        for s in &rep.slabs {
            cs.push(Constraint::new(s.normal.clone(), rat_int(&s.upper)).unwrap());
            let neg: ZVector = s.normal.iter().map(|x| -x).collect();
            cs.push(Constraint::new(neg, rat_int(&(&m - &s.upper))).unwrap());
        }
        assert_eq!(Polyhedron::from_constraints(2, cs).unwrap(), tri);
    }

    #[test]
    fn cached_body() {
        let b = LatticeFreeBody::new(cross(2)).unwrap();
        assert_eq!(b.width(), Width::Finite(2));
        assert_eq!(b.lattice_points().unwrap().len(), 4);
        assert!(b.is_maximal());
        assert!(LatticeFreeBody::new(square((-1, 2), (3, 2))).is_err());
    }
}
