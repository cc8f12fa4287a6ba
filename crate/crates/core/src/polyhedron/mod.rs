//! Exact rational polyhedra in both representations.
//!
//! A [`Polyhedron`] always carries a canonical inequality description and a
//! canonical generator description, so two polyhedra describing the same
//! point set compare equal structurally:
//!
//! * facets have primitive integer normals, and when the polyhedron is not
//!   full-dimensional, normals are taken orthogonal to the affine hull;
//! * implicit equations are given by the Hermite basis of the saturated
//!   lattice of equation normals;
//! * lines form the Hermite basis of `lin(P) ∩ ℤ^d`, and vertices and rays
//!   are projected orthogonally onto `lin(P)^⊥`;
//! * every list is sorted.

mod dd;
mod faces;

pub use faces::{Edge, EdgeKind};
pub(crate) use faces::segment_direction;

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    denominator_lcm, dot_z, dot_zq, gcd_normalize, primitive_direction, project_out,
    rank_q, rat_int, sub_q, to_rational, Int, IntMatrix, QVector, Rational, ZVector,
};
use crate::hnf::saturation;

/// The halfspace `{x : ⟨a, x⟩ ≤ b}` with `a` primitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    normal: ZVector,
    bound: Rational,
}

impl Constraint {
    /// Divides out the content of `normal`, rescaling `bound` to match.
    pub fn new(normal: ZVector, bound: Rational) -> Result<Self> {
        let (normal, g) = gcd_normalize(&normal)?;
        Ok(Constraint {
            normal,
            bound: bound / rat_int(&g),
        })
    }

    /// Accepts a rational normal; the halfspace is unchanged.
    pub fn from_rational(normal: &[Rational], bound: Rational) -> Result<Self> {
        let l = denominator_lcm(normal);
        let lq = rat_int(&l);
        let scaled: ZVector = normal.iter().map(|x| (x * &lq).to_integer()).collect();
        Constraint::new(scaled, bound * lq)
    }

    pub fn from_i64(normal: &[i64], bound: Rational) -> Self {
        Constraint::new(crate::exact::zvec(normal), bound).expect("nonzero normal")
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn normal(&self) -> &[Int] {
        &self.normal
    }

    pub fn bound(&self) -> &Rational {
        &self.bound
    }

    pub fn value(&self, x: &[Rational]) -> Rational {
        dot_zq(&self.normal, x)
    }

    /// `b − ⟨a, x⟩`.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        &self.bound - self.value(x)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn contains_strictly(&self, x: &[Rational]) -> bool {
        self.slack(x).is_positive()
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.slack(x).is_zero()
    }

    /// The closed complementary halfspace `{⟨a, x⟩ ≥ b}`.
    pub fn reversed(&self) -> Constraint {
        Constraint {
            normal: self.normal.iter().map(|x| -x).collect(),
            bound: -self.bound.clone(),
        }
    }

    /// Row `(b, −a)` scaled to integers, for the homogenized cone.
    fn homogeneous_row(&self) -> ZVector {
        let den = self.bound.denom().clone();
        let mut row = Vec::with_capacity(self.normal.len() + 1);
        row.push(self.bound.numer().clone());
        row.extend(self.normal.iter().map(|a| -(a * &den)));
        row
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.normal.iter().map(ToString::to_string).collect();
        write!(f, "<({}), x> <= {}", terms.join(", "), self.bound)
    }
}

/// A list of inequalities in a fixed dimension (not necessarily irredundant).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HRep {
    pub dim: usize,
    pub constraints: Vec<Constraint>,
}

impl HRep {
    pub fn new(dim: usize, constraints: Vec<Constraint>) -> Result<Self> {
        if let Some(c) = constraints.iter().find(|c| c.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: c.dim(),
            });
        }
        let mut constraints = constraints;
        constraints.sort();
        constraints.dedup();
        Ok(HRep { dim, constraints })
    }
}

/// Generators: `conv(vertices) + cone(rays) + span(lines)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct VRep {
    pub dim: usize,
    pub vertices: Vec<QVector>,
    pub rays: Vec<ZVector>,
    pub lines: Vec<ZVector>,
}

impl VRep {
    pub fn polytope(dim: usize, vertices: Vec<QVector>) -> Self {
        VRep {
            dim,
            vertices,
            rays: Vec::new(),
            lines: Vec::new(),
        }
    }

    /// True when there are no vertices, i.e. the generated set is empty.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn check_dims(&self) -> Result<()> {
        let bad = self
            .vertices
            .iter()
            .map(Vec::len)
            .chain(self.rays.iter().map(Vec::len))
            .chain(self.lines.iter().map(Vec::len))
            .find(|&l| l != self.dim);
        match bad {
            Some(found) => Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            }),
            None => Ok(()),
        }
    }
}

/// Where a point sits relative to a polyhedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointLocation {
    Interior,
    Boundary,
    Outside,
}

/// A rational polyhedron held in canonical double description.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polyhedron {
    dim: usize,
    empty: bool,
    facets: Vec<Constraint>,
    equations: Vec<Constraint>,
    hrep: HRep,
    vrep: VRep,
}

impl Polyhedron {
    pub fn empty(dim: usize) -> Self {
        Polyhedron {
            dim,
            empty: true,
            facets: Vec::new(),
            equations: Vec::new(),
            hrep: HRep {
                dim,
                constraints: Vec::new(),
            },
            vrep: VRep {
                dim,
                ..VRep::default()
            },
        }
    }

    /// All of `ℝ^d`.
    pub fn universe(dim: usize) -> Self {
        Polyhedron::from_constraints(dim, Vec::new()).expect("no constraints")
    }

    pub fn from_constraints(dim: usize, constraints: Vec<Constraint>) -> Result<Self> {
        Polyhedron::from_h(&HRep::new(dim, constraints)?)
    }

    /// Double description from inequalities.
    pub fn from_h(h: &HRep) -> Result<Self> {
        let dim = h.dim;
        if let Some(c) = h.constraints.iter().find(|c| c.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: c.dim(),
            });
        }
        let mut sorted = h.constraints.clone();
        sorted.sort();
        sorted.dedup();
        let raw = generators_of(dim, &sorted);
        match raw {
            None => Ok(Polyhedron::empty(dim)),
            Some(v) => Ok(Polyhedron::assemble(canonical_vrep(v))),
        }
    }

    /// Double description from generators; redundant generators are dropped.
    pub fn from_v(v: &VRep) -> Result<Self> {
        v.check_dims()?;
        if v.is_empty() {
            return Ok(Polyhedron::empty(v.dim));
        }
        let (facets, equations) = inequalities_of(v);
        let mut all = facets;
        for e in &equations {
            all.push(e.clone());
            all.push(e.reversed());
        }
        all.sort();
        let raw = generators_of(v.dim, &all).ok_or_else(|| {
            Error::Invariant("nonempty generator set produced an empty polyhedron".into())
        })?;
        Ok(Polyhedron::assemble(canonical_vrep(raw)))
    }

    pub fn polytope(dim: usize, vertices: Vec<QVector>) -> Result<Self> {
        Polyhedron::from_v(&VRep::polytope(dim, vertices))
    }

    /// Axis-parallel box `∏ [lo_i, hi_i]`.
    pub fn cuboid(lo: &[Rational], hi: &[Rational]) -> Result<Self> {
        let dim = lo.len();
        let mut cs = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut e = vec![Int::zero(); dim];
            e[i] = Int::one();
            cs.push(Constraint::new(e.clone(), hi[i].clone())?);
            e[i] = -Int::one();
            cs.push(Constraint::new(e, -lo[i].clone())?);
        }
        Polyhedron::from_constraints(dim, cs)
    }

    fn assemble(vrep: VRep) -> Self {
        let (facets, equations) = inequalities_of(&vrep);
        let mut constraints = facets.clone();
        for e in &equations {
            constraints.push(e.clone());
            constraints.push(e.reversed());
        }
        constraints.sort();
        Polyhedron {
            dim: vrep.dim,
            empty: false,
            facets,
            equations,
            hrep: HRep {
                dim: vrep.dim,
                constraints,
            },
            vrep,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    /// Canonical inequalities; each equation appears as a pair.
    pub fn constraints(&self) -> &[Constraint] {
        &self.hrep.constraints
    }

    pub fn hrep(&self) -> &HRep {
        &self.hrep
    }

    pub fn vrep(&self) -> &VRep {
        &self.vrep
    }

    /// Facet-defining inequalities (excluding implicit equations).
    pub fn facets(&self) -> &[Constraint] {
        &self.facets
    }

    /// Implicit equations `⟨n, x⟩ = c`, stored as `Constraint { n, c }`.
    pub fn equations(&self) -> &[Constraint] {
        &self.equations
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vrep.vertices
    }

    pub fn rays(&self) -> &[ZVector] {
        &self.vrep.rays
    }

    pub fn lines(&self) -> &[ZVector] {
        &self.vrep.lines
    }

    pub fn is_bounded(&self) -> bool {
        self.vrep.rays.is_empty() && self.vrep.lines.is_empty()
    }

    pub fn is_line_free(&self) -> bool {
        self.vrep.lines.is_empty()
    }

    /// Dimension of the affine hull; `None` for the empty set.
    pub fn affine_dim(&self) -> Option<usize> {
        if self.empty {
            return None;
        }
        Some(self.dim - rank_z(&self.equations.iter().map(|e| e.normal.clone()).collect::<Vec<_>>()))
    }

    pub fn is_full_dimensional(&self) -> bool {
        !self.empty && self.equations.is_empty()
    }

    /// `rec(P)` as a cone with apex `o`.
    pub fn recession_cone(&self) -> Result<Polyhedron> {
        if self.empty {
            return Err(Error::Empty);
        }
        Polyhedron::from_v(&VRep {
            dim: self.dim,
            vertices: vec![vec![Rational::zero(); self.dim]],
            rays: self.vrep.rays.clone(),
            lines: self.vrep.lines.clone(),
        })
    }

    /// Basis of the lattice `lin(P) ∩ ℤ^d`.
    pub fn lineality_space(&self) -> Result<Vec<ZVector>> {
        if self.empty {
            return Err(Error::Empty);
        }
        Ok(self.vrep.lines.clone())
    }

    /// True when `rec(P)` is a linear space.
    pub fn recession_is_linear(&self) -> bool {
        self.vrep.rays.is_empty()
    }

    fn check_dim(&self, d: usize) -> Result<()> {
        if d != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: d,
            });
        }
        Ok(())
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        !self.empty && self.hrep.constraints.iter().all(|c| c.contains(x))
    }

    /// Strict inequalities on every constraint; empty for lower-dimensional P.
    pub fn interior_contains(&self, x: &[Rational]) -> bool {
        !self.empty && self.hrep.constraints.iter().all(|c| c.contains_strictly(x))
    }

    pub fn point_location(&self, x: &[Rational]) -> Result<PointLocation> {
        self.check_dim(x.len())?;
        Ok(if self.interior_contains(x) {
            PointLocation::Interior
        } else if self.contains_point(x) {
            PointLocation::Boundary
        } else {
            PointLocation::Outside
        })
    }

    /// Does `other ⊆ self` hold?
    pub fn contains(&self, other: &Polyhedron) -> Result<bool> {
        self.check_dim(other.dim)?;
        if other.empty {
            return Ok(true);
        }
        if self.empty {
            return Ok(false);
        }
        let cs = &self.hrep.constraints;
        let vertices_ok = other.vrep.vertices.iter().all(|v| cs.iter().all(|c| c.contains(v)));
        let rays_ok = other
            .vrep
            .rays
            .iter()
            .all(|r| cs.iter().all(|c| !dot_z(&c.normal, r).is_positive()));
        let lines_ok = other
            .vrep
            .lines
            .iter()
            .all(|l| cs.iter().all(|c| dot_z(&c.normal, l).is_zero()));
        Ok(vertices_ok && rays_ok && lines_ok)
    }

    /// Is `self` contained in the interior of `other`?
    pub fn inside_interior_of(&self, other: &Polyhedron) -> Result<bool> {
        self.check_dim(other.dim)?;
        if self.empty {
            return Ok(true);
        }
        let cs = &other.hrep.constraints;
        Ok(self.vrep.vertices.iter().all(|v| other.interior_contains(v))
            && self
                .vrep
                .rays
                .iter()
                .all(|r| cs.iter().all(|c| !dot_z(&c.normal, r).is_positive()))
            && self
                .vrep
                .lines
                .iter()
                .all(|l| cs.iter().all(|c| dot_z(&c.normal, l).is_zero())))
    }

    /// Mutual containment.
    pub fn same_set(&self, other: &Polyhedron) -> Result<bool> {
        Ok(self.contains(other)? && other.contains(self)?)
    }

    pub fn intersection(&self, other: &Polyhedron) -> Result<Polyhedron> {
        self.check_dim(other.dim)?;
        if self.empty || other.empty {
            return Ok(Polyhedron::empty(self.dim));
        }
        let mut cs = self.hrep.constraints.clone();
        cs.extend(other.hrep.constraints.iter().cloned());
        Polyhedron::from_constraints(self.dim, cs)
    }

    /// `P ∩ H` for an extra halfspace.
    pub fn with_constraint(&self, c: Constraint) -> Result<Polyhedron> {
        self.check_dim(c.dim())?;
        if self.empty {
            return Ok(self.clone());
        }
        let mut cs = self.hrep.constraints.clone();
        cs.push(c);
        Polyhedron::from_constraints(self.dim, cs)
    }

    /// `max_{x ∈ P} ⟨a, x⟩`; `None` if unbounded above, error when empty.
    pub fn maximize(&self, a: &[Int]) -> Result<Option<Rational>> {
        self.check_dim(a.len())?;
        if self.empty {
            return Err(Error::Empty);
        }
        if self.vrep.rays.iter().any(|r| dot_z(a, r).is_positive())
            || self.vrep.lines.iter().any(|l| !dot_z(a, l).is_zero())
        {
            return Ok(None);
        }
        Ok(self.vrep.vertices.iter().map(|v| dot_zq(a, v)).max())
    }

    pub fn minimize(&self, a: &[Int]) -> Result<Option<Rational>> {
        let neg: ZVector = a.iter().map(|x| -x).collect();
        Ok(self.maximize(&neg)?.map(|m| -m))
    }

    /// Image under `x ↦ U x + t` for a nonsingular integer matrix `U`.
    pub fn affine_image(&self, u: &IntMatrix, t: &[Rational]) -> Result<Polyhedron> {
        self.check_dim(u.ncols())?;
        self.check_dim(t.len())?;
        if u.det()?.is_zero() {
            return Err(Error::InvalidArgument("singular linear map".into()));
        }
        if self.empty {
            return Ok(self.clone());
        }
        let map_dir = |r: &ZVector| gcd_normalize(&u.apply(r)).map(|p| p.0);
        Polyhedron::from_v(&VRep {
            dim: u.nrows(),
            vertices: self
                .vrep
                .vertices
                .iter()
                .map(|v| crate::exact::add_q(&u.apply_q(v), t))
                .collect(),
            rays: self.vrep.rays.iter().map(map_dir).collect::<Result<_>>()?,
            lines: self.vrep.lines.iter().map(map_dir).collect::<Result<_>>()?,
        })
    }

    /// `{x : A x + t ∈ P}`.
    pub fn affine_preimage(&self, a: &IntMatrix, t: &[Rational]) -> Result<Polyhedron> {
        self.check_dim(a.nrows())?;
        self.check_dim(t.len())?;
        if self.empty {
            return Ok(Polyhedron::empty(a.ncols()));
        }
        let at = a.transpose();
        let mut cs = Vec::with_capacity(self.hrep.constraints.len());
        for c in &self.hrep.constraints {
            let n = at.apply(&c.normal);
            if crate::exact::is_zero_z(&n) {
                // constant constraint 0 ≤ b − ⟨a, t⟩
                if c.slack(t).is_negative() {
                    return Ok(Polyhedron::empty(a.ncols()));
                }
                continue;
            }
            cs.push(Constraint::new(n, c.slack(t))?);
        }
        Polyhedron::from_constraints(a.ncols(), cs)
    }

    pub fn translate(&self, t: &[Rational]) -> Result<Polyhedron> {
        self.affine_image(&IntMatrix::identity(self.dim), t)
    }
}

fn rank_z(v: &[ZVector]) -> usize {
    crate::exact::rank_z(v)
}

/// Primal step: vertices, rays and lines of `{x : A x ≤ b}`; `None` if empty.
fn generators_of(dim: usize, constraints: &[Constraint]) -> Option<VRep> {
    let mut rows = Vec::with_capacity(constraints.len() + 1);
    let mut t = vec![Int::zero(); dim + 1];
    t[0] = Int::one();
    rows.push(t);
    rows.extend(constraints.iter().map(Constraint::homogeneous_row));
    let cone = dd::cone_generators(dim + 1, &rows);
    let mut v = VRep {
        dim,
        ..VRep::default()
    };
    for r in cone.rays {
        if r[0].is_positive() {
            let t = rat_int(&r[0]);
            v.vertices.push(r[1..].iter().map(|x| rat_int(x) / &t).collect());
        } else {
            v.rays.push(r[1..].to_vec());
        }
    }
    for l in cone.lines {
        debug_assert!(l[0].is_zero());
        v.lines.push(l[1..].to_vec());
    }
    if v.vertices.is_empty() {
        None
    } else {
        Some(v)
    }
}

/// Canonical generators: saturated Hermite lines, vertices and rays
/// projected onto the orthogonal complement of the lines, sorted.
fn canonical_vrep(v: VRep) -> VRep {
    let dim = v.dim;
    let mut lines = if v.lines.is_empty() {
        Vec::new()
    } else {
        saturation(&v.lines, dim)
    };
    for l in lines.iter_mut() {
        if !crate::exact::is_lex_positive(l) {
            l.iter_mut().for_each(|x| *x = -&*x);
        }
    }
    let qlines: Vec<QVector> = lines.iter().map(|l| to_rational(l)).collect();
    let mut vertices: Vec<QVector> = v.vertices.iter().map(|x| project_out(x, &qlines)).collect();
    vertices.sort();
    vertices.dedup();
    let mut rays: Vec<ZVector> = v
        .rays
        .iter()
        .filter_map(|r| {
            let p = project_out(&to_rational(r), &qlines);
            primitive_direction(&p).ok()
        })
        .collect();
    rays.sort();
    rays.dedup();
    VRep {
        dim,
        vertices,
        rays,
        lines,
    }
}

/// Dual step: canonical facets and equations of a nonempty generated set.
fn inequalities_of(v: &VRep) -> (Vec<Constraint>, Vec<Constraint>) {
    let dim = v.dim;
    let mut rows: Vec<ZVector> = Vec::new();
    for x in &v.vertices {
        let l = denominator_lcm(x);
        let lq = rat_int(&l);
        let mut row = vec![l.clone()];
        row.extend(x.iter().map(|c| (c * &lq).to_integer()));
        rows.push(row);
    }
    for r in &v.rays {
        let mut row = vec![Int::zero()];
        row.extend(r.iter().cloned());
        rows.push(row);
    }
    for l in &v.lines {
        let mut row = vec![Int::zero()];
        row.extend(l.iter().cloned());
        rows.push(row.clone());
        rows.push(row.iter().map(|x| -x).collect());
    }
    let cone = dd::cone_generators(dim + 1, &rows);

    let eq_normals: Vec<ZVector> = cone
        .lines
        .iter()
        .map(|l| l[1..].to_vec())
        .filter(|n| !crate::exact::is_zero_z(n))
        .collect();
    let eq_basis = if eq_normals.is_empty() {
        Vec::new()
    } else {
        saturation(&eq_normals, dim)
    };
    let anchor = &v.vertices[0];
    let mut equations: Vec<Constraint> = eq_basis
        .iter()
        .map(|n| Constraint {
            normal: n.clone(),
            bound: dot_zq(n, anchor),
        })
        .collect();
    equations.sort();

    let qbasis: Vec<QVector> = eq_basis.iter().map(|n| to_rational(n)).collect();
    let mut facets: Vec<Constraint> = Vec::new();
    for r in &cone.rays {
        // (c0, c) encodes ⟨−c, x⟩ ≤ c0
        let a: QVector = r[1..].iter().map(|c| -rat_int(c)).collect();
        let a = project_out(&a, &qbasis);
        let Ok(normal) = primitive_direction(&a) else {
            continue;
        };
        let bound = v
            .vertices
            .iter()
            .map(|x| dot_zq(&normal, x))
            .max()
            .expect("nonempty");
        facets.push(Constraint { normal, bound });
    }
    facets.sort();
    facets.dedup();
    (facets, equations)
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.empty {
            return write!(f, "∅ ⊂ ℝ^{}", self.dim);
        }
        let cs: Vec<String> = self.hrep.constraints.iter().map(ToString::to_string).collect();
        write!(f, "{{x ∈ ℝ^{} : {}}}", self.dim, cs.join("; "))
    }
}

/// `⟨u, v⟩` on rational vectors, re-exported for the face code.
pub(crate) fn qsub(a: &[Rational], b: &[Rational]) -> QVector {
    sub_q(a, b)
}

pub(crate) fn qrank(rows: &[QVector]) -> usize {
    rank_q(rows)
}
