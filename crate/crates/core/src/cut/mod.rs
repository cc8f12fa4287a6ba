//! The `R_L` operator, cut extraction, dominance and closures.

mod dominance;
mod family;

pub use dominance::{
    dominance_vector, dominates, minimal_dominating_subfamily, minimal_dominating_subfamily_with, DominanceVector, Dominator,
};
pub use family::{closure_of_family, CutFamily};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot_z, Int, QVector, Rational, ZVector};
use crate::hnf::LatticeChart;
use crate::polyhedron::{Constraint, Edge, EdgeKind, Polyhedron, VRep};

/// How `L` acts on one edge of `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    /// No endpoint lies in `int L`.
    Preserved,
    /// Both endpoints (or the apex and the whole ray) lie in `int L`.
    Removed,
    /// Exactly one endpoint is in `int L`; `first` tells whether it is the
    /// first endpoint in the edge's canonical order (always true for rays).
    Bisected { first: bool },
}

/// Which vertices of `P` are in `int L`, and the class of every edge, in
/// the sorted edge order of `P`. Two bodies with equal signatures remove
/// the same vertices and cross the same edges from the same side.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionSignature {
    pub interior_vertices: Vec<bool>,
    pub edges: Vec<EdgeClass>,
}

/// An edge with exactly one endpoint `p` in `int L`, leaving `L` at
/// `q = p + λ·u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BisectedEdge {
    pub index: usize,
    pub edge: Edge,
    pub interior: QVector,
    pub direction: ZVector,
    pub lambda: Rational,
    pub crossing: QVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClassification {
    pub preserved: Vec<Edge>,
    pub removed: Vec<Edge>,
    pub bisected: Vec<BisectedEdge>,
    pub signature: PartitionSignature,
}

impl EdgeClassification {
    pub fn lambdas(&self) -> Vec<Rational> {
        self.bisected.iter().map(|b| b.lambda.clone()).collect()
    }
}

/// First exit parameter of `p + t·u` from `L`: the least `(b − ⟨a,p⟩)/⟨a,u⟩`
/// over constraints with `⟨a,u⟩ > 0`.
fn exit_parameter(l: &Polyhedron, p: &[Rational], u: &[Int]) -> Option<Rational> {
    l.constraints()
        .iter()
        .filter_map(|c| {
            let au = dot_z(c.normal(), u);
            au.is_positive()
                .then(|| c.slack(p) / Rational::from_integer(au))
        })
        .min()
}

/// Does `apex + t·u` lie in `int L` for every large `t`?
fn ray_ends_inside(l: &Polyhedron, apex: &[Rational], u: &[Int]) -> bool {
    l.constraints().iter().all(|c| {
        let au = dot_z(c.normal(), u);
        au.is_negative() || (au.is_zero() && c.slack(apex).is_positive())
    })
}

/// Partitions the edges of a line-free `P` relative to a full-dimensional `L`.
pub fn classify_edges(p: &Polyhedron, l: &Polyhedron) -> Result<EdgeClassification> {
    check_dims(p, l)?;
    if !l.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let edges = p.edges()?;
    let interior_vertices: Vec<bool> = p.vertices().iter().map(|v| l.interior_contains(v)).collect();
    let mut out = EdgeClassification {
        preserved: Vec::new(),
        removed: Vec::new(),
        bisected: Vec::new(),
        signature: PartitionSignature {
            interior_vertices,
            edges: Vec::with_capacity(edges.len()),
        },
    };
    for (index, edge) in edges.into_iter().enumerate() {
        let (start, u, first) = match &edge.kind {
            EdgeKind::Segment { from, to } => {
                match (l.interior_contains(from), l.interior_contains(to)) {
                    (false, false) => {
                        out.signature.edges.push(EdgeClass::Preserved);
                        out.preserved.push(edge);
                        continue;
                    }
                    (true, true) => {
                        out.signature.edges.push(EdgeClass::Removed);
                        out.removed.push(edge);
                        continue;
                    }
                    (true, false) => (from.clone(), edge.direction.clone(), true),
                    (false, true) => (
                        to.clone(),
                        crate::polyhedron::segment_direction(to, from),
                        false,
                    ),
                }
            }
            EdgeKind::Ray { apex, direction } => {
                if !l.interior_contains(apex) {
                    if ray_ends_inside(l, apex, direction) {
                        return Err(Error::InvalidArgument(
                            "a ray of P enters int(L) and never leaves".into(),
                        ));
                    }
                    out.signature.edges.push(EdgeClass::Preserved);
                    out.preserved.push(edge);
                    continue;
                }
                if exit_parameter(l, apex, direction).is_none() {
                    out.signature.edges.push(EdgeClass::Removed);
                    out.removed.push(edge);
                    continue;
                }
                (apex.clone(), direction.clone(), true)
            }
        };
        let lambda = exit_parameter(l, &start, &u)
            .ok_or_else(|| Error::Invariant("bisected edge never leaves L".into()))?;
        let crossing = Edge::point_at(&start, &u, &lambda);
        debug_assert!(lambda.is_positive());
        debug_assert!(l.contains_point(&crossing) && !l.interior_contains(&crossing));
        out.signature.edges.push(EdgeClass::Bisected { first });
        out.bisected.push(BisectedEdge {
            index,
            edge,
            interior: start,
            direction: u,
            lambda,
            crossing,
        });
    }
    Ok(out)
}

fn check_dims(p: &Polyhedron, l: &Polyhedron) -> Result<()> {
    if p.dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: l.dim(),
        });
    }
    Ok(())
}

/// `conv(X ∪ {q_i}) + rec(P)` for a line-free `P`.
fn edge_construction(p: &Polyhedron, l: &Polyhedron) -> Result<Polyhedron> {
    let cls = classify_edges(p, l)?;
    let mut points: Vec<QVector> = p
        .vertices()
        .iter()
        .zip(&cls.signature.interior_vertices)
        .filter(|(_, &inside)| !inside)
        .map(|(v, _)| v.clone())
        .collect();
    points.extend(cls.bisected.into_iter().map(|b| b.crossing));
    if points.is_empty() {
        return Ok(Polyhedron::empty(p.dim()));
    }
    Polyhedron::from_v(&VRep {
        dim: p.dim(),
        vertices: points,
        rays: p.rays().to_vec(),
        lines: Vec::new(),
    })
}

/// `R_L(P) = conv(P \ int L)`.
pub fn remove_interior(p: &Polyhedron, l: &Polyhedron) -> Result<Polyhedron> {
    check_dims(p, l)?;
    if p.is_empty() {
        return Ok(p.clone());
    }
    if !l.is_full_dimensional() {
        return Ok(p.clone());
    }
    if l.facets().is_empty() {
        return Ok(Polyhedron::empty(p.dim()));
    }
    if l.recession_is_linear() {
        if p.is_line_free() {
            return edge_construction(p, l);
        }
        return reduce_lineality(p, l);
    }
    if p.inside_interior_of(l)? {
        return Ok(Polyhedron::empty(p.dim()));
    }
    if p.is_line_free() {
        let rec = p.recession_cone()?.intersection(&l.recession_cone()?)?;
        if rec.recession_is_linear() {
            return edge_construction(p, l);
        }
    }
    log::warn!("R_L(P) left unreduced: rec(L) is not linear and P recedes into L");
    Ok(p.clone())
}

/// Lines of `P` are quotiented out by a unimodular chart when `L` is
/// invariant along them; otherwise every point of `P` sits on a line that
/// leaves `L` in both directions and `R_L(P) = P`.
fn reduce_lineality(p: &Polyhedron, l: &Polyhedron) -> Result<Polyhedron> {
    let lines = p.lines();
    if lines
        .iter()
        .any(|g| l.constraints().iter().any(|c| !dot_z(c.normal(), g).is_zero()))
    {
        return Ok(p.clone());
    }
    let chart = LatticeChart::new(lines, p.dim())?;
    let k = chart.lineality_dim();
    let qdim = p.dim() - k;
    let project = |poly: &Polyhedron| -> Result<Polyhedron> {
        let cs = poly
            .constraints()
            .iter()
            .map(|c| Constraint::new(chart.quotient_normal(c.normal()), c.bound().clone()))
            .collect::<Result<Vec<_>>>()?;
        Polyhedron::from_constraints(qdim, cs)
    };
    let r = remove_interior(&project(p)?, &project(l)?)?;
    if r.is_empty() {
        return Ok(Polyhedron::empty(p.dim()));
    }
    let cs = r
        .constraints()
        .iter()
        .map(|c| Constraint::new(chart.lift_normal(c.normal()), c.bound().clone()))
        .collect::<Result<Vec<_>>>()?;
    Polyhedron::from_constraints(p.dim(), cs)
}

/// A halfspace `H ⊇ P \ int L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CutHalfspace {
    pub constraint: Constraint,
    /// Set when `R_L(P) = ∅`; the cut is then disjoint from `P`.
    pub infeasibility: bool,
}

/// Is `⟨a, x⟩ ≤ b` valid on all of `P`?
pub(crate) fn is_valid(p: &Polyhedron, c: &Constraint) -> Result<bool> {
    if p.is_empty() {
        return Ok(true);
    }
    Ok(match p.maximize(c.normal())? {
        Some(m) => m <= *c.bound(),
        None => false,
    })
}

/// Constraints of `R_L(P)` that `P` violates.
pub fn l_cuts(p: &Polyhedron, l: &Polyhedron) -> Result<Vec<CutHalfspace>> {
    let r = remove_interior(p, l)?;
    if p.is_empty() {
        return Ok(Vec::new());
    }
    if r.is_empty() {
        // P ⊆ int L: any facet of L, reversed, misses P
        let c = match l.constraints().first() {
            Some(f) => vec![f.reversed()],
            None => {
                let mut e = vec![Int::zero(); p.dim()];
                e[0] = Int::one();
                let up = Constraint::new(e.clone(), Rational::zero())?;
                let down = Constraint::new(e.iter().map(|x| -x).collect(), -Rational::one())?;
                vec![up, down]
            }
        };
        return Ok(c
            .into_iter()
            .map(|constraint| CutHalfspace {
                constraint,
                infeasibility: true,
            })
            .collect());
    }
    let mut out = Vec::new();
    for c in r.constraints() {
        if !is_valid(p, c)? {
            out.push(CutHalfspace {
                constraint: c.clone(),
                infeasibility: false,
            });
        }
    }
    Ok(out)
}

/// Cuts produced by one family member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BodyCuts {
    pub body: usize,
    pub cuts: Vec<CutHalfspace>,
}

/// `⋂_{L} R_L(P)` together with the certifying cut list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    pub polyhedron: Polyhedron,
    pub cuts: Vec<BodyCuts>,
}

/// Maps `f` over `items` on up to `workers` scoped threads, keeping order.
pub(crate) fn par_map<T: Sync, R: Send>(
    items: &[T],
    workers: usize,
    f: impl Fn(&T) -> R + Sync,
) -> Vec<R> {
    let workers = workers.max(1).min(items.len().max(1));
    if workers == 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    std::thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| {
                let f = &f;
                s.spawn(move || part.iter().map(f).collect::<Vec<R>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

/// Closure with cuts, evaluating members on `workers` threads.
pub fn closure_with_cuts(p: &Polyhedron, family: &[Polyhedron], workers: usize) -> Result<Closure> {
    let results = par_map(family, workers, |l| l_cuts(p, l));
    let mut cuts = Vec::new();
    let mut constraints = p.constraints().to_vec();
    for (body, r) in results.into_iter().enumerate() {
        let list = r?;
        constraints.extend(list.iter().map(|c| c.constraint.clone()));
        if !list.is_empty() {
            cuts.push(BodyCuts { body, cuts: list });
        }
    }
    let polyhedron = if p.is_empty() {
        p.clone()
    } else {
        Polyhedron::from_constraints(p.dim(), constraints)?
    };
    Ok(Closure { polyhedron, cuts })
}

/// `⋂_{L ∈ ℒ} R_L(P)`; the empty family gives `P`.
pub fn closure(p: &Polyhedron, family: &[Polyhedron]) -> Result<Polyhedron> {
    Ok(closure_with_cuts(p, family, 1)?.polyhedron)
}

/// Evaluates `R_L(P)` for every member.
pub fn remove_interior_all(p: &Polyhedron, family: &[Polyhedron], workers: usize) -> Result<Vec<Polyhedron>> {
    par_map(family, workers, |l| remove_interior(p, l)).into_iter().collect()
}
