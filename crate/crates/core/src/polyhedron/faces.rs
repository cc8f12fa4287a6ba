//! One-dimensional faces and exact volume.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::{qrank, qsub, Polyhedron};
use crate::error::{Error, Result};
use crate::exact::{
    affine_dimension, det_q, dot_z, factorial, gcd_normalize, rat_int, to_rational, Int, QVector,
    Rational, ZVector,
};

/// Shape of an edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    /// `conv{from, to}` with `from < to` lexicographically.
    Segment { from: QVector, to: QVector },
    /// `{apex + λ·direction : λ ≥ 0}` with a primitive direction.
    Ray { apex: QVector, direction: ZVector },
}

/// A 1-dimensional face of a line-free polyhedron.
///
/// `direction` is the integral vector `u` read from the first endpoint (or
/// the apex): for segments it is the shortest integral multiple of
/// `to − from` that reaches at least `to`, so the segment lies in
/// `conv{from, from + u}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub kind: EdgeKind,
    pub direction: ZVector,
}

impl Edge {
    pub fn segment(a: QVector, b: QVector) -> Self {
        let (from, to) = if a <= b { (a, b) } else { (b, a) };
        let direction = segment_direction(&from, &to);
        Edge {
            kind: EdgeKind::Segment { from, to },
            direction,
        }
    }

    pub fn ray(apex: QVector, direction: ZVector) -> Self {
        Edge {
            kind: EdgeKind::Ray {
                apex,
                direction: direction.clone(),
            },
            direction,
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self.kind, EdgeKind::Segment { .. })
    }

    /// Endpoints of a segment, or the apex alone for a ray.
    pub fn endpoints(&self) -> Vec<&QVector> {
        match &self.kind {
            EdgeKind::Segment { from, to } => vec![from, to],
            EdgeKind::Ray { apex, .. } => vec![apex],
        }
    }

    /// Point at parameter `t` along `direction`, measured from `start`.
    pub fn point_at(start: &[Rational], direction: &[Int], t: &Rational) -> QVector {
        start
            .iter()
            .zip(direction)
            .map(|(s, u)| s + t * rat_int(u))
            .collect()
    }
}

/// Smallest integral `u = t·(q − p)` with `t ≥ 1`.
pub(crate) fn segment_direction(p: &[Rational], q: &[Rational]) -> ZVector {
    let w: QVector = qsub(q, p);
    let den = crate::exact::denominator_lcm(&w);
    let z: ZVector = w
        .iter()
        .map(|x| (x * rat_int(&den)).to_integer())
        .collect();
    let (prim, g) = gcd_normalize(&z).expect("distinct endpoints");
    // w = (g/den)·prim, and integral multiples of w are k·prim.
    let k = crate::exact::ceil(&Rational::new(g, den));
    prim.into_iter().map(|x| x * &k).collect()
}

impl Polyhedron {
    /// Every 1-face, each exactly once, sorted.
    pub fn edges(&self) -> Result<Vec<Edge>> {
        if !self.is_line_free() {
            return Err(Error::NotLineFree);
        }
        if self.is_empty() {
            return Ok(Vec::new());
        }
        let d = self.dim();
        let cs = self.constraints();
        let tight: Vec<Vec<usize>> = self
            .vertices()
            .iter()
            .map(|v| (0..cs.len()).filter(|&i| cs[i].is_tight(v)).collect())
            .collect();
        let rank_of = |idx: &[usize]| {
            let rows: Vec<QVector> = idx.iter().map(|&i| to_rational(cs[i].normal())).collect();
            qrank(&rows)
        };
        let mut out = Vec::new();
        let vs = self.vertices();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let common: Vec<usize> = tight[i].iter().copied().filter(|k| tight[j].contains(k)).collect();
                if common.len() + 1 >= d && rank_of(&common) + 1 == d {
                    out.push(Edge::segment(vs[i].clone(), vs[j].clone()));
                }
            }
            for r in self.rays() {
                let common: Vec<usize> = tight[i]
                    .iter()
                    .copied()
                    .filter(|&k| dot_z(cs[k].normal(), r).is_zero())
                    .collect();
                if rank_of(&common) + 1 == d {
                    out.push(Edge::ray(vs[i].clone(), r.clone()));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Exact `d`-dimensional volume of a polytope (zero if not full-dimensional).
    pub fn volume(&self) -> Result<Rational> {
        if self.is_empty() {
            return Ok(Rational::zero());
        }
        if !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        if !self.is_full_dimensional() {
            return Ok(Rational::zero());
        }
        let d = self.dim();
        let vs = self.vertices();
        let facet_sets: Vec<Vec<usize>> = self
            .facets()
            .iter()
            .map(|f| (0..vs.len()).filter(|&i| f.is_tight(&vs[i])).collect())
            .collect();
        let all: Vec<usize> = (0..vs.len()).collect();
        let simplices = triangulate(vs, &facet_sets, &all, d);
        let total = simplices
            .iter()
            .map(|s| {
                let rows: Vec<QVector> = s[1..].iter().map(|&i| qsub(&vs[i], &vs[s[0]])).collect();
                det_q(&rows).abs()
            })
            .fold(Rational::zero(), |a, b| a + b);
        Ok(total / rat_int(&factorial(d as u64)))
    }
}

/// Pulling triangulation of the face spanned by `face` (of dimension `k`)
/// from its smallest vertex. Faces of a face are its intersections with the
/// facets of the polytope that have the right dimension.
fn triangulate(
    vs: &[QVector],
    facet_sets: &[Vec<usize>],
    face: &[usize],
    k: usize,
) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![face[0]]];
    }
    let apex = face[0];
    let mut subfaces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in facet_sets {
        let sub: Vec<usize> = face.iter().copied().filter(|i| f.contains(i)).collect();
        if sub.contains(&apex) || sub.len() < k {
            continue;
        }
        let pts: Vec<QVector> = sub.iter().map(|&i| vs[i].clone()).collect();
        if affine_dimension(&pts) == Some(k - 1) {
            subfaces.insert(sub);
        }
    }
    let mut out = Vec::new();
    for sub in subfaces {
        for mut s in triangulate(vs, facet_sets, &sub, k - 1) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}
