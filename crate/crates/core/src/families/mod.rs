//! Splits, sign classes, cross-polytopes, the thin family `L_k`, and
//! enumeration of bodies circumscribing an integral polytope.

mod circumscribed;
mod example;

pub use circumscribed::{circumscribed_candidates, enumerate_circumscribed, enumerate_from_candidates};
pub use example::{example_base, example_family, sign_simplex, ExampleBody, ExampleReport};

use std::ops::RangeInclusive;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{ceil, floor, gcd_normalize, is_lex_positive, rat_int, Int, ZVector};
use crate::lattice::for_each_box_point;
use crate::polyhedron::{Constraint, Polyhedron};

/// The split `{x : i − 1 ≤ ⟨a, x⟩ ≤ i}` with primitive, lexicographically
/// positive `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplitSpec {
    a: ZVector,
    i: Int,
}

impl SplitSpec {
    /// Canonicalizes `(a, i)` ≡ `(−a, 1 − i)`; `a` must be primitive.
    pub fn new(a: ZVector, i: Int) -> Result<Self> {
        let (prim, g) = gcd_normalize(&a)?;
        if !g.is_one() {
            return Err(Error::InvalidArgument("split normal must be primitive".into()));
        }
        if is_lex_positive(&prim) {
            Ok(SplitSpec { a: prim, i })
        } else {
            Ok(SplitSpec {
                a: prim.iter().map(|x| -x).collect(),
                i: Int::one() - i,
            })
        }
    }

    pub fn normal(&self) -> &[Int] {
        &self.a
    }

    pub fn offset(&self) -> &Int {
        &self.i
    }

    pub fn body(&self) -> Polyhedron {
        let neg: ZVector = self.a.iter().map(|x| -x).collect();
        Polyhedron::from_constraints(
            self.a.len(),
            vec![
                Constraint::new(self.a.clone(), rat_int(&self.i)).expect("nonzero normal"),
                Constraint::new(neg, rat_int(&(Int::one() - &self.i))).expect("nonzero normal"),
            ],
        )
        .expect("well-formed split")
    }
}

/// Primitive lexicographically positive `a` with `‖a‖∞ ≤ max_norm`, sorted.
pub fn split_normals(d: usize, max_norm: u64) -> Vec<ZVector> {
    let n = Int::from(max_norm);
    let lo = vec![-n.clone(); d];
    let hi = vec![n; d];
    let mut out = Vec::new();
    for_each_box_point(&lo, &hi, |a| {
        if is_lex_positive(a) && gcd_normalize(a).map(|(_, g)| g.is_one()).unwrap_or(false) {
            out.push(a.clone());
        }
    });
    out
}

/// All splits with `‖a‖∞ ≤ max_norm` and `i` in `offsets`.
pub fn splits(d: usize, max_norm: u64, offsets: RangeInclusive<i64>) -> Result<Vec<SplitSpec>> {
    if max_norm == 0 {
        return Err(Error::InvalidArgument("max_norm must be at least 1".into()));
    }
    let mut out = Vec::new();
    for a in split_normals(d, max_norm) {
        for i in offsets.clone() {
            out.push(SplitSpec {
                a: a.clone(),
                i: Int::from(i),
            });
        }
    }
    Ok(out)
}

/// Splits with `‖a‖∞ ≤ max_norm` whose interior meets `P`: those with
/// `i − 1 < max ⟨a,x⟩` and `i > min ⟨a,x⟩`. Every direction must be
/// bounded on `P`, otherwise there are infinitely many.
pub fn relevant_splits(p: &Polyhedron, max_norm: u64) -> Result<Vec<SplitSpec>> {
    if max_norm == 0 {
        return Err(Error::InvalidArgument("max_norm must be at least 1".into()));
    }
    if p.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for a in split_normals(p.dim(), max_norm) {
        let (Some(lo), Some(hi)) = (p.minimize(&a)?, p.maximize(&a)?) else {
            return Err(Error::InvalidArgument(format!(
                "infinitely many relevant offsets for normal {a:?}"
            )));
        };
        let mut i = floor(&lo) + Int::one();
        let last = ceil(&hi);
        while i <= last {
            out.push(SplitSpec { a: a.clone(), i: i.clone() });
            i += 1;
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// `±1` vectors of length `d` with an even (`A⁺`) or odd (`A⁻`) number of
/// `−1` entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignClass {
    pub dim: usize,
    pub parity: Parity,
}

impl SignClass {
    pub fn new(dim: usize, parity: Parity) -> Self {
        SignClass { dim, parity }
    }

    /// Members in lexicographic order.
    pub fn vectors(&self) -> Vec<ZVector> {
        let want = match self.parity {
            Parity::Even => 0,
            Parity::Odd => 1,
        };
        let mut out: Vec<ZVector> = (0..1u64 << self.dim)
            .filter(|mask| mask.count_ones() % 2 == want)
            .map(|mask| {
                (0..self.dim)
                    .map(|j| if mask >> j & 1 == 1 { -Int::one() } else { Int::one() })
                    .collect()
            })
            .collect();
        out.sort();
        out
    }
}

/// `C_d = {x : |2x_1 − 1| + … + |2x_d − 1| ≤ d}`, written as
/// `⟨a, x⟩ ≤ (d + Σ a_j)/2` for all `a ∈ {±1}^d`.
pub fn cross_polytope(d: usize) -> Result<Polyhedron> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    let mut cs = Vec::with_capacity(1 << d);
    for parity in [Parity::Even, Parity::Odd] {
        for a in SignClass::new(d, parity).vectors() {
            let s: Int = a.iter().sum();
            let b = crate::exact::Rational::new(Int::from(d) + s, Int::from(2));
            cs.push(Constraint::new(a, b)?);
        }
    }
    Polyhedron::from_constraints(d, cs)
}

pub(crate) fn is_nonzero(v: &[Int]) -> bool {
    v.iter().any(|x| !x.is_zero())
}

pub(crate) fn sq_norm(v: &[Int]) -> Int {
    v.iter().map(|x| x * x).sum()
}

pub(crate) fn abs_le(x: &Int, bound: &Int) -> bool {
    x.abs() <= *bound
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{qvec, zvec};
    use crate::lattice::{is_maximal_lattice_free, lattice_points, max_facet_width, Width};

    #[test]
    fn split_counts() {
        let s = splits(2, 1, -2..=2).unwrap();
        assert_eq!(s.len(), 20);
        assert_eq!(
            split_normals(2, 1),
            vec![zvec(&[0, 1]), zvec(&[1, -1]), zvec(&[1, 0]), zvec(&[1, 1])]
        );
        let one = splits(1, 1, 0..=0).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].normal(), &zvec(&[1])[..]);
        assert_eq!(*one[0].offset(), Int::zero());
        assert!(splits(2, 0, 0..=0).is_err());
    }

    #[test]
    fn split_canonical_sign() {
        let a = SplitSpec::new(zvec(&[-1, 2]), Int::from(3)).unwrap();
        assert_eq!(a, SplitSpec::new(zvec(&[1, -2]), Int::from(-2)).unwrap());
        assert_eq!(a.body(), SplitSpec::new(zvec(&[1, -2]), Int::from(-2)).unwrap().body());
        assert!(SplitSpec::new(zvec(&[2, 2]), Int::zero()).is_err());
    }

    #[test]
    fn every_split_has_width_one() {
        for s in splits(2, 2, -1..=1).unwrap() {
            assert_eq!(max_facet_width(&s.body()).unwrap(), Width::Finite(1));
        }
    }

    #[test]
    fn relevant_offsets_of_triangle() {
        let t = Polyhedron::polytope(
            2,
            vec![qvec(&[(1, 2), (0, 1)]), qvec(&[(1, 2), (1, 1)]), qvec(&[(3, 2), (1, 2)])],
        )
        .unwrap();
        let s = relevant_splits(&t, 1).unwrap();
        // x2 ∈ [0,1]: i = 1; x1 ∈ [1/2, 3/2]: i = 1, 2; x1+x2 ∈ [1/2, 2]: i = 1, 2;
        // x1−x2 ∈ [−1/2, 1]: i = 0, 1
        assert_eq!(s.len(), 7);
        let ray = Polyhedron::from_constraints(1, vec![Constraint::from_i64(&[-1], crate::exact::rat(0, 1))]).unwrap();
        assert!(relevant_splits(&ray, 1).is_err());
    }

    #[test]
    fn sign_classes() {
        for d in 2..=6 {
            for parity in [Parity::Even, Parity::Odd] {
                let v = SignClass::new(d, parity).vectors();
                assert_eq!(v.len(), 1 << (d - 1));
                for j in 0..d {
                    assert!(v.iter().map(|a| &a[j]).sum::<Int>().is_zero());
                }
            }
        }
    }

    #[test]
    fn cross_polytope_examples() {
        let c2 = cross_polytope(2).unwrap();
        let mut vs = c2.vertices().to_vec();
        vs.sort();
        assert_eq!(
            vs,
            vec![
                qvec(&[(-1, 2), (1, 2)]),
                qvec(&[(1, 2), (-1, 2)]),
                qvec(&[(1, 2), (3, 2)]),
                qvec(&[(3, 2), (1, 2)]),
            ]
        );
        for d in 2..=3 {
            let c = cross_polytope(d).unwrap();
            let pts = lattice_points(&c).unwrap();
            assert_eq!(pts.len(), 1 << d);
            assert!(pts.iter().all(|z| z.iter().all(|x| x.is_zero() || x.is_one())));
            assert!(is_maximal_lattice_free(&c).unwrap());
        }
    }

    #[test]
    fn helpers() {
        assert!(is_nonzero(&zvec(&[0, 1])));
        assert_eq!(sq_norm(&zvec(&[1, -2])), Int::from(5));
        assert!(abs_le(&Int::from(-3), &Int::from(3)));
    }
}
