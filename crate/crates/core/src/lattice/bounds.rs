use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{ceil_sqrt, floor, dot_zq, is_integral, rat_int, Int, QVector, Rational};
use crate::polyhedron::Polyhedron;

/// Finite search box for bodies of width `m` circumscribing an integral
/// polytope `P`.
///
/// Every facet `⟨a, x⟩ ≤ b` of such a body, scaled to integral width data,
/// satisfies `‖a‖² ≤ norm_bound` and `|b| ≤ offset_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationBounds {
    pub m: u64,
    /// A lower bound on `δ(P)²`, the squared minimal Euclidean width.
    pub delta_sq_lower: Rational,
    /// An upper bound on `ρ(P)²`, the squared radius of a ball at `o`
    /// containing `P`.
    pub rho_sq_upper: Rational,
    pub norm_bound: Int,
    pub offset_bound: Int,
}

/// Derives the box from an inscribed ball at the vertex centroid (whose
/// diameter bounds the width from below) and the farthest vertex from `o`.
///
/// A slab `b − m ≤ ⟨a, x⟩ ≤ b` containing `P` has Euclidean width
/// `m/‖a‖ ≥ δ`, hence `‖a‖² ≤ m²/δ²`; and `|b| ≤ ‖a‖·ρ + m`.
pub fn enumeration_bounds(p: &Polyhedron, m: u64) -> Result<EnumerationBounds> {
    if p.is_empty() || !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    if !p.is_bounded() {
        return Err(Error::Unbounded);
    }
    if !p.vertices().iter().all(|v| is_integral(v)) {
        return Err(Error::InvalidArgument("polytope is not integral".into()));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("width must be positive".into()));
    }
    let vs = p.vertices();
    let d = p.dim();
    let n = rat_int(&Int::from(vs.len()));
    let centroid: QVector = (0..d)
        .map(|i| vs.iter().map(|v| &v[i]).fold(Rational::zero(), |s, x| s + x) / &n)
        .collect();
    let r_sq = p
        .facets()
        .iter()
        .map(|f| {
            let s = f.bound() - dot_zq(f.normal(), &centroid);
            let norm: Int = f.normal().iter().map(|a| a * a).sum();
            &s * &s / rat_int(&norm)
        })
        .min()
        .expect("a full-dimensional polytope has facets");
    let delta_sq_lower = r_sq * rat_int(&Int::from(4));
    let rho_sq_upper = vs
        .iter()
        .map(|v| v.iter().fold(Rational::zero(), |s, x| s + x * x))
        .max()
        .expect("nonempty");
    let m_sq = rat_int(&(Int::from(m) * Int::from(m)));
    let norm_bound = floor(&(&m_sq / &delta_sq_lower)).max(Int::one());
    let offset_bound = ceil_sqrt(&(&m_sq * &rho_sq_upper / &delta_sq_lower)) + Int::from(m);
    Ok(EnumerationBounds {
        m,
        delta_sq_lower,
        rho_sq_upper,
        norm_bound,
        offset_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn unit_square_bounds() {
        let sq = Polyhedron::cuboid(&[rat(0, 1), rat(0, 1)], &[rat(1, 1), rat(1, 1)]).unwrap();
        let b = enumeration_bounds(&sq, 2).unwrap();
        // inscribed radius 1/2 at (1/2, 1/2)
        assert_eq!(b.delta_sq_lower, rat(1, 1));
        assert_eq!(b.rho_sq_upper, rat(2, 1));
        assert_eq!(b.norm_bound, Int::from(4));
        // ⌈√8⌉ + 2
        assert_eq!(b.offset_bound, Int::from(5));
    }

    #[test]
    fn norm_bound_scales_quadratically() {
        let sq = Polyhedron::cuboid(&[rat(0, 1), rat(0, 1)], &[rat(1, 1), rat(1, 1)]).unwrap();
        let a = enumeration_bounds(&sq, 3).unwrap();
        let b = enumeration_bounds(&sq, 6).unwrap();
        assert_eq!(b.norm_bound, a.norm_bound * Int::from(4));
    }

    #[test]
    fn rejects_bad_input() {
        let half = Polyhedron::cuboid(&[rat(0, 1)], &[rat(1, 2)]).unwrap();
        assert!(matches!(enumeration_bounds(&half, 1), Err(Error::InvalidArgument(_))));
        let seg = Polyhedron::polytope(2, vec![vec![rat(0, 1), rat(0, 1)], vec![rat(1, 1), rat(0, 1)]]).unwrap();
        assert_eq!(enumeration_bounds(&seg, 1), Err(Error::NotFullDimensional));
    }
}
