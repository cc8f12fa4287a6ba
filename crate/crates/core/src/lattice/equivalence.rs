use num_traits::{One, Signed, Zero};

use super::lattice_points;
use crate::error::{Error, Result};
use crate::exact::{
    add_q, inverse_q, is_integral, rank_q, sub_q, Int, IntMatrix, QVector, Rational, ZVector,
};
use crate::polyhedron::Polyhedron;

/// An affine unimodular map `x ↦ U x + t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZdWitness {
    pub matrix: IntMatrix,
    pub translation: ZVector,
}

impl ZdWitness {
    pub fn identity(d: usize) -> Self {
        ZdWitness {
            matrix: IntMatrix::identity(d),
            translation: vec![Int::zero(); d],
        }
    }

    pub fn apply_point(&self, x: &[Rational]) -> QVector {
        add_q(&self.matrix.apply_q(x), &crate::exact::to_rational(&self.translation))
    }

    pub fn apply(&self, p: &Polyhedron) -> Result<Polyhedron> {
        p.affine_image(&self.matrix, &crate::exact::to_rational(&self.translation))
    }

    pub fn inverse(&self) -> Result<ZdWitness> {
        let inv = self.matrix.inverse_unimodular()?;
        let t = inv.apply(&self.translation).into_iter().map(|x| -x).collect();
        Ok(ZdWitness {
            matrix: inv,
            translation: t,
        })
    }
}

/// Searches for an affine unimodular map carrying `a` onto `b`.
///
/// Both polytopes must be full-dimensional. Cheap invariants (vertex
/// count, volume, number of lattice points) are compared first; then an
/// affine basis of `a` is sent to every ordered tuple of vertices of `b`.
pub fn zd_equivalent(a: &Polyhedron, b: &Polyhedron) -> Result<Option<ZdWitness>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let d = a.dim();
    if a.is_empty() || b.is_empty() {
        return Ok((a.is_empty() && b.is_empty()).then(|| ZdWitness::identity(d)));
    }
    if !a.is_bounded() || !b.is_bounded() {
        return Err(Error::Unbounded);
    }
    if !a.is_full_dimensional() || !b.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    if a.vertices().len() != b.vertices().len()
        || a.facets().len() != b.facets().len()
        || a.volume()? != b.volume()?
        || lattice_points(a)?.len() != lattice_points(b)?.len()
    {
        return Ok(None);
    }

    let va = a.vertices();
    let basis = affine_basis(va, d);
    let v0 = &va[basis[0]];
    // rows of the inverse of the matrix with columns v_i − v0
    let cols: Vec<QVector> = basis[1..].iter().map(|&i| sub_q(&va[i], v0)).collect();
    let cols_inv = inverse_q(&transpose_q(&cols)).expect("affine basis");
    let target: Vec<QVector> = b.vertices().to_vec();

    let mut tuple = Vec::with_capacity(d + 1);
    let mut used = vec![false; target.len()];
    let mut found = None;
    search(&target, &mut tuple, &mut used, d + 1, &mut |t: &[usize]| {
        let w0 = &target[t[0]];
        let wcols: Vec<QVector> = t[1..].iter().map(|&j| sub_q(&target[j], w0)).collect();
        let w = transpose_q(&wcols);
        let u = mat_mul_q(&w, &cols_inv);
        if !u.iter().all(|r| is_integral(r)) {
            return false;
        }
        let m = IntMatrix::from_rows(u.iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect())
            .expect("square");
        if !m.det().map(|x| x.abs().is_one()).unwrap_or(false) {
            return false;
        }
        let shift = sub_q(w0, &m.apply_q(v0));
        if !is_integral(&shift) {
            return false;
        }
        let wit = ZdWitness {
            matrix: m,
            translation: shift.iter().map(|x| x.to_integer()).collect(),
        };
        let mut img: Vec<QVector> = va.iter().map(|v| wit.apply_point(v)).collect();
        img.sort();
        if img == target {
            found = Some(wit);
            true
        } else {
            false
        }
    });
    Ok(found)
}

fn affine_basis(vs: &[QVector], d: usize) -> Vec<usize> {
    let mut chosen = vec![0];
    let mut diffs: Vec<QVector> = Vec::new();
    for (i, v) in vs.iter().enumerate().skip(1) {
        if chosen.len() == d + 1 {
            break;
        }
        let w = sub_q(v, &vs[0]);
        diffs.push(w);
        if rank_q(&diffs) == diffs.len() {
            chosen.push(i);
        } else {
            diffs.pop();
        }
    }
    chosen
}

fn search(
    target: &[QVector],
    tuple: &mut Vec<usize>,
    used: &mut [bool],
    len: usize,
    accept: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if tuple.len() == len {
        return accept(tuple);
    }
    for j in 0..target.len() {
        if used[j] {
            continue;
        }
        used[j] = true;
        tuple.push(j);
        let done = search(target, tuple, used, len, accept);
        tuple.pop();
        used[j] = false;
        if done {
            return true;
        }
    }
    false
}

fn transpose_q(m: &[QVector]) -> Vec<QVector> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

fn mat_mul_q(a: &[QVector], b: &[QVector]) -> Vec<QVector> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| {
            (0..n)
                .map(|j| r.iter().zip(b).fold(Rational::zero(), |s, (x, row)| s + x * &row[j]))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{qvec, rat};

    fn triangle(pts: &[(i64, i64)]) -> Polyhedron {
        Polyhedron::polytope(2, pts.iter().map(|&(x, y)| qvec(&[(x, 1), (y, 1)])).collect()).unwrap()
    }

    #[test]
    fn shear_is_found() {
        let a = triangle(&[(0, 0), (2, 0), (0, 2)]);
        let b = triangle(&[(1, 1), (3, 1), (3, 3)]);
        let w = zd_equivalent(&a, &b).unwrap().expect("equivalent");
        assert_eq!(w.apply(&a).unwrap(), b);
        assert_eq!(w.inverse().unwrap().apply(&b).unwrap(), a);
    }

    #[test]
    fn different_volume_rejected() {
        let a = triangle(&[(0, 0), (1, 0), (0, 1)]);
        let b = triangle(&[(0, 0), (2, 0), (0, 1)]);
        assert_eq!(zd_equivalent(&a, &b).unwrap(), None);
    }

    #[test]
    fn same_volume_not_equivalent() {
        // area 2 and six lattice points each, edge lattice lengths 4,1,1 vs 2,2,2
        let a = triangle(&[(0, 0), (4, 0), (0, 1)]);
        let b = triangle(&[(0, 0), (2, 0), (0, 2)]);
        assert_eq!(lattice_points(&a).unwrap().len(), lattice_points(&b).unwrap().len());
        assert_eq!(zd_equivalent(&a, &b).unwrap(), None);
    }

    #[test]
    fn rational_polytopes() {
        let a = Polyhedron::cuboid(&[rat(0, 1), rat(0, 1)], &[rat(1, 2), rat(1, 1)]).unwrap();
        let b = Polyhedron::cuboid(&[rat(0, 1), rat(0, 1)], &[rat(1, 1), rat(1, 2)]).unwrap();
        let w = zd_equivalent(&a, &b).unwrap().unwrap();
        assert_eq!(w.apply(&a).unwrap(), b);
        let c = Polyhedron::cuboid(&[rat(1, 4), rat(0, 1)], &[rat(3, 4), rat(1, 1)]).unwrap();
        assert_eq!(zd_equivalent(&a, &c).unwrap(), None);
    }

    #[test]
    fn lower_dimensional_rejected() {
        let s = Polyhedron::polytope(2, vec![qvec(&[(0, 1), (0, 1)]), qvec(&[(1, 1), (0, 1)])]).unwrap();
        assert_eq!(zd_equivalent(&s, &s), Err(Error::NotFullDimensional));
    }
}
