//! Hermite normal form, integer kernels and lattice-basis completion.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot_z, rank_z, Int, IntMatrix, QVector, Rational, ZVector};

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `H = U·A` and `|det U| = 1`. `H` is in lower
/// echelon form: the nonzero rows come first, the pivot of a row is its last
/// nonzero entry and is positive, pivot columns strictly increase down the
/// rows, and every entry below a pivot lies in `[0, pivot)`. The form is
/// unique for the row lattice of `A`.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let m = a.nrows();
    let n = a.ncols();
    // Upper HNF of the column-reversed matrix, then mirror columns and rows.
    let mut h: Vec<ZVector> = a
        .rows()
        .iter()
        .map(|r| r.iter().rev().cloned().collect())
        .collect();
    let mut u = IntMatrix::identity(m).into_rows();
    let rank = upper_hnf(&mut h, &mut u, n);
    for row in h.iter_mut() {
        row.reverse();
    }
    h[..rank].reverse();
    u[..rank].reverse();
    let h = IntMatrix::from_rows(h).unwrap_or_else(|_| IntMatrix::zeros(m, n));
    let u = IntMatrix::from_rows(u).expect("square");
    (h, u)
}

fn row_sub(rows: &mut [ZVector], target: usize, source: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    let src = rows[source].clone();
    for (t, s) in rows[target].iter_mut().zip(&src) {
        *t -= q * s;
    }
}

fn row_neg(rows: &mut [ZVector], i: usize) {
    for x in rows[i].iter_mut() {
        *x = -&*x;
    }
}

/// Standard upper row HNF in place, mirroring every row operation on `u`.
/// Returns the rank.
fn upper_hnf(h: &mut [ZVector], u: &mut [ZVector], n: usize) -> usize {
    let m = h.len();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let Some(p) = (r..m)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&i, &j| h[i][c].abs().cmp(&h[j][c].abs()))
            else {
                break;
            };
            h.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..m {
                if !h[i][c].is_zero() {
                    let q = h[i][c].div_floor(&h[r][c]);
                    row_sub(h, i, r, &q);
                    row_sub(u, i, r, &q);
                    if !h[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            row_neg(h, r);
            row_neg(u, r);
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            row_sub(h, i, r, &q);
            row_sub(u, i, r, &q);
        }
        r += 1;
    }
    r
}

/// Basis of the lattice `{x ∈ ℤ^d : A x = 0}` for `A` given row-wise in
/// dimension `dim`, in Hermite normal form.
pub fn integer_kernel(rows: &[ZVector], dim: usize) -> Vec<ZVector> {
    let nonzero: Vec<ZVector> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    if nonzero.is_empty() {
        return IntMatrix::identity(dim).into_rows();
    }
    let at = IntMatrix::from_rows(nonzero).expect("rectangular").transpose();
    let (h, u) = hnf(&at);
    let rank = h.rows().iter().take_while(|r| r.iter().any(|x| !x.is_zero())).count();
    canonical_basis(&u.rows()[rank..])
}

/// The saturated lattice `span(rows) ∩ ℤ^d`, as an HNF basis.
pub fn saturation(rows: &[ZVector], dim: usize) -> Vec<ZVector> {
    let orth = integer_kernel(rows, dim);
    if orth.is_empty() {
        return IntMatrix::identity(dim).into_rows();
    }
    integer_kernel(&orth, dim)
}

/// Canonical (HNF) basis of the lattice generated by `rows`.
pub fn canonical_basis(rows: &[ZVector]) -> Vec<ZVector> {
    if rows.is_empty() {
        return Vec::new();
    }
    let (h, _) = hnf(&IntMatrix::from_rows(rows.to_vec()).expect("rectangular"));
    h.into_rows()
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Extends `z_1..z_k` to a basis of `ℤ^d`.
///
/// The returned rows start with the inputs verbatim and form a matrix of
/// determinant ±1. The inputs must be independent and generate all of
/// `span ∩ ℤ^d`.
pub fn extend_lattice_basis(z: &[ZVector], dim: usize) -> Result<IntMatrix> {
    if let Some(bad) = z.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.len(),
        });
    }
    let k = z.len();
    if k == 0 {
        return Ok(IntMatrix::identity(dim));
    }
    if rank_z(z) < k {
        return Err(Error::DependentVectors);
    }
    let zt = IntMatrix::from_rows(z.to_vec())?.transpose();
    let (h, u) = hnf(&zt);
    // Primitive iff the HNF of Zᵀ is [I_k; 0], i.e. every pivot is 1.
    let primitive = (0..k).all(|i| h.get(i, i).is_one());
    if !primitive {
        return Err(Error::NotLatticeBasis);
    }
    // U Zᵀ = [I; 0] ⇒ Zᵀ = U⁻¹[I; 0]: the first k columns of U⁻¹ are the z_i.
    let basis = u.inverse_unimodular()?.transpose();
    debug_assert!(basis.rows()[..k] == *z);
    Ok(basis)
}

/// Unimodular change of coordinates that sends a rational linear subspace
/// `X` onto `ℝ^k × {o}`.
///
/// With `Z` the completed basis (first `k` rows spanning `X ∩ ℤ^d`), points
/// are mapped by `x = Zᵀ y` and normals by `a ↦ Z a`.
#[derive(Clone, Debug)]
pub struct LatticeChart {
    basis: IntMatrix,
    inverse: IntMatrix,
    k: usize,
}

impl LatticeChart {
    /// `subspace` is any integer spanning set of `X`.
    pub fn new(subspace: &[ZVector], dim: usize) -> Result<Self> {
        let sat = if subspace.is_empty() {
            Vec::new()
        } else {
            saturation(subspace, dim)
        };
        let k = sat.len();
        let basis = extend_lattice_basis(&sat, dim)?;
        let inverse = basis.inverse_unimodular()?;
        Ok(LatticeChart { basis, inverse, k })
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn lineality_dim(&self) -> usize {
        self.k
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Normal of the quotient constraint; `a` must vanish on `X`.
    pub fn quotient_normal(&self, a: &[Int]) -> ZVector {
        let full = self.basis.apply(a);
        debug_assert!(full[..self.k].iter().all(Zero::is_zero));
        full[self.k..].to_vec()
    }

    pub fn lift_normal(&self, c: &[Int]) -> ZVector {
        let mut full = vec![Int::zero(); self.k];
        full.extend_from_slice(c);
        self.inverse.apply(&full)
    }

    /// `y = Z⁻ᵀ x`, keeping the last `d − k` coordinates.
    pub fn quotient_point(&self, x: &[Rational]) -> QVector {
        let cols = self.inverse.transpose();
        let y = cols.apply_q(x);
        y[self.k..].to_vec()
    }

    /// `x = Zᵀ (o, y')`.
    pub fn lift_point(&self, y: &[Rational]) -> QVector {
        let mut full = vec![Rational::zero(); self.k];
        full.extend_from_slice(y);
        self.basis.transpose().apply_q(&full)
    }

    /// Lifts an integer direction of the quotient.
    pub fn lift_direction(&self, y: &[Int]) -> ZVector {
        let mut full = vec![Int::zero(); self.k];
        full.extend_from_slice(y);
        self.basis.transpose().apply(&full)
    }

    pub fn quotient_direction(&self, x: &[Int]) -> ZVector {
        let y = self.inverse.transpose().apply(x);
        y[self.k..].to_vec()
    }

    /// Checks `⟨a, z_j⟩ = 0` for the subspace generators.
    pub fn vanishes_on_subspace(&self, a: &[Int]) -> bool {
        self.basis.rows()[..self.k].iter().all(|z| dot_z(z, a).is_zero())
    }
}
