//! Exact scalars, vectors and small dense linear algebra.
//!
//! Rationals are `num_rational::BigRational`, which is kept in lowest terms
//! with a positive denominator by every constructor, so structural equality
//! coincides with numeric equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision integer.
pub type Int = BigInt;
/// Arbitrary precision rational in canonical form.
pub type Rational = BigRational;
/// A rational point or direction.
pub type QVector = Vec<Rational>;
/// An integer point or direction.
pub type ZVector = Vec<Int>;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

pub fn rat_int(v: &Int) -> Rational {
    Rational::from_integer(v.clone())
}

pub fn qvec(v: &[(i64, i64)]) -> QVector {
    v.iter().map(|&(n, d)| rat(n, d)).collect()
}

pub fn zvec(v: &[i64]) -> ZVector {
    v.iter().copied().map(Int::from).collect()
}

pub fn to_rational(v: &[Int]) -> QVector {
    v.iter().map(rat_int).collect()
}

pub fn dot_q(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_z(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Int::zero(), |acc, (x, y)| acc + x * y)
}

/// `⟨a, x⟩` for an integer normal and a rational point.
pub fn dot_zq(a: &[Int], x: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), x.len());
    a.iter()
        .zip(x)
        .filter(|(c, _)| !c.is_zero())
        .fold(Rational::zero(), |acc, (c, y)| acc + y * c)
}

pub fn sub_q(a: &[Rational], b: &[Rational]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_q(a: &[Rational], b: &[Rational]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale_q(a: &[Rational], s: &Rational) -> QVector {
    a.iter().map(|x| x * s).collect()
}

pub fn is_zero_z(v: &[Int]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

/// gcd of the absolute values of the entries (0 for the zero vector).
pub fn content(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Splits a nonzero integer vector into `(primitive, scale)` with
/// `v = scale · primitive`, `scale > 0`. Signs are preserved.
pub fn gcd_normalize(v: &[Int]) -> Result<(ZVector, Int)> {
    let g = content(v);
    if g.is_zero() {
        return Err(Error::ZeroDirection);
    }
    Ok((v.iter().map(|x| x / &g).collect(), g))
}

/// In-place primitive normalization; the zero vector is left alone.
pub(crate) fn make_primitive(v: &mut [Int]) {
    let g = content(v);
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// lcm of the denominators of a rational vector.
pub fn denominator_lcm<'a, I: IntoIterator<Item = &'a Rational>>(v: I) -> Int {
    v.into_iter().fold(Int::one(), |l, x| l.lcm(x.denom()))
}

/// Positive rescaling of a nonzero rational direction to a primitive
/// integer vector.
pub fn primitive_direction(v: &[Rational]) -> Result<ZVector> {
    let l = denominator_lcm(v);
    let scaled: ZVector = v.iter().map(|x| (x * rat_int(&l)).to_integer()).collect();
    Ok(gcd_normalize(&scaled)?.0)
}

/// Lexicographic sign: first nonzero entry positive.
pub fn is_lex_positive(v: &[Int]) -> bool {
    v.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_positive)
}

pub fn floor(x: &Rational) -> Int {
    x.floor().to_integer()
}

pub fn ceil(x: &Rational) -> Int {
    x.ceil().to_integer()
}

/// Smallest integer `s ≥ 0` with `s² ≥ x`, for `x ≥ 0`.
pub fn ceil_sqrt(x: &Rational) -> Int {
    if !x.is_positive() {
        return Int::zero();
    }
    let c = ceil(x);
    let mut s = c.sqrt();
    while rat_int(&(&s * &s)) < *x {
        s += 1;
    }
    while s.is_positive() {
        let t = &s - 1;
        if rat_int(&(&t * &t)) >= *x {
            s = t;
        } else {
            break;
        }
    }
    s
}

pub fn factorial(n: u64) -> Int {
    (1..=n).fold(Int::one(), |acc, k| acc * Int::from(k))
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [QVector]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_q(rows: &[QVector]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

pub fn rank_z(rows: &[ZVector]) -> usize {
    let q: Vec<QVector> = rows.iter().map(|r| to_rational(r)).collect();
    rank_q(&q)
}

/// Dimension of the affine hull of a nonempty point set (−1 as `None` for
/// the empty set).
pub fn affine_dimension(points: &[QVector]) -> Option<usize> {
    let first = points.first()?;
    let diffs: Vec<QVector> = points[1..].iter().map(|p| sub_q(p, first)).collect();
    Some(rank_q(&diffs))
}

/// Determinant by fraction-free Gaussian elimination over the rationals.
pub fn det_q(m: &[QVector]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &pivot;
                for j in c..n {
                    let t = &a[c][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
    }
    det
}

pub fn det_z(m: &[ZVector]) -> Int {
    let q: Vec<QVector> = m.iter().map(|r| to_rational(r)).collect();
    det_q(&q).to_integer()
}

/// Inverse of a square rational matrix, `None` when singular.
pub fn inverse_q(m: &[QVector]) -> Option<Vec<QVector>> {
    let n = m.len();
    let mut aug: Vec<QVector> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `x · M = b` for a row vector `x` (M given row-wise), if solvable.
pub fn solve_left(m: &[QVector], b: &[Rational]) -> Option<QVector> {
    // x·M = b  ⇔  Mᵀ xᵀ = bᵀ
    let rows = m.len();
    let cols = b.len();
    let mut aug: Vec<QVector> = (0..cols)
        .map(|j| {
            let mut r: QVector = (0..rows).map(|i| m[i][j].clone()).collect();
            r.push(b[j].clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&rows) {
        return None;
    }
    let mut x = vec![Rational::zero(); rows];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][rows].clone();
    }
    Some(x)
}

/// A basis of the rational null space `{x : M x = 0}`.
pub fn kernel_q(m: &[QVector], cols: usize) -> Vec<QVector> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Orthogonal projection of `x` onto the complement of `span(basis)`.
/// `basis` must be linearly independent.
pub fn project_out(x: &[Rational], basis: &[QVector]) -> QVector {
    if basis.is_empty() {
        return x.to_vec();
    }
    let k = basis.len();
    let gram: Vec<QVector> = (0..k)
        .map(|i| (0..k).map(|j| dot_q(&basis[i], &basis[j])).collect())
        .collect();
    let rhs: QVector = basis.iter().map(|b| dot_q(b, x)).collect();
    // Gram is symmetric, so x·G = rhs gives the coefficients.
    let coeff = solve_left(&gram, &rhs).expect("independent basis has invertible Gram matrix");
    let mut out = x.to_vec();
    for (c, b) in coeff.iter().zip(basis) {
        for (o, bi) in out.iter_mut().zip(b) {
            *o -= c * bi;
        }
    }
    out
}

/// A dense integer matrix stored row-wise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: Vec<ZVector>,
    cols: usize,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<ZVector>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(IntMatrix { rows, cols })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(rows.iter().map(|r| zvec(r)).collect()).expect("rectangular literal")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows: vec![vec![Int::zero(); cols]; rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = Int::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[ZVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<ZVector> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.rows[i][j]
    }

    pub fn transpose(&self) -> IntMatrix {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        IntMatrix {
            rows,
            cols: self.rows.len(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.nrows(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..other.cols)
                    .map(|j| {
                        r.iter()
                            .zip(&other.rows)
                            .fold(Int::zero(), |acc, (a, o)| acc + a * &o[j])
                    })
                    .collect()
            })
            .collect();
        Ok(IntMatrix {
            rows,
            cols: other.cols,
        })
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[Int]) -> ZVector {
        self.rows.iter().map(|r| dot_z(r, v)).collect()
    }

    /// `M x` for a rational column vector.
    pub fn apply_q(&self, x: &[Rational]) -> QVector {
        self.rows.iter().map(|r| dot_zq(r, x)).collect()
    }

    pub fn det(&self) -> Result<Int> {
        if self.nrows() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.nrows(),
                found: self.cols,
            });
        }
        Ok(det_z(&self.rows))
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().is_ok_and(|d| d.abs().is_one())
    }

    pub fn to_rational_rows(&self) -> Vec<QVector> {
        self.rows.iter().map(|r| to_rational(r)).collect()
    }

    /// Exact inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        if !self.is_unimodular() {
            return Err(Error::InvalidArgument("matrix is not unimodular".into()));
        }
        let inv = inverse_q(&self.to_rational_rows()).expect("unimodular implies invertible");
        IntMatrix::from_rows(
            inv.into_iter()
                .map(|r| r.into_iter().map(|x| x.to_integer()).collect())
                .collect(),
        )
    }
}
