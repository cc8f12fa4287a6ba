use num_traits::{One, Zero};

use super::{Parity, SignClass};
use crate::error::{Error, Result};
use crate::exact::{rat_int, Int, Rational, ZVector};
use crate::lattice::{is_maximal_lattice_free, lattice_points, max_facet_width, Width};
use crate::polyhedron::{Constraint, Polyhedron};

/// `{x : ⟨a, x⟩ ≤ r for all a ∈ A⁺_d}`.
pub fn sign_simplex(d: usize, r: i64) -> Result<Polyhedron> {
    let cs = SignClass::new(d, Parity::Even)
        .vectors()
        .into_iter()
        .map(|a| Constraint::new(a, rat_int(&Int::from(r))))
        .collect::<Result<Vec<_>>>()?;
    Polyhedron::from_constraints(d, cs)
}

/// The base `P = {x : ⟨a, x⟩ ≤ d − 1 for all a ∈ A⁺_d}` of the thin family.
///
/// With right-hand side `d − 1` the section of `φ_k⁻¹(P)` by `x_d = 0` is
/// exactly `C_{d−1} × {0}`. With `d` it would be the cross-polytope of
/// radius `d` in the coordinates `2x_j − 1`, which holds all of
/// `{0,1}^{d−1} × {0}` in its interior.
pub fn example_base(d: usize) -> Result<Polyhedron> {
    sign_simplex(d, d as i64 - 1)
}

/// Facts checked while building `L_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleReport {
    pub dim: usize,
    pub k: u64,
    pub base_volume: Rational,
    pub base_width: Width,
    /// `d · 2^{d−1}`.
    pub width_bound: u64,
    pub volume: Rational,
    pub width: Width,
    pub lattice_points: Vec<ZVector>,
    pub maximal: bool,
}

#[derive(Clone, Debug)]
pub struct ExampleBody {
    pub body: Polyhedron,
    pub report: ExampleReport,
}

/// `L_k = φ_k⁻¹(P)` with `φ_k(x) = (2x_1 − 1, …, 2x_{d−1} − 1, k·x_d)`, i.e.
/// `⟨(2a_1, …, 2a_{d−1}, k·a_d), x⟩ ≤ d − 1 + a_1 + … + a_{d−1}` for
/// `a ∈ A⁺_d`.
///
/// All defining properties are verified before returning; a failure is an
/// [`Error::Invariant`].
pub fn example_family(d: usize, k: u64) -> Result<ExampleBody> {
    if d < 3 {
        return Err(Error::InvalidArgument("dimension must be at least 3".into()));
    }
    if k < 2 * d as u64 {
        return Err(Error::ThinnessBound { d, k });
    }
    let kk = Int::from(k);
    let two = Int::from(2);
    let mut cs = Vec::new();
    for a in SignClass::new(d, Parity::Even).vectors() {
        let mut n: ZVector = a[..d - 1].iter().map(|x| x * &two).collect();
        n.push(&a[d - 1] * &kk);
        let b: Int = Int::from(d - 1) + a[..d - 1].iter().sum::<Int>();
        cs.push(Constraint::new(n, rat_int(&b))?);
    }
    let body = Polyhedron::from_constraints(d, cs)?;
    let base = example_base(d)?;

    let dd = Rational::from_integer(Int::from(d));
    let in_box = base.is_bounded()
        && base
            .vertices()
            .iter()
            .all(|v| v.iter().all(|x| *x <= dd && *x >= -dd.clone()));
    if !in_box {
        return Err(Error::Invariant("P ⊄ [−d, d]^d".into()));
    }
    let width_bound = d as u64 * (1u64 << (d - 1));
    let base_width = max_facet_width(&base)?;
    if base_width > Width::Finite(width_bound) {
        return Err(Error::Invariant(format!("m(P) = {base_width} exceeds {width_bound}")));
    }
    let base_volume = base.volume()?;
    let volume = body.volume()?;
    let scale = rat_int(&(kk.clone() * Int::from(1u64 << (d - 1))));
    if &volume * &scale != base_volume {
        return Err(Error::Invariant("vol(L_k)·k·2^{d−1} ≠ vol(P)".into()));
    }
    let pts = lattice_points(&body)?;
    let expected = binary_floor(d);
    if pts != expected {
        return Err(Error::Invariant("L_k ∩ ℤ^d ≠ {0,1}^{d−1} × {0}".into()));
    }
    let maximal = is_maximal_lattice_free(&body)?;
    if !maximal {
        return Err(Error::Invariant("L_k is not maximal lattice-free".into()));
    }
    let width = max_facet_width(&body)?;
    if width > Width::Finite(width_bound) {
        return Err(Error::Invariant(format!("m(L_k) = {width} exceeds {width_bound}")));
    }
    Ok(ExampleBody {
        body,
        report: ExampleReport {
            dim: d,
            k,
            base_volume,
            base_width,
            width_bound,
            volume,
            width,
            lattice_points: pts,
            maximal,
        },
    })
}

/// `{0,1}^{d−1} × {0}` in lexicographic order.
fn binary_floor(d: usize) -> Vec<ZVector> {
    (0..1u64 << (d - 1))
        .map(|mask| {
            let mut z: ZVector = (0..d - 1)
                .map(|j| if mask >> (d - 2 - j) & 1 == 1 { Int::one() } else { Int::zero() })
                .collect();
            z.push(Int::zero());
            z
        })
        .collect()
}
