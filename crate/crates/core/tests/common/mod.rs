//! Random instances and brute-force references shared by the test targets.
#![allow(dead_code)]

use latcut::exact::{gcd_normalize, rat, rat_int, Int, QVector, Rational};
use latcut::polyhedron::{Constraint, Polyhedron};
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::Rng;

/// A rational in `[-range, range]` with denominator at most `max_den`.
pub fn random_rational(rng: &mut StdRng, range: i64, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    rat(rng.gen_range(-range * den..=range * den), den)
}

/// Hull of `n` random points; `None` unless full-dimensional.
pub fn random_polytope(rng: &mut StdRng, d: usize, n: usize, range: i64, max_den: i64) -> Option<Polyhedron> {
    let pts: Vec<QVector> = (0..n)
        .map(|_| (0..d).map(|_| random_rational(rng, range, max_den)).collect())
        .collect();
    let p = Polyhedron::polytope(d, pts).ok()?;
    p.is_full_dimensional().then_some(p)
}

pub fn random_full_polytope(rng: &mut StdRng, d: usize, range: i64, max_den: i64) -> Polyhedron {
    loop {
        let n = rng.gen_range(d + 1..=d + 4);
        if let Some(p) = random_polytope(rng, d, n, range, max_den) {
            return p;
        }
    }
}

/// `conv(P \ int L)` for bounded `P`, as the hull of the pieces
/// `P ∩ {⟨a_j, x⟩ ≥ b_j}` over the facets of `L`.
pub fn brute_remove(p: &Polyhedron, l: &Polyhedron) -> Polyhedron {
    assert!(p.is_bounded());
    let mut pts: Vec<QVector> = Vec::new();
    for f in l.facets() {
        let piece = p.with_constraint(f.reversed()).unwrap();
        pts.extend(piece.vertices().iter().cloned());
    }
    if pts.is_empty() {
        return Polyhedron::empty(p.dim());
    }
    Polyhedron::polytope(p.dim(), pts).unwrap()
}

/// Smallest `m ≤ max_m` such that `L` is the intersection of all slabs
/// `{b − m ≤ ⟨a, x⟩ ≤ b}` with `‖a‖∞ ≤ max_a` and `|b| ≤ max_b` containing
/// it. Only the tightest slab per normal on either side is kept, as the
/// others are implied.
pub fn brute_width(l: &Polyhedron, max_a: i64, max_b: i64, max_m: u64) -> Option<u64> {
    let d = l.dim();
    let normals = box_normals(d, max_a);
    let ranges: Vec<(Rational, Rational)> = normals
        .iter()
        .map(|a| (l.minimize(a).unwrap().unwrap(), l.maximize(a).unwrap().unwrap()))
        .collect();
    let bb = Int::from(max_b);
    for m in 1..=max_m {
        let mm = Int::from(m);
        let mut cs = Vec::new();
        for (a, (lo, hi)) in normals.iter().zip(&ranges) {
            // admissible b: ceil(hi) ≤ b ≤ floor(lo) + m, |b| ≤ max_b
            let first = latcut::exact::ceil(hi).max(-bb.clone());
            let last = (latcut::exact::floor(lo) + &mm).min(bb.clone());
            if first > last {
                continue;
            }
            cs.push(Constraint::new(a.clone(), rat_int(&first)).unwrap());
            let neg: Vec<Int> = a.iter().map(|x| -x).collect();
            cs.push(Constraint::new(neg, rat_int(&(&mm - &last))).unwrap());
        }
        if cs.is_empty() {
            continue;
        }
        let s = Polyhedron::from_constraints(d, cs).unwrap();
        if s.same_set(l).unwrap() {
            return Some(m);
        }
    }
    None
}

/// Nonzero integer vectors with `‖a‖∞ ≤ r`, one of each `±a` pair.
pub fn box_normals(d: usize, r: i64) -> Vec<Vec<Int>> {
    let mut out = Vec::new();
    let total = (2 * r + 1).pow(d as u32);
    for mut idx in 0..total {
        let mut a = Vec::with_capacity(d);
        for _ in 0..d {
            a.push(Int::from(idx % (2 * r + 1) - r));
            idx /= 2 * r + 1;
        }
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        if latcut::exact::is_lex_positive(&a) {
            out.push(a);
        }
    }
    out
}

/// Does the per-facet minimizing representation of `L` fit the search box?
pub fn representation_fits(l: &Polyhedron, max_a: i64, max_b: i64, max_m: u64) -> bool {
    let Ok(Some(rep)) = latcut::lattice::width_representation(l) else {
        return false;
    };
    if rep.width > max_m {
        return false;
    }
    let (aa, bb) = (Int::from(max_a), Int::from(max_b));
    rep.slabs.iter().all(|s| {
        s.normal.iter().all(|x| x.magnitude() <= aa.magnitude())
            && s.upper.magnitude() <= bb.magnitude()
            && (&s.upper - Int::from(rep.width)).magnitude() <= bb.magnitude()
    })
}

pub fn primitive(a: &[Int]) -> bool {
    gcd_normalize(a).map(|(_, g)| g.is_one()).unwrap_or(false)
}
