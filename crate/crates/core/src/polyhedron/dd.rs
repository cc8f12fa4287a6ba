//! Double description over the integers.
//!
//! Computes generators of `{y ∈ ℝ^n : ⟨h_i, y⟩ ≥ 0 ∀i}` by inserting the
//! rows one at a time, in the order given. Rays are kept primitive; the
//! adjacency test is purely combinatorial on zero sets.

use num_traits::{Signed, Zero};

use crate::exact::{dot_z, make_primitive, Int, ZVector};

#[derive(Clone, Debug, Default)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn prefix(len: usize) -> Self {
        let mut s = ZeroSet(vec![0; len.div_ceil(64)]);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        let w = i / 64;
        if self.0.len() <= w {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &ZeroSet) -> ZeroSet {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset_of(&self, other: &ZeroSet) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.0.get(i).copied().unwrap_or(0) == 0)
    }
}

/// Generators of a polyhedral cone: conic combinations of `rays` plus
/// linear combinations of `lines`.
#[derive(Clone, Debug, Default)]
pub(crate) struct ConeGenerators {
    pub rays: Vec<ZVector>,
    pub lines: Vec<ZVector>,
}

fn combine(a: &Int, x: &[Int], b: &Int, y: &[Int]) -> ZVector {
    let mut v: ZVector = x.iter().zip(y).map(|(xi, yi)| a * xi - b * yi).collect();
    make_primitive(&mut v);
    v
}

pub(crate) fn cone_generators(n: usize, rows: &[ZVector]) -> ConeGenerators {
    let mut lines: Vec<ZVector> = (0..n)
        .map(|i| {
            let mut e = vec![Int::zero(); n];
            e[i] = Int::from(1);
            e
        })
        .collect();
    let mut rays: Vec<(ZVector, ZeroSet)> = Vec::new();

    for (idx, h) in rows.iter().enumerate() {
        debug_assert_eq!(h.len(), n);
        if h.iter().all(Zero::is_zero) {
            for (_, z) in rays.iter_mut() {
                z.insert(idx);
            }
            continue;
        }

        if let Some(p) = lines.iter().position(|l| !dot_z(h, l).is_zero()) {
            let mut pivot = lines.remove(p);
            let mut hp = dot_z(h, &pivot);
            if hp.is_negative() {
                pivot.iter_mut().for_each(|x| *x = -&*x);
                hp = -hp;
            }
            for l in lines.iter_mut() {
                let hl = dot_z(h, l);
                if !hl.is_zero() {
                    *l = combine(&hp, l, &hl, &pivot);
                }
            }
            for (r, z) in rays.iter_mut() {
                let hr = dot_z(h, r);
                if !hr.is_zero() {
                    *r = combine(&hp, r, &hr, &pivot);
                }
                z.insert(idx);
            }
            rays.push((pivot, ZeroSet::prefix(idx)));
            continue;
        }

        let values: Vec<Int> = rays.iter().map(|(r, _)| dot_z(h, r)).collect();
        let pointed_dim = n - lines.len();
        let mut next: Vec<(ZVector, ZeroSet)> = Vec::with_capacity(rays.len());
        for (i, (r, z)) in rays.iter().enumerate() {
            if values[i].is_positive() {
                next.push((r.clone(), z.clone()));
            } else if values[i].is_zero() {
                let mut z = z.clone();
                z.insert(idx);
                next.push((r.clone(), z));
            }
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].1.intersect(&rays[q].1);
                if common.count() + 2 < pointed_dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(t, (_, zt))| t == p || t == q || !common.is_subset_of(zt));
                if !adjacent {
                    continue;
                }
                // values[q] < 0, so both coefficients are positive.
                let v = combine(&values[p], &rays[q].0, &values[q], &rays[p].0);
                let mut z = common;
                z.insert(idx);
                next.push((v, z));
            }
        }
        rays = next;
    }

    ConeGenerators {
        rays: rays.into_iter().map(|(r, _)| r).collect(),
        lines,
    }
}
