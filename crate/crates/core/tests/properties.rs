mod common;

use latcut::cut::{classify_edges, closure_with_cuts, dominance_vector, remove_interior, Dominator};
use latcut::exact::{rat, rat_int, IntMatrix, QVector, Rational};
use latcut::families::{cross_polytope, relevant_splits, SplitSpec};
use latcut::io::{read_polyhedron, write_h, write_v};
use latcut::lattice::{is_lattice_free, lattice_points, max_facet_width, zd_equivalent};
use latcut::polyhedron::{Constraint, Polyhedron};
use num_traits::Zero;
use proptest::prelude::*;

use common::brute_remove;

fn point(d: usize) -> impl Strategy<Value = QVector> {
    prop::collection::vec((-6i64..=6, 1i64..=3), d).prop_map(|v| v.into_iter().map(|(n, q)| rat(n, q)).collect())
}

fn polytope(d: usize) -> impl Strategy<Value = Polyhedron> {
    prop::collection::vec(point(d), d + 1..=d + 4)
        .prop_filter_map("not full-dimensional", move |pts| {
            let p = Polyhedron::polytope(d, pts).ok()?;
            p.is_full_dimensional().then_some(p)
        })
}

/// A polytope together with one of its relevant splits (`‖a‖∞ ≤ 2`).
fn with_split(d: usize) -> impl Strategy<Value = (Polyhedron, Polyhedron)> {
    (polytope(d), any::<prop::sample::Index>()).prop_map(|(p, i)| {
        let s = relevant_splits(&p, 2).unwrap();
        let l = s[i.index(s.len())].body();
        (p, l)
    })
}

fn unimodular() -> impl Strategy<Value = IntMatrix> {
    // products of elementary operations
    prop::collection::vec((0usize..2, -2i64..=2), 1..4).prop_map(|ops| {
        let mut m = IntMatrix::identity(2);
        for (k, c) in ops {
            let e = if k == 0 {
                IntMatrix::from_i64(&[&[1, c], &[0, 1]])
            } else {
                IntMatrix::from_i64(&[&[1, 0], &[c, 1]])
            };
            m = m.mul(&e).unwrap();
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn removal_matches_brute_force((p, l) in with_split(2)) {
        let r = remove_interior(&p, &l).unwrap();
        prop_assert!(r.same_set(&brute_remove(&p, &l)).unwrap());
    }

    #[test]
    fn removal_matches_brute_force_for_polytopes(p in polytope(2), l in polytope(2)) {
        let r = remove_interior(&p, &l).unwrap();
        prop_assert!(r.same_set(&brute_remove(&p, &l)).unwrap());
    }

    #[test]
    fn removal_contracts_and_keeps_integer_points((p, l) in with_split(2)) {
        let r = remove_interior(&p, &l).unwrap();
        prop_assert!(p.contains(&r).unwrap());
        prop_assert_eq!(lattice_points(&r).unwrap(), lattice_points(&p).unwrap());
    }

    #[test]
    fn removal_is_idempotent((p, l) in with_split(2)) {
        let r = remove_interior(&p, &l).unwrap();
        prop_assert_eq!(remove_interior(&r, &l).unwrap(), r);
    }

    #[test]
    fn removal_is_monotone((p, l) in with_split(2), q in polytope(2)) {
        let big = Polyhedron::polytope(2, p.vertices().iter().chain(q.vertices()).cloned().collect()).unwrap();
        let small = remove_interior(&p, &l).unwrap();
        prop_assert!(remove_interior(&big, &l).unwrap().contains(&small).unwrap());
    }

    #[test]
    fn crossing_scalars_are_integral_after_scaling((p, l) in with_split(3)) {
        let cls = classify_edges(&p, &l).unwrap();
        let y = dominance_vector(&p, &l, None).unwrap();
        prop_assert_eq!(y.entries.len(), cls.bisected.len());
        for (b, e) in cls.bisected.iter().zip(&y.entries) {
            prop_assert!(b.lambda > Rational::zero());
            prop_assert_eq!(rat_int(&y.scale) / &b.lambda, rat_int(e));
            prop_assert!(l.point_location(&b.crossing).unwrap() == latcut::polyhedron::PointLocation::Boundary);
        }
    }

    #[test]
    fn dominance_agrees_with_inclusion(p in polytope(2), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let s = relevant_splits(&p, 2).unwrap();
        let (a, b) = (s[i.index(s.len())].body(), s[j.index(s.len())].body());
        let (da, db) = (Dominator::new(&p, &a).unwrap(), Dominator::new(&p, &b).unwrap());
        prop_assert_eq!(da.dominates(&db).unwrap(), db.hull().contains(da.hull()).unwrap());
    }

    #[test]
    fn closure_ignores_worker_count(p in polytope(2)) {
        let fam: Vec<Polyhedron> = relevant_splits(&p, 1).unwrap().iter().map(SplitSpec::body).collect();
        prop_assert_eq!(closure_with_cuts(&p, &fam, 1).unwrap(), closure_with_cuts(&p, &fam, 3).unwrap());
    }

    #[test]
    fn files_round_trip(p in polytope(3)) {
        let h = write_h(&p);
        let back = read_polyhedron(&h).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(write_h(&back), h);
        prop_assert_eq!(read_polyhedron(&write_v(&p)).unwrap(), p);
    }

    #[test]
    fn invariants_survive_unimodular_maps(l in polytope(2), u in unimodular(), t in prop::collection::vec(-3i64..=3, 2)) {
        let t: QVector = t.into_iter().map(|x| rat(x, 1)).collect();
        let image = l.affine_image(&u, &t).unwrap();
        prop_assert_eq!(image.volume().unwrap(), l.volume().unwrap());
        prop_assert_eq!(max_facet_width(&image).unwrap(), max_facet_width(&l).unwrap());
        prop_assert_eq!(lattice_points(&image).unwrap().len(), lattice_points(&l).unwrap().len());
        prop_assert_eq!(is_lattice_free(&image).unwrap(), is_lattice_free(&l).unwrap());
        if l.is_full_dimensional() {
            prop_assert!(zd_equivalent(&l, &image).unwrap().is_some());
        }
    }

    #[test]
    fn volume_is_at_most_width_power(l in polytope(3)) {
        let m = max_facet_width(&l).unwrap().finite().unwrap();
        prop_assert!(l.volume().unwrap() <= rat((m * m * m) as i64, 1));
    }
}

/// `Q × ℝ` for a polygon `Q`.
fn cylinder(q: &Polyhedron) -> Polyhedron {
    let cs = q
        .facets()
        .iter()
        .map(|f| {
            let mut a = f.normal().to_vec();
            a.push(Zero::zero());
            Constraint::new(a, f.bound().clone()).unwrap()
        })
        .collect();
    Polyhedron::from_constraints(3, cs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lineality_is_factored_out((q, l2) in with_split(2)) {
        let p = cylinder(&q);
        let l = cylinder(&l2);
        let expected = cylinder(&remove_interior(&q, &l2).unwrap());
        let r = remove_interior(&p, &l).unwrap();
        if r.is_empty() {
            prop_assert!(remove_interior(&q, &l2).unwrap().is_empty());
        } else {
            prop_assert!(r.same_set(&expected).unwrap());
        }
        // a split crossing the lines of P leaves P alone
        let skew = SplitSpec::new(latcut::exact::zvec(&[0, 0, 1]), 0.into()).unwrap().body();
        prop_assert_eq!(remove_interior(&p, &skew).unwrap(), p);
    }
}

#[test]
fn thin_family_in_dimensions_three_and_four() {
    for d in 3..=4usize {
        let mut vols = Vec::new();
        for k in 2 * d as u64..=2 * d as u64 + 4 {
            let e = latcut::families::example_family(d, k).unwrap();
            assert!(e.report.maximal);
            let pts: Vec<QVector> = e.report.lattice_points.iter().map(|z| latcut::exact::to_rational(z)).collect();
            assert_eq!(pts.len(), 1 << (d - 1));
            assert_eq!(latcut::exact::affine_dimension(&pts), Some(d - 1));
            let scale = rat((k << (d - 1)) as i64, 1);
            assert_eq!(&e.report.volume * scale, e.report.base_volume);
            vols.push(e.report.volume);
        }
        vols.dedup();
        assert_eq!(vols.len(), 5);
    }
}

#[test]
fn shifted_cross_polytopes_are_lattice_free() {
    for d in 2..=3 {
        let c = cross_polytope(d).unwrap();
        for s in -1..=1 {
            let t: QVector = (0..d).map(|_| rat(s, 1)).collect();
            assert!(is_lattice_free(&c.translate(&t).unwrap()).unwrap());
        }
        let half: QVector = (0..d).map(|_| rat(1, 2)).collect();
        assert!(!is_lattice_free(&c.translate(&half).unwrap()).unwrap());
    }
}

#[test]
fn integral_polytopes_are_fixed_by_splits() {
    let sq = Polyhedron::cuboid(&[rat(0, 1), rat(0, 1)], &[rat(2, 1), rat(1, 1)]).unwrap();
    for s in relevant_splits(&sq, 2).unwrap() {
        assert_eq!(remove_interior(&sq, &s.body()).unwrap(), sq);
    }
}

#[test]
fn rays_and_splits() {
    // the quadrant {x ≥ 1/2, y ≥ 0} loses the strip 0 ≤ x ≤ 1
    let q = Polyhedron::from_constraints(
        2,
        vec![Constraint::from_i64(&[-1, 0], rat(-1, 2)), Constraint::from_i64(&[0, -1], rat(0, 1))],
    )
    .unwrap();
    let l = SplitSpec::new(latcut::exact::zvec(&[1, 0]), 1.into()).unwrap().body();
    let r = remove_interior(&q, &l).unwrap();
    let expected = q.with_constraint(Constraint::from_i64(&[-1, 0], rat(-1, 1))).unwrap();
    assert_eq!(r, expected);
}
