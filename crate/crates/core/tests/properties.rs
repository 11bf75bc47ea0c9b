use mvlab_core::audit::{facet_move_linearity_check, homothety_check};
use mvlab_core::bezout::{af_spot_check, bezout_gap, BezoutEvaluator};
use mvlab_core::deform::{move_facet, safe_move_range, MoveSpec};
use mvlab_core::generate::random_affine_simplex;
use mvlab_core::mixed::{
    mixed_area_measure, mixed_volume, segment_mixed_volume, surface_area_measure,
};
use mvlab_core::{
    convex_hull, q, qi, vertex_enumeration, Halfspace, Polytope, PrimitiveNormal, Rational, Vector,
};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn point(n: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec((-6i64..=6).prop_map(|k| q(k, 2)), n)
}

/// Hull of up to `max` points; any affine dimension.
fn body(n: usize, max: usize) -> impl Strategy<Value = Polytope> {
    prop::collection::vec(point(n), 1..=max)
        .prop_map(move |pts| Polytope::from_points(n, pts).unwrap())
}

fn full_body(n: usize, max: usize) -> impl Strategy<Value = Polytope> {
    body(n, max).prop_filter("full-dimensional", |p| p.is_full_dimensional())
}

fn direction(n: usize) -> impl Strategy<Value = PrimitiveNormal> {
    prop::collection::vec(-3i64..=3, n)
        .prop_filter_map("nonzero", |c| PrimitiveNormal::from_i64(&c).ok())
}

fn dim() -> impl Strategy<Value = usize> {
    2usize..=3
}

fn mv_with(first: &[&Polytope], fill: &Polytope) -> Rational {
    let n = fill.dim();
    let mut v = first.to_vec();
    v.resize(n, fill);
    mixed_volume(&v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn hull_is_idempotent(p in dim().prop_flat_map(|n| full_body(n, 8))) {
        let again = convex_hull(p.vertices(), p.dim()).unwrap();
        prop_assert_eq!(again.vertices(), p.vertices());
        prop_assert_eq!(again.facet_normals(), p.facet_normals());
    }

    #[test]
    fn halfspace_round_trip(p in (2usize..=4).prop_flat_map(|n| full_body(n, n + 3))) {
        let q = vertex_enumeration(&p.halfspaces(), p.dim()).unwrap();
        prop_assert_eq!(q.vertices(), p.vertices());
    }

    #[test]
    fn clipping_splits_volume(
        (p, z, c) in dim().prop_flat_map(|n| (full_body(n, 7), direction(n), -4i64..=4))
    ) {
        let h = Halfspace::at_most(z, q(c, 3));
        let vol = |x: Option<Polytope>| x.map(|x| x.volume()).unwrap_or_else(Rational::zero);
        prop_assert_eq!(vol(p.clip(&h)) + vol(p.clip(&h.complement())), p.volume());
    }

    #[test]
    fn facet_identity(p in dim().prop_flat_map(|n| full_body(n, 8))) {
        // Σ w̃(z) z = 0 and (1/n) Σ h(z) w̃(z) = Vol
        let n = p.dim();
        let s = surface_area_measure(&p);
        for j in 0..n {
            let c: Rational = s.atoms().map(|(z, w)| w * Rational::from_integer(z.coords()[j].clone())).sum();
            prop_assert!(c.is_zero());
        }
        let vol = s.integrate(|z| p.support_value(z)) / qi(n as i64);
        prop_assert_eq!(vol, p.volume());
    }

    #[test]
    fn support_is_additive(
        (a, b, z) in dim().prop_flat_map(|n| (body(n, 5), body(n, 5), direction(n)))
    ) {
        let s = a.minkowski_sum(&b).unwrap();
        prop_assert_eq!(s.support_value(&z), a.support_value(&z) + b.support_value(&z));
    }

    #[test]
    fn mixed_volume_is_symmetric(
        bodies in dim().prop_flat_map(|n| prop::collection::vec(body(n, 4), n))
    ) {
        let refs: Vec<&Polytope> = bodies.iter().collect();
        let mut rev = refs.clone();
        rev.reverse();
        prop_assert_eq!(mixed_volume(&refs).unwrap(), mixed_volume(&rev).unwrap());
    }

    #[test]
    fn diagonal_is_volume(p in dim().prop_flat_map(|n| body(n, 6))) {
        prop_assert_eq!(mv_with(&[], &p), p.volume());
    }

    #[test]
    fn mixed_volume_is_multilinear(
        (a, b, c, s, t) in dim().prop_flat_map(|n| {
            (body(n, 4), body(n, 4), full_body(n, 5), 1i64..=3, 1i64..=3)
        })
    ) {
        let sum = a.scale(&qi(s)).minkowski_sum(&b.scale(&qi(t))).unwrap();
        let lhs = mv_with(&[&sum], &c);
        let rhs = qi(s) * mv_with(&[&a], &c) + qi(t) * mv_with(&[&b], &c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mixed_volume_is_translation_invariant(
        (a, b, x) in dim().prop_flat_map(|n| (body(n, 4), full_body(n, 5), point(n)))
    ) {
        prop_assert_eq!(mv_with(&[&a.translate(&x)], &b), mv_with(&[&a], &b));
    }

    #[test]
    fn mixed_volume_is_monotone(
        (a, extra, c) in dim().prop_flat_map(|n| (body(n, 4), point(n), full_body(n, 5)))
    ) {
        let mut pts = a.vertices().to_vec();
        pts.push(extra);
        let bigger = Polytope::from_points(a.dim(), pts).unwrap();
        prop_assert!(mv_with(&[&a], &c) <= mv_with(&[&bigger], &c));
    }

    #[test]
    fn segment_reduction(
        (v, bodies) in dim().prop_flat_map(|n| {
            (point(n).prop_filter("nonzero", |v| v.iter().any(|c| !c.is_zero())),
             prop::collection::vec(body(n, 5), n - 1))
        })
    ) {
        let refs: Vec<&Polytope> = bodies.iter().collect();
        let s = Polytope::segment_from_origin(v.clone()).unwrap();
        let mut slots = vec![&s];
        slots.extend(&refs);
        prop_assert_eq!(segment_mixed_volume(&v, &refs).unwrap(), mixed_volume(&slots).unwrap());
    }

    #[test]
    fn mixed_area_support_within_sum(
        bodies in dim().prop_flat_map(|n| prop::collection::vec(full_body(n, 5), n - 1))
    ) {
        let refs: Vec<&Polytope> = bodies.iter().collect();
        let m = mixed_area_measure(&refs).unwrap();
        let sum = refs[1..].iter().try_fold(refs[0].clone(), |acc, b| acc.minkowski_sum(b)).unwrap();
        let normals = sum.facet_normals();
        prop_assert!(m.support().all(|z| normals.contains(z)));
        prop_assert!(m.atoms().all(|(_, w)| w.is_positive()));
    }

    #[test]
    fn simplices_satisfy_bezout(
        (seed, l, m) in dim().prop_flat_map(|n| (any::<u64>(), body(n, 4), body(n, 4)))
    ) {
        let n = l.dim();
        let k = random_affine_simplex(&mut ChaCha8Rng::seed_from_u64(seed), n);
        prop_assert!(!bezout_gap(&l, &m, &k).unwrap().gap.is_negative());
    }

    #[test]
    fn l_equal_k_is_equality((k, m) in dim().prop_flat_map(|n| (full_body(n, 6), body(n, 5)))) {
        prop_assert!(BezoutEvaluator::new(&k).unwrap().gap(&k, &m).is_zero());
    }

    #[test]
    fn small_moves_keep_normals((k, pick) in dim().prop_flat_map(|n| (full_body(n, 7), any::<prop::sample::Index>()))) {
        let i = pick.index(k.facets().len());
        let range = safe_move_range(&k, i).unwrap();
        for t in [&range.max / qi(2), &range.min / qi(2)] {
            let kt = move_facet(&k, &MoveSpec::new(i, t)).unwrap();
            prop_assert_eq!(kt.facet_normals(), k.facet_normals());
        }
    }

    #[test]
    fn aleksandrov_fenchel(
        bodies in dim().prop_flat_map(|n| prop::collection::vec(body(n, 4), n))
    ) {
        let rest: Vec<&Polytope> = bodies[2..].iter().collect();
        prop_assert!(!af_spot_check(&bodies[0], &bodies[1], &rest).unwrap().is_negative());
    }

    #[test]
    fn facet_move_is_linear((k, pick, c) in dim().prop_flat_map(|n| (full_body(n, 6), any::<prop::sample::Index>(), 1i64..=4))) {
        let i = pick.index(k.facets().len());
        let range = safe_move_range(&k, i).unwrap();
        let p = k.scale(&q(c, 2));
        let res = facet_move_linearity_check(&k, &p, i, &(&range.max / qi(2))).unwrap();
        prop_assert!(res.is_zero());
    }

    #[test]
    fn homothety_is_recognized(
        (k, c, x) in dim().prop_flat_map(|n| (full_body(n, 6), 1i64..=5, point(n)))
    ) {
        let lambda = q(c, 3);
        let p = k.scale(&lambda).translate(&x);
        prop_assert_eq!(homothety_check(&k, &p), Some(lambda));
    }
}
