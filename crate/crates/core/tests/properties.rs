//! Property-based invariants for the exact kernels: ring laws in ℤ[φ], group
//! laws in ℤ^d and H₃(ℤ), and measure/inclusion invariants of the canonical
//! box-union and point-set operations.

use aperiodic_density::boxes::BoxUnion;
use aperiodic_density::cutproject::IntervalUnion;
use aperiodic_density::group::{GElem, GroupCtx};
use aperiodic_density::points::PointSet;
use aperiodic_density::rat::{rat, ratio, Rat};
use aperiodic_density::sets::{erode, inverse, minkowski, GSet};
use aperiodic_density::zphi::QPhi;
use proptest::prelude::*;

fn qphi() -> impl Strategy<Value = QPhi> {
    ((-50i64..50, 1i64..8), (-50i64..50, 1i64..8))
        .prop_map(|((an, ad), (bn, bd))| QPhi::new(ratio(an, ad), ratio(bn, bd)))
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-30i64..30, 1i64..6).prop_map(|(n, d)| ratio(n, d))
}

fn interval_1d() -> impl Strategy<Value = BoxUnion> {
    (small_rat(), small_rat()).prop_map(|(a, b)| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        BoxUnion::interval(lo, hi)
    })
}

fn box_union_1d() -> impl Strategy<Value = BoxUnion> {
    prop::collection::vec(interval_1d(), 1..5)
        .prop_map(|ivs| ivs.iter().fold(BoxUnion::empty(1), |acc, iv| acc.union(iv)))
}

fn h3_elem() -> impl Strategy<Value = GElem> {
    (-6i64..7, -6i64..7, -6i64..7).prop_map(|(a, b, c)| GElem::int(&[a, b, c]))
}

fn z2_points() -> impl Strategy<Value = PointSet> {
    prop::collection::btree_set((-5i64..6, -5i64..6), 1..12)
        .prop_map(|s| PointSet::new(s.into_iter().map(|(x, y)| vec![x, y]).collect()))
}

fn h3_points() -> impl Strategy<Value = PointSet> {
    prop::collection::btree_set((-3i64..4, -3i64..4, -3i64..4), 1..10)
        .prop_map(|s| PointSet::new(s.into_iter().map(|(x, y, z)| vec![x, y, z]).collect()))
}

proptest! {
    // ---- ℤ[φ] with rational coefficients ----

    #[test]
    fn qphi_ring_laws(x in qphi(), y in qphi(), z in qphi()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &(-&x), QPhi::zero());
    }

    #[test]
    fn qphi_star_is_automorphism(x in qphi(), y in qphi()) {
        prop_assert_eq!((&x + &y).star(), &x.star() + &y.star());
        prop_assert_eq!((&x * &y).star(), &x.star() * &y.star());
        prop_assert_eq!(x.star().star(), x);
    }

    #[test]
    fn qphi_floor_brackets_value(x in qphi()) {
        let f = QPhi::from_int(x.floor(), 0);
        prop_assert!(f <= x);
        prop_assert!(x < &f + &QPhi::from_int(1, 0));
    }

    #[test]
    fn qphi_enclosure_brackets_value(x in qphi()) {
        // a rational enclosure of the real value a + bφ must contain the
        // exact value: lo ≤ x and x ≤ hi as elements of ℝ, tested in ℤ[φ]
        let (lo, hi) = x.enclosure(&aperiodic_density::rat::pow10_inv(6));
        prop_assert!(QPhi::from_rat(lo) <= x);
        prop_assert!(x <= QPhi::from_rat(hi));
    }

    // ---- group laws ----

    #[test]
    fn heisenberg_group_laws(x in h3_elem(), y in h3_elem(), z in h3_elem()) {
        let ctx = GroupCtx::heisenberg();
        let assoc_l = ctx.multiply(&ctx.multiply(&x, &y).unwrap(), &z).unwrap();
        let assoc_r = ctx.multiply(&x, &ctx.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(assoc_l, assoc_r);
        let e = GElem::int(&[0, 0, 0]);
        prop_assert_eq!(ctx.multiply(&x, &ctx.inverse(&x).unwrap()).unwrap(), e.clone());
        prop_assert_eq!(ctx.multiply(&ctx.inverse(&x).unwrap(), &x).unwrap(), e);
    }

    #[test]
    fn heisenberg_inverse_antihomomorphism(x in h3_elem(), y in h3_elem()) {
        let ctx = GroupCtx::heisenberg();
        let lhs = ctx.inverse(&ctx.multiply(&x, &y).unwrap()).unwrap();
        let rhs = ctx.multiply(&ctx.inverse(&y).unwrap(), &ctx.inverse(&x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    // ---- canonical box unions ----

    #[test]
    fn box_union_inclusion_exclusion(a in box_union_1d(), b in box_union_1d()) {
        let u = a.union(&b);
        let i = a.intersect(&b);
        prop_assert_eq!(u.volume() + i.volume(), a.volume() + b.volume());
        prop_assert!(a.is_subset(&u));
        prop_assert!(i.is_subset(&a));
        let d = a.difference(&b);
        prop_assert_eq!(d.volume() + i.volume(), a.volume());
        prop_assert!(d.intersect(&b).is_empty());
    }

    #[test]
    fn box_union_canonical_form_is_stable(a in box_union_1d(), b in box_union_1d()) {
        // set operations on canonical forms are order-insensitive
        prop_assert_eq!(a.union(&b), b.union(&a));
        prop_assert_eq!(a.intersect(&b), b.intersect(&a));
        prop_assert_eq!(a.symmetric_difference(&b), b.symmetric_difference(&a));
        prop_assert_eq!(a.union(&a), a.clone());
    }

    #[test]
    fn box_union_translate_preserves_volume(a in box_union_1d(), t in small_rat()) {
        prop_assert_eq!(a.translate(&[t]).volume(), a.volume());
    }

    #[test]
    fn box_union_minkowski_dominates(a in box_union_1d(), b in box_union_1d()) {
        if a.is_empty() || b.is_empty() {
            return Ok(());
        }
        let s = a.minkowski(&b);
        // each translate of a by a point of b sits inside the sum
        let probe = b.boxes()[0].clone();
        prop_assert!(a.translate(&probe.lo).is_subset(&s));
        prop_assert!(s.volume() >= a.volume());
        prop_assert!(s.volume() >= b.volume());
    }

    // ---- point sets under group products ----

    #[test]
    fn pointset_minkowski_associative(a in h3_points(), b in h3_points(), c in h3_points()) {
        let ctx = GroupCtx::heisenberg();
        let ga = GSet::Points(a);
        let gb = GSet::Points(b);
        let gc = GSet::Points(c);
        let l = minkowski(&ctx, &minkowski(&ctx, &ga, &gb).unwrap(), &gc).unwrap();
        let r = minkowski(&ctx, &ga, &minkowski(&ctx, &gb, &gc).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn pointset_inverse_involution(a in z2_points()) {
        let ctx = GroupCtx::int_lattice(2);
        let ga = GSet::Points(a);
        let back = inverse(&ctx, &inverse(&ctx, &ga).unwrap()).unwrap();
        prop_assert_eq!(back, ga);
    }

    #[test]
    fn erosion_dilation_sandwich(a in z2_points(), k in z2_points()) {
        // for K containing the identity: erode(A, K) ⊆ A ⊆ KA
        let ctx = GroupCtx::int_lattice(2);
        let mut kp: Vec<Vec<i64>> = k.iter().map(|p| p.to_vec()).collect();
        kp.push(vec![0, 0]);
        let gk = GSet::Points(PointSet::new(kp));
        let ga = GSet::Points(a);
        let er = erode(&ctx, &ga, &gk).unwrap();
        let di = minkowski(&ctx, &gk, &ga).unwrap();
        prop_assert!(er.is_subset(&ga));
        prop_assert!(ga.is_subset(&di));
    }

    // ---- exact interval unions in ℤ[φ] ----

    #[test]
    fn interval_union_measure_additivity(
        xs in prop::collection::vec((qphi(), qphi()), 1..4),
        ys in prop::collection::vec((qphi(), qphi()), 1..4),
    ) {
        let build = |parts: Vec<(QPhi, QPhi)>| {
            parts
                .into_iter()
                .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
                .fold(IntervalUnion::empty(), |acc, (lo, hi)| {
                    acc.union(&IntervalUnion::interval(lo, hi))
                })
        };
        let a = build(xs);
        let b = build(ys);
        let u = a.union(&b);
        let i = a.intersect(&b);
        prop_assert_eq!(&u.measure() + &i.measure(), &a.measure() + &b.measure());
        prop_assert!(i.is_subset(&a) && i.is_subset(&b));
        prop_assert!(a.is_subset(&u) && b.is_subset(&u));
    }
}

#[test]
fn rational_volume_regression() {
    // a fixed mixed-denominator case exercising the arrangement grid
    let u = BoxUnion::interval(ratio(1, 3), ratio(5, 6))
        .union(&BoxUnion::interval(ratio(1, 2), ratio(7, 6)))
        .union(&BoxUnion::interval(rat(2), ratio(9, 4)));
    assert_eq!(u.volume(), ratio(5, 6) + ratio(1, 4));
}
