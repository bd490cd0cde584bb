//! Property tests for the structural invariants of the core modules.

use proptest::prelude::*;
use spinelim_core::families::{image_interval, FamilyParam, IntervalBox};
use spinelim_core::geometry::{AmbientPoint, ManifoldModel};
use spinelim_core::invlim::{fat_apply, random_thread, FatPoint, Thread};
use spinelim_core::suspension::{CarrierMap, FattenedMap};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn models() -> impl Strategy<Value = ManifoldModel> {
    prop_oneof![Just(ManifoldModel::Disk), Just(ManifoldModel::Annulus)]
}

proptest! {
    #[test]
    fn retraction_is_idempotent(m in models(), x in 0.0..1.0f64, y in -1.0..1.0f64) {
        let p = m.point(x, y).unwrap();
        let r = m.retraction(p);
        prop_assert_eq!(m.retraction(r), r);
        prop_assert_eq!(r.y, 0.0);
    }

    #[test]
    fn collar_roundtrip_off_spine(m in models(), x in 0.0..1.0f64, y in -1.0..1.0f64) {
        prop_assume!(y != 0.0);
        let p = m.point(x, y).unwrap();
        let c = m.ambient_to_collar(p).unwrap();
        let q = m.collar_to_ambient(c).unwrap();
        prop_assert!(m.dist(p, q) < 1e-12);
    }

    #[test]
    fn upsilon_blend_stays_close(x in 0.0..1.0f64, y in -1.0..1.0f64, delta in 1e-3..0.5f64) {
        // |phi_delta - phi| <= delta/2 and collar fibers have unit length
        let m = ManifoldModel::Disk;
        let p = m.point(x, y).unwrap();
        let a = m.upsilon(p, None).unwrap();
        let b = m.upsilon(p, Some(delta)).unwrap();
        prop_assert!(m.dist(a, b) <= delta / 2.0 + 1e-12);
    }

    #[test]
    fn lift_is_degree_one(b in 0.0..8.0f64, omega in 0.0..1.0f64,
                          x in -2.0..2.0f64, k in -5i32..=5) {
        let p = FamilyParam::standard(b, omega).unwrap();
        let lhs = p.lift_eval(x + k as f64).unwrap();
        let rhs = p.lift_eval(x).unwrap() + k as f64;
        prop_assert!((lhs - rhs).abs() <= 1e-12);
    }

    #[test]
    fn image_interval_is_monotone(s in 0.0..2.0f64,
                                  a in 0.0..1.0f64, w1 in 0.0..1.0f64, w2 in 0.0..1.0f64) {
        let p = FamilyParam::tent(s).unwrap();
        // inner box inside outer box inside [0,1]
        let outer_lo = a * (1.0 - w1);
        let outer = IntervalBox::new(outer_lo, outer_lo + w1).unwrap();
        let inner_lo = outer.lo + w2 * 0.5 * w1;
        let inner = IntervalBox::new(inner_lo, inner_lo + (1.0 - w2) * w1 * 0.5).unwrap();
        prop_assert!(outer.contains_box(&inner));
        let oi = image_interval(&p, &outer);
        let ii = image_interval(&p, &inner);
        prop_assert!(oi.contains_box(&ii), "outer {:?} inner {:?}", oi, ii);
    }

    #[test]
    fn d_infty_is_a_metric(seed in 0u64..5000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = FamilyParam::tent(1.9).unwrap();
        let u = random_thread(fam, 8, 1e-9, &mut rng).unwrap();
        let v = random_thread(fam, 8, 1e-9, &mut rng).unwrap();
        let w = random_thread(fam, 8, 1e-9, &mut rng).unwrap();
        let duv = u.d_infty(&v).unwrap();
        let dvu = v.d_infty(&u).unwrap();
        prop_assert_eq!(duv, dvu);
        prop_assert!(duv >= 0.0);
        prop_assert_eq!(u.d_infty(&u).unwrap(), 0.0);
        let duw = u.d_infty(&w).unwrap();
        let dwv = w.d_infty(&v).unwrap();
        prop_assert!(duv <= duw + dwv + 1e-15);
    }

    #[test]
    fn agreement_through_k_bounds_d_infty(seed in 0u64..3000, k in 0usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = FamilyParam::tent(1.8).unwrap();
        let base = random_thread(fam, k + 1, 1e-9, &mut rng).unwrap();
        let grow = |mut t: Thread, seed: u64| {
            use spinelim_core::invlim::PreimagePolicy;
            for i in 0..4 {
                t = t.extend_backward(PreimagePolicy::Random(seed + i)).unwrap();
            }
            t
        };
        let a = grow(base.clone(), 11);
        let b = grow(base, 999);
        prop_assert_eq!(&a.entries()[..=k], &b.entries()[..=k]);
        let d = a.d_infty(&b).unwrap();
        prop_assert!(d <= 1.0 / (k as f64 + 2.0) + 1e-15, "k={k} d={d}");
    }

    #[test]
    fn fat_apply_preserves_the_slice(x in 0.0..1.0f64, s in 1.0..2.0f64) {
        let param = FamilyParam::tent(s).unwrap();
        let out = fat_apply(&FatPoint { x, param });
        // bitwise equality of the parameter coordinate
        prop_assert!(out.param == param);
    }

    #[test]
    fn fattened_disk_image_stays_inside(s in 0.0..2.0f64, x in 0.0..1.0f64, y in -1.0..1.0f64,
                                        d in 1e-4..0.24f64, e in 1e-4..0.24f64) {
        let f = FattenedMap::new(FamilyParam::tent(s).unwrap(), d, e).unwrap();
        let q = f.apply(AmbientPoint::new(x, y));
        prop_assert!(f.model().contains(q));
    }

    #[test]
    fn fattened_annulus_image_stays_inside(b in 0.0..8.0f64, omega in 0.0..1.0f64,
                                           t in 0.0..1.0f64, r in -1.0..1.0f64,
                                           d in 1e-4..0.24f64, e in 1e-4..0.24f64) {
        let f = FattenedMap::new(FamilyParam::standard(b, omega).unwrap(), d, e).unwrap();
        let q = f.apply(AmbientPoint::new(t, r));
        prop_assert!(f.model().contains(q));
        prop_assert!((0.0..1.0).contains(&q.x));
    }

    #[test]
    fn thread_ops_preserve_validity(seed in 0u64..2000, s in 1.1..2.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = FamilyParam::tent(s).unwrap();
        let t = random_thread(fam, 10, 1e-9, &mut rng).unwrap();
        prop_assert!(t.shift().validate().is_ok());
        use spinelim_core::invlim::PreimagePolicy;
        if let Ok(e) = t.extend_backward(PreimagePolicy::Leftmost) {
            prop_assert!(e.validate().is_ok());
        }
    }
}
