use std::sync::Arc;

use cohesion_core::rig::{
    verify_prop2, verify_prop2_line, A_of, A_of_line, Bound, FiniteRig, Interval, M_of, M_of_line, QIntervalSet,
};
use cohesion_core::algebra::Rational;
use cohesion_core::topos::{prop2_internal, FinCat, InternalMonoid, Subpresheaf};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn bound() -> impl Strategy<Value = Bound> {
    prop_oneof![
        1 => Just(Bound::NegInf),
        1 => Just(Bound::PosInf),
        6 => (-6i64..=6).prop_map(|n| Bound::Finite(q(n, 2))),
    ]
}

fn interval_set() -> impl Strategy<Value = QIntervalSet> {
    prop::collection::vec((bound(), any::<bool>(), bound(), any::<bool>()), 0..4).prop_map(|raw| {
        QIntervalSet::from_intervals(raw.into_iter().filter_map(|(lo, lc, hi, hc)| Interval::new(lo, lc, hi, hc)).collect())
    })
}

/// Test points: every half-integer in range and the midpoints between them.
fn probes() -> Vec<Rational> {
    (-40i64..=40).map(|n| q(n, 4)).collect()
}

fn canonical(s: &QIntervalSet) -> bool {
    s.intervals().windows(2).all(|w| match w[0].hi.cmp(&w[1].lo) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Equal => !w[0].hi_closed && !w[1].lo_closed,
        std::cmp::Ordering::Greater => false,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn operations_are_canonical_and_exact(p in interval_set(), r in interval_set(), a in -4i64..=4, l in -3i64..=3) {
        let (a, l) = (q(a, 2), q(l, 1));
        for s in [p.clone(), p.intersection(&r), p.union(&r), p.complement(), p.translate(&a), p.scale(&l)] {
            prop_assert!(canonical(&s));
            prop_assert_eq!(QIntervalSet::from_intervals(s.intervals().to_vec()), s);
        }
        for x in probes() {
            prop_assert_eq!(p.intersection(&r).contains(&x), p.contains(&x) && r.contains(&x));
            prop_assert_eq!(p.union(&r).contains(&x), p.contains(&x) || r.contains(&x));
            prop_assert_eq!(p.complement().contains(&x), !p.contains(&x));
            prop_assert_eq!(p.translate(&a).contains(&(&x + &a)), p.contains(&x));
            if l != q(0, 1) {
                prop_assert_eq!(p.scale(&l).contains(&(&x * &l)), p.contains(&x));
            }
        }
        prop_assert_eq!(p.intersection(&r).is_subset(&p), true);
        prop_assert_eq!(p.is_subset(&r), p.intersection(&r) == p);
    }

    /// `A` and `M` agree with their definitions on sampled points, and the clauses hold.
    #[test]
    fn line_preorder_matches_its_definition(p in interval_set()) {
        let a = A_of_line(&p);
        let m = M_of_line(&a);
        prop_assert!(verify_prop2_line(&p).holds());
        for x in probes() {
            prop_assert_eq!(a.contains(&x), p.translate(&x).is_subset(&p), "a = {}", x);
            let scaled = if x == q(0, 1) { QIntervalSet::point(q(0, 1)) } else { a.scale(&x) };
            let expect = if a.is_empty() { true } else { scaled.is_subset(&a) };
            prop_assert_eq!(m.contains(&x), expect, "λ = {}", x);
        }
    }
}

#[test]
fn catalog_rigs_satisfy_the_rig_axioms() {
    for name in FiniteRig::CATALOG {
        let k = FiniteRig::catalog(name).unwrap();
        let n = k.size();
        for x in 0..n {
            assert_eq!(k.add(x, k.zero()), x);
            assert_eq!(k.mul(x, k.one()), x);
            assert_eq!(k.mul(k.one(), x), x);
            assert_eq!(k.mul(x, k.zero()), k.zero());
            for y in 0..n {
                assert_eq!(k.add(x, y), k.add(y, x));
                for z in 0..n {
                    assert_eq!(k.add(k.add(x, y), z), k.add(x, k.add(y, z)));
                    assert_eq!(k.mul(k.mul(x, y), z), k.mul(x, k.mul(y, z)));
                    assert_eq!(k.mul(x, k.add(y, z)), k.add(k.mul(x, y), k.mul(x, z)));
                    assert_eq!(k.mul(k.add(y, z), x), k.add(k.mul(y, x), k.mul(z, x)));
                }
            }
        }
    }
}

#[test]
fn prop2_clauses_hold_for_every_subset() {
    for name in FiniteRig::CATALOG {
        let k = FiniteRig::catalog(name).unwrap();
        for p in k.all_subsets() {
            let report = verify_prop2(&k, &p);
            assert!(report.holds(), "{name}, {}", p.display(&k));
            assert!(report.a.contains(k.zero()));
        }
    }
}

/// Constant internal rigs on a non-trivial site agree with the external computation at every object.
#[test]
fn internal_and_external_agree_on_reflexive_graphs() {
    let site = Arc::new(FinCat::reflexive_graph());
    for name in FiniteRig::CATALOG {
        let rig = FiniteRig::catalog(name).unwrap();
        let k = InternalMonoid::constant_rig(&site, &rig).unwrap();
        for p in rig.all_subsets() {
            let sub = Subpresheaf::new(&k.carrier, |_, x| p.contains(x)).unwrap();
            let internal = prop2_internal(&k, &sub).unwrap();
            let a = A_of(&rig, &p);
            let m = M_of(&rig, &a);
            for c in 0..site.object_count() {
                assert_eq!(internal.a.members(c), a.elements().collect::<Vec<_>>().as_slice());
                assert_eq!(internal.m.members(c), m.elements().collect::<Vec<_>>().as_slice());
            }
        }
    }
}
