mod common;

use std::sync::Arc;

use cohesion_core::rig::FiniteRig;
use cohesion_core::topos::family::{enumerate_presheaves, random_presheaf};
use cohesion_core::topos::fixtures::{boolean_monoid, two_component_group};
use cohesion_core::topos::{
    check_precohesive_site, components, count_homs, coproduct, gate_counterexample, product, units_and_bidirectional,
    AdjointString, Budget, Exponential, FinCat, InternalMonoid, Presheaf,
};
use common::{brute_force_hom_count, catalog_site};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ACCEPTED: [&str; 3] = ["point", "retract", "reflexive_graph"];

fn budget() -> Budget {
    Budget::new(50_000_000)
}

fn sample(site: &Arc<FinCat>, seed: u64, n: usize) -> Vec<Presheaf> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_presheaf(site, &mut rng, 3, 2)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn constructions_are_functorial(site in prop::sample::select(ACCEPTED.to_vec()), seed in any::<u64>()) {
        let site = catalog_site(site);
        let xs = sample(&site, seed, 2);
        let (x, y) = (&xs[0], &xs[1]);
        prop_assert!(x.validate().is_ok() && y.validate().is_ok());
        let p = product(x, y);
        prop_assert!(p.presheaf.validate().is_ok() && p.first.validate().is_ok() && p.second.validate().is_ok());
        let s = coproduct(x, y);
        prop_assert!(s.presheaf.validate().is_ok() && s.left.validate().is_ok() && s.right.validate().is_ok());
        let string = AdjointString::new(&site).unwrap();
        prop_assert!(string.sigma(x).validate().is_ok() && string.beta(x).validate().is_ok());
        prop_assert!(string.codiscrete_unit(x).validate().is_ok());
    }

    #[test]
    fn maps_out_of_a_coproduct_are_pairs(site in prop::sample::select(ACCEPTED.to_vec()), seed in any::<u64>()) {
        let site = catalog_site(site);
        let xs = sample(&site, seed, 3);
        let sum = coproduct(&xs[0], &xs[1]).presheaf;
        let mut b = budget();
        let whole = count_homs(&sum, &xs[2], &mut b).unwrap();
        let parts = count_homs(&xs[0], &xs[2], &mut b).unwrap() * count_homs(&xs[1], &xs[2], &mut b).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn components_preserve_products(site in prop::sample::select(ACCEPTED.to_vec()), seed in any::<u64>()) {
        let site = catalog_site(site);
        let string = AdjointString::new(&site).unwrap();
        let xs = sample(&site, seed, 2);
        prop_assert!(string.preserves_product(&xs[0], &xs[1]));
        let p = product(&xs[0], &xs[1]).presheaf;
        prop_assert_eq!(components(&p).count, components(&xs[0]).count * components(&xs[1]).count);
    }

    #[test]
    fn hyperconnection_on_random_presheaves(site in prop::sample::select(ACCEPTED.to_vec()), seed in any::<u64>()) {
        let site = catalog_site(site);
        let string = AdjointString::new(&site).unwrap();
        for x in sample(&site, seed, 3) {
            let h = string.hyperconnected_check(&x);
            prop_assert!(h.beta_monic && h.sigma_epic);
            for n in 0..3 {
                let t = string.triangle_identities(&x, n);
                prop_assert!(t.holds(), "{:?}", t.failures);
            }
        }
    }

    #[test]
    fn discrete_inclusion_is_fully_faithful(site in prop::sample::select(ACCEPTED.to_vec()), n in 0usize..4, m in 0usize..4) {
        let string = AdjointString::new(&catalog_site(site)).unwrap();
        prop_assert!(string.discrete_fully_faithful(n, m, &mut budget()).unwrap());
    }
}

/// `|Hom(Z, Xᵀ)| = |Hom(Z × T, X)|` for every `Z` with at most two elements per object.
#[test]
fn exponential_matches_the_brute_force_count() {
    for name in ["point", "retract", "reflexive_graph"] {
        let site = catalog_site(name);
        let mut b = budget();
        let zs = enumerate_presheaves(&site, 2, &mut b).unwrap();
        let (x, t) = (sample(&site, 7, 1).remove(0), sample(&site, 11, 1).remove(0));
        let exp = Exponential::new(&x, &t, &mut b).unwrap();
        assert!(exp.presheaf.validate().is_ok());
        for z in &zs {
            let zt = product(z, &t).presheaf;
            let lhs = count_homs(z, &exp.presheaf, &mut b).unwrap();
            let rhs = brute_force_hom_count(&zt, &x, 5_000_000).expect("small enough to brute force");
            assert_eq!(lhs, rhs, "{name}");
        }
    }
}

#[test]
fn representables_are_connected() {
    for name in ACCEPTED {
        let site = catalog_site(name);
        for c in 0..site.object_count() {
            assert_eq!(components(&Presheaf::representable(&site, c)).count, 1, "{name}, object {c}");
        }
    }
}

#[test]
fn gated_out_sites_yield_a_counterexample() {
    let site = Arc::new(FinCat::arrow_category());
    assert!(!check_precohesive_site(&site).precohesive());
    let (c, _, h) = gate_counterexample(&site).expect("a witness");
    assert_eq!(site.objects()[c], "0");
    assert!(!h.sigma_epic);
    for name in ACCEPTED {
        assert!(gate_counterexample(&catalog_site(name)).is_none());
    }
}

#[test]
fn units_form_a_subpresheaf() {
    let mut monoids = vec![two_component_group().unwrap()];
    for name in ACCEPTED {
        let site = catalog_site(name);
        monoids.push(boolean_monoid(&site).unwrap());
        for rig in FiniteRig::CATALOG {
            monoids.push(InternalMonoid::constant_rig(&site, &FiniteRig::catalog(rig).unwrap()).unwrap());
        }
    }
    for m in monoids {
        let string = AdjointString::new(m.site()).unwrap();
        let report = units_and_bidirectional(&m, &string).unwrap();
        assert!(report.units.presheaf.validate().is_ok());
        assert!(report.restriction_preserves_inverses);
        assert!(report.pi0_is_group);
    }
}
