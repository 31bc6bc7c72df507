use cohesion_core::affine::{check_kl, euler_reals, monoid_mult, weil_prolongation, KlCertificate, PointedScheme, RingObject};
use cohesion_core::algebra::{hom_check, homs, tensor_coproduct, weil_point, AlgMorphism, FpAlgebra, Rational};
use proptest::prelude::*;

fn alg(names: &[&str], rels: &[&str]) -> FpAlgebra {
    FpAlgebra::parse(names, rels).unwrap()
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn weils() -> Vec<FpAlgebra> {
    vec![alg(&["e"], &["e^2"]), alg(&["e"], &["e^3"]), alg(&["e", "f"], &["e^2", "f^2", "e f"])]
}

#[test]
fn prolongation_represents_maps_into_the_tensor() {
    let sources = [alg(&["x"], &["x^2 - x"]), alg(&["x"], &["x^3 - x"]), alg(&["x", "y"], &["x^2 - x", "y^2 - 1"])];
    let tests = [FpAlgebra::ground(), alg(&["t"], &["t^2 - t"])];
    for a in &sources {
        for w in weils() {
            let p = weil_prolongation(a, &w).unwrap();
            for b in &tests {
                let tensor = tensor_coproduct(b, &w);
                let points = homs(&p.algebra, b).unwrap();
                let families = homs(a, &tensor.algebra).unwrap();
                assert_eq!(points.len(), families.len(), "{a} ^ {w} at {b}");
                // the bijection and its inverse
                for pt in &points {
                    let fam = p.family(pt, &tensor);
                    assert!(families.iter().any(|g| g.same_map(&fam)));
                    assert!(p.transpose(&fam, &tensor).unwrap().same_map(pt));
                }
                for fam in &families {
                    let pt = p.transpose(fam, &tensor).unwrap();
                    assert!(p.family(&pt, &tensor).same_map(fam));
                }
            }
        }
    }
}

#[test]
fn constants_split_evaluation_at_the_point() {
    for a in [alg(&["x"], &["x^3 - x"]), FpAlgebra::free(&["x"]), alg(&["x", "y"], &["x y"])] {
        for w in weils() {
            let p = weil_prolongation(&a, &w).unwrap();
            let ev0 = p.ev(&weil_point(&w).unwrap());
            assert!(ev0.then(&p.constants()).is_identity(), "{a} ^ {w}");
        }
    }
}

#[test]
fn euler_reals_form_a_monoid_with_zero() {
    for w in weils() {
        let reals = euler_reals(&PointedScheme::weil(w.clone()).unwrap()).unwrap();
        let monoid = monoid_mult(&reals).unwrap();
        assert!(monoid.laws.monoid_with_zero(), "{w}: {:?}", monoid.laws);
    }
}

#[test]
fn line_multiplication_is_the_euler_multiplication() {
    let reals = euler_reals(&PointedScheme::weil(alg(&["e"], &["e^2"])).unwrap()).unwrap();
    let monoid = monoid_mult(&reals).unwrap();
    let line = RingObject::line();
    assert!(reals.algebra().same_presentation(&line.algebra));
    assert!(monoid.mult.same_map(&line.mul));
    assert!(monoid.unit.same_map(&line.one));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// `x ↦ a u + b` is an isomorphism `k[x] → k[u]`; the verdict survives it.
    #[test]
    fn kl_verdict_survives_affine_renaming(a in prop::sample::select(vec![-3i64, -2, -1, 1, 2, 5]), b in -3i64..=3) {
        let line = RingObject::line();
        let u = FpAlgebra::free(&["u"]);
        let image = &u.gen(0).scale(&q(a)) + &u.constant(q(b));
        let iso = hom_check(&line.algebra, &u, vec![image]).unwrap();
        let moved = line.transport(&iso).unwrap();
        let before = check_kl(&line.algebra, Some(&line)).unwrap();
        let after = check_kl(&u, Some(&moved)).unwrap();
        prop_assert!(before.holds && after.holds);
        let iso_certificate = matches!(after.certificate, KlCertificate::Isomorphism { .. });
        prop_assert!(iso_certificate);
    }

    #[test]
    fn kl_failure_survives_rescaling(a in prop::sample::select(vec![-3i64, -1, 2, 7])) {
        let dual = alg(&["x"], &["x^2"]);
        let v = alg(&["v"], &["v^2"]);
        let iso: AlgMorphism = hom_check(&dual, &v, vec![v.gen(0).scale(&q(a))]).unwrap();
        prop_assert!(cohesion_core::algebra::try_inverse(&iso).is_ok());
        let before = check_kl(&dual, None).unwrap();
        let after = check_kl(&v, None).unwrap();
        prop_assert!(!before.holds && !after.holds);
        let dims = |c: &KlCertificate| match c {
            KlCertificate::DimensionMismatch { exponential, product } => Some((*exponential, *product)),
            _ => None,
        };
        prop_assert_eq!(dims(&before.certificate), dims(&after.certificate));
        prop_assert!(dims(&before.certificate).is_some());
    }
}
