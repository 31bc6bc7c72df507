mod common;

use cohesion_core::algebra::{
    groebner_basis, homs, idempotents, is_weil, parse_polynomial, tensor_coproduct, vars, FiniteBasis, FpAlgebra,
    Monomial, MonomialOrder, Polynomial, Rational, Vars,
};
use common::{ansatz_idempotents, idempotent_fixtures};
use num_traits::Zero;
use proptest::prelude::*;

fn small_poly(nvars: usize, max_deg: u32) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, nvars), -3i64..=3), 1..4)
}

fn build(v: &Vars, terms: &[(Vec<u32>, i64)]) -> Polynomial {
    Polynomial::from_terms(v, terms.iter().map(|(e, c)| (Monomial(e.clone()), Rational::from_integer((*c).into()))))
}

fn two_vars() -> Vars {
    vars(&["x", "y"])
}

fn alg(names: &[&str], rels: &[&str]) -> FpAlgebra {
    FpAlgebra::parse(names, rels).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduced_basis_is_independent_of_generator_order(
        gens in prop::collection::vec(small_poly(2, 2), 1..4),
        f in small_poly(2, 3),
    ) {
        let v = two_vars();
        let ps: Vec<Polynomial> = gens.iter().map(|t| build(&v, t)).collect();
        let mut reversed = ps.clone();
        reversed.reverse();
        let a = groebner_basis(&ps, &v, MonomialOrder::DegRevLex);
        let b = groebner_basis(&ps, &v, MonomialOrder::DegRevLex);
        let c = groebner_basis(&reversed, &v, MonomialOrder::DegRevLex);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.polys(), c.polys());
        let f = build(&v, &f);
        let nf = a.normal_form(&f);
        prop_assert_eq!(a.normal_form(&nf), nf);
    }

    #[test]
    fn division_trace_reconstructs_the_input(
        gens in prop::collection::vec(small_poly(2, 2), 1..4),
        cofactors in prop::collection::vec(small_poly(2, 2), 3),
        f in small_poly(2, 3),
    ) {
        let v = two_vars();
        let ps: Vec<Polynomial> = gens.iter().map(|t| build(&v, t)).collect();
        let gb = groebner_basis(&ps, &v, MonomialOrder::DegRevLex);
        for f in [build(&v, &f), ps.iter().zip(&cofactors).fold(Polynomial::zero(&v), |acc, (g, h)| &acc + &(g * &build(&v, h)))] {
            let d = gb.divide(&f);
            prop_assert_eq!(&d.remainder, &gb.normal_form(&f));
            let rebuilt = gb.polys().iter().zip(&d.quotients).fold(d.remainder.clone(), |acc, (g, q)| &acc + &(g * q));
            prop_assert_eq!(rebuilt, f);
        }
        // members of the ideal reduce to zero
        let member = ps.iter().zip(&cofactors).fold(Polynomial::zero(&v), |acc, (g, h)| &acc + &(g * &build(&v, h)));
        prop_assert!(gb.divide(&member).remainder.is_zero());
    }

    #[test]
    fn printed_polynomials_parse_back(t in small_poly(2, 4)) {
        let v = two_vars();
        let f = build(&v, &t);
        prop_assert_eq!(parse_polynomial(&f.to_string(), &v).unwrap(), f);
    }

    #[test]
    fn polynomial_ring_laws(a in small_poly(2, 2), b in small_poly(2, 2), c in small_poly(2, 2)) {
        let v = two_vars();
        let (a, b, c) = (build(&v, &a), build(&v, &b), build(&v, &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!(a.terms().all(|(m, q)| !q.is_zero() && m.0.len() == 2));
    }

    /// Monomial ideals containing a power of every variable present Weil algebras.
    #[test]
    fn weil_algebras_have_only_trivial_idempotents(a in 1u32..4, b in 1u32..4, mixed in prop::option::of((1u32..3, 1u32..3))) {
        let mut rels = vec![format!("x^{a}"), format!("y^{b}")];
        if let Some((i, j)) = mixed {
            rels.push(format!("x^{i} y^{j}"));
        }
        let rels: Vec<&str> = rels.iter().map(String::as_str).collect();
        let w = alg(&["x", "y"], &rels);
        prop_assert!(is_weil(&w));
        let es = idempotents(&w).unwrap();
        prop_assert_eq!(es.len(), 2);
        prop_assert!(es.iter().any(|e| e.is_zero()) && es.iter().any(|e| w.eq_elements(e, &w.one())));
    }

    #[test]
    fn coproduct_mediates_uniquely(ia in 0usize..5, ib in 0usize..5, ic in 0usize..3, pick_f in 0usize..64, pick_g in 0usize..64) {
        let sources = [
            alg(&["x"], &["x^2 - x"]),
            alg(&["x"], &["x^3 - x"]),
            alg(&["x"], &["x^2"]),
            alg(&["x"], &["x^2 - 1"]),
            FpAlgebra::ground(),
        ];
        let targets = [FpAlgebra::ground(), alg(&["t"], &["t^2 - t"]), alg(&["t"], &["t^3 - t"])];
        let (a, b, c) = (&sources[ia], &sources[ib], &targets[ic]);
        let (fs, gs) = (homs(a, c).unwrap(), homs(b, c).unwrap());
        prop_assume!(!fs.is_empty() && !gs.is_empty());
        let (f, g) = (&fs[pick_f % fs.len()], &gs[pick_g % gs.len()]);
        let co = tensor_coproduct(a, b);
        let mediators: Vec<_> = homs(&co.algebra, c)
            .unwrap()
            .into_iter()
            .filter(|h| co.left.then(h).same_map(f) && co.right.then(h).same_map(g))
            .collect();
        prop_assert_eq!(mediators.len(), 1);
        prop_assert!(mediators[0].same_map(&co.copair(f, g)));
    }
}

#[test]
fn splitting_matches_the_ansatz_on_every_fixture() {
    for a in idempotent_fixtures() {
        let fb = FiniteBasis::new(&a).unwrap();
        let mut found: Vec<Vec<Rational>> = idempotents(&a).unwrap().iter().map(|e| fb.coords(e)).collect();
        found.sort();
        assert_eq!(found, ansatz_idempotents(&a), "{}", a.presentation());
    }
}

#[test]
fn local_fixtures_are_connected() {
    for a in idempotent_fixtures().into_iter().filter(is_weil) {
        let es = idempotents(&a).unwrap();
        assert_eq!(es.len(), 2, "{}", a.presentation());
    }
}

#[test]
fn zero_algebra_is_tolerated() {
    let z = FpAlgebra::zero_algebra();
    assert!(z.is_zero_algebra());
    assert_eq!(idempotents(&z).unwrap().len(), 1);
    assert!(!is_weil(&z));
    // the zero algebra is terminal: exactly one map into it from anything
    assert_eq!(homs(&alg(&["x"], &["x^2 - x"]), &z).unwrap().len(), 1);
    assert!(z.eq_elements(&z.one(), &z.zero()));
}
