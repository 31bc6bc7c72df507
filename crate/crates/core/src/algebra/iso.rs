//! Inverting candidate isomorphisms and simplifying presentations.

use super::error::AlgebraError;
use super::fp::{hom_check, AlgMorphism, FpAlgebra};
use super::groebner::groebner_basis;
use super::poly::{vars, MonomialOrder, Polynomial};

/// The inverse of `f: A → B`, when `f` is an isomorphism.
///
/// Each generator of `B` is reduced modulo the graph ideal under a lex order
/// eliminating `B`'s generators; surjectivity means the remainder only
/// involves `A`'s generators. Both composites are then checked.
pub fn try_inverse(f: &AlgMorphism) -> Result<AlgMorphism, AlgebraError> {
    let a = f.domain();
    let b = f.codomain();
    if a.is_zero_algebra() && b.is_zero_algebra() {
        return Ok(AlgMorphism::new_unchecked(b, a, vec![a.zero(); b.ngens()]));
    }
    let nb = b.ngens();
    let na = a.ngens();
    let mut names: Vec<String> = b.vars().iter().map(|v| format!("{v}'")).collect();
    names.extend(a.vars().iter().cloned());
    let jv = vars(&names);
    let bmap: Vec<usize> = (0..nb).collect();
    let amap: Vec<usize> = (nb..nb + na).collect();
    let mut gens: Vec<Polynomial> = b.relations().iter().map(|r| r.rename_into(&jv, &bmap)).collect();
    gens.extend(a.relations().iter().map(|r| r.rename_into(&jv, &amap)));
    for (i, img) in f.images().iter().enumerate() {
        gens.push(&Polynomial::var(&jv, nb + i) - &img.rename_into(&jv, &bmap));
    }
    let gb = groebner_basis(&gens, &jv, MonomialOrder::Lex);
    let back: Vec<Option<usize>> = (0..nb).map(|_| None).chain((0..na).map(Some)).collect();
    let mut images = Vec::with_capacity(nb);
    for j in 0..nb {
        let r = gb.normal_form(&Polynomial::var(&jv, j));
        if (0..nb).any(|k| r.involves(k)) {
            return Err(AlgebraError::NotIsomorphism(format!(
                "{} is not in the image of {}",
                b.vars()[j],
                f.describe()
            )));
        }
        images.push(r.restrict_vars(a.vars(), &back));
    }
    let g = hom_check(b, a, images)
        .map_err(|e| AlgebraError::NotIsomorphism(format!("inverse candidate ill-defined: {e}")))?;
    if !f.then(&g).is_identity() {
        return Err(AlgebraError::NotIsomorphism("not injective".into()));
    }
    if !g.then(f).is_identity() {
        return Err(AlgebraError::NotIsomorphism("composite on the codomain is not the identity".into()));
    }
    Ok(g)
}

/// A presentation with fewer generators and mutually inverse maps to it.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub algebra: FpAlgebra,
    pub to_simplified: AlgMorphism,
    pub from_simplified: AlgMorphism,
}

/// Drops generators fixed by degree-one elements of the reduced basis.
pub fn eliminate_linear_generators(a: &FpAlgebra) -> Simplified {
    let mut current = a.clone();
    let mut to = AlgMorphism::identity(a);
    let mut from = AlgMorphism::identity(a);
    loop {
        let gb = current.groebner();
        if gb.is_unit() {
            break;
        }
        let found = gb.polys().iter().find_map(|p| {
            let lm = p.leading_monomial(current.order())?;
            (lm.degree() == 1).then(|| (lm.pure_power_var().unwrap(), p.clone()))
        });
        let Some((var, rel)) = found else { break };
        let keep: Vec<usize> = (0..current.ngens()).filter(|&i| i != var).collect();
        let names: Vec<String> = keep.iter().map(|&i| current.vars()[i].clone()).collect();
        let nv = vars(&names);
        let map: Vec<Option<usize>> =
            (0..current.ngens()).map(|i| keep.iter().position(|&k| k == i)).collect();
        let rels: Vec<Polynomial> = gb
            .polys()
            .iter()
            .filter(|p| **p != rel)
            .map(|p| p.restrict_vars(&nv, &map))
            .collect();
        let next = FpAlgebra::with_order(&nv, rels, current.order());
        // rel is monic in var: var = var - rel
        let solved = (&Polynomial::var(current.vars(), var) - &rel).restrict_vars(&nv, &map);
        let images: Vec<Polynomial> = (0..current.ngens())
            .map(|i| match map[i] {
                Some(k) => next.gen(k),
                None => solved.clone(),
            })
            .collect();
        let step_to = AlgMorphism::new_unchecked(&current, &next, images);
        let step_from = AlgMorphism::new_unchecked(
            &next,
            &current,
            keep.iter().map(|&i| current.gen(i)).collect(),
        );
        to = to.then(&step_to);
        from = step_from.then(&from);
        current = next;
    }
    Simplified { algebra: current, to_simplified: to, from_simplified: from }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(names: &[&str], rels: &[&str]) -> FpAlgebra {
        FpAlgebra::parse(names, rels).unwrap()
    }

    #[test]
    fn inverse_of_a_renaming_and_a_shear() {
        let kab = FpAlgebra::free(&["a", "b"]);
        let kyz = FpAlgebra::free(&["y", "z"]);
        let f = hom_check(&kab, &kyz, vec![kyz.element("y").unwrap(), kyz.element("z + y^2").unwrap()]).unwrap();
        let g = try_inverse(&f).unwrap();
        assert_eq!(g.describe(), "y ↦ a, z ↦ -a^2 + b");
    }

    #[test]
    fn non_isomorphisms_are_rejected() {
        let kx = FpAlgebra::free(&["x"]);
        let f = hom_check(&kx, &kx, vec![kx.element("x^2").unwrap()]).unwrap();
        assert!(try_inverse(&f).is_err());
        let d = alg(&["x"], &["x^2"]);
        let proj = kx.quotient(&[kx.element("x^2").unwrap()]).1;
        assert!(proj.codomain().same_presentation(&d));
        assert!(try_inverse(&proj).is_err());
    }

    #[test]
    fn linear_generators_are_eliminated() {
        let a = alg(&["a", "b"], &["a^2", "2 a b", "a"]);
        let s = eliminate_linear_generators(&a);
        assert_eq!(s.algebra.to_string(), "k[b]");
        assert!(s.to_simplified.then(&s.from_simplified).is_identity());
        assert!(s.from_simplified.then(&s.to_simplified).is_identity());

        let b = alg(&["x", "y", "z"], &["z - x - 2", "y^2 - x"]);
        let s = eliminate_linear_generators(&b);
        assert_eq!(s.algebra.ngens(), 2);
        assert!(s.to_simplified.then(&s.from_simplified).is_identity());
    }
}
