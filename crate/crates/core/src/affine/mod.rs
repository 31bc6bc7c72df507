//! Affine ℚ-schemes, represented by their coordinate algebras.
//!
//! A map `Spec B → Spec A` is an [`AlgMorphism`] `A → B`; products of schemes
//! are tensor products of algebras and pullbacks are pushouts.

mod prolong;
mod ring;

use std::fmt;

use thiserror::Error;

use crate::algebra::{
    hom_check, is_weil, tensor_coproduct, weil_point, AlgMorphism, AlgebraError, Coproduct, FiniteBasis, FpAlgebra,
    Polynomial,
};

pub use prolong::{
    check_euler_composition, euler_reals, monoid_mult, weil_prolongation, EulerCompositionReport, EulerMonoid,
    EulerReals, MonoidLaws, Prolongation,
};
pub use ring::{check_kl, invertibles_scheme, DSource, Invertibles, KlCertificate, KlReport, RingObject, RingTerm};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AffineError {
    #[error("{0} is not a Weil algebra")]
    NotWeil(String),
    #[error("square-zero part {0} is not a Weil algebra")]
    DNotWeil(String),
    #[error("invalid ring structure: {0}")]
    RingStructure(String),
    #[error("deciding this requires a ring structure on {0}")]
    RingStructureRequired(String),
    #[error("point does not belong to {0}")]
    BadPoint(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug)]
pub struct AffineScheme {
    pub algebra: FpAlgebra,
    pub name: String,
}

impl AffineScheme {
    pub fn spec(algebra: FpAlgebra) -> Self {
        let name = format!("Spec({algebra})");
        AffineScheme { algebra, name }
    }

    pub fn named(name: impl Into<String>, algebra: FpAlgebra) -> Self {
        AffineScheme { algebra, name: name.into() }
    }

    pub fn terminal() -> Self {
        Self::spec(FpAlgebra::ground())
    }
}

impl fmt::Display for AffineScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Spec({})", self.algebra)
    }
}

/// A scheme with a chosen point `1 → X`, i.e. a map `A → k`.
#[derive(Clone, Debug)]
pub struct PointedScheme {
    pub scheme: AffineScheme,
    pub point: AlgMorphism,
}

impl PointedScheme {
    pub fn new(scheme: AffineScheme, point: AlgMorphism) -> Result<Self, AffineError> {
        let ok = point.domain().same_presentation(&scheme.algebra)
            && point.codomain().ngens() == 0
            && !point.codomain().is_zero_algebra();
        if !ok {
            return Err(AffineError::BadPoint(scheme.algebra.presentation()));
        }
        hom_check(point.domain(), point.codomain(), point.images().to_vec())?;
        Ok(PointedScheme { scheme, point })
    }

    /// A Weil algebra's spectrum with its unique point.
    pub fn weil(algebra: FpAlgebra) -> Result<Self, AffineError> {
        let point = weil_point(&algebra).ok_or_else(|| AffineError::NotWeil(algebra.presentation()))?;
        Ok(PointedScheme { scheme: AffineScheme::spec(algebra), point })
    }
}

/// Pullback of `Spec X → Spec S ← Spec Y`, given dually by `f: S → X` and `g: S → Y`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub algebra: FpAlgebra,
    /// Dual of the projection to `Spec X`.
    pub first: AlgMorphism,
    /// Dual of the projection to `Spec Y`.
    pub second: AlgMorphism,
}

pub fn pullback(f: &AlgMorphism, g: &AlgMorphism) -> Pullback {
    assert!(f.domain().same_presentation(g.domain()), "legs over different bases");
    let c = tensor_coproduct(f.codomain(), g.codomain());
    let extra: Vec<Polynomial> = f
        .domain()
        .gens()
        .iter()
        .map(|s| &c.left.apply(&f.apply(s)) - &c.right.apply(&g.apply(s)))
        .collect();
    let (algebra, proj) = c.algebra.quotient(&extra);
    Pullback { first: c.left.then(&proj), second: c.right.then(&proj), algebra }
}

/// Coefficients of `p ∈ C ⊗ W` along the monomial basis of `W`, as elements of `C`.
pub(crate) fn coefficients_along(s: &Coproduct, basis: &FiniteBasis, p: &Polynomial) -> Vec<Polynomial> {
    let c = s.left.domain();
    let nc = c.ngens();
    let p = s.algebra.reduce(p);
    let mut out = vec![Polynomial::zero(c.vars()); basis.dim()];
    for (m, coef) in p.terms() {
        let cpart = crate::algebra::Monomial(m.0[..nc].to_vec());
        let wpart = crate::algebra::Monomial(m.0[nc..].to_vec());
        let j = basis
            .monomials
            .iter()
            .position(|b| *b == wpart)
            .expect("normal form outside the standard monomials");
        out[j].add_term(cpart, coef.clone());
    }
    out.into_iter().map(|q| c.reduce(&q)).collect()
}

/// `C ⊗ W` with `W`'s generators renamed apart from `C`'s.
pub(crate) fn tensor_with_weil(c: &FpAlgebra, w: &FpAlgebra) -> Coproduct {
    let left: Vec<String> = c.vars().to_vec();
    let right: Vec<String> = (0..w.ngens()).map(|i| format!("ω{i}")).collect();
    crate::algebra::tensor_with_names(c, w, left, right)
}

pub(crate) fn require_weil(w: &FpAlgebra) -> Result<(), AffineError> {
    if is_weil(w) {
        Ok(())
    } else {
        Err(AffineError::NotWeil(w.presentation()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{eliminate_linear_generators, finite_dim_basis, points, rat};

    fn alg(names: &[&str], rels: &[&str]) -> FpAlgebra {
        FpAlgebra::parse(names, rels).unwrap()
    }

    #[test]
    fn pullback_along_identity_is_the_other_leg() {
        let s = alg(&["x"], &["x^2 - 1"]);
        let y = alg(&["t"], &["t^3"]);
        let g = hom_check(&s, &y, vec![y.element("1").unwrap()]).unwrap();
        let pb = pullback(&AlgMorphism::identity(&s), &g);
        assert_eq!(finite_dim_basis(&pb.algebra).dimension(), Some(3));
        let simp = eliminate_linear_generators(&pb.algebra);
        assert_eq!(simp.algebra.ngens(), 1);
    }

    #[test]
    fn pullback_picks_a_component() {
        // Spec k[x]/(x² - 1) → Spec(k × k) classifies the idempotent (1 + x)/2
        let two = alg(&["e"], &["e^2 - e"]);
        let b = alg(&["x"], &["x^2 - 1"]);
        let classifier = hom_check(&two, &b, vec![b.element("1/2 + 1/2 x").unwrap()]).unwrap();
        let second_point = AlgMorphism::point(&two, &[rat(1)]).unwrap();
        let pb = pullback(&classifier, &second_point);
        assert_eq!(finite_dim_basis(&pb.algebra).dimension(), Some(1));
        let pts = points(&pb.algebra).unwrap();
        assert_eq!(pts.points.len(), 1);
        let x = pts.points[0].apply(&pb.first.apply(&b.gen(0)));
        assert_eq!(x.as_constant(), Some(rat(1)));
    }

    #[test]
    fn pointed_weil_scheme() {
        let t = PointedScheme::weil(alg(&["y"], &["y^2"])).unwrap();
        assert_eq!(t.point.describe(), "y ↦ 0");
        assert!(PointedScheme::weil(FpAlgebra::free(&["x"])).is_err());
        assert_eq!(t.scheme.to_string(), "Spec(k[y]/(y^2))");
    }
}
