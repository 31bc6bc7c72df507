//! Finitely presented commutative ℚ-algebras and their morphisms.

use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use super::error::AlgebraError;
use super::groebner::{groebner_basis, GroebnerBasis};
use super::parse::parse_polynomial;
use super::poly::{same_vars, vars, Monomial, MonomialOrder, Polynomial, Rational, Vars};

/// Generators of an ideal plus a lazily filled reduced Gröbner basis.
#[derive(Debug)]
pub struct Ideal {
    vars: Vars,
    order: MonomialOrder,
    gens: Vec<Polynomial>,
    basis: OnceLock<GroebnerBasis>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        Ideal { vars: self.vars.clone(), order: self.order, gens: self.gens.clone(), basis }
    }
}

impl Ideal {
    pub fn new(vars: &Vars, gens: Vec<Polynomial>, order: MonomialOrder) -> Self {
        for g in &gens {
            assert!(same_vars(g.vars(), vars), "ideal generator from another ring");
        }
        Ideal { vars: vars.clone(), order, gens, basis: OnceLock::new() }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Racing fills compute identical bases, so whichever lands first is kept.
    pub fn groebner(&self) -> &GroebnerBasis {
        self.basis.get_or_init(|| groebner_basis(&self.gens, &self.vars, self.order))
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.groebner().contains(f)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.groebner().normal_form(f)
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_unit()
    }

    /// Both ideals contain each other's generators.
    pub fn same_ideal(&self, other: &Ideal) -> bool {
        same_vars(&self.vars, &other.vars)
            && self.gens.iter().all(|g| other.contains(g))
            && other.gens.iter().all(|g| self.contains(g))
    }
}

struct Inner {
    vars: Vars,
    ideal: Ideal,
}

/// `k[vars] / ideal`. Cheap to clone.
#[derive(Clone)]
pub struct FpAlgebra(Arc<Inner>);

impl FpAlgebra {
    pub fn from_polys(vars: &Vars, relations: Vec<Polynomial>) -> Self {
        Self::with_order(vars, relations, MonomialOrder::default())
    }

    pub fn with_order(vars: &Vars, relations: Vec<Polynomial>, order: MonomialOrder) -> Self {
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        FpAlgebra(Arc::new(Inner { vars: vars.clone(), ideal: Ideal::new(vars, relations, order) }))
    }

    /// Parses relations in the polynomial grammar.
    pub fn parse<S: AsRef<str>>(names: &[S], relations: &[&str]) -> Result<Self, AlgebraError> {
        let v = vars(names);
        let mut rels = Vec::new();
        for r in relations {
            rels.push(parse_polynomial(r, &v)?);
        }
        Ok(Self::from_polys(&v, rels))
    }

    pub fn free<S: AsRef<str>>(names: &[S]) -> Self {
        Self::from_polys(&vars(names), Vec::new())
    }

    /// The ground field `k`.
    pub fn ground() -> Self {
        Self::free::<&str>(&[])
    }

    pub fn zero_algebra() -> Self {
        let v = vars::<&str>(&[]);
        Self::from_polys(&v, vec![Polynomial::one(&v)])
    }

    pub fn vars(&self) -> &Vars {
        &self.0.vars
    }

    pub fn ngens(&self) -> usize {
        self.0.vars.len()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.0.ideal
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.ideal.order()
    }

    pub fn relations(&self) -> &[Polynomial] {
        self.0.ideal.generators()
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        self.0.ideal.groebner()
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.0.ideal.is_unit()
    }

    pub fn gen(&self, i: usize) -> Polynomial {
        Polynomial::var(self.vars(), i)
    }

    pub fn gens(&self) -> Vec<Polynomial> {
        (0..self.ngens()).map(|i| self.gen(i)).collect()
    }

    pub fn one(&self) -> Polynomial {
        self.reduce(&Polynomial::one(self.vars()))
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.vars())
    }

    pub fn constant(&self, c: Rational) -> Polynomial {
        self.reduce(&Polynomial::constant(self.vars(), c))
    }

    /// Parses an element and returns its normal form.
    pub fn element(&self, src: &str) -> Result<Polynomial, AlgebraError> {
        Ok(self.reduce(&parse_polynomial(src, self.vars())?))
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        self.0.ideal.normal_form(f)
    }

    pub fn eq_elements(&self, a: &Polynomial, b: &Polynomial) -> bool {
        self.reduce(&(a - b)).is_zero()
    }

    pub fn is_zero_element(&self, a: &Polynomial) -> bool {
        self.reduce(a).is_zero()
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.reduce(&(a * b))
    }

    /// Same variables (in order) and the same ideal.
    pub fn same_presentation(&self, other: &FpAlgebra) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (same_vars(self.vars(), other.vars()) && self.ideal().same_ideal(other.ideal()))
    }

    /// Adds relations; the projection is the identity on generators.
    pub fn quotient(&self, extra: &[Polynomial]) -> (FpAlgebra, AlgMorphism) {
        let mut rels: Vec<Polynomial> = self.relations().to_vec();
        for e in extra {
            assert!(same_vars(e.vars(), self.vars()), "quotient by an element of another ring");
            rels.push(e.clone());
        }
        let q = FpAlgebra::with_order(self.vars(), rels, self.order());
        let proj = AlgMorphism::new_unchecked(self, &q, self.gens());
        (q, proj)
    }

    /// Renames generators: old generator `i` becomes new generator `map[i]`.
    pub fn rename(&self, names: &[String], map: &[usize]) -> (FpAlgebra, AlgMorphism) {
        assert_eq!(names.len(), self.ngens());
        let v = vars(names);
        let rels = self.relations().iter().map(|r| r.rename_into(&v, map)).collect();
        let target = FpAlgebra::with_order(&v, rels, self.order());
        let images = (0..self.ngens()).map(|i| target.gen(map[i])).collect();
        let iso = AlgMorphism::new_unchecked(self, &target, images);
        (target, iso)
    }

    /// Same algebra presented with another monomial order.
    pub fn reordered(&self, order: MonomialOrder) -> FpAlgebra {
        FpAlgebra::with_order(self.vars(), self.relations().to_vec(), order)
    }

    /// `k[x,y]/(x y, y^2)` with the reduced basis as relations.
    pub fn presentation(&self) -> String {
        if self.is_zero_algebra() {
            return "0".to_string();
        }
        let mut s = if self.ngens() == 0 {
            "k".to_string()
        } else {
            format!("k[{}]", self.vars().join(","))
        };
        let gb = self.groebner();
        if !gb.is_empty() {
            let rels: Vec<String> = gb.polys().iter().map(|p| p.to_string()).collect();
            s.push_str(&format!("/({})", rels.join(", ")));
        }
        s
    }
}

impl fmt::Display for FpAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.presentation())
    }
}

impl fmt::Debug for FpAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpAlgebra({})", self.presentation())
    }
}

/// A well-defined algebra map, stored by the normal forms of generator images.
#[derive(Clone)]
pub struct AlgMorphism {
    domain: FpAlgebra,
    codomain: FpAlgebra,
    images: Vec<Polynomial>,
}

/// Checks that every relation of `domain` maps into the ideal of `codomain`.
pub fn hom_check(
    domain: &FpAlgebra,
    codomain: &FpAlgebra,
    images: Vec<Polynomial>,
) -> Result<AlgMorphism, AlgebraError> {
    if images.len() != domain.ngens() {
        return Err(AlgebraError::ArityMismatch { expected: domain.ngens(), found: images.len() });
    }
    for img in &images {
        if !same_vars(img.vars(), codomain.vars()) {
            return Err(AlgebraError::ForeignElement(img.to_string()));
        }
    }
    for rel in domain.relations() {
        let r = codomain.reduce(&rel.compose(codomain.vars(), &images));
        if !r.is_zero() {
            return Err(AlgebraError::NotWellDefined { relation: rel.to_string(), residue: r.to_string() });
        }
    }
    Ok(AlgMorphism::new_unchecked(domain, codomain, images))
}

impl AlgMorphism {
    /// Skips the relation check; callers guarantee well-definedness.
    pub(crate) fn new_unchecked(domain: &FpAlgebra, codomain: &FpAlgebra, images: Vec<Polynomial>) -> Self {
        let images = images.iter().map(|p| codomain.reduce(p)).collect();
        AlgMorphism { domain: domain.clone(), codomain: codomain.clone(), images }
    }

    pub fn identity(a: &FpAlgebra) -> Self {
        Self::new_unchecked(a, a, a.gens())
    }

    /// The map to `k` sending each generator to a rational value.
    pub fn point(a: &FpAlgebra, values: &[Rational]) -> Result<Self, AlgebraError> {
        let k = FpAlgebra::ground();
        let images = values.iter().map(|v| Polynomial::constant(k.vars(), v.clone())).collect();
        hom_check(a, &k, images)
    }

    /// The structure map `k → a`.
    pub fn unit_map(a: &FpAlgebra) -> Self {
        Self::new_unchecked(&FpAlgebra::ground(), a, Vec::new())
    }

    /// `a → k → b`, sending every generator to the constants of a point.
    pub fn through_point(point: &AlgMorphism, b: &FpAlgebra) -> Self {
        assert_eq!(point.codomain.ngens(), 0, "not a point");
        let images = point
            .images
            .iter()
            .map(|p| Polynomial::constant(b.vars(), p.as_constant().unwrap_or_else(Rational::zero)))
            .collect();
        Self::new_unchecked(&point.domain, b, images)
    }

    pub fn domain(&self) -> &FpAlgebra {
        &self.domain
    }

    pub fn codomain(&self) -> &FpAlgebra {
        &self.codomain
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        assert!(same_vars(f.vars(), self.domain.vars()), "argument outside the domain");
        self.codomain.reduce(&f.compose(self.codomain.vars(), &self.images))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AlgMorphism) -> AlgMorphism {
        assert!(
            same_vars(self.codomain.vars(), other.domain.vars()),
            "composing morphisms with mismatched ends"
        );
        let images = self.images.iter().map(|p| other.apply(p)).collect();
        AlgMorphism { domain: self.domain.clone(), codomain: other.codomain.clone(), images }
    }

    /// Equality of maps between equal presentations.
    pub fn same_map(&self, other: &AlgMorphism) -> bool {
        self.domain.same_presentation(&other.domain)
            && self.codomain.same_presentation(&other.codomain)
            && self
                .images
                .iter()
                .zip(&other.images)
                .all(|(a, b)| self.codomain.eq_elements(a, b))
    }

    pub fn is_identity(&self) -> bool {
        self.domain.same_presentation(&self.codomain)
            && self.images.iter().enumerate().all(|(i, p)| self.codomain.eq_elements(p, &self.codomain.gen(i)))
    }

    /// Values of a point, when the codomain is `k`.
    pub fn point_values(&self) -> Option<Vec<Rational>> {
        if self.codomain.ngens() != 0 || self.codomain.is_zero_algebra() {
            return None;
        }
        Some(self.images.iter().map(|p| p.as_constant().unwrap_or_else(Rational::zero)).collect())
    }

    /// `x ↦ y z, ...`
    pub fn describe(&self) -> String {
        self.domain
            .vars()
            .iter()
            .zip(&self.images)
            .map(|(v, p)| format!("{v} ↦ {p}"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for AlgMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl fmt::Debug for AlgMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} → {}: {}", self.domain, self.codomain, self.describe())
    }
}

/// `A ⊗ B` with its injections.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub algebra: FpAlgebra,
    pub left: AlgMorphism,
    pub right: AlgMorphism,
}

impl Coproduct {
    /// The unique map out of the coproduct restricting to `f` and `g`.
    pub fn copair(&self, f: &AlgMorphism, g: &AlgMorphism) -> AlgMorphism {
        assert!(f.codomain.same_presentation(&g.codomain), "copairing into different algebras");
        let mut images = f.images.clone();
        images.extend(g.images.iter().cloned());
        AlgMorphism::new_unchecked(&self.algebra, &f.codomain, images)
    }
}

fn disjoint_names(left: &[String], right: &[String]) -> (Vec<String>, Vec<String>) {
    if left.len() == 1 && right.len() == 1 {
        // single generators become y and z
        return (vec!["y".into()], vec!["z".into()]);
    }
    let l: HashSet<&String> = left.iter().collect();
    if right.iter().all(|r| !l.contains(r)) {
        return (left.to_vec(), right.to_vec());
    }
    let mut used: HashSet<String> = HashSet::new();
    let mut fresh = |base: String| {
        let mut name = base.clone();
        let mut k = 2;
        while used.contains(&name) {
            name = format!("{base}{k}");
            k += 1;
        }
        used.insert(name.clone());
        name
    };
    let ln = left.iter().map(|n| fresh(format!("{n}_1"))).collect();
    let rn = right.iter().map(|n| fresh(format!("{n}_2"))).collect();
    (ln, rn)
}

pub fn tensor_coproduct(a: &FpAlgebra, b: &FpAlgebra) -> Coproduct {
    let (ln, rn) = disjoint_names(a.vars(), b.vars());
    tensor_with_names(a, b, ln, rn)
}

/// Coproduct with caller-chosen generator names (must be distinct).
pub fn tensor_with_names(a: &FpAlgebra, b: &FpAlgebra, ln: Vec<String>, rn: Vec<String>) -> Coproduct {
    let na = a.ngens();
    let mut names = ln;
    names.extend(rn);
    let v = vars(&names);
    let lmap: Vec<usize> = (0..na).collect();
    let rmap: Vec<usize> = (na..names.len()).collect();
    let mut rels: Vec<Polynomial> = a.relations().iter().map(|r| r.rename_into(&v, &lmap)).collect();
    rels.extend(b.relations().iter().map(|r| r.rename_into(&v, &rmap)));
    let algebra = FpAlgebra::with_order(&v, rels, a.order());
    let left = AlgMorphism::new_unchecked(a, &algebra, lmap.iter().map(|&i| algebra.gen(i)).collect());
    let right = AlgMorphism::new_unchecked(b, &algebra, rmap.iter().map(|&i| algebra.gen(i)).collect());
    Coproduct { algebra, left, right }
}

/// `A × B` with projections and the idempotent `e = (0, 1)`.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub algebra: FpAlgebra,
    pub first: AlgMorphism,
    pub second: AlgMorphism,
    pub idempotent: Polynomial,
}

pub fn direct_product(a: &FpAlgebra, b: &FpAlgebra) -> DirectProduct {
    let (ln, rn) = if a.ngens() == 1 && b.ngens() == 1 && a.vars()[0] == b.vars()[0] {
        (vec![format!("{}_1", a.vars()[0])], vec![format!("{}_2", b.vars()[0])])
    } else {
        disjoint_names(a.vars(), b.vars())
    };
    let mut e_name = "e".to_string();
    while ln.contains(&e_name) || rn.contains(&e_name) {
        e_name.push('\'');
    }
    let na = a.ngens();
    let nb = b.ngens();
    let mut names = vec![e_name];
    names.extend(ln);
    names.extend(rn);
    let v = vars(&names);
    let e = Polynomial::var(&v, 0);
    let one = Polynomial::one(&v);
    let not_e = &one - &e;
    let amap: Vec<usize> = (1..=na).collect();
    let bmap: Vec<usize> = (na + 1..=na + nb).collect();

    let mut rels = vec![&(&e * &e) - &e];
    for &i in &amap {
        rels.push(&e * &Polynomial::var(&v, i));
    }
    for &j in &bmap {
        rels.push(&not_e * &Polynomial::var(&v, j));
    }
    let zero_a = vec![Rational::zero(); na];
    for f in a.relations() {
        let f0 = f.eval(&zero_a);
        rels.push(&f.rename_into(&v, &amap) - &e.scale(&f0));
    }
    let zero_b = vec![Rational::zero(); nb];
    for g in b.relations() {
        let g0 = g.eval(&zero_b);
        rels.push(&g.rename_into(&v, &bmap) - &not_e.scale(&g0));
    }
    let algebra = FpAlgebra::with_order(&v, rels, a.order());

    let mut first_images = vec![a.zero()];
    first_images.extend(a.gens());
    first_images.extend((0..nb).map(|_| a.zero()));
    let mut second_images = vec![b.one()];
    second_images.extend((0..na).map(|_| b.zero()));
    second_images.extend(b.gens());
    let first = AlgMorphism::new_unchecked(&algebra, a, first_images);
    let second = AlgMorphism::new_unchecked(&algebra, b, second_images);
    let idempotent = algebra.reduce(&e);
    DirectProduct { algebra, first, second, idempotent }
}

/// Standard monomials of the reduced basis, when finitely many.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Staircase {
    Finite(Vec<Monomial>),
    Infinite,
}

impl Staircase {
    pub fn dimension(&self) -> Option<usize> {
        match self {
            Staircase::Finite(b) => Some(b.len()),
            Staircase::Infinite => None,
        }
    }
}

/// Monomial basis sorted ascending in the algebra's order (1 first).
pub fn finite_dim_basis(a: &FpAlgebra) -> Staircase {
    let gb = a.groebner();
    let n = a.ngens();
    if gb.is_unit() {
        return Staircase::Finite(Vec::new());
    }
    let lead = gb.leading_monomials();
    let mut bound = vec![u32::MAX; n];
    for m in &lead {
        if let Some(i) = m.pure_power_var() {
            bound[i] = bound[i].min(m.0[i]);
        }
    }
    if bound.contains(&u32::MAX) {
        return Staircase::Infinite;
    }
    let mut out = Vec::new();
    let mut exp = vec![0u32; n];
    loop {
        let m = Monomial(exp.clone());
        if gb.is_standard(&m) {
            out.push(m);
        }
        // odometer over the bounding box
        let mut k = 0;
        while k < n {
            exp[k] += 1;
            if exp[k] < bound[k] {
                break;
            }
            exp[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    let order = a.order();
    out.sort_by(|x, y| order.cmp(x, y));
    Staircase::Finite(out)
}

/// Coordinates with respect to a finite monomial basis.
#[derive(Clone, Debug)]
pub struct FiniteBasis {
    pub algebra: FpAlgebra,
    pub monomials: Vec<Monomial>,
}

impl FiniteBasis {
    pub fn new(a: &FpAlgebra) -> Result<Self, AlgebraError> {
        match finite_dim_basis(a) {
            Staircase::Finite(monomials) => Ok(FiniteBasis { algebra: a.clone(), monomials }),
            Staircase::Infinite => Err(AlgebraError::InfiniteDimensional(a.presentation())),
        }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn element(&self, j: usize) -> Polynomial {
        Polynomial::term(self.algebra.vars(), self.monomials[j].clone(), Rational::one())
    }

    pub fn coords(&self, f: &Polynomial) -> Vec<Rational> {
        let nf = self.algebra.reduce(f);
        self.monomials.iter().map(|m| nf.coeff(m)).collect()
    }

    pub fn from_coords(&self, c: &[Rational]) -> Polynomial {
        let mut p = Polynomial::zero(self.algebra.vars());
        for (m, v) in self.monomials.iter().zip(c) {
            p.add_term(m.clone(), v.clone());
        }
        p
    }

    /// Matrix of multiplication by `f`, columns indexed by basis elements.
    pub fn mult_matrix(&self, f: &Polynomial) -> super::linalg::Matrix {
        let cols: Vec<Vec<Rational>> =
            (0..self.dim()).map(|j| self.coords(&(f * &self.element(j)))).collect();
        super::linalg::Matrix::from_columns(self.dim(), &cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(names: &[&str], rels: &[&str]) -> FpAlgebra {
        FpAlgebra::parse(names, rels).unwrap()
    }

    #[test]
    fn presentation_display() {
        assert_eq!(alg(&["x", "y"], &["x y", "y^2"]).to_string(), "k[x,y]/(x y, y^2)");
        assert_eq!(FpAlgebra::free(&["x"]).to_string(), "k[x]");
        assert_eq!(FpAlgebra::ground().to_string(), "k");
        assert_eq!(FpAlgebra::zero_algebra().to_string(), "0");
    }

    #[test]
    fn hom_check_examples() {
        let kx = FpAlgebra::free(&["x"]);
        let kyz = FpAlgebra::free(&["y", "z"]);
        let m = hom_check(&kx, &kyz, vec![kyz.element("y z").unwrap()]).unwrap();
        assert_eq!(m.describe(), "x ↦ y z");

        let dual = alg(&["y"], &["y^2"]);
        let tt = alg(&["x", "y"], &["x y", "y^2"]);
        assert!(hom_check(&dual, &tt, vec![tt.element("y").unwrap()]).is_ok());
        let err = hom_check(&dual, &tt, vec![tt.element("x").unwrap()]).unwrap_err();
        assert!(matches!(err, AlgebraError::NotWellDefined { .. }));
    }

    #[test]
    fn coproduct_naming() {
        let kx = FpAlgebra::free(&["x"]);
        let c = tensor_coproduct(&kx, &kx);
        assert_eq!(c.algebra.to_string(), "k[y,z]");
        let d = alg(&["y"], &["y^2"]);
        assert_eq!(tensor_coproduct(&d, &d).algebra.to_string(), "k[y,z]/(y^2, z^2)");
        let a = alg(&["x", "y"], &["x y"]);
        let unit = tensor_coproduct(&a, &FpAlgebra::ground());
        assert!(unit.algebra.same_presentation(&a));
        let clash = tensor_coproduct(&a, &a);
        assert_eq!(clash.algebra.vars().join(","), "x_1,y_1,x_2,y_2");
    }

    #[test]
    fn quotient_examples() {
        let kx = FpAlgebra::free(&["x"]);
        let (q, _) = kx.quotient(&[kx.gen(0)]);
        assert_eq!(finite_dim_basis(&q).dimension(), Some(1));
        let tt = alg(&["x", "y"], &["x y", "y^2"]);
        let (r, proj) = tt.quotient(&[tt.gen(1)]);
        assert_eq!(r.to_string(), "k[x,y]/(y)");
        assert_eq!(proj.describe(), "x ↦ x, y ↦ 0");
        assert!(kx.quotient(&[kx.one()]).0.is_zero_algebra());
    }

    #[test]
    fn direct_product_of_fields_and_dual_numbers() {
        let k = FpAlgebra::ground();
        let p = direct_product(&k, &k);
        assert_eq!(p.algebra.to_string(), "k[e]/(e^2 - e)");
        assert_eq!(p.first.describe(), "e ↦ 0");
        assert_eq!(p.second.describe(), "e ↦ 1");

        let d = alg(&["y"], &["y^2"]);
        let q = direct_product(&k, &d);
        assert_eq!(finite_dim_basis(&q.algebra).dimension(), Some(3));

        let a = alg(&["x"], &["x^3 - x"]);
        let z = direct_product(&a, &FpAlgebra::zero_algebra());
        assert_eq!(finite_dim_basis(&z.algebra).dimension(), Some(3));
    }

    #[test]
    fn staircase_examples() {
        let d = alg(&["y"], &["y^2"]);
        let b = finite_dim_basis(&d);
        assert_eq!(b, Staircase::Finite(vec![Monomial(vec![0]), Monomial(vec![1])]));
        assert_eq!(finite_dim_basis(&alg(&["x", "y"], &["x y", "y^2"])), Staircase::Infinite);
        assert_eq!(finite_dim_basis(&alg(&["x"], &["x^3"])).dimension(), Some(3));
        assert_eq!(finite_dim_basis(&FpAlgebra::zero_algebra()).dimension(), Some(0));
        assert_eq!(finite_dim_basis(&FpAlgebra::ground()).dimension(), Some(1));
    }

    #[test]
    fn composition_is_associative_with_identity() {
        let kx = FpAlgebra::free(&["x"]);
        let f = hom_check(&kx, &kx, vec![kx.element("x^2 + 1").unwrap()]).unwrap();
        let g = hom_check(&kx, &kx, vec![kx.element("2 x").unwrap()]).unwrap();
        let h = hom_check(&kx, &kx, vec![kx.element("x - 3").unwrap()]).unwrap();
        assert!(f.then(&g).then(&h).same_map(&f.then(&g.then(&h))));
        assert!(AlgMorphism::identity(&kx).then(&f).same_map(&f));
        assert!(f.then(&AlgMorphism::identity(&kx)).same_map(&f));
    }
}
