//! Weil prolongations `(Spec A)^(Spec W)`, Euler reals and their monoid structure.

use num_traits::Zero;

use super::{coefficients_along, require_weil, tensor_with_weil, AffineError, AffineScheme, PointedScheme};
use crate::algebra::{
    eliminate_linear_generators, hom_check, hom_scheme, tensor_coproduct, tensor_with_names, AlgMorphism, Coproduct,
    FpAlgebra, HomScheme, Polynomial, Rational,
};

/// The algebra representing `(Spec A)^(Spec W)`: a `B`-point is a map `A → B ⊗ W`,
/// recorded by coefficients `a_{i,j}` of generator `i` along basis element `j` of `W`.
#[derive(Clone, Debug)]
pub struct Prolongation {
    pub algebra: FpAlgebra,
    pub source: FpAlgebra,
    pub weil: FpAlgebra,
    hom: HomScheme,
}

pub fn weil_prolongation(a: &FpAlgebra, w: &FpAlgebra) -> Result<Prolongation, AffineError> {
    require_weil(w)?;
    let hom = hom_scheme(a, w)?;
    Ok(Prolongation { algebra: hom.algebra.clone(), source: a.clone(), weil: w.clone(), hom })
}

impl Prolongation {
    pub fn basis_dim(&self) -> usize {
        self.hom.target.dim()
    }

    pub fn coefficient_var(&self, generator: usize, basis_index: usize) -> Polynomial {
        self.algebra.gen(self.hom.var_index(generator, basis_index))
    }

    /// Dual of evaluation at a point `p` of `Spec W`: generator `i ↦ Σ_j a_{i,j} p(e_j)`.
    pub fn ev(&self, point: &AlgMorphism) -> AlgMorphism {
        let values: Vec<Rational> = (0..self.basis_dim())
            .map(|j| {
                let e = self.hom.target.element(j);
                point.apply(&e).as_constant().unwrap_or_else(Rational::zero)
            })
            .collect();
        let images = (0..self.source.ngens())
            .map(|i| {
                let mut acc = self.algebra.zero();
                for (j, v) in values.iter().enumerate() {
                    acc = &acc + &self.coefficient_var(i, j).scale(v);
                }
                acc
            })
            .collect();
        hom_check(&self.source, &self.algebra, images).expect("evaluation is well-defined")
    }

    /// Dual of the constants section `Spec A → (Spec A)^(Spec W)`.
    pub fn constants(&self) -> AlgMorphism {
        let d = self.basis_dim();
        let mut images = Vec::with_capacity(self.algebra.ngens());
        for i in 0..self.source.ngens() {
            for j in 0..d {
                images.push(if j == 0 { self.source.gen(i) } else { self.source.zero() });
            }
        }
        hom_check(&self.algebra, &self.source, images).expect("constants are well-defined")
    }

    /// The map `A → C ⊗ W` of the `C`-point `point: P → C`.
    pub fn family(&self, point: &AlgMorphism, tensor: &Coproduct) -> AlgMorphism {
        let d = self.basis_dim();
        let images = (0..self.source.ngens())
            .map(|i| {
                let mut acc = tensor.algebra.zero();
                for j in 0..d {
                    let coeff = tensor.left.apply(&point.apply(&self.coefficient_var(i, j)));
                    let basis = tensor.right.apply(&self.hom.target.element(j));
                    acc = &acc + &(&coeff * &basis);
                }
                acc
            })
            .collect();
        hom_check(&self.source, &tensor.algebra, images).expect("families are well-defined")
    }

    /// The `C`-point of the prolongation given by a map `A → C ⊗ W`.
    pub fn transpose(&self, family: &AlgMorphism, tensor: &Coproduct) -> Result<AlgMorphism, AffineError> {
        let c = tensor.left.domain();
        let mut images = Vec::with_capacity(self.algebra.ngens());
        for img in family.images() {
            images.extend(coefficients_along(tensor, &self.hom.target, img));
        }
        Ok(hom_check(&self.algebra, c, images)?)
    }

    /// Composite `f ∘ g` of two `C`-points of `T^T`, where `A = W`.
    pub fn compose_points(&self, f: &AlgMorphism, g: &AlgMorphism) -> Result<AlgMorphism, AffineError> {
        assert!(self.source.same_presentation(&self.weil), "composition needs an endomorphism object");
        let c = f.codomain();
        let tensor = tensor_with_weil(c, &self.weil);
        let ff = self.family(f, &tensor);
        let gf = self.family(g, &tensor);
        // (f ∘ g)* substitutes g's family for W's generators in f's family
        let mut subst: Vec<Polynomial> = (0..c.ngens()).map(|k| tensor.algebra.gen(k)).collect();
        subst.extend(gf.images().iter().cloned());
        let images: Vec<Polynomial> = ff
            .images()
            .iter()
            .map(|p| tensor.algebra.reduce(&p.compose(tensor.algebra.vars(), &subst)))
            .collect();
        let composite = hom_check(&self.source, &tensor.algebra, images)?;
        self.transpose(&composite, &tensor)
    }

    /// The point `a_{i,j} = coordinate j of the image of generator i` of a map `A → W`.
    pub fn point_of(&self, map: &AlgMorphism) -> Result<AlgMorphism, AffineError> {
        let k = FpAlgebra::ground();
        let mut images = Vec::new();
        for img in map.images() {
            for c in self.hom.target.coords(img) {
                images.push(Polynomial::constant(k.vars(), c));
            }
        }
        Ok(hom_check(&self.algebra, &k, images)?)
    }

    /// Renaming used in reports: for at most three variables, the last becomes
    /// `x`, the one before `y`, then `z`.
    pub fn display_renaming(&self) -> Option<(FpAlgebra, AlgMorphism)> {
        let n = self.algebra.ngens();
        if n == 0 || n > 3 {
            return None;
        }
        let names: Vec<String> = ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect();
        let map: Vec<usize> = (0..n).map(|i| n - 1 - i).collect();
        Some(self.algebra.rename(&names, &map))
    }
}

/// `R ↪ T^T`, the pullback of the point of `T` along evaluation at that point.
#[derive(Clone, Debug)]
pub struct EulerReals {
    pub pointed: PointedScheme,
    pub tangent: Prolongation,
    pub ev0: AlgMorphism,
    pub scheme: AffineScheme,
    /// Dual of the monic `R → T^T`.
    pub inclusion: AlgMorphism,
    /// Preimages of `R`'s generators in the coordinates of `T^T`.
    pub lifts: Vec<Polynomial>,
}

pub fn euler_reals(t: &PointedScheme) -> Result<EulerReals, AffineError> {
    let w = &t.scheme.algebra;
    let tangent = weil_prolongation(w, w)?;
    let ev0 = tangent.ev(&t.point);
    let extra: Vec<Polynomial> = w
        .gens()
        .iter()
        .zip(t.point.images())
        .map(|(g, v)| {
            let c = v.as_constant().unwrap_or_else(Rational::zero);
            &ev0.apply(g) - &Polynomial::constant(tangent.algebra.vars(), c)
        })
        .collect();
    let (raw, proj) = tangent.algebra.quotient(&extra);
    let simp = eliminate_linear_generators(&raw);
    let (algebra, to, from) = if simp.algebra.ngens() == 1 {
        let (renamed, iso) = simp.algebra.rename(&["x".to_string()], &[0]);
        let back = hom_check(&renamed, &simp.algebra, vec![simp.algebra.gen(0)])?;
        (renamed, simp.to_simplified.then(&iso), back.then(&simp.from_simplified))
    } else {
        (simp.algebra.clone(), simp.to_simplified.clone(), simp.from_simplified.clone())
    };
    let inclusion = proj.then(&to);
    let lifts = from.images().iter().map(|p| p.with_vars(tangent.algebra.vars())).collect();
    Ok(EulerReals {
        pointed: t.clone(),
        tangent,
        ev0,
        scheme: AffineScheme::spec(algebra),
        inclusion,
        lifts,
    })
}

impl EulerReals {
    pub fn algebra(&self) -> &FpAlgebra {
        &self.scheme.algebra
    }

    /// The `C`-point of `R` through which a 0-preserving `C`-point of `T^T` factors.
    pub fn restrict_point(&self, p: &AlgMorphism) -> Result<AlgMorphism, AffineError> {
        let images = self.lifts.iter().map(|l| p.apply(l)).collect();
        Ok(hom_check(self.algebra(), p.codomain(), images)?)
    }

    /// The point of `R` given by an endomorphism of `T`.
    pub fn point_of_endomorphism(&self, endo: &AlgMorphism) -> Result<AlgMorphism, AffineError> {
        let p = self.tangent.point_of(endo)?;
        self.restrict_point(&p)
    }
}

/// Monoid laws, each checked as an equality of algebra maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidLaws {
    pub associative: bool,
    pub left_unit: bool,
    pub right_unit: bool,
    pub zero_absorbing: bool,
    pub commutative: bool,
}

impl MonoidLaws {
    pub fn monoid_with_zero(&self) -> bool {
        self.associative && self.left_unit && self.right_unit && self.zero_absorbing
    }
}

/// Composition on `R`, dually a comultiplication `R → R ⊗ R`.
#[derive(Clone, Debug)]
pub struct EulerMonoid {
    pub square: Coproduct,
    pub mult: AlgMorphism,
    pub unit: AlgMorphism,
    pub zero: AlgMorphism,
    pub laws: MonoidLaws,
}

pub fn monoid_mult(reals: &EulerReals) -> Result<EulerMonoid, AffineError> {
    let r = reals.algebra();
    let square = tensor_coproduct(r, r);
    let left = reals.inclusion.then(&square.left);
    let right = reals.inclusion.then(&square.right);
    let composite = reals.tangent.compose_points(&left, &right)?;
    let mult = reals.restrict_point(&composite)?;

    let w = &reals.pointed.scheme.algebra;
    let unit = reals.point_of_endomorphism(&AlgMorphism::identity(w))?;
    let zero_endo = hom_check(w, w, vec![w.zero(); w.ngens()])?;
    let zero = reals.point_of_endomorphism(&zero_endo)?;

    let laws = monoid_laws(r, &square, &mult, &unit, &zero);
    Ok(EulerMonoid { square, mult, unit, zero, laws })
}

fn monoid_laws(
    r: &FpAlgebra,
    square: &Coproduct,
    mult: &AlgMorphism,
    unit: &AlgMorphism,
    zero: &AlgMorphism,
) -> MonoidLaws {
    let id = AlgMorphism::identity(r);
    let names = |k: usize| -> Vec<String> { r.vars().iter().map(|v| format!("{v}{k}")).collect() };
    let pair = tensor_with_names(r, r, names(1), names(2));
    let cube = tensor_with_names(&pair.algebra, r, [names(1), names(2)].concat(), names(3));
    let j1 = pair.left.then(&cube.left);
    let j2 = pair.right.then(&cube.left);
    let j3 = cube.right.clone();
    let m12 = mult.then(&square.copair(&j1, &j2));
    let m23 = mult.then(&square.copair(&j2, &j3));
    let lhs = mult.then(&square.copair(&m12, &j3));
    let rhs = mult.then(&square.copair(&j1, &m23));

    let unit_const = AlgMorphism::through_point(unit, r);
    let zero_const = AlgMorphism::through_point(zero, r);
    MonoidLaws {
        associative: lhs.same_map(&rhs),
        left_unit: mult.then(&square.copair(&unit_const, &id)).is_identity(),
        right_unit: mult.then(&square.copair(&id, &unit_const)).is_identity(),
        zero_absorbing: mult.then(&square.copair(&zero_const, &id)).same_map(&zero_const)
            && mult.then(&square.copair(&id, &zero_const)).same_map(&zero_const),
        commutative: mult.then(&square.copair(&square.right, &square.left)).same_map(mult),
    }
}

/// Symbolic checks of the composition law on endomorphisms of `Spec k[ε]/(ε²)`.
#[derive(Clone, Debug)]
pub struct EulerCompositionReport {
    /// `T^T` is presented by `k[a,b]/(a², 2ab)`.
    pub endomorphism_ideal: bool,
    /// `(a,b) ∘ (c,d) = (a + b c, b d)`.
    pub composition_law: bool,
    pub identity: bool,
    /// `(0,b) ∘ (0,c) = (0, b c)`.
    pub zero_preserving: bool,
    /// `R` is cut out by `a = 0`.
    pub euler_reals_are_linear: bool,
    pub composite: String,
}

impl EulerCompositionReport {
    pub fn all_hold(&self) -> bool {
        self.endomorphism_ideal
            && self.composition_law
            && self.identity
            && self.zero_preserving
            && self.euler_reals_are_linear
    }
}

pub fn check_euler_composition(t: &PointedScheme) -> Result<EulerCompositionReport, AffineError> {
    let w = &t.scheme.algebra;
    let tangent = weil_prolongation(w, w)?;
    let p = &tangent.algebra;
    if p.ngens() != 2 {
        return Err(AffineError::NotWeil(format!("{w} is not the dual numbers")));
    }
    let expected = FpAlgebra::parse(&["a", "b"], &["a^2", "2 a b"])?;
    let endomorphism_ideal = p.same_presentation(&expected);

    let names = |x: &str, y: &str| vec![x.to_string(), y.to_string()];
    let pp = tensor_with_names(p, p, names("a", "b"), names("c", "d"));
    let comp = tangent.compose_points(&pp.left, &pp.right)?;
    let pa = &pp.algebra;
    let law_a = pa.element("a + b c")?;
    let law_b = pa.element("b d")?;
    let composition_law = pa.eq_elements(&comp.images()[0], &law_a) && pa.eq_elements(&comp.images()[1], &law_b);
    let composite = format!("(a, b) ∘ (c, d) = ({}, {})", comp.images()[0], comp.images()[1]);

    let ident = tangent.point_of(&AlgMorphism::identity(w))?;
    let ident_const = AlgMorphism::through_point(&ident, p);
    let id = AlgMorphism::identity(p);
    let identity = tangent.compose_points(&id, &ident_const)?.is_identity()
        && tangent.compose_points(&ident_const, &id)?.is_identity();

    let kbc = FpAlgebra::free(&["b", "c"]);
    let f = hom_check(p, &kbc, vec![kbc.zero(), kbc.gen(0)])?;
    let g = hom_check(p, &kbc, vec![kbc.zero(), kbc.gen(1)])?;
    let fg = tangent.compose_points(&f, &g)?;
    let bc = kbc.element("b c")?;
    let zero_preserving = fg.images()[0].is_zero() && kbc.eq_elements(&fg.images()[1], &bc);

    let ev0 = tangent.ev(&t.point);
    let a_var = p.gen(0);
    let euler_reals_are_linear = p.eq_elements(&ev0.images()[0], &a_var);

    Ok(EulerCompositionReport {
        endomorphism_ideal,
        composition_law,
        identity,
        zero_preserving,
        euler_reals_are_linear,
        composite,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{finite_dim_basis, homs, poly, Staircase};

    fn alg(names: &[&str], rels: &[&str]) -> FpAlgebra {
        FpAlgebra::parse(names, rels).unwrap()
    }

    fn dual() -> FpAlgebra {
        alg(&["y"], &["y^2"])
    }

    #[test]
    fn tangent_of_dual_numbers() {
        let p = weil_prolongation(&dual(), &dual()).unwrap();
        assert_eq!(p.algebra.to_string(), "k[a,b]/(a^2, a b)");
        let (renamed, _) = p.display_renaming().unwrap();
        assert_eq!(renamed.to_string(), "k[x,y]/(x y, y^2)");
    }

    #[test]
    fn prolongation_of_line_is_free() {
        let p = weil_prolongation(&FpAlgebra::free(&["x"]), &dual()).unwrap();
        assert_eq!(p.algebra.to_string(), "k[a,b]");
    }

    #[test]
    fn prolongation_by_ground_field_is_the_source() {
        let a = alg(&["x", "y"], &["x y - 1"]);
        let p = weil_prolongation(&a, &FpAlgebra::ground()).unwrap();
        assert_eq!(p.algebra.ngens(), 2);
        assert!(p.constants().then(&p.ev(&AlgMorphism::point(&FpAlgebra::ground(), &[]).unwrap())).is_identity());
    }

    #[test]
    fn non_weil_exponent_is_refused() {
        let err = weil_prolongation(&dual(), &FpAlgebra::free(&["x"])).unwrap_err();
        assert!(matches!(err, AffineError::NotWeil(_)));
    }

    #[test]
    fn ev_section_splits() {
        let t = PointedScheme::weil(alg(&["y"], &["y^3"])).unwrap();
        let a = alg(&["x"], &["x^2 - 2 x"]);
        let p = weil_prolongation(&a, &t.scheme.algebra).unwrap();
        assert!(p.ev(&t.point).then(&p.constants()).is_identity());
    }

    #[test]
    fn euler_reals_of_dual_numbers() {
        let t = PointedScheme::weil(dual()).unwrap();
        let r = euler_reals(&t).unwrap();
        assert_eq!(r.scheme.to_string(), "Spec(k[x])");
        assert_eq!(r.inclusion.describe(), "a ↦ 0, b ↦ x");
        let m = monoid_mult(&r).unwrap();
        assert_eq!(m.mult.describe(), "x ↦ y z");
        assert_eq!(m.unit.describe(), "x ↦ 1");
        assert_eq!(m.zero.describe(), "x ↦ 0");
        assert!(m.laws.monoid_with_zero());
        assert!(m.laws.commutative);
    }

    #[test]
    fn euler_reals_of_trivial_pointed_object() {
        let t = PointedScheme::weil(FpAlgebra::ground()).unwrap();
        let r = euler_reals(&t).unwrap();
        assert_eq!(r.scheme.to_string(), "Spec(k)");
        let m = monoid_mult(&r).unwrap();
        assert!(m.laws.monoid_with_zero());
    }

    #[test]
    fn euler_reals_of_second_order_jets() {
        let t = PointedScheme::weil(alg(&["y"], &["y^3"])).unwrap();
        let r = euler_reals(&t).unwrap();
        assert_eq!(r.algebra().to_string(), "k[b,c]");
        let m = monoid_mult(&r).unwrap();
        // y ↦ b y + c y² composed with y ↦ b' y + c' y²
        assert_eq!(m.mult.describe(), "b ↦ b_1 b_2, c ↦ c_1 b_2^2 + b_1 c_2");
        assert!(m.laws.monoid_with_zero());
        assert!(!m.laws.commutative);
    }

    #[test]
    fn generalized_elements_of_second_order_jets() {
        // a B-point (a, b, c) of T^T lies in R iff y ↦ a + b y + c y² is an
        // endomorphism of T ⊗ B fixing 0
        let w = alg(&["y"], &["y^3"]);
        let t = PointedScheme::weil(w.clone()).unwrap();
        let r = euler_reals(&t).unwrap();
        let b = alg(&["s"], &["s^2"]);
        let tb = tensor_with_names(&b, &w, vec!["s".into()], vec!["y".into()]);
        let samples = ["0", "1", "s", "2 s", "1 + s", "-1"];
        for a in samples {
            for bb in samples {
                for c in samples {
                    let [av, bv, cv] = [a, bb, c].map(|e| b.element(e).unwrap());
                    let family = {
                        let y = tb.algebra.gen(1);
                        let lift = |e: &Polynomial| tb.left.apply(e);
                        &(&lift(&av) + &(&lift(&bv) * &y)) + &(&lift(&cv) * &(&y * &y))
                    };
                    let well_defined = hom_check(&w, &tb.algebra, vec![family]).is_ok();
                    let oracle = well_defined && b.is_zero_element(&av);
                    let point = hom_check(&r.tangent.algebra, &b, vec![av.clone(), bv.clone(), cv.clone()]);
                    let engine = point.is_ok_and(|p| {
                        r.restrict_point(&p).is_ok_and(|rp| r.inclusion.then(&rp).same_map(&p))
                    });
                    assert_eq!(engine, oracle, "a = {a}, b = {bb}, c = {c}");
                }
            }
        }
    }

    #[test]
    fn exponential_adjunction_counts() {
        let w = dual();
        let sources = [alg(&["y"], &["y^2 - y"]), alg(&["y"], &["y^3 - y"]), FpAlgebra::ground()];
        let targets = [FpAlgebra::ground(), alg(&["t"], &["t^2 - t"]), alg(&["t"], &["t^3 - t"])];
        for a in &sources {
            let p = weil_prolongation(a, &w).unwrap();
            for b in &targets {
                let bw = tensor_with_weil(b, &w);
                let lhs = homs(&p.algebra, b).unwrap();
                let rhs = homs(a, &bw.algebra).unwrap();
                assert_eq!(lhs.len(), rhs.len(), "{a} into {b}");
                // the transpose is a bijection
                let mut seen: Vec<AlgMorphism> = Vec::new();
                for h in &lhs {
                    let fam = p.family(h, &bw);
                    assert!(rhs.iter().any(|g| g.same_map(&fam)));
                    assert!(p.transpose(&fam, &bw).unwrap().same_map(h));
                    assert!(!seen.iter().any(|s| s.same_map(&fam)));
                    seen.push(fam);
                }
            }
        }
    }

    #[test]
    fn composition_report_for_dual_numbers() {
        let t = PointedScheme::weil(dual()).unwrap();
        let rep = check_euler_composition(&t).unwrap();
        assert!(rep.all_hold(), "{rep:?}");
        assert_eq!(rep.composite, "(a, b) ∘ (c, d) = (b c + a, b d)");
    }

    #[test]
    fn staircase_of_tangent_is_infinite() {
        let p = weil_prolongation(&dual(), &dual()).unwrap();
        assert_eq!(finite_dim_basis(&p.algebra), Staircase::Infinite);
        let v = p.algebra.vars().clone();
        assert!(p.algebra.ideal().contains(&poly("a b", &v)));
    }
}
