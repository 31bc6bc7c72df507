//! Ring objects among affine schemes, the Kock–Lawvere check and invertibles.

use super::{tensor_with_weil, weil_prolongation, AffineError, AffineScheme};
use crate::algebra::{
    bounded_idempotents, finite_dim_basis, hom_check, is_weil, tensor_coproduct, tensor_with_names, try_inverse,
    AlgMorphism, Coproduct, FpAlgebra, IdempotentCertificate, Polynomial,
};

/// A ring structure on `Spec A`, dually comultiplications and counits on `A`.
#[derive(Clone, Debug)]
pub struct RingObject {
    pub algebra: FpAlgebra,
    pub square: Coproduct,
    pub add: AlgMorphism,
    pub mul: AlgMorphism,
    pub zero: AlgMorphism,
    pub one: AlgMorphism,
    pub neg: AlgMorphism,
}

/// Terms in the language of rings over numbered variables.
#[derive(Clone, Debug)]
pub enum RingTerm {
    Var(usize),
    Zero,
    One,
    Neg(Box<RingTerm>),
    Add(Box<RingTerm>, Box<RingTerm>),
    Mul(Box<RingTerm>, Box<RingTerm>),
}

// constructors, not operator methods
#[allow(clippy::should_implement_trait)]
impl RingTerm {
    pub fn add(a: RingTerm, b: RingTerm) -> Self {
        RingTerm::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: RingTerm, b: RingTerm) -> Self {
        RingTerm::Mul(Box::new(a), Box::new(b))
    }

    pub fn neg(a: RingTerm) -> Self {
        RingTerm::Neg(Box::new(a))
    }
}

impl RingObject {
    /// Builds the structure from generator images written in `A ⊗ A` and `A`.
    pub fn new(
        algebra: FpAlgebra,
        add: &[&str],
        mul: &[&str],
        zero: &[&str],
        one: &[&str],
        neg: &[&str],
    ) -> Result<Self, AffineError> {
        let square = tensor_coproduct(&algebra, &algebra);
        let k = FpAlgebra::ground();
        let parse_all = |target: &FpAlgebra, src: &[&str]| -> Result<Vec<Polynomial>, AffineError> {
            src.iter().map(|s| target.element(s).map_err(AffineError::from)).collect()
        };
        let add = hom_check(&algebra, &square.algebra, parse_all(&square.algebra, add)?)?;
        let mul = hom_check(&algebra, &square.algebra, parse_all(&square.algebra, mul)?)?;
        let zero = hom_check(&algebra, &k, parse_all(&k, zero)?)?;
        let one = hom_check(&algebra, &k, parse_all(&k, one)?)?;
        let neg = hom_check(&algebra, &algebra, parse_all(&algebra, neg)?)?;
        let ring = RingObject { algebra, square, add, mul, zero, one, neg };
        ring.verify()?;
        Ok(ring)
    }

    /// The affine line `k[x]` with its usual ring structure.
    pub fn line() -> Self {
        Self::new(FpAlgebra::free(&["x"]), &["y + z"], &["y z"], &["0"], &["1"], &["-x"])
            .expect("the affine line is a ring")
    }

    pub fn scheme(&self) -> AffineScheme {
        AffineScheme::spec(self.algebra.clone())
    }

    /// The map `A → target` denoted by `term`, where variable `k` is `vars[k]`.
    pub fn interpret(&self, term: &RingTerm, target: &FpAlgebra, vars: &[AlgMorphism]) -> AlgMorphism {
        match term {
            RingTerm::Var(k) => vars[*k].clone(),
            RingTerm::Zero => AlgMorphism::through_point(&self.zero, target),
            RingTerm::One => AlgMorphism::through_point(&self.one, target),
            RingTerm::Neg(t) => self.neg.then(&self.interpret(t, target, vars)),
            RingTerm::Add(s, t) => {
                let pair = self.square.copair(&self.interpret(s, target, vars), &self.interpret(t, target, vars));
                self.add.then(&pair)
            }
            RingTerm::Mul(s, t) => {
                let pair = self.square.copair(&self.interpret(s, target, vars), &self.interpret(t, target, vars));
                self.mul.then(&pair)
            }
        }
    }

    /// Checks the commutative ring axioms as equalities of maps out of `A`.
    pub fn verify(&self) -> Result<(), AffineError> {
        use RingTerm::*;
        let a = &self.algebra;
        let names = |k: usize| -> Vec<String> { a.vars().iter().map(|v| format!("{v}{k}")).collect() };
        let pair = tensor_with_names(a, a, names(1), names(2));
        let cube = tensor_with_names(&pair.algebra, a, [names(1), names(2)].concat(), names(3));
        let vars = [pair.left.then(&cube.left), pair.right.then(&cube.left), cube.right.clone()];
        let (x, y, z) = (|| Var(0), || Var(1), || Var(2));
        let axioms: Vec<(&str, RingTerm, RingTerm)> = vec![
            ("additive associativity", RingTerm::add(RingTerm::add(x(), y()), z()), RingTerm::add(x(), RingTerm::add(y(), z()))),
            ("additive commutativity", RingTerm::add(x(), y()), RingTerm::add(y(), x())),
            ("additive unit", RingTerm::add(x(), Zero), x()),
            ("additive inverse", RingTerm::add(x(), RingTerm::neg(x())), Zero),
            ("multiplicative associativity", RingTerm::mul(RingTerm::mul(x(), y()), z()), RingTerm::mul(x(), RingTerm::mul(y(), z()))),
            ("multiplicative commutativity", RingTerm::mul(x(), y()), RingTerm::mul(y(), x())),
            ("multiplicative unit", RingTerm::mul(x(), One), x()),
            (
                "distributivity",
                RingTerm::mul(x(), RingTerm::add(y(), z())),
                RingTerm::add(RingTerm::mul(x(), y()), RingTerm::mul(x(), z())),
            ),
        ];
        for (name, lhs, rhs) in axioms {
            let l = self.interpret(&lhs, &cube.algebra, &vars);
            let r = self.interpret(&rhs, &cube.algebra, &vars);
            if !l.same_map(&r) {
                return Err(AffineError::RingStructure(name.to_string()));
            }
        }
        Ok(())
    }

    /// Transports the structure along an isomorphism `iso: A → B`.
    pub fn transport(&self, iso: &AlgMorphism) -> Result<Self, AffineError> {
        let inv = try_inverse(iso)?;
        let b = iso.codomain().clone();
        let square = tensor_coproduct(&b, &b);
        let sq = self.square.copair(&iso.then(&square.left), &iso.then(&square.right));
        let add = inv.then(&self.add).then(&sq);
        let mul = inv.then(&self.mul).then(&sq);
        let ring = RingObject {
            zero: inv.then(&self.zero),
            one: inv.then(&self.one),
            neg: inv.then(&self.neg).then(iso),
            algebra: b,
            square,
            add,
            mul,
        };
        ring.verify()?;
        Ok(ring)
    }
}

/// How the square-zero subobject was cut out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DSource {
    /// `x · x = 0` for the ring's multiplication.
    RingSquare,
    /// Each coordinate squared, when no ring structure is given.
    CoordinateSquares,
}

#[derive(Clone, Debug)]
pub enum KlCertificate {
    /// The zero scheme: every object over it is isomorphic.
    Vacuous,
    DimensionMismatch { exponential: Option<usize>, product: Option<usize> },
    Isomorphism { forward: AlgMorphism, inverse: AlgMorphism },
    NotIsomorphism { forward: AlgMorphism, reason: String },
}

#[derive(Clone, Debug)]
pub struct KlReport {
    pub holds: bool,
    pub d_algebra: FpAlgebra,
    pub d_source: DSource,
    pub exponential: Option<FpAlgebra>,
    pub product: FpAlgebra,
    pub certificate: KlCertificate,
}

/// Decides whether the canonical `R × R → R^D` is invertible.
pub fn check_kl(algebra: &FpAlgebra, ring: Option<&RingObject>) -> Result<KlReport, AffineError> {
    let product = tensor_coproduct(algebra, algebra);
    if algebra.is_zero_algebra() {
        return Ok(KlReport {
            holds: true,
            d_algebra: algebra.clone(),
            d_source: if ring.is_some() { DSource::RingSquare } else { DSource::CoordinateSquares },
            exponential: None,
            product: product.algebra,
            certificate: KlCertificate::Vacuous,
        });
    }
    if let Some(r) = ring {
        assert!(r.algebra.same_presentation(algebra), "ring structure on another algebra");
    }
    let (squares, d_source) = match ring {
        Some(r) => {
            let id = AlgMorphism::identity(algebra);
            let sq = r.interpret(&RingTerm::mul(RingTerm::Var(0), RingTerm::Var(0)), algebra, &[id]);
            let zero = AlgMorphism::through_point(&r.zero, algebra);
            let rels = sq.images().iter().zip(zero.images()).map(|(s, z)| s - z).collect::<Vec<_>>();
            (rels, DSource::RingSquare)
        }
        None => (algebra.gens().iter().map(|g| g * g).collect(), DSource::CoordinateSquares),
    };
    let (d_algebra, d_proj) = algebra.quotient(&squares);
    if !is_weil(&d_algebra) {
        return Err(AffineError::DNotWeil(d_algebra.presentation()));
    }
    let exp = weil_prolongation(algebra, &d_algebra)?;
    let exp_dim = finite_dim_basis(&exp.algebra).dimension();
    let prod_dim = finite_dim_basis(&product.algebra).dimension();
    let base = |holds, certificate| KlReport {
        holds,
        d_algebra: d_algebra.clone(),
        d_source,
        exponential: Some(exp.algebra.clone()),
        product: product.algebra.clone(),
        certificate,
    };
    if exp_dim != prod_dim {
        return Ok(base(false, KlCertificate::DimensionMismatch { exponential: exp_dim, product: prod_dim }));
    }
    let ring = ring.ok_or_else(|| AffineError::RingStructureRequired(algebra.presentation()))?;

    // the family d ↦ a + b d over R × R
    let s = tensor_with_weil(&product.algebra, &d_algebra);
    let vars = [
        product.left.then(&s.left),
        product.right.then(&s.left),
        d_proj.then(&s.right),
    ];
    let term = RingTerm::add(RingTerm::Var(0), RingTerm::mul(RingTerm::Var(1), RingTerm::Var(2)));
    let family = ring.interpret(&term, &s.algebra, &vars);
    let forward = exp.transpose(&family, &s)?;
    match try_inverse(&forward) {
        Ok(inverse) => Ok(base(true, KlCertificate::Isomorphism { forward, inverse })),
        Err(e) => Ok(base(false, KlCertificate::NotIsomorphism { forward, reason: e.to_string() })),
    }
}

/// `U ↪ R`, the generic element together with a declared inverse.
#[derive(Clone, Debug)]
pub struct Invertibles {
    pub scheme: AffineScheme,
    /// Dual of the monic `U → R`.
    pub inclusion: AlgMorphism,
    pub certificate: IdempotentCertificate,
}

pub fn invertibles_scheme(ring: &RingObject, degree_bound: u32) -> Result<Invertibles, AffineError> {
    let a = &ring.algebra;
    let inverse_names: Vec<String> = if a.ngens() == 1 {
        vec!["u".to_string()]
    } else {
        a.vars().iter().map(|v| format!("{v}_inv")).collect()
    };
    let pair = tensor_with_names(a, a, a.vars().to_vec(), inverse_names);
    let prod = ring.interpret(
        &RingTerm::mul(RingTerm::Var(0), RingTerm::Var(1)),
        &pair.algebra,
        &[pair.left.clone(), pair.right.clone()],
    );
    let one = AlgMorphism::through_point(&ring.one, &pair.algebra);
    let rels: Vec<Polynomial> = prod.images().iter().zip(one.images()).map(|(p, o)| p - o).collect();
    let (algebra, proj) = pair.algebra.quotient(&rels);
    let inclusion = pair.left.then(&proj);
    let certificate = bounded_idempotents(&algebra, degree_bound)?;
    Ok(Invertibles { scheme: AffineScheme::spec(algebra), inclusion, certificate })
}
