//! Points, idempotents, Weil recognition and hom-schemes.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::error::AlgebraError;
use super::fp::{finite_dim_basis, hom_check, AlgMorphism, FiniteBasis, FpAlgebra, Staircase};
use super::groebner::groebner_basis;
use super::linalg::Matrix;
use super::poly::{vars, Monomial, MonomialOrder, Polynomial, Rational};
use super::univariate::UniPoly;

/// Rational points, plus whether points over proper extensions exist.
#[derive(Clone, Debug)]
pub struct PointSet {
    pub points: Vec<AlgMorphism>,
    pub has_irrational_points: bool,
}

/// All morphisms `A → k`. Coordinates are fixed one at a time: the minimal
/// polynomial of `x_k` on the current quotient is its eliminant, and each
/// rational root is adjoined as a linear relation.
pub fn points(a: &FpAlgebra) -> Result<PointSet, AlgebraError> {
    if a.is_zero_algebra() {
        return Ok(PointSet { points: Vec::new(), has_irrational_points: false });
    }
    if finite_dim_basis(a) == Staircase::Infinite {
        return Err(AlgebraError::PositiveDimensional(a.presentation()));
    }
    let mut found: Vec<Vec<Rational>> = Vec::new();
    let mut irrational = false;
    let mut assignment = Vec::with_capacity(a.ngens());
    let start = a.reordered(MonomialOrder::DegRevLex);
    solve_from(&start, &mut assignment, &mut found, &mut irrational)?;
    found.sort();
    let points = found
        .iter()
        .map(|vals| AlgMorphism::point(a, vals))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PointSet { points, has_irrational_points: irrational })
}

/// Extends `assignment`, which fixes the first coordinates of the nonzero finite `a`.
fn solve_from(
    a: &FpAlgebra,
    assignment: &mut Vec<Rational>,
    found: &mut Vec<Vec<Rational>>,
    irrational: &mut bool,
) -> Result<(), AlgebraError> {
    let k = assignment.len();
    if k == a.ngens() {
        found.push(assignment.clone());
        return Ok(());
    }
    let fb = FiniteBasis::new(a)?;
    let x = a.gen(k);
    let eliminant = local_minimal_polynomial(&fb, &a.one(), &x);
    let roots = eliminant.rational_roots()?;
    if eliminant.squarefree_part().degree() > roots.len() {
        *irrational = true;
    }
    for r in roots {
        let mut rels: Vec<Polynomial> = a.groebner().polys().iter().map(|p| p.substitute_constant(k, &r)).collect();
        rels.push(&x - &a.constant(r.clone()));
        let next = FpAlgebra::with_order(a.vars(), rels, a.order());
        if next.is_zero_algebra() {
            continue;
        }
        assignment.push(r);
        solve_from(&next, assignment, found, irrational)?;
        assignment.pop();
    }
    Ok(())
}

/// Rank of the trace form `(x, y) ↦ Tr(L_{xy})` on `span`. In characteristic 0 its
/// radical is the nilradical, so the rank is the dimension of the reduced quotient.
fn trace_form_rank(fb: &FiniteBasis, span: &[Polynomial]) -> usize {
    let m = span.len();
    let mut gram = Matrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let prod = fb.algebra.mul(&span[i], &span[j]);
            let l = fb.mult_matrix(&prod);
            let tr = (0..fb.dim()).fold(Rational::zero(), |acc, k| acc + &l[(k, k)]);
            gram[(i, j)] = tr.clone();
            gram[(j, i)] = tr;
        }
    }
    gram.rank()
}

/// The unique point of a local algebra with residue field `k`, if it is one.
pub fn weil_point(a: &FpAlgebra) -> Option<AlgMorphism> {
    let fb = FiniteBasis::new(a).ok()?;
    let d = fb.dim();
    if d == 0 {
        return None;
    }
    let basis: Vec<Polynomial> = (0..d).map(|j| fb.element(j)).collect();
    if trace_form_rank(&fb, &basis) != 1 {
        return None;
    }
    // L_x = p I + nilpotent, so p = Tr(L_x) / d
    let dim = Rational::from_integer(d.into());
    let values: Vec<Rational> = (0..a.ngens())
        .map(|i| {
            let l = fb.mult_matrix(&a.gen(i));
            (0..d).fold(Rational::zero(), |acc, k| acc + &l[(k, k)]) / &dim
        })
        .collect();
    let point = AlgMorphism::point(a, &values).ok()?;
    kernel_is_nilpotent(&fb, &values).then_some(point)
}

/// Powers the kernel ideal of the point as subspaces until it stabilizes.
fn kernel_is_nilpotent(fb: &FiniteBasis, values: &[Rational]) -> bool {
    let a = &fb.algebra;
    let gens: Vec<Polynomial> = (0..a.ngens())
        .map(|i| &a.gen(i) - &Polynomial::constant(a.vars(), values[i].clone()))
        .collect();
    let span_of = |elems: Vec<Polynomial>| -> Vec<Polynomial> {
        let cols: Vec<Vec<Rational>> = elems.iter().map(|e| fb.coords(e)).collect();
        if cols.is_empty() {
            return Vec::new();
        }
        let m = Matrix::from_columns(fb.dim(), &cols);
        let (_, pivots) = m.rref();
        pivots.iter().map(|&p| elems[p].clone()).collect()
    };
    let mut power: Vec<Polynomial> = span_of(
        gens.iter()
            .flat_map(|g| (0..fb.dim()).map(move |j| (g.clone(), j)))
            .map(|(g, j)| a.mul(&g, &fb.element(j)))
            .collect(),
    );
    for _ in 0..=fb.dim() {
        if power.is_empty() {
            return true;
        }
        let next = span_of(power.iter().flat_map(|p| gens.iter().map(|g| a.mul(p, g))).collect());
        if next.len() == power.len() {
            return false;
        }
        power = next;
    }
    power.is_empty()
}

/// Finite-dimensional, exactly one point, nilpotent augmentation ideal.
pub fn is_weil(a: &FpAlgebra) -> bool {
    weil_point(a).is_some()
}

/// Every solution of `e² = e`, sorted by coordinates.
pub fn idempotents(a: &FpAlgebra) -> Result<Vec<Polynomial>, AlgebraError> {
    let fb = FiniteBasis::new(a)?;
    if fb.dim() == 0 {
        return Ok(vec![a.zero()]);
    }
    let primitive = split_idempotent(&fb, a.one())?;
    let mut all: Vec<(Vec<Rational>, Polynomial)> = Vec::new();
    for mask in 0u64..(1u64 << primitive.len()) {
        let mut e = a.zero();
        for (i, p) in primitive.iter().enumerate() {
            if mask >> i & 1 == 1 {
                e = &e + p;
            }
        }
        let e = a.reduce(&e);
        all.push((fb.coords(&e), e));
    }
    all.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(all.into_iter().map(|(_, e)| e).collect())
}

/// Primitive idempotents below `e`, by splitting along coprime factors of
/// minimal polynomials of elements of `eA`.
fn split_idempotent(fb: &FiniteBasis, e: Polynomial) -> Result<Vec<Polynomial>, AlgebraError> {
    let a = &fb.algebra;
    let le = fb.mult_matrix(&e);
    let (_, pivots) = le.rref();
    let span: Vec<Polynomial> = pivots.iter().map(|&p| a.mul(&e, &fb.element(p))).collect();
    let m = span.len();
    let s = trace_form_rank(fb, &span);
    if s <= 1 {
        return Ok(vec![e]);
    }
    let limit = (m - 1) * m.pow(4) / 2 + 2;
    // basis elements, then points on the moment curve Σ tⁱ bᵢ
    let candidates = span.iter().cloned().chain((1..=limit).map(|t| {
        let t = Rational::from_integer(t.into());
        let mut pw = Rational::one();
        let mut x = a.zero();
        for b in &span {
            x = &x + &b.scale(&pw);
            pw *= &t;
        }
        a.reduce(&x)
    }));
    for x in candidates {
        let mu = local_minimal_polynomial(fb, &e, &x);
        let sq = mu.squarefree_part();
        if sq.degree() < 2 {
            continue;
        }
        let factors = sq.factor()?;
        if factors.len() >= 2 {
            let p1 = &factors[0].0;
            let mut q1 = UniPoly::one();
            let mut rest = mu.clone();
            loop {
                let (q, r) = rest.div_rem(p1);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                q1 = q1.mul(p1);
            }
            let (g, s_coef, _) = q1.ext_gcd(&rest);
            debug_assert_eq!(g, UniPoly::one());
            let f = eval_at(fb, &e, &x, &s_coef.mul(&q1));
            let complement = a.reduce(&(&e - &f));
            let mut out = split_idempotent(fb, f)?;
            out.extend(split_idempotent(fb, complement)?);
            return Ok(out);
        }
        if sq.degree() == s {
            // eA / rad is the field k[t]/(sq)
            return Ok(vec![e]);
        }
    }
    Err(AlgebraError::SplittingFailed(a.presentation()))
}

/// Minimal polynomial of `x` inside `eA`, whose unit is `e`.
fn local_minimal_polynomial(fb: &FiniteBasis, e: &Polynomial, x: &Polynomial) -> UniPoly {
    let a = &fb.algebra;
    let mut powers = vec![fb.coords(e)];
    let mut current = e.clone();
    loop {
        current = a.mul(&current, x);
        let target = fb.coords(&current);
        let mat = Matrix::from_columns(fb.dim(), &powers);
        if let Some(sol) = mat.solve(&target) {
            let mut c: Vec<Rational> = sol.into_iter().map(|v| -v).collect();
            c.push(Rational::one());
            return UniPoly::new(c);
        }
        powers.push(target);
    }
}

fn eval_at(fb: &FiniteBasis, e: &Polynomial, x: &Polynomial, p: &UniPoly) -> Polynomial {
    let a = &fb.algebra;
    let mut acc = a.zero();
    for c in p.coeffs().iter().rev() {
        acc = &a.mul(&acc, x) + &e.scale(c);
    }
    a.reduce(&acc)
}

/// Idempotents of normal-form degree at most `degree_bound`.
#[derive(Clone, Debug)]
pub struct IdempotentCertificate {
    pub degree_bound: u32,
    pub unknowns: usize,
    pub idempotents: Vec<Polynomial>,
}

impl IdempotentCertificate {
    /// Only 0 and 1 within the bound.
    pub fn no_nontrivial(&self) -> bool {
        self.idempotents.len() <= 2
    }
}

/// Standard monomials of total degree at most `d`, ascending.
pub fn standard_monomials_up_to(a: &FpAlgebra, d: u32) -> Vec<Monomial> {
    let n = a.ngens();
    let gb = a.groebner();
    let mut out = Vec::new();
    let mut exp = vec![0u32; n];
    fn rec(i: usize, left: u32, exp: &mut Vec<u32>, out: &mut Vec<Monomial>, gb: &super::groebner::GroebnerBasis) {
        if i == exp.len() {
            let m = Monomial(exp.clone());
            if gb.is_standard(&m) {
                out.push(m);
            }
            return;
        }
        for e in 0..=left {
            exp[i] = e;
            rec(i + 1, left - e, exp, out, gb);
        }
        exp[i] = 0;
    }
    rec(0, d, &mut exp, &mut out, gb);
    let order = a.order();
    out.sort_by(|x, y| order.cmp(x, y));
    out
}

/// Solves `e² = e` for `e` ranging over combinations of standard monomials
/// of degree at most `degree_bound`.
pub fn bounded_idempotents(a: &FpAlgebra, degree_bound: u32) -> Result<IdempotentCertificate, AlgebraError> {
    if a.is_zero_algebra() {
        return Ok(IdempotentCertificate { degree_bound, unknowns: 0, idempotents: vec![a.zero()] });
    }
    let monos = standard_monomials_up_to(a, degree_bound);
    let n = monos.len();
    let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let cv = vars(&names);
    let elems: Vec<Polynomial> =
        monos.iter().map(|m| Polynomial::term(a.vars(), m.clone(), Rational::one())).collect();
    // coefficient of each standard monomial in e² - e
    let mut eqs: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
    for i in 0..n {
        for j in i..n {
            let prod = a.mul(&elems[i], &elems[j]);
            let mult = if i == j { Rational::one() } else { Rational::from_integer(2.into()) };
            let mut cij = Monomial::one(n);
            cij.0[i] += 1;
            cij.0[j] += 1;
            for (m, c) in prod.terms() {
                eqs.entry(m.clone())
                    .or_insert_with(|| Polynomial::zero(&cv))
                    .add_term(cij.clone(), c * &mult);
            }
        }
        eqs.entry(monos[i].clone())
            .or_insert_with(|| Polynomial::zero(&cv))
            .add_term(Monomial::var(n, i), -Rational::one());
    }
    let system = FpAlgebra::from_polys(&cv, eqs.into_values().collect());
    let sols = points(&system)?;
    let mut idempotents: Vec<Polynomial> = sols
        .points
        .iter()
        .map(|p| {
            let vals = p.point_values().unwrap();
            let mut e = a.zero();
            for (el, v) in elems.iter().zip(&vals) {
                e = &e + &el.scale(v);
            }
            a.reduce(&e)
        })
        .collect();
    idempotents.sort_by_key(|e| e.to_string());
    Ok(IdempotentCertificate { degree_bound, unknowns: n, idempotents })
}

/// The algebra whose `B`-points are the maps `A → B ⊗ C`, for finite-dimensional `C`:
/// variables `a_{i,j}` for generator `i` of `A` and basis element `j` of `C`.
#[derive(Clone, Debug)]
pub struct HomScheme {
    pub algebra: FpAlgebra,
    pub source: FpAlgebra,
    pub target: FiniteBasis,
}

impl HomScheme {
    pub fn var_index(&self, generator: usize, basis_index: usize) -> usize {
        generator * self.target.dim() + basis_index
    }
}

/// Variable names for the hom-scheme: letters when `A` has one generator.
fn hom_var_names(source: &FpAlgebra, d: usize) -> Vec<String> {
    let n = source.ngens();
    if n == 1 && d <= 26 {
        return (0..d).map(|j| ((b'a' + j as u8) as char).to_string()).collect();
    }
    let mut names = Vec::with_capacity(n * d);
    for i in 0..n {
        for j in 0..d {
            names.push(format!("{}_{}", source.vars()[i], j));
        }
    }
    names
}

pub fn hom_scheme(source: &FpAlgebra, target: &FpAlgebra) -> Result<HomScheme, AlgebraError> {
    let fb = FiniteBasis::new(target)?;
    let d = fb.dim();
    let n = source.ngens();
    let names = hom_var_names(source, d);
    let av = vars(&names);
    let na = names.len();

    // joint ring: hom variables first, then the target's generators
    let mut joint_names = names.clone();
    joint_names.extend(target.vars().iter().cloned());
    let jv = vars(&joint_names);
    let tmap: Vec<usize> = (na..na + target.ngens()).collect();
    let lifted: Vec<Polynomial> =
        target.groebner().polys().iter().map(|p| p.rename_into(&jv, &tmap)).collect();
    let jgb = groebner_basis(&lifted, &jv, target.order());

    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            let mut acc = Polynomial::zero(&jv);
            for j in 0..d {
                let coeff = Polynomial::var(&jv, i * d + j);
                let basis = fb.element(j).rename_into(&jv, &tmap);
                acc = &acc + &(&coeff * &basis);
            }
            acc
        })
        .collect();

    let index_of: BTreeMap<Monomial, usize> =
        fb.monomials.iter().enumerate().map(|(j, m)| (m.clone(), j)).collect();
    let mut rels = Vec::new();
    for f in source.relations() {
        let expanded = jgb.normal_form(&f.compose(&jv, &images));
        let mut by_basis: Vec<Polynomial> = vec![Polynomial::zero(&av); d];
        for (m, c) in expanded.terms() {
            let tpart = Monomial(m.0[na..].to_vec());
            let apart = Monomial(m.0[..na].to_vec());
            let j = index_of[&tpart];
            by_basis[j].add_term(apart, c.clone());
        }
        rels.extend(by_basis.into_iter().filter(|p| !p.is_zero()));
    }
    let algebra = FpAlgebra::with_order(&av, rels, source.order());
    Ok(HomScheme { algebra, source: source.clone(), target: fb })
}

/// All maps `A → C` for finite-dimensional `C`, when there are finitely many.
pub fn homs(source: &FpAlgebra, target: &FpAlgebra) -> Result<Vec<AlgMorphism>, AlgebraError> {
    let hs = hom_scheme(source, target)?;
    let pts = points(&hs.algebra)?;
    pts.points
        .iter()
        .map(|p| {
            let vals = p.point_values().unwrap();
            let images = (0..source.ngens())
                .map(|i| {
                    let coords: Vec<Rational> =
                        (0..hs.target.dim()).map(|j| vals[hs.var_index(i, j)].clone()).collect();
                    hs.target.from_coords(&coords)
                })
                .collect();
            hom_check(source, target, images)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::{rat, ratio};

    fn alg(names: &[&str], rels: &[&str]) -> FpAlgebra {
        FpAlgebra::parse(names, rels).unwrap()
    }

    fn strings(v: &[Polynomial]) -> Vec<String> {
        v.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn points_examples() {
        let dual = alg(&["y"], &["y^2"]);
        let p = points(&dual).unwrap();
        assert_eq!(p.points.len(), 1);
        assert_eq!(p.points[0].point_values().unwrap(), vec![rat(0)]);

        let two = points(&alg(&["x"], &["x^2 - 1"])).unwrap();
        let vals: Vec<_> = two.points.iter().map(|p| p.point_values().unwrap()[0].clone()).collect();
        assert_eq!(vals, vec![rat(-1), rat(1)]);
        assert!(!two.has_irrational_points);

        let none = points(&alg(&["x"], &["x^2 + 1"])).unwrap();
        assert!(none.points.is_empty());
        assert!(none.has_irrational_points);

        assert!(matches!(points(&FpAlgebra::free(&["x"])), Err(AlgebraError::PositiveDimensional(_))));
    }

    #[test]
    fn points_of_a_two_variable_system() {
        // x^2 = 1/4, y = 2x
        let a = alg(&["x", "y"], &["4 x^2 - 1", "y - 2 x"]);
        let vals: Vec<_> = points(&a).unwrap().points.iter().map(|p| p.point_values().unwrap()).collect();
        assert_eq!(vals, vec![vec![ratio(-1, 2), rat(-1)], vec![ratio(1, 2), rat(1)]]);
    }

    #[test]
    fn idempotent_examples() {
        assert_eq!(strings(&idempotents(&alg(&["x"], &["x^2 - x"])).unwrap()), ["0", "x", "-x + 1", "1"]);
        assert_eq!(idempotents(&alg(&["y"], &["y^2"])).unwrap().len(), 2);
        assert_eq!(idempotents(&alg(&["x"], &["x^3"])).unwrap().len(), 2);
        assert!(matches!(
            idempotents(&FpAlgebra::free(&["x"])),
            Err(AlgebraError::InfiniteDimensional(_))
        ));
        // (x^2 - 2)(x - 1): a quadratic field times k
        assert_eq!(idempotents(&alg(&["x"], &["x^3 - x^2 - 2 x + 2"])).unwrap().len(), 4);
        // k^3
        assert_eq!(idempotents(&alg(&["x"], &["x^3 - x"])).unwrap().len(), 8);
    }

    #[test]
    fn weil_examples() {
        assert!(is_weil(&alg(&["y"], &["y^2"])));
        assert!(!is_weil(&FpAlgebra::free(&["x"])));
        assert!(!is_weil(&alg(&["x"], &["x^2 - 1"])));
        assert!(is_weil(&FpAlgebra::ground()));
        assert!(!is_weil(&FpAlgebra::zero_algebra()));
        assert!(!is_weil(&alg(&["x"], &["x^2 + 1"])));
        let shifted = weil_point(&alg(&["x", "y"], &["(x - 3)^2", "y^2", "x y - 3 y"])).unwrap();
        assert_eq!(shifted.point_values().unwrap(), vec![rat(3), rat(0)]);
    }

    #[test]
    fn bounded_certificate_on_laurent_ring() {
        let u = alg(&["x", "u"], &["x u - 1"]);
        let cert = bounded_idempotents(&u, 2).unwrap();
        assert_eq!(cert.unknowns, 5);
        assert!(cert.no_nontrivial());
        let split = alg(&["x", "y"], &["x y", "x + y - 1"]);
        assert!(!bounded_idempotents(&split, 2).unwrap().no_nontrivial());
    }

    #[test]
    fn homs_into_reduced_targets() {
        let target = alg(&["t"], &["t^3 - t"]);
        assert_eq!(homs(&alg(&["y"], &["y^2 - y"]), &target).unwrap().len(), 8);
        assert_eq!(homs(&alg(&["y"], &["y^2"]), &target).unwrap().len(), 1);
        assert_eq!(homs(&FpAlgebra::ground(), &target).unwrap().len(), 1);
    }
}
