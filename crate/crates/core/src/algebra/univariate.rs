//! Dense univariate polynomials over ℚ: gcd, square-free parts, rational
//! roots and factorization into irreducibles (Kronecker's method, which is
//! adequate for the small degrees met by finite-dimensional algebras here).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::poly::Rational;

/// Coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly(Vec<Rational>);

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("coefficient {0} too large for divisor enumeration")]
    CoefficientTooLarge(String),
    #[error("Kronecker search for degree-{degree} factors exceeds {limit} candidates")]
    SearchTooLarge { degree: usize, limit: u64 },
}

const DIVISOR_BOUND: u64 = 1 << 40;
const KRONECKER_LIMIT: u64 = 4_000_000;

impl UniPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly(c)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn one() -> Self {
        UniPoly(vec![Rational::one()])
    }

    /// `x - r`
    pub fn linear(r: &Rational) -> Self {
        UniPoly(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().recip();
        UniPoly(self.0.iter().map(|c| c * &inv).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = Rational::zero();
        UniPoly::new(
            (0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = Rational::zero();
        UniPoly::new(
            (0..n).map(|i| self.0.get(i).unwrap_or(&z) - o.0.get(i).unwrap_or(&z)).collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::new(c)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        UniPoly::new(self.0.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(UniPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.0.clone();
        let dl = d.lead();
        let dd = d.degree();
        if r.len() < d.0.len() {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    let v = &c * dc;
                    r[k + j] -= v;
                }
            }
            q[k] = c;
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s * self + t * other = g = gcd`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lead().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Yun's square-free decomposition: `(a_i, i)` with `self = lc * Π a_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let mut c = fp.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    pub fn squarefree_part(&self) -> Self {
        self.squarefree_decomposition()
            .into_iter()
            .fold(UniPoly::one(), |acc, (a, _)| acc.mul(&a))
    }

    /// Primitive integer multiple with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let l = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    /// All distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Result<Vec<Rational>, FactorError> {
        if self.is_zero() {
            return Ok(Vec::new());
        }
        let mut roots = Vec::new();
        let mut p = self.squarefree_part();
        if p.0.first().is_some_and(|c| c.is_zero()) {
            roots.push(Rational::zero());
            p = p.div_rem(&UniPoly::linear(&Rational::zero())).0;
        }
        if p.degree() == 0 {
            return Ok(roots);
        }
        let ints = p.primitive_integer();
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        let num = divisors(&a0)?;
        let den = divisors(&an)?;
        let mut cands: Vec<Rational> = Vec::new();
        for n in &num {
            for d in &den {
                let r = Rational::new(n.clone(), d.clone());
                cands.push(r.clone());
                cands.push(-r);
            }
        }
        cands.sort();
        cands.dedup();
        for r in cands {
            if p.eval(&r).is_zero() {
                roots.push(r);
            }
        }
        roots.sort();
        Ok(roots)
    }

    /// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
    pub fn factor(&self) -> Result<Vec<(UniPoly, u32)>, FactorError> {
        let mut out = Vec::new();
        for (part, mult) in self.squarefree_decomposition() {
            for f in factor_squarefree(&part)? {
                out.push((f, mult));
            }
        }
        out.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0 .0.cmp(&b.0 .0)));
        Ok(out)
    }
}

/// Positive divisors of `n > 0` by trial division.
pub fn divisors(n: &BigInt) -> Result<Vec<BigInt>, FactorError> {
    let n = n.abs();
    if n.is_zero() {
        return Ok(vec![BigInt::one()]);
    }
    let small = n
        .to_u64()
        .filter(|&v| v <= DIVISOR_BOUND)
        .ok_or_else(|| FactorError::CoefficientTooLarge(n.to_string()))?;
    let mut low = Vec::new();
    let mut high = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small % d == 0 {
            low.push(d);
            if d * d != small {
                high.push(small / d);
            }
        }
        d += 1;
    }
    high.reverse();
    Ok(low.into_iter().chain(high).map(BigInt::from).collect())
}

fn factor_squarefree(f: &UniPoly) -> Result<Vec<UniPoly>, FactorError> {
    let mut f = f.monic();
    let mut out = Vec::new();
    for r in f.rational_roots()? {
        let lin = UniPoly::linear(&r);
        f = f.div_rem(&lin).0;
        out.push(lin);
    }
    let mut pending = vec![f];
    while let Some(g) = pending.pop() {
        if g.degree() == 0 {
            continue;
        }
        if g.degree() <= 3 {
            // no rational roots remain, so degree <= 3 is irreducible
            out.push(g.monic());
            continue;
        }
        match kronecker_split(&g)? {
            Some(h) => {
                let (q, _) = g.div_rem(&h);
                pending.push(h.monic());
                pending.push(q.monic());
            }
            None => out.push(g.monic()),
        }
    }
    Ok(out)
}

/// Finds a proper factor of degree 2..=deg/2 of a polynomial without rational roots.
fn kronecker_split(f: &UniPoly) -> Result<Option<UniPoly>, FactorError> {
    let ints = f.primitive_integer();
    let fz = UniPoly::new(ints.iter().map(|c| Rational::from_integer(c.clone())).collect());
    let n = fz.degree();
    for d in 2..=n / 2 {
        // choose d + 1 sample points with the fewest divisors of f(a)
        let mut samples: Vec<(usize, i64, BigInt)> = Vec::new();
        for a in -12i64..=12 {
            let v = fz.eval(&Rational::from_integer(BigInt::from(a))).to_integer();
            if v.is_zero() {
                continue;
            }
            let count = divisors(&v)?.len();
            samples.push((count, a, v));
        }
        samples.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.abs().cmp(&y.1.abs())).then(x.1.cmp(&y.1)));
        samples.truncate(d + 1);
        let total: u64 = samples.iter().fold(1u64, |acc, s| acc.saturating_mul(2 * s.0 as u64));
        if total > KRONECKER_LIMIT {
            return Err(FactorError::SearchTooLarge { degree: d, limit: KRONECKER_LIMIT });
        }
        let points: Vec<Rational> =
            samples.iter().map(|s| Rational::from_integer(BigInt::from(s.1))).collect();
        let choices: Vec<Vec<BigInt>> = samples
            .iter()
            .map(|s| {
                let ds = divisors(&s.2).unwrap();
                ds.iter().flat_map(|x| [x.clone(), -x.clone()]).collect()
            })
            .collect();
        let basis = lagrange_basis(&points);
        let mut idx = vec![0usize; choices.len()];
        loop {
            let mut g = UniPoly::zero();
            for (k, l) in basis.iter().enumerate() {
                let v = Rational::from_integer(choices[k][idx[k]].clone());
                g = g.add(&l.scale(&v));
            }
            if g.degree() == d && g.0.iter().all(|c| c.is_integer()) && g.lead().is_positive() {
                let (_, r) = fz.div_rem(&g);
                if r.is_zero() {
                    return Ok(Some(g));
                }
            }
            // odometer
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break;
                }
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    Ok(None)
}

fn lagrange_basis(points: &[Rational]) -> Vec<UniPoly> {
    points
        .iter()
        .enumerate()
        .map(|(i, xi)| {
            let mut l = UniPoly::one();
            for (j, xj) in points.iter().enumerate() {
                if i != j {
                    let denom = (xi - xj).recip();
                    l = l.mul(&UniPoly::linear(xj)).scale(&denom);
                }
            }
            l
        })
        .collect()
}
