//! Buchberger completion to reduced Gröbner bases and normal forms.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::poly::{Monomial, MonomialOrder, Polynomial, Rational, Vars};

/// Terms in ascending order, so the leading term is `last()`.
type Terms = Vec<(Monomial, Rational)>;

fn to_terms(p: &Polynomial, order: MonomialOrder) -> Terms {
    let mut t = p.sorted_terms(order);
    t.reverse();
    t
}

fn from_terms(vars: &Vars, t: Terms) -> Polynomial {
    Polynomial::from_terms(vars, t)
}

/// `p - c * q * g`, where all lists are ascending.
fn sub_scaled(p: &Terms, g: &Terms, q: &Monomial, c: &Rational, order: MonomialOrder) -> Terms {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    while i < p.len() || j < g.len() {
        if j == g.len() {
            out.push(p[i].clone());
            i += 1;
            continue;
        }
        let gm = g[j].0.mul(q);
        if i == p.len() {
            out.push((gm, -(c * &g[j].1)));
            j += 1;
            continue;
        }
        match order.cmp(&p[i].0, &gm) {
            Ordering::Less => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((gm, -(c * &g[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let v = &p[i].1 - c * &g[j].1;
                if !v.is_zero() {
                    out.push((gm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Fully reduces `f` modulo `basis` (each element monic, ascending terms).
fn reduce(f: Terms, basis: &[Terms], order: MonomialOrder) -> Terms {
    let mut p = f;
    let mut rem_desc: Terms = Vec::new();
    while let Some((m, c)) = p.last().cloned() {
        let divisor = basis.iter().find(|g| g.last().is_some_and(|(lm, _)| lm.divides(&m)));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.last().unwrap();
                let q = lm.quotient_of(&m);
                let coef = &c / lc;
                p = sub_scaled(&p, g, &q, &coef, order);
            }
            None => {
                rem_desc.push(p.pop().unwrap());
            }
        }
    }
    rem_desc.reverse();
    rem_desc
}

fn make_monic(mut t: Terms) -> Terms {
    if let Some((_, lc)) = t.last() {
        let inv = lc.recip();
        if !inv.is_one() {
            for (_, c) in t.iter_mut() {
                *c = &*c * &inv;
            }
        }
    }
    t
}

fn s_polynomial(f: &Terms, g: &Terms, order: MonomialOrder) -> Terms {
    let (fm, fc) = f.last().unwrap();
    let (gm, gc) = g.last().unwrap();
    let l = fm.lcm(gm);
    let qf = fm.quotient_of(&l);
    let qg = gm.quotient_of(&l);
    // (l / lt f) f - (l / lt g) g, with both scaled to monic leading terms
    let zero: Terms = Vec::new();
    let a = sub_scaled(&zero, f, &qf, &-fc.recip(), order);
    sub_scaled(&a, g, &qg, &gc.recip(), order)
}

/// A reduced Gröbner basis: monic, no leading monomial divides another,
/// every tail in normal form. Sorted by leading monomial, largest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    vars: Vars,
    order: MonomialOrder,
    polys: Vec<Polynomial>,
    terms: Vec<Terms>,
}

impl GroebnerBasis {
    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.terms.iter().map(|t| t.last().unwrap().0.clone()).collect()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_one()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        assert!(
            super::poly::same_vars(f.vars(), &self.vars),
            "normal form of a polynomial from another ring"
        );
        let r = reduce(to_terms(f, self.order), &self.terms, self.order);
        from_terms(&self.vars, r)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Division with its trace: `f = Σ quotients[i] · polys()[i] + remainder`,
    /// and `remainder` equals `normal_form(f)`.
    pub fn divide(&self, f: &Polynomial) -> Division {
        assert!(super::poly::same_vars(f.vars(), &self.vars), "division of a polynomial from another ring");
        let mut quotients = vec![Polynomial::zero(&self.vars); self.terms.len()];
        let mut p = to_terms(f, self.order);
        let mut rem_desc: Terms = Vec::new();
        while let Some((m, c)) = p.last().cloned() {
            match self.terms.iter().position(|g| g.last().unwrap().0.divides(&m)) {
                Some(i) => {
                    let (lm, lc) = self.terms[i].last().unwrap();
                    let q = lm.quotient_of(&m);
                    let coef = &c / lc;
                    quotients[i].add_term(q.clone(), coef.clone());
                    p = sub_scaled(&p, &self.terms[i], &q, &coef, self.order);
                }
                None => rem_desc.push(p.pop().unwrap()),
            }
        }
        rem_desc.reverse();
        Division { quotients, remainder: from_terms(&self.vars, rem_desc) }
    }

    /// Membership of a standard monomial: not divisible by any leading monomial.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.terms.iter().all(|t| !t.last().unwrap().0.divides(m))
    }
}

#[derive(Clone, Debug)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Buchberger's algorithm with the coprime and chain criteria, followed by
/// inter-reduction. Deterministic for a fixed input order.
pub fn groebner_basis(gens: &[Polynomial], vars: &Vars, order: MonomialOrder) -> GroebnerBasis {
    let mut basis: Vec<Terms> = Vec::new();
    for g in gens {
        assert!(super::poly::same_vars(g.vars(), vars), "generator from another ring");
        if g.is_zero() {
            continue;
        }
        let r = reduce(to_terms(g, order), &basis, order);
        if !r.is_empty() {
            basis.push(make_monic(r));
        }
    }

    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }

    let lm = |t: &Terms| t.last().unwrap().0.clone();

    while !pairs.is_empty() {
        if basis.iter().any(|t| t.len() == 1 && t[0].0.is_one()) {
            break;
        }
        // normal strategy: smallest lcm first, ties by index for determinism
        let &(i, j) = pairs
            .iter()
            .min_by(|a, b| {
                let la = lm(&basis[a.0]).lcm(&lm(&basis[a.1]));
                let lb = lm(&basis[b.0]).lcm(&lm(&basis[b.1]));
                order.cmp(&la, &lb).then_with(|| a.cmp(b))
            })
            .unwrap();
        pairs.remove(&(i, j));

        let mi = lm(&basis[i]);
        let mj = lm(&basis[j]);
        if mi.is_coprime(&mj) {
            continue;
        }
        let l = mi.lcm(&mj);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis[k]).divides(&l)
                && !pairs.contains(&key(i, k))
                && !pairs.contains(&key(j, k))
        });
        if chain {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = reduce(s, &basis, order);
        if !r.is_empty() {
            let n = basis.len();
            basis.push(make_monic(r));
            for k in 0..n {
                pairs.insert((k, n));
            }
        }
    }

    if let Some(unit) = basis.iter().find(|t| t.len() == 1 && t[0].0.is_one()) {
        let unit = unit.clone();
        return GroebnerBasis {
            vars: vars.clone(),
            order,
            polys: vec![from_terms(vars, unit.clone())],
            terms: vec![unit],
        };
    }

    // minimize: drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<Terms> = Vec::new();
    for (idx, t) in basis.iter().enumerate() {
        let m = lm(t);
        let redundant = basis.iter().enumerate().any(|(k, u)| {
            let mu = lm(u);
            k != idx && mu.divides(&m) && (mu != m || k < idx)
        });
        if !redundant {
            keep.push(t.clone());
        }
    }
    // inter-reduce tails
    let mut reduced: Vec<Terms> = Vec::with_capacity(keep.len());
    for idx in 0..keep.len() {
        let others: Vec<Terms> =
            keep.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, t)| t.clone()).collect();
        let mut t = keep[idx].clone();
        let head = t.pop().unwrap();
        let mut tail = reduce(t, &others, order);
        tail.push(head);
        reduced.push(make_monic(tail));
    }
    reduced.sort_by(|a, b| order.cmp(&lm(b), &lm(a)));

    GroebnerBasis {
        vars: vars.clone(),
        order,
        polys: reduced.iter().map(|t| from_terms(vars, t.clone())).collect(),
        terms: reduced,
    }
}
