//! The pre-order derived from a subset `P` of a rig `K`:
//! `A = {a | a + P ⊆ P}` and `M = {λ | λA ⊆ A}`.
//!
//! Finite rigs are decided by table walks; the rational line by interval
//! arithmetic on exact endpoints.

mod finite;
mod interval;

use num_traits::{One, Zero};

pub use finite::{FiniteRig, RigError, Subset};
pub use interval::{decide_by_cells, scaling_stabilizer, translation_stabilizer, Bound, Interval, QIntervalSet};

use crate::algebra::Rational;

/// One checked implication, with a witness when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub name: &'static str,
    /// False when the hypothesis is not met, so the clause holds vacuously.
    pub applicable: bool,
    pub holds: bool,
    pub witness: Option<String>,
}

impl Clause {
    pub(crate) fn conditional(name: &'static str, hypothesis: bool, conclusion: Result<(), String>) -> Self {
        match (hypothesis, conclusion) {
            (false, _) => Clause { name, applicable: false, holds: true, witness: None },
            (true, Ok(())) => Clause { name, applicable: true, holds: true, witness: None },
            (true, Err(w)) => Clause { name, applicable: true, holds: false, witness: Some(w) },
        }
    }

    pub(crate) fn always(name: &'static str, conclusion: Result<(), String>) -> Self {
        Self::conditional(name, true, conclusion)
    }
}

#[derive(Clone, Debug)]
pub struct Prop2Report<S> {
    pub a: S,
    pub m: S,
    pub clauses: Vec<Clause>,
}

impl<S> Prop2Report<S> {
    pub fn holds(&self) -> bool {
        self.clauses.iter().all(|c| c.holds)
    }
}

pub const ADDITIVE_SUBMONOID: &str = "A is an additive submonoid";
pub const SUBRIG: &str = "M is a subrig";
pub const ONE_IN_A: &str = "1 ∈ A implies M ⊆ A";
pub const SUBGROUP: &str = "P a multiplicative subgroup implies P ⊆ M";
pub const NEG_ONE: &str = "1 ∈ A and -1 ∈ M imply 0 ∈ P";
pub const M_EQUALS_A: &str = "given 1 ∈ A, M = A iff A is closed under multiplication";

#[allow(non_snake_case)]
pub fn A_of(k: &FiniteRig, p: &Subset) -> Subset {
    Subset::from_fn(k.size(), |a| p.elements().all(|x| p.contains(k.add(a, x))))
}

#[allow(non_snake_case)]
pub fn M_of(k: &FiniteRig, a: &Subset) -> Subset {
    Subset::from_fn(k.size(), |l| a.elements().all(|x| a.contains(k.mul(l, x))))
}

fn closed_under(k: &FiniteRig, s: &Subset, op: impl Fn(usize, usize) -> usize, sym: &str) -> Result<(), String> {
    for x in s.elements() {
        for y in s.elements() {
            let z = op(x, y);
            if !s.contains(z) {
                return Err(format!("{} {sym} {} = {} leaves the set", k.label(x), k.label(y), k.label(z)));
            }
        }
    }
    Ok(())
}

fn member(k: &FiniteRig, s: &Subset, x: usize, set: &str) -> Result<(), String> {
    if s.contains(x) {
        Ok(())
    } else {
        Err(format!("{} ∉ {set}", k.label(x)))
    }
}

fn subset_of(k: &FiniteRig, s: &Subset, t: &Subset, names: (&str, &str)) -> Result<(), String> {
    match s.first_outside(t) {
        None => Ok(()),
        Some(x) => Err(format!("{} ∈ {} but not in {}", k.label(x), names.0, names.1)),
    }
}

fn is_multiplicative_subgroup(k: &FiniteRig, p: &Subset) -> bool {
    p.contains(k.one())
        && closed_under(k, p, |x, y| k.mul(x, y), "·").is_ok()
        && p.elements().all(|x| p.elements().any(|y| k.mul(x, y) == k.one() && k.mul(y, x) == k.one()))
}

/// The four clauses of the proposition, by exhaustion.
pub fn verify_prop2(k: &FiniteRig, p: &Subset) -> Prop2Report<Subset> {
    let a = A_of(k, p);
    let m = M_of(k, &a);
    let clauses = vec![
        Clause::always(
            ADDITIVE_SUBMONOID,
            member(k, &a, k.zero(), "A").and_then(|_| closed_under(k, &a, |x, y| k.add(x, y), "+")),
        ),
        Clause::always(
            SUBRIG,
            member(k, &m, k.zero(), "M")
                .and_then(|_| member(k, &m, k.one(), "M"))
                .and_then(|_| closed_under(k, &m, |x, y| k.add(x, y), "+"))
                .and_then(|_| closed_under(k, &m, |x, y| k.mul(x, y), "·")),
        ),
        Clause::conditional(ONE_IN_A, a.contains(k.one()), subset_of(k, &m, &a, ("M", "A"))),
        Clause::conditional(SUBGROUP, is_multiplicative_subgroup(k, p), subset_of(k, p, &m, ("P", "M"))),
    ];
    Prop2Report { a, m, clauses }
}

#[derive(Clone, Debug)]
pub struct LemmaReport<S> {
    pub a: S,
    pub m: S,
    pub negation_clause: Clause,
    pub equality_clause: Clause,
    /// Whether `M = A`, and whether `A` is closed under multiplication.
    pub m_equals_a: bool,
    pub a_multiplicative: bool,
}

impl<S> LemmaReport<S> {
    pub fn holds(&self) -> bool {
        self.negation_clause.holds && self.equality_clause.holds
    }
}

fn biconditional(one_in_a: bool, m_equals_a: bool, a_multiplicative: bool, witness: impl FnOnce() -> String) -> Clause {
    let conclusion = if m_equals_a == a_multiplicative { Ok(()) } else { Err(witness()) };
    Clause::conditional(M_EQUALS_A, one_in_a, conclusion)
}

/// Both clauses of the lemma; the first needs additive inverses.
pub fn verify_lemma_am(k: &FiniteRig, p: &Subset) -> Result<LemmaReport<Subset>, RigError> {
    let neg_one = k.neg(k.one()).filter(|_| k.is_ring()).ok_or_else(|| RigError::NotARing(k.name().into()))?;
    let a = A_of(k, p);
    let m = M_of(k, &a);
    let one_in_a = a.contains(k.one());
    let negation_clause =
        Clause::conditional(NEG_ONE, one_in_a && m.contains(neg_one), member(k, p, k.zero(), "P"));
    let a_multiplicative = closed_under(k, &a, |x, y| k.mul(x, y), "·").is_ok();
    let m_equals_a = m == a;
    let equality_clause = biconditional(one_in_a, m_equals_a, a_multiplicative, || {
        format!("M = {}, A = {}", m.display(k), a.display(k))
    });
    Ok(LemmaReport { a, m, negation_clause, equality_clause, m_equals_a, a_multiplicative })
}

/// Clause 2 of the lemma alone, which needs no negatives.
pub fn verify_lemma_am_equality(k: &FiniteRig, p: &Subset) -> Clause {
    let a = A_of(k, p);
    let m = M_of(k, &a);
    let a_multiplicative = closed_under(k, &a, |x, y| k.mul(x, y), "·").is_ok();
    biconditional(a.contains(k.one()), m == a, a_multiplicative, || format!("M = {}, A = {}", m.display(k), a.display(k)))
}

/// `A` on the rational line; the reals are represented by their rational points.
#[allow(non_snake_case)]
pub fn A_of_line(p: &QIntervalSet) -> QIntervalSet {
    translation_stabilizer(p)
}

#[allow(non_snake_case)]
pub fn M_of_line(a: &QIntervalSet) -> QIntervalSet {
    scaling_stabilizer(a)
}

fn line_member(s: &QIntervalSet, q: Rational, name: &str) -> Result<(), String> {
    if s.contains(&q) {
        Ok(())
    } else {
        Err(format!("{} ∉ {name} = {s}", crate::algebra::format_rational(&q)))
    }
}

fn line_subset(s: &QIntervalSet, t: &QIntervalSet, names: (&str, &str)) -> Result<(), String> {
    if s.is_subset(t) {
        Ok(())
    } else {
        Err(format!("{} = {s} is not inside {} = {t}, e.g. on {}", names.0, names.1, s.intersection(&t.complement())))
    }
}

fn line_additively_closed(s: &QIntervalSet, name: &str) -> Result<(), String> {
    line_subset(s, &translation_stabilizer(s), (name, "its translation stabilizer"))
}

fn line_multiplicatively_closed(s: &QIntervalSet, name: &str) -> Result<(), String> {
    line_subset(s, &scaling_stabilizer(s), (name, "its scaling stabilizer"))
}

fn line_subgroup(p: &QIntervalSet) -> bool {
    p.contains(&Rational::one())
        && line_multiplicatively_closed(p, "P").is_ok()
        && p.reciprocal().is_some_and(|r| r.is_subset(p))
}

pub fn verify_prop2_line(p: &QIntervalSet) -> Prop2Report<QIntervalSet> {
    let a = A_of_line(p);
    let m = M_of_line(&a);
    let clauses = vec![
        Clause::always(
            ADDITIVE_SUBMONOID,
            line_member(&a, Rational::zero(), "A").and_then(|_| line_additively_closed(&a, "A")),
        ),
        Clause::always(
            SUBRIG,
            line_member(&m, Rational::zero(), "M")
                .and_then(|_| line_member(&m, Rational::one(), "M"))
                .and_then(|_| line_additively_closed(&m, "M"))
                .and_then(|_| line_multiplicatively_closed(&m, "M")),
        ),
        Clause::conditional(ONE_IN_A, a.contains(&Rational::one()), line_subset(&m, &a, ("M", "A"))),
        Clause::conditional(SUBGROUP, line_subgroup(p), line_subset(p, &m, ("P", "M"))),
    ];
    Prop2Report { a, m, clauses }
}

pub fn verify_lemma_am_line(p: &QIntervalSet) -> LemmaReport<QIntervalSet> {
    let a = A_of_line(p);
    let m = M_of_line(&a);
    let one_in_a = a.contains(&Rational::one());
    let negation_clause = Clause::conditional(
        NEG_ONE,
        one_in_a && m.contains(&-Rational::one()),
        line_member(p, Rational::zero(), "P"),
    );
    let a_multiplicative = line_multiplicatively_closed(&a, "A").is_ok();
    let m_equals_a = m == a;
    let equality_clause = biconditional(one_in_a, m_equals_a, a_multiplicative, || format!("M = {m}, A = {a}"));
    LemmaReport { a, m, negation_clause, equality_clause, m_equals_a, a_multiplicative }
}
