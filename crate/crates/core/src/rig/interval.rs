//! Finite unions of intervals in ℚ with open or closed rational endpoints.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{format_rational, Rational};

/// An endpoint in ℚ ∪ {±∞}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Bound {
    fn cmp_value(&self, q: &Rational) -> Ordering {
        match self {
            Bound::NegInf => Ordering::Less,
            Bound::PosInf => Ordering::Greater,
            Bound::Finite(b) => b.cmp(q),
        }
    }

    fn finite(&self) -> Option<&Rational> {
        match self {
            Bound::Finite(q) => Some(q),
            _ => None,
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Bound::NegInf, Bound::NegInf) | (Bound::PosInf, Bound::PosInf) => Ordering::Equal,
            (Bound::NegInf, _) | (_, Bound::PosInf) => Ordering::Less,
            (_, Bound::NegInf) | (Bound::PosInf, _) => Ordering::Greater,
            (Bound::Finite(a), Bound::Finite(b)) => a.cmp(b),
        }
    }
}

/// A nonempty interval. Infinite endpoints are always open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Bound,
    pub lo_closed: bool,
    pub hi: Bound,
    pub hi_closed: bool,
}

impl Interval {
    /// `None` when the described interval is empty.
    pub fn new(lo: Bound, lo_closed: bool, hi: Bound, hi_closed: bool) -> Option<Self> {
        let lo_closed = lo_closed && lo.finite().is_some();
        let hi_closed = hi_closed && hi.finite().is_some();
        match lo.cmp(&hi) {
            Ordering::Greater => None,
            Ordering::Equal if !(lo_closed && hi_closed) => None,
            _ => Some(Interval { lo, lo_closed, hi, hi_closed }),
        }
    }

    pub fn point(q: Rational) -> Self {
        Interval { lo: Bound::Finite(q.clone()), lo_closed: true, hi: Bound::Finite(q), hi_closed: true }
    }

    pub fn contains(&self, q: &Rational) -> bool {
        let above = match self.lo.cmp_value(q) {
            Ordering::Less => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Greater => false,
        };
        let below = match self.hi.cmp_value(q) {
            Ordering::Greater => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Less => false,
        };
        above && below
    }

    /// Overlapping or touching with the shared endpoint covered.
    fn joins(&self, next: &Interval) -> bool {
        match self.hi.cmp(&next.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.hi_closed || next.lo_closed,
            Ordering::Less => false,
        }
    }
}

/// A canonical finite union: sorted, pairwise disjoint and non-adjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QIntervalSet {
    intervals: Vec<Interval>,
}

impl QIntervalSet {
    pub fn empty() -> Self {
        QIntervalSet { intervals: Vec::new() }
    }

    pub fn line() -> Self {
        Self::from_intervals(vec![Interval::new(Bound::NegInf, false, Bound::PosInf, false).unwrap()])
    }

    pub fn point(q: Rational) -> Self {
        Self::from_intervals(vec![Interval::point(q)])
    }

    /// `(lo, ∞)` or `[lo, ∞)`.
    pub fn above(lo: Rational, closed: bool) -> Self {
        Self::from_intervals(Interval::new(Bound::Finite(lo), closed, Bound::PosInf, false).into_iter().collect())
    }

    pub fn below(hi: Rational, closed: bool) -> Self {
        Self::from_intervals(Interval::new(Bound::NegInf, false, Bound::Finite(hi), closed).into_iter().collect())
    }

    pub fn from_intervals(mut intervals: Vec<Interval>) -> Self {
        intervals.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| b.lo_closed.cmp(&a.lo_closed)));
        let mut out: Vec<Interval> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            match out.last_mut() {
                Some(last) if last.joins(&iv) => match last.hi.cmp(&iv.hi) {
                    Ordering::Less => {
                        last.hi = iv.hi;
                        last.hi_closed = iv.hi_closed;
                    }
                    Ordering::Equal => last.hi_closed |= iv.hi_closed,
                    Ordering::Greater => {}
                },
                _ => out.push(iv),
            }
        }
        QIntervalSet { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.intervals.iter().any(|iv| iv.contains(q))
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_intervals(self.intervals.iter().chain(&other.intervals).cloned().collect())
    }

    pub fn complement(&self) -> Self {
        let mut out = Vec::new();
        let mut lo = Bound::NegInf;
        let mut lo_closed = false;
        for iv in &self.intervals {
            out.extend(Interval::new(lo, lo_closed, iv.lo.clone(), !iv.lo_closed));
            lo = iv.hi.clone();
            lo_closed = !iv.hi_closed;
        }
        out.extend(Interval::new(lo, lo_closed, Bound::PosInf, false));
        Self::from_intervals(out)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.complement().union(&other.complement()).complement()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.intersection(&other.complement()).is_empty()
    }

    /// Finite endpoints, ascending and without repeats.
    pub fn endpoints(&self) -> Vec<Rational> {
        let mut e: Vec<Rational> = self
            .intervals
            .iter()
            .flat_map(|iv| [iv.lo.finite().cloned(), iv.hi.finite().cloned()])
            .flatten()
            .collect();
        e.sort();
        e.dedup();
        e
    }

    /// `a + S`.
    pub fn translate(&self, a: &Rational) -> Self {
        let shift = |b: &Bound| match b {
            Bound::Finite(q) => Bound::Finite(q + a),
            other => other.clone(),
        };
        Self::from_intervals(
            self.intervals
                .iter()
                .map(|iv| Interval { lo: shift(&iv.lo), lo_closed: iv.lo_closed, hi: shift(&iv.hi), hi_closed: iv.hi_closed })
                .collect(),
        )
    }

    /// `λ S`.
    pub fn scale(&self, lambda: &Rational) -> Self {
        if lambda.is_zero() {
            return if self.is_empty() { Self::empty() } else { Self::point(Rational::zero()) };
        }
        let flip = lambda.is_negative();
        let map = |b: &Bound| match b {
            Bound::Finite(q) => Bound::Finite(q * lambda),
            Bound::NegInf if flip => Bound::PosInf,
            Bound::PosInf if flip => Bound::NegInf,
            other => other.clone(),
        };
        Self::from_intervals(
            self.intervals
                .iter()
                .map(|iv| {
                    if flip {
                        Interval { lo: map(&iv.hi), lo_closed: iv.hi_closed, hi: map(&iv.lo), hi_closed: iv.lo_closed }
                    } else {
                        Interval { lo: map(&iv.lo), lo_closed: iv.lo_closed, hi: map(&iv.hi), hi_closed: iv.hi_closed }
                    }
                })
                .collect(),
        )
    }

    /// `{1/x : x ∈ S}`, or `None` when `0 ∈ S`.
    pub fn reciprocal(&self) -> Option<Self> {
        if self.contains(&Rational::zero()) {
            return None;
        }
        let inv = |b: &Bound, negative_side: bool| match b {
            Bound::Finite(q) if q.is_zero() => {
                if negative_side {
                    Bound::NegInf
                } else {
                    Bound::PosInf
                }
            }
            Bound::Finite(q) => Bound::Finite(q.recip()),
            Bound::NegInf | Bound::PosInf => Bound::Finite(Rational::zero()),
        };
        let out = self
            .intervals
            .iter()
            .map(|iv| {
                // an interval avoiding 0 lies on one side of it
                let negative = iv.hi <= Bound::Finite(Rational::zero());
                Interval {
                    lo: inv(&iv.hi, negative),
                    lo_closed: iv.hi_closed,
                    hi: inv(&iv.lo, negative),
                    hi_closed: iv.lo_closed,
                }
            })
            .collect();
        Some(Self::from_intervals(out))
    }
}

/// The set of `t ∈ ℚ` satisfying `holds`, assuming its truth value is constant
/// on each cell cut out by `breakpoints`: the breakpoints themselves and the
/// open gaps between them.
pub fn decide_by_cells(mut breakpoints: Vec<Rational>, holds: impl Fn(&Rational) -> bool) -> QIntervalSet {
    breakpoints.sort();
    breakpoints.dedup();
    if breakpoints.is_empty() {
        return if holds(&Rational::zero()) { QIntervalSet::line() } else { QIntervalSet::empty() };
    }
    let mut pieces = Vec::new();
    let first = &breakpoints[0];
    if holds(&(first - Rational::one())) {
        pieces.extend(Interval::new(Bound::NegInf, false, Bound::Finite(first.clone()), false));
    }
    for (i, b) in breakpoints.iter().enumerate() {
        if holds(b) {
            pieces.push(Interval::point(b.clone()));
        }
        let gap_sample = match breakpoints.get(i + 1) {
            Some(next) => (b + next) / Rational::from_integer(2.into()),
            None => b + Rational::one(),
        };
        if holds(&gap_sample) {
            let hi = breakpoints.get(i + 1).map_or(Bound::PosInf, |n| Bound::Finite(n.clone()));
            pieces.extend(Interval::new(Bound::Finite(b.clone()), false, hi, false));
        }
    }
    QIntervalSet::from_intervals(pieces)
}

/// `{a | a + P ⊆ P}`. Membership changes only where some translated endpoint
/// meets an endpoint, i.e. at differences of endpoints.
pub fn translation_stabilizer(p: &QIntervalSet) -> QIntervalSet {
    let e = p.endpoints();
    let breaks = e.iter().flat_map(|x| e.iter().map(move |y| x - y)).collect();
    decide_by_cells(breaks, |a| p.translate(a).is_subset(p))
}

/// `{λ | λ S ⊆ S}`. Membership changes only at 0 and at ratios of nonzero endpoints.
pub fn scaling_stabilizer(s: &QIntervalSet) -> QIntervalSet {
    let e = s.endpoints();
    let mut breaks = vec![Rational::zero()];
    for x in &e {
        for y in e.iter().filter(|y| !y.is_zero()) {
            breaks.push(x / y);
        }
    }
    decide_by_cells(breaks, |l| s.scale(l).is_subset(s))
}

fn fmt_bound(b: &Bound) -> String {
    match b {
        Bound::NegInf => "-∞".into(),
        Bound::PosInf => "∞".into(),
        Bound::Finite(q) => format_rational(q),
    }
}

impl fmt::Display for QIntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self
            .intervals
            .iter()
            .map(|iv| {
                if iv.lo == iv.hi {
                    format!("{{{}}}", fmt_bound(&iv.lo))
                } else {
                    format!(
                        "{}{}, {}{}",
                        if iv.lo_closed { '[' } else { '(' },
                        fmt_bound(&iv.lo),
                        fmt_bound(&iv.hi),
                        if iv.hi_closed { ']' } else { ')' }
                    )
                }
            })
            .collect();
        f.write_str(&parts.join(" ∪ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    fn positive() -> QIntervalSet {
        QIntervalSet::above(rat(0), false)
    }

    #[test]
    fn canonical_form_merges_touching_pieces() {
        let a = QIntervalSet::from_intervals(vec![
            Interval::new(Bound::Finite(rat(0)), true, Bound::Finite(rat(1)), false).unwrap(),
            Interval::new(Bound::Finite(rat(1)), true, Bound::Finite(rat(2)), true).unwrap(),
        ]);
        assert_eq!(a.to_string(), "[0, 2]");
        let gap = QIntervalSet::from_intervals(vec![
            Interval::new(Bound::Finite(rat(0)), true, Bound::Finite(rat(1)), false).unwrap(),
            Interval::new(Bound::Finite(rat(1)), false, Bound::Finite(rat(2)), true).unwrap(),
        ]);
        assert_eq!(gap.to_string(), "[0, 1) ∪ (1, 2]");
        assert!(!gap.contains(&rat(1)));
    }

    #[test]
    fn complement_and_intersection() {
        let p = positive();
        assert_eq!(p.complement().to_string(), "(-∞, 0]");
        assert_eq!(p.complement().complement(), p);
        let nonzero = QIntervalSet::point(rat(0)).complement();
        assert_eq!(nonzero.to_string(), "(-∞, 0) ∪ (0, ∞)");
        assert_eq!(nonzero.intersection(&QIntervalSet::below(rat(0), true)).to_string(), "(-∞, 0)");
    }

    #[test]
    fn scaling_and_reciprocal() {
        let s = QIntervalSet::from_intervals(vec![
            Interval::new(Bound::Finite(rat(1)), true, Bound::Finite(rat(2)), false).unwrap(),
        ]);
        assert_eq!(s.scale(&rat(-2)).to_string(), "(-4, -2]");
        assert_eq!(s.reciprocal().unwrap().to_string(), "(1/2, 1]");
        assert_eq!(positive().reciprocal().unwrap(), positive());
        assert!(QIntervalSet::line().reciprocal().is_none());
        assert_eq!(s.scale(&rat(0)).to_string(), "{0}");
    }

    #[test]
    fn stabilizers_of_the_positive_half_line() {
        assert_eq!(translation_stabilizer(&positive()).to_string(), "[0, ∞)");
        assert_eq!(scaling_stabilizer(&QIntervalSet::above(rat(0), true)).to_string(), "[0, ∞)");
        let unit = QIntervalSet::from_intervals(vec![
            Interval::new(Bound::Finite(rat(-1)), true, Bound::Finite(rat(1)), true).unwrap(),
        ]);
        assert_eq!(scaling_stabilizer(&unit).to_string(), "[-1, 1]");
        assert_eq!(translation_stabilizer(&unit).to_string(), "{0}");
        let half = QIntervalSet::point(ratio(1, 2));
        assert_eq!(scaling_stabilizer(&half).to_string(), "{1}");
    }
}
