//! The pre-order of an internal rig, with the universal quantifiers forced
//! over every arrow into the stage.

use super::monoid::InternalMonoid;
use super::presheaf::Subpresheaf;
use super::ToposError;
use crate::rig::{Clause, Prop2Report, ADDITIVE_SUBMONOID, ONE_IN_A, SUBGROUP, SUBRIG};

pub type InternalProp2Report = Prop2Report<Subpresheaf>;

/// `c ⊩ ∀p ∈ S. φ(a, p)`: for every `f : d → c` and `p ∈ S(d)`, `φ` holds of `K(f)a` and `p` at `d`.
fn forces(
    k: &InternalMonoid,
    s: &Subpresheaf,
    c: usize,
    a: usize,
    phi: impl Fn(usize, usize, usize) -> bool,
) -> bool {
    let site = k.site();
    (0..site.arrow_count()).filter(|&f| site.arrow(f).cod == c).all(|f| {
        let d = site.arrow(f).dom;
        let af = k.carrier.restrict(f, a);
        s.members(d).iter().all(|&p| phi(d, af, p))
    })
}

/// `A = {a | a + P ⊆ P}` and `M = {λ | λA ⊆ A}` inside the internal rig `K`,
/// with the conclusions checked stage by stage.
pub fn prop2_internal(k: &InternalMonoid, p: &Subpresheaf) -> Result<InternalProp2Report, ToposError> {
    if !k.is_rig() {
        return Err(ToposError::NotMonoid("an internal rig is required".into()));
    }
    if p.inclusion.target() != &k.carrier {
        return Err(ToposError::NotSubpresheaf("P must be a sub-presheaf of the rig".into()));
    }
    let add = |d: usize, x: usize, y: usize| k.add_at(d, x, y).unwrap();
    let a = Subpresheaf::new(&k.carrier, |c, x| forces(k, p, c, x, |d, xf, q| p.contains(d, add(d, xf, q))))?;
    let m = Subpresheaf::new(&k.carrier, |c, l| forces(k, &a, c, l, |d, lf, x| a.contains(d, k.mul_at(d, lf, x))))?;

    let site = k.site().clone();
    let objects = 0..site.object_count();
    let name = |c: usize| site.objects()[c].clone();
    let elems = |s: &Subpresheaf, c: usize| s.members(c).to_vec();
    let zero = |c: usize| k.zero_at(c).unwrap();
    let one = |c: usize| k.one_at(c);

    let closed_under = |s: &Subpresheaf, op: &dyn Fn(usize, usize, usize) -> usize, unit: &dyn Fn(usize) -> usize| {
        for c in objects.clone() {
            if !s.contains(c, unit(c)) {
                return Err(format!("unit missing at {}", name(c)));
            }
            for &x in &elems(s, c) {
                for &y in &elems(s, c) {
                    if !s.contains(c, op(c, x, y)) {
                        return Err(format!("not closed at {}: {x}, {y}", name(c)));
                    }
                }
            }
        }
        Ok(())
    };
    let mul = |c: usize, x: usize, y: usize| k.mul_at(c, x, y);
    let subset = |s: &Subpresheaf, t: &Subpresheaf| {
        for c in objects.clone() {
            if let Some(&x) = s.members(c).iter().find(|&&x| !t.contains(c, x)) {
                return Err(format!("element {x} at {}", name(c)));
            }
        }
        Ok(())
    };

    let mut clauses = vec![Clause::always(ADDITIVE_SUBMONOID, closed_under(&a, &add, &zero))];
    let subrig = closed_under(&m, &add, &zero).and_then(|_| closed_under(&m, &mul, &one));
    clauses.push(Clause::always(SUBRIG, subrig));
    let one_in_a = objects.clone().all(|c| a.contains(c, one(c)));
    clauses.push(Clause::conditional(ONE_IN_A, one_in_a, subset(&m, &a)));
    let p_group = closed_under(p, &mul, &one).is_ok()
        && objects.clone().all(|c| {
            elems(p, c).iter().all(|&x| elems(p, c).iter().any(|&y| mul(c, x, y) == one(c) && mul(c, y, x) == one(c)))
        });
    clauses.push(Clause::conditional(SUBGROUP, p_group, subset(p, &m)));
    Ok(Prop2Report { a, m, clauses })
}
