//! Euler reals `R ↣ T^T`, T-discreteness, the component comparison for
//! `ev₀ : X^T → X`, and the kernel `Lie(R)`.

use super::cohesion::{components, AdjointString};
use super::exponential::{Components, Exponential};
use super::hom::{for_each_hom, Budget};
use super::monoid::InternalMonoid;
use super::presheaf::{product, NatTrans, Presheaf, Subpresheaf};
use super::ToposError;

/// An object `T` with a global element `0 : 1 → T`.
#[derive(Clone, Debug)]
pub struct PointedPresheaf {
    pub object: Presheaf,
    pub point: NatTrans,
}

impl PointedPresheaf {
    /// Points `T` at the global section extending `element ∈ T(terminal)`.
    pub fn new(object: &Presheaf, element: usize) -> Result<Self, ToposError> {
        Ok(PointedPresheaf { object: object.clone(), point: NatTrans::global_element(object, element)? })
    }

    pub fn zero_at(&self, c: usize) -> usize {
        self.point.at(c, 0)
    }
}

/// `R`, the fibre of `ev₀ : T^T → T` over `0`, with composition as multiplication.
#[derive(Clone, Debug)]
pub struct EulerReals {
    pub pointed: PointedPresheaf,
    pub endo: Exponential,
    pub ev0: NatTrans,
    pub reals: Subpresheaf,
    /// Multiplication `α·β = α ∘ β`, unit the identity, zero the constant `0`.
    pub monoid: InternalMonoid,
}

impl EulerReals {
    pub fn presheaf(&self) -> &Presheaf {
        &self.reals.presheaf
    }
}

pub fn euler_reals_presheaf(pointed: &PointedPresheaf, budget: &mut Budget) -> Result<EulerReals, ToposError> {
    let t = &pointed.object;
    let site = t.site().clone();
    let k = site.object_count();
    let endo = Exponential::new(t, t, budget)?;
    let ev0 = endo.ev_at(&pointed.point);
    let reals = Subpresheaf::new(&endo.presheaf, |c, beta| ev0.at(c, beta) == pointed.zero_at(c))?;
    let r = &reals.presheaf;

    let (pairs, action) = endo.compose_with(&endo);
    let square = product(r, r);
    let mult = (0..k)
        .map(|c| {
            (0..square.presheaf.size(c))
                .map(|p| {
                    let (i, j) = square.split(c, p);
                    let (a, b) = (reals.members(c)[i], reals.members(c)[j]);
                    let ab = action.at(c, pairs.pair_index(c, a, b));
                    reals.position(c, ab).expect("composites of 0-preserving maps preserve 0")
                })
                .collect()
        })
        .collect();
    let mult = NatTrans::new(&square.presheaf, r, mult)?;

    let named = |f: &dyn Fn(usize, usize) -> usize| -> Result<NatTrans, ToposError> {
        let comps = (0..k)
            .map(|c| {
                let family: Components = (0..k)
                    .map(|d| {
                        let stage = &endo.stages[c];
                        (0..stage.presheaf.size(d))
                            .map(|q| {
                                let (_, s) = stage.split(d, q);
                                f(d, s)
                            })
                            .collect()
                    })
                    .collect();
                let e = endo.element_of(c, &family);
                vec![reals.position(c, e).expect("the named map preserves 0")]
            })
            .collect();
        NatTrans::new(&Presheaf::terminal(&site), r, comps)
    };
    let unit = named(&|_, s| s)?;
    let zero = named(&|d, _| pointed.zero_at(d))?;
    let monoid = InternalMonoid::new(r, mult, unit, Some(zero), None)?;
    Ok(EulerReals { pointed: pointed.clone(), endo, ev0, reals, monoid })
}

/// `X` is T-discrete when `ev₀ : X^T → X` is invertible.
pub fn t_discrete_check(x: &Presheaf, pointed: &PointedPresheaf, budget: &mut Budget) -> Result<bool, ToposError> {
    let exp = Exponential::new(x, &pointed.object, budget)?;
    Ok(exp.ev_at(&pointed.point).is_iso())
}

/// The comparison `π₀ ev₀ : π₀(X^T) → π₀ X` for one `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop1Report {
    pub r_components: usize,
    pub exp_components: usize,
    pub x_components: usize,
    /// `π₀ ev₀` as a map of component indices.
    pub comparison: Vec<usize>,
    pub bijective: bool,
}

impl Prop1Report {
    pub fn hypothesis(&self) -> bool {
        self.r_components == 1
    }

    /// The implication: connected `R` forces a bijection.
    pub fn holds(&self) -> bool {
        !self.hypothesis() || self.bijective
    }
}

pub fn prop1_check(
    reals: &EulerReals,
    x: &Presheaf,
    string: &AdjointString,
    budget: &mut Budget,
) -> Result<Prop1Report, ToposError> {
    let exp = Exponential::new(x, &reals.pointed.object, budget)?;
    let ev0 = exp.ev_at(&reals.pointed.point);
    let comparison = string.pi0_map(&ev0);
    let x_components = components(x).count;
    let mut hit = vec![false; x_components];
    for &k in &comparison {
        hit[k] = true;
    }
    let bijective = comparison.len() == x_components && hit.iter().all(|&h| h);
    Ok(Prop1Report {
        r_components: components(reals.presheaf()).count,
        exp_components: comparison.len(),
        x_components,
        comparison,
        bijective,
    })
}

/// Hypotheses of the converse: `T` connected and `R ↣ T^T` split.
#[derive(Clone, Debug)]
pub struct Prop1Converse {
    pub t_connected: bool,
    pub r_connected: bool,
    pub retraction: Option<NatTrans>,
    /// `π₀ ev₀` for `X = T` itself.
    pub at_t: Prop1Report,
}

impl Prop1Converse {
    /// When the hypotheses hold and `R` is disconnected, `X = T` must witness
    /// a failing comparison.
    pub fn consistent(&self) -> bool {
        !(self.t_connected && self.retraction.is_some()) || self.r_connected || !self.at_t.bijective
    }
}

/// Searches all maps `T^T → R` for a retraction of the inclusion.
pub fn prop1_converse(reals: &EulerReals, string: &AdjointString, budget: &mut Budget) -> Result<Prop1Converse, ToposError> {
    let r = reals.presheaf();
    let identity = NatTrans::identity(r);
    let mut retraction = None;
    for_each_hom(&reals.endo.presheaf, r, budget, |comps| {
        let candidate = NatTrans::new_unchecked(&reals.endo.presheaf, r, comps.to_vec());
        if reals.reals.inclusion.then(&candidate) == identity {
            retraction = Some(candidate);
            false
        } else {
            true
        }
    })?;
    let at_t = prop1_check(reals, &reals.pointed.object, string, budget)?;
    Ok(Prop1Converse {
        t_connected: components(&reals.pointed.object).count == 1,
        r_connected: components(r).count == 1,
        retraction,
        at_t,
    })
}

/// `Lie(R)`, the fibre of `ev₀ : R^T → R` over the zero of `R`.
#[derive(Clone, Debug)]
pub struct LieKernel {
    pub exponential: Exponential,
    pub ev0: NatTrans,
    pub kernel: Subpresheaf,
}

pub fn lie_kernel(reals: &EulerReals, budget: &mut Budget) -> Result<LieKernel, ToposError> {
    let r = reals.presheaf();
    let exponential = Exponential::new(r, &reals.pointed.object, budget)?;
    let ev0 = exponential.ev_at(&reals.pointed.point);
    let zero = reals.monoid.zero.as_ref().expect("Euler reals carry a zero");
    let kernel = Subpresheaf::new(&exponential.presheaf, |c, a| ev0.at(c, a) == zero.at(c, 0))?;
    Ok(LieKernel { exponential, ev0, kernel })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::topos::hom::homs;
    use crate::topos::FinCat;

    fn budget() -> Budget {
        Budget::new(10_000_000)
    }

    /// Unfolds the definition: maps `y(d) × T → T` sending `(id, 0)` to `0`.
    fn reals_oracle(t: &PointedPresheaf, d: usize) -> usize {
        let site = t.object.site();
        let yd = Presheaf::representable(site, d);
        let stage = product(&yd, &t.object);
        let id_pos = site.hom_position(site.identity(d));
        homs(&stage.presheaf, &t.object, &mut budget())
            .unwrap()
            .iter()
            .filter(|h| h.at(d, stage.pair_index(d, id_pos, t.zero_at(d))) == t.zero_at(d))
            .count()
    }

    #[test]
    fn trivial_t_gives_trivial_reals() {
        let site = Arc::new(FinCat::retract());
        let one = PointedPresheaf::new(&Presheaf::terminal(&site), 0).unwrap();
        let r = euler_reals_presheaf(&one, &mut budget()).unwrap();
        assert_eq!(r.presheaf().sizes(), &[1, 1]);
        let lie = lie_kernel(&r, &mut budget()).unwrap();
        assert_eq!(lie.kernel.presheaf.sizes(), &[1, 1]);
    }

    #[test]
    fn reals_match_the_unfolded_definition() {
        for site in [Arc::new(FinCat::retract()), Arc::new(FinCat::reflexive_graph())] {
            for c in 0..site.object_count() {
                let y = Presheaf::representable(&site, c);
                let t = site.terminal().unwrap();
                for e in 0..y.size(t) {
                    let pointed = PointedPresheaf::new(&y, e).unwrap();
                    let r = euler_reals_presheaf(&pointed, &mut budget()).unwrap();
                    for d in 0..site.object_count() {
                        assert_eq!(r.presheaf().size(d), reals_oracle(&pointed, d));
                    }
                }
            }
        }
    }

    #[test]
    fn reals_on_the_retract_site_match_pointed_endomorphisms() {
        // R(1) is the set of maps T → T fixing the point
        let site = Arc::new(FinCat::retract());
        let pointed = PointedPresheaf::new(&Presheaf::representable(&site, 1), 0).unwrap();
        let r = euler_reals_presheaf(&pointed, &mut budget()).unwrap();
        let fixing = homs(&pointed.object, &pointed.object, &mut budget())
            .unwrap()
            .iter()
            .filter(|h| h.at(0, pointed.zero_at(0)) == pointed.zero_at(0))
            .count();
        assert_eq!(r.presheaf().size(0), fixing);
        assert_eq!(components(r.presheaf()).count, 2);
    }

    #[test]
    fn interval_reals_are_connected_and_prop1_holds() {
        let site = Arc::new(FinCat::reflexive_graph());
        let string = AdjointString::new(&site).unwrap();
        let s = site.arrow_index("s").unwrap();
        let edge = Presheaf::representable(&site, 1);
        let pointed = PointedPresheaf::new(&edge, site.hom_position(s)).unwrap();
        let r = euler_reals_presheaf(&pointed, &mut budget()).unwrap();
        assert_eq!(components(r.presheaf()).count, 1);
        for x in [Presheaf::terminal(&site), edge.clone(), Presheaf::constant(&site, 2)] {
            let report = prop1_check(&r, &x, &string, &mut budget()).unwrap();
            assert!(report.hypothesis() && report.bijective);
        }
        let converse = prop1_converse(&r, &string, &mut budget()).unwrap();
        assert!(converse.consistent());
    }

    #[test]
    fn constants_are_t_discrete() {
        let site = Arc::new(FinCat::reflexive_graph());
        let pointed = PointedPresheaf::new(&Presheaf::representable(&site, 1), 0).unwrap();
        assert!(t_discrete_check(&Presheaf::constant(&site, 3), &pointed, &mut budget()).unwrap());
        assert!(!t_discrete_check(&pointed.object, &pointed, &mut budget()).unwrap());
    }

    #[test]
    fn multiplication_is_composition() {
        let site = Arc::new(FinCat::reflexive_graph());
        let pointed = PointedPresheaf::new(&Presheaf::representable(&site, 1), 0).unwrap();
        let r = euler_reals_presheaf(&pointed, &mut budget()).unwrap();
        let m = &r.monoid;
        for c in 0..site.object_count() {
            let zero = m.zero_at(c).unwrap();
            for a in 0..r.presheaf().size(c) {
                assert_eq!(m.mul_at(c, zero, a), zero);
            }
        }
    }
}
