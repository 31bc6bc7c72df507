//! Exponentials `X^T`, with `(X^T)(c) = Nat(y(c) × T, X)`.

use std::collections::HashMap;

use super::hom::{for_each_hom, Budget};
use super::presheaf::{product, NatTrans, Presheaf, Product};
use super::ToposError;

/// Components of a natural transformation, `[object][element]`.
pub type Components = Vec<Vec<usize>>;

#[derive(Clone, Debug)]
pub struct Exponential {
    pub presheaf: Presheaf,
    pub base: Presheaf,
    pub exponent: Presheaf,
    /// `y(c) × T` for each object `c`.
    pub stages: Vec<Product>,
    /// `elements[c][i]`: the map `y(c) × T → X` named by `i ∈ (X^T)(c)`.
    pub elements: Vec<Vec<Components>>,
    index: Vec<HashMap<Components, usize>>,
}

impl Exponential {
    pub fn new(base: &Presheaf, exponent: &Presheaf, budget: &mut Budget) -> Result<Self, ToposError> {
        if !base.same_site(exponent) {
            return Err(ToposError::SiteMismatch);
        }
        let site = base.site().clone();
        let k = site.object_count();
        let stages: Vec<Product> =
            (0..k).map(|c| product(&Presheaf::representable(&site, c), exponent)).collect();
        let mut elements = Vec::with_capacity(k);
        let mut index = Vec::with_capacity(k);
        for stage in &stages {
            let mut found: Vec<Components> = Vec::new();
            for_each_hom(&stage.presheaf, base, budget, |comps| {
                found.push(comps.to_vec());
                true
            })?;
            found.sort();
            let idx: HashMap<Components, usize> = found.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
            elements.push(found);
            index.push(idx);
        }
        // (X^T)(f) precomposes with y(f) × T
        let mut maps = Vec::with_capacity(site.arrow_count());
        for f in 0..site.arrow_count() {
            let a = site.arrow(f);
            let m = elements[a.cod]
                .iter()
                .map(|alpha| {
                    let beta = restrict_family(&site, &stages, exponent, f, alpha);
                    index[a.dom][&beta]
                })
                .collect();
            maps.push(m);
        }
        let sizes = elements.iter().map(Vec::len).collect();
        let presheaf = Presheaf::new_unchecked(&site, sizes, maps);
        Ok(Exponential { presheaf, base: base.clone(), exponent: exponent.clone(), stages, elements, index })
    }

    /// The element of `(X^T)(c)` named by a map `y(c) × T → X`.
    pub fn element_of(&self, c: usize, comps: &Components) -> usize {
        self.index[c][comps]
    }

    /// `α_d(g, t)` for `α ∈ (X^T)(c)`, `g : d → c`, `t ∈ T(d)`.
    pub fn apply(&self, c: usize, alpha: usize, g: usize, t: usize) -> usize {
        let site = self.presheaf.site();
        let d = site.arrow(g).dom;
        let p = self.stages[c].pair_index(d, site.hom_position(g), t);
        self.elements[c][alpha][d][p]
    }

    /// `ev : X^T × T → X`, `(α, t) ↦ α_c(id, t)`.
    pub fn evaluation(&self) -> (Product, NatTrans) {
        let prod = product(&self.presheaf, &self.exponent);
        let site = self.presheaf.site();
        let comps = (0..site.object_count())
            .map(|c| {
                (0..prod.presheaf.size(c))
                    .map(|p| {
                        let (alpha, t) = prod.split(c, p);
                        self.apply(c, alpha, site.identity(c), t)
                    })
                    .collect()
            })
            .collect();
        let ev = NatTrans::new_unchecked(&prod.presheaf, &self.base, comps);
        (prod, ev)
    }

    /// `ev₀ : X^T → X`, evaluation at the global element `point : 1 → T`.
    pub fn ev_at(&self, point: &NatTrans) -> NatTrans {
        let site = self.presheaf.site();
        let comps = (0..site.object_count())
            .map(|c| {
                let t0 = point.at(c, 0);
                (0..self.presheaf.size(c)).map(|alpha| self.apply(c, alpha, site.identity(c), t0)).collect()
            })
            .collect();
        NatTrans::new_unchecked(&self.presheaf, &self.base, comps)
    }

    /// The transpose `Z → X^T` of `φ : Z × T → X`, where `zt` is `Z × T`.
    pub fn transpose(&self, zt: &Product, phi: &NatTrans) -> NatTrans {
        let z = zt.first.target();
        let site = self.presheaf.site();
        let comps = (0..site.object_count())
            .map(|c| {
                (0..z.size(c))
                    .map(|zc| {
                        let alpha: Components = (0..site.object_count())
                            .map(|d| {
                                let stage = &self.stages[c];
                                (0..stage.presheaf.size(d))
                                    .map(|p| {
                                        let (gpos, t) = stage.split(d, p);
                                        let g = site.hom(d, c)[gpos];
                                        phi.at(d, zt.pair_index(d, z.restrict(g, zc), t))
                                    })
                                    .collect()
                            })
                            .collect();
                        self.element_of(c, &alpha)
                    })
                    .collect()
            })
            .collect();
        NatTrans::new_unchecked(z, &self.presheaf, comps)
    }

    /// The constants `X → X^T`, transposing the projection `X × T → X`.
    pub fn constants(&self) -> NatTrans {
        let xt = product(&self.base, &self.exponent);
        self.transpose(&xt, &xt.first.clone())
    }

    /// `(α, β) ↦ α ∘ ⟨π, β⟩`: the action `X^T × T^T → X^T` of internal composition.
    pub fn compose_with(&self, endo: &Exponential) -> (Product, NatTrans) {
        assert_eq!(endo.base, self.exponent);
        assert_eq!(endo.exponent, self.exponent);
        let prod = product(&self.presheaf, &endo.presheaf);
        let site = self.presheaf.site();
        let comps = (0..site.object_count())
            .map(|c| {
                (0..prod.presheaf.size(c))
                    .map(|p| {
                        let (alpha, beta) = prod.split(c, p);
                        let gamma: Components = (0..site.object_count())
                            .map(|d| {
                                let stage = &self.stages[c];
                                (0..stage.presheaf.size(d))
                                    .map(|q| {
                                        let (gpos, t) = stage.split(d, q);
                                        let g = site.hom(d, c)[gpos];
                                        self.apply(c, alpha, g, endo.apply(c, beta, g, t))
                                    })
                                    .collect()
                            })
                            .collect();
                        self.element_of(c, &gamma)
                    })
                    .collect()
            })
            .collect();
        let action = NatTrans::new_unchecked(&prod.presheaf, &self.presheaf, comps);
        (prod, action)
    }
}

/// `α ∘ (y(f) × T)` for `α : y(c) × T → X` and `f : a → c`.
fn restrict_family(
    site: &super::FinCat,
    stages: &[Product],
    exponent: &Presheaf,
    f: usize,
    alpha: &Components,
) -> Components {
    let (a, c) = (site.arrow(f).dom, site.arrow(f).cod);
    (0..site.object_count())
        .map(|d| {
            (0..stages[a].presheaf.size(d))
                .map(|p| {
                    let (gpos, t) = stages[a].split(d, p);
                    let g = site.hom(d, a)[gpos];
                    let fg = site.compose(f, g);
                    debug_assert!(t < exponent.size(d));
                    alpha[d][stages[c].pair_index(d, site.hom_position(fg), t)]
                })
                .collect()
        })
        .collect()
}
