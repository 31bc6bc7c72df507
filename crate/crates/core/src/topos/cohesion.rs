//! The adjoint string `p_! ⊣ p* ⊣ p_* ⊣ p^!` over a site with terminal object,
//! and the checks that make it pre-cohesive.

use std::sync::Arc;

use super::hom::{homs, Budget};
use super::presheaf::{product, NatTrans, Presheaf};
use super::site::FinCat;
use super::ToposError;

/// Connected components of the category of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub count: usize,
    /// `of[c][x]`: the component of `x ∈ X(c)`, numbered by first appearance.
    pub of: Vec<Vec<usize>>,
}

pub fn components(x: &Presheaf) -> Components {
    let site = x.site();
    let k = site.object_count();
    let offset: Vec<usize> = (0..k).scan(0, |acc, c| {
        let o = *acc;
        *acc += x.size(c);
        Some(o)
    })
    .collect();
    let total = x.total_size();
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    for (f, a) in site.arrows().iter().enumerate() {
        for v in 0..x.size(a.cod) {
            let (r1, r2) = (find(&mut parent, offset[a.cod] + v), find(&mut parent, offset[a.dom] + x.restrict(f, v)));
            if r1 != r2 {
                parent[r1.max(r2)] = r1.min(r2);
            }
        }
    }
    let mut label = vec![usize::MAX; total];
    let mut count = 0;
    let of = (0..k)
        .map(|c| {
            (0..x.size(c))
                .map(|v| {
                    let r = find(&mut parent, offset[c] + v);
                    if label[r] == usize::MAX {
                        label[r] = count;
                        count += 1;
                    }
                    label[r]
                })
                .collect()
        })
        .collect();
    Components { count, of }
}

/// Why a site does or does not satisfy the hypotheses of the Johnstone criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiteVerdict {
    pub terminal: Option<usize>,
    /// Objects with no arrow from the terminal object.
    pub pointless: Vec<usize>,
}

impl SiteVerdict {
    pub fn precohesive(&self) -> bool {
        self.terminal.is_some() && self.pointless.is_empty()
    }
}

pub fn check_precohesive_site(site: &FinCat) -> SiteVerdict {
    let terminal = site.terminal();
    let pointless = match terminal {
        Some(_) => (0..site.object_count()).filter(|&c| site.points(c).is_empty()).collect(),
        None => Vec::new(),
    };
    SiteVerdict { terminal, pointless }
}

/// `p_!`, `p*`, `p_*` and `p^!`, with finite sets represented by their sizes.
#[derive(Clone, Debug)]
pub struct AdjointString {
    site: Arc<FinCat>,
    terminal: usize,
}

impl AdjointString {
    pub fn new(site: &Arc<FinCat>) -> Result<Self, ToposError> {
        let verdict = check_precohesive_site(site);
        if !verdict.precohesive() {
            let why = match verdict.terminal {
                None => "no terminal object".to_string(),
                Some(_) => format!(
                    "objects without a point: {}",
                    verdict.pointless.iter().map(|&c| site.objects()[c].clone()).collect::<Vec<_>>().join(", ")
                ),
            };
            return Err(ToposError::NotPreCohesiveSite(why));
        }
        Self::bypassing_gate(site)
    }

    /// The same functors on a site that merely has a terminal object.
    pub fn bypassing_gate(site: &Arc<FinCat>) -> Result<Self, ToposError> {
        let terminal = site.terminal().ok_or(ToposError::NoTerminal)?;
        Ok(AdjointString { site: site.clone(), terminal })
    }

    pub fn site(&self) -> &Arc<FinCat> {
        &self.site
    }

    pub fn terminal_object(&self) -> usize {
        self.terminal
    }

    /// `p_! X = π₀ X`.
    pub fn pi0(&self, x: &Presheaf) -> Components {
        components(x)
    }

    /// `p_!` on a map: `π₀ X → π₀ Y`.
    pub fn pi0_map(&self, f: &NatTrans) -> Vec<usize> {
        let (cx, cy) = (components(f.source()), components(f.target()));
        let mut out = vec![usize::MAX; cx.count];
        for (c, comp) in cx.of.iter().enumerate() {
            for (v, &k) in comp.iter().enumerate() {
                out[k] = cy.of[c][f.at(c, v)];
            }
        }
        out
    }

    /// `p* S`.
    pub fn discrete(&self, n: usize) -> Presheaf {
        Presheaf::constant(&self.site, n)
    }

    /// `p*` on a function `S → S'`.
    pub fn discrete_map(&self, n: usize, m: usize, h: &[usize]) -> NatTrans {
        let comps = vec![h.to_vec(); self.site.object_count()];
        NatTrans::new_unchecked(&self.discrete(n), &self.discrete(m), comps)
    }

    /// `p_* X = X(1)`.
    pub fn global_sections(&self, x: &Presheaf) -> usize {
        x.size(self.terminal)
    }

    /// `p_*` on a map.
    pub fn global_map(&self, f: &NatTrans) -> Vec<usize> {
        f.components()[self.terminal].clone()
    }

    /// `(p^! S)(c) = S^{Hom(1, c)}`, a function `φ` encoded in base `|S|`,
    /// the digit for the `i`-th point being `(φ / |S|^i) mod |S|`.
    pub fn codiscrete(&self, n: usize) -> Presheaf {
        let site = &self.site;
        let sizes: Vec<usize> = (0..site.object_count()).map(|c| n.pow(site.points(c).len() as u32)).collect();
        let maps = site
            .arrows()
            .iter()
            .enumerate()
            .map(|(f, a)| {
                (0..sizes[a.cod])
                    .map(|phi| {
                        let digits = decode(phi, n, site.points(a.cod).len());
                        let restricted: Vec<usize> = site
                            .points(a.dom)
                            .iter()
                            .map(|&pt| {
                                let fp = site.compose(f, pt);
                                digits[site.hom_position(fp)]
                            })
                            .collect();
                        encode(&restricted, n)
                    })
                    .collect()
            })
            .collect();
        Presheaf::new_unchecked(site, sizes, maps)
    }

    /// `p^!` on a function, by postcomposition.
    pub fn codiscrete_map(&self, n: usize, m: usize, h: &[usize]) -> NatTrans {
        let (src, tgt) = (self.codiscrete(n), self.codiscrete(m));
        let comps = (0..self.site.object_count())
            .map(|c| {
                let k = self.site.points(c).len();
                (0..src.size(c)).map(|phi| encode(&decode(phi, n, k).iter().map(|&d| h[d]).collect::<Vec<_>>(), m)).collect()
            })
            .collect();
        NatTrans::new_unchecked(&src, &tgt, comps)
    }

    /// Unit of `p_! ⊣ p*`: `σ_X : X → p* p_! X`.
    pub fn sigma(&self, x: &Presheaf) -> NatTrans {
        let comps = components(x);
        NatTrans::new_unchecked(x, &self.discrete(comps.count), comps.of)
    }

    /// Counit of `p_! ⊣ p*`: `p_! p* S → S`.
    pub fn pi0_counit(&self, n: usize) -> Vec<usize> {
        let d = self.discrete(n);
        let comps = components(&d);
        let mut out = vec![usize::MAX; comps.count];
        for (c, comp) in comps.of.iter().enumerate() {
            for (s, &k) in comp.iter().enumerate() {
                debug_assert!(out[k] == usize::MAX || out[k] == s, "{c}");
                out[k] = s;
            }
        }
        out
    }

    /// Counit of `p* ⊣ p_*`: `β_X : p* p_* X → X`, restricting global sections.
    pub fn beta(&self, x: &Presheaf) -> NatTrans {
        let n = self.global_sections(x);
        let comps = (0..self.site.object_count())
            .map(|c| {
                let bang = self.site.to_terminal(c).unwrap();
                (0..n).map(|g| x.restrict(bang, g)).collect()
            })
            .collect();
        NatTrans::new_unchecked(&self.discrete(n), x, comps)
    }

    /// Unit of `p* ⊣ p_*`: `S → p_* p* S`, the identity.
    pub fn discrete_unit(&self, n: usize) -> Vec<usize> {
        (0..n).collect()
    }

    /// Unit of `p_* ⊣ p^!`: `X → p^! p_* X`, sending `x` to `pt ↦ X(pt)(x)`.
    pub fn codiscrete_unit(&self, x: &Presheaf) -> NatTrans {
        let n = self.global_sections(x);
        let target = self.codiscrete(n);
        let comps = (0..self.site.object_count())
            .map(|c| {
                (0..x.size(c))
                    .map(|v| encode(&self.site.points(c).iter().map(|&pt| x.restrict(pt, v)).collect::<Vec<_>>(), n))
                    .collect()
            })
            .collect();
        NatTrans::new_unchecked(x, &target, comps)
    }

    /// Counit of `p_* ⊣ p^!`: `p_* p^! S = S^{Hom(1,1)} → S`, evaluation at the identity.
    pub fn codiscrete_counit(&self, n: usize) -> Vec<usize> {
        let k = self.site.points(self.terminal).len();
        debug_assert_eq!(k, 1);
        (0..n.pow(k as u32)).map(|phi| decode(phi, n, k)[0]).collect()
    }

    /// The six triangle identities of the three adjunctions, at `X` and at `S`.
    pub fn triangle_identities(&self, x: &Presheaf, n: usize) -> TriangleReport {
        let mut failures = Vec::new();
        let mut check = |name: &str, ok: bool| {
            if !ok {
                failures.push(name.to_string());
            }
        };
        // p_! ⊣ p*
        let pi0x = components(x).count;
        let sigma_x = self.sigma(x);
        let left: Vec<usize> = self.pi0_map(&sigma_x).iter().map(|&k| self.pi0_counit(pi0x)[k]).collect();
        check("ε p_! ∘ p_! σ = id", left == (0..pi0x).collect::<Vec<_>>());
        let sigma_s = self.sigma(&self.discrete(n));
        let counit = self.pi0_counit(n);
        let back = sigma_s.then(&self.discrete_map(counit.len(), n, &counit));
        check("p* ε ∘ σ p* = id", back == NatTrans::identity(&self.discrete(n)));
        // p* ⊣ p_*
        let gx = self.global_sections(x);
        let beta_ps = self.discrete_map(n, n, &self.discrete_unit(n)).then(&self.beta(&self.discrete(n)));
        check("β p* ∘ p* η = id", beta_ps == NatTrans::identity(&self.discrete(n)));
        let beta_x = self.beta(x);
        let round: Vec<usize> = self.discrete_unit(gx).iter().map(|&g| self.global_map(&beta_x)[g]).collect();
        check("p_* β ∘ η p_* = id", round == (0..gx).collect::<Vec<_>>());
        // p_* ⊣ p^!
        let nu_x = self.codiscrete_unit(x);
        let counit_g = self.codiscrete_counit(gx);
        let round: Vec<usize> = self.global_map(&nu_x).iter().map(|&phi| counit_g[phi]).collect();
        check("ε p_* ∘ p_* ν = id", round == (0..gx).collect::<Vec<_>>());
        let cod = self.codiscrete(n);
        let nu_cod = self.codiscrete_unit(&cod);
        let counit_s = self.codiscrete_counit(n);
        let composite = nu_cod.then(&self.codiscrete_map(counit_s.len(), n, &counit_s));
        check("p^! ε ∘ ν p^! = id", composite == NatTrans::identity(&cod));
        TriangleReport { failures }
    }

    /// The comparison `p_!(X × Y) → p_! X × p_! Y` is a bijection.
    pub fn preserves_product(&self, x: &Presheaf, y: &Presheaf) -> bool {
        let prod = product(x, y);
        let (a, b) = (self.pi0_map(&prod.first), self.pi0_map(&prod.second));
        let (nx, ny) = (components(x).count, components(y).count);
        let mut seen = vec![false; nx * ny];
        for k in 0..a.len() {
            let slot = a[k] * ny + b[k];
            if std::mem::replace(&mut seen[slot], true) {
                return false;
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// `Hom(p* S, p* S') → Hom(S, S')`, restriction to global sections, is a bijection.
    pub fn discrete_fully_faithful(&self, n: usize, m: usize, budget: &mut Budget) -> Result<bool, ToposError> {
        let maps = homs(&self.discrete(n), &self.discrete(m), budget)?;
        let mut images: Vec<Vec<usize>> = maps.iter().map(|t| self.global_map(t)).collect();
        let expected = (m as u64).pow(n as u32);
        images.sort();
        images.dedup();
        Ok(images.len() as u64 == expected && maps.len() as u64 == expected)
    }

    pub fn hyperconnected_check(&self, x: &Presheaf) -> Hyperconnection {
        Hyperconnection { beta_monic: self.beta(x).is_mono(), sigma_epic: self.sigma(x).is_epi() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleReport {
    pub failures: Vec<String>,
}

impl TriangleReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hyperconnection {
    pub beta_monic: bool,
    pub sigma_epic: bool,
}

impl Hyperconnection {
    pub fn holds(&self) -> bool {
        self.beta_monic && self.sigma_epic
    }
}

/// On a site with a terminal object but a pointless object `c`, the representable
/// `y(c)` has no global sections yet is connected, so `σ` is not epic.
pub fn gate_counterexample(site: &Arc<FinCat>) -> Option<(usize, Presheaf, Hyperconnection)> {
    let verdict = check_precohesive_site(site);
    let c = *verdict.pointless.first()?;
    let string = AdjointString::bypassing_gate(site).ok()?;
    let y = Presheaf::representable(site, c);
    let h = string.hyperconnected_check(&y);
    Some((c, y, h))
}

fn decode(mut phi: usize, n: usize, k: usize) -> Vec<usize> {
    (0..k)
        .map(|_| {
            let d = phi % n.max(1);
            phi /= n.max(1);
            d
        })
        .collect()
}

fn encode(digits: &[usize], n: usize) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * n + d)
}
