//! Finite-set presheaves, natural transformations and pointwise (co)limits.
//!
//! The elements of `X(c)` are `0..X.size(c)`. For `f : a → b`, `X.restrict(f, x)`
//! sends `x ∈ X(b)` to `X(f)(x) ∈ X(a)`.

use std::sync::Arc;

use super::site::FinCat;
use super::ToposError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presheaf {
    site: Arc<FinCat>,
    sizes: Vec<usize>,
    /// `maps[f][x] = X(f)(x)`.
    maps: Vec<Vec<usize>>,
}

impl Presheaf {
    /// Validates totality and functoriality.
    pub fn new(site: &Arc<FinCat>, sizes: Vec<usize>, maps: Vec<Vec<usize>>) -> Result<Self, ToposError> {
        let x = Presheaf { site: site.clone(), sizes, maps };
        x.validate()?;
        Ok(x)
    }

    /// Identities are filled in; `named` gives the maps of the other arrows.
    pub fn from_named(
        site: &Arc<FinCat>,
        sizes: Vec<usize>,
        named: &[(&str, Vec<usize>)],
    ) -> Result<Self, ToposError> {
        let mut maps: Vec<Option<Vec<usize>>> = vec![None; site.arrow_count()];
        for c in 0..site.object_count() {
            maps[site.identity(c)] = Some((0..sizes.get(c).copied().unwrap_or(0)).collect());
        }
        for (name, m) in named {
            let f = site
                .arrow_index(name)
                .ok_or_else(|| ToposError::NotFunctorial(format!("unknown arrow {name}")))?;
            maps[f] = Some(m.clone());
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(f, m)| m.ok_or_else(|| ToposError::NotFunctorial(format!("no map for {}", site.arrow(f).name))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(site, sizes, maps)
    }

    pub(crate) fn new_unchecked(site: &Arc<FinCat>, sizes: Vec<usize>, maps: Vec<Vec<usize>>) -> Self {
        let x = Presheaf { site: site.clone(), sizes, maps };
        debug_assert!(x.validate().is_ok(), "{:?}", x.validate());
        x
    }

    pub fn validate(&self) -> Result<(), ToposError> {
        let c = &self.site;
        let err = |m: String| Err(ToposError::NotFunctorial(m));
        if self.sizes.len() != c.object_count() || self.maps.len() != c.arrow_count() {
            return err("shape does not match the site".into());
        }
        for (f, a) in c.arrows().iter().enumerate() {
            let m = &self.maps[f];
            if m.len() != self.sizes[a.cod] || m.iter().any(|&v| v >= self.sizes[a.dom]) {
                return err(format!("map for {} is not a function X({}) → X({})", a.name, c.objects()[a.cod], c.objects()[a.dom]));
            }
            if c.is_identity(f) && m.iter().enumerate().any(|(i, &v)| i != v) {
                return err(format!("{} does not act as the identity", a.name));
            }
        }
        for g in 0..c.arrow_count() {
            for f in 0..c.arrow_count() {
                if c.arrow(f).cod != c.arrow(g).dom {
                    continue;
                }
                let gf = c.compose(g, f);
                // X(g∘f) = X(f) ∘ X(g)
                if (0..self.sizes[c.arrow(g).cod]).any(|x| self.maps[gf][x] != self.maps[f][self.maps[g][x]]) {
                    return err(format!("X({} ∘ {}) ≠ X({}) X({})", c.arrow(g).name, c.arrow(f).name, c.arrow(f).name, c.arrow(g).name));
                }
            }
        }
        Ok(())
    }

    pub fn site(&self) -> &Arc<FinCat> {
        &self.site
    }

    pub fn size(&self, c: usize) -> usize {
        self.sizes[c]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total_size(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn restrict(&self, f: usize, x: usize) -> usize {
        self.maps[f][x]
    }

    pub fn map(&self, f: usize) -> &[usize] {
        &self.maps[f]
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    /// The terminal presheaf `1`.
    pub fn terminal(site: &Arc<FinCat>) -> Self {
        Self::constant(site, 1)
    }

    pub fn initial(site: &Arc<FinCat>) -> Self {
        Self::constant(site, 0)
    }

    /// The constant presheaf on `{0, …, n-1}`.
    pub fn constant(site: &Arc<FinCat>, n: usize) -> Self {
        let sizes = vec![n; site.object_count()];
        let maps = vec![(0..n).collect(); site.arrow_count()];
        Presheaf { site: site.clone(), sizes, maps }
    }

    /// `y(c) = Hom(-, c)`; elements of `y(c)(a)` are positions in `hom(a, c)`.
    pub fn representable(site: &Arc<FinCat>, c: usize) -> Self {
        let sizes: Vec<usize> = (0..site.object_count()).map(|a| site.hom(a, c).len()).collect();
        let maps = site
            .arrows()
            .iter()
            .enumerate()
            .map(|(f, a)| site.hom(a.cod, c).iter().map(|&g| site.hom_position(site.compose(g, f))).collect())
            .collect();
        Presheaf { site: site.clone(), sizes, maps }
    }

    pub fn same_site(&self, other: &Presheaf) -> bool {
        Arc::ptr_eq(&self.site, &other.site) || self.site == other.site
    }
}

/// A natural transformation; `components[c][x]` is the image of `x ∈ X(c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTrans {
    source: Presheaf,
    target: Presheaf,
    components: Vec<Vec<usize>>,
}

impl NatTrans {
    pub fn new(source: &Presheaf, target: &Presheaf, components: Vec<Vec<usize>>) -> Result<Self, ToposError> {
        let t = NatTrans { source: source.clone(), target: target.clone(), components };
        t.validate()?;
        Ok(t)
    }

    pub(crate) fn new_unchecked(source: &Presheaf, target: &Presheaf, components: Vec<Vec<usize>>) -> Self {
        let t = NatTrans { source: source.clone(), target: target.clone(), components };
        debug_assert!(t.validate().is_ok(), "{:?}", t.validate());
        t
    }

    pub fn validate(&self) -> Result<(), ToposError> {
        let (x, y) = (&self.source, &self.target);
        if !x.same_site(y) {
            return Err(ToposError::SiteMismatch);
        }
        let c = x.site();
        for o in 0..c.object_count() {
            let comp = &self.components[o];
            if comp.len() != x.size(o) || comp.iter().any(|&v| v >= y.size(o)) {
                return Err(ToposError::NotNatural(format!("component at {} is not a function", c.objects()[o])));
            }
        }
        for (f, a) in c.arrows().iter().enumerate() {
            for v in 0..x.size(a.cod) {
                if self.components[a.dom][x.restrict(f, v)] != y.restrict(f, self.components[a.cod][v]) {
                    return Err(ToposError::NotNatural(format!("square for {} does not commute", a.name)));
                }
            }
        }
        Ok(())
    }

    pub fn identity(x: &Presheaf) -> Self {
        let comps = x.sizes().iter().map(|&n| (0..n).collect()).collect();
        NatTrans { source: x.clone(), target: x.clone(), components: comps }
    }

    /// The unique map to the terminal presheaf.
    pub fn to_terminal(x: &Presheaf) -> Self {
        let one = Presheaf::terminal(x.site());
        let comps = x.sizes().iter().map(|&n| vec![0; n]).collect();
        NatTrans { source: x.clone(), target: one, components: comps }
    }

    /// The global element `1 → X` through `x ∈ X(1)`.
    pub fn global_element(x: &Presheaf, element: usize) -> Result<Self, ToposError> {
        let site = x.site();
        let one = Presheaf::terminal(site);
        let comps = (0..site.object_count())
            .map(|c| {
                let bang = site.to_terminal(c).ok_or(ToposError::NoTerminal)?;
                Ok(vec![x.restrict(bang, element)])
            })
            .collect::<Result<Vec<_>, ToposError>>()?;
        Self::new(&one, x, comps)
    }

    pub fn source(&self) -> &Presheaf {
        &self.source
    }

    pub fn target(&self) -> &Presheaf {
        &self.target
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn at(&self, c: usize, x: usize) -> usize {
        self.components[c][x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &NatTrans) -> NatTrans {
        assert_eq!(self.target, other.source, "composing natural transformations with mismatched ends");
        let comps = self
            .components
            .iter()
            .enumerate()
            .map(|(c, comp)| comp.iter().map(|&x| other.components[c][x]).collect())
            .collect();
        NatTrans { source: self.source.clone(), target: other.target.clone(), components: comps }
    }

    pub fn is_mono(&self) -> bool {
        self.components.iter().enumerate().all(|(c, comp)| {
            let mut seen = vec![false; self.target.size(c)];
            comp.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
        })
    }

    pub fn is_epi(&self) -> bool {
        self.components.iter().enumerate().all(|(c, comp)| {
            let mut seen = vec![false; self.target.size(c)];
            comp.iter().for_each(|&v| seen[v] = true);
            seen.into_iter().all(|s| s)
        })
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }
}

#[derive(Clone, Debug)]
pub struct Product {
    pub presheaf: Presheaf,
    pub first: NatTrans,
    pub second: NatTrans,
}

impl Product {
    /// Index of `(x, y)` in `(X × Y)(c)`.
    pub fn pair_index(&self, c: usize, x: usize, y: usize) -> usize {
        x * self.second.target().size(c) + y
    }

    pub fn split(&self, c: usize, p: usize) -> (usize, usize) {
        let n = self.second.target().size(c);
        (p / n, p % n)
    }

    /// `⟨f, g⟩ : Z → X × Y`.
    pub fn pair(&self, f: &NatTrans, g: &NatTrans) -> NatTrans {
        assert_eq!(f.source(), g.source());
        let comps = (0..f.source().site().object_count())
            .map(|c| (0..f.source().size(c)).map(|z| self.pair_index(c, f.at(c, z), g.at(c, z))).collect())
            .collect();
        NatTrans::new_unchecked(f.source(), &self.presheaf, comps)
    }
}

pub fn product(x: &Presheaf, y: &Presheaf) -> Product {
    assert!(x.same_site(y), "product of presheaves on different sites");
    let site = x.site();
    let sizes: Vec<usize> = (0..site.object_count()).map(|c| x.size(c) * y.size(c)).collect();
    let maps = site
        .arrows()
        .iter()
        .enumerate()
        .map(|(f, a)| {
            let ny = y.size(a.dom);
            (0..sizes[a.cod])
                .map(|p| {
                    let (u, v) = (p / y.size(a.cod), p % y.size(a.cod));
                    x.restrict(f, u) * ny + y.restrict(f, v)
                })
                .collect()
        })
        .collect();
    let presheaf = Presheaf::new_unchecked(site, sizes.clone(), maps);
    let first = (0..site.object_count()).map(|c| (0..sizes[c]).map(|p| p / y.size(c)).collect()).collect();
    let second = (0..site.object_count()).map(|c| (0..sizes[c]).map(|p| p % y.size(c)).collect()).collect();
    Product {
        first: NatTrans::new_unchecked(&presheaf, x, first),
        second: NatTrans::new_unchecked(&presheaf, y, second),
        presheaf,
    }
}

#[derive(Clone, Debug)]
pub struct Coproduct {
    pub presheaf: Presheaf,
    pub left: NatTrans,
    pub right: NatTrans,
}

impl Coproduct {
    /// `[f, g] : X + Y → Z`.
    pub fn copair(&self, f: &NatTrans, g: &NatTrans) -> NatTrans {
        assert_eq!(f.target(), g.target());
        let comps = (0..f.source().site().object_count())
            .map(|c| f.components()[c].iter().chain(&g.components()[c]).copied().collect())
            .collect();
        NatTrans::new_unchecked(&self.presheaf, f.target(), comps)
    }
}

pub fn coproduct(x: &Presheaf, y: &Presheaf) -> Coproduct {
    assert!(x.same_site(y), "coproduct of presheaves on different sites");
    let site = x.site();
    let sizes: Vec<usize> = (0..site.object_count()).map(|c| x.size(c) + y.size(c)).collect();
    let maps = site
        .arrows()
        .iter()
        .enumerate()
        .map(|(f, a)| {
            let offset = x.size(a.dom);
            x.map(f).iter().copied().chain(y.map(f).iter().map(|&v| v + offset)).collect()
        })
        .collect();
    let presheaf = Presheaf::new_unchecked(site, sizes, maps);
    let left = (0..site.object_count()).map(|c| (0..x.size(c)).collect()).collect();
    let right = (0..site.object_count()).map(|c| (0..y.size(c)).map(|v| v + x.size(c)).collect()).collect();
    Coproduct {
        left: NatTrans::new_unchecked(x, &presheaf, left),
        right: NatTrans::new_unchecked(y, &presheaf, right),
        presheaf,
    }
}

/// A sub-presheaf with its inclusion; `members[c]` lists the included elements, ascending.
#[derive(Clone, Debug)]
pub struct Subpresheaf {
    pub presheaf: Presheaf,
    pub inclusion: NatTrans,
}

impl Subpresheaf {
    /// Fails unless the chosen elements are stable under restriction.
    pub fn new(x: &Presheaf, keep: impl Fn(usize, usize) -> bool) -> Result<Self, ToposError> {
        let site = x.site();
        let members: Vec<Vec<usize>> =
            (0..site.object_count()).map(|c| (0..x.size(c)).filter(|&v| keep(c, v)).collect()).collect();
        let mut position: Vec<Vec<Option<usize>>> = x.sizes().iter().map(|&n| vec![None; n]).collect();
        for (c, m) in members.iter().enumerate() {
            for (i, &v) in m.iter().enumerate() {
                position[c][v] = Some(i);
            }
        }
        let mut maps = Vec::with_capacity(site.arrow_count());
        for (f, a) in site.arrows().iter().enumerate() {
            let mut m = Vec::with_capacity(members[a.cod].len());
            for &v in &members[a.cod] {
                match position[a.dom][x.restrict(f, v)] {
                    Some(i) => m.push(i),
                    None => {
                        return Err(ToposError::NotSubpresheaf(format!(
                            "restriction along {} leaves the subset",
                            a.name
                        )))
                    }
                }
            }
            maps.push(m);
        }
        let presheaf = Presheaf::new_unchecked(site, members.iter().map(Vec::len).collect(), maps);
        let inclusion = NatTrans::new_unchecked(&presheaf, x, members);
        Ok(Subpresheaf { presheaf, inclusion })
    }

    pub fn contains(&self, c: usize, x: usize) -> bool {
        self.inclusion.components()[c].binary_search(&x).is_ok()
    }

    pub fn members(&self, c: usize) -> &[usize] {
        &self.inclusion.components()[c]
    }

    /// The index of `x` in the sub-presheaf, if present.
    pub fn position(&self, c: usize, x: usize) -> Option<usize> {
        self.inclusion.components()[c].binary_search(&x).ok()
    }

    pub fn same_subobject(&self, other: &Subpresheaf) -> bool {
        self.inclusion.target() == other.inclusion.target() && self.inclusion.components() == other.inclusion.components()
    }
}

/// Pullback of `f : X → Z ← Y : g`, as a sub-presheaf of `X × Y`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub presheaf: Presheaf,
    pub first: NatTrans,
    pub second: NatTrans,
    pub inclusion: NatTrans,
}

pub fn pullback(f: &NatTrans, g: &NatTrans) -> Pullback {
    assert_eq!(f.target(), g.target(), "pullback of maps with different codomains");
    let prod = product(f.source(), g.source());
    let sub = Subpresheaf::new(&prod.presheaf, |c, p| {
        let (x, y) = prod.split(c, p);
        f.at(c, x) == g.at(c, y)
    })
    .expect("equalizing subsets are sub-presheaves");
    Pullback {
        first: sub.inclusion.then(&prod.first),
        second: sub.inclusion.then(&prod.second),
        presheaf: sub.presheaf,
        inclusion: sub.inclusion,
    }
}

pub fn equalizer(f: &NatTrans, g: &NatTrans) -> Subpresheaf {
    assert_eq!(f.source(), g.source());
    assert_eq!(f.target(), g.target());
    Subpresheaf::new(f.source(), |c, x| f.at(c, x) == g.at(c, x)).expect("equalizers are sub-presheaves")
}

/// Coequalizer of `f, g : X → Y`, computed pointwise by union-find.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub presheaf: Presheaf,
    pub projection: NatTrans,
}

pub fn coequalizer(f: &NatTrans, g: &NatTrans) -> Quotient {
    assert_eq!(f.source(), g.source());
    assert_eq!(f.target(), g.target());
    let mut pairs = Vec::new();
    for c in 0..f.source().site().object_count() {
        for x in 0..f.source().size(c) {
            pairs.push((c, f.at(c, x), g.at(c, x)));
        }
    }
    quotient_by(f.target(), &pairs)
}

/// The smallest congruence identifying the given pairs `(c, y, y')`.
pub fn quotient_by(y: &Presheaf, pairs: &[(usize, usize, usize)]) -> Quotient {
    let site = y.site();
    let mut parent: Vec<Vec<usize>> = y.sizes().iter().map(|&n| (0..n).collect()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut x = x;
        while p[x] != r {
            let next = p[x];
            p[x] = r;
            x = next;
        }
        r
    }
    let mut pending: Vec<(usize, usize, usize)> = pairs.to_vec();
    while let Some((c, a, b)) = pending.pop() {
        let (ra, rb) = (find(&mut parent[c], a), find(&mut parent[c], b));
        if ra == rb {
            continue;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        parent[c][hi] = lo;
        // restriction must respect the identification
        for &f in site.arrows().iter().enumerate().filter(|(_, ar)| ar.cod == c).map(|(f, _)| f).collect::<Vec<_>>().iter() {
            let d = site.arrow(f).dom;
            pending.push((d, y.restrict(f, a), y.restrict(f, b)));
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::with_capacity(site.object_count());
    let mut sizes = Vec::with_capacity(site.object_count());
    for (c, parent) in parent.iter_mut().enumerate() {
        let mut label = vec![usize::MAX; y.size(c)];
        let mut next = 0;
        let mut proj = Vec::with_capacity(y.size(c));
        for v in 0..y.size(c) {
            let r = find(parent, v);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            proj.push(label[r]);
        }
        classes.push(proj);
        sizes.push(next);
    }
    let maps = site
        .arrows()
        .iter()
        .enumerate()
        .map(|(f, a)| {
            let mut m = vec![0; sizes[a.cod]];
            for v in 0..y.size(a.cod) {
                m[classes[a.cod][v]] = classes[a.dom][y.restrict(f, v)];
            }
            m
        })
        .collect();
    let presheaf = Presheaf::new_unchecked(site, sizes, maps);
    let projection = NatTrans::new_unchecked(y, &presheaf, classes);
    Quotient { presheaf, projection }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn retract() -> Arc<FinCat> {
        Arc::new(FinCat::retract())
    }

    #[test]
    fn representables_are_functorial() {
        for name in FinCat::CATALOG {
            let site = Arc::new(FinCat::catalog(name).unwrap());
            for c in 0..site.object_count() {
                Presheaf::representable(&site, c).validate().unwrap();
            }
        }
    }

    #[test]
    fn non_functorial_data_is_rejected() {
        let site = retract();
        // X(s) X(p) must be the identity on X(1)
        let bad = Presheaf::from_named(&site, vec![2, 2], &[("s", vec![0, 0]), ("p", vec![0, 1]), ("e", vec![0, 1])]);
        assert!(matches!(bad, Err(ToposError::NotFunctorial(_))));
    }

    #[test]
    fn product_with_terminal_is_the_same_presheaf() {
        let site = retract();
        let y = Presheaf::representable(&site, 1);
        let p = product(&y, &Presheaf::terminal(&site));
        assert_eq!(p.presheaf, y);
        assert!(p.first.is_iso());
    }

    #[test]
    fn pullback_of_two_monos_is_the_intersection() {
        let site = Arc::new(FinCat::point());
        let x = Presheaf::constant(&site, 5);
        let a = Subpresheaf::new(&x, |_, v| v < 3).unwrap();
        let b = Subpresheaf::new(&x, |_, v| v >= 2).unwrap();
        let pb = pullback(&a.inclusion, &b.inclusion);
        assert_eq!(pb.presheaf.sizes(), &[1]);
        assert_eq!(pb.first.then(&a.inclusion).components(), &[vec![2]]);
    }

    #[test]
    fn coequalizer_glues_restrictions() {
        let site = retract();
        let y = Presheaf::representable(&site, 1);
        let two = coproduct(&y, &y);
        // identify the two global points; the generic elements stay apart
        let q = quotient_by(&two.presheaf, &[(0, 0, 1)]);
        assert_eq!(q.presheaf.sizes(), &[1, 3]);
    }
}
