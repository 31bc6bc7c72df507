//! Units `U` of an internal monoid, the identity component `U₊`, and
//! bi-directionality (`π₀ U` has exactly two elements).

use super::cohesion::{AdjointString, Components};
use super::monoid::InternalMonoid;
use super::presheaf::{product, pullback, NatTrans, Presheaf, Pullback, Subpresheaf};
use super::ToposError;

#[derive(Clone, Debug)]
pub struct UnitsReport {
    pub units: Subpresheaf,
    /// `inverse[c][i]`: position in `U(c)` of the inverse of the `i`-th unit.
    pub inverse: Vec<Vec<usize>>,
    pub restriction_preserves_inverses: bool,
    pub components: Components,
    /// The component of `1`, i.e. `π₀ 1 : 1 → π₀ U`.
    pub identity_component: usize,
    /// Multiplication induced on `π₀ U` through `π₀(U × U) ≅ π₀ U × π₀ U`.
    pub pi0_table: Option<Vec<Vec<usize>>>,
    pub pi0_is_group: bool,
    /// `U₊`, the pullback of `π₀ 1` along `σ_U : U → p* π₀ U`.
    pub positive: Pullback,
}

impl UnitsReport {
    pub fn pi0_size(&self) -> usize {
        self.components.count
    }

    pub fn bidirectional(&self) -> bool {
        self.components.count == 2
    }

    /// `U₊` as a sub-presheaf of `U`.
    pub fn positive_members(&self, c: usize) -> &[usize] {
        &self.positive.first.components()[c]
    }
}

pub fn units_and_bidirectional(m: &InternalMonoid, string: &AdjointString) -> Result<UnitsReport, ToposError> {
    let site = m.site().clone();
    let k = site.object_count();
    let inverse_in_m = |c: usize, x: usize| -> Option<usize> {
        let e = m.one_at(c);
        (0..m.carrier.size(c)).find(|&y| m.mul_at(c, x, y) == e && m.mul_at(c, y, x) == e)
    };
    let units = Subpresheaf::new(&m.carrier, |c, x| inverse_in_m(c, x).is_some())?;
    let inverse: Vec<Vec<usize>> = (0..k)
        .map(|c| {
            units
                .members(c)
                .iter()
                .map(|&x| units.position(c, inverse_in_m(c, x).unwrap()).expect("inverses of units are units"))
                .collect()
        })
        .collect();
    let u = &units.presheaf;
    let restriction_preserves_inverses = site.arrows().iter().enumerate().all(|(f, a)| {
        (0..u.size(a.cod)).all(|i| u.restrict(f, inverse[a.cod][i]) == inverse[a.dom][u.restrict(f, i)])
    });

    let components = string.pi0(u);
    let n = components.count;
    let one = units.position(string.terminal_object(), m.one_at(string.terminal_object())).expect("1 is a unit");
    let identity_component = components.of[string.terminal_object()][one];

    // multiplication of U, pushed through π₀
    let square = product(u, u);
    let mult = (0..k)
        .map(|c| {
            (0..square.presheaf.size(c))
                .map(|p| {
                    let (i, j) = square.split(c, p);
                    let xy = m.mul_at(c, units.members(c)[i], units.members(c)[j]);
                    units.position(c, xy).expect("units are closed under products")
                })
                .collect()
        })
        .collect();
    let mult = NatTrans::new(&square.presheaf, u, mult)?;
    let pi0_table = if string.preserves_product(u, u) {
        let (a, b, ab) = (string.pi0_map(&square.first), string.pi0_map(&square.second), string.pi0_map(&mult));
        let mut table = vec![vec![usize::MAX; n]; n];
        let mut ok = true;
        for q in 0..a.len() {
            let slot = &mut table[a[q]][b[q]];
            ok &= *slot == usize::MAX || *slot == ab[q];
            *slot = ab[q];
        }
        ok.then_some(table)
    } else {
        None
    };
    let pi0_is_group = pi0_table.as_ref().is_some_and(|t| is_group(t, identity_component));

    let sigma = string.sigma(u);
    let point = NatTrans::global_element(&string.discrete(n), identity_component)?;
    let positive = pullback(&sigma, &point);
    Ok(UnitsReport {
        units,
        inverse,
        restriction_preserves_inverses,
        components,
        identity_component,
        pi0_table,
        pi0_is_group,
        positive,
    })
}

fn is_group(table: &[Vec<usize>], e: usize) -> bool {
    let n = table.len();
    let idx = 0..n;
    idx.clone().all(|x| table[e][x] == x && table[x][e] == x)
        && idx.clone().all(|x| idx.clone().any(|y| table[x][y] == e && table[y][x] == e))
        && idx.clone().all(|x| idx.clone().all(|y| idx.clone().all(|z| table[table[x][y]][z] == table[x][table[y][z]])))
}

/// `U₊` realized as the identity component inside `U`, for comparison with the pullback.
pub fn identity_component(report: &UnitsReport) -> Result<Subpresheaf, ToposError> {
    let u: &Presheaf = &report.units.presheaf;
    Subpresheaf::new(u, |c, i| report.components.of[c][i] == report.identity_component)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::topos::fixtures::{boolean_monoid, two_component_group};
    use crate::topos::hom::{find_iso, Budget};
    use crate::topos::FinCat;

    #[test]
    fn surrogate_group_is_bidirectional() {
        let g = two_component_group().unwrap();
        let string = AdjointString::new(g.site()).unwrap();
        let report = units_and_bidirectional(&g, &string).unwrap();
        assert_eq!(report.units.presheaf.sizes(), g.carrier.sizes());
        assert!(report.restriction_preserves_inverses);
        assert_eq!(report.pi0_size(), 2);
        assert!(report.bidirectional() && report.pi0_is_group);
        // U₊ is the identity copy of y(c)
        let c = g.site().object_index("c").unwrap();
        let yc = Presheaf::representable(g.site(), c);
        assert!(find_iso(&report.positive.presheaf, &yc, &mut Budget::new(10_000)).unwrap().is_some());
        let sub = identity_component(&report).unwrap();
        for c in 0..g.site().object_count() {
            assert_eq!(sub.members(c), report.positive_members(c));
        }
    }

    #[test]
    fn boolean_monoid_has_trivial_units() {
        let site = Arc::new(FinCat::retract());
        let m = boolean_monoid(&site).unwrap();
        let report = units_and_bidirectional(&m, &AdjointString::new(&site).unwrap()).unwrap();
        assert_eq!(report.units.presheaf.sizes(), &[1, 1]);
        assert_eq!(report.units.members(0), &[1]);
        assert_eq!(report.pi0_size(), 1);
        assert!(!report.bidirectional());
        assert!(report.pi0_is_group);
    }

    #[test]
    fn trivial_group_components() {
        // units of a constant group are the whole carrier, one component per element
        let site = Arc::new(FinCat::reflexive_graph());
        let z2 = InternalMonoid::constant(&site, &[vec![0, 1], vec![1, 0]], 0, None).unwrap();
        let report = units_and_bidirectional(&z2, &AdjointString::new(&site).unwrap()).unwrap();
        assert_eq!(report.pi0_size(), 2);
        assert!(report.bidirectional());
    }
}
