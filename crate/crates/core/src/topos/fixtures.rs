//! Hand-built models on the catalog sites. These are finite surrogates: they
//! exercise the definitions, not any analytic model.

use std::sync::Arc;

use super::euler::PointedPresheaf;
use super::monoid::InternalMonoid;
use super::presheaf::{coproduct, product, NatTrans, Presheaf};
use super::site::FinCat;
use super::ToposError;

/// On the retract site, `y(c)` is a group object: `Z/2` at `c` with unit `e`,
/// trivial at `1`. The carrier `y(c) + y(c)` carries the product group with
/// the constant `Z/2`, so its units have exactly two components.
pub fn two_component_group() -> Result<InternalMonoid, ToposError> {
    let site = Arc::new(FinCat::retract());
    let c = site.object_index("c").expect("retract site has c");
    let e = site.arrow_index("e").expect("retract site has e");
    let unit_pos = site.hom_position(e);
    let yc = Presheaf::representable(&site, c);
    let carrier = coproduct(&yc, &yc).presheaf;
    let square = product(&carrier, &carrier);
    let k = site.object_count();
    // Z/2 on y(c)(d), with unit `e` at c
    let local = |d: usize, x: usize, y: usize| -> usize {
        if yc.size(d) == 1 {
            0
        } else if x == y {
            unit_pos
        } else {
            1 - unit_pos
        }
    };
    let mult = (0..k)
        .map(|d| {
            let n = yc.size(d);
            (0..square.presheaf.size(d))
                .map(|p| {
                    let (a, b) = square.split(d, p);
                    let (i, x) = (a / n, a % n);
                    let (j, y) = (b / n, b % n);
                    ((i ^ j) * n) + local(d, x, y)
                })
                .collect()
        })
        .collect();
    let mult = NatTrans::new(&square.presheaf, &carrier, mult)?;
    let unit = (0..k).map(|d| vec![if yc.size(d) == 1 { 0 } else { unit_pos }]).collect();
    let unit = NatTrans::new(&Presheaf::terminal(&site), &carrier, unit)?;
    InternalMonoid::new(&carrier, mult, unit, None, None)
}

/// The constant monoid on `({0, 1}, ·)` with absorbing `0`.
pub fn boolean_monoid(site: &Arc<FinCat>) -> Result<InternalMonoid, ToposError> {
    InternalMonoid::constant(site, &[vec![0, 0], vec![0, 1]], 1, Some(0))
}

/// The walking edge `y(E)` on reflexive graphs, pointed at its source.
pub fn interval() -> Result<PointedPresheaf, ToposError> {
    let site = Arc::new(FinCat::reflexive_graph());
    let e = site.object_index("E").expect("reflexive graphs have E");
    let s = site.arrow_index("s").expect("reflexive graphs have s");
    PointedPresheaf::new(&Presheaf::representable(&site, e), site.hom_position(s))
}

/// `y(c)` on the retract site, pointed at `s`.
pub fn retract_line() -> Result<PointedPresheaf, ToposError> {
    let site = Arc::new(FinCat::retract());
    let c = site.object_index("c").expect("retract site has c");
    let s = site.arrow_index("s").expect("retract site has s");
    PointedPresheaf::new(&Presheaf::representable(&site, c), site.hom_position(s))
}
