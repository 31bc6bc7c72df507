//! Internal monoids and rigs, checked stage by stage.

use std::sync::Arc;

use super::presheaf::{product, NatTrans, Presheaf, Product};
use super::site::FinCat;
use super::ToposError;
use crate::rig::FiniteRig;

/// A monoid in presheaves. `zero` makes it a monoid with absorbing zero; `add`
/// together with `zero` makes it a rig.
#[derive(Clone, Debug)]
pub struct InternalMonoid {
    pub carrier: Presheaf,
    pub square: Product,
    pub mult: NatTrans,
    pub unit: NatTrans,
    pub zero: Option<NatTrans>,
    pub add: Option<NatTrans>,
}

impl InternalMonoid {
    /// Validates the monoid laws, and the rig laws when `add` is present.
    pub fn new(
        carrier: &Presheaf,
        mult: NatTrans,
        unit: NatTrans,
        zero: Option<NatTrans>,
        add: Option<NatTrans>,
    ) -> Result<Self, ToposError> {
        let square = product(carrier, carrier);
        let ends_ok = mult.source() == &square.presheaf
            && mult.target() == carrier
            && unit.target() == carrier
            && unit.source().sizes().iter().all(|&n| n == 1)
            && zero.iter().all(|z| z.target() == carrier)
            && add.iter().all(|a| a.source() == &square.presheaf && a.target() == carrier);
        if !ends_ok {
            return Err(ToposError::NotMonoid("operations have the wrong shape".into()));
        }
        if add.is_some() && zero.is_none() {
            return Err(ToposError::NotMonoid("addition without a zero".into()));
        }
        let m = InternalMonoid { carrier: carrier.clone(), square, mult, unit, zero, add };
        m.verify()?;
        Ok(m)
    }

    pub fn site(&self) -> &Arc<FinCat> {
        self.carrier.site()
    }

    pub fn mul_at(&self, c: usize, x: usize, y: usize) -> usize {
        self.mult.at(c, self.square.pair_index(c, x, y))
    }

    pub fn add_at(&self, c: usize, x: usize, y: usize) -> Option<usize> {
        self.add.as_ref().map(|a| a.at(c, self.square.pair_index(c, x, y)))
    }

    pub fn one_at(&self, c: usize) -> usize {
        self.unit.at(c, 0)
    }

    pub fn zero_at(&self, c: usize) -> Option<usize> {
        self.zero.as_ref().map(|z| z.at(c, 0))
    }

    pub fn is_rig(&self) -> bool {
        self.add.is_some()
    }

    fn verify(&self) -> Result<(), ToposError> {
        let site = self.site().clone();
        let fail = |c: usize, law: &str| Err(ToposError::NotMonoid(format!("{law} fails at {}", site.objects()[c])));
        for c in 0..site.object_count() {
            let n = self.carrier.size(c);
            let e = self.one_at(c);
            for x in 0..n {
                if self.mul_at(c, e, x) != x || self.mul_at(c, x, e) != x {
                    return fail(c, "unit law");
                }
                for y in 0..n {
                    for z in 0..n {
                        if self.mul_at(c, self.mul_at(c, x, y), z) != self.mul_at(c, x, self.mul_at(c, y, z)) {
                            return fail(c, "associativity");
                        }
                    }
                }
            }
            if let Some(o) = self.zero_at(c) {
                if (0..n).any(|x| self.mul_at(c, o, x) != o || self.mul_at(c, x, o) != o) {
                    return fail(c, "zero absorption");
                }
            }
            if self.add.is_some() {
                let o = self.zero_at(c).unwrap();
                let add = |x, y| self.add_at(c, x, y).unwrap();
                for x in 0..n {
                    if add(o, x) != x {
                        return fail(c, "additive unit");
                    }
                    for y in 0..n {
                        if add(x, y) != add(y, x) {
                            return fail(c, "additive commutativity");
                        }
                        for z in 0..n {
                            if add(add(x, y), z) != add(x, add(y, z)) {
                                return fail(c, "additive associativity");
                            }
                            if self.mul_at(c, x, add(y, z)) != add(self.mul_at(c, x, y), self.mul_at(c, x, z))
                                || self.mul_at(c, add(y, z), x) != add(self.mul_at(c, y, x), self.mul_at(c, z, x))
                            {
                                return fail(c, "distributivity");
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.site().object_count()).all(|c| {
            let n = self.carrier.size(c);
            (0..n).all(|x| (0..n).all(|y| self.mul_at(c, x, y) == self.mul_at(c, y, x)))
        })
    }

    /// `p*` of a finite monoid given by its table, unit `one`.
    pub fn constant(site: &Arc<FinCat>, table: &[Vec<usize>], one: usize, zero: Option<usize>) -> Result<Self, ToposError> {
        let n = table.len();
        let carrier = Presheaf::constant(site, n);
        let square = product(&carrier, &carrier);
        let k = site.object_count();
        let flat: Vec<usize> = (0..n * n).map(|p| table[p / n][p % n]).collect();
        let mult = NatTrans::new(&square.presheaf, &carrier, vec![flat; k])?;
        let point = |v: usize| NatTrans::new(&Presheaf::terminal(site), &carrier, vec![vec![v]; k]);
        let zero = zero.map(point).transpose()?;
        Self::new(&carrier, mult, point(one)?, zero, None)
    }

    /// `p*` of a finite rig.
    pub fn constant_rig(site: &Arc<FinCat>, rig: &FiniteRig) -> Result<Self, ToposError> {
        let n = rig.size();
        let carrier = Presheaf::constant(site, n);
        let square = product(&carrier, &carrier);
        let k = site.object_count();
        let mul: Vec<usize> = (0..n * n).map(|p| rig.mul(p / n, p % n)).collect();
        let add: Vec<usize> = (0..n * n).map(|p| rig.add(p / n, p % n)).collect();
        let point = |v: usize| NatTrans::new(&Presheaf::terminal(site), &carrier, vec![vec![v]; k]);
        Self::new(
            &carrier,
            NatTrans::new(&square.presheaf, &carrier, vec![mul; k])?,
            point(rig.one())?,
            Some(point(rig.zero())?),
            Some(NatTrans::new(&square.presheaf, &carrier, vec![add; k])?),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_monoid_laws() {
        let site = Arc::new(FinCat::retract());
        // multiplicative {0, 1}
        let m = InternalMonoid::constant(&site, &[vec![0, 0], vec![0, 1]], 1, Some(0)).unwrap();
        assert!(m.is_commutative());
        // a left-zero table is not unital
        let bad = InternalMonoid::constant(&site, &[vec![0, 0], vec![1, 1]], 1, None);
        assert!(matches!(bad, Err(ToposError::NotMonoid(_))));
    }

    #[test]
    fn constant_rig_from_catalog() {
        let site = Arc::new(FinCat::point());
        let k = InternalMonoid::constant_rig(&site, &FiniteRig::catalog("Z4").unwrap()).unwrap();
        assert!(k.is_rig());
        assert_eq!(k.add_at(0, 3, 2), Some(1));
    }
}
