//! Enumeration of natural transformations by propagating naturality.

use super::presheaf::{NatTrans, Presheaf};
use super::ToposError;

/// Receives each complete partial assignment; returns whether to continue.
type Visitor<'a> = dyn FnMut(&[Vec<Option<usize>>]) -> bool + 'a;

/// Counts search nodes and refuses to exceed the configured bound.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn spend(&mut self, n: u64) -> Result<(), ToposError> {
        self.used = self.used.saturating_add(n);
        if self.used > self.limit {
            Err(ToposError::SizeLimit { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

struct Search<'a> {
    x: &'a Presheaf,
    y: &'a Presheaf,
    /// `(object, element)` pairs in branching order.
    order: Vec<(usize, usize)>,
    /// For each object, the arrows into it.
    incoming: Vec<Vec<usize>>,
    assigned: Vec<Vec<Option<usize>>>,
    trail: Vec<(usize, usize)>,
}

impl<'a> Search<'a> {
    fn new(x: &'a Presheaf, y: &'a Presheaf) -> Self {
        let site = x.site();
        let k = site.object_count();
        let incoming: Vec<Vec<usize>> =
            (0..k).map(|c| (0..site.arrow_count()).filter(|&f| site.arrow(f).cod == c).collect()).collect();
        // objects receiving many arrows determine the most by restriction
        let mut objects: Vec<usize> = (0..k).collect();
        objects.sort_by_key(|&c| std::cmp::Reverse(incoming[c].len()));
        let order = objects.iter().flat_map(|&c| (0..x.size(c)).map(move |v| (c, v))).collect();
        Search { x, y, order, incoming, assigned: x.sizes().iter().map(|&n| vec![None; n]).collect(), trail: Vec::new() }
    }

    /// Assigns `α_c(v) = w` and everything it forces; false on conflict.
    fn assign(&mut self, c: usize, v: usize, w: usize) -> bool {
        let site = self.x.site().clone();
        for i in 0..self.incoming[c].len() {
            let f = self.incoming[c][i];
            let d = site.arrow(f).dom;
            let (xv, yw) = (self.x.restrict(f, v), self.y.restrict(f, w));
            match self.assigned[d][xv] {
                Some(old) if old != yw => return false,
                Some(_) => {}
                None => {
                    self.assigned[d][xv] = Some(yw);
                    self.trail.push((d, xv));
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (c, v) = self.trail.pop().unwrap();
            self.assigned[c][v] = None;
        }
    }

    fn run(&mut self, i: usize, budget: &mut Budget, visit: &mut Visitor<'_>) -> Result<bool, ToposError> {
        budget.spend(1)?;
        if i == self.order.len() {
            return Ok(visit(&self.assigned));
        }
        let (c, v) = self.order[i];
        if self.assigned[c][v].is_some() {
            return self.run(i + 1, budget, visit);
        }
        for w in 0..self.y.size(c) {
            let mark = self.trail.len();
            if self.assign(c, v, w) && !self.run(i + 1, budget, visit)? {
                self.undo(mark);
                return Ok(false);
            }
            self.undo(mark);
        }
        Ok(true)
    }
}

/// Visits every natural transformation `X → Y`; the visitor returns false to stop.
pub fn for_each_hom(
    x: &Presheaf,
    y: &Presheaf,
    budget: &mut Budget,
    mut visit: impl FnMut(&[Vec<usize>]) -> bool,
) -> Result<(), ToposError> {
    if !x.same_site(y) {
        return Err(ToposError::SiteMismatch);
    }
    let mut search = Search::new(x, y);
    let mut adapter = |a: &[Vec<Option<usize>>]| {
        let comps: Vec<Vec<usize>> = a.iter().map(|row| row.iter().map(|v| v.unwrap()).collect()).collect();
        visit(&comps)
    };
    search.run(0, budget, &mut adapter)?;
    Ok(())
}

pub fn homs(x: &Presheaf, y: &Presheaf, budget: &mut Budget) -> Result<Vec<NatTrans>, ToposError> {
    let mut out = Vec::new();
    for_each_hom(x, y, budget, |c| {
        out.push(NatTrans::new_unchecked(x, y, c.to_vec()));
        true
    })?;
    Ok(out)
}

pub fn count_homs(x: &Presheaf, y: &Presheaf, budget: &mut Budget) -> Result<u64, ToposError> {
    let mut n = 0u64;
    for_each_hom(x, y, budget, |_| {
        n += 1;
        true
    })?;
    Ok(n)
}

/// An isomorphism `X → Y`, if one exists.
pub fn find_iso(x: &Presheaf, y: &Presheaf, budget: &mut Budget) -> Result<Option<NatTrans>, ToposError> {
    if x.sizes() != y.sizes() {
        return Ok(None);
    }
    let mut found = None;
    for_each_hom(x, y, budget, |c| {
        let t = NatTrans::new_unchecked(x, y, c.to_vec());
        if t.is_iso() {
            found = Some(t);
            false
        } else {
            true
        }
    })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::topos::FinCat;

    #[test]
    fn yoneda_counts() {
        // |Hom(y(c), X)| = |X(c)|
        let site = Arc::new(FinCat::reflexive_graph());
        let x = Presheaf::from_named(
            &site,
            vec![2, 3],
            &[("s", vec![0, 1, 0]), ("t", vec![0, 1, 1]), ("r", vec![0, 1]), ("sr", vec![0, 1, 0]), ("tr", vec![0, 1, 1])],
        )
        .unwrap();
        for c in 0..2 {
            let y = Presheaf::representable(&site, c);
            assert_eq!(count_homs(&y, &x, &mut Budget::new(1_000)).unwrap(), x.size(c) as u64);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let site = Arc::new(FinCat::point());
        let x = Presheaf::constant(&site, 4);
        let y = Presheaf::constant(&site, 4);
        let err = count_homs(&x, &y, &mut Budget::new(10)).unwrap_err();
        assert_eq!(err, ToposError::SizeLimit { limit: 10 });
        assert_eq!(count_homs(&x, &y, &mut Budget::new(1_000)).unwrap(), 256);
    }
}
