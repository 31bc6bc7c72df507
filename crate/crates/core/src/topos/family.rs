//! Generated populations of small presheaves.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::Rng;

use super::cohesion::components;
use super::hom::{find_iso, Budget};
use super::presheaf::{coproduct, quotient_by, Presheaf};
use super::site::FinCat;
use super::ToposError;

/// Arrows generating the site under composition, with a factorization of every
/// non-identity arrow as `g_1 ∘ … ∘ g_k` over them.
struct Generators {
    gens: Vec<usize>,
    factor: Vec<Option<Vec<usize>>>,
}

fn generators(site: &FinCat) -> Generators {
    let n = site.arrow_count();
    let mut gens = Vec::new();
    let mut factor: Vec<Option<Vec<usize>>> = vec![None; n];
    for (f, slot) in factor.iter_mut().enumerate() {
        if site.is_identity(f) {
            *slot = Some(Vec::new());
        }
    }
    for f in 0..n {
        if factor[f].is_some() {
            continue;
        }
        gens.push(f);
        factor[f] = Some(vec![f]);
        // close under composition with everything reached so far
        loop {
            let mut grew = false;
            for g in 0..n {
                for h in 0..n {
                    if site.arrow(h).cod != site.arrow(g).dom {
                        continue;
                    }
                    let (Some(fg), Some(fh)) = (&factor[g], &factor[h]) else { continue };
                    let gh = site.compose(g, h);
                    if factor[gh].is_none() {
                        factor[gh] = Some([fg.clone(), fh.clone()].concat());
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
    }
    Generators { gens, factor }
}

fn all_functions(from: usize, to: usize) -> Vec<Vec<usize>> {
    if from == 0 {
        return vec![Vec::new()];
    }
    if to == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut f = vec![0; from];
    loop {
        out.push(f.clone());
        let mut i = 0;
        while i < from {
            f[i] += 1;
            if f[i] < to {
                break;
            }
            f[i] = 0;
            i += 1;
        }
        if i == from {
            return out;
        }
    }
}

/// Every presheaf with at most `max` elements at each object, on the nose,
/// ordered by size vector.
pub fn enumerate_presheaves(site: &Arc<FinCat>, max: usize, budget: &mut Budget) -> Result<Vec<Presheaf>, ToposError> {
    let gens = generators(site);
    let k = site.object_count();
    let mut size_vectors: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..k {
        size_vectors = size_vectors
            .into_iter()
            .flat_map(|v| (0..=max).map(move |s| [v.clone(), vec![s]].concat()))
            .collect();
    }
    size_vectors.sort_by_key(|v| (v.iter().sum::<usize>(), v.clone()));
    let mut out = Vec::new();
    for sizes in size_vectors {
        let mut chosen: Vec<Option<Vec<usize>>> = vec![None; site.arrow_count()];
        extend(site, &gens, &sizes, 0, &mut chosen, budget, &mut out)?;
    }
    Ok(out)
}

/// Maps of all arrows whose factorization uses only chosen generators.
fn derived(site: &FinCat, gens: &Generators, sizes: &[usize], chosen: &[Option<Vec<usize>>]) -> Vec<Option<Vec<usize>>> {
    (0..site.arrow_count())
        .map(|f| {
            let fac = gens.factor[f].as_ref()?;
            let a = site.arrow(f);
            // X(g_1 ∘ … ∘ g_k) = X(g_k) ∘ … ∘ X(g_1)
            let mut m: Vec<usize> = (0..sizes[a.cod]).collect();
            for g in fac {
                let gm = chosen[*g].as_ref()?;
                for v in m.iter_mut() {
                    *v = gm[*v];
                }
            }
            Some(m)
        })
        .collect()
}

fn consistent(site: &FinCat, maps: &[Option<Vec<usize>>]) -> bool {
    for g in 0..site.arrow_count() {
        let Some(mg) = &maps[g] else { continue };
        for f in 0..site.arrow_count() {
            if site.arrow(f).cod != site.arrow(g).dom {
                continue;
            }
            let (Some(mf), Some(mgf)) = (&maps[f], &maps[site.compose(g, f)]) else { continue };
            if mg.iter().zip(mgf).any(|(&x, &y)| mf[x] != y) {
                return false;
            }
        }
    }
    true
}

fn extend(
    site: &Arc<FinCat>,
    gens: &Generators,
    sizes: &[usize],
    i: usize,
    chosen: &mut Vec<Option<Vec<usize>>>,
    budget: &mut Budget,
    out: &mut Vec<Presheaf>,
) -> Result<(), ToposError> {
    budget.spend(1)?;
    let maps = derived(site, gens, sizes, chosen);
    if !consistent(site, &maps) {
        return Ok(());
    }
    if i == gens.gens.len() {
        let maps: Vec<Vec<usize>> = maps.into_iter().map(|m| m.expect("generators reach every arrow")).collect();
        if let Ok(x) = Presheaf::new(site, sizes.to_vec(), maps) {
            out.push(x);
        }
        return Ok(());
    }
    let g = gens.gens[i];
    let a = site.arrow(g);
    for m in all_functions(sizes[a.cod], sizes[a.dom]) {
        chosen[g] = Some(m);
        extend(site, gens, sizes, i + 1, chosen, budget, out)?;
    }
    chosen[g] = None;
    Ok(())
}

/// Cheap isomorphism invariant.
fn signature(x: &Presheaf) -> Vec<usize> {
    let mut sig = x.sizes().to_vec();
    sig.push(components(x).count);
    for m in x.maps() {
        let image: BTreeSet<usize> = m.iter().copied().collect();
        sig.push(image.len());
        let mut fibres: BTreeMap<usize, usize> = BTreeMap::new();
        for &v in m {
            *fibres.entry(v).or_default() += 1;
        }
        let mut f: Vec<usize> = fibres.into_values().collect();
        f.sort_unstable();
        sig.extend(f);
        sig.push(usize::MAX);
    }
    sig
}

/// One representative per isomorphism class, in input order.
pub fn isomorphism_classes(population: &[Presheaf], budget: &mut Budget) -> Result<Vec<Presheaf>, ToposError> {
    let mut buckets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut reps: Vec<Presheaf> = Vec::new();
    for x in population {
        let bucket = buckets.entry(signature(x)).or_default();
        let mut known = false;
        for &r in bucket.iter() {
            if find_iso(&reps[r], x, budget)?.is_some() {
                known = true;
                break;
            }
        }
        if !known {
            bucket.push(reps.len());
            reps.push(x.clone());
        }
    }
    Ok(reps)
}

/// A quotient of a sum of up to `max_generators` representables by up to
/// `max_identifications` random identifications.
pub fn random_presheaf(site: &Arc<FinCat>, rng: &mut impl Rng, max_generators: usize, max_identifications: usize) -> Presheaf {
    let k = site.object_count();
    let mut x = Presheaf::initial(site);
    for _ in 0..rng.gen_range(1..=max_generators.max(1)) {
        let c = rng.gen_range(0..k);
        x = coproduct(&x, &Presheaf::representable(site, c)).presheaf;
    }
    let mut pairs = Vec::new();
    for _ in 0..rng.gen_range(0..=max_identifications) {
        let c = rng.gen_range(0..k);
        if x.size(c) > 1 {
            pairs.push((c, rng.gen_range(0..x.size(c)), rng.gen_range(0..x.size(c))));
        }
    }
    quotient_by(&x, &pairs).presheaf
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> Budget {
        Budget::new(50_000_000)
    }

    #[test]
    fn populations_on_catalog_sites() {
        let point = Arc::new(FinCat::point());
        assert_eq!(enumerate_presheaves(&point, 4, &mut budget()).unwrap().len(), 5);
        // X(p) is injective and X(s) a left inverse of it
        let retract = Arc::new(FinCat::retract());
        assert_eq!(enumerate_presheaves(&retract, 4, &mut budget()).unwrap().len(), 175);
        // X(r) injective, X(s), X(t) left inverses free off its image
        let mut expected = 0;
        for v in 0..=4u32 {
            for e in v..=4u32 {
                let injections: u32 = (e - v + 1..=e).product();
                if v > 0 || e == 0 {
                    expected += injections * v.pow(2 * (e - v));
                }
            }
        }
        let graphs = Arc::new(FinCat::reflexive_graph());
        assert_eq!(enumerate_presheaves(&graphs, 4, &mut budget()).unwrap().len(), expected as usize);
    }

    #[test]
    fn retract_classes_are_idempotents_on_small_sets() {
        // idempotent self-maps of an n-set up to conjugacy: 1, 1, 2, 3, 5
        let retract = Arc::new(FinCat::retract());
        let all = enumerate_presheaves(&retract, 4, &mut budget()).unwrap();
        assert_eq!(isomorphism_classes(&all, &mut budget()).unwrap().len(), 12);
    }

    #[test]
    fn random_presheaves_are_functorial() {
        use rand::SeedableRng;
        let site = Arc::new(FinCat::reflexive_graph());
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..20 {
            random_presheaf(&site, &mut rng, 3, 3).validate().unwrap();
        }
    }
}
