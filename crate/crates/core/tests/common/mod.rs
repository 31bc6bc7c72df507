//! Independent oracles shared by the integration tests. None of these call the
//! search or splitting routines they are used to check.

#![allow(dead_code)]

use std::sync::Arc;

use cohesion_core::algebra::{FiniteBasis, FpAlgebra, Rational};
use cohesion_core::topos::{FinCat, Presheaf};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Counts natural transformations `X → Y` by trying every family of functions
/// and checking every naturality square. `None` when the search space exceeds `cap`.
pub fn brute_force_hom_count(x: &Presheaf, y: &Presheaf, cap: u64) -> Option<u64> {
    let site = x.site();
    let k = site.object_count();
    // one digit per element of X, in base |Y(c)|
    let mut radix = Vec::new();
    let mut owner = Vec::new();
    let mut space: u64 = 1;
    for c in 0..k {
        for v in 0..x.size(c) {
            let base = y.size(c) as u64;
            if base == 0 {
                return Some(0);
            }
            space = space.checked_mul(base)?;
            if space > cap {
                return None;
            }
            radix.push(base as usize);
            owner.push((c, v));
        }
    }
    let mut offset = vec![0usize; k + 1];
    for c in 0..k {
        offset[c + 1] = offset[c] + x.size(c);
    }
    let mut digits = vec![0usize; radix.len()];
    let mut count = 0u64;
    loop {
        let natural = site.arrows().iter().enumerate().all(|(f, a)| {
            (0..x.size(a.cod)).all(|v| {
                let image = digits[offset[a.cod] + v];
                y.restrict(f, image) == digits[offset[a.dom] + x.restrict(f, v)]
            })
        });
        if natural {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Some(count);
            }
            digits[i] += 1;
            if digits[i] < radix[i] {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// The number of presheaves with at most four elements per object on each
/// catalog site, counted by hand from the shape of the site.
pub fn population_with_at_most_four(site: &str) -> usize {
    let falling = |n: u32, k: u32| -> u32 { (n - k + 1..=n).product() };
    match site {
        // a set of size 0..=4
        "point" => 5,
        // X(p) injective, X(s) a left inverse of it, free off the image
        "retract" => {
            let mut total = 0;
            for k in 0..=4u32 {
                for n in k..=4u32 {
                    if k > 0 || n == 0 {
                        total += falling(n, k) * k.pow(n - k);
                    }
                }
            }
            total as usize
        }
        // X(r) injective, X(s) and X(t) both left inverses of it
        "reflexive_graph" => {
            let mut total = 0;
            for v in 0..=4u32 {
                for e in v..=4u32 {
                    if v > 0 || e == 0 {
                        total += falling(e, v) * v.pow(2 * (e - v));
                    }
                }
            }
            total as usize
        }
        other => panic!("no population formula for {other}"),
    }
}

pub fn catalog_site(name: &str) -> Arc<FinCat> {
    Arc::new(FinCat::catalog(name).expect("catalog site"))
}

/// Finite-dimensional algebras of dimension at most six.
pub fn idempotent_fixtures() -> Vec<FpAlgebra> {
    let alg = |names: &[&str], rels: &[&str]| FpAlgebra::parse(names, rels).expect("fixture parses");
    vec![
        FpAlgebra::ground(),
        FpAlgebra::zero_algebra(),
        alg(&["x"], &["x^2"]),
        alg(&["x"], &["x^2 - x"]),
        alg(&["x"], &["x^2 + 1"]),
        alg(&["x"], &["x^2 - 2"]),
        alg(&["x"], &["x^3 - x"]),
        alg(&["x"], &["x^3"]),
        alg(&["x"], &["x^3 - x^2"]),
        alg(&["x"], &["x^4 - x^2"]),
        alg(&["x"], &["x^4 - 1"]),
        alg(&["x"], &["x^5 - x"]),
        alg(&["x"], &["x^6 - x^4"]),
        alg(&["x", "y"], &["x^2", "y^2"]),
        alg(&["x", "y"], &["x^2 - x", "y^2 - y"]),
        alg(&["x", "y"], &["x^2 - x", "y^2"]),
        alg(&["x", "y"], &["x^2 - x", "y^2 + 1"]),
        alg(&["x", "y"], &["x^2", "x y", "y^2"]),
        alg(&["x", "y"], &["x y", "x^2 - x", "y^3 - y"]),
        alg(&["x", "y", "z"], &["x^2", "y^2", "z^2", "x y", "x z"]),
    ]
}

/// Half-width of the ansatz grid: the grid has `(8w + 1)^dim` points.
pub fn grid_bound(dim: usize) -> i64 {
    if dim <= 4 {
        2
    } else {
        1
    }
}

/// Every `e = Σ c_j b_j` with `c_j ∈ ¼ℤ`, `|c_j| ≤ grid_bound(dim)` and `e² = e`,
/// as coordinate vectors. Structure constants come from normal forms; the
/// search is plain enumeration in integer arithmetic.
pub fn ansatz_idempotents(a: &FpAlgebra) -> Vec<Vec<Rational>> {
    let fb = FiniteBasis::new(a).expect("finite-dimensional fixture");
    let n = fb.dim();
    if n == 0 {
        return vec![Vec::new()];
    }
    // c[i][j][k]: coefficient of b_k in b_i b_j, scaled to integers by `l`
    let raw: Vec<Vec<Vec<Rational>>> = (0..n)
        .map(|i| (0..n).map(|j| fb.coords(&(&fb.element(i) * &fb.element(j)))).collect())
        .collect();
    let mut l = num_bigint::BigInt::one();
    for v in raw.iter().flatten().flatten() {
        l = l.lcm(v.denom());
    }
    let scaled: Vec<Vec<Vec<i64>>> = raw
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| v.iter().map(|q| (q * Rational::from_integer(l.clone())).to_integer().to_i64().unwrap()).collect())
                .collect()
        })
        .collect();
    let l = l.to_i64().unwrap();
    // e = v / 4 with |v| ≤ 4w; e² = e ⇔ Σ v_i v_j c_ijk = 4 v_k
    let w = 4 * grid_bound(n);
    let mut v = vec![-w; n];
    let mut out = Vec::new();
    loop {
        let ok = (0..n).all(|k| {
            let mut s = 0i64;
            for i in 0..n {
                if v[i] == 0 {
                    continue;
                }
                for j in 0..n {
                    s += v[i] * v[j] * scaled[i][j][k];
                }
            }
            s == 4 * l * v[k]
        });
        if ok {
            out.push(v.iter().map(|&x| Rational::new(x.into(), 4.into())).collect());
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return out;
            }
            v[i] += 1;
            if v[i] <= w {
                break;
            }
            v[i] = -w;
            i += 1;
        }
    }
}

/// `true` when every coordinate of `coords` is in the ansatz grid.
pub fn on_grid(coords: &[Rational]) -> bool {
    let bound = Rational::from_integer(grid_bound(coords.len()).into());
    coords.iter().all(|q| (q * Rational::from_integer(4.into())).is_integer() && q.abs() <= bound)
}

pub fn is_zero(q: &Rational) -> bool {
    q.is_zero()
}
