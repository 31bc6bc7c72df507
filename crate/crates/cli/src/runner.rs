//! Builds a scenario's definitions and runs its checks.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use cohesion_core::affine::{
    check_euler_composition, check_kl, euler_reals, invertibles_scheme, monoid_mult, weil_prolongation, KlCertificate,
    PointedScheme, RingObject,
};
use cohesion_core::algebra::{
    bounded_idempotents, idempotents, points, weil_point, AlgMorphism, AlgebraError, FpAlgebra, MonomialOrder,
    Rational,
};
use cohesion_core::affine::AffineScheme;
use cohesion_core::rig::{
    verify_lemma_am, verify_lemma_am_equality, verify_lemma_am_line, verify_prop2, verify_prop2_line, A_of, Bound,
    Clause, FiniteRig, Interval, M_of, QIntervalSet, Subset,
};
use cohesion_core::topos::family::{enumerate_presheaves, random_presheaf};
use cohesion_core::topos::fixtures::{boolean_monoid, interval, retract_line, two_component_group};
use cohesion_core::topos::{
    check_precohesive_site, components, count_homs, euler_reals_presheaf, gate_counterexample, prop1_check,
    prop1_converse, prop2_internal, product, t_discrete_check, units_and_bidirectional, AdjointString, Budget,
    Exponential, FinCat, InternalMonoid, PointedPresheaf, Presheaf, Subpresheaf,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::report::{Artifact, CheckReport, DefinitionReport, Report, Verdict};
use crate::scenario::{
    Body, Check, CheckKind, Expectation, MonoidBody, PointedBody, PresheafBody, RigBody, RingBody, Scenario, Setting,
    SiteBody, Statement, SubsetBody,
};

/// Run parameters. Precedence: defaults, then `set` statements, then overrides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Work budget for every enumeration in one check.
    pub max_enumeration: u64,
    pub idempotent_degree_bound: u32,
    pub monomial_order: MonomialOrder,
    pub seed: u64,
    /// Presheaves with at most this many elements per object are enumerated exhaustively.
    pub family_bound: usize,
    /// Seeded random presheaves drawn in addition to the exhaustive family.
    pub oracle_samples: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_enumeration: 10_000_000,
            idempotent_degree_bound: 4,
            monomial_order: MonomialOrder::DegRevLex,
            seed: 0,
            family_bound: 1,
            oracle_samples: 16,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub max_enumeration: Option<u64>,
    pub idempotent_degree_bound: Option<u32>,
    pub seed: Option<u64>,
}

impl Config {
    pub fn resolve(scenario: &Scenario, overrides: &Overrides) -> Self {
        let mut c = Config::default();
        for s in &scenario.statements {
            if let Statement::Set(setting) = s {
                match *setting {
                    Setting::MaxEnumeration(n) => c.max_enumeration = n,
                    Setting::IdempotentDegreeBound(n) => c.idempotent_degree_bound = n,
                    Setting::MonomialOrder(o) => c.monomial_order = o,
                    Setting::Seed(n) => c.seed = n,
                    Setting::FamilyBound(n) => c.family_bound = n,
                    Setting::OracleSamples(n) => c.oracle_samples = n,
                }
            }
        }
        if let Some(n) = overrides.max_enumeration {
            c.max_enumeration = n;
        }
        if let Some(n) = overrides.idempotent_degree_bound {
            c.idempotent_degree_bound = n;
        }
        if let Some(n) = overrides.seed {
            c.seed = n;
        }
        c
    }

    fn budget(&self) -> Budget {
        Budget::new(self.max_enumeration)
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub fail_fast: bool,
    /// Worker cap; `None` uses every available core.
    pub workers: Option<usize>,
}

#[derive(Clone, Debug)]
enum Rig {
    Finite(FiniteRig),
    Line,
}

#[derive(Clone, Debug)]
enum SubsetValue {
    Finite { rig_name: String, rig: FiniteRig, subset: Subset },
    Line(QIntervalSet),
}

#[derive(Clone, Debug)]
struct Monoid {
    monoid: InternalMonoid,
    /// The rig a constant monoid was built from.
    rig: Option<String>,
}

// built once per definition, so variant size does not matter
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug)]
enum Value {
    Algebra(FpAlgebra),
    Scheme(Box<PointedScheme>),
    Ring(Box<RingObject>),
    Site(Arc<FinCat>),
    Presheaf(Presheaf),
    Pointed(PointedPresheaf),
    Monoid(Monoid),
    Rig(Rig),
    Subset(SubsetValue),
}

/// Built definitions; a failed definition keeps its error message.
struct Env {
    values: HashMap<String, Result<Value, String>>,
    config: Config,
}

type CheckResult<T> = Result<T, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

impl Env {
    fn get(&self, name: &str) -> CheckResult<&Value> {
        match self.values.get(name) {
            Some(Ok(v)) => Ok(v),
            Some(Err(_)) => Err(format!("depends on `{name}`, whose definition failed")),
            None => Err(format!("`{name}` is not defined")),
        }
    }

    fn algebra(&self, name: &str) -> CheckResult<&FpAlgebra> {
        match self.get(name)? {
            Value::Algebra(a) => Ok(a),
            _ => Err(format!("`{name}` is not an algebra")),
        }
    }

    fn site(&self, name: &str) -> CheckResult<&Arc<FinCat>> {
        match self.get(name)? {
            Value::Site(s) => Ok(s),
            _ => Err(format!("`{name}` is not a site")),
        }
    }

    fn presheaf(&self, name: &str) -> CheckResult<&Presheaf> {
        match self.get(name)? {
            Value::Presheaf(p) => Ok(p),
            Value::Pointed(p) => Ok(&p.object),
            _ => Err(format!("`{name}` is not a presheaf")),
        }
    }

    fn pointed(&self, name: &str) -> CheckResult<&PointedPresheaf> {
        match self.get(name)? {
            Value::Pointed(p) => Ok(p),
            _ => Err(format!("`{name}` is not a pointed presheaf")),
        }
    }

    fn scheme(&self, name: &str) -> CheckResult<&PointedScheme> {
        match self.get(name)? {
            Value::Scheme(s) => Ok(s.as_ref()),
            _ => Err(format!("`{name}` is not a scheme")),
        }
    }

    fn ring(&self, name: &str) -> CheckResult<&RingObject> {
        match self.get(name)? {
            Value::Ring(r) => Ok(r.as_ref()),
            _ => Err(format!("`{name}` is not a ring")),
        }
    }

    fn monoid(&self, name: &str) -> CheckResult<&Monoid> {
        match self.get(name)? {
            Value::Monoid(m) => Ok(m),
            _ => Err(format!("`{name}` is not a monoid")),
        }
    }

    fn rig(&self, name: &str) -> CheckResult<&Rig> {
        match self.get(name)? {
            Value::Rig(r) => Ok(r),
            _ => Err(format!("`{name}` is not a rig")),
        }
    }

    fn subset(&self, name: &str) -> CheckResult<&SubsetValue> {
        match self.get(name)? {
            Value::Subset(s) => Ok(s),
            _ => Err(format!("`{name}` is not a subset")),
        }
    }

    fn build(&self, body: &Body) -> CheckResult<Value> {
        let order = self.config.monomial_order;
        Ok(match body {
            Body::Algebra { vars, relations } => {
                let rels: Vec<&str> = relations.iter().map(String::as_str).collect();
                Value::Algebra(FpAlgebra::parse(vars, &rels).map_err(err)?.reordered(order))
            }
            Body::Scheme { algebra, point } => {
                let a = self.algebra(algebra)?.clone();
                Value::Scheme(Box::new(match point {
                    None => PointedScheme::weil(a).map_err(|e| format!("{e}; give the point with `at (…)`"))?,
                    Some(values) => {
                        let q = values.iter().map(|v| parse_rational(v)).collect::<CheckResult<Vec<_>>>()?;
                        let p = AlgMorphism::point(&a, &q).map_err(err)?;
                        PointedScheme::new(AffineScheme::spec(a), p).map_err(err)?
                    }
                }))
            }
            Body::Ring(RingBody::Line) => Value::Ring(Box::new(RingObject::line())),
            Body::Ring(RingBody::Spec { algebra, fields }) => {
                let a = self.algebra(algebra)?.clone();
                fn s(v: &[String]) -> Vec<&str> {
                    v.iter().map(String::as_str).collect()
                }
                let r = RingObject::new(a, &s(&fields.add), &s(&fields.mul), &s(&fields.zero), &s(&fields.one), &s(&fields.neg))
                    .map_err(err)?;
                Value::Ring(Box::new(r))
            }
            Body::Site(SiteBody::Catalog(name)) => {
                Value::Site(Arc::new(FinCat::catalog(name).ok_or_else(|| format!("no catalog site `{name}`"))?))
            }
            Body::Site(SiteBody::Table { objects, arrows, composites }) => {
                let objs: Vec<&str> = objects.iter().map(String::as_str).collect();
                let arr: Vec<(&str, &str, &str)> = arrows.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
                let comp: Vec<(&str, &str, &str)> =
                    composites.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
                Value::Site(Arc::new(FinCat::new("custom", &objs, &arr, &comp).map_err(err)?))
            }
            Body::Presheaf(p) => Value::Presheaf(self.build_presheaf(p)?),
            Body::Pointed(PointedBody::Fixture(name)) => Value::Pointed(match name.as_str() {
                "interval" => interval().map_err(err)?,
                "retract_line" => retract_line().map_err(err)?,
                _ => return Err(format!("no pointed fixture `{name}`")),
            }),
            Body::Pointed(PointedBody::At { presheaf, element }) => {
                Value::Pointed(PointedPresheaf::new(self.presheaf(presheaf)?, *element).map_err(err)?)
            }
            Body::Monoid(MonoidBody::Fixture(_)) => {
                Value::Monoid(Monoid { monoid: two_component_group().map_err(err)?, rig: None })
            }
            Body::Monoid(MonoidBody::Boolean { site }) => {
                Value::Monoid(Monoid { monoid: boolean_monoid(self.site(site)?).map_err(err)?, rig: None })
            }
            Body::Monoid(MonoidBody::Constant { site, rig }) => {
                let Rig::Finite(k) = self.rig(rig)? else {
                    return Err("constant monoids need a finite rig".into());
                };
                let m = InternalMonoid::constant_rig(self.site(site)?, k).map_err(err)?;
                Value::Monoid(Monoid { monoid: m, rig: Some(rig.clone()) })
            }
            Body::Rig(RigBody::Line) => Value::Rig(Rig::Line),
            Body::Rig(RigBody::Catalog(name)) => {
                Value::Rig(Rig::Finite(FiniteRig::catalog(name).ok_or_else(|| format!("no catalog rig `{name}`"))?))
            }
            Body::Rig(RigBody::Table { elements, add, mul, zero, one }) => {
                let index = |l: &String| {
                    elements.iter().position(|e| e == l).ok_or_else(|| format!("`{l}` is not an element"))
                };
                let table = |t: &[Vec<String>]| {
                    t.iter().map(|row| row.iter().map(index).collect::<CheckResult<Vec<_>>>()).collect::<CheckResult<Vec<_>>>()
                };
                let k = FiniteRig::new("custom", elements.clone(), table(add)?, table(mul)?, index(zero)?, index(one)?)
                    .map_err(err)?;
                Value::Rig(Rig::Finite(k))
            }
            Body::Subset { rig: rig_name, members } => Value::Subset(match (self.rig(rig_name)?, members) {
                (Rig::Finite(k), SubsetBody::Elements(labels)) => {
                    let xs = labels
                        .iter()
                        .map(|l| k.element(l).ok_or_else(|| format!("`{l}` is not an element of `{rig_name}`")))
                        .collect::<CheckResult<Vec<_>>>()?;
                    let subset = Subset::from_elements(k.size(), &xs).map_err(err)?;
                    SubsetValue::Finite { rig_name: rig_name.clone(), rig: k.clone(), subset }
                }
                (Rig::Line, SubsetBody::Intervals(lits)) => {
                    let mut parts = Vec::new();
                    for lit in lits {
                        let (lo, hi) = (parse_bound(&lit.lo)?, parse_bound(&lit.hi)?);
                        let i = Interval::new(lo, lit.lo_closed, hi, lit.hi_closed)
                            .ok_or_else(|| format!("the interval {lit} is empty"))?;
                        parts.push(i);
                    }
                    SubsetValue::Line(QIntervalSet::from_intervals(parts))
                }
                _ => return Err(format!("subset literal does not match the rig `{rig_name}`")),
            }),
        })
    }

    fn build_presheaf(&self, p: &PresheafBody) -> CheckResult<Presheaf> {
        let object = |site: &FinCat, o: &str| site.object_index(o).ok_or_else(|| format!("site has no object `{o}`"));
        match p {
            PresheafBody::Representable { site, object: o } => {
                let s = self.site(site)?;
                Ok(Presheaf::representable(s, object(s, o)?))
            }
            PresheafBody::Terminal { site } => Ok(Presheaf::terminal(self.site(site)?)),
            PresheafBody::Constant { site, size } => Ok(Presheaf::constant(self.site(site)?, *size)),
            PresheafBody::Table { site, sizes, maps } => {
                let s = self.site(site)?;
                let mut by_object = vec![None; s.object_count()];
                for (o, n) in sizes {
                    let c = object(s, o)?;
                    if by_object[c].replace(*n).is_some() {
                        return Err(format!("size of `{o}` given twice"));
                    }
                }
                let sizes = by_object
                    .iter()
                    .enumerate()
                    .map(|(c, n)| n.ok_or_else(|| format!("no size for object `{}`", s.objects()[c])))
                    .collect::<CheckResult<Vec<_>>>()?;
                let named: Vec<(&str, Vec<usize>)> = maps.iter().map(|(a, m)| (a.as_str(), m.clone())).collect();
                Presheaf::from_named(s, sizes, &named).map_err(err)
            }
        }
    }
}

fn parse_rational(s: &str) -> CheckResult<Rational> {
    s.parse::<Rational>().map_err(|_| format!("`{s}` is not a rational number"))
}

fn parse_bound(s: &str) -> CheckResult<Bound> {
    Ok(match s {
        "inf" => Bound::PosInf,
        "-inf" => Bound::NegInf,
        _ => Bound::Finite(parse_rational(s)?),
    })
}

/// What one check computed, before expectations are applied.
struct Outcome {
    holds: bool,
    summary: String,
    artifacts: Vec<Artifact>,
    notes: Vec<String>,
}

impl Outcome {
    fn new(holds: bool, summary: impl Into<String>) -> Self {
        Outcome { holds, summary: summary.into(), artifacts: Vec::new(), notes: Vec::new() }
    }

    fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.artifacts.push(Artifact { key: key.to_string(), value: value.to_string() });
        self
    }

    fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn clause_line(c: &Clause) -> String {
    match (c.applicable, c.holds, &c.witness) {
        (false, _, _) => "vacuous".into(),
        (true, true, _) => "holds".into(),
        (true, false, Some(w)) => format!("fails: {w}"),
        (true, false, None) => "fails".into(),
    }
}

/// Presheaves on `site` for oracle checks: all small ones, then seeded random ones.
fn family(site: &Arc<FinCat>, config: &Config, rng: &mut ChaCha8Rng, budget: &mut Budget) -> CheckResult<Vec<Presheaf>> {
    let mut out = enumerate_presheaves(site, config.family_bound, budget).map_err(err)?;
    out.extend((0..config.oracle_samples).map(|_| random_presheaf(site, rng, 3, 2)));
    Ok(out)
}

fn gated_string(site: &Arc<FinCat>) -> CheckResult<AdjointString> {
    AdjointString::new(site).map_err(err)
}

fn run_kind(env: &Env, check: &Check, index: usize) -> CheckResult<Outcome> {
    let config = &env.config;
    let arg = |i: usize| check.args[i].as_str();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(index as u64));
    let mut budget = config.budget();
    match check.kind {
        CheckKind::Prolong => {
            let (a, w) = (env.algebra(arg(0))?, env.algebra(arg(1))?);
            let p = weil_prolongation(a, w).map_err(err)?;
            let point = weil_point(w).ok_or("the exponent has no rational point")?;
            let split = p.ev(&point).then(&p.constants()).is_identity();
            let shown = p.display_renaming().map_or_else(|| p.algebra.presentation(), |(r, _)| r.presentation());
            Ok(Outcome::new(split, format!("{} ^ {} = {shown}", arg(0), arg(1)))
                .with("presentation", p.algebra.presentation())
                .with("basis dimension of W", p.basis_dim())
                .with("ev0 after constants is the identity", yes(split)))
        }
        CheckKind::Euler => {
            let reals = euler_reals(env.scheme(arg(0))?).map_err(err)?;
            let m = monoid_mult(&reals).map_err(err)?;
            Ok(Outcome::new(m.laws.monoid_with_zero(), format!("R = {}", reals.scheme))
                .with("mult", m.mult.describe())
                .with("unit", m.unit.describe())
                .with("zero", m.zero.describe())
                .with("monoid with zero", yes(m.laws.monoid_with_zero()))
                .with("commutative", yes(m.laws.commutative)))
        }
        CheckKind::EulerComposition => {
            let r = check_euler_composition(env.scheme(arg(0))?).map_err(err)?;
            Ok(Outcome::new(r.all_hold(), r.composite.clone())
                .with("endomorphism ideal", yes(r.endomorphism_ideal))
                .with("composition law", yes(r.composition_law))
                .with("identity", yes(r.identity))
                .with("zero preserving", yes(r.zero_preserving))
                .with("Euler reals are linear", yes(r.euler_reals_are_linear)))
        }
        CheckKind::Kl => {
            let (a, ring) = match env.get(arg(0))? {
                Value::Ring(r) => (&r.algebra, Some(r.as_ref())),
                Value::Algebra(a) => (a, None),
                _ => return Err(format!("`{}` is neither a ring nor an algebra", arg(0))),
            };
            let r = check_kl(a, ring).map_err(err)?;
            let summary = if r.holds { "R^D ≅ R × R" } else { "R^D ≇ R × R" };
            let mut o = Outcome::new(r.holds, summary)
                .with("D", &r.d_algebra)
                .with("R × R", &r.product);
            if let Some(e) = &r.exponential {
                o = o.with("R^D", e);
            }
            o = match &r.certificate {
                KlCertificate::Vacuous => o.with("certificate", "vacuous: R is empty"),
                KlCertificate::DimensionMismatch { exponential, product } => {
                    let d = |x: &Option<usize>| x.map_or_else(|| "infinite".to_string(), |n| n.to_string());
                    o.with("certificate", format!("dimension mismatch: dim R^D = {}, dim R × R = {}", d(exponential), d(product)))
                }
                KlCertificate::Isomorphism { forward, inverse } => {
                    o.with("certificate", "isomorphism").with("forward", forward).with("inverse", inverse)
                }
                KlCertificate::NotIsomorphism { forward, reason } => {
                    o.with("certificate", format!("not an isomorphism: {reason}")).with("forward", forward)
                }
            };
            if ring.is_none() {
                o = o.note("no ring structure given; D is cut out by squaring each coordinate");
            }
            Ok(o)
        }
        CheckKind::Invertibles => {
            let u = invertibles_scheme(env.ring(arg(0))?, config.idempotent_degree_bound).map_err(err)?;
            let c = &u.certificate;
            Ok(Outcome::new(c.no_nontrivial(), format!("U = {}", u.scheme))
                .with("inclusion", &u.inclusion)
                .with("idempotents up to degree", c.degree_bound)
                .with("idempotents found", c.idempotents.len())
                .note("connectedness is certified only up to the degree bound"))
        }
        CheckKind::Connected => {
            let a = env.algebra(arg(0))?;
            match idempotents(a) {
                Ok(es) => Ok(Outcome::new(es.len() <= 2, format!("{} idempotents", es.len()))
                    .with("idempotents", es.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))),
                Err(AlgebraError::InfiniteDimensional(_) | AlgebraError::PositiveDimensional(_)) => {
                    let c = bounded_idempotents(a, config.idempotent_degree_bound).map_err(err)?;
                    Ok(Outcome::new(c.no_nontrivial(), format!("{} idempotents up to degree {}", c.idempotents.len(), c.degree_bound))
                        .with("unknowns", c.unknowns)
                        .note("infinite-dimensional: searched a bounded ansatz"))
                }
                Err(e) => Err(err(e)),
            }
        }
        CheckKind::Points => {
            let ps = points(env.algebra(arg(0))?).map_err(err)?;
            let mut o = Outcome::new(true, format!("{} rational points", ps.points.len()));
            for (i, p) in ps.points.iter().enumerate() {
                o = o.with(&format!("point {i}"), p);
            }
            if ps.has_irrational_points {
                o = o.note("there are further points over an extension of ℚ");
            }
            Ok(o)
        }
        CheckKind::Precohesive => {
            let site = env.site(arg(0))?;
            let v = check_precohesive_site(site);
            if v.precohesive() {
                let t = &site.objects()[v.terminal.unwrap_or_default()];
                return Ok(Outcome::new(true, format!("terminal object {t}, every object has a point")));
            }
            match gate_counterexample(site) {
                Some((c, _, h)) => {
                    let name = &site.objects()[c];
                    Ok(Outcome::new(false, format!("witness object {name}"))
                        .with("pointless objects", v.pointless.iter().map(|&c| site.objects()[c].clone()).collect::<Vec<_>>().join(", "))
                        .with("σ epic on the representable", yes(h.sigma_epic))
                        .with("β monic on the representable", yes(h.beta_monic)))
                }
                None => Ok(Outcome::new(false, "no terminal object")),
            }
        }
        CheckKind::Adjunction => {
            let site = env.site(arg(0))?;
            let string = gated_string(site)?;
            let xs = family(site, config, &mut rng, &mut budget)?;
            let mut failures = Vec::new();
            for (i, x) in xs.iter().enumerate() {
                let h = string.hyperconnected_check(x);
                if !h.holds() {
                    failures.push(format!("presheaf {i}: β monic {}, σ epic {}", yes(h.beta_monic), yes(h.sigma_epic)));
                }
                for n in 0..3 {
                    let t = string.triangle_identities(x, n);
                    failures.extend(t.failures.iter().map(|f| format!("presheaf {i}, n = {n}: {f}")));
                }
            }
            for n in 0..3 {
                for m in 0..3 {
                    if !string.discrete_fully_faithful(n, m, &mut budget).map_err(err)? {
                        failures.push(format!("discrete not fully faithful at {n}, {m}"));
                    }
                }
            }
            let mut o = Outcome::new(failures.is_empty(), format!("{} presheaves, {} failures", xs.len(), failures.len()));
            if let Some(f) = failures.first() {
                o = o.with("first failure", f);
            }
            Ok(o)
        }
        CheckKind::Products => {
            let site = env.site(arg(0))?;
            let string = gated_string(site)?;
            let xs = family(site, config, &mut rng, &mut budget)?;
            let mut failures = 0usize;
            let mut pairs = 0usize;
            for x in &xs {
                for y in &xs {
                    pairs += 1;
                    if !string.preserves_product(x, y) {
                        failures += 1;
                    }
                }
            }
            Ok(Outcome::new(failures == 0, format!("π₀ preserved {} of {pairs} products", pairs - failures)))
        }
        CheckKind::Components => {
            let x = env.presheaf(arg(0))?;
            let c = components(x);
            Ok(Outcome::new(true, format!("{} component{}", c.count, if c.count == 1 { "" } else { "s" })).with("sizes", fmt_sizes(x)))
        }
        CheckKind::Exponential => {
            let (x, t) = (env.presheaf(arg(0))?, env.presheaf(arg(1))?);
            if !x.same_site(t) {
                return Err("the presheaves live on different sites".into());
            }
            let exp = Exponential::new(x, t, &mut budget).map_err(err)?;
            let zs = family(x.site(), config, &mut rng, &mut budget)?;
            let mut mismatch = None;
            for (i, z) in zs.iter().enumerate() {
                let lhs = count_homs(z, &exp.presheaf, &mut budget).map_err(err)?;
                let rhs = count_homs(&product(z, t).presheaf, x, &mut budget).map_err(err)?;
                if lhs != rhs && mismatch.is_none() {
                    mismatch = Some(format!("test presheaf {i} ({}): {lhs} ≠ {rhs}", fmt_sizes(z)));
                }
            }
            let mut o = Outcome::new(mismatch.is_none(), format!("X^T has sizes {}", fmt_sizes(&exp.presheaf)))
                .with("test presheaves", zs.len());
            if let Some(m) = mismatch {
                o = o.with("hom-count mismatch", m);
            }
            Ok(o)
        }
        CheckKind::TDiscrete => {
            let (x, t) = (env.presheaf(arg(0))?, env.pointed(arg(1))?);
            let d = t_discrete_check(x, t, &mut budget).map_err(err)?;
            Ok(Outcome::new(d, if d { "ev₀ : X^T → X is invertible" } else { "ev₀ : X^T → X is not invertible" }))
        }
        CheckKind::Prop1 => {
            let (t, x) = (env.pointed(arg(0))?, env.presheaf(arg(1))?);
            let reals = euler_reals_presheaf(t, &mut budget).map_err(err)?;
            let string = gated_string(t.object.site())?;
            let r = prop1_check(&reals, x, &string, &mut budget).map_err(err)?;
            let summary = match (r.hypothesis(), r.bijective) {
                (true, true) => "R connected and π₀ ev₀ is a bijection",
                (true, false) => "R connected but π₀ ev₀ is not a bijection",
                (false, true) => "R disconnected; π₀ ev₀ is still a bijection",
                (false, false) => "R disconnected; π₀ ev₀ is not a bijection",
            };
            Ok(Outcome::new(r.holds(), summary)
                .with("π₀ R", r.r_components)
                .with("π₀ X^T", r.exp_components)
                .with("π₀ X", r.x_components)
                .with("π₀ ev₀", format!("{:?}", r.comparison)))
        }
        CheckKind::Prop1Converse => {
            let t = env.pointed(arg(0))?;
            let reals = euler_reals_presheaf(t, &mut budget).map_err(err)?;
            let string = gated_string(t.object.site())?;
            let c = prop1_converse(&reals, &string, &mut budget).map_err(err)?;
            Ok(Outcome::new(c.consistent(), format!("R ↣ T^T {} a retraction", if c.retraction.is_some() { "has" } else { "has no" }))
                .with("T connected", yes(c.t_connected))
                .with("R connected", yes(c.r_connected))
                .with("π₀ ev₀ bijective at X = T", yes(c.at_t.bijective)))
        }
        CheckKind::Units | CheckKind::Bidirectional => {
            let m = &env.monoid(arg(0))?.monoid;
            let string = gated_string(m.site())?;
            let r = units_and_bidirectional(m, &string).map_err(err)?;
            let o = if check.kind == CheckKind::Units {
                let ok = r.restriction_preserves_inverses && r.pi0_is_group;
                Outcome::new(ok, format!("U has sizes {}", fmt_sizes(&r.units.presheaf)))
                    .with("restriction preserves inverses", yes(r.restriction_preserves_inverses))
                    .with("π₀ U is a group", yes(r.pi0_is_group))
            } else {
                Outcome::new(r.bidirectional(), format!("π₀ U has {} elements", r.pi0_size()))
            };
            let positive: Vec<String> =
                (0..m.site().object_count()).map(|c| format!("{:?}", r.positive_members(c))).collect();
            Ok(o.with("π₀ U", r.pi0_size()).with("U₊", positive.join(" ")))
        }
        CheckKind::Prop2 => match env.subset(arg(0))? {
            SubsetValue::Finite { rig, subset, .. } => {
                let r = verify_prop2(rig, subset);
                let mut o = Outcome::new(r.holds(), format!("P = {}", subset.display(rig)))
                    .with("A", r.a.display(rig))
                    .with("M", r.m.display(rig));
                for c in &r.clauses {
                    o = o.with(c.name, clause_line(c));
                }
                Ok(o)
            }
            SubsetValue::Line(p) => {
                let r = verify_prop2_line(p);
                let mut o = Outcome::new(r.holds(), format!("P = {p}")).with("A", &r.a).with("M", &r.m);
                for c in &r.clauses {
                    o = o.with(c.name, clause_line(c));
                }
                Ok(o)
            }
        },
        CheckKind::Lemma => match env.subset(arg(0))? {
            SubsetValue::Finite { rig, subset, .. } => Ok(lemma_outcome(rig, subset)),
            SubsetValue::Line(p) => {
                let r = verify_lemma_am_line(p);
                Ok(Outcome::new(r.holds(), format!("P = {p}"))
                    .with("A", &r.a)
                    .with("M", &r.m)
                    .with(r.negation_clause.name, clause_line(&r.negation_clause))
                    .with(r.equality_clause.name, clause_line(&r.equality_clause)))
            }
        },
        CheckKind::Prop2All => {
            let Rig::Finite(k) = env.rig(arg(0))? else {
                return Err("the rational line has infinitely many subsets".into());
            };
            let mut total = 0usize;
            let mut failures = Vec::new();
            for p in k.all_subsets() {
                total += 1;
                let prop = verify_prop2(k, &p);
                let lemma = lemma_outcome(k, &p);
                if !prop.holds() || !lemma.holds {
                    let mut bad: Vec<String> =
                        prop.clauses.iter().filter(|c| !c.holds).map(|c| format!("{}: {}", c.name, clause_line(c))).collect();
                    bad.extend(lemma.artifacts.iter().filter(|a| a.value.starts_with("fails")).map(|a| format!("{}: {}", a.key, a.value)));
                    failures.push(format!("P = {}: {}", p.display(k), bad.join("; ")));
                }
            }
            let mut o = Outcome::new(failures.is_empty(), format!("{} of {total} subsets satisfy every clause", total - failures.len()));
            for (i, f) in failures.iter().enumerate() {
                o = o.with(&format!("violation {i}"), f);
            }
            if !k.is_ring() {
                o = o.note("not a ring: the negation clause of the lemma is skipped");
            }
            Ok(o)
        }
        CheckKind::Prop2Internal => {
            let m = env.monoid(arg(0))?;
            let SubsetValue::Finite { rig_name, rig, subset } = env.subset(arg(1))? else {
                return Err("internal checks need a subset of a finite rig".into());
            };
            if m.rig.as_deref() != Some(rig_name.as_str()) {
                return Err(format!("`{}` is not the constant monoid on `{rig_name}`", arg(0)));
            }
            let sub = Subpresheaf::new(&m.monoid.carrier, |_, x| subset.contains(x)).map_err(err)?;
            let r = prop2_internal(&m.monoid, &sub).map_err(err)?;
            let (a, mm) = (A_of(rig, subset), M_of(rig, &A_of(rig, subset)));
            let site = m.monoid.site();
            let stage = |s: &Subpresheaf, c: usize| s.members(c).iter().map(|&x| rig.label(x).to_string()).collect::<Vec<_>>().join(", ");
            let mut agree = true;
            let mut o = Outcome::new(true, format!("P = {}", subset.display(rig)))
                .with("external A", a.display(rig))
                .with("external M", mm.display(rig));
            for c in 0..site.object_count() {
                agree &= r.a.members(c).iter().copied().eq(a.elements()) && r.m.members(c).iter().copied().eq(mm.elements());
                let name = &site.objects()[c];
                o = o.with(&format!("A at {name}"), format!("{{{}}}", stage(&r.a, c)));
                o = o.with(&format!("M at {name}"), format!("{{{}}}", stage(&r.m, c)));
            }
            for c in &r.clauses {
                o = o.with(c.name, clause_line(c));
            }
            o.holds = r.holds() && agree;
            Ok(o.with("internal agrees with external", yes(agree)))
        }
    }
}

fn lemma_outcome(k: &FiniteRig, p: &Subset) -> Outcome {
    match verify_lemma_am(k, p) {
        Ok(r) => Outcome::new(r.holds(), format!("P = {}", p.display(k)))
            .with("A", r.a.display(k))
            .with("M", r.m.display(k))
            .with(r.negation_clause.name, clause_line(&r.negation_clause))
            .with(r.equality_clause.name, clause_line(&r.equality_clause)),
        Err(_) => {
            let c = verify_lemma_am_equality(k, p);
            Outcome::new(c.holds, format!("P = {}", p.display(k)))
                .with("A", A_of(k, p).display(k))
                .with("M", M_of(k, &A_of(k, p)).display(k))
                .with(c.name, clause_line(&c))
                .note("not a ring: the negation clause is skipped")
        }
    }
}

fn fmt_sizes(x: &Presheaf) -> String {
    let names = x.site().objects();
    let parts: Vec<String> = names.iter().zip(x.sizes()).map(|(o, n)| format!("{o}: {n}")).collect();
    format!("({})", parts.join(", "))
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "unknown panic".into()
    }
}

fn run_check(env: &Env, check: &Check, index: usize, location: String) -> CheckReport {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(|| run_kind(env, check, index)))
        .unwrap_or_else(|p| Err(format!("internal error: {}", panic_message(p))));
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut report = CheckReport {
        index,
        check: check.to_string(),
        location,
        verdict: Verdict::Error,
        holds: None,
        summary: String::new(),
        artifacts: Vec::new(),
        notes: Vec::new(),
        elapsed_ms,
    };
    match result {
        Err(e) => report.summary = e,
        Ok(o) => {
            let expect_fail = check.expectations.contains(&Expectation::Fails);
            let mut ok = o.holds != expect_fail;
            report.holds = Some(o.holds);
            report.summary = o.summary;
            report.artifacts = o.artifacts;
            report.notes = o.notes;
            let text = report.body_text();
            for e in &check.expectations {
                if let Expectation::Contains(s) = e {
                    if !text.contains(s.as_str()) {
                        ok = false;
                        report.notes.push(format!("expected the report to contain \"{s}\""));
                    }
                }
            }
            if expect_fail && o.holds {
                report.notes.push("expected this property to fail".into());
            }
            report.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        }
    }
    report
}

/// Builds every definition in order, then runs the checks.
pub fn run(scenario: &Scenario, config: &Config, options: &RunOptions) -> Report {
    let mut env = Env { values: HashMap::new(), config: config.clone() };
    let mut definitions = Vec::new();
    for s in &scenario.statements {
        if let Statement::Define(d) = s {
            let built = catch_unwind(AssertUnwindSafe(|| env.build(&d.body)))
                .unwrap_or_else(|p| Err(format!("internal error: {}", panic_message(p))));
            definitions.push(DefinitionReport {
                name: d.name.clone(),
                kind: d.kind().keyword().to_string(),
                error: built.as_ref().err().cloned(),
            });
            env.values.insert(d.name.clone(), built);
        }
    }
    let checks: Vec<(usize, &Check, String)> =
        scenario.checks().enumerate().map(|(i, (c, loc))| (i, c, loc.to_string())).collect();
    let mut skipped = 0;
    let reports = if options.fail_fast {
        let mut out = Vec::new();
        for (i, c, loc) in &checks {
            let r = run_check(&env, c, *i, loc.clone());
            let stop = r.verdict != Verdict::Pass;
            out.push(r);
            if stop {
                skipped = checks.len() - out.len();
                break;
            }
        }
        out
    } else {
        let work = || checks.par_iter().map(|(i, c, loc)| run_check(&env, c, *i, loc.clone())).collect::<Vec<_>>();
        match options.workers {
            Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
                Ok(pool) => pool.install(work),
                Err(_) => work(),
            },
            None => work(),
        }
    };
    Report::new(definitions, reports, skipped, config)
}
