//! Scenario files: named definitions, settings and checks.
//!
//! Statements are whitespace-insensitive and may span lines; `#` starts a
//! comment. Names must be defined before use. The full grammar is in the README.

use std::collections::HashMap;
use std::fmt;

use cohesion_core::algebra::{parse_polynomial, vars, MonomialOrder};
use cohesion_core::rig::FiniteRig;
use thiserror::Error;

/// 1-based position in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("{location}: expected {}, found {found}", expected.join(" or "))]
    Parse { location: Location, expected: Vec<String>, found: String },
    #[error("{location}: unresolved name `{name}`, expected {expected}")]
    UnresolvedName { location: Location, name: String, expected: String },
}

impl ScenarioError {
    pub fn location(&self) -> Location {
        match self {
            ScenarioError::Parse { location, .. } | ScenarioError::UnresolvedName { location, .. } => *location,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Algebra,
    Scheme,
    Ring,
    Site,
    Presheaf,
    Pointed,
    Monoid,
    Rig,
    Subset,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Algebra => "algebra",
            Kind::Scheme => "scheme",
            Kind::Ring => "ring",
            Kind::Site => "site",
            Kind::Presheaf => "presheaf",
            Kind::Pointed => "pointed",
            Kind::Monoid => "monoid",
            Kind::Rig => "rig",
            Kind::Subset => "subset",
        }
    }

    const ALL: [Kind; 9] = [
        Kind::Algebra,
        Kind::Scheme,
        Kind::Ring,
        Kind::Site,
        Kind::Presheaf,
        Kind::Pointed,
        Kind::Monoid,
        Kind::Rig,
        Kind::Subset,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub name: String,
    pub body: Body,
}

impl Definition {
    pub fn kind(&self) -> Kind {
        match self.body {
            Body::Algebra { .. } => Kind::Algebra,
            Body::Scheme { .. } => Kind::Scheme,
            Body::Ring(_) => Kind::Ring,
            Body::Site(_) => Kind::Site,
            Body::Presheaf(_) => Kind::Presheaf,
            Body::Pointed(_) => Kind::Pointed,
            Body::Monoid(_) => Kind::Monoid,
            Body::Rig(_) => Kind::Rig,
            Body::Subset { .. } => Kind::Subset,
        }
    }
}

/// Polynomials and rationals are kept as validated source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Algebra { vars: Vec<String>, relations: Vec<String> },
    Scheme { algebra: String, point: Option<Vec<String>> },
    Ring(RingBody),
    Site(SiteBody),
    Presheaf(PresheafBody),
    Pointed(PointedBody),
    Monoid(MonoidBody),
    Rig(RigBody),
    Subset { rig: String, members: SubsetBody },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingBody {
    Line,
    Spec { algebra: String, fields: RingFields },
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RingFields {
    pub add: Vec<String>,
    pub mul: Vec<String>,
    pub zero: Vec<String>,
    pub one: Vec<String>,
    pub neg: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SiteBody {
    Catalog(String),
    Table { objects: Vec<String>, arrows: Vec<(String, String, String)>, composites: Vec<(String, String, String)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresheafBody {
    Representable { site: String, object: String },
    Terminal { site: String },
    Constant { site: String, size: usize },
    Table { site: String, sizes: Vec<(String, usize)>, maps: Vec<(String, Vec<usize>)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointedBody {
    Fixture(String),
    At { presheaf: String, element: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidBody {
    Fixture(String),
    Constant { site: String, rig: String },
    Boolean { site: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RigBody {
    Catalog(String),
    Line,
    Table { elements: Vec<String>, add: Vec<Vec<String>>, mul: Vec<Vec<String>>, zero: String, one: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubsetBody {
    Elements(Vec<String>),
    Intervals(Vec<IntervalLit>),
}

/// `lo` and `hi` are rationals, `inf` or `-inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalLit {
    pub lo: String,
    pub lo_closed: bool,
    pub hi: String,
    pub hi_closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Setting {
    MaxEnumeration(u64),
    IdempotentDegreeBound(u32),
    MonomialOrder(MonomialOrder),
    Seed(u64),
    FamilyBound(usize),
    OracleSamples(usize),
}

impl Setting {
    pub const KEYS: [&'static str; 6] =
        ["max_enumeration", "idempotent_degree_bound", "monomial_order", "seed", "family_bound", "oracle_samples"];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckKind {
    Prolong,
    Euler,
    EulerComposition,
    Kl,
    Invertibles,
    Connected,
    Points,
    Precohesive,
    Adjunction,
    Products,
    Components,
    Exponential,
    TDiscrete,
    Prop1,
    Prop1Converse,
    Units,
    Bidirectional,
    Prop2,
    Lemma,
    Prop2All,
    Prop2Internal,
}

impl CheckKind {
    pub const ALL: [CheckKind; 21] = [
        CheckKind::Prolong,
        CheckKind::Euler,
        CheckKind::EulerComposition,
        CheckKind::Kl,
        CheckKind::Invertibles,
        CheckKind::Connected,
        CheckKind::Points,
        CheckKind::Precohesive,
        CheckKind::Adjunction,
        CheckKind::Products,
        CheckKind::Components,
        CheckKind::Exponential,
        CheckKind::TDiscrete,
        CheckKind::Prop1,
        CheckKind::Prop1Converse,
        CheckKind::Units,
        CheckKind::Bidirectional,
        CheckKind::Prop2,
        CheckKind::Lemma,
        CheckKind::Prop2All,
        CheckKind::Prop2Internal,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            CheckKind::Prolong => "prolong",
            CheckKind::Euler => "euler",
            CheckKind::EulerComposition => "euler_composition",
            CheckKind::Kl => "kl",
            CheckKind::Invertibles => "invertibles",
            CheckKind::Connected => "connected",
            CheckKind::Points => "points",
            CheckKind::Precohesive => "precohesive",
            CheckKind::Adjunction => "adjunction",
            CheckKind::Products => "products",
            CheckKind::Components => "components",
            CheckKind::Exponential => "exponential",
            CheckKind::TDiscrete => "t_discrete",
            CheckKind::Prop1 => "prop1",
            CheckKind::Prop1Converse => "prop1_converse",
            CheckKind::Units => "units",
            CheckKind::Bidirectional => "bidirectional",
            CheckKind::Prop2 => "prop2",
            CheckKind::Lemma => "lemma",
            CheckKind::Prop2All => "prop2_all",
            CheckKind::Prop2Internal => "prop2_internal",
        }
    }

    /// Accepted kinds for each argument position.
    pub fn signature(self) -> &'static [&'static [Kind]] {
        use Kind::*;
        match self {
            CheckKind::Prolong => &[&[Algebra], &[Algebra]],
            CheckKind::Euler | CheckKind::EulerComposition => &[&[Scheme]],
            CheckKind::Kl => &[&[Ring, Algebra]],
            CheckKind::Invertibles => &[&[Ring]],
            CheckKind::Connected | CheckKind::Points => &[&[Algebra]],
            CheckKind::Precohesive | CheckKind::Adjunction | CheckKind::Products => &[&[Site]],
            CheckKind::Components => &[&[Presheaf]],
            CheckKind::Exponential => &[&[Presheaf], &[Presheaf, Pointed]],
            CheckKind::TDiscrete => &[&[Presheaf], &[Pointed]],
            CheckKind::Prop1 => &[&[Pointed], &[Presheaf]],
            CheckKind::Prop1Converse => &[&[Pointed]],
            CheckKind::Units | CheckKind::Bidirectional => &[&[Monoid]],
            CheckKind::Prop2 | CheckKind::Lemma => &[&[Subset]],
            CheckKind::Prop2All => &[&[Rig]],
            CheckKind::Prop2Internal => &[&[Monoid], &[Subset]],
        }
    }

    fn from_keyword(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.keyword() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expectation {
    /// The property is expected not to hold.
    Fails,
    /// The report text contains this string.
    Contains(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub kind: CheckKind,
    pub args: Vec<String>,
    pub expectations: Vec<Expectation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Define(Definition),
    Set(Setting),
    Check(Check),
}

/// A parsed scenario. Locations are kept beside the statements and ignored by `==`.
#[derive(Clone, Debug, Default)]
pub struct Scenario {
    pub statements: Vec<Statement>,
    pub locations: Vec<Location>,
}

impl PartialEq for Scenario {
    fn eq(&self, other: &Self) -> bool {
        self.statements == other.statements
    }
}

impl Eq for Scenario {}

impl Scenario {
    pub fn checks(&self) -> impl Iterator<Item = (&Check, Location)> {
        self.statements.iter().zip(&self.locations).filter_map(|(s, l)| match s {
            Statement::Check(c) => Some((c, *l)),
            _ => None,
        })
    }

    pub fn check_count(&self) -> usize {
        self.checks().count()
    }
}

pub const POINTED_FIXTURES: [&str; 2] = ["interval", "retract_line"];
pub const MONOID_FIXTURES: [&str; 1] = ["two_component_group"];
pub const SITE_CATALOG: [&str; 4] = ["point", "arrow", "retract", "reflexive_graph"];

pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let mut p = Parser { src: text, pos: 0, names: HashMap::new(), defined_vars: HashMap::new() };
    let mut scenario = Scenario::default();
    loop {
        p.skip_trivia();
        if p.at_end() {
            return Ok(scenario);
        }
        let location = p.location(p.pos);
        let statement = p.statement()?;
        scenario.statements.push(statement);
        scenario.locations.push(location);
    }
}

/// What the resolver knows about a defined name.
#[derive(Clone, Copy)]
struct Entry {
    kind: Kind,
    /// For rigs and subsets: whether the rig is the rational line.
    line: bool,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    names: HashMap<String, Entry>,
    /// Generator names of each algebra definition.
    defined_vars: HashMap<String, Vec<String>>,
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl<'a> Parser<'a> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn location(&self, offset: usize) -> Location {
        let before = &self.src[..offset];
        let line = before.matches('\n').count() + 1;
        let start = before.rfind('\n').map_or(0, |i| i + 1);
        Location { line, column: before[start..].chars().count() + 1 }
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else if c == '#' {
                self.pos = self.src[self.pos..].find('\n').map_or(self.src.len(), |i| self.pos + i);
            } else {
                break;
            }
        }
    }

    fn found(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(c) if is_word_char(c) => {
                let end = self.src[self.pos..].find(|c: char| !is_word_char(c)).map_or(self.src.len(), |i| self.pos + i);
                format!("`{}`", &self.src[self.pos..end])
            }
            Some(c) => format!("'{c}'"),
        }
    }

    fn error<T>(&self, expected: &[&str]) -> Result<T, ScenarioError> {
        Err(ScenarioError::Parse {
            location: self.location(self.pos),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.found(),
        })
    }

    fn lookahead(&mut self, s: &str) -> bool {
        self.skip_trivia();
        self.src[self.pos..].starts_with(s)
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.lookahead(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ScenarioError> {
        if self.eat(s) {
            Ok(())
        } else {
            self.error(&[&format!("'{s}'")])
        }
    }

    fn peek_word(&mut self) -> Option<&'a str> {
        self.skip_trivia();
        let rest = &self.src[self.pos..];
        let end = rest.find(|c: char| !is_word_char(c)).unwrap_or(rest.len());
        (end > 0).then(|| &rest[..end])
    }

    fn word(&mut self, what: &str) -> Result<String, ScenarioError> {
        match self.peek_word() {
            Some(w) => {
                self.pos += w.len();
                Ok(w.to_string())
            }
            None => self.error(&[what]),
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if self.peek_word() == Some(kw) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ScenarioError> {
        if self.keyword(kw) {
            Ok(())
        } else {
            self.error(&[&format!("`{kw}`")])
        }
    }

    fn uint<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, ScenarioError> {
        let start = self.pos;
        match self.peek_word().filter(|w| w.bytes().all(|b| b.is_ascii_digit())) {
            Some(w) => match w.parse() {
                Ok(v) => {
                    self.pos += w.len();
                    Ok(v)
                }
                Err(_) => {
                    self.pos = start;
                    self.error(&[what])
                }
            },
            None => self.error(&[what]),
        }
    }

    /// `-? digits (/ digits)?`, returned as text.
    fn rational(&mut self) -> Result<String, ScenarioError> {
        self.skip_trivia();
        let start = self.pos;
        let mut text = String::new();
        if self.eat("-") {
            text.push('-');
        }
        match self.peek_word().filter(|w| w.bytes().all(|b| b.is_ascii_digit())) {
            Some(w) => {
                text.push_str(w);
                self.pos += w.len();
            }
            None => return self.error(&["a rational number"]),
        }
        if self.eat("/") {
            let d: String = self.uint::<u64>("a denominator")?.to_string();
            if d == "0" {
                self.pos = start;
                return self.error(&["a nonzero denominator"]);
            }
            text.push('/');
            text.push_str(&d);
        }
        Ok(text)
    }

    fn string(&mut self) -> Result<String, ScenarioError> {
        self.expect("\"")?;
        let mut out = String::new();
        loop {
            match self.peek() {
                None => return self.error(&["'\"'"]),
                Some('"') => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some('\\') => {
                    self.pos += 1;
                    match self.peek() {
                        Some(c @ ('"' | '\\')) => {
                            out.push(c);
                            self.pos += 1;
                        }
                        _ => return self.error(&["'\\\"'", "'\\\\'"]),
                    }
                }
                Some(c) => {
                    out.push(c);
                    self.pos += c.len_utf8();
                }
            }
        }
    }

    /// Source text up to the next `,` or `)` outside parentheses, with its start offset.
    fn raw_item(&mut self) -> (usize, &'a str) {
        self.skip_trivia();
        let start = self.pos;
        let mut depth = 0usize;
        for (i, c) in self.src[start..].char_indices() {
            match c {
                '(' => depth += 1,
                ')' if depth == 0 => {
                    self.pos = start + i;
                    return (start, &self.src[start..start + i]);
                }
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    self.pos = start + i;
                    return (start, &self.src[start..start + i]);
                }
                '\n' | ';' | '}' if depth == 0 => {
                    self.pos = start + i;
                    return (start, &self.src[start..start + i]);
                }
                _ => {}
            }
        }
        self.pos = self.src.len();
        (start, &self.src[start..])
    }

    /// `( poly, … )` over the given variables.
    fn poly_list(&mut self, names: &[String]) -> Result<Vec<String>, ScenarioError> {
        self.expect("(")?;
        let v = vars(names);
        let mut out = Vec::new();
        loop {
            let (start, raw) = self.raw_item();
            let text = raw.trim_end();
            if let Err(e) = parse_polynomial(text, &v) {
                return Err(ScenarioError::Parse {
                    location: self.location(start + e.offset),
                    expected: e.expected,
                    found: e.found,
                });
            }
            out.push(text.to_string());
            if self.eat(")") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn word_list(&mut self, what: &str) -> Result<Vec<String>, ScenarioError> {
        let mut out = vec![self.word(what)?];
        while self.eat(",") {
            out.push(self.word(what)?);
        }
        Ok(out)
    }

    fn uint_list(&mut self) -> Result<Vec<usize>, ScenarioError> {
        self.expect("[")?;
        let mut out = Vec::new();
        if self.eat("]") {
            return Ok(out);
        }
        loop {
            out.push(self.uint("an element index")?);
            if self.eat("]") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn resolve(&mut self, accepted: &[Kind]) -> Result<String, ScenarioError> {
        let expected = accepted.iter().map(|k| format!("{} name", k.keyword())).collect::<Vec<_>>().join(" or ");
        self.skip_trivia();
        let start = self.pos;
        let name = self.word(&expected)?;
        match self.names.get(&name) {
            None => Err(ScenarioError::UnresolvedName { location: self.location(start), name, expected }),
            Some(e) if accepted.contains(&e.kind) => Ok(name),
            Some(e) => Err(ScenarioError::Parse {
                location: self.location(start),
                expected: vec![expected],
                found: format!("`{name}` ({})", e.kind.keyword()),
            }),
        }
    }

    fn statement(&mut self) -> Result<Statement, ScenarioError> {
        if self.keyword("set") {
            return self.setting().map(Statement::Set);
        }
        if self.keyword("check") {
            return self.check().map(Statement::Check);
        }
        let Some(kind) = Kind::ALL.into_iter().find(|k| self.keyword(k.keyword())) else {
            let mut expected: Vec<&str> = Kind::ALL.iter().map(|k| k.keyword()).collect();
            expected.extend(["set", "check"]);
            let quoted: Vec<String> = expected.iter().map(|k| format!("`{k}`")).collect();
            return self.error(&quoted.iter().map(String::as_str).collect::<Vec<_>>());
        };
        self.skip_trivia();
        let start = self.pos;
        let name = self.word("a name")?;
        if self.names.contains_key(&name) {
            self.pos = start;
            return self.error(&["a fresh name"]);
        }
        self.expect("=")?;
        let body = match kind {
            Kind::Algebra => self.algebra()?,
            Kind::Scheme => self.scheme()?,
            Kind::Ring => Body::Ring(self.ring()?),
            Kind::Site => Body::Site(self.site()?),
            Kind::Presheaf => Body::Presheaf(self.presheaf()?),
            Kind::Pointed => Body::Pointed(self.pointed()?),
            Kind::Monoid => Body::Monoid(self.monoid()?),
            Kind::Rig => Body::Rig(self.rig()?),
            Kind::Subset => self.subset()?,
        };
        let line = match &body {
            Body::Rig(RigBody::Line) => true,
            Body::Subset { rig, .. } => self.names[rig].line,
            _ => false,
        };
        if let Body::Algebra { vars, .. } = &body {
            self.defined_vars.insert(name.clone(), vars.clone());
        }
        self.names.insert(name.clone(), Entry { kind, line });
        Ok(Statement::Define(Definition { name, body }))
    }

    fn algebra(&mut self) -> Result<Body, ScenarioError> {
        self.expect_keyword("k")?;
        self.expect("[")?;
        let vars = if self.eat("]") {
            Vec::new()
        } else {
            let v = self.word_list("a variable name")?;
            self.expect("]")?;
            v
        };
        let relations = if self.eat("/") { self.poly_list(&vars)? } else { Vec::new() };
        Ok(Body::Algebra { vars, relations })
    }

    fn scheme(&mut self) -> Result<Body, ScenarioError> {
        self.expect_keyword("Spec")?;
        let algebra = self.resolve(&[Kind::Algebra])?;
        let point = if self.keyword("at") {
            self.expect("(")?;
            let mut values = Vec::new();
            if !self.eat(")") {
                loop {
                    values.push(self.rational()?);
                    if self.eat(")") {
                        break;
                    }
                    self.expect(",")?;
                }
            }
            Some(values)
        } else {
            None
        };
        Ok(Body::Scheme { algebra, point })
    }

    fn ring(&mut self) -> Result<RingBody, ScenarioError> {
        if self.keyword("line") {
            return Ok(RingBody::Line);
        }
        if !self.keyword("Spec") {
            return self.error(&["`line`", "`Spec`"]);
        }
        let algebra = self.resolve(&[Kind::Algebra])?;
        let gens = self.algebra_vars(&algebra);
        let square: Vec<String> = square_names(&gens);
        self.expect("{")?;
        let mut fields = RingFields::default();
        let mut seen = Vec::new();
        const FIELDS: [&str; 5] = ["add", "mul", "zero", "one", "neg"];
        while !self.eat("}") {
            let field = match self.peek_word().filter(|w| FIELDS.contains(w)) {
                Some(w) if !seen.contains(&w) => w,
                _ => {
                    let missing: Vec<String> =
                        FIELDS.iter().filter(|f| !seen.contains(f)).map(|f| format!("`{f}`")).collect();
                    let mut expected: Vec<&str> = missing.iter().map(String::as_str).collect();
                    if seen.len() == FIELDS.len() {
                        expected = vec!["'}'"];
                    }
                    return self.error(&expected);
                }
            };
            self.pos += field.len();
            seen.push(field);
            self.expect(":")?;
            let ring_vars: &[String] = match field {
                "add" | "mul" => &square,
                "zero" | "one" => &[],
                _ => &gens,
            };
            let list = self.poly_list(ring_vars)?;
            match field {
                "add" => fields.add = list,
                "mul" => fields.mul = list,
                "zero" => fields.zero = list,
                "one" => fields.one = list,
                _ => fields.neg = list,
            }
            if !self.eat(";") && !self.lookahead("}") {
                return self.error(&["';'", "'}'"]);
            }
        }
        if seen.len() < FIELDS.len() {
            self.pos -= 1;
            let missing: Vec<String> = FIELDS.iter().filter(|f| !seen.contains(f)).map(|f| format!("`{f}`")).collect();
            return self.error(&missing.iter().map(String::as_str).collect::<Vec<_>>());
        }
        Ok(RingBody::Spec { algebra, fields })
    }

    fn algebra_vars(&self, name: &str) -> Vec<String> {
        self.defined_vars.get(name).cloned().unwrap_or_default()
    }

    fn site(&mut self) -> Result<SiteBody, ScenarioError> {
        if !self.lookahead("{") {
            self.skip_trivia();
            let start = self.pos;
            let name = self.word("a catalog site")?;
            if !SITE_CATALOG.contains(&name.as_str()) {
                self.pos = start;
                let quoted: Vec<String> = SITE_CATALOG.iter().map(|s| format!("`{s}`")).collect();
                let mut expected: Vec<&str> = quoted.iter().map(String::as_str).collect();
                expected.push("'{'");
                return self.error(&expected);
            }
            return Ok(SiteBody::Catalog(name));
        }
        self.expect("{")?;
        self.expect_keyword("objects")?;
        self.expect(":")?;
        let objects = self.word_list("an object name")?;
        self.expect(";")?;
        let mut arrows = Vec::new();
        if self.keyword("arrows") {
            self.expect(":")?;
            loop {
                let name = self.word("an arrow name")?;
                self.expect(":")?;
                let dom = self.word("an object name")?;
                self.expect("->")?;
                let cod = self.word("an object name")?;
                arrows.push((name, dom, cod));
                if !self.eat(",") {
                    break;
                }
            }
            self.expect(";")?;
        }
        let mut composites = Vec::new();
        if self.keyword("composites") {
            self.expect(":")?;
            loop {
                let g = self.word("an arrow name")?;
                self.expect(".")?;
                let f = self.word("an arrow name")?;
                self.expect("=")?;
                let h = self.word("an arrow name")?;
                composites.push((g, f, h));
                if !self.eat(",") {
                    break;
                }
            }
            self.expect(";")?;
        }
        self.expect("}")?;
        Ok(SiteBody::Table { objects, arrows, composites })
    }

    fn presheaf(&mut self) -> Result<PresheafBody, ScenarioError> {
        if self.keyword("representable") {
            let site = self.resolve(&[Kind::Site])?;
            let object = self.word("an object name")?;
            return Ok(PresheafBody::Representable { site, object });
        }
        if self.keyword("terminal") {
            return Ok(PresheafBody::Terminal { site: self.resolve(&[Kind::Site])? });
        }
        if self.keyword("constant") {
            let site = self.resolve(&[Kind::Site])?;
            let size = self.uint("a set size")?;
            return Ok(PresheafBody::Constant { site, size });
        }
        let site = self.resolve(&[Kind::Site])?;
        self.expect("{")?;
        self.expect_keyword("sizes")?;
        self.expect(":")?;
        let mut sizes = Vec::new();
        loop {
            let object = self.word("an object name")?;
            self.expect("=")?;
            sizes.push((object, self.uint("a set size")?));
            if !self.eat(",") {
                break;
            }
        }
        self.expect(";")?;
        let mut maps = Vec::new();
        while self.keyword("map") {
            let arrow = self.word("an arrow name")?;
            self.expect(":")?;
            maps.push((arrow, self.uint_list()?));
            self.expect(";")?;
        }
        self.expect("}")?;
        Ok(PresheafBody::Table { site, sizes, maps })
    }

    fn pointed(&mut self) -> Result<PointedBody, ScenarioError> {
        for f in POINTED_FIXTURES {
            if self.keyword(f) {
                return Ok(PointedBody::Fixture(f.to_string()));
            }
        }
        if self.peek_word().is_none() {
            return self.error(&["`interval`", "`retract_line`", "presheaf name"]);
        }
        let presheaf = self.resolve(&[Kind::Presheaf])?;
        self.expect_keyword("at")?;
        let element = self.uint("an element index")?;
        Ok(PointedBody::At { presheaf, element })
    }

    fn monoid(&mut self) -> Result<MonoidBody, ScenarioError> {
        for f in MONOID_FIXTURES {
            if self.keyword(f) {
                return Ok(MonoidBody::Fixture(f.to_string()));
            }
        }
        if self.keyword("constant") {
            let site = self.resolve(&[Kind::Site])?;
            self.skip_trivia();
            let start = self.pos;
            let rig = self.resolve(&[Kind::Rig])?;
            if self.names[&rig].line {
                self.pos = start;
                return self.error(&["a finite rig name"]);
            }
            return Ok(MonoidBody::Constant { site, rig });
        }
        if self.keyword("boolean") {
            return Ok(MonoidBody::Boolean { site: self.resolve(&[Kind::Site])? });
        }
        self.error(&["`two_component_group`", "`constant`", "`boolean`"])
    }

    fn rig(&mut self) -> Result<RigBody, ScenarioError> {
        if self.keyword("Qline") {
            return Ok(RigBody::Line);
        }
        if !self.lookahead("{") {
            self.skip_trivia();
            let start = self.pos;
            let name = self.word("a catalog rig")?;
            if FiniteRig::catalog(&name).is_none() {
                self.pos = start;
                let mut expected: Vec<String> = FiniteRig::CATALOG.iter().map(|s| format!("`{s}`")).collect();
                expected.extend(["`Qline`".to_string(), "'{'".to_string()]);
                return self.error(&expected.iter().map(String::as_str).collect::<Vec<_>>());
            }
            return Ok(RigBody::Catalog(name));
        }
        self.expect("{")?;
        self.expect_keyword("elements")?;
        self.expect(":")?;
        let elements = self.word_list("an element label")?;
        self.expect(";")?;
        let table = |p: &mut Self, kw: &str| -> Result<Vec<Vec<String>>, ScenarioError> {
            p.expect_keyword(kw)?;
            p.expect(":")?;
            p.expect("[")?;
            let mut rows = Vec::new();
            loop {
                p.expect("[")?;
                rows.push(p.word_list("an element label")?);
                p.expect("]")?;
                if p.eat("]") {
                    break;
                }
                p.expect(",")?;
            }
            p.expect(";")?;
            Ok(rows)
        };
        let add = table(self, "add")?;
        let mul = table(self, "mul")?;
        self.expect_keyword("zero")?;
        self.expect(":")?;
        let zero = self.word("an element label")?;
        self.expect(";")?;
        self.expect_keyword("one")?;
        self.expect(":")?;
        let one = self.word("an element label")?;
        self.eat(";");
        self.expect("}")?;
        Ok(RigBody::Table { elements, add, mul, zero, one })
    }

    fn subset(&mut self) -> Result<Body, ScenarioError> {
        let rig = self.resolve(&[Kind::Rig])?;
        if !self.names[&rig].line {
            self.expect("{")?;
            let elements = if self.eat("}") {
                Vec::new()
            } else {
                let e = self.word_list("an element label")?;
                self.expect("}")?;
                e
            };
            return Ok(Body::Subset { rig, members: SubsetBody::Elements(elements) });
        }
        if self.keyword("empty") {
            return Ok(Body::Subset { rig, members: SubsetBody::Intervals(Vec::new()) });
        }
        let mut intervals = vec![self.interval()?];
        while self.eat("∪") || self.keyword("U") {
            intervals.push(self.interval()?);
        }
        Ok(Body::Subset { rig, members: SubsetBody::Intervals(intervals) })
    }

    fn bound(&mut self) -> Result<String, ScenarioError> {
        if self.keyword("inf") || self.eat("∞") {
            return Ok("inf".into());
        }
        if self.lookahead("-") {
            let save = self.pos;
            self.pos += 1;
            if self.keyword("inf") || self.eat("∞") {
                return Ok("-inf".into());
            }
            self.pos = save;
        }
        self.rational()
    }

    fn interval(&mut self) -> Result<IntervalLit, ScenarioError> {
        if self.eat("{") {
            let q = self.rational()?;
            self.expect("}")?;
            return Ok(IntervalLit { lo: q.clone(), lo_closed: true, hi: q, hi_closed: true });
        }
        let lo_closed = if self.eat("[") {
            true
        } else if self.eat("(") {
            false
        } else {
            return self.error(&["'('", "'['", "'{'", "`empty`"]);
        };
        let lo = self.bound()?;
        self.expect(",")?;
        let hi = self.bound()?;
        let hi_closed = if self.eat("]") {
            true
        } else if self.eat(")") {
            false
        } else {
            return self.error(&["')'", "']'"]);
        };
        Ok(IntervalLit { lo, lo_closed, hi, hi_closed })
    }

    fn setting(&mut self) -> Result<Setting, ScenarioError> {
        self.skip_trivia();
        let start = self.pos;
        let key = self.word("a setting name")?;
        self.expect("=")?;
        Ok(match key.as_str() {
            "max_enumeration" => Setting::MaxEnumeration(self.uint("a positive integer")?),
            "idempotent_degree_bound" => Setting::IdempotentDegreeBound(self.uint("a positive integer")?),
            "seed" => Setting::Seed(self.uint("an unsigned integer")?),
            "family_bound" => Setting::FamilyBound(self.uint("a positive integer")?),
            "oracle_samples" => Setting::OracleSamples(self.uint("an unsigned integer")?),
            "monomial_order" => {
                self.skip_trivia();
                let at = self.pos;
                let name = self.word("a monomial order")?;
                match MonomialOrder::from_name(&name) {
                    Some(o) => Setting::MonomialOrder(o),
                    None => {
                        self.pos = at;
                        return self.error(&["`grevlex`", "`deglex`", "`lex`"]);
                    }
                }
            }
            _ => {
                self.pos = start;
                let quoted: Vec<String> = Setting::KEYS.iter().map(|k| format!("`{k}`")).collect();
                return self.error(&quoted.iter().map(String::as_str).collect::<Vec<_>>());
            }
        })
    }

    fn check(&mut self) -> Result<Check, ScenarioError> {
        self.skip_trivia();
        let start = self.pos;
        let word = self.word("a check name")?;
        let Some(kind) = CheckKind::from_keyword(&word) else {
            self.pos = start;
            let quoted: Vec<String> = CheckKind::ALL.iter().map(|k| format!("`{}`", k.keyword())).collect();
            return self.error(&quoted.iter().map(String::as_str).collect::<Vec<_>>());
        };
        let mut args = Vec::new();
        for accepted in kind.signature() {
            args.push(self.resolve(accepted)?);
        }
        let mut expectations = Vec::new();
        while self.keyword("expect") {
            if self.keyword("fails") {
                expectations.push(Expectation::Fails);
            } else if self.lookahead("\"") {
                expectations.push(Expectation::Contains(self.string()?));
            } else {
                return self.error(&["`fails`", "a quoted string"]);
            }
        }
        Ok(Check { kind, args, expectations })
    }
}

/// Generator names of `A ⊗ A` as the engine assigns them.
pub fn square_names(gens: &[String]) -> Vec<String> {
    if gens.len() == 1 {
        return vec!["y".into(), "z".into()];
    }
    let (mut l, r): (Vec<String>, Vec<String>) =
        (gens.iter().map(|g| format!("{g}_1")).collect(), gens.iter().map(|g| format!("{g}_2")).collect());
    l.extend(r);
    l
}

fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn polys(items: &[String]) -> String {
    format!("({})", items.join(", "))
}

impl fmt::Display for IntervalLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi && self.lo_closed && self.hi_closed && !self.lo.ends_with("inf") {
            return write!(f, "{{{}}}", self.lo);
        }
        let open = if self.lo_closed { '[' } else { '(' };
        let close = if self.hi_closed { ']' } else { ')' };
        write!(f, "{open}{}, {}{close}", self.lo, self.hi)
    }
}

impl fmt::Display for Body {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Body::Algebra { vars, relations } => {
                write!(f, "k[{}]", vars.join(", "))?;
                if !relations.is_empty() {
                    write!(f, " / {}", polys(relations))?;
                }
                Ok(())
            }
            Body::Scheme { algebra, point } => {
                write!(f, "Spec {algebra}")?;
                if let Some(p) = point {
                    write!(f, " at {}", polys(p))?;
                }
                Ok(())
            }
            Body::Ring(RingBody::Line) => f.write_str("line"),
            Body::Ring(RingBody::Spec { algebra, fields }) => write!(
                f,
                "Spec {algebra} {{ add: {}; mul: {}; zero: {}; one: {}; neg: {} }}",
                polys(&fields.add),
                polys(&fields.mul),
                polys(&fields.zero),
                polys(&fields.one),
                polys(&fields.neg)
            ),
            Body::Site(SiteBody::Catalog(name)) => f.write_str(name),
            Body::Site(SiteBody::Table { objects, arrows, composites }) => {
                write!(f, "{{ objects: {};", objects.join(", "))?;
                if !arrows.is_empty() {
                    let a: Vec<String> = arrows.iter().map(|(n, d, c)| format!("{n}: {d} -> {c}")).collect();
                    write!(f, " arrows: {};", a.join(", "))?;
                }
                if !composites.is_empty() {
                    let c: Vec<String> = composites.iter().map(|(g, h, k)| format!("{g} . {h} = {k}")).collect();
                    write!(f, " composites: {};", c.join(", "))?;
                }
                f.write_str(" }")
            }
            Body::Presheaf(PresheafBody::Representable { site, object }) => write!(f, "representable {site} {object}"),
            Body::Presheaf(PresheafBody::Terminal { site }) => write!(f, "terminal {site}"),
            Body::Presheaf(PresheafBody::Constant { site, size }) => write!(f, "constant {site} {size}"),
            Body::Presheaf(PresheafBody::Table { site, sizes, maps }) => {
                let s: Vec<String> = sizes.iter().map(|(o, n)| format!("{o} = {n}")).collect();
                write!(f, "{site} {{ sizes: {};", s.join(", "))?;
                for (arrow, m) in maps {
                    write!(f, " map {arrow}: [{}];", join(m, ", "))?;
                }
                f.write_str(" }")
            }
            Body::Pointed(PointedBody::Fixture(name)) => f.write_str(name),
            Body::Pointed(PointedBody::At { presheaf, element }) => write!(f, "{presheaf} at {element}"),
            Body::Monoid(MonoidBody::Fixture(name)) => f.write_str(name),
            Body::Monoid(MonoidBody::Constant { site, rig }) => write!(f, "constant {site} {rig}"),
            Body::Monoid(MonoidBody::Boolean { site }) => write!(f, "boolean {site}"),
            Body::Rig(RigBody::Catalog(name)) => f.write_str(name),
            Body::Rig(RigBody::Line) => f.write_str("Qline"),
            Body::Rig(RigBody::Table { elements, add, mul, zero, one }) => {
                let table = |t: &[Vec<String>]| {
                    let rows: Vec<String> = t.iter().map(|r| format!("[{}]", r.join(", "))).collect();
                    format!("[{}]", rows.join(", "))
                };
                write!(
                    f,
                    "{{ elements: {}; add: {}; mul: {}; zero: {zero}; one: {one} }}",
                    elements.join(", "),
                    table(add),
                    table(mul)
                )
            }
            Body::Subset { rig, members: SubsetBody::Elements(e) } => write!(f, "{rig} {{{}}}", e.join(", ")),
            Body::Subset { rig, members: SubsetBody::Intervals(i) } if i.is_empty() => write!(f, "{rig} empty"),
            Body::Subset { rig, members: SubsetBody::Intervals(i) } => write!(f, "{rig} {}", join(i, " U ")),
        }
    }
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Setting::MaxEnumeration(n) => write!(f, "max_enumeration = {n}"),
            Setting::IdempotentDegreeBound(n) => write!(f, "idempotent_degree_bound = {n}"),
            Setting::MonomialOrder(o) => write!(f, "monomial_order = {}", o.name()),
            Setting::Seed(n) => write!(f, "seed = {n}"),
            Setting::FamilyBound(n) => write!(f, "family_bound = {n}"),
            Setting::OracleSamples(n) => write!(f, "oracle_samples = {n}"),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.keyword())?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        for e in &self.expectations {
            match e {
                Expectation::Fails => f.write_str(" expect fails")?,
                Expectation::Contains(s) => write!(f, " expect \"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Define(d) => write!(f, "{} {} = {}", d.kind().keyword(), d.name, d.body),
            Statement::Set(s) => write!(f, "set {s}"),
            Statement::Check(c) => write!(f, "check {c}"),
        }
    }
}

/// One statement per line; parsing the output yields an equal scenario.
impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
