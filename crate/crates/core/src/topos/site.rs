//! Finite categories given by explicit composition tables.

use std::collections::HashMap;
use std::fmt;

use super::ToposError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A finite category. Arrow `i` is `arrows[i]`; identities are named `id_<object>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    name: String,
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    /// `comp[g][f] = g ∘ f` whenever `cod f = dom g`.
    comp: Vec<Vec<Option<usize>>>,
    /// `hom[a][b]`: arrows `a → b`, ascending.
    hom: Vec<Vec<Vec<usize>>>,
    /// Position of each arrow inside its hom-set.
    hom_pos: Vec<usize>,
    terminal: Option<usize>,
}

impl FinCat {
    /// Builds and validates a category from non-identity arrows `(name, dom, cod)`
    /// and composites `(g, f, g∘f)`. Composites with identities are implied.
    pub fn new(
        name: &str,
        objects: &[&str],
        arrows: &[(&str, &str, &str)],
        composites: &[(&str, &str, &str)],
    ) -> Result<Self, ToposError> {
        let bad = |m: String| ToposError::InvalidSite(format!("{name}: {m}"));
        let mut obj_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if obj_index.insert(o.to_string(), i).is_some() {
                return Err(bad(format!("duplicate object {o}")));
            }
        }
        let mut all: Vec<Arrow> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| Arrow { name: format!("id_{o}"), dom: i, cod: i })
            .collect();
        let identities: Vec<usize> = (0..objects.len()).collect();
        for (n, d, c) in arrows {
            let dom = *obj_index.get(*d).ok_or_else(|| bad(format!("unknown object {d}")))?;
            let cod = *obj_index.get(*c).ok_or_else(|| bad(format!("unknown object {c}")))?;
            all.push(Arrow { name: n.to_string(), dom, cod });
        }
        let mut arrow_index = HashMap::new();
        for (i, a) in all.iter().enumerate() {
            if arrow_index.insert(a.name.clone(), i).is_some() {
                return Err(bad(format!("duplicate arrow {}", a.name)));
            }
        }
        let n = all.len();
        let mut comp = vec![vec![None; n]; n];
        for f in 0..n {
            comp[identities[all[f].cod]][f] = Some(f);
            comp[f][identities[all[f].dom]] = Some(f);
        }
        for (g, f, h) in composites {
            let look = |s: &str| arrow_index.get(s).copied().ok_or_else(|| bad(format!("unknown arrow {s}")));
            let (g, f, h) = (look(g)?, look(f)?, look(h)?);
            if all[f].cod != all[g].dom {
                return Err(bad(format!("{} ∘ {} is not composable", all[g].name, all[f].name)));
            }
            if all[h].dom != all[f].dom || all[h].cod != all[g].cod {
                return Err(bad(format!("{} has the wrong type for {} ∘ {}", all[h].name, all[g].name, all[f].name)));
            }
            if comp[g][f].is_some_and(|old| old != h) {
                return Err(bad(format!("conflicting composite for {} ∘ {}", all[g].name, all[f].name)));
            }
            comp[g][f] = Some(h);
        }
        for g in 0..n {
            for f in 0..n {
                if all[f].cod == all[g].dom && comp[g][f].is_none() {
                    return Err(bad(format!("missing composite {} ∘ {}", all[g].name, all[f].name)));
                }
            }
        }
        for h in 0..n {
            for g in 0..n {
                if all[g].cod != all[h].dom {
                    continue;
                }
                for f in 0..n {
                    if all[f].cod != all[g].dom {
                        continue;
                    }
                    let left = comp[comp[h][g].unwrap()][f];
                    let right = comp[h][comp[g][f].unwrap()];
                    if left != right {
                        return Err(bad(format!(
                            "composition is not associative at {}, {}, {}",
                            all[h].name, all[g].name, all[f].name
                        )));
                    }
                }
            }
        }
        let k = objects.len();
        let mut hom = vec![vec![Vec::new(); k]; k];
        let mut hom_pos = vec![0; n];
        for (i, a) in all.iter().enumerate() {
            hom_pos[i] = hom[a.dom][a.cod].len();
            hom[a.dom][a.cod].push(i);
        }
        let terminal = (0..k).find(|&t| (0..k).all(|a| hom[a][t].len() == 1));
        Ok(FinCat {
            name: name.to_string(),
            objects: objects.iter().map(|s| s.to_string()).collect(),
            arrows: all,
            identities,
            comp,
            hom,
            hom_pos,
            terminal,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrow(&self, f: usize) -> &Arrow {
        &self.arrows[f]
    }

    pub fn identity(&self, c: usize) -> usize {
        self.identities[c]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.arrows[f].dom] == f
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.comp[g][f].expect("composing non-composable arrows")
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a][b]
    }

    /// Index of `f` inside `hom(dom f, cod f)`, i.e. as an element of `y(cod f)(dom f)`.
    pub fn hom_position(&self, f: usize) -> usize {
        self.hom_pos[f]
    }

    /// An object with exactly one arrow from every object.
    pub fn terminal(&self) -> Option<usize> {
        self.terminal
    }

    /// The unique arrow `c → 1`.
    pub fn to_terminal(&self, c: usize) -> Option<usize> {
        self.terminal.map(|t| self.hom[c][t][0])
    }

    /// Arrows `1 → c`.
    pub fn points(&self, c: usize) -> &[usize] {
        match self.terminal {
            Some(t) => &self.hom[t][c],
            None => &[],
        }
    }

    /// The one-object, one-arrow category.
    pub fn point() -> Self {
        Self::new("point", &["1"], &[], &[]).expect("valid site")
    }

    /// `0 → 1`: terminal `1`, but `0` has no point.
    pub fn arrow_category() -> Self {
        Self::new("arrow", &["0", "1"], &[("u", "0", "1")], &[]).expect("valid site")
    }

    /// `1 ⇄ c` with `p ∘ s = id`, and the idempotent `e = s ∘ p`.
    pub fn retract() -> Self {
        Self::new(
            "retract",
            &["1", "c"],
            &[("s", "1", "c"), ("p", "c", "1"), ("e", "c", "c")],
            &[("p", "s", "id_1"), ("s", "p", "e"), ("e", "e", "e"), ("p", "e", "p"), ("e", "s", "s")],
        )
        .expect("valid site")
    }

    /// Reflexive graphs: vertex `V`, edge `E`, source and target `s, t : V → E`,
    /// degeneracy `r : E → V`.
    pub fn reflexive_graph() -> Self {
        Self::new(
            "reflexive_graph",
            &["V", "E"],
            &[("s", "V", "E"), ("t", "V", "E"), ("r", "E", "V"), ("sr", "E", "E"), ("tr", "E", "E")],
            &[
                ("r", "s", "id_V"),
                ("r", "t", "id_V"),
                ("s", "r", "sr"),
                ("t", "r", "tr"),
                ("sr", "s", "s"),
                ("sr", "t", "s"),
                ("tr", "s", "t"),
                ("tr", "t", "t"),
                ("r", "sr", "r"),
                ("r", "tr", "r"),
                ("sr", "sr", "sr"),
                ("sr", "tr", "sr"),
                ("tr", "sr", "tr"),
                ("tr", "tr", "tr"),
            ],
        )
        .expect("valid site")
    }

    /// Catalogued sites by name.
    pub fn catalog(name: &str) -> Option<Self> {
        match name {
            "point" => Some(Self::point()),
            "arrow" => Some(Self::arrow_category()),
            "retract" => Some(Self::retract()),
            "reflexive_graph" => Some(Self::reflexive_graph()),
            _ => None,
        }
    }

    pub const CATALOG: [&'static str; 4] = ["point", "arrow", "retract", "reflexive_graph"];
}

impl fmt::Display for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} objects, {} arrows)", self.name, self.objects.len(), self.arrows.len())
    }
}
