//! Finite rigs given by tables, and subsets of their carriers.

use std::fmt;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RigError {
    #[error("rig law fails: {0}")]
    Law(String),
    #[error("{0} is not a ring: some element has no additive inverse")]
    NotARing(String),
    #[error("unknown catalog rig {0}")]
    Unknown(String),
    #[error("element {0} is outside the carrier")]
    OutOfRange(usize),
}

/// A finite commutative-addition rig with absorbing zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRig {
    name: String,
    labels: Vec<String>,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    zero: usize,
    one: usize,
}

impl FiniteRig {
    pub fn new(
        name: &str,
        labels: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<Self, RigError> {
        let n = labels.len();
        let law = |m: &str| Err(RigError::Law(format!("{name}: {m}")));
        let square = |t: &Vec<Vec<usize>>| t.len() == n && t.iter().all(|r| r.len() == n && r.iter().all(|&v| v < n));
        if !square(&add) || !square(&mul) || zero >= n || one >= n {
            return law("tables are not operations on the carrier");
        }
        for x in 0..n {
            if add[zero][x] != x {
                return law("0 is not an additive unit");
            }
            if mul[one][x] != x || mul[x][one] != x {
                return law("1 is not a multiplicative unit");
            }
            if mul[zero][x] != zero || mul[x][zero] != zero {
                return law("0 is not absorbing");
            }
            for y in 0..n {
                if add[x][y] != add[y][x] {
                    return law("addition is not commutative");
                }
                for z in 0..n {
                    if add[add[x][y]][z] != add[x][add[y][z]] {
                        return law("addition is not associative");
                    }
                    if mul[mul[x][y]][z] != mul[x][mul[y][z]] {
                        return law("multiplication is not associative");
                    }
                    if mul[x][add[y][z]] != add[mul[x][y]][mul[x][z]] || mul[add[y][z]][x] != add[mul[y][x]][mul[z][x]] {
                        return law("multiplication does not distribute");
                    }
                }
            }
        }
        Ok(FiniteRig { name: name.to_string(), labels, add, mul, zero, one })
    }

    /// `ℤ/n` with the usual operations.
    pub fn integers_mod(n: usize) -> Self {
        let t = |f: &dyn Fn(usize, usize) -> usize| (0..n).map(|x| (0..n).map(|y| f(x, y) % n).collect()).collect();
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::new(&format!("Z{n}"), labels, t(&|x, y| x + y), t(&|x, y| x * y), 0, 1 % n).expect("ℤ/n is a ring")
    }

    /// `{0, 1}` with `1 + 1 = 1`.
    pub fn boolean() -> Self {
        Self::new(
            "bool",
            vec!["0".into(), "1".into()],
            vec![vec![0, 1], vec![1, 1]],
            vec![vec![0, 0], vec![0, 1]],
            0,
            1,
        )
        .expect("the boolean rig")
    }

    /// Min-plus on `{∞, 0, 1}` with sums above 1 saturating to `∞`: the rig zero is `∞`,
    /// the rig one is `0`.
    pub fn minplus3() -> Self {
        // index 0 is ∞, index 1 is the value 0, index 2 is the value 1
        let value = |i: usize| if i == 0 { None } else { Some(i - 1) };
        let index = |v: Option<usize>| match v {
            Some(v) if v <= 1 => v + 1,
            _ => 0,
        };
        let min = |x: usize, y: usize| match (value(x), value(y)) {
            (None, b) => index(b),
            (a, None) => index(a),
            (Some(a), Some(b)) => index(Some(a.min(b))),
        };
        let plus = |x: usize, y: usize| match (value(x), value(y)) {
            (Some(a), Some(b)) => index(Some(a + b)),
            _ => 0,
        };
        let t = |f: &dyn Fn(usize, usize) -> usize| (0..3).map(|x| (0..3).map(|y| f(x, y)).collect()).collect();
        Self::new("minplus3", vec!["∞".into(), "0".into(), "1".into()], t(&min), t(&plus), 0, 1)
            .expect("saturated min-plus is a rig")
    }

    pub const CATALOG: [&'static str; 6] = ["Z2", "Z3", "Z4", "Z6", "bool", "minplus3"];

    pub fn catalog(name: &str) -> Option<Self> {
        match name {
            "Z2" => Some(Self::integers_mod(2)),
            "Z3" => Some(Self::integers_mod(3)),
            "Z4" => Some(Self::integers_mod(4)),
            "Z6" => Some(Self::integers_mod(6)),
            "bool" => Some(Self::boolean()),
            "minplus3" => Some(Self::minplus3()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x][y]
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x][y]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn neg(&self, x: usize) -> Option<usize> {
        (0..self.size()).find(|&y| self.add(x, y) == self.zero)
    }

    pub fn is_ring(&self) -> bool {
        (0..self.size()).all(|x| self.neg(x).is_some())
    }

    /// Every subset of the carrier, by bitmask order.
    pub fn all_subsets(&self) -> impl Iterator<Item = Subset> + '_ {
        let n = self.size();
        (0u64..1 << n).map(move |mask| Subset::from_fn(n, |x| mask >> x & 1 == 1))
    }
}

/// A subset of a finite carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    members: Vec<bool>,
}

impl Subset {
    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Self {
        Subset { members: (0..n).map(f).collect() }
    }

    pub fn from_elements(n: usize, elements: &[usize]) -> Result<Self, RigError> {
        let mut members = vec![false; n];
        for &e in elements {
            *members.get_mut(e).ok_or(RigError::OutOfRange(e))? = true;
        }
        Ok(Subset { members })
    }

    pub fn full(n: usize) -> Self {
        Self::from_fn(n, |_| true)
    }

    pub fn empty(n: usize) -> Self {
        Self::from_fn(n, |_| false)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members[x]
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i)
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.members.iter().zip(&other.members).all(|(&a, &b)| !a || b)
    }

    /// The first element outside `other`.
    pub fn first_outside(&self, other: &Subset) -> Option<usize> {
        self.elements().find(|&x| !other.contains(x))
    }

    pub fn display(&self, rig: &FiniteRig) -> String {
        format!("{{{}}}", self.elements().map(|x| rig.label(x).to_string()).collect::<Vec<_>>().join(", "))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.elements().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
    }
}
