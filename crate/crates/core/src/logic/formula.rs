use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A propositional formula over named atoms.
///
/// There is no implication connective; write `~u | v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String),
    Top,
    Bot,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    /// Atom names in order of first appearance (left to right).
    pub fn atoms(&self) -> Vec<&str> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.collect_atoms(&mut seen, &mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, seen: &mut BTreeSet<&'a str>, out: &mut Vec<&'a str>) {
        match self {
            Formula::Atom(name) => {
                if seen.insert(name) {
                    out.push(name);
                }
            }
            Formula::Top | Formula::Bot => {}
            Formula::Not(f) => f.collect_atoms(seen, out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_atoms(seen, out);
                b.collect_atoms(seen, out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => 0,
            Formula::Not(f) => 1 + f.depth(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => 1,
            Formula::Not(f) => 1 + f.node_count(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.node_count() + b.node_count(),
        }
    }

    /// Evaluates under a single valuation. Atoms missing from the valuation
    /// are an error.
    pub fn eval(&self, valuation: &Valuation) -> crate::Result<bool> {
        Ok(match self {
            Formula::Atom(name) => valuation
                .get(name)
                .ok_or_else(|| crate::Error::UnknownAtom(name.clone()))?,
            Formula::Top => true,
            Formula::Bot => false,
            Formula::Not(f) => !f.eval(valuation)?,
            Formula::And(a, b) => a.eval(valuation)? && b.eval(valuation)?,
            Formula::Or(a, b) => a.eval(valuation)? || b.eval(valuation)?,
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            Formula::Not(_) => 3,
            Formula::Atom(_) | Formula::Top | Formula::Bot => 4,
        }
    }
}

/// Truth assignment over a fixed atom set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Valuation {
    values: BTreeMap<String, bool>,
}

impl Valuation {
    /// The `index`-th valuation over `atoms`: atom `i` is true iff bit `i`
    /// of `index` is set.
    pub fn from_index(atoms: &[String], index: u64) -> Self {
        let values = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), (index >> i) & 1 == 1))
            .collect();
        Valuation { values }
    }

    pub fn get(&self, atom: &str) -> Option<bool> {
        self.values.get(atom).copied()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, c: &Formula, parens: bool) -> fmt::Result {
            if parens {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        }
        match self {
            Formula::Atom(name) => f.write_str(name),
            Formula::Top => f.write_str("true"),
            Formula::Bot => f.write_str("false"),
            Formula::Not(c) => {
                f.write_str("~")?;
                child(f, c, c.precedence() < 3)
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                let p = self.precedence();
                let op = if p == 2 { " & " } else { " | " };
                // left-associative: a right operand of equal precedence needs parens
                child(f, a, a.precedence() < p)?;
                f.write_str(op)?;
                child(f, b, b.precedence() <= p)
            }
        }
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_formula(&text).map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for Formula {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        super::parse_formula(s)
    }
}
