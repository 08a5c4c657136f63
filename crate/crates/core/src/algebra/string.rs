use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u32);

/// A string over an alphabet. Ordered by length, then lexicographically by
/// symbol (symbols compare in alphabet declaration order).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Str(Vec<Symbol>);

impl Str {
    pub fn empty() -> Self {
        Str(Vec::new())
    }

    pub fn new(symbols: Vec<Symbol>) -> Self {
        Str(symbols)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Str) -> Str {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Str(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Str {
        Str(self.0[start..end].to_vec())
    }

    /// Start positions of every (possibly overlapping) occurrence of `x`.
    pub fn occurrences<'a>(&'a self, x: &'a Str) -> impl Iterator<Item = usize> + 'a {
        let n = self.len();
        let m = x.len();
        (0..=n.saturating_sub(m))
            .filter(move |&i| m <= n && self.0[i..i + m] == x.0[..])
    }

    /// Every contiguous factor, the empty string included.
    pub fn factors(&self) -> impl Iterator<Item = Str> + '_ {
        let n = self.len();
        (0..=n).flat_map(move |i| (i..=n).map(move |j| self.slice(i, j)))
    }
}

impl Ord for Str {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Str {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The pair of strings surrounding an occurrence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Context {
    pub left: Str,
    pub right: Str,
}

impl Context {
    pub fn new(left: Str, right: Str) -> Self {
        Context { left, right }
    }

    /// `(ε, ε)`
    pub fn empty() -> Self {
        Context::default()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }
}

/// A finite alphabet. Symbols are nonempty tokens without whitespace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out = Alphabet { names: Vec::new(), index: HashMap::new() };
        for name in names {
            let name = name.into();
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::InvalidInput(format!("invalid symbol `{name}`")));
            }
            if out.index.contains_key(&name) {
                return Err(Error::InvalidInput(format!("duplicate symbol `{name}`")));
            }
            out.index.insert(name.clone(), Symbol(out.names.len() as u32));
            out.names.push(name);
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn symbol(&self, name: &str) -> Result<Symbol> {
        self.index.get(name).copied().ok_or_else(|| Error::ForeignSymbol(name.to_string()))
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.names[s.0 as usize]
    }

    pub fn contains(&self, s: &Str) -> bool {
        s.symbols().iter().all(|x| (x.0 as usize) < self.names.len())
    }

    /// Parses space-separated symbols; the empty text is `ε`.
    pub fn parse(&self, text: &str) -> Result<Str> {
        text.split_whitespace().map(|t| self.symbol(t)).collect::<Result<Vec<_>>>().map(Str)
    }

    pub fn render(&self, s: &Str) -> String {
        Rendered(self, s).to_string()
    }
}

struct Rendered<'a>(&'a Alphabet, &'a Str);

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.1.symbols().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.0.name(*s))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn parse_and_render() {
        let al = ab();
        let s = al.parse("a b  a").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(al.render(&s), "a b a");
        assert_eq!(al.parse("").unwrap(), Str::empty());
        assert_eq!(al.parse("a c"), Err(Error::ForeignSymbol("c".into())));
    }

    #[test]
    fn length_then_lex_order() {
        let al = ab();
        let mut v: Vec<Str> = ["a b", "b", "", "a a", "a"].iter().map(|t| al.parse(t).unwrap()).collect();
        v.sort();
        let r: Vec<String> = v.iter().map(|s| al.render(s)).collect();
        assert_eq!(r, vec!["", "a", "b", "a a", "a b"]);
    }

    #[test]
    fn overlapping_occurrences() {
        let al = ab();
        let s = al.parse("a a a").unwrap();
        let x = al.parse("a a").unwrap();
        assert_eq!(s.occurrences(&x).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(s.occurrences(&Str::empty()).count(), 4);
        let long = al.parse("a a a a").unwrap();
        assert_eq!(s.occurrences(&long).count(), 0);
    }

    #[test]
    fn factors_include_empty() {
        let al = ab();
        let s = al.parse("a b").unwrap();
        let mut f: Vec<String> = s.factors().map(|x| al.render(&x)).collect();
        f.sort();
        f.dedup();
        assert_eq!(f, vec!["", "a", "a b", "b"]);
    }

    #[test]
    fn bad_alphabets() {
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new([""]).is_err());
        assert!(Alphabet::new(["a b"]).is_err());
        assert!(Alphabet::new(["<bos>"]).is_ok());
    }
}
