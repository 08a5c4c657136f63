use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::coefficient::{check_space, Coefficient};
use super::function::{ContextFunction, ZERO_TOL};
use super::{Alphabet, Context, Str};
use crate::{Error, Result};

/// A finitely supported map from strings to values in `W`.
#[derive(Clone, Debug)]
pub struct GeneralLanguage<W: Coefficient> {
    alphabet: Alphabet,
    space: W::Space,
    entries: BTreeMap<Str, W>,
    factors: BTreeSet<Str>,
    max_len: usize,
}

impl<W: Coefficient> GeneralLanguage<W> {
    pub fn new(
        alphabet: Alphabet,
        space: W::Space,
        entries: impl IntoIterator<Item = (Str, W)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Str, W> = BTreeMap::new();
        for (s, w) in entries {
            if !alphabet.contains(&s) {
                return Err(Error::InvalidInput("string uses a symbol outside the alphabet".into()));
            }
            check_space::<W>(&space, &w.space())?;
            if map.contains_key(&s) {
                return Err(Error::InvalidInput(format!(
                    "duplicate entry for `{}`",
                    alphabet.render(&s)
                )));
            }
            if w.max_abs() >= ZERO_TOL {
                map.insert(s, w);
            }
        }
        let factors = map.keys().flat_map(|s| s.factors()).collect();
        let max_len = map.keys().map(Str::len).max().unwrap_or(0);
        Ok(GeneralLanguage { alphabet, space, entries: map, factors, max_len })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn space(&self) -> &W::Space {
        &self.space
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Str, &W)> {
        self.entries.iter()
    }

    /// `L(s)`, zero outside the support.
    pub fn value(&self, s: &Str) -> W {
        self.entries.get(s).cloned().unwrap_or_else(|| W::zero(&self.space))
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// True iff the context vector of `x` is nonzero.
    pub fn is_factor(&self, x: &Str) -> bool {
        self.factors.contains(x)
    }

    fn check_str(&self, x: &Str) -> Result<()> {
        if self.alphabet.contains(x) {
            Ok(())
        } else {
            let bad = x
                .symbols()
                .iter()
                .find(|s| s.0 as usize >= self.alphabet.len())
                .map(|s| format!("#{}", s.0))
                .unwrap_or_default();
            Err(Error::ForeignSymbol(bad))
        }
    }

    /// `x̂(y, z) = L(y x z)`: one context per factorization of each support
    /// string around an occurrence of `x`.
    pub fn context_vector(&self, x: &Str) -> Result<ContextFunction<W>> {
        self.check_str(x)?;
        let mut f = ContextFunction::zero(self.space.clone());
        if !self.is_factor(x) {
            return Ok(f);
        }
        for (s, w) in &self.entries {
            for i in s.occurrences(x) {
                let c = Context::new(s.slice(0, i), s.slice(i + x.len(), s.len()));
                f.accumulate(c, w)?;
            }
        }
        f.prune();
        Ok(f)
    }

    /// Every string with a nonzero context vector: the factors of the
    /// support strings, shortest first then lexicographic.
    pub fn enumerate_nonzero_strings(&self) -> Vec<Str> {
        self.factors.iter().cloned().collect()
    }
}

/// Scalar language file: `{"alphabet": [..], "entries": {"a b": 1.0}}`.
/// Strings are space-separated symbols; `""` is the empty string.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LanguageFile {
    pub alphabet: Vec<String>,
    pub entries: BTreeMap<String, f64>,
}

impl LanguageFile {
    pub fn into_language(self) -> Result<GeneralLanguage<f64>> {
        let alphabet = Alphabet::new(self.alphabet)?;
        let mut entries = Vec::with_capacity(self.entries.len());
        for (text, v) in &self.entries {
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!("non-finite value for `{text}`")));
            }
            entries.push((alphabet.parse(text)?, *v));
        }
        GeneralLanguage::new(alphabet, (), entries)
    }
}
