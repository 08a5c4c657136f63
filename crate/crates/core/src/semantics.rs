//! From logical forms to context algebras: interpretation tables, the
//! sentence-level construction over a set of interpreted sentences, lexicons
//! of aspect weights, and composition of word meanings.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, Alphabet, Context, GeneralLanguage, Str, ZERO_TOL};
use crate::logic::{parse_formula, Formula, Universe};
use crate::projections::{projection_of, DiagOperator};
use crate::{Error, Result};

/// Operator-valued language over the aspect (or sentence) alphabet.
pub type OperatorLanguage = GeneralLanguage<DiagOperator>;

/// The table `ρ` from meaningful aspect strings to formulas.
#[derive(Clone, Debug)]
pub struct Interpretation {
    aspects: Alphabet,
    delta: BTreeMap<Str, Formula>,
    universe: Arc<Universe>,
}

impl Interpretation {
    pub fn new(
        aspects: Alphabet,
        delta: BTreeMap<Str, Formula>,
        universe: Arc<Universe>,
    ) -> Result<Self> {
        for a in aspects.names() {
            if universe.atoms().contains(a) {
                return Err(Error::NamespaceCollision(a.clone()));
            }
        }
        for (s, f) in &delta {
            if !aspects.contains(s) {
                return Err(Error::InvalidInput("aspect string outside the aspect alphabet".into()));
            }
            for atom in f.atoms() {
                if !universe.atoms().iter().any(|a| a == atom) {
                    return Err(Error::UnknownAtom(atom.to_string()));
                }
            }
        }
        Ok(Interpretation { aspects, delta, universe })
    }

    pub fn aspects(&self) -> &Alphabet {
        &self.aspects
    }

    pub fn delta(&self) -> &BTreeMap<Str, Formula> {
        &self.delta
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }
}

/// `{"aspects": [..], "delta": {"s1 s2": "p & q"}}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InterpretationFile {
    pub aspects: Vec<String>,
    pub delta: BTreeMap<String, String>,
}

impl InterpretationFile {
    pub fn into_interpretation(self, universe: Arc<Universe>) -> Result<Interpretation> {
        let aspects = Alphabet::new(self.aspects)?;
        let mut delta = BTreeMap::new();
        for (k, v) in &self.delta {
            let s = aspects.parse(k)?;
            if delta.insert(s, parse_formula(v)?).is_some() {
                return Err(Error::InvalidInput(format!("duplicate aspect string `{k}`")));
            }
        }
        Interpretation::new(aspects, delta, universe)
    }
}

/// `L(x) = P_{ρ(x)}` on `Δ`, zero elsewhere. Entries whose projection is
/// zero are omitted.
pub fn build_aspect_language(interp: &Interpretation) -> Result<OperatorLanguage> {
    let entries = interp
        .delta
        .iter()
        .map(|(s, f)| Ok((s.clone(), projection_of(f, &interp.universe)?)))
        .collect::<Result<Vec<_>>>()?;
    GeneralLanguage::new(interp.aspects.clone(), interp.universe.clone(), entries)
}

/// Interpreted sentences `Γ` with their formulas.
#[derive(Clone, Debug)]
pub struct GammaSpec {
    sentences: BTreeMap<Vec<String>, Formula>,
    boundary: Option<(String, String)>,
}

/// `{"sentences": {"<bos> the cat sleeps <eos>": "p"}, "boundary": ["<bos>", "<eos>"]}`;
/// `boundary` is optional.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GammaFile {
    pub sentences: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<(String, String)>,
}

impl GammaFile {
    pub fn into_spec(self) -> Result<GammaSpec> {
        let sentences = self
            .sentences
            .iter()
            .map(|(k, v)| Ok((k.split_whitespace().map(str::to_string).collect(), parse_formula(v)?)))
            .collect::<Result<Vec<_>>>()?;
        GammaSpec::new(sentences, self.boundary)
    }
}

impl GammaSpec {
    pub fn new(
        sentences: impl IntoIterator<Item = (Vec<String>, Formula)>,
        boundary: Option<(String, String)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (words, f) in sentences {
            if let Some((open, close)) = &boundary {
                let ok = words.len() >= 2 && words.first() == Some(open) && words.last() == Some(close);
                if !ok {
                    return Err(Error::InvalidInput(format!(
                        "sentence `{}` is not delimited by `{open}` ... `{close}`",
                        words.join(" ")
                    )));
                }
            }
            let text = words.join(" ");
            if map.insert(words, f).is_some() {
                return Err(Error::InvalidInput(format!("duplicate sentence `{text}`")));
            }
        }
        Ok(GammaSpec { sentences: map, boundary })
    }

    pub fn sentences(&self) -> &BTreeMap<Vec<String>, Formula> {
        &self.sentences
    }

    pub fn boundary(&self) -> Option<&(String, String)> {
        self.boundary.as_ref()
    }

    /// Pairs `(inner, outer)` where `inner` occurs contiguously inside the
    /// distinct sentence `outer`.
    pub fn substring_violations(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for inner in self.sentences.keys() {
            for outer in self.sentences.keys() {
                if inner != outer
                    && inner.len() <= outer.len()
                    && (inner.is_empty() || outer.windows(inner.len()).any(|w| w == &inner[..]))
                {
                    out.push((inner.join(" "), outer.join(" ")));
                }
            }
        }
        out
    }

    /// Word alphabet in order of first appearance over the sorted sentences.
    pub fn alphabet(&self) -> Result<Alphabet> {
        let mut seen = BTreeSet::new();
        let mut names = Vec::new();
        for w in self.sentences.keys().flatten() {
            if seen.insert(w.as_str()) {
                names.push(w.clone());
            }
        }
        Alphabet::new(names)
    }
}

#[derive(Clone, Debug)]
pub struct GammaLanguage {
    pub language: OperatorLanguage,
    /// Substring-freeness violations; when nonempty the order on context
    /// vectors need not mirror entailment.
    pub violations: Vec<(String, String)>,
}

/// `L(x) = P_{ρ(x)}` for `x ∈ Γ`, zero elsewhere.
pub fn build_gamma_language(spec: &GammaSpec, universe: &Arc<Universe>) -> Result<GammaLanguage> {
    let alphabet = spec.alphabet()?;
    for a in alphabet.names() {
        if universe.atoms().contains(a) {
            return Err(Error::NamespaceCollision(a.clone()));
        }
    }
    let mut entries = Vec::with_capacity(spec.sentences.len());
    for (words, f) in &spec.sentences {
        let s = alphabet.parse(&words.join(" "))?;
        entries.push((s, projection_of(f, universe)?));
    }
    let violations = spec.substring_violations();
    for (inner, outer) in &violations {
        log::warn!("`{inner}` is a substring of `{outer}`; order embedding not guaranteed");
    }
    let language = GeneralLanguage::new(alphabet, universe.clone(), entries)?;
    Ok(GammaLanguage { language, violations })
}

/// Word → sparse aspect weights `ψ(a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lexicon {
    words: BTreeMap<String, BTreeMap<String, f64>>,
    nonnegative: bool,
}

/// `{"words": {"bank": {"s_fin": 0.6, "s_riv": 0.4}}}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LexiconFile {
    pub words: BTreeMap<String, BTreeMap<String, f64>>,
}

impl LexiconFile {
    pub fn into_lexicon(self) -> Result<Lexicon> {
        Lexicon::new(self.words)
    }
}

impl Lexicon {
    pub fn new(words: BTreeMap<String, BTreeMap<String, f64>>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (w, weights) in words {
            if w.is_empty() || w.chars().any(char::is_whitespace) {
                return Err(Error::InvalidInput(format!("invalid word `{w}`")));
            }
            let mut kept = BTreeMap::new();
            for (s, v) in weights {
                if !v.is_finite() {
                    return Err(Error::InvalidInput(format!("non-finite weight for `{w}`/`{s}`")));
                }
                if v.abs() >= ZERO_TOL {
                    kept.insert(s, v);
                }
            }
            out.insert(w, kept);
        }
        let nonnegative = out.values().flat_map(|m| m.values()).all(|v| *v >= 0.0);
        Ok(Lexicon { words: out, nonnegative })
    }

    pub fn weights(&self, word: &str) -> Result<&BTreeMap<String, f64>> {
        self.words.get(word).ok_or_else(|| Error::UnknownWord(word.to_string()))
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.words.keys().map(String::as_str)
    }

    /// True iff every weight in the lexicon is `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.nonnegative
    }

    /// True iff every weight of the given words is `>= 0`.
    pub fn nonnegative_for<S: AsRef<str>>(&self, words: &[S]) -> Result<bool> {
        for w in words {
            if self.weights(w.as_ref())?.values().any(|v| *v < 0.0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Words, aspects and atoms must be pairwise distinct names.
    pub fn check_namespaces(&self, interp: &Interpretation) -> Result<()> {
        let aspects: BTreeSet<&str> = interp.aspects().names().iter().map(String::as_str).collect();
        let atoms: BTreeSet<&str> = interp.universe().atoms().iter().map(String::as_str).collect();
        for w in self.words.keys() {
            if aspects.contains(w.as_str()) || atoms.contains(w.as_str()) {
                return Err(Error::NamespaceCollision(w.clone()));
            }
        }
        Ok(())
    }
}

/// `ã = Σ_s ψ(a)_s ŝ`
pub fn word_vector(
    word: &str,
    lexicon: &Lexicon,
    language: &Arc<OperatorLanguage>,
) -> Result<AlgebraElement<DiagOperator>> {
    let weights = lexicon.weights(word)?;
    let alphabet = language.alphabet();
    let coeffs = weights
        .iter()
        .map(|(s, v)| Ok((Str::new(vec![alphabet.symbol(s)?]), *v)))
        .collect::<Result<Vec<_>>>()?;
    AlgebraElement::from_coeffs(language.clone(), coeffs)
}

/// `x̃ = x̃_1 · x̃_2 ⋯ x̃_n`, folded from the left.
pub fn sentence_vector<S: AsRef<str>>(
    words: &[S],
    lexicon: &Lexicon,
    language: &Arc<OperatorLanguage>,
) -> Result<AlgebraElement<DiagOperator>> {
    let (first, rest) = words
        .split_first()
        .ok_or_else(|| Error::InvalidInput("empty sentence".into()))?;
    let mut acc = word_vector(first.as_ref(), lexicon, language)?;
    for w in rest {
        acc = acc.multiply(&word_vector(w.as_ref(), lexicon, language)?)?;
    }
    Ok(acc)
}

/// The `(ε, ε)` component of an operator-valued element.
pub fn sentence_operator(x: &AlgebraElement<DiagOperator>) -> DiagOperator {
    x.function().value(&Context::empty())
}

/// Splits a sentence on whitespace.
pub fn words_of(sentence: &str) -> Vec<String> {
    sentence.split_whitespace().map(str::to_string).collect()
}
