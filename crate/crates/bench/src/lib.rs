//! Deterministic fixtures shared by the benchmarks.

use std::collections::BTreeMap;
use std::sync::Arc;

use contextalg_core::algebra::{Alphabet, GeneralLanguage, Str, Symbol};
use contextalg_core::logic::{close_universe, Formula, Overflow};
use contextalg_core::semantics::{build_aspect_language, InterpretationFile, OperatorLanguage};
use contextalg_core::{Distribution, Lexicon, Universe};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn universe(atoms: usize, cap: usize) -> Arc<Universe> {
    let seeds: Vec<Formula> = (0..atoms).map(|i| Formula::atom(format!("p{i}"))).collect();
    Arc::new(close_universe(&seeds, 2, cap, Overflow::Truncate).expect("valid seeds"))
}

/// Scalar language over `symbols` letters with `strings` random entries of
/// length up to `max_len`.
pub fn scalar_language(symbols: usize, strings: usize, max_len: usize, seed: u64) -> Arc<GeneralLanguage<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphabet = Alphabet::new((0..symbols).map(|i| format!("a{i}"))).expect("distinct names");
    let mut entries = BTreeMap::new();
    while entries.len() < strings {
        let len = rng.random_range(1..=max_len);
        let s = Str::new((0..len).map(|_| Symbol(rng.random_range(0..symbols) as u32)).collect());
        entries.insert(s, rng.random_range(0.5..2.0));
    }
    Arc::new(GeneralLanguage::new(alphabet, (), entries).expect("nonzero entries"))
}

pub struct Model {
    pub universe: Arc<Universe>,
    pub language: Arc<OperatorLanguage>,
    pub lexicon: Lexicon,
    pub dist: Distribution,
    pub words: Vec<String>,
}

/// Aspect model: every aspect string up to length 3 is interpreted as a
/// random member of a three-atom universe; words spread nonnegative weight
/// over a few aspects.
pub fn aspect_model(aspects: usize, words: usize, seed: u64) -> Model {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let universe = universe(3, 48);
    let names: Vec<String> = (0..aspects).map(|i| format!("s{i}")).collect();
    let mut strings: Vec<Vec<usize>> = vec![vec![]];
    let mut delta = BTreeMap::new();
    for _ in 0..3 {
        let mut next = Vec::new();
        for s in &strings {
            for a in 0..aspects {
                let mut t = s.clone();
                t.push(a);
                let text: Vec<&str> = t.iter().map(|i| names[*i].as_str()).collect();
                let member = &universe.formulas()[rng.random_range(0..universe.len())];
                delta.insert(text.join(" "), member.to_string());
                next.push(t);
            }
        }
        strings = next;
    }
    let interp = InterpretationFile { aspects: names.clone(), delta }
        .into_interpretation(universe.clone())
        .expect("valid interpretation");
    let language = Arc::new(build_aspect_language(&interp).expect("valid language"));

    let mut lex = BTreeMap::new();
    let word_names: Vec<String> = (0..words).map(|i| format!("w{i}")).collect();
    for w in &word_names {
        let weights = (0..3)
            .map(|_| (names[rng.random_range(0..aspects)].clone(), rng.random_range(0.1..1.0)))
            .collect();
        lex.insert(w.clone(), weights);
    }
    Model {
        dist: Distribution::uniform(universe.clone()).expect("nonempty universe"),
        universe,
        language,
        lexicon: Lexicon::new(lex).expect("valid lexicon"),
        words: word_names,
    }
}
