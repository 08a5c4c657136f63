//! Independent oracles and random generators shared by the integration
//! tests. Nothing here goes through the bit-parallel truth tables or the
//! library's context-vector code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use contextalg_core::algebra::{AlgebraElement, Alphabet, Context, ContextFunction, GeneralLanguage, Str};
use contextalg_core::logic::{close_universe, Formula, Overflow, Universe, Valuation};
use contextalg_core::Coefficient;
use rand::seq::IndexedRandom;
use rand::Rng;

pub fn f(s: &str) -> Formula {
    contextalg_core::parse_formula(s).unwrap()
}

/// Entailment by evaluating both formulas on every valuation, one at a time.
pub fn naive_entails(u: &Formula, v: &Formula, atoms: &[String]) -> bool {
    (0..1u64 << atoms.len()).all(|j| {
        let val = Valuation::from_index(atoms, j);
        !u.eval(&val).unwrap() || v.eval(&val).unwrap()
    })
}

pub fn naive_satisfiable(u: &Formula, atoms: &[String]) -> bool {
    (0..1u64 << atoms.len()).any(|j| u.eval(&Valuation::from_index(atoms, j)).unwrap())
}

pub fn atom_names(n: usize) -> Vec<String> {
    ["p", "q", "r", "s", "t", "u"][..n].iter().map(|s| s.to_string()).collect()
}

pub fn random_formula<R: Rng>(rng: &mut R, atoms: &[String], depth: usize) -> Formula {
    if depth == 0 || rng.random_bool(0.3) {
        return match rng.random_range(0..10) {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => Formula::atom(atoms[rng.random_range(0..atoms.len())].clone()),
        };
    }
    match rng.random_range(0..3) {
        0 => Formula::not(random_formula(rng, atoms, depth - 1)),
        1 => Formula::and(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1)),
        _ => Formula::or(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1)),
    }
}

/// A universe of at most `cap` formulas closed from 1..=4 atoms and maybe an
/// extra random seed.
pub fn random_universe<R: Rng>(rng: &mut R, cap: usize) -> Arc<Universe> {
    let n = rng.random_range(1..=4);
    let atoms = atom_names(n);
    let mut seeds: Vec<Formula> = atoms.iter().map(|a| Formula::atom(a.clone())).collect();
    if rng.random_bool(0.5) {
        let extra = random_formula(rng, &atoms, 2);
        if !extra.atoms().is_empty() && !seeds.contains(&extra) {
            seeds.push(extra);
        }
    }
    let depth = rng.random_range(1..=2);
    let u = close_universe(&seeds, depth, cap.max(seeds.len() + 2), Overflow::Truncate).unwrap();
    Arc::new(u)
}

/// Scalar language: alphabet of 1..=3 symbols, 1..=6 support strings of
/// length 0..=4, values in [-2, 2].
pub fn random_language<R: Rng>(rng: &mut R) -> Arc<GeneralLanguage<f64>> {
    let k = rng.random_range(1..=3);
    let alphabet = Alphabet::new(["a", "b", "c"][..k].iter().copied()).unwrap();
    let mut entries = BTreeMap::new();
    for _ in 0..rng.random_range(1..=6) {
        let len = rng.random_range(0..=4);
        let s = Str::new((0..len).map(|_| contextalg_core::algebra::Symbol(rng.random_range(0..k) as u32)).collect());
        let v: f64 = rng.random_range(-2.0..2.0);
        entries.insert(s, v);
    }
    Arc::new(GeneralLanguage::new(alphabet, (), entries).unwrap())
}

/// Random combination over a few of the language's nonzero strings (and
/// occasionally a string whose context vector is zero).
pub fn random_element<R: Rng>(rng: &mut R, l: &Arc<GeneralLanguage<f64>>) -> AlgebraElement<f64> {
    let strings = l.enumerate_nonzero_strings();
    let mut coeffs = Vec::new();
    for _ in 0..rng.random_range(1..=4) {
        if strings.is_empty() || rng.random_bool(0.1) {
            let len = rng.random_range(0..=3);
            let s = Str::new((0..len).map(|_| contextalg_core::algebra::Symbol(rng.random_range(0..l.alphabet().len()) as u32)).collect());
            coeffs.push((s, rng.random_range(-2.0..2.0)));
        } else {
            let s = strings.choose(rng).unwrap().clone();
            coeffs.push((s, rng.random_range(-2.0..2.0)));
        }
    }
    AlgebraElement::from_coeffs(l.clone(), coeffs).unwrap()
}

/// `x̂` straight from the definition: every split `s = y x z` of every
/// support string.
pub fn naive_context_vector<W: Coefficient>(l: &GeneralLanguage<W>, x: &Str) -> BTreeMap<Context, W> {
    let mut out: BTreeMap<Context, W> = BTreeMap::new();
    for (s, w) in l.entries() {
        let sym = s.symbols();
        for i in 0..=sym.len() {
            for j in i..=sym.len() {
                if sym[i..j] == *x.symbols() {
                    let c = Context::new(s.slice(0, i), s.slice(j, sym.len()));
                    let v = match out.remove(&c) {
                        Some(prev) => prev.add(w).unwrap(),
                        None => w.clone(),
                    };
                    out.insert(c, v);
                }
            }
        }
    }
    out
}

pub fn function_from_map<W: Coefficient>(space: W::Space, m: BTreeMap<Context, W>) -> ContextFunction<W> {
    ContextFunction::from_entries(space, m).unwrap()
}

pub fn index_set(it: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
    it.into_iter().collect()
}
