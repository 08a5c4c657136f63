use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::truth::{TruthTable, MAX_ATOMS};
use super::{is_identifier, Formula};
use crate::{Error, Result};

/// Short content hash identifying a universe (hex of the first 8 bytes of a
/// SHA-256 over atoms and formulas).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniverseHash(pub [u8; 8]);

impl UniverseHash {
    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }
}

impl std::fmt::Display for UniverseHash {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct UniverseOptions {
    /// Reject universes without a member equivalent to `true` and one
    /// equivalent to `false`.
    pub require_constants: bool,
}

impl Default for UniverseOptions {
    fn default() -> Self {
        UniverseOptions { require_constants: true }
    }
}

/// A finite ordered set of formulas with its cached entailment relation.
#[derive(Clone, Debug)]
pub struct Universe {
    atoms: Vec<String>,
    formulas: Vec<Formula>,
    tables: Vec<TruthTable>,
    entail: Vec<Vec<bool>>,
    hash: UniverseHash,
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        self.atoms == other.atoms && self.formulas == other.formulas
    }
}

impl Universe {
    pub fn new(atoms: Vec<String>, formulas: Vec<Formula>) -> Result<Self> {
        Self::with_options(atoms, formulas, UniverseOptions::default())
    }

    pub fn with_options(
        atoms: Vec<String>,
        formulas: Vec<Formula>,
        options: UniverseOptions,
    ) -> Result<Self> {
        if atoms.len() > MAX_ATOMS {
            return Err(Error::AtomLimit { count: atoms.len(), limit: MAX_ATOMS });
        }
        let mut seen_atoms = HashSet::new();
        for a in &atoms {
            if !is_identifier(a) {
                return Err(Error::InvalidUniverse(format!("`{a}` is not a valid atom name")));
            }
            if !seen_atoms.insert(a) {
                return Err(Error::InvalidUniverse(format!("duplicate atom `{a}`")));
            }
        }
        let mut seen = HashSet::new();
        for f in &formulas {
            if !seen.insert(f) {
                return Err(Error::InvalidUniverse(format!("duplicate formula `{f}`")));
            }
        }
        let tables = formulas
            .iter()
            .map(|f| TruthTable::of(f, &atoms))
            .collect::<Result<Vec<_>>>()?;
        if options.require_constants {
            if !tables.iter().any(TruthTable::is_valid) {
                return Err(Error::InvalidUniverse("no member equivalent to `true`".into()));
            }
            if !tables.iter().any(|t| !t.is_satisfiable()) {
                return Err(Error::InvalidUniverse("no member equivalent to `false`".into()));
            }
        }
        let entail = tables
            .iter()
            .map(|a| tables.iter().map(|b| a.implies(b)).collect())
            .collect();

        let mut hasher = Sha256::new();
        for a in &atoms {
            hasher.update(a.as_bytes());
            hasher.update(b"\x1f");
        }
        hasher.update(b"\x1e");
        for f in &formulas {
            hasher.update(f.to_string().as_bytes());
            hasher.update(b"\x1f");
        }
        let digest = hasher.finalize();
        let mut hash = [0u8; 8];
        hash.copy_from_slice(&digest[..8]);

        Ok(Universe { atoms, formulas, tables, entail, hash: UniverseHash(hash) })
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn hash(&self) -> UniverseHash {
        self.hash
    }

    pub fn index_of(&self, f: &Formula) -> Option<usize> {
        self.formulas.iter().position(|g| g == f)
    }

    /// Cached `formulas[i] ⊢ formulas[j]`.
    pub fn entails_at(&self, i: usize, j: usize) -> bool {
        self.entail[i][j]
    }

    pub fn is_satisfiable_at(&self, i: usize) -> bool {
        self.tables[i].is_satisfiable()
    }

    pub fn table(&self, f: &Formula) -> Result<TruthTable> {
        TruthTable::of(f, &self.atoms)
    }

    /// Indices of members entailing `u`. `u` need not be a member.
    pub fn down_set(&self, u: &Formula) -> Result<Vec<usize>> {
        let t = self.table(u)?;
        Ok(self.down_set_of_table(&t))
    }

    pub(crate) fn down_set_of_table(&self, t: &TruthTable) -> Vec<usize> {
        self.tables
            .iter()
            .enumerate()
            .filter(|(_, m)| m.implies(t))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn entails(&self, u: &Formula, v: &Formula) -> Result<bool> {
        Ok(self.table(u)?.implies(&self.table(v)?))
    }

    pub fn to_file(&self) -> UniverseFile {
        UniverseFile {
            atoms: self.atoms.clone(),
            formulas: self.formulas.iter().map(|f| f.to_string()).collect(),
        }
    }
}

/// On-disk universe: `{"atoms": [..], "formulas": ["p & q", ..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UniverseFile {
    pub atoms: Vec<String>,
    pub formulas: Vec<String>,
}

impl UniverseFile {
    pub fn into_universe(self) -> Result<Universe> {
        let formulas = self
            .formulas
            .iter()
            .map(|s| super::parse_formula(s))
            .collect::<Result<Vec<_>>>()?;
        Universe::new(self.atoms, formulas)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Overflow {
    Error,
    Truncate,
}

/// Builds a universe from `seeds` closed under `~`, `&`, `|` up to `depth`
/// rounds.
///
/// Generation order: `true`, `false`, the seeds, then one block per round.
/// A round first negates every existing formula in order, then for every
/// pair `i < j` of existing formulas adds `f_i & f_j` and `f_i | f_j`.
/// Syntactic duplicates are skipped. Atoms are taken from the seeds in order
/// of first appearance.
pub fn close_universe(
    seeds: &[Formula],
    depth: usize,
    cap: usize,
    overflow: Overflow,
) -> Result<Universe> {
    if cap < seeds.len() + 2 {
        return Err(Error::InvalidInput(format!(
            "cap {cap} is smaller than the {} seeds plus `true` and `false`",
            seeds.len()
        )));
    }
    let mut atoms: Vec<String> = Vec::new();
    for s in seeds {
        for a in s.atoms() {
            if !atoms.iter().any(|b| b == a) {
                atoms.push(a.to_string());
            }
        }
    }

    // `seen` covers everything emitted; `pool` is what rounds combine
    // (the seeds and their combinations, not the constants).
    let mut out = vec![Formula::Top, Formula::Bot];
    let mut seen: HashSet<Formula> = out.iter().cloned().collect();
    let mut pool: Vec<Formula> = Vec::new();
    let mut in_pool: HashSet<Formula> = HashSet::new();
    for s in seeds {
        if in_pool.insert(s.clone()) {
            pool.push(s.clone());
        }
        if seen.insert(s.clone()) {
            out.push(s.clone());
        }
    }
    for _ in 0..depth {
        let n = pool.len();
        let mut round = Vec::with_capacity(n + n * n.saturating_sub(1));
        round.extend(pool.iter().map(|f| Formula::not(f.clone())));
        for i in 0..n {
            for j in (i + 1)..n {
                round.push(Formula::and(pool[i].clone(), pool[j].clone()));
                round.push(Formula::or(pool[i].clone(), pool[j].clone()));
            }
        }
        for f in round {
            if in_pool.insert(f.clone()) {
                pool.push(f.clone());
            }
            if seen.insert(f.clone()) {
                out.push(f);
            }
        }
    }

    if out.len() > cap {
        match overflow {
            Overflow::Error => return Err(Error::CapExceeded { count: out.len(), cap }),
            Overflow::Truncate => out.truncate(cap),
        }
    }
    Universe::new(atoms, out)
}
