//! Bit-parallel truth tables: the entailment oracle.
//!
//! Row `j` of a table over atoms `a_0..a_{n-1}` is the valuation where `a_i`
//! is true iff bit `i` of `j` is set (same numbering as
//! [`Valuation::from_index`](super::Valuation::from_index)).

use super::Formula;
use crate::{Error, Result};

/// Exhaustive tables are limited to this many atoms (2^20 rows).
pub const MAX_ATOMS: usize = 20;

const ATOM_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruthTable {
    words: Vec<u64>,
    last_mask: u64,
}

impl TruthTable {
    pub fn of(formula: &Formula, atoms: &[String]) -> Result<Self> {
        if atoms.len() > MAX_ATOMS {
            return Err(Error::AtomLimit { count: atoms.len(), limit: MAX_ATOMS });
        }
        let rows = 1usize << atoms.len();
        let n_words = rows.div_ceil(64);
        let last_mask = if rows >= 64 { u64::MAX } else { (1u64 << rows) - 1 };
        let shape = Shape { n_words, last_mask };
        Ok(TruthTable { words: shape.eval(formula, atoms)?, last_mask })
    }

    pub fn rows(&self) -> usize {
        if self.last_mask == u64::MAX {
            self.words.len() * 64
        } else {
            self.last_mask.count_ones() as usize
        }
    }

    pub fn is_satisfiable(&self) -> bool {
        self.words.iter().any(|w| *w != 0)
    }

    pub fn is_valid(&self) -> bool {
        let n = self.words.len();
        self.words[..n - 1].iter().all(|w| *w == u64::MAX) && self.words[n - 1] == self.last_mask
    }

    /// Every row satisfying `self` satisfies `other`.
    pub fn implies(&self, other: &TruthTable) -> bool {
        debug_assert_eq!(self.words.len(), other.words.len());
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn row(&self, index: usize) -> bool {
        (self.words[index / 64] >> (index % 64)) & 1 == 1
    }
}

struct Shape {
    n_words: usize,
    last_mask: u64,
}

impl Shape {
    fn mask(&self, words: &mut [u64]) {
        if let Some(last) = words.last_mut() {
            *last &= self.last_mask;
        }
    }

    fn eval(&self, f: &Formula, atoms: &[String]) -> Result<Vec<u64>> {
        let mut out = match f {
            Formula::Top => vec![u64::MAX; self.n_words],
            Formula::Bot => vec![0; self.n_words],
            Formula::Atom(name) => {
                let i = atoms
                    .iter()
                    .position(|a| a == name)
                    .ok_or_else(|| Error::UnknownAtom(name.clone()))?;
                (0..self.n_words)
                    .map(|w| {
                        if i < 6 {
                            ATOM_PATTERNS[i]
                        } else if (w >> (i - 6)) & 1 == 1 {
                            u64::MAX
                        } else {
                            0
                        }
                    })
                    .collect()
            }
            Formula::Not(c) => self.eval(c, atoms)?.into_iter().map(|w| !w).collect(),
            Formula::And(a, b) => {
                let mut x = self.eval(a, atoms)?;
                for (l, r) in x.iter_mut().zip(self.eval(b, atoms)?) {
                    *l &= r;
                }
                x
            }
            Formula::Or(a, b) => {
                let mut x = self.eval(a, atoms)?;
                for (l, r) in x.iter_mut().zip(self.eval(b, atoms)?) {
                    *l |= r;
                }
                x
            }
        };
        self.mask(&mut out);
        Ok(out)
    }
}

/// Classical consequence: every valuation of `atoms` satisfying `u` satisfies `v`.
pub fn entails(u: &Formula, v: &Formula, atoms: &[String]) -> Result<bool> {
    Ok(TruthTable::of(u, atoms)?.implies(&TruthTable::of(v, atoms)?))
}

pub fn equivalent(u: &Formula, v: &Formula, atoms: &[String]) -> Result<bool> {
    let tu = TruthTable::of(u, atoms)?;
    let tv = TruthTable::of(v, atoms)?;
    Ok(tu == tv)
}
