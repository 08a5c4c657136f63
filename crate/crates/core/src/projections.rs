//! Diagonal operators on the span of `{e_l : l in Λ}` and the projections
//! `P_u` onto the members entailing `u`.
//!
//! Every `P_u` is diagonal in the distinguished basis, so the algebra they
//! generate together with the identity is commutative and diagonal. An
//! operator is stored as its diagonal.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::logic::{Formula, Universe};
use crate::{Error, Result};

/// Absolute tolerance for comparing arithmetic combinations of projections.
pub const OPERATOR_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct DiagOperator {
    universe: Arc<Universe>,
    diag: Vec<f64>,
}

impl PartialEq for DiagOperator {
    fn eq(&self, other: &Self) -> bool {
        same_universe(&self.universe, &other.universe) && self.diag == other.diag
    }
}

pub(crate) fn same_universe(a: &Arc<Universe>, b: &Arc<Universe>) -> bool {
    Arc::ptr_eq(a, b) || (a.hash() == b.hash() && a.len() == b.len())
}

impl DiagOperator {
    pub fn from_diag(universe: Arc<Universe>, diag: Vec<f64>) -> Result<Self> {
        if diag.len() != universe.len() {
            return Err(Error::InvalidInput(format!(
                "diagonal has {} entries, universe has {}",
                diag.len(),
                universe.len()
            )));
        }
        Ok(DiagOperator { universe, diag })
    }

    pub fn zero(universe: Arc<Universe>) -> Self {
        let n = universe.len();
        DiagOperator { universe, diag: vec![0.0; n] }
    }

    pub fn identity(universe: Arc<Universe>) -> Self {
        let n = universe.len();
        DiagOperator { universe, diag: vec![1.0; n] }
    }

    /// The projection onto the basis vectors indexed by `members`.
    pub fn projection_onto(universe: Arc<Universe>, members: &[usize]) -> Self {
        let mut op = Self::zero(universe);
        for &i in members {
            op.diag[i] = 1.0;
        }
        op
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn is_projection(&self) -> bool {
        self.diag.iter().all(|&d| d == 0.0 || d == 1.0)
    }

    pub fn is_zero(&self) -> bool {
        self.diag.iter().all(|d| d.abs() < OPERATOR_TOL)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_universe(&self.universe, &other.universe) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.check(other)?;
        let diag = self.diag.iter().zip(&other.diag).map(|(&a, &b)| f(a, b)).collect();
        Ok(DiagOperator { universe: self.universe.clone(), diag })
    }

    /// Operator product; entry-wise since both operators are diagonal.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, alpha: f64) -> Self {
        DiagOperator {
            universe: self.universe.clone(),
            diag: self.diag.iter().map(|d| alpha * d).collect(),
        }
    }

    /// Lattice meet in the distinguished basis (entry-wise min).
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, f64::min)
    }

    /// Lattice join in the distinguished basis (entry-wise max).
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, f64::max)
    }

    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        Ok(self.diag.iter().zip(&other.diag).all(|(a, b)| a <= b))
    }

    /// Indices where the diagonals differ by more than `tol`.
    pub fn differences(&self, other: &Self, tol: f64) -> Result<BTreeSet<usize>> {
        self.check(other)?;
        Ok(self
            .diag
            .iter()
            .zip(&other.diag)
            .enumerate()
            .filter(|(_, (a, b))| (*a - *b).abs() > tol)
            .map(|(i, _)| i)
            .collect())
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.differences(other, tol).is_ok_and(|d| d.is_empty())
    }

    pub fn to_json(&self) -> DiagOperatorJson {
        DiagOperatorJson { universe_hash: self.universe.hash().to_hex(), diag: self.diag.clone() }
    }

    pub fn from_json(json: &DiagOperatorJson, universe: Arc<Universe>) -> Result<Self> {
        if json.universe_hash != universe.hash().to_hex() {
            return Err(Error::UniverseMismatch);
        }
        Self::from_diag(universe, json.diag.clone())
    }
}

/// Wire form: `{"universe_hash": hex, "diag": [..]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagOperatorJson {
    pub universe_hash: String,
    pub diag: Vec<f64>,
}

/// `P_u`, the projection onto the members of `universe` that entail `u`.
pub fn projection_of(u: &Formula, universe: &Arc<Universe>) -> Result<DiagOperator> {
    let members = universe.down_set(u)?;
    Ok(DiagOperator::projection_onto(universe.clone(), &members))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DisjunctionDefect {
    pub u: Formula,
    pub v: Formula,
    pub defects: BTreeSet<usize>,
}

/// Where the projection identities for conjunction, `true`, negation and
/// disjunction hold on a finite universe.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub conj_exact: bool,
    pub top_exact: bool,
    /// `u` → indices where `P_{~u}` and `1 - P_u + P_false` differ.
    pub neg_defects: BTreeMap<Formula, BTreeSet<usize>>,
    /// indices where `P_{u|v}` and `P_u + P_v - P_u P_v` differ.
    pub disj_defects: Vec<DisjunctionDefect>,
}

impl IdentityReport {
    pub fn exact_identities_hold(&self) -> bool {
        self.conj_exact && self.top_exact
    }
}

pub fn check_identities(
    universe: &Arc<Universe>,
    pairs: &[(Formula, Formula)],
) -> Result<IdentityReport> {
    let one = DiagOperator::identity(universe.clone());
    let p_bot = projection_of(&Formula::Bot, universe)?;
    let top_exact = projection_of(&Formula::Top, universe)? == one;

    let mut conj_exact = true;
    let mut neg_defects = BTreeMap::new();
    let mut disj_defects = Vec::with_capacity(pairs.len());
    for (u, v) in pairs {
        let pu = projection_of(u, universe)?;
        let pv = projection_of(v, universe)?;
        let puv = pu.compose(&pv)?;

        let p_and = projection_of(&Formula::and(u.clone(), v.clone()), universe)?;
        conj_exact &= p_and == puv;

        for (w, pw) in [(u, &pu), (v, &pv)] {
            if neg_defects.contains_key(w) {
                continue;
            }
            let p_not = projection_of(&Formula::not(w.clone()), universe)?;
            let rhs = one.sub(pw)?.add(&p_bot)?;
            neg_defects.insert(w.clone(), p_not.differences(&rhs, OPERATOR_TOL)?);
        }

        let p_or = projection_of(&Formula::or(u.clone(), v.clone()), universe)?;
        let rhs = pu.add(&pv)?.sub(&puv)?;
        disj_defects.push(DisjunctionDefect {
            u: u.clone(),
            v: v.clone(),
            defects: p_or.differences(&rhs, OPERATOR_TOL)?,
        });
    }
    Ok(IdentityReport { conj_exact, top_exact, neg_defects, disj_defects })
}

/// Every unordered pair of members, `(f_i, f_j)` with `i <= j`.
pub fn member_pairs(universe: &Universe) -> Vec<(Formula, Formula)> {
    let fs = universe.formulas();
    let mut out = Vec::new();
    for i in 0..fs.len() {
        for j in i..fs.len() {
            out.push((fs[i].clone(), fs[j].clone()));
        }
    }
    out
}
