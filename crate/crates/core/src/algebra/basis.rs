//! String bases for the generated algebra, by greedy Gaussian elimination
//! over the flattened index (context, value component).

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::coefficient::Coefficient;
use super::element::AlgebraElement;
use super::function::ContextFunction;
use super::{Context, GeneralLanguage, Str};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasisOptions {
    /// A candidate joins the basis when its residual exceeds this fraction
    /// of its own largest entry.
    pub pivot_tol: f64,
    /// Largest absolute residual accepted by [`Basis::expand`].
    pub residual_tol: f64,
}

impl Default for BasisOptions {
    fn default() -> Self {
        BasisOptions { pivot_tol: 1e-9, residual_tol: 1e-8 }
    }
}

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    /// Reduced vector, 1 at `pivot`, 0 at the pivots of earlier rows.
    values: Vec<f64>,
    /// This row as a combination of `strings[..=k]`.
    combo: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct Basis<W: Coefficient> {
    language: Arc<GeneralLanguage<W>>,
    strings: Vec<Str>,
    columns: BTreeMap<(Context, usize), usize>,
    rows: Vec<Row>,
    options: BasisOptions,
}

impl<W: Coefficient> Basis<W> {
    /// Greedy basis in `order`, which must be a permutation of the
    /// language's nonzero strings.
    pub fn build(language: Arc<GeneralLanguage<W>>, order: &[Str], options: BasisOptions) -> Result<Self> {
        let expected: BTreeSet<Str> = language.enumerate_nonzero_strings().into_iter().collect();
        let given: BTreeSet<Str> = order.iter().cloned().collect();
        if given.len() != order.len() || given != expected {
            return Err(Error::InvalidInput(
                "basis order must be a permutation of the nonzero strings".into(),
            ));
        }

        let dim = W::dim(language.space());
        let vectors = order
            .iter()
            .map(|x| language.context_vector(x))
            .collect::<Result<Vec<_>>>()?;
        let mut columns = BTreeMap::new();
        for f in &vectors {
            for c in f.support() {
                for k in 0..dim {
                    let next = columns.len();
                    columns.entry((c.clone(), k)).or_insert(next);
                }
            }
        }

        let mut basis = Basis { language, strings: Vec::new(), columns, rows: Vec::new(), options };
        for (x, f) in order.iter().zip(&vectors) {
            let (mut v, _) = basis.flatten(f);
            let scale = max_abs(&v);
            if scale == 0.0 {
                continue;
            }
            let c = basis.reduce(&mut v);
            let (pivot, residual) = argmax_abs(&v);
            if residual <= basis.options.pivot_tol * scale {
                continue;
            }
            let pv = v[pivot];
            let k = basis.rows.len();
            let mut combo = vec![0.0; k + 1];
            combo[k] = 1.0;
            for (ci, row) in c.iter().zip(&basis.rows) {
                for (t, r) in combo.iter_mut().zip(&row.combo) {
                    *t -= ci * r;
                }
            }
            combo.iter_mut().for_each(|t| *t /= pv);
            v.iter_mut().for_each(|t| *t /= pv);
            v[pivot] = 1.0;
            basis.rows.push(Row { pivot, values: v, combo });
            basis.strings.push(x.clone());
        }
        Ok(basis)
    }

    pub fn language(&self) -> &Arc<GeneralLanguage<W>> {
        &self.language
    }

    pub fn strings(&self) -> &[Str] {
        &self.strings
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    /// Dense coordinates over the known columns, plus the largest entry on
    /// contexts no basis vector touches.
    fn flatten(&self, f: &ContextFunction<W>) -> (Vec<f64>, f64) {
        let dim = W::dim(self.language.space());
        let mut v = vec![0.0; self.columns.len()];
        let mut outside: f64 = 0.0;
        for (c, w) in f.iter() {
            for k in 0..dim {
                let x = w.component(k);
                match self.columns.get(&(c.clone(), k)) {
                    Some(&j) => v[j] = x,
                    None => outside = outside.max(x.abs()),
                }
            }
        }
        (v, outside)
    }

    /// Eliminates every row's pivot from `v`, returning the multipliers.
    fn reduce(&self, v: &mut [f64]) -> Vec<f64> {
        self.rows
            .iter()
            .map(|row| {
                let c = v[row.pivot];
                if c != 0.0 {
                    for (t, r) in v.iter_mut().zip(&row.values) {
                        *t -= c * r;
                    }
                    v[row.pivot] = 0.0;
                }
                c
            })
            .collect()
    }

    /// Coefficients of `f` over [`strings`](Self::strings).
    pub fn expand(&self, f: &ContextFunction<W>) -> Result<Vec<f64>> {
        let (mut v, outside) = self.flatten(f);
        let c = self.reduce(&mut v);
        let residual = max_abs(&v).max(outside);
        if residual > self.options.residual_tol {
            return Err(Error::NotInSpan { residual });
        }
        let mut coords = vec![0.0; self.strings.len()];
        for (ci, row) in c.iter().zip(&self.rows) {
            for (t, r) in coords.iter_mut().zip(&row.combo) {
                *t += ci * r;
            }
        }
        Ok(coords)
    }

    /// `Σ coords[i] · strings[i]^` as an element.
    pub fn element(&self, coords: &[f64]) -> Result<AlgebraElement<W>> {
        if coords.len() != self.strings.len() {
            return Err(Error::InvalidInput("coordinate vector has the wrong length".into()));
        }
        AlgebraElement::from_coeffs(
            self.language.clone(),
            self.strings.iter().cloned().zip(coords.iter().copied()),
        )
    }

    /// Re-expresses `a` over this basis.
    pub fn reexpress(&self, a: &AlgebraElement<W>) -> Result<AlgebraElement<W>> {
        if !Arc::ptr_eq(a.language(), &self.language) {
            return Err(Error::LanguageMismatch);
        }
        self.element(&self.expand(a.function())?)
    }
}

/// Basis chosen greedily in length-then-lexicographic order.
pub fn string_basis<W: Coefficient>(language: &Arc<GeneralLanguage<W>>) -> Result<Basis<W>> {
    let order = language.enumerate_nonzero_strings();
    Basis::build(language.clone(), &order, BasisOptions::default())
}

/// `expand_in_basis`
pub fn expand_in_basis<W: Coefficient>(f: &ContextFunction<W>, basis: &Basis<W>) -> Result<Vec<f64>> {
    basis.expand(f)
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn argmax_abs(v: &[f64]) -> (usize, f64) {
    v.iter()
        .enumerate()
        .fold((0, 0.0), |(bi, bv), (i, x)| if x.abs() > bv { (i, x.abs()) } else { (bi, bv) })
}
