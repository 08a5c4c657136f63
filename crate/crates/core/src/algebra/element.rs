use std::collections::BTreeMap;
use std::sync::Arc;

use super::coefficient::Coefficient;
use super::function::{ContextFunction, ZERO_TOL};
use super::{GeneralLanguage, Str};
use crate::{Error, Result};

/// A finite formal combination `Σ α_x x̂` together with the context function
/// it denotes.
///
/// Two elements with different formal coefficients may denote the same
/// function; equality of elements as algebra members is equality of
/// [`function`](Self::function).
#[derive(Clone, Debug)]
pub struct AlgebraElement<W: Coefficient> {
    language: Arc<GeneralLanguage<W>>,
    coeffs: BTreeMap<Str, f64>,
    function: ContextFunction<W>,
}

impl<W: Coefficient> AlgebraElement<W> {
    pub fn from_coeffs(
        language: Arc<GeneralLanguage<W>>,
        coeffs: impl IntoIterator<Item = (Str, f64)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Str, f64> = BTreeMap::new();
        for (s, a) in coeffs {
            *map.entry(s).or_insert(0.0) += a;
        }
        map.retain(|_, a| a.abs() >= ZERO_TOL);
        let function = denote(&language, &map)?;
        Ok(AlgebraElement { language, coeffs: map, function })
    }

    /// The context vector `x̂` as an element.
    pub fn string(language: Arc<GeneralLanguage<W>>, x: Str) -> Result<Self> {
        Self::from_coeffs(language, [(x, 1.0)])
    }

    /// `ε̂`, the unity.
    pub fn unity(language: Arc<GeneralLanguage<W>>) -> Result<Self> {
        Self::string(language, Str::empty())
    }

    pub fn zero(language: Arc<GeneralLanguage<W>>) -> Self {
        let function = ContextFunction::zero(language.space().clone());
        AlgebraElement { language, coeffs: BTreeMap::new(), function }
    }

    pub fn language(&self) -> &Arc<GeneralLanguage<W>> {
        &self.language
    }

    pub fn coeffs(&self) -> &BTreeMap<Str, f64> {
        &self.coeffs
    }

    pub fn function(&self) -> &ContextFunction<W> {
        &self.function
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.language, &other.language) {
            Ok(())
        } else {
            Err(Error::LanguageMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().chain(&other.coeffs).map(|(s, a)| (s.clone(), *a));
        Self::from_coeffs(self.language.clone(), coeffs)
    }

    pub fn scale(&self, alpha: f64) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|(s, a)| (s.clone(), alpha * a));
        Self::from_coeffs(self.language.clone(), coeffs)
    }

    /// Bilinear extension of `x̂ · ŷ = (xy)^`, computed on the formal
    /// coefficients. Concatenations with zero context vectors are dropped.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out: BTreeMap<Str, f64> = BTreeMap::new();
        for (x, a) in &self.coeffs {
            for (y, b) in &other.coeffs {
                let xy = x.concat(y);
                if self.language.is_factor(&xy) {
                    *out.entry(xy).or_insert(0.0) += a * b;
                }
            }
        }
        Self::from_coeffs(self.language.clone(), out)
    }

    /// Recomputes the denoted function from the coefficients and compares it
    /// with the cached one.
    pub fn check_cache(&self, tol: f64) -> Result<bool> {
        Ok(denote(&self.language, &self.coeffs)?.max_abs_diff(&self.function)? <= tol)
    }
}

/// `multiply` as a free function.
pub fn multiply<W: Coefficient>(
    a: &AlgebraElement<W>,
    b: &AlgebraElement<W>,
) -> Result<AlgebraElement<W>> {
    a.multiply(b)
}

fn denote<W: Coefficient>(
    language: &GeneralLanguage<W>,
    coeffs: &BTreeMap<Str, f64>,
) -> Result<ContextFunction<W>> {
    let mut f = ContextFunction::zero(language.space().clone());
    for (x, a) in coeffs {
        for (c, w) in language.context_vector(x)?.iter() {
            f.accumulate(c.clone(), &w.scale(*a))?;
        }
    }
    f.prune();
    Ok(f)
}
