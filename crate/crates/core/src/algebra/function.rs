use std::collections::BTreeMap;

use super::coefficient::{check_space, Coefficient};
use super::Context;
use crate::Result;

/// Entries with magnitude below this are treated as zero and pruned.
pub const ZERO_TOL: f64 = 1e-12;

/// A finitely supported function from contexts to `W`; absent contexts map
/// to zero.
#[derive(Clone, Debug)]
pub struct ContextFunction<W: Coefficient> {
    space: W::Space,
    values: BTreeMap<Context, W>,
}

impl<W: Coefficient> PartialEq for ContextFunction<W> {
    fn eq(&self, other: &Self) -> bool {
        W::same_space(&self.space, &other.space) && self.values == other.values
    }
}

impl<W: Coefficient> ContextFunction<W> {
    pub fn zero(space: W::Space) -> Self {
        ContextFunction { space, values: BTreeMap::new() }
    }

    /// Builds from entries, summing duplicates and pruning zeros.
    pub fn from_entries(
        space: W::Space,
        entries: impl IntoIterator<Item = (Context, W)>,
    ) -> Result<Self> {
        let mut f = Self::zero(space);
        for (c, w) in entries {
            f.accumulate(c, &w)?;
        }
        f.prune();
        Ok(f)
    }

    pub fn space(&self) -> &W::Space {
        &self.space
    }

    pub fn get(&self, c: &Context) -> Option<&W> {
        self.values.get(c)
    }

    pub fn value(&self, c: &Context) -> W {
        self.values.get(c).cloned().unwrap_or_else(|| W::zero(&self.space))
    }

    pub fn support(&self) -> impl Iterator<Item = &Context> {
        self.values.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Context, &W)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `self[c] += w`, without pruning.
    pub(crate) fn accumulate(&mut self, c: Context, w: &W) -> Result<()> {
        check_space::<W>(&self.space, &w.space())?;
        match self.values.get_mut(&c) {
            Some(v) => *v = v.add(w)?,
            None => {
                self.values.insert(c, w.clone());
            }
        }
        Ok(())
    }

    pub(crate) fn prune(&mut self) {
        self.values.retain(|_, w| w.max_abs() >= ZERO_TOL);
    }

    fn combine(
        &self,
        other: &Self,
        op: impl Fn(&W, &W) -> Result<W>,
    ) -> Result<Self> {
        check_space::<W>(&self.space, &other.space)?;
        let zero = W::zero(&self.space);
        let mut values = BTreeMap::new();
        for c in self.values.keys().chain(other.values.keys()) {
            if values.contains_key(c) {
                continue;
            }
            let a = self.values.get(c).unwrap_or(&zero);
            let b = other.values.get(c).unwrap_or(&zero);
            values.insert(c.clone(), op(a, b)?);
        }
        let mut out = ContextFunction { space: self.space.clone(), values };
        out.prune();
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, alpha: f64) -> Self {
        let mut out = ContextFunction {
            space: self.space.clone(),
            values: self.values.iter().map(|(c, w)| (c.clone(), w.scale(alpha))).collect(),
        };
        out.prune();
        out
    }

    /// Component-wise lattice meet (absent contexts count as zero).
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a.meet(b))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a.join(b))
    }

    /// `self(c) <= other(c)` at every context.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        check_space::<W>(&self.space, &other.space)?;
        let zero = W::zero(&self.space);
        for c in self.values.keys().chain(other.values.keys()) {
            let a = self.values.get(c).unwrap_or(&zero);
            let b = other.values.get(c).unwrap_or(&zero);
            if !a.leq(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Largest absolute component of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        check_space::<W>(&self.space, &other.space)?;
        let zero = W::zero(&self.space);
        let mut m: f64 = 0.0;
        for c in self.values.keys().chain(other.values.keys()) {
            let a = self.values.get(c).unwrap_or(&zero);
            let b = other.values.get(c).unwrap_or(&zero);
            m = m.max(a.max_abs_diff(b)?);
        }
        Ok(m)
    }
}

/// `cf_leq`
pub fn cf_leq<W: Coefficient>(a: &ContextFunction<W>, b: &ContextFunction<W>) -> Result<bool> {
    a.leq(b)
}

/// `cf_meet`
pub fn cf_meet<W: Coefficient>(
    a: &ContextFunction<W>,
    b: &ContextFunction<W>,
) -> Result<ContextFunction<W>> {
    a.meet(b)
}

/// `cf_join`
pub fn cf_join<W: Coefficient>(
    a: &ContextFunction<W>,
    b: &ContextFunction<W>,
) -> Result<ContextFunction<W>> {
    a.join(b)
}
