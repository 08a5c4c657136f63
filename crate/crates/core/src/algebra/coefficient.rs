use std::fmt::Debug;
use std::sync::Arc;

use crate::logic::Universe;
use crate::projections::{same_universe, DiagOperator};
use crate::{Error, Result};

/// A value space for a general language: a finite-dimensional vector
/// lattice with a distinguished basis.
pub trait Coefficient: Clone + Debug + PartialEq + Send + Sync {
    /// Describes which instance of the space a value lives in.
    type Space: Clone + Debug + Send + Sync;

    fn zero(space: &Self::Space) -> Self;
    fn space(&self) -> Self::Space;
    fn same_space(a: &Self::Space, b: &Self::Space) -> bool;
    /// Number of basis components.
    fn dim(space: &Self::Space) -> usize;
    fn component(&self, k: usize) -> f64;

    fn add(&self, other: &Self) -> Result<Self>;
    fn scale(&self, alpha: f64) -> Self;
    fn meet(&self, other: &Self) -> Result<Self>;
    fn join(&self, other: &Self) -> Result<Self>;
    fn leq(&self, other: &Self) -> Result<bool>;

    fn max_abs(&self) -> f64;

    fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }
}

impl Coefficient for f64 {
    type Space = ();

    fn zero(_: &()) -> Self {
        0.0
    }
    fn space(&self) {}
    fn same_space(_: &(), _: &()) -> bool {
        true
    }
    fn dim(_: &()) -> usize {
        1
    }
    fn component(&self, _: usize) -> f64 {
        *self
    }
    fn add(&self, other: &Self) -> Result<Self> {
        Ok(self + other)
    }
    fn scale(&self, alpha: f64) -> Self {
        alpha * self
    }
    fn meet(&self, other: &Self) -> Result<Self> {
        Ok(self.min(*other))
    }
    fn join(&self, other: &Self) -> Result<Self> {
        Ok(self.max(*other))
    }
    fn leq(&self, other: &Self) -> Result<bool> {
        Ok(self <= other)
    }
    fn max_abs(&self) -> f64 {
        self.abs()
    }
}

impl Coefficient for DiagOperator {
    type Space = Arc<Universe>;

    fn zero(space: &Arc<Universe>) -> Self {
        DiagOperator::zero(space.clone())
    }
    fn space(&self) -> Arc<Universe> {
        self.universe().clone()
    }
    fn same_space(a: &Arc<Universe>, b: &Arc<Universe>) -> bool {
        same_universe(a, b)
    }
    fn dim(space: &Arc<Universe>) -> usize {
        space.len()
    }
    fn component(&self, k: usize) -> f64 {
        self.diag()[k]
    }
    fn add(&self, other: &Self) -> Result<Self> {
        DiagOperator::add(self, other)
    }
    fn scale(&self, alpha: f64) -> Self {
        DiagOperator::scale(self, alpha)
    }
    fn meet(&self, other: &Self) -> Result<Self> {
        DiagOperator::meet(self, other)
    }
    fn join(&self, other: &Self) -> Result<Self> {
        DiagOperator::join(self, other)
    }
    fn leq(&self, other: &Self) -> Result<bool> {
        DiagOperator::leq(self, other)
    }
    fn max_abs(&self) -> f64 {
        self.diag().iter().fold(0.0, |m, d| m.max(d.abs()))
    }
}

pub(crate) fn check_space<W: Coefficient>(a: &W::Space, b: &W::Space) -> Result<()> {
    if W::same_space(a, b) {
        Ok(())
    } else {
        Err(Error::UniverseMismatch)
    }
}
