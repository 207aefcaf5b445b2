use nalgebra::DVector;
use std::sync::Arc;

use super::{check_args, check_point, ReprKind, SymmetricForm};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// The lazy restriction `Q(t) = P(B t)` of a parent form to subspace
/// coordinates; same degree, dimension `B.dim()`. See
/// [`super::pullback`] for the materialized dense version.
#[derive(Clone)]
pub struct PullbackForm<T: Scalar> {
    parent: Arc<dyn SymmetricForm<T>>,
    basis: Subspace<T>,
}

impl<T: Scalar> PullbackForm<T> {
    pub fn new(parent: Arc<dyn SymmetricForm<T>>, basis: Subspace<T>) -> Result<Self> {
        if basis.ambient_dim() != parent.dim() {
            return Err(Error::InvalidArgument(format!(
                "basis ambient dimension {} does not match form dimension {}",
                basis.ambient_dim(),
                parent.dim()
            )));
        }
        Ok(Self { parent, basis })
    }

    pub fn basis(&self) -> &Subspace<T> {
        &self.basis
    }
}

impl<T: Scalar> SymmetricForm<T> for PullbackForm<T> {
    fn degree(&self) -> u32 {
        self.parent.degree()
    }

    fn dim(&self) -> usize {
        self.basis.dim()
    }

    fn repr_kind(&self) -> ReprKind {
        ReprKind::Pullback
    }

    fn evaluate(&self, t: &DVector<T>) -> Result<T> {
        check_point(self, t)?;
        self.parent.evaluate(&(self.basis.basis() * t))
    }

    fn multilinear_eval(&self, args: &[DVector<T>]) -> Result<T> {
        check_args(self, args)?;
        let lifted: Vec<DVector<T>> = args.iter().map(|a| self.basis.basis() * a).collect();
        self.parent.multilinear_eval(&lifted)
    }
}
