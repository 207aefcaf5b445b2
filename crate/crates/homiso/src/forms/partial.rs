use nalgebra::DVector;
use std::sync::Arc;

use super::{check_args, check_point, ReprKind, SymmetricForm};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A derived form obtained by fixing some arguments of the parent's
/// multilinear form:
/// `P_fixed(x) = A(u_1, ..., u_j, x, ..., x)` of degree `n - j`.
#[derive(Clone)]
pub struct PartialApplicationForm<T: Scalar> {
    parent: Arc<dyn SymmetricForm<T>>,
    fixed: Vec<DVector<T>>,
    degree: u32,
}

impl<T: Scalar> PartialApplicationForm<T> {
    pub fn new(parent: Arc<dyn SymmetricForm<T>>, fixed: Vec<DVector<T>>) -> Result<Self> {
        let j = fixed.len() as u32;
        if j >= parent.degree() {
            return Err(Error::InvalidArgument(format!(
                "cannot fix {j} arguments of a degree-{} form",
                parent.degree()
            )));
        }
        if fixed.iter().any(|v| v.len() != parent.dim()) {
            return Err(Error::InvalidArgument(
                "fixed argument length does not match parent dimension".into(),
            ));
        }
        let degree = parent.degree() - j;
        Ok(Self {
            parent,
            fixed,
            degree,
        })
    }

    pub fn fixed_args(&self) -> &[DVector<T>] {
        &self.fixed
    }

    fn full_args(&self, rest: &[DVector<T>]) -> Vec<DVector<T>> {
        let mut all = Vec::with_capacity(self.parent.degree() as usize);
        all.extend(self.fixed.iter().cloned());
        all.extend(rest.iter().cloned());
        all
    }
}

impl<T: Scalar> SymmetricForm<T> for PartialApplicationForm<T> {
    fn degree(&self) -> u32 {
        self.degree
    }

    fn dim(&self) -> usize {
        self.parent.dim()
    }

    fn repr_kind(&self) -> ReprKind {
        ReprKind::PartialApplication
    }

    fn evaluate(&self, x: &DVector<T>) -> Result<T> {
        check_point(self, x)?;
        let rest = vec![x.clone(); self.degree as usize];
        self.parent.multilinear_eval(&self.full_args(&rest))
    }

    fn multilinear_eval(&self, args: &[DVector<T>]) -> Result<T> {
        check_args(self, args)?;
        self.parent.multilinear_eval(&self.full_args(args))
    }
}
