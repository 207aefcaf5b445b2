use nalgebra::DVector;

use super::{check_args, check_point, ReprKind, SymmetricForm};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Finite power-sum (nuclear-style) form
/// `P(x) = sum_i lambda_i <phi_i, x>^n`
/// with plain (non-conjugating) pairings.
#[derive(Debug, Clone)]
pub struct PowerSumForm<T: Scalar> {
    degree: u32,
    dim: usize,
    weights: Vec<T>,
    functionals: Vec<DVector<T>>,
}

impl<T: Scalar> PowerSumForm<T> {
    pub fn new(
        degree: u32,
        dim: usize,
        weights: Vec<T>,
        functionals: Vec<DVector<T>>,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidArgument("form degree must be >= 1".into()));
        }
        if weights.len() != functionals.len() {
            return Err(Error::InvalidArgument(format!(
                "{} weights but {} functionals",
                weights.len(),
                functionals.len()
            )));
        }
        if functionals.iter().any(|f| f.len() != dim) {
            return Err(Error::InvalidArgument(
                "functional length does not match dimension".into(),
            ));
        }
        Ok(Self {
            degree,
            dim,
            weights,
            functionals,
        })
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn functionals(&self) -> &[DVector<T>] {
        &self.functionals
    }
}

impl<T: Scalar> SymmetricForm<T> for PowerSumForm<T> {
    fn degree(&self) -> u32 {
        self.degree
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn repr_kind(&self) -> ReprKind {
        ReprKind::PowerSum
    }

    fn evaluate(&self, x: &DVector<T>) -> Result<T> {
        check_point(self, x)?;
        let mut acc = T::zero();
        for (l, phi) in self.weights.iter().zip(&self.functionals) {
            acc += *l * phi.dot(x).powi(self.degree as i32);
        }
        Ok(acc)
    }

    /// `A(v_1..v_n) = sum_i lambda_i prod_t <phi_i, v_t>`.
    fn multilinear_eval(&self, args: &[DVector<T>]) -> Result<T> {
        check_args(self, args)?;
        let mut acc = T::zero();
        for (l, phi) in self.weights.iter().zip(&self.functionals) {
            let mut prod = *l;
            for v in args {
                prod *= phi.dot(v);
            }
            acc += prod;
        }
        Ok(acc)
    }
}
