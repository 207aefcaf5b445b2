//! Seeded generators for demo and test inputs.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::forms::{DenseSymmetricForm, PowerSumForm};
use crate::multi_index::MultiIndex;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Dense form with standard-normal coefficients on every monomial of
/// the given degree.
pub fn random_dense_form<T: Scalar>(
    degree: u32,
    dim: usize,
    rng: &mut ChaCha8Rng,
) -> DenseSymmetricForm<T> {
    let coeffs = MultiIndex::all_of_degree(dim, degree)
        .into_iter()
        .map(|m| (m, T::standard_normal(rng)));
    DenseSymmetricForm::new(degree, dim, coeffs).expect("generated keys are valid")
}

pub fn random_power_sum_form<T: Scalar>(
    degree: u32,
    dim: usize,
    terms: usize,
    rng: &mut ChaCha8Rng,
) -> PowerSumForm<T> {
    let weights = (0..terms).map(|_| T::standard_normal(rng)).collect();
    let functionals = (0..terms)
        .map(|_| DVector::from_fn(dim, |_, _| T::standard_normal(rng)))
        .collect();
    PowerSumForm::new(degree, dim, weights, functionals).expect("consistent sizes")
}

pub fn random_vector<T: Scalar>(dim: usize, rng: &mut ChaCha8Rng) -> DVector<T> {
    DVector::from_fn(dim, |_, _| T::standard_normal(rng))
}

/// Random k-dimensional subspace with orthonormal basis.
pub fn random_subspace<T: Scalar>(
    dim: usize,
    k: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Subspace<T>> {
    let g = DMatrix::from_fn(dim, k, |_, _| T::standard_normal(rng));
    Subspace::from_columns(g, 1e-10)?.orthonormalize(1e-10)
}
