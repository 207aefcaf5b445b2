use nalgebra::{DMatrix, DVector};
use std::collections::BTreeMap;

use super::{check_args, check_point, ReprKind, SymmetricForm};
use crate::error::{Error, Result};
use crate::multi_index::{factorial, MultiIndex};
use crate::scalar::Scalar;

/// A form stored as a sparse monomial coefficient map:
/// `P(x) = sum over m of c_m x^m` with every key of total degree n.
///
/// The entry of the associated symmetric tensor on an index tuple with
/// multiplicity vector m is `c_m * m! / n!`.
#[derive(Debug, Clone)]
pub struct DenseSymmetricForm<T: Scalar> {
    degree: u32,
    dim: usize,
    coeffs: BTreeMap<MultiIndex, T>,
}

impl<T: Scalar> DenseSymmetricForm<T> {
    pub fn new(
        degree: u32,
        dim: usize,
        coeffs: impl IntoIterator<Item = (MultiIndex, T)>,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidArgument("form degree must be >= 1".into()));
        }
        let mut map = BTreeMap::new();
        for (m, c) in coeffs {
            if m.vars() != dim {
                return Err(Error::InvalidArgument(format!(
                    "multi-index on {} variables in a form of dimension {dim}",
                    m.vars()
                )));
            }
            if m.degree() != degree {
                return Err(Error::InvalidArgument(format!(
                    "multi-index of degree {} in a form of degree {degree}",
                    m.degree()
                )));
            }
            *map.entry(m).or_insert_with(T::zero) += c;
        }
        Ok(Self { degree, dim, coeffs: map })
    }

    /// The zero form.
    pub fn zero(degree: u32, dim: usize) -> Self {
        Self {
            degree,
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    /// A single monomial `c * x^m`.
    pub fn monomial(dim: usize, exponents: Vec<u32>, coeff: T) -> Result<Self> {
        let m = MultiIndex::new(exponents);
        let degree = m.degree();
        Self::new(degree, dim, [(m, coeff)])
    }

    /// Degree-2 form `x^T G x` from a symmetric matrix `G` (symmetrized
    /// here): `c_{2 e_i} = G_ii`, `c_{e_i + e_j} = 2 G_ij`.
    pub fn from_gram(g: &DMatrix<T>) -> Result<Self> {
        if g.nrows() != g.ncols() {
            return Err(Error::InvalidArgument("Gram matrix must be square".into()));
        }
        let d = g.nrows();
        let mut coeffs = Vec::new();
        for i in 0..d {
            for j in i..d {
                let sym = (g[(i, j)] + g[(j, i)]) * T::from_real(0.5);
                let mut e = vec![0u32; d];
                e[i] += 1;
                e[j] += 1;
                let c = if i == j { sym } else { sym * T::from_real(2.0) };
                coeffs.push((MultiIndex::new(e), c));
            }
        }
        Self::new(2, d, coeffs)
    }

    pub fn coefficients(&self) -> &BTreeMap<MultiIndex, T> {
        &self.coeffs
    }

    pub fn coefficient(&self, m: &MultiIndex) -> T {
        self.coeffs.get(m).copied().unwrap_or_else(T::zero)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .values()
            .map(|c| c.modulus())
            .fold(0.0, f64::max)
    }

    /// The same form viewed on the first `m` variables; all dropped
    /// variables must have zero exponent in the surviving terms (terms
    /// touching them are exactly the ones that vanish there).
    pub fn restrict_to_leading(&self, m: usize) -> Self {
        assert!(m <= self.dim);
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(key, _)| key.exponents()[m..].iter().all(|&e| e == 0))
            .map(|(key, c)| (MultiIndex::new(key.exponents()[..m].to_vec()), *c))
            .collect::<Vec<_>>();
        Self {
            degree: self.degree,
            dim: m,
            coeffs: coeffs.into_iter().collect(),
        }
    }
}

impl<T: Scalar> SymmetricForm<T> for DenseSymmetricForm<T> {
    fn degree(&self) -> u32 {
        self.degree
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn repr_kind(&self) -> ReprKind {
        ReprKind::Dense
    }

    fn evaluate(&self, x: &DVector<T>) -> Result<T> {
        check_point(self, x)?;
        let mut acc = T::zero();
        for (m, c) in &self.coeffs {
            let mut term = *c;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term *= x[i].powi(e as i32);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Native multilinear evaluation: expand `prod_t <args_t, z>` as a
    /// polynomial in z and contract against the coefficients,
    /// `A(v_1..v_n) = sum over m of c_m (m!/n!) [z^m] prod_t <v_t, z>`.
    fn multilinear_eval(&self, args: &[DVector<T>]) -> Result<T> {
        check_args(self, args)?;
        if self.coeffs.is_empty() {
            return Ok(T::zero());
        }
        let mut product: BTreeMap<MultiIndex, T> = BTreeMap::new();
        product.insert(MultiIndex::zeros(self.dim), T::one());
        for v in args {
            let mut next: BTreeMap<MultiIndex, T> = BTreeMap::new();
            for (m, c) in &product {
                for i in 0..self.dim {
                    let vi = v[i];
                    if vi != T::zero() {
                        *next.entry(m.bump(i)).or_insert_with(T::zero) += *c * vi;
                    }
                }
            }
            product = next;
        }
        let n_fact = factorial(self.degree) as f64;
        let mut acc = T::zero();
        for (m, c) in &self.coeffs {
            if let Some(p) = product.get(m) {
                let weight = m.exponents().iter().map(|&e| factorial(e)).product::<u128>();
                acc += *c * *p * T::from_real(weight as f64 / n_fact);
            }
        }
        Ok(acc)
    }
}
