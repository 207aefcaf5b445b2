//! Subspaces as explicit basis matrices, plus the SVD-based rank,
//! nullspace, and complement routines the constructions rely on.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const SVD_EPS: f64 = 1e-14;
const SVD_MAX_ITER: usize = 4000;

/// A subspace of K^d carried by a d-by-k basis matrix with full column
/// rank. `k = 0` (the zero subspace) is allowed.
#[derive(Debug, Clone)]
pub struct Subspace<T: Scalar> {
    basis: DMatrix<T>,
}

impl<T: Scalar> Subspace<T> {
    /// Wraps a basis after checking column independence:
    /// `sigma_min > rank_tol * sigma_max`.
    pub fn from_columns(basis: DMatrix<T>, rank_tol: f64) -> Result<Self> {
        let k = basis.ncols();
        if k == 0 {
            return Ok(Self { basis });
        }
        if k > basis.nrows() {
            return Err(Error::RankDeficient(format!(
                "{k} columns cannot be independent in dimension {}",
                basis.nrows()
            )));
        }
        let svs = singular_values(&basis)?;
        let max = svs[0];
        let min = svs[k - 1];
        if !(min > rank_tol * max) || max == 0.0 {
            return Err(Error::RankDeficient(format!(
                "columns numerically dependent (sigma_min/sigma_max = {:.3e})",
                if max > 0.0 { min / max } else { 0.0 }
            )));
        }
        Ok(Self { basis })
    }

    /// The zero subspace of K^d.
    pub fn empty(ambient_dim: usize) -> Self {
        Self {
            basis: DMatrix::zeros(ambient_dim, 0),
        }
    }

    /// The span of the standard basis vectors `e_0 .. e_{k-1}`.
    pub fn leading_coordinates(ambient_dim: usize, k: usize) -> Self {
        assert!(k <= ambient_dim);
        let mut basis = DMatrix::zeros(ambient_dim, k);
        for i in 0..k {
            basis[(i, i)] = T::one();
        }
        Self { basis }
    }

    pub fn from_vector(v: DVector<T>) -> Self {
        Self {
            basis: DMatrix::from_columns(&[v]),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    /// Number of basis columns, i.e. the dimension of the subspace.
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &DMatrix<T> {
        &self.basis
    }

    pub fn column(&self, i: usize) -> DVector<T> {
        self.basis.column(i).into_owned()
    }

    /// An orthonormal basis of the same span (principal angles zero up
    /// to roundoff); errors when the columns are numerically dependent.
    pub fn orthonormalize(&self, rank_tol: f64) -> Result<Self> {
        if self.dim() == 0 {
            return Ok(self.clone());
        }
        let svd = try_svd(&self.basis)?;
        let svs = &svd.singular_values;
        let max = svs[0];
        let rank = svs.iter().filter(|&&s| s > rank_tol * max && max > 0.0).count();
        if rank < self.dim() {
            return Err(Error::RankDeficient(format!(
                "rank {rank} below column count {}",
                self.dim()
            )));
        }
        let u = svd.u.expect("u requested");
        Ok(Self {
            basis: u.columns(0, self.dim()).into_owned(),
        })
    }

    /// Extends an orthonormal basis by one vector, projecting `v` onto
    /// the orthogonal complement first.
    pub fn adjoin(&self, v: &DVector<T>, rank_tol: f64) -> Result<Self> {
        let mut w = v.clone();
        for j in 0..self.dim() {
            let col = self.basis.column(j);
            let coef = col.dotc(&w);
            w -= col.into_owned() * coef;
        }
        let norm = w.norm();
        if !(norm > rank_tol * v.norm().max(1.0)) {
            return Err(Error::RankDeficient(
                "vector lies in the subspace; cannot adjoin".into(),
            ));
        }
        w /= T::from_real(norm);
        let mut basis = DMatrix::zeros(self.ambient_dim(), self.dim() + 1);
        basis.columns_mut(0, self.dim()).copy_from(&self.basis);
        basis.column_mut(self.dim()).copy_from(&w);
        Ok(Self { basis })
    }

    /// Orthonormal basis of the orthogonal complement, computed from
    /// the projector `I - B B^H` of an orthonormalized copy of `self`.
    pub fn orthonormal_complement(&self, rank_tol: f64) -> Result<Self> {
        let d = self.ambient_dim();
        if self.dim() == 0 {
            return Ok(Self::leading_coordinates(d, d));
        }
        let on = self.orthonormalize(rank_tol)?;
        let proj = DMatrix::identity(d, d) - &on.basis * on.basis.adjoint();
        let svd = try_svd(&proj)?;
        let u = svd.u.expect("u requested");
        let mut cols = Vec::with_capacity(d - self.dim());
        for (i, &s) in svd.singular_values.iter().enumerate() {
            if s > 0.5 {
                cols.push(u.column(i).into_owned());
            }
        }
        debug_assert_eq!(cols.len(), d - self.dim());
        Ok(if cols.is_empty() {
            Self::empty(d)
        } else {
            Self {
                basis: DMatrix::from_columns(&cols),
            }
        })
    }

    /// The subspace `self . inner`: `inner` is expressed in the
    /// coordinates of `self`'s basis.
    pub fn compose(&self, inner: &Subspace<T>) -> Result<Self> {
        if inner.ambient_dim() != self.dim() {
            return Err(Error::InvalidArgument(format!(
                "inner ambient dimension {} does not match outer dimension {}",
                inner.ambient_dim(),
                self.dim()
            )));
        }
        Ok(Self {
            basis: &self.basis * &inner.basis,
        })
    }

    /// Truncation to the first `k` basis columns.
    pub fn truncate(&self, k: usize) -> Self {
        assert!(k <= self.dim());
        Self {
            basis: self.basis.columns(0, k).into_owned(),
        }
    }

    /// Whether two subspaces have the same span: equal dimensions and
    /// orthogonal-projector distance below `tol`.
    pub fn same_span(&self, other: &Subspace<T>, rank_tol: f64, tol: f64) -> Result<bool> {
        if self.dim() != other.dim() || self.ambient_dim() != other.ambient_dim() {
            return Ok(false);
        }
        if self.dim() == 0 {
            return Ok(true);
        }
        let a = self.orthonormalize(rank_tol)?;
        let b = other.orthonormalize(rank_tol)?;
        let pa = a.basis() * a.basis().adjoint();
        let pb = b.basis() * b.basis().adjoint();
        Ok((pa - pb).norm() <= tol)
    }
}

fn try_svd<T: Scalar>(m: &DMatrix<T>) -> Result<nalgebra::SVD<T, nalgebra::Dyn, nalgebra::Dyn>> {
    m.clone()
        .try_svd(true, true, T::RealField::from(SVD_EPS), SVD_MAX_ITER)
        .ok_or_else(|| Error::Numerical("SVD did not converge".into()))
}

fn singular_values<T: Scalar>(m: &DMatrix<T>) -> Result<Vec<f64>> {
    let svd = m
        .clone()
        .try_svd(false, false, T::RealField::from(SVD_EPS), SVD_MAX_ITER)
        .ok_or_else(|| Error::Numerical("SVD did not converge".into()))?;
    Ok(svd.singular_values.iter().copied().collect())
}

/// Orthonormal basis of the kernel of `m` (as columns). The rank is
/// decided by `sigma > rank_tol * sigma_max`; the kernel is then the
/// orthogonal complement of the surviving right-singular vectors.
pub fn nullspace<T: Scalar>(m: &DMatrix<T>, rank_tol: f64) -> Result<DMatrix<T>> {
    let cols = m.ncols();
    if m.nrows() == 0 || cols == 0 {
        return Ok(DMatrix::identity(cols, cols));
    }
    let svd = try_svd(m)?;
    let svs = &svd.singular_values;
    let max = svs[0];
    let rank = if max > 0.0 {
        svs.iter().filter(|&&s| s > rank_tol * max).count()
    } else {
        0
    };
    if rank == 0 {
        return Ok(DMatrix::identity(cols, cols));
    }
    if rank == cols {
        return Ok(DMatrix::zeros(cols, 0));
    }
    let v_t = svd.v_t.expect("v_t requested");
    let row_space = v_t.rows(0, rank).adjoint(); // cols x rank
    let rs = Subspace::<T> { basis: row_space };
    Ok(rs.orthonormal_complement(rank_tol)?.basis.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::C64;

    #[test]
    fn identity_columns_unchanged() {
        let s = Subspace::<f64>::leading_coordinates(3, 2);
        let on = s.orthonormalize(1e-10).unwrap();
        assert_eq!(on.basis(), s.basis());
    }

    #[test]
    fn orthonormalize_preserves_span() {
        let basis = DMatrix::from_column_slice(2, 2, &[1.0, 0.0, 1.0, 1.0]);
        let s = Subspace::from_columns(basis, 1e-10).unwrap();
        let on = s.orthonormalize(1e-10).unwrap();
        assert!((on.basis().adjoint() * on.basis() - DMatrix::identity(2, 2)).norm() < 1e-12);
        assert!(s.same_span(&on, 1e-10, 1e-10).unwrap());
    }

    #[test]
    fn dependent_columns_rejected() {
        let basis = DMatrix::from_column_slice(2, 2, &[1.0, 0.0, 2.0, 0.0]);
        assert!(matches!(
            Subspace::from_columns(basis, 1e-10),
            Err(Error::RankDeficient(_))
        ));
    }

    #[test]
    fn complement_is_orthogonal_and_full() {
        let basis = DMatrix::from_column_slice(4, 2, &[1.0, 2.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0]);
        let s = Subspace::from_columns(basis, 1e-10).unwrap();
        let c = s.orthonormal_complement(1e-10).unwrap();
        assert_eq!(c.dim(), 2);
        let on = s.orthonormalize(1e-10).unwrap();
        assert!((on.basis().adjoint() * c.basis()).norm() < 1e-12);
    }

    #[test]
    fn nullspace_of_complex_row() {
        // ker(x1 + i x2) in C^2 is spanned by (1, i) up to phase.
        let row = DMatrix::<C64>::from_row_slice(1, 2, &[C64::new(1.0, 0.0), C64::new(0.0, 1.0)]);
        let k = nullspace(&row, 1e-10).unwrap();
        assert_eq!(k.ncols(), 1);
        assert!((&row * &k).norm() < 1e-12);
    }

    #[test]
    fn nullspace_of_zero_and_full_rank() {
        let zero = DMatrix::<f64>::zeros(2, 3);
        assert_eq!(nullspace(&zero, 1e-10).unwrap().ncols(), 3);
        let id = DMatrix::<f64>::identity(3, 3);
        assert_eq!(nullspace(&id, 1e-10).unwrap().ncols(), 0);
        let empty = DMatrix::<f64>::zeros(0, 4);
        assert_eq!(nullspace(&empty, 1e-10).unwrap().ncols(), 4);
    }

    #[test]
    fn adjoin_rejects_contained_vector() {
        let s = Subspace::<f64>::leading_coordinates(3, 2);
        let v = DVector::from_vec(vec![1.0, -2.0, 0.0]);
        assert!(s.adjoin(&v, 1e-10).is_err());
        let w = DVector::from_vec(vec![1.0, 0.0, 3.0]);
        let bigger = s.adjoin(&w, 1e-10).unwrap();
        assert_eq!(bigger.dim(), 3);
        let b = bigger.basis();
        assert!((b.adjoint() * b - DMatrix::identity(3, 3)).norm() < 1e-12);
    }
}
