//! Homogeneous polynomial forms and their symmetric multilinear
//! evaluation.
//!
//! Every representation exposes two evaluation routes: `evaluate` for
//! `P(x)` and `multilinear_eval` for the associated symmetric n-linear
//! form `A`, computed natively per representation. [`polarize_oracle`]
//! recovers `A` from `evaluate` alone through the polarization identity
//! and serves as the independent cross-check of the native routes.

mod dense;
mod partial;
mod power_sum;
mod pullback;

pub use dense::DenseSymmetricForm;
pub use partial::PartialApplicationForm;
pub use power_sum::PowerSumForm;
pub use pullback::PullbackForm;

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::multi_index::{multinomial, MultiIndex};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// Fixed seed for certification-scale sampling, so that certification
/// is deterministic independent of any construction seed.
pub const SCALE_SAMPLING_SEED: u64 = 0x484f4d49; // "HOMI"

/// How a form is represented; certification picks its scale estimate
/// based on this.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReprKind {
    Dense,
    PowerSum,
    PartialApplication,
    Pullback,
}

/// A degree-n homogeneous polynomial together with its symmetric
/// n-linear form.
///
/// Implementations must keep the two routes consistent:
/// `multilinear_eval(&[x; n]) == evaluate(x)` and `multilinear_eval`
/// agrees with [`polarize_oracle`] up to roundoff.
pub trait SymmetricForm<T: Scalar>: Send + Sync {
    fn degree(&self) -> u32;

    /// Ambient dimension d: evaluation points are d-vectors.
    fn dim(&self) -> usize;

    fn repr_kind(&self) -> ReprKind;

    /// `P(x)`.
    fn evaluate(&self, x: &DVector<T>) -> Result<T>;

    /// `A(args[0], ..., args[n-1])`, computed natively (not by
    /// polarization).
    fn multilinear_eval(&self, args: &[DVector<T>]) -> Result<T>;
}

pub(crate) fn check_point<T: Scalar>(form: &dyn SymmetricForm<T>, x: &DVector<T>) -> Result<()> {
    if x.len() != form.dim() {
        return Err(Error::InvalidArgument(format!(
            "point has length {}, form expects {}",
            x.len(),
            form.dim()
        )));
    }
    Ok(())
}

pub(crate) fn check_args<T: Scalar>(form: &dyn SymmetricForm<T>, args: &[DVector<T>]) -> Result<()> {
    if args.len() != form.degree() as usize {
        return Err(Error::InvalidArgument(format!(
            "expected {} argument vectors, got {}",
            form.degree(),
            args.len()
        )));
    }
    for a in args {
        if a.len() != form.dim() {
            return Err(Error::InvalidArgument(format!(
                "argument has length {}, form expects {}",
                a.len(),
                form.dim()
            )));
        }
    }
    Ok(())
}

/// The symmetric multilinear form by polarization of `evaluate` only:
///
/// `A(x_1..x_n) = 1/(2^n n!) * sum over signs e in {±1}^n of
///  e_1...e_n P(e_1 x_1 + ... + e_n x_n)`.
///
/// Independent of every native `multilinear_eval`; limited to n <= 8
/// since it takes 2^n evaluations.
pub fn polarize_oracle<T: Scalar>(
    form: &dyn SymmetricForm<T>,
    args: &[DVector<T>],
) -> Result<T> {
    check_args(form, args)?;
    let n = form.degree();
    if n > 8 {
        return Err(Error::Unsupported(format!(
            "polarization oracle limited to degree <= 8, got {n}"
        )));
    }
    let n = n as usize;
    let mut acc = T::zero();
    for mask in 0u32..(1 << n) {
        let mut x = DVector::<T>::zeros(form.dim());
        let mut sign_negative = false;
        for (i, a) in args.iter().enumerate() {
            if mask & (1 << i) == 0 {
                x += a;
            } else {
                x -= a;
                sign_negative = !sign_negative;
            }
        }
        let v = form.evaluate(&x)?;
        if sign_negative {
            acc -= v;
        } else {
            acc += v;
        }
    }
    let denom = 2f64.powi(n as i32) * crate::multi_index::factorial(n as u32) as f64;
    Ok(acc * T::from_real(1.0 / denom))
}

/// Materializes the restriction `Q(t) = P(B t)` as a dense form on
/// `B.dim()` variables. The coefficient of the monomial `t^m` is
/// `multinomial(n; m) * A(b_1^{m_1}, ..., b_k^{m_k})`; all
/// `C(n + k - 1, k - 1)` coefficients are stored, including zeros.
pub fn pullback<T: Scalar>(
    form: &dyn SymmetricForm<T>,
    basis: &Subspace<T>,
) -> Result<DenseSymmetricForm<T>> {
    if basis.ambient_dim() != form.dim() {
        return Err(Error::InvalidArgument(format!(
            "basis ambient dimension {} does not match form dimension {}",
            basis.ambient_dim(),
            form.dim()
        )));
    }
    let n = form.degree();
    let k = basis.dim();
    let columns: Vec<DVector<T>> = (0..k).map(|i| basis.column(i)).collect();
    let mut coeffs = Vec::new();
    for m in MultiIndex::all_of_degree(k, n) {
        let mut args = Vec::with_capacity(n as usize);
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                args.push(columns[i].clone());
            }
        }
        let a = form.multilinear_eval(&args)?;
        let c = a * T::from_real(multinomial(&m) as f64);
        coeffs.push((m, c));
    }
    DenseSymmetricForm::new(n, k, coeffs)
}

/// Residual report for the claim "P vanishes identically on span(B)".
#[derive(Debug, Clone, Serialize)]
pub struct CertReport {
    pub max_abs_pullback_coeff: f64,
    /// Normalization reference: the typical magnitude of P on a
    /// subspace of the same dimension.
    pub form_scale: f64,
    pub relative_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Certifies `P|_span(B) = 0` to a relative tolerance, using the
/// default sampling seed.
pub fn certify_null<T: Scalar>(
    form: &dyn SymmetricForm<T>,
    basis: &Subspace<T>,
    tol: f64,
) -> Result<CertReport> {
    certify_null_seeded(form, basis, tol, SCALE_SAMPLING_SEED)
}

/// As [`certify_null`] with an explicit seed for the scale estimate.
///
/// The basis is orthonormalized first, so the verdict depends only on
/// the span. The scale is the max absolute coefficient of P pulled
/// back to 16 random orthonormal k-frames for dense forms, and the max
/// of |P| over 64 random unit vectors otherwise.
pub fn certify_null_seeded<T: Scalar>(
    form: &dyn SymmetricForm<T>,
    basis: &Subspace<T>,
    tol: f64,
    seed: u64,
) -> Result<CertReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let k = basis.dim();
    let (max_abs, scale) = if k == 0 {
        (0.0, 0.0)
    } else {
        let on = basis.orthonormalize(1e-12)?;
        let restricted = pullback(form, &on)?;
        (restricted.max_abs_coeff(), form_scale(form, k, seed)?)
    };
    let relative_residual = if scale > 0.0 {
        max_abs / scale
    } else if max_abs == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(CertReport {
        max_abs_pullback_coeff: max_abs,
        form_scale: scale,
        relative_residual,
        tolerance: tol,
        pass: relative_residual <= tol,
    })
}

/// Normalization reference used by certification.
pub fn form_scale<T: Scalar>(form: &dyn SymmetricForm<T>, k: usize, seed: u64) -> Result<f64> {
    let d = form.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match form.repr_kind() {
        ReprKind::Dense => {
            let k = k.min(d).max(1);
            let mut best = 0.0f64;
            for _ in 0..16 {
                let frame = random_orthonormal_frame::<T>(d, k, &mut rng)?;
                let q = pullback(form, &frame)?;
                best = best.max(q.max_abs_coeff());
            }
            Ok(best)
        }
        _ => {
            let mut best = 0.0f64;
            for _ in 0..64 {
                let x = random_unit_vector::<T>(d, &mut rng);
                best = best.max(form.evaluate(&x)?.modulus());
            }
            Ok(best)
        }
    }
}

pub(crate) fn random_unit_vector<T: Scalar>(d: usize, rng: &mut ChaCha8Rng) -> DVector<T> {
    loop {
        let v = DVector::from_fn(d, |_, _| T::standard_normal(rng));
        let norm = v.norm();
        if norm > 1e-6 {
            return v / T::from_real(norm);
        }
    }
}

pub(crate) fn random_orthonormal_frame<T: Scalar>(
    d: usize,
    k: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Subspace<T>> {
    let g = nalgebra::DMatrix::from_fn(d, k, |_, _| T::standard_normal(rng));
    Subspace::from_columns(g, 1e-10)?.orthonormalize(1e-10)
}

/// Convenience: wraps a form value in an `Arc<dyn SymmetricForm>`.
pub fn arc<T: Scalar, F: SymmetricForm<T> + 'static>(form: F) -> Arc<dyn SymmetricForm<T>> {
    Arc::new(form)
}

#[cfg(test)]
mod tests;
