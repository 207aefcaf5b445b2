//! Greedy extension of null subspaces of complex quadratic forms.
//!
//! For a null H = span{h_1..h_m}, every admissible extension vector
//! lies in `K = intersection of ker A(h_i, .)`; any vector of K with
//! `P = 0` extends H, and inside a 2-dimensional piece of `K mod H`
//! the pencil always supplies one. The greedy loop therefore stalls
//! only at the invariant maximal dimension `floor((d - z)/2) + z`,
//! where z is the kernel dimension of the Gram matrix.

use nalgebra::{ComplexField, DMatrix, DVector};

use super::pencil::zero_on_pencil;
use crate::config::ConstructionConfig;
use crate::error::{Error, Result};
use crate::forms::{certify_null_seeded, SymmetricForm};
use crate::scalar::C64;
use crate::subspace::{nullspace, Subspace};

/// Outcome of one extension attempt.
#[derive(Debug, Clone)]
pub enum Extension {
    Extended(Subspace<C64>),
    Maximal,
}

/// Gram matrix `G[i][j] = A(e_i, e_j)` of a degree-2 form (complex
/// symmetric, not Hermitian).
pub fn gram_matrix(form: &dyn SymmetricForm<C64>) -> Result<DMatrix<C64>> {
    if form.degree() != 2 {
        return Err(Error::InvalidArgument(format!(
            "gram matrix requires a degree-2 form, got degree {}",
            form.degree()
        )));
    }
    let d = form.dim();
    let mut g = DMatrix::zeros(d, d);
    for i in 0..d {
        let ei = DVector::from_fn(d, |r, _| if r == i { C64::from_real(1.0) } else { C64::new(0.0, 0.0) });
        for j in i..d {
            let ej =
                DVector::from_fn(d, |r, _| if r == j { C64::from_real(1.0) } else { C64::new(0.0, 0.0) });
            let a = form.multilinear_eval(&[ei.clone(), ej])?;
            g[(i, j)] = a;
            g[(j, i)] = a;
        }
    }
    Ok(g)
}

/// Attempts to extend a certified null subspace of a complex quadratic
/// form by one dimension; reports `Maximal` when no extension exists.
pub fn extend_null_quadratic(
    form: &dyn SymmetricForm<C64>,
    h: &Subspace<C64>,
    cfg: &ConstructionConfig,
) -> Result<Extension> {
    cfg.validate()?;
    if form.degree() != 2 {
        return Err(Error::InvalidArgument(
            "extension step requires a degree-2 form".into(),
        ));
    }
    if h.ambient_dim() != form.dim() {
        return Err(Error::InvalidArgument(
            "subspace ambient dimension does not match the form".into(),
        ));
    }
    let cert = certify_null_seeded(form, h, cfg.tolerance, cfg.rng_seed)?;
    if !cert.pass {
        return Err(Error::PreconditionFailed(format!(
            "input subspace is not null (relative residual {:.3e})",
            cert.relative_residual
        )));
    }
    let gram = gram_matrix(form)?;
    extend_with_gram(form, &gram, &h.orthonormalize(cfg.rank_tol)?, cfg)
}

fn extend_with_gram(
    form: &dyn SymmetricForm<C64>,
    gram: &DMatrix<C64>,
    h: &Subspace<C64>,
    cfg: &ConstructionConfig,
) -> Result<Extension> {
    let scale = gram.iter().map(|c| c.modulus()).fold(0.0, f64::max);
    let threshold = cfg.tolerance * scale.max(f64::MIN_POSITIVE);

    // Rows of the constraint system: x -> A(h_i, x) = (h_i^T G) x.
    let constraints = h.basis().transpose() * gram;
    let kernel = nullspace(&constraints, cfg.rank_tol)?;
    let kernel_sub = Subspace::from_columns(kernel, cfg.rank_tol)?;

    // Orthogonal complement of H inside the kernel.
    let complement = complement_within(&kernel_sub, h)?;

    let candidate = match complement.dim() {
        0 => None,
        1 => {
            let y = complement.column(0);
            (form.evaluate(&y)?.modulus() <= threshold).then_some(y)
        }
        _ => {
            let y = complement.column(0);
            let z = complement.column(1);
            if form.evaluate(&y)?.modulus() <= threshold {
                Some(y)
            } else if form.evaluate(&z)?.modulus() <= threshold {
                Some(z)
            } else {
                Some(zero_on_pencil(form, &y, &z, cfg)?)
            }
        }
    };

    match candidate {
        None => Ok(Extension::Maximal),
        Some(w) => {
            let extended = h.adjoin(&w, cfg.rank_tol)?;
            let cert = certify_null_seeded(form, &extended, cfg.tolerance, cfg.rng_seed)?;
            if !cert.pass {
                return Err(Error::Numerical(format!(
                    "extension failed certification (relative residual {:.3e})",
                    cert.relative_residual
                )));
            }
            Ok(Extension::Extended(extended))
        }
    }
}

/// Orthonormal basis of `outer ∩ inner^perp`, assuming `inner` is a
/// subspace of `outer` (up to roundoff): project `outer`'s basis onto
/// the complement of `inner` and keep the directions with singular
/// value near one.
pub(crate) fn complement_within(
    outer: &Subspace<C64>,
    inner: &Subspace<C64>,
) -> Result<Subspace<C64>> {
    let d = outer.ambient_dim();
    if outer.dim() == 0 {
        return Ok(Subspace::empty(d));
    }
    let projected = if inner.dim() == 0 {
        outer.basis().clone()
    } else {
        let ib = inner.basis();
        outer.basis() - ib * (ib.adjoint() * outer.basis())
    };
    let svd = projected
        .clone()
        .try_svd(true, false, 1e-14, 4000)
        .ok_or_else(|| Error::Numerical("SVD did not converge".into()))?;
    let u = svd.u.expect("u requested");
    let mut cols = Vec::new();
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s > 0.5 {
            cols.push(u.column(i).into_owned());
        }
    }
    Ok(if cols.is_empty() {
        Subspace::empty(d)
    } else {
        Subspace::from_columns(DMatrix::from_columns(&cols), 1e-10)?
    })
}

/// Grows a maximal null subspace of a complex quadratic form from a
/// pencil-root seed. For a form whose Gram matrix has kernel dimension
/// z, the result has dimension `floor((d - z)/2) + z`.
pub fn max_null_quadratic(
    form: &dyn SymmetricForm<C64>,
    cfg: &ConstructionConfig,
) -> Result<Subspace<C64>> {
    cfg.validate()?;
    if form.degree() != 2 {
        return Err(Error::InvalidArgument(
            "maximal null construction requires a degree-2 form".into(),
        ));
    }
    let d = form.dim();
    if d < 2 {
        return Err(Error::InvalidArgument(
            "ambient dimension must be at least 2".into(),
        ));
    }
    let e0 = DVector::from_fn(d, |r, _| if r == 0 { C64::from_real(1.0) } else { C64::new(0.0, 0.0) });
    let e1 = DVector::from_fn(d, |r, _| if r == 1 { C64::from_real(1.0) } else { C64::new(0.0, 0.0) });
    let seed = zero_on_pencil(form, &e0, &e1, cfg)?;
    let mut h = Subspace::from_vector(seed).orthonormalize(cfg.rank_tol)?;

    let gram = gram_matrix(form)?;
    for _ in 0..=d {
        match extend_with_gram(form, &gram, &h, cfg)? {
            Extension::Extended(next) => h = next,
            Extension::Maximal => {
                let cert = certify_null_seeded(form, &h, cfg.tolerance, cfg.rng_seed)?;
                if !cert.pass {
                    return Err(Error::Numerical(
                        "maximal subspace failed final certification".into(),
                    ));
                }
                return Ok(h);
            }
        }
    }
    Err(Error::Numerical(
        "extension loop exceeded the ambient dimension".into(),
    ))
}
