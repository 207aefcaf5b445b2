//! Zeros of a form on a two-dimensional pencil.
//!
//! For independent x, y the restriction to the pencil is the univariate
//! polynomial `p(a) = P(x + a y) = sum_j C(n, j) a^j A(x^{n-j}, y^j)`
//! whose leading coefficient is `P(y)`; over the complex field it
//! always has a root, so every form vanishes somewhere on every
//! 2-dimensional subspace.

use nalgebra::{ComplexField, DMatrix, DVector};

use super::roots::polynomial_roots;
use crate::bounds::binomial;
use crate::config::ConstructionConfig;
use crate::error::{Error, Result};
use crate::forms::SymmetricForm;
use crate::scalar::C64;
use crate::subspace::Subspace;

/// The pencil coefficients `c[t] = C(n, t) A(x^{n-t}, y^t)` for
/// `p(a) = P(x + a y)`, `t = 0..=n`.
pub fn pencil_coefficients(
    form: &dyn SymmetricForm<C64>,
    x: &DVector<C64>,
    y: &DVector<C64>,
) -> Result<Vec<C64>> {
    let n = form.degree();
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    for t in 0..=n {
        let mut args = Vec::with_capacity(n as usize);
        for _ in 0..(n - t) {
            args.push(x.clone());
        }
        for _ in 0..t {
            args.push(y.clone());
        }
        let a = form.multilinear_eval(&args)?;
        let b = binomial(u64::from(n), u64::from(t)).ok_or(Error::Overflow("C(n, t)"))?;
        coeffs.push(a * C64::from_real(b as f64));
    }
    Ok(coeffs)
}

/// A unit vector `z` in span{x, y} with `|P(z)| <= tol * scale`, where
/// `scale` is the largest pencil coefficient magnitude for the
/// normalized pair.
///
/// Fast paths: returns the normalized x (resp. y) when `P` already
/// vanishes there to tolerance, and x when the whole pencil restriction
/// vanishes. Otherwise takes the smallest-magnitude root `a` of the
/// pencil polynomial and returns the normalized `x + a y`, checking the
/// residual.
pub fn zero_on_pencil(
    form: &dyn SymmetricForm<C64>,
    x: &DVector<C64>,
    y: &DVector<C64>,
    cfg: &ConstructionConfig,
) -> Result<DVector<C64>> {
    cfg.validate()?;
    if x.len() != form.dim() || y.len() != form.dim() {
        return Err(Error::InvalidArgument(
            "pencil vectors must match the form dimension".into(),
        ));
    }
    let pair = DMatrix::from_columns(&[x.clone(), y.clone()]);
    Subspace::from_columns(pair, cfg.rank_tol)
        .map_err(|_| Error::RankDeficient("pencil vectors are numerically dependent".into()))?;

    let xn = x / C64::from_real(x.norm());
    let yn = y / C64::from_real(y.norm());

    let coeffs = pencil_coefficients(form, &xn, &yn)?;
    let scale = coeffs.iter().map(|c| c.modulus()).fold(0.0, f64::max);
    if scale == 0.0 {
        // P vanishes identically on the pencil.
        return Ok(xn);
    }
    let threshold = cfg.tolerance * scale;
    if coeffs[0].modulus() <= threshold {
        return Ok(xn);
    }
    if coeffs[coeffs.len() - 1].modulus() <= threshold {
        return Ok(yn);
    }

    let roots = polynomial_roots(&coeffs, cfg.max_root_iter)?;
    for alpha in roots {
        let z = &xn + &yn * alpha;
        let z = &z / C64::from_real(z.norm());
        let value = form.evaluate(&z)?;
        if value.modulus() <= threshold {
            return Ok(z);
        }
    }
    Err(Error::Numerical(
        "no pencil root met the residual tolerance".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::DenseSymmetricForm;
    use crate::multi_index::MultiIndex;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn e(d: usize, i: usize) -> DVector<C64> {
        let mut v = DVector::zeros(d);
        v[i] = c(1.0, 0.0);
        v
    }

    fn sum_of_squares(d: usize) -> DenseSymmetricForm<C64> {
        DenseSymmetricForm::new(
            2,
            d,
            (0..d).map(|i| (MultiIndex::single(d, i, 2), c(1.0, 0.0))),
        )
        .unwrap()
    }

    #[test]
    fn circle_form_needs_imaginary_root() {
        let p = sum_of_squares(2);
        let cfg = ConstructionConfig::default();
        let z = zero_on_pencil(&p, &e(2, 0), &e(2, 1), &cfg).unwrap();
        assert!(p.evaluate(&z).unwrap().modulus() < 1e-10);
        // z is proportional to e1 +/- i e2.
        assert!((z[0].modulus() - z[1].modulus()).abs() < 1e-10);
    }

    #[test]
    fn fast_path_returns_null_endpoint() {
        // P = x1^2 vanishes at e2.
        let p = DenseSymmetricForm::<C64>::monomial(2, vec![2, 0], c(1.0, 0.0)).unwrap();
        let cfg = ConstructionConfig::default();
        let z = zero_on_pencil(&p, &e(2, 0), &e(2, 1), &cfg).unwrap();
        assert!((z - e(2, 1)).norm() < 1e-12);
    }

    #[test]
    fn cubic_example() {
        // x1^3 + x2^3 on C^3 along (e1, e2): root satisfies a^3 = -1.
        let p = DenseSymmetricForm::<C64>::new(
            3,
            3,
            [
                (MultiIndex::new(vec![3, 0, 0]), c(1.0, 0.0)),
                (MultiIndex::new(vec![0, 3, 0]), c(1.0, 0.0)),
            ],
        )
        .unwrap();
        let cfg = ConstructionConfig::default();
        let z = zero_on_pencil(&p, &e(3, 0), &e(3, 1), &cfg).unwrap();
        assert!(p.evaluate(&z).unwrap().modulus() <= 1e-10);
        let alpha = z[1] / z[0];
        assert!((alpha.powi(3) + c(1.0, 0.0)).modulus() < 1e-10);
    }

    #[test]
    fn dependent_vectors_are_rejected() {
        let p = sum_of_squares(2);
        let cfg = ConstructionConfig::default();
        let x = e(2, 0);
        let y = &x * c(2.0, 1.0);
        assert!(matches!(
            zero_on_pencil(&p, &x, &y, &cfg),
            Err(Error::RankDeficient(_))
        ));
    }

    #[test]
    fn zero_form_returns_first_vector() {
        let p = DenseSymmetricForm::<C64>::zero(2, 2);
        let cfg = ConstructionConfig::default();
        let z = zero_on_pencil(&p, &e(2, 0), &e(2, 1), &cfg).unwrap();
        assert!((z - e(2, 0)).norm() < 1e-14);
    }
}
