//! The recursive null-subspace construction for complex forms of any
//! degree, and simultaneous vanishing for families of forms.
//!
//! A degree-n form on a complex space of dimension `f_n(k)` vanishes
//! on some k-dimensional subspace. The construction realizes the
//! inductive argument behind that bound:
//!
//! 1. build a (k-1)-dimensional null subspace H1 inside the leading
//!    `f_n(k-1)` coordinates;
//! 2. take a complement N of H1 whose dimension is the composition
//!    value `f_n(k) - (k - 1)`;
//! 3. for every multi-index `a` over the H1 basis with `1 <= |a| <=
//!    n-1` (level by level, lexicographic within a level), shrink the
//!    working subspace to a null subspace of the derived form
//!    `P_a(x) = A(x1^{a_1}, ..., x_{k-1}^{a_{k-1}}, x^{n-|a|})`,
//!    peeling one `f` layer of the composition per multi-index;
//! 4. the final 2-dimensional piece carries a pencil root y, and
//!    `H1 + span{y}` is null for P.
//!
//! Every returned subspace is certified; a construction that cannot
//! certify raises instead of returning.

use std::sync::Arc;

use nalgebra::DMatrix;

use super::pencil::zero_on_pencil;
use crate::bounds::BoundTable;
use crate::config::ConstructionConfig;
use crate::error::{Error, Result};
use crate::forms::{
    certify_null_seeded, pullback, DenseSymmetricForm, PartialApplicationForm, SymmetricForm,
};
use crate::multi_index::MultiIndex;
use crate::scalar::C64;
use crate::subspace::{nullspace, Subspace};

/// A certified k-dimensional null subspace of a complex form, built on
/// an ambient space of dimension at least `f_n(k)`.
pub fn null_subspace(
    form: &dyn SymmetricForm<C64>,
    k: usize,
    cfg: &ConstructionConfig,
) -> Result<Subspace<C64>> {
    cfg.validate()?;
    if k == 0 {
        return Ok(Subspace::empty(form.dim()));
    }
    let bounds = BoundTable::new();
    let dense = densify(form)?;
    build(&dense, k, &bounds, cfg)
}

/// The ambient dimension `f_n(k)` required by [`null_subspace`].
pub fn required_dimension(degree: u32, k: usize) -> Result<u64> {
    BoundTable::new().f(degree, k as u64)
}

pub(crate) fn densify(form: &dyn SymmetricForm<C64>) -> Result<Arc<DenseSymmetricForm<C64>>> {
    let identity = Subspace::leading_coordinates(form.dim(), form.dim());
    Ok(Arc::new(pullback(form, &identity)?))
}

fn check_bound(
    bounds: &BoundTable,
    degree: u32,
    k: usize,
    actual: usize,
) -> Result<u64> {
    let required = match bounds.f(degree, k as u64) {
        Ok(r) => r,
        Err(Error::Overflow(_)) => {
            return Err(Error::BoundViolation {
                required: None,
                actual,
            })
        }
        Err(e) => return Err(e),
    };
    if (actual as u64) < required {
        return Err(Error::BoundViolation {
            required: Some(required),
            actual,
        });
    }
    Ok(required)
}

fn standard_vector(d: usize, i: usize) -> nalgebra::DVector<C64> {
    nalgebra::DVector::from_fn(d, |r, _| {
        if r == i {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

fn build(
    p: &Arc<DenseSymmetricForm<C64>>,
    k: usize,
    bounds: &BoundTable,
    cfg: &ConstructionConfig,
) -> Result<Subspace<C64>> {
    let n = p.degree();
    let d = p.dim();
    let required = check_bound(bounds, n, k, d)?;

    let result = if n == 1 {
        // Linear functional: any k dimensions of its kernel.
        let mut row = DMatrix::<C64>::zeros(1, d);
        for i in 0..d {
            row[(0, i)] = p.coefficient(&MultiIndex::single(d, i, 1));
        }
        let kernel = nullspace(&row, cfg.rank_tol)?;
        debug_assert!(kernel.ncols() >= k);
        Subspace::from_columns(kernel.columns(0, k).into_owned(), cfg.rank_tol)?
    } else if k == 1 {
        let z = zero_on_pencil(
            p.as_ref(),
            &standard_vector(d, 0),
            &standard_vector(d, 1),
            cfg,
        )?;
        Subspace::from_vector(z)
    } else {
        general_step(p, k, required, bounds, cfg)?
    };

    let cert = certify_null_seeded(p.as_ref(), &result, cfg.tolerance, cfg.rng_seed)?;
    if !cert.pass {
        return Err(Error::Numerical(format!(
            "degree-{n} construction failed certification at k={k} \
             (relative residual {:.3e})",
            cert.relative_residual
        )));
    }
    Ok(result)
}

/// One layer of the composition to peel: a derived form of degree
/// `n - level` must be shrunk to a null subspace of dimension `target`.
struct PeelStep {
    partial_degree: u32,
    target: u64,
}

/// The composition `(f_{n-1}^[d(n,n-1,k)] o ... o f_1^[d(n,1,k)])(2)`
/// unrolled: forward values are recorded innermost-first, and peeling
/// consumes them outermost-first.
fn peel_plan(bounds: &BoundTable, n: u32, k: usize) -> Result<(Vec<PeelStep>, u64)> {
    let mut forward = Vec::new();
    let mut value: u64 = 2;
    for pdeg in 1..n {
        let times = bounds.delta(n, pdeg, k as u64)?;
        for _ in 0..times {
            forward.push(PeelStep {
                partial_degree: pdeg,
                target: value,
            });
            value = bounds.f(pdeg, value)?;
        }
    }
    forward.reverse();
    Ok((forward, value))
}

fn general_step(
    p: &Arc<DenseSymmetricForm<C64>>,
    k: usize,
    required: u64,
    bounds: &BoundTable,
    cfg: &ConstructionConfig,
) -> Result<Subspace<C64>> {
    let n = p.degree();
    let d = p.dim();

    // (a) Recurse for H1 inside the leading f_n(k-1) coordinates.
    let m = bounds.f(n, (k - 1) as u64)? as usize;
    let p_sub = Arc::new(p.restrict_to_leading(m));
    let h1_local = build(&p_sub, k - 1, bounds, cfg)?;
    let mut h1_basis = DMatrix::<C64>::zeros(d, k - 1);
    h1_basis.rows_mut(0, m).copy_from(h1_local.basis());
    let h1 = Subspace::from_columns(h1_basis, cfg.rank_tol)?;

    // (b) Complement of H1 at the composition dimension.
    let composition = (required - (k as u64 - 1)) as usize;
    let mut work = h1.orthonormal_complement(cfg.rank_tol)?.truncate(composition);

    // (c) Peel one composition layer per derived form, level by level.
    let (plan, composition_check) = peel_plan(bounds, n, k)?;
    debug_assert_eq!(composition_check, composition as u64);
    let mut plan = plan.into_iter();
    let h1_columns: Vec<nalgebra::DVector<C64>> = (0..k - 1).map(|i| h1.column(i)).collect();
    for level in 1..n {
        for alpha in MultiIndex::all_of_degree(k - 1, level) {
            let step = plan.next().expect("plan length matches multi-index count");
            debug_assert_eq!(step.partial_degree, n - level);
            let mut fixed = Vec::with_capacity(level as usize);
            for (i, &e) in alpha.exponents().iter().enumerate() {
                for _ in 0..e {
                    fixed.push(h1_columns[i].clone());
                }
            }
            let parent: Arc<dyn SymmetricForm<C64>> = p.clone();
            let partial = PartialApplicationForm::new(parent, fixed)?;
            let restricted = Arc::new(pullback(&partial, &work)?);
            let shrink = build(&restricted, step.target as usize, bounds, cfg)?;
            work = work.compose(&shrink)?;
        }
    }
    debug_assert_eq!(work.dim(), 2);

    // (d) A pencil root of P inside the final two dimensions.
    let y = zero_on_pencil(p.as_ref(), &work.column(0), &work.column(1), cfg)?;

    // (e) H1 + span{y}; y is orthogonal to H1 since the working
    // subspace stayed inside the complement.
    h1.adjoin(&y, cfg.rank_tol)
}

/// A k-dimensional subspace on which every listed form vanishes,
/// requiring ambient dimension `(f_{deg P1} o ... o f_{deg Pp})(k)`.
///
/// Builds a null subspace of the first form at the composed target
/// dimension, restricts the remaining forms to it, and recurses.
pub fn simultaneous_null(
    forms: &[Arc<dyn SymmetricForm<C64>>],
    k: usize,
    cfg: &ConstructionConfig,
) -> Result<Subspace<C64>> {
    cfg.validate()?;
    if forms.is_empty() {
        return Err(Error::InvalidArgument(
            "simultaneous vanishing requires at least one form".into(),
        ));
    }
    let d = forms[0].dim();
    if forms.iter().any(|f| f.dim() != d) {
        return Err(Error::InvalidArgument(
            "forms must share the ambient dimension".into(),
        ));
    }
    if k == 0 {
        return Ok(Subspace::empty(d));
    }
    let bounds = BoundTable::new();
    let degrees: Vec<u32> = forms.iter().map(|f| f.degree()).collect();
    let required = match bounds.compose_f(&degrees, k as u64) {
        Ok(r) => r,
        Err(Error::Overflow(_)) => {
            return Err(Error::BoundViolation {
                required: None,
                actual: d,
            })
        }
        Err(e) => return Err(e),
    };
    if (d as u64) < required {
        return Err(Error::BoundViolation {
            required: Some(required),
            actual: d,
        });
    }

    let dense: Vec<Arc<DenseSymmetricForm<C64>>> = forms
        .iter()
        .map(|f| densify(f.as_ref()))
        .collect::<Result<_>>()?;
    let result = simultaneous_rec(&dense, k, &bounds, cfg)?;

    for (i, f) in forms.iter().enumerate() {
        let cert = certify_null_seeded(f.as_ref(), &result, cfg.tolerance, cfg.rng_seed)?;
        if !cert.pass {
            return Err(Error::Numerical(format!(
                "form {i} failed certification on the joint subspace \
                 (relative residual {:.3e})",
                cert.relative_residual
            )));
        }
    }
    Ok(result)
}

fn simultaneous_rec(
    forms: &[Arc<DenseSymmetricForm<C64>>],
    k: usize,
    bounds: &BoundTable,
    cfg: &ConstructionConfig,
) -> Result<Subspace<C64>> {
    if forms.len() == 1 {
        return build(&forms[0], k, bounds, cfg);
    }
    let tail_degrees: Vec<u32> = forms[1..].iter().map(|f| f.degree()).collect();
    let inner_target = bounds.compose_f(&tail_degrees, k as u64)? as usize;
    let h = build(&forms[0], inner_target, bounds, cfg)?;
    let restricted: Vec<Arc<DenseSymmetricForm<C64>>> = forms[1..]
        .iter()
        .map(|f| pullback(f.as_ref(), &h).map(Arc::new))
        .collect::<Result<_>>()?;
    let sub = simultaneous_rec(&restricted, k, bounds, cfg)?;
    h.compose(&sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::arc;
    use crate::random::{random_dense_form, rng_from_seed};

    #[test]
    fn quadratic_at_the_exact_bound() {
        // f_2(3) = 6: every quadratic on C^6 has a 3-dimensional null
        // subspace.
        let cfg = ConstructionConfig::default();
        let mut rng = rng_from_seed(5);
        for _ in 0..5 {
            let p = random_dense_form::<C64>(2, 6, &mut rng);
            let h = null_subspace(&p, 3, &cfg).unwrap();
            assert_eq!(h.dim(), 3);
            assert!(certify_null_seeded(&p, &h, 1e-8, 0).unwrap().pass);
        }
    }

    #[test]
    fn cubic_on_seven_dimensions() {
        // f_3(2) = 7.
        let cfg = ConstructionConfig::default();
        let mut rng = rng_from_seed(6);
        for _ in 0..3 {
            let p = random_dense_form::<C64>(3, 7, &mut rng);
            let h = null_subspace(&p, 2, &cfg).unwrap();
            assert_eq!(h.dim(), 2);
            let cert = certify_null_seeded(&p, &h, 1e-8, 0).unwrap();
            assert!(cert.pass, "residual {}", cert.relative_residual);
        }
    }

    #[test]
    fn k_one_returns_a_pencil_root() {
        let cfg = ConstructionConfig::default();
        let mut rng = rng_from_seed(7);
        let p = random_dense_form::<C64>(4, 2, &mut rng);
        let h = null_subspace(&p, 1, &cfg).unwrap();
        assert_eq!(h.dim(), 1);
        assert!(certify_null_seeded(&p, &h, 1e-8, 0).unwrap().pass);
    }

    #[test]
    fn bound_violation_reports_requirement() {
        let cfg = ConstructionConfig::default();
        let mut rng = rng_from_seed(8);
        let p = random_dense_form::<C64>(3, 6, &mut rng);
        match null_subspace(&p, 2, &cfg) {
            Err(Error::BoundViolation { required, actual }) => {
                assert_eq!(required, Some(7));
                assert_eq!(actual, 6);
            }
            other => panic!("expected bound violation, got {other:?}"),
        }
    }

    #[test]
    fn linear_functional_kernel() {
        let cfg = ConstructionConfig::default();
        let mut rng = rng_from_seed(9);
        let p = random_dense_form::<C64>(1, 5, &mut rng);
        let h = null_subspace(&p, 4, &cfg).unwrap();
        assert_eq!(h.dim(), 4);
        assert!(certify_null_seeded(&p, &h, 1e-10, 0).unwrap().pass);
    }

    #[test]
    fn simultaneous_two_quadratics_on_c8() {
        // f_2(f_2(2)) = 8.
        let cfg = ConstructionConfig::default();
        let mut rng = rng_from_seed(10);
        let p1 = arc(random_dense_form::<C64>(2, 8, &mut rng));
        let p2 = arc(random_dense_form::<C64>(2, 8, &mut rng));
        let h = simultaneous_null(&[p1.clone(), p2.clone()], 2, &cfg).unwrap();
        assert_eq!(h.dim(), 2);
        for p in [&p1, &p2] {
            assert!(certify_null_seeded(p.as_ref(), &h, 1e-8, 0).unwrap().pass);
        }
    }

    #[test]
    fn simultaneous_single_form_matches_null_subspace() {
        let cfg = ConstructionConfig::default();
        let mut rng = rng_from_seed(11);
        let p = random_dense_form::<C64>(2, 6, &mut rng);
        let a = null_subspace(&p, 3, &cfg).unwrap();
        let b = simultaneous_null(&[arc(p)], 3, &cfg).unwrap();
        assert_eq!(a.dim(), b.dim());
    }

    #[test]
    fn simultaneous_linear_functionals_joint_kernel() {
        // p functionals on dimension k + p leave a k-dimensional joint
        // kernel.
        let cfg = ConstructionConfig::default();
        let mut rng = rng_from_seed(12);
        let (k, p_count, d) = (2usize, 3usize, 5usize);
        let fs: Vec<Arc<dyn SymmetricForm<C64>>> = (0..p_count)
            .map(|_| arc(random_dense_form::<C64>(1, d, &mut rng)))
            .collect();
        let h = simultaneous_null(&fs, k, &cfg).unwrap();
        assert_eq!(h.dim(), k);
        for f in &fs {
            assert!(certify_null_seeded(f.as_ref(), &h, 1e-9, 0).unwrap().pass);
        }
    }

    #[test]
    fn simultaneous_empty_list_is_an_error() {
        let cfg = ConstructionConfig::default();
        assert!(matches!(
            simultaneous_null(&[], 2, &cfg),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn simultaneous_bound_violation() {
        let cfg = ConstructionConfig::default();
        let mut rng = rng_from_seed(13);
        let p1 = arc(random_dense_form::<C64>(2, 7, &mut rng));
        let p2 = arc(random_dense_form::<C64>(2, 7, &mut rng));
        match simultaneous_null(&[p1, p2], 2, &cfg) {
            Err(Error::BoundViolation { required, actual }) => {
                assert_eq!(required, Some(8));
                assert_eq!(actual, 7);
            }
            other => panic!("expected bound violation, got {other:?}"),
        }
    }

    #[test]
    fn dimension_independent_of_seed() {
        let mut rng = rng_from_seed(14);
        let p = random_dense_form::<C64>(2, 6, &mut rng);
        let a = null_subspace(&p, 3, &ConstructionConfig::with_seed(1)).unwrap();
        let b = null_subspace(&p, 3, &ConstructionConfig::with_seed(999)).unwrap();
        assert_eq!(a.dim(), b.dim());
    }

    #[test]
    fn general_recursion_consistent_with_quadratic_greedy() {
        // For degree 2 the general recursion succeeds at d = 2k, the
        // same bound the greedy extension achieves.
        let cfg = ConstructionConfig::default();
        let mut rng = rng_from_seed(15);
        for k in 2..=4usize {
            let p = random_dense_form::<C64>(2, 2 * k, &mut rng);
            let h = null_subspace(&p, k, &cfg).unwrap();
            assert_eq!(h.dim(), k);
        }
    }
}
