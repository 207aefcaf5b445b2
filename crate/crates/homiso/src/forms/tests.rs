use super::*;
use crate::random::{random_dense_form, random_power_sum_form, random_subspace, random_vector, rng_from_seed};
use crate::scalar::C64;
use approx::assert_relative_eq;
use nalgebra::{ComplexField, DMatrix};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn e<T: Scalar>(d: usize, i: usize) -> DVector<T> {
    let mut v = DVector::zeros(d);
    v[i] = T::one();
    v
}

/// x1^2 + x2^2 over C.
fn sum_of_squares(d: usize) -> DenseSymmetricForm<C64> {
    DenseSymmetricForm::new(
        2,
        d,
        (0..d).map(|i| (MultiIndex::single(d, i, 2), c(1.0, 0.0))),
    )
    .unwrap()
}

#[test]
fn evaluate_dense_complex_zero_point() {
    let p = sum_of_squares(2);
    let x = DVector::from_vec(vec![c(1.0, 0.0), c(0.0, 1.0)]);
    assert!(p.evaluate(&x).unwrap().modulus() < 1e-15);
    let origin = DVector::zeros(2);
    assert_eq!(p.evaluate(&origin).unwrap(), c(0.0, 0.0));
}

#[test]
fn evaluate_power_sum() {
    let p = PowerSumForm::new(
        2,
        2,
        vec![1.0],
        vec![DVector::from_vec(vec![1.0, 1.0])],
    )
    .unwrap();
    let x = DVector::from_vec(vec![1.0, 2.0]);
    assert_relative_eq!(p.evaluate(&x).unwrap(), 9.0, max_relative = 1e-14);
    assert_eq!(p.evaluate(&DVector::zeros(2)).unwrap(), 0.0);
}

#[test]
fn multilinear_of_product_monomial() {
    // P(x) = x1 x2: A(e1, e2) = c * 1!1!/2! = 1/2.
    let p = DenseSymmetricForm::<f64>::monomial(2, vec![1, 1], 1.0).unwrap();
    let a = p.multilinear_eval(&[e(2, 0), e(2, 1)]).unwrap();
    assert_relative_eq!(a, 0.5, max_relative = 1e-14);
    // Symmetry.
    let b = p.multilinear_eval(&[e(2, 1), e(2, 0)]).unwrap();
    assert_eq!(a, b);
    // Diagonal restriction equals evaluate.
    let x = DVector::from_vec(vec![3.0, -2.0]);
    let diag = p.multilinear_eval(&[x.clone(), x.clone()]).unwrap();
    assert_relative_eq!(diag, p.evaluate(&x).unwrap(), max_relative = 1e-14);
}

#[test]
fn multilinear_arity_is_checked() {
    let p = sum_of_squares(2);
    assert!(p.multilinear_eval(&[e(2, 0)]).is_err());
    let q = DenseSymmetricForm::<f64>::monomial(2, vec![2, 0], 1.0).unwrap();
    assert!(q.evaluate(&DVector::from_vec(vec![1.0, 2.0, 3.0])).is_err());
}

#[test]
fn polarize_oracle_examples() {
    let sq = DenseSymmetricForm::<f64>::monomial(2, vec![2, 0], 1.0).unwrap();
    assert_relative_eq!(
        polarize_oracle(&sq, &[e(2, 0), e(2, 0)]).unwrap(),
        1.0,
        max_relative = 1e-12
    );
    let xy = DenseSymmetricForm::<f64>::monomial(2, vec![1, 1], 1.0).unwrap();
    assert_relative_eq!(
        polarize_oracle(&xy, &[e(2, 0), e(2, 1)]).unwrap(),
        0.5,
        max_relative = 1e-12
    );
    let cube = DenseSymmetricForm::<f64>::monomial(2, vec![3, 0], 1.0).unwrap();
    let v = polarize_oracle(&cube, &[e(2, 0), e(2, 0), e(2, 1)]).unwrap();
    assert!(v.abs() < 1e-12);
}

#[test]
fn polarize_oracle_rejects_large_degree() {
    let p = DenseSymmetricForm::<f64>::monomial(1, vec![9], 1.0).unwrap();
    let args = vec![e(1, 0); 9];
    assert!(matches!(
        polarize_oracle(&p, &args),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn pullback_isotropic_line_is_zero() {
    let p = sum_of_squares(2);
    let basis = Subspace::from_columns(
        DMatrix::from_column_slice(2, 1, &[c(1.0, 0.0), c(0.0, 1.0)]),
        1e-10,
    )
    .unwrap();
    let q = pullback(&p, &basis).unwrap();
    assert_eq!(q.coefficients().len(), 1);
    assert!(q.max_abs_coeff() < 1e-14);
}

#[test]
fn pullback_identity_preserves_coefficients() {
    let mut rng = rng_from_seed(11);
    let p = random_dense_form::<C64>(3, 4, &mut rng);
    let q = pullback(&p, &Subspace::leading_coordinates(4, 4)).unwrap();
    for (m, c0) in p.coefficients() {
        assert_relative_eq!((q.coefficient(m) - *c0).modulus(), 0.0, epsilon = 1e-12);
    }
}

#[test]
fn pullback_hyperbolic_rotation() {
    // P = x1 x2 on span{(1,1),(1,-1)} becomes t1^2 - t2^2.
    let p = DenseSymmetricForm::<f64>::monomial(2, vec![1, 1], 1.0).unwrap();
    let basis = Subspace::from_columns(
        DMatrix::from_column_slice(2, 2, &[1.0, 1.0, 1.0, -1.0]),
        1e-10,
    )
    .unwrap();
    let q = pullback(&p, &basis).unwrap();
    assert_relative_eq!(q.coefficient(&MultiIndex::new(vec![2, 0])), 1.0, max_relative = 1e-13);
    assert_relative_eq!(q.coefficient(&MultiIndex::new(vec![0, 2])), -1.0, max_relative = 1e-13);
    assert!(q.coefficient(&MultiIndex::new(vec![1, 1])).abs() < 1e-13);
}

#[test]
fn certify_null_pass_and_fail() {
    let p = sum_of_squares(2);
    let iso = Subspace::from_columns(
        DMatrix::from_column_slice(2, 1, &[c(1.0, 0.0), c(0.0, 1.0)]),
        1e-10,
    )
    .unwrap();
    let report = certify_null(&p, &iso, 1e-10).unwrap();
    assert!(report.pass);
    assert!(report.relative_residual <= 1e-10);

    let sq = DenseSymmetricForm::<f64>::monomial(2, vec![2, 0], 1.0).unwrap();
    let line = Subspace::<f64>::leading_coordinates(2, 1);
    let report = certify_null(&sq, &line, 1e-10).unwrap();
    assert!(!report.pass);
    assert!(report.relative_residual > 0.5 && report.relative_residual < 20.0);
}

#[test]
fn certify_null_empty_subspace_vacuous() {
    let sq = DenseSymmetricForm::<f64>::monomial(2, vec![2, 0], 1.0).unwrap();
    let report = certify_null(&sq, &Subspace::empty(2), 1e-10).unwrap();
    assert!(report.pass);
    assert_eq!(report.relative_residual, 0.0);
}

#[test]
fn certify_example_one_family_dense() {
    // diag(-1 x k, +1 x (d-k)) vanishes on span{e_j + e_{j+k}}.
    for k in 1..=3usize {
        let d = 2 * k + 1;
        let coeffs = (0..d).map(|i| {
            let sign = if i < k { -1.0 } else { 1.0 };
            (MultiIndex::single(d, i, 2), sign)
        });
        let p = DenseSymmetricForm::<f64>::new(2, d, coeffs).unwrap();
        let cols: Vec<DVector<f64>> = (0..k).map(|j| e::<f64>(d, j) + e::<f64>(d, j + k)).collect();
        let m = Subspace::from_columns(DMatrix::from_columns(&cols), 1e-10).unwrap();
        let report = certify_null(&p, &m, 1e-10).unwrap();
        assert!(report.pass, "k={k}: residual {}", report.relative_residual);
    }
}

fn check_against_oracle<T: Scalar>(form: &dyn SymmetricForm<T>, rng: &mut rand_chacha::ChaCha8Rng) {
    let n = form.degree() as usize;
    let args: Vec<DVector<T>> = (0..n).map(|_| random_vector(form.dim(), rng)).collect();
    let native = form.multilinear_eval(&args).unwrap();
    let oracle = polarize_oracle(form, &args).unwrap();
    let scale = native.modulus().max(oracle.modulus()).max(1e-6);
    assert!(
        (native - oracle).modulus() / scale < 1e-9,
        "native {native:?} vs oracle {oracle:?}"
    );
}

#[test]
fn representations_agree_with_polarization() {
    let mut rng = rng_from_seed(42);
    for trial in 0..20u32 {
        let degree = 1 + trial % 4;
        let dim = (2 + trial % 5) as usize;
        // Dense, real and complex.
        check_against_oracle::<f64>(&random_dense_form(degree, dim, &mut rng), &mut rng);
        check_against_oracle::<C64>(&random_dense_form(degree, dim, &mut rng), &mut rng);
        // Power sum.
        check_against_oracle::<C64>(
            &random_power_sum_form(degree, dim, 3, &mut rng),
            &mut rng,
        );
        // Partial application of a higher-degree dense parent.
        let parent = arc(random_dense_form::<C64>(degree + 1, dim, &mut rng));
        let fixed = vec![random_vector(dim, &mut rng)];
        check_against_oracle::<C64>(
            &PartialApplicationForm::new(parent, fixed).unwrap(),
            &mut rng,
        );
        // Pullback onto a random frame.
        let parent = arc(random_dense_form::<C64>(degree, dim, &mut rng));
        let frame = random_subspace::<C64>(dim, 1 + dim / 2, &mut rng).unwrap();
        check_against_oracle::<C64>(&PullbackForm::new(parent, frame).unwrap(), &mut rng);
    }
}

#[test]
fn homogeneity_and_slot_linearity() {
    let mut rng = rng_from_seed(7);
    for _ in 0..10 {
        let p = random_dense_form::<C64>(3, 4, &mut rng);
        let x = random_vector::<C64>(4, &mut rng);
        let lambda = C64::standard_normal(&mut rng);
        let lhs = p.evaluate(&(x.clone() * lambda)).unwrap();
        let rhs = lambda.powi(3) * p.evaluate(&x).unwrap();
        assert!((lhs - rhs).modulus() / rhs.modulus().max(1e-9) < 1e-10);

        // A(u, alpha v + beta w, z) = alpha A(u,v,z) + beta A(u,w,z).
        let (u, v, w, z) = (
            random_vector::<C64>(4, &mut rng),
            random_vector::<C64>(4, &mut rng),
            random_vector::<C64>(4, &mut rng),
            random_vector::<C64>(4, &mut rng),
        );
        let (alpha, beta) = (C64::standard_normal(&mut rng), C64::standard_normal(&mut rng));
        let mixed = v.clone() * alpha + w.clone() * beta;
        let lhs = p.multilinear_eval(&[u.clone(), mixed, z.clone()]).unwrap();
        let rhs = alpha * p.multilinear_eval(&[u.clone(), v, z.clone()]).unwrap()
            + beta * p.multilinear_eval(&[u, w, z]).unwrap();
        assert!((lhs - rhs).modulus() / rhs.modulus().max(1e-9) < 1e-10);
    }
}

#[test]
fn pullback_composes() {
    let mut rng = rng_from_seed(23);
    let p = random_dense_form::<C64>(3, 5, &mut rng);
    let b1 = random_subspace::<C64>(5, 3, &mut rng).unwrap();
    let b2 = random_subspace::<C64>(3, 2, &mut rng).unwrap();
    let step = pullback(&pullback(&p, &b1).unwrap(), &b2).unwrap();
    let direct = pullback(&p, &b1.compose(&b2).unwrap()).unwrap();
    for (m, cv) in direct.coefficients() {
        assert!(
            (step.coefficient(m) - *cv).modulus() < 1e-10 * direct.max_abs_coeff().max(1.0),
            "coefficient mismatch at {m:?}"
        );
    }
}

#[test]
fn certify_agrees_with_sampling_oracle() {
    let mut rng = rng_from_seed(99);
    for trial in 0..12 {
        let p = random_dense_form::<C64>(2 + trial % 3, 5, &mut rng);
        let b = random_subspace::<C64>(5, 2, &mut rng).unwrap();
        let report = certify_null(&p, &b, 1e-8).unwrap();

        // Sampling oracle: evaluate the restriction at C(n+k-1, k-1)
        // random points and compare relative to the form scale.
        let q = PullbackForm::new(arc(p), b.clone()).unwrap();
        let points = crate::multi_index::MultiIndex::all_of_degree(2, q.degree()).len();
        let mut worst = 0.0f64;
        for _ in 0..points {
            let t = random_vector::<C64>(2, &mut rng);
            let t = t.clone() / C64::from_real(t.norm());
            worst = worst.max(q.evaluate(&t).unwrap().modulus());
        }
        let sampled_residual = worst / report.form_scale.max(1e-300);
        let sampled_pass = sampled_residual <= 1e-8;
        assert_eq!(report.pass, sampled_pass, "trial {trial}");
    }
}

#[test]
fn dense_restrict_to_leading_drops_tail_terms() {
    let p = DenseSymmetricForm::<f64>::new(
        2,
        3,
        [
            (MultiIndex::new(vec![2, 0, 0]), 1.0),
            (MultiIndex::new(vec![1, 1, 0]), 2.0),
            (MultiIndex::new(vec![0, 1, 1]), 3.0),
        ],
    )
    .unwrap();
    let r = p.restrict_to_leading(2);
    assert_eq!(r.dim(), 2);
    assert_eq!(r.coefficients().len(), 2);
    assert_eq!(r.coefficient(&MultiIndex::new(vec![1, 1])), 2.0);
}

#[test]
fn real_scalar_rejects_imaginary_part() {
    assert!(f64::from_re_im(1.0, 0.5).is_none());
    assert_eq!(f64::from_re_im(1.5, 0.0), Some(1.5));
    assert_eq!(C64::from_re_im(1.0, -2.0), Some(c(1.0, -2.0)));
}
