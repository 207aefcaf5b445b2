//! Built-in example families.
//!
//! The quadratic family diag(-1 x k, +1 x (d-k)) has every maximal
//! null subspace of dimension exactly k; the degree-n family
//! `x_1^{n-2} (x_{k+1}^2 + ... + x_d^2)` has two maximal null
//! subspaces of dimensions d-1 and k, so dimension invariance is a
//! strictly quadratic phenomenon.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::{is_maximal, MaximalityVerdict, RealQuadraticForm};
use crate::config::ConstructionConfig;
use crate::error::{Error, Result};
use crate::forms::{certify_null_seeded, DenseSymmetricForm, SymmetricForm};
use crate::multi_index::{factorial, MultiIndex};
use crate::random::rng_from_seed;
use crate::subspace::Subspace;

/// The quadratic example at truncation d: the form, the canonical
/// k-dimensional null subspace spanned by `e_j + e_{j+k}`, and its
/// (maximal) verdict.
pub struct PkExample {
    pub form: RealQuadraticForm,
    pub subspace: Subspace<f64>,
    pub verdict: MaximalityVerdict,
}

/// Builds diag(-1 x k, +1 x (d-k)) with `M_k = span{e_j + e_{j+k}}`
/// and verifies maximality. Requires `d >= 2k`, `k >= 1`.
pub fn example_pk(k: usize, d: usize, cfg: &ConstructionConfig) -> Result<PkExample> {
    if k < 1 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    if d < 2 * k {
        return Err(Error::InvalidArgument(format!(
            "truncation requires d >= 2k, got d={d}, k={k}"
        )));
    }
    let entries: Vec<f64> = (0..d).map(|i| if i < k { -1.0 } else { 1.0 }).collect();
    let form = RealQuadraticForm::from_diagonal(&entries);
    let cols: Vec<DVector<f64>> = (0..k)
        .map(|j| {
            let mut v = DVector::zeros(d);
            v[j] = 1.0;
            v[j + k] = 1.0;
            v
        })
        .collect();
    let subspace = Subspace::from_columns(DMatrix::from_columns(&cols), cfg.rank_tol)?;
    let verdict = is_maximal(&form, &subspace, cfg)?;
    Ok(PkExample {
        form,
        subspace,
        verdict,
    })
}

/// Replication report for the degree >= 3 family: two certified
/// maximal null subspaces of unequal dimension.
#[derive(Debug, Clone, Serialize)]
pub struct HigherDegreeReport {
    pub degree: u32,
    pub k: usize,
    pub dim: usize,
    /// dim(M) for the codimension-one subspace `{x : x_1 = 0}`.
    pub codim_one_dim: usize,
    /// dim(M_k) for the leading-coordinate subspace.
    pub coordinate_dim: usize,
    pub codim_one_certified: bool,
    pub coordinate_certified: bool,
    /// Structural maximality argument for M verified numerically.
    pub codim_one_maximal: bool,
    /// Structural maximality argument for M_k verified numerically.
    pub coordinate_maximal: bool,
    /// Random extension candidates tried per subspace.
    pub falsification_samples: usize,
    /// Candidates that (wrongly) certified; must be zero.
    pub codim_one_surviving_candidates: usize,
    pub coordinate_surviving_candidates: usize,
}

impl HigherDegreeReport {
    pub fn all_claims_hold(&self) -> bool {
        self.codim_one_certified
            && self.coordinate_certified
            && self.codim_one_maximal
            && self.coordinate_maximal
            && self.codim_one_surviving_candidates == 0
            && self.coordinate_surviving_candidates == 0
    }
}

/// The degree-n form `x_1^{n-2} * sum_{i > k} x_i^2` on R^d.
pub fn higher_degree_form(n: u32, k: usize, d: usize) -> Result<DenseSymmetricForm<f64>> {
    if n < 3 {
        return Err(Error::InvalidArgument("degree must be >= 3".into()));
    }
    if k < 1 || d <= k + 1 {
        return Err(Error::InvalidArgument(format!(
            "requires k >= 1 and d > k + 1, got k={k}, d={d}"
        )));
    }
    let coeffs = (k..d).map(|i| {
        let mut e = vec![0u32; d];
        e[0] = n - 2;
        e[i] += 2;
        (MultiIndex::new(e), 1.0)
    });
    DenseSymmetricForm::new(n, d, coeffs)
}

/// Certifies both canonical null subspaces of the degree-n family,
/// runs the structure-specific maximality arguments, and falsifies
/// random extension candidates.
///
/// The two arguments, numerically checked via multilinear values:
///
/// - M = {x_1 = 0}: for any y with y_1 != 0, the pullback of P to
///   `M + span{y}` contains the quadratic block `v -> A(y^{n-2}, v, v)`
///   on M, whose value on e_i (i > k) is `c * y_1^{n-2}` with
///   `c = 2/(n(n-1))`, independent of the other coordinates of y — so
///   no candidate survives.
/// - M_k = span{e_1..e_k}: a candidate may be taken orthogonal to M_k,
///   hence supported on the tail coordinates and killed by the Gram
///   matrix of `v -> A(e_1^{n-2}, v, v)` on the tail, which equals
///   `c * I` exactly.
pub fn example_higher_degree(
    n: u32,
    k: usize,
    d: usize,
    falsification_samples: usize,
    cfg: &ConstructionConfig,
) -> Result<HigherDegreeReport> {
    let form = higher_degree_form(n, k, d)?;

    // M = {x : x_1 = 0} spanned by e_2..e_d.
    let m_cols: Vec<DVector<f64>> = (1..d)
        .map(|i| {
            let mut v = DVector::zeros(d);
            v[i] = 1.0;
            v
        })
        .collect();
    let m = Subspace::from_columns(DMatrix::from_columns(&m_cols), cfg.rank_tol)?;
    let mk = Subspace::<f64>::leading_coordinates(d, k);

    let codim_one_certified = certify_null_seeded(&form, &m, cfg.tolerance, cfg.rng_seed)?.pass;
    let coordinate_certified = certify_null_seeded(&form, &mk, cfg.tolerance, cfg.rng_seed)?.pass;

    // c = (n-2)! 2! / n! = 2 / (n (n-1)).
    let c = 2.0 * factorial(n - 2) as f64 / factorial(n) as f64;
    let e1 = {
        let mut v = DVector::zeros(d);
        v[0] = 1.0;
        v
    };

    // M_k argument: Gram of A(e_1^{n-2}, ., .) on the tail equals c I.
    let mut coordinate_maximal = true;
    for a in k..d {
        for b in k..d {
            let mut args = vec![e1.clone(); (n - 2) as usize];
            let mut ea = DVector::zeros(d);
            ea[a] = 1.0;
            let mut eb = DVector::zeros(d);
            eb[b] = 1.0;
            args.push(ea);
            args.push(eb);
            let value = form.multilinear_eval(&args)?;
            let expected = if a == b { c } else { 0.0 };
            if (value - expected).abs() > cfg.tolerance * c {
                coordinate_maximal = false;
            }
        }
    }
    // Forcing identity P(y) = y_1^{n-2} * |tail(y)|^2 on random points.
    let mut rng = rng_from_seed(cfg.rng_seed ^ 0x9e3779b97f4a7c15);
    for _ in 0..16 {
        let y = crate::random::random_vector::<f64>(d, &mut rng);
        let tail: f64 = (k..d).map(|i| y[i] * y[i]).sum();
        let expected = y[0].powi((n - 2) as i32) * tail;
        let actual = form.evaluate(&y)?;
        if (actual - expected).abs() > cfg.tolerance * expected.abs().max(1.0) {
            coordinate_maximal = false;
        }
    }

    // M argument: A(y^{n-2}, e_i, e_i) = c * y_1^{n-2} for i > k,
    // independent of the rest of y.
    let mut codim_one_maximal = true;
    for trial in 0..16 {
        let y = if trial == 0 {
            e1.clone()
        } else {
            crate::random::random_vector::<f64>(d, &mut rng)
        };
        let mut ei = DVector::zeros(d);
        ei[k] = 1.0; // first tail coordinate, which lies inside M
        let mut args = vec![y.clone(); (n - 2) as usize];
        args.push(ei.clone());
        args.push(ei);
        let value = form.multilinear_eval(&args)?;
        let expected = c * y[0].powi((n - 2) as i32);
        if (value - expected).abs() > cfg.tolerance * expected.abs().max(c) {
            codim_one_maximal = false;
        }
    }

    // Randomized falsification: no sampled extension candidate may
    // certify.
    let mut codim_one_surviving = 0usize;
    let mut coordinate_surviving = 0usize;
    for _ in 0..falsification_samples {
        let y = sample_candidate(&m, &mut rng);
        let extended = m.adjoin(&y, cfg.rank_tol)?;
        if certify_null_seeded(&form, &extended, cfg.tolerance, cfg.rng_seed)?.pass {
            codim_one_surviving += 1;
        }
        let y = sample_candidate(&mk, &mut rng);
        let extended = mk.adjoin(&y, cfg.rank_tol)?;
        if certify_null_seeded(&form, &extended, cfg.tolerance, cfg.rng_seed)?.pass {
            coordinate_surviving += 1;
        }
    }

    Ok(HigherDegreeReport {
        degree: n,
        k,
        dim: d,
        codim_one_dim: d - 1,
        coordinate_dim: k,
        codim_one_certified,
        coordinate_certified,
        codim_one_maximal,
        coordinate_maximal,
        falsification_samples,
        codim_one_surviving_candidates: codim_one_surviving,
        coordinate_surviving_candidates: coordinate_surviving,
    })
}

/// Random unit vector orthogonal to the subspace (every extension of
/// the span is reachable through one).
fn sample_candidate(subspace: &Subspace<f64>, rng: &mut rand_chacha::ChaCha8Rng) -> DVector<f64> {
    loop {
        let y = crate::random::random_vector::<f64>(subspace.ambient_dim(), rng);
        let mut w = y.clone();
        let b = subspace.basis();
        let coefs = b.transpose() * &y;
        w -= b * coefs;
        let norm = w.norm();
        if norm > 1e-6 {
            return w / norm;
        }
    }
}
