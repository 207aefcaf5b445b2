//! Real quadratic forms: signature, maximal null (isotropic)
//! subspaces, a complete maximality decision, and greedy extension.
//!
//! Over the reals the maximal null subspaces of a quadratic form all
//! share one dimension, `min(p, q) + z` in terms of the signature
//! (p, q, z) — the finite-dimensional invariance this module both
//! constructs and decides. The examples in [`examples`] show the
//! invariance failing for degrees >= 3.

pub mod examples;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::Serialize;

use crate::config::ConstructionConfig;
use crate::error::{Error, Result};
use crate::forms::{certify_null_seeded, ReprKind, SymmetricForm};
use crate::random::rng_from_seed;
use crate::subspace::{nullspace, Subspace};

/// `P(x) = x^T B x` for a symmetric real matrix B, with
/// `A(x, y) = x^T B y`.
#[derive(Debug, Clone)]
pub struct RealQuadraticForm {
    matrix: DMatrix<f64>,
}

impl RealQuadraticForm {
    /// Accepts a square matrix that is symmetric up to a relative
    /// tolerance of 1e-8 and symmetrizes it.
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::InvalidArgument("matrix must be square".into()));
        }
        let asym = (&matrix - matrix.transpose()).norm();
        let scale = matrix.norm();
        if asym > 1e-8 * scale.max(1.0) {
            return Err(Error::InvalidArgument(format!(
                "matrix is not symmetric (relative asymmetry {:.3e})",
                asym / scale.max(1.0)
            )));
        }
        let sym = (&matrix + matrix.transpose()) * 0.5;
        Ok(Self { matrix: sym })
    }

    pub fn from_diagonal(entries: &[f64]) -> Self {
        Self {
            matrix: DMatrix::from_diagonal(&DVector::from_row_slice(entries)),
        }
    }

    /// Seeded form with planted signature: orthogonal conjugation of a
    /// diagonal with magnitudes log-uniform in [1e-2, 1e2].
    pub fn planted(positive: usize, negative: usize, zero: usize, seed: u64) -> Self {
        let d = positive + negative + zero;
        let mut rng = rng_from_seed(seed);
        let mut diag = DVector::zeros(d);
        for i in 0..d {
            let magnitude = 10f64.powf(rng.random_range(-2.0..2.0));
            diag[i] = if i < positive {
                magnitude
            } else if i < positive + negative {
                -magnitude
            } else {
                0.0
            };
        }
        let g = DMatrix::from_fn(d, d, |_, _| {
            <f64 as crate::scalar::Scalar>::standard_normal(&mut rng)
        });
        let q = g.qr().q();
        let matrix = &q * DMatrix::from_diagonal(&diag) * q.transpose();
        Self {
            matrix: (&matrix + matrix.transpose()) * 0.5,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }
}

impl SymmetricForm<f64> for RealQuadraticForm {
    fn degree(&self) -> u32 {
        2
    }

    fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    fn repr_kind(&self) -> ReprKind {
        ReprKind::Dense
    }

    fn evaluate(&self, x: &DVector<f64>) -> Result<f64> {
        crate::forms::check_point(self, x)?;
        Ok((x.transpose() * &self.matrix * x)[(0, 0)])
    }

    fn multilinear_eval(&self, args: &[DVector<f64>]) -> Result<f64> {
        crate::forms::check_args(self, args)?;
        Ok((args[0].transpose() * &self.matrix * &args[1])[(0, 0)])
    }
}

/// Sylvester data: eigenvalue sign counts and the derived maximal
/// isotropic dimension `min(p, q) + z`.
#[derive(Debug, Clone, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    pub max_isotropic_dim: usize,
    /// Eigenvalues sorted descending.
    pub eigenvalues: Vec<f64>,
}

fn symmetric_eigen(matrix: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    if matrix.nrows() == 0 {
        return Ok((Vec::new(), DMatrix::zeros(0, 0)));
    }
    let eig = matrix
        .clone()
        .try_symmetric_eigen(1e-13, 10000)
        .ok_or_else(|| Error::Numerical("symmetric eigendecomposition did not converge".into()))?;
    // Sort descending, keeping vectors aligned.
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_columns(
        &order
            .iter()
            .map(|&i| eig.eigenvectors.column(i).into_owned())
            .collect::<Vec<_>>(),
    );
    Ok((values, vectors))
}

/// Classifies eigenvalues at threshold `rank_tol * max |lambda|`.
pub fn signature(q: &RealQuadraticForm, rank_tol: f64) -> Result<Signature> {
    let (values, _) = symmetric_eigen(&q.matrix)?;
    let max_abs = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let thr = rank_tol * max_abs;
    let positive = values.iter().filter(|&&v| v > thr).count();
    let negative = values.iter().filter(|&&v| v < -thr).count();
    let zero = values.len() - positive - negative;
    Ok(Signature {
        positive,
        negative,
        zero,
        max_isotropic_dim: positive.min(negative) + zero,
        eigenvalues: values,
    })
}

/// A certified null subspace of dimension `min(p, q) + z`, spanned by
/// hyperbolic pairs `u_i / sqrt(lambda_i) + v_i / sqrt(|mu_i|)` of
/// positive/negative eigenvectors together with the kernel.
pub fn maximal_isotropic(q: &RealQuadraticForm, cfg: &ConstructionConfig) -> Result<Subspace<f64>> {
    let (values, vectors) = symmetric_eigen(&q.matrix)?;
    let max_abs = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let thr = cfg.rank_tol * max_abs;
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut kernel = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        let col = vectors.column(i).into_owned();
        if v > thr {
            pos.push((v, col));
        } else if v < -thr {
            neg.push((v, col));
        } else {
            kernel.push(col);
        }
    }
    let pairs = pos.len().min(neg.len());
    let mut cols: Vec<DVector<f64>> = Vec::with_capacity(pairs + kernel.len());
    for i in 0..pairs {
        let (lp, ref u) = pos[i];
        let (ln, ref v) = neg[i];
        cols.push(u / lp.sqrt() + v / ln.abs().sqrt());
    }
    cols.extend(kernel);
    let subspace = if cols.is_empty() {
        Subspace::empty(q.dim())
    } else {
        Subspace::from_columns(DMatrix::from_columns(&cols), cfg.rank_tol)?
            .orthonormalize(cfg.rank_tol)?
    };
    let cert = certify_null_seeded(q, &subspace, cfg.tolerance, cfg.rng_seed)?;
    if !cert.pass {
        return Err(Error::Numerical(format!(
            "hyperbolic-pair construction failed certification \
             (relative residual {:.3e})",
            cert.relative_residual
        )));
    }
    Ok(subspace)
}

/// Decision for "is M a maximal null subspace of Q".
#[derive(Debug, Clone, Serialize)]
pub struct MaximalityVerdict {
    pub is_maximal: bool,
    /// A unit extension vector orthogonal to M, present iff not
    /// maximal.
    pub witness: Option<Vec<f64>>,
    /// Eigenvalues of the compressed form on the admissible
    /// complement, sorted descending.
    pub compressed_eigenvalues: Vec<f64>,
}

/// Data of the extension problem at M: the admissible complement C
/// (inside W = ker M^T B, orthogonal to M) and the eigendecomposition
/// of the compressed form C^T B C.
struct ExtensionProblem {
    complement: Subspace<f64>,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
}

fn extension_problem(
    q: &RealQuadraticForm,
    m: &Subspace<f64>,
    cfg: &ConstructionConfig,
) -> Result<ExtensionProblem> {
    let constraints = m.basis().transpose() * &q.matrix;
    let w = nullspace(&constraints, cfg.rank_tol)?;
    let w_sub = Subspace::from_columns(w, cfg.rank_tol)?;
    let complement = real_complement_within(&w_sub, m)?;
    if complement.dim() == 0 {
        return Ok(ExtensionProblem {
            complement,
            eigenvalues: Vec::new(),
            eigenvectors: DMatrix::zeros(0, 0),
        });
    }
    let compressed = complement.basis().transpose() * &q.matrix * complement.basis();
    let compressed = (&compressed + compressed.transpose()) * 0.5;
    let (eigenvalues, eigenvectors) = symmetric_eigen(&compressed)?;
    Ok(ExtensionProblem {
        complement,
        eigenvalues,
        eigenvectors,
    })
}

fn real_complement_within(outer: &Subspace<f64>, inner: &Subspace<f64>) -> Result<Subspace<f64>> {
    let d = outer.ambient_dim();
    if outer.dim() == 0 {
        return Ok(Subspace::empty(d));
    }
    let projected = if inner.dim() == 0 {
        outer.basis().clone()
    } else {
        let on = inner.orthonormalize(1e-12)?;
        outer.basis() - on.basis() * (on.basis().transpose() * outer.basis())
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

/// Decides maximality of a certified null subspace M.
///
/// Extension candidates live in `W = {x : M^T B x = 0}`; writing
/// y = m + c with c in a complement C of M inside W, nullity of
/// `M + span{y}` reduces to `P(c) = 0`. M is therefore maximal iff the
/// compressed form `C^T B C` is definite; otherwise a kernel vector or
/// a balanced mix `u + sqrt(l+ / |l-|) v` of opposite-sign
/// eigenvectors yields a certified witness.
pub fn is_maximal(
    q: &RealQuadraticForm,
    m: &Subspace<f64>,
    cfg: &ConstructionConfig,
) -> Result<MaximalityVerdict> {
    cfg.validate()?;
    let cert = certify_null_seeded(q, m, cfg.tolerance, cfg.rng_seed)?;
    if !cert.pass {
        return Err(Error::PreconditionFailed(format!(
            "subspace is not null (relative residual {:.3e})",
            cert.relative_residual
        )));
    }
    let problem = extension_problem(q, m, cfg)?;
    let c = problem.complement.dim();
    if c == 0 {
        return Ok(MaximalityVerdict {
            is_maximal: true,
            witness: None,
            compressed_eigenvalues: Vec::new(),
        });
    }
    let max_abs = problem.eigenvalues.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let thr = cfg.rank_tol * max_abs;
    let positive = problem.eigenvalues.iter().filter(|&&v| v > thr).count();
    let negative = problem.eigenvalues.iter().filter(|&&v| v < -thr).count();
    let zero = c - positive - negative;
    let definite = zero == 0 && (positive == 0 || negative == 0);
    if definite {
        return Ok(MaximalityVerdict {
            is_maximal: true,
            witness: None,
            compressed_eigenvalues: problem.eigenvalues,
        });
    }

    // Witness: through the radical of the compressed form if present,
    // else a balanced hyperbolic mix.
    let local = if zero > 0 {
        let idx = (0..c)
            .min_by(|&a, &b| {
                problem.eigenvalues[a]
                    .abs()
                    .total_cmp(&problem.eigenvalues[b].abs())
            })
            .expect("nonempty");
        problem.eigenvectors.column(idx).into_owned()
    } else {
        let a = problem.eigenvectors.column(0).into_owned();
        let b = problem.eigenvectors.column(c - 1).into_owned();
        let t = (problem.eigenvalues[0] / problem.eigenvalues[c - 1].abs()).sqrt();
        a + b * t
    };
    let mut witness = problem.complement.basis() * local;
    witness /= witness.norm();

    let extended = m.orthonormalize(cfg.rank_tol)?.adjoin(&witness, cfg.rank_tol)?;
    let cert = certify_null_seeded(q, &extended, cfg.tolerance, cfg.rng_seed)?;
    if !cert.pass {
        return Err(Error::Numerical(format!(
            "witness failed certification (relative residual {:.3e})",
            cert.relative_residual
        )));
    }
    Ok(MaximalityVerdict {
        is_maximal: false,
        witness: Some(witness.iter().copied().collect()),
        compressed_eigenvalues: problem.eigenvalues,
    })
}

/// Result of greedy extension: the maximal subspace reached and the
/// dimension after every step (starting with the seed's).
#[derive(Debug, Clone)]
pub struct GreedyOutcome {
    pub subspace: Subspace<f64>,
    pub dim_trace: Vec<usize>,
}

/// Repeatedly extends a null seed (default: the zero subspace) by
/// randomized witnesses until maximal. The reached dimension is always
/// `min(p, q) + z`, whatever the seed or the randomization.
pub fn greedy_maximal(
    q: &RealQuadraticForm,
    seed_subspace: Option<&Subspace<f64>>,
    rng_seed: u64,
    cfg: &ConstructionConfig,
) -> Result<GreedyOutcome> {
    cfg.validate()?;
    let mut m = match seed_subspace {
        Some(s) => {
            let cert = certify_null_seeded(q, s, cfg.tolerance, cfg.rng_seed)?;
            if !cert.pass {
                return Err(Error::PreconditionFailed(format!(
                    "seed subspace is not null (relative residual {:.3e})",
                    cert.relative_residual
                )));
            }
            s.orthonormalize(cfg.rank_tol)?
        }
        None => Subspace::empty(q.dim()),
    };
    let mut rng = rng_from_seed(rng_seed);
    let mut dim_trace = vec![m.dim()];

    for _ in 0..=q.dim() {
        let problem = extension_problem(q, &m, cfg)?;
        let c = problem.complement.dim();
        let witness = if c == 0 {
            None
        } else {
            let max_abs = problem.eigenvalues.iter().map(|v| v.abs()).fold(0.0, f64::max);
            let thr = cfg.rank_tol * max_abs;
            let pos: Vec<usize> =
                (0..c).filter(|&i| problem.eigenvalues[i] > thr).collect();
            let neg: Vec<usize> =
                (0..c).filter(|&i| problem.eigenvalues[i] < -thr).collect();
            let ker: Vec<usize> = (0..c)
                .filter(|&i| problem.eigenvalues[i].abs() <= thr)
                .collect();
            if !ker.is_empty() {
                // Random direction through the compressed radical.
                Some(random_combination(&problem, &ker, &mut rng))
            } else if !pos.is_empty() && !neg.is_empty() {
                // Random balanced hyperbolic mix: D(a) > 0 > D(b), and
                // a + sqrt(D(a)/|D(b)|) b is isotropic for D.
                let a = random_combination(&problem, &pos, &mut rng);
                let b = random_combination(&problem, &neg, &mut rng);
                let da: f64 = pos
                    .iter()
                    .map(|&i| {
                        let coef = problem.eigenvectors.column(i).dot(&a);
                        problem.eigenvalues[i] * coef * coef
                    })
                    .sum();
                let db: f64 = neg
                    .iter()
                    .map(|&i| {
                        let coef = problem.eigenvectors.column(i).dot(&b);
                        problem.eigenvalues[i] * coef * coef
                    })
                    .sum();
                Some(a + b * (da / db.abs()).sqrt())
            } else {
                None
            }
        };
        match witness {
            None => {
                return Ok(GreedyOutcome {
                    subspace: m,
                    dim_trace,
                })
            }
            Some(local) => {
                let mut w = problem.complement.basis() * local;
                w /= w.norm();
                m = m.adjoin(&w, cfg.rank_tol)?;
                let cert = certify_null_seeded(q, &m, cfg.tolerance, cfg.rng_seed)?;
                if !cert.pass {
                    return Err(Error::Numerical(format!(
                        "greedy step failed certification (relative residual {:.3e})",
                        cert.relative_residual
                    )));
                }
                dim_trace.push(m.dim());
            }
        }
    }
    Err(Error::Numerical(
        "greedy extension exceeded the ambient dimension".into(),
    ))
}

/// Random unit combination of the selected compressed eigenvectors,
/// expressed in complement coordinates.
fn random_combination(
    problem: &ExtensionProblem,
    indices: &[usize],
    rng: &mut rand_chacha::ChaCha8Rng,
) -> DVector<f64> {
    loop {
        let mut v: DVector<f64> = DVector::zeros(problem.complement.dim());
        for &i in indices {
            let coef = <f64 as crate::scalar::Scalar>::standard_normal(rng);
            v += problem.eigenvectors.column(i) * coef;
        }
        let n = v.norm();
        if n > 1e-8 {
            return v / n;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ConstructionConfig {
        ConstructionConfig::default()
    }

    #[test]
    fn signature_of_diagonal() {
        let q = RealQuadraticForm::from_diagonal(&[1.0, 1.0, -1.0, 0.0]);
        let s = signature(&q, 1e-10).unwrap();
        assert_eq!((s.positive, s.negative, s.zero), (2, 1, 1));
        assert_eq!(s.max_isotropic_dim, 2);

        let idm = RealQuadraticForm::from_diagonal(&[1.0, 1.0, 1.0]);
        let s = signature(&idm, 1e-10).unwrap();
        assert_eq!((s.positive, s.negative, s.zero), (3, 0, 0));
        assert_eq!(s.max_isotropic_dim, 0);
    }

    #[test]
    fn signature_of_zero_matrix() {
        let q = RealQuadraticForm::from_diagonal(&[0.0, 0.0]);
        let s = signature(&q, 1e-10).unwrap();
        assert_eq!((s.positive, s.negative, s.zero), (0, 0, 2));
        assert_eq!(s.max_isotropic_dim, 2);
    }

    #[test]
    fn planted_signature_roundtrip() {
        for (p, q, z, seed) in [(3, 2, 1, 7u64), (1, 4, 0, 8), (0, 0, 3, 9), (2, 2, 2, 10)] {
            let form = RealQuadraticForm::planted(p, q, z, seed);
            let s = signature(&form, 1e-10).unwrap();
            assert_eq!((s.positive, s.negative, s.zero), (p, q, z));
        }
    }

    #[test]
    fn maximal_isotropic_dimensions() {
        let q = RealQuadraticForm::from_diagonal(&[1.0, -1.0]);
        let m = maximal_isotropic(&q, &cfg()).unwrap();
        assert_eq!(m.dim(), 1);
        // Definite: only the empty subspace.
        let q = RealQuadraticForm::from_diagonal(&[1.0, 2.0, 3.0]);
        assert_eq!(maximal_isotropic(&q, &cfg()).unwrap().dim(), 0);
        // Planted (3, 2, 1) on R^6: dimension 3.
        let q = RealQuadraticForm::planted(3, 2, 1, 11);
        let m = maximal_isotropic(&q, &cfg()).unwrap();
        assert_eq!(m.dim(), 3);
    }

    #[test]
    fn hyperbolic_plane_line_is_maximal() {
        let q = RealQuadraticForm::from_diagonal(&[1.0, -1.0]);
        let m = Subspace::from_vector(DVector::from_vec(vec![1.0, 1.0]));
        let verdict = is_maximal(&q, &m, &cfg()).unwrap();
        assert!(verdict.is_maximal);
    }

    #[test]
    fn non_maximal_line_yields_witness() {
        let q = RealQuadraticForm::from_diagonal(&[1.0, -1.0, 1.0, -1.0]);
        let m = Subspace::from_vector(DVector::from_vec(vec![1.0, 1.0, 0.0, 0.0]));
        let verdict = is_maximal(&q, &m, &cfg()).unwrap();
        assert!(!verdict.is_maximal);
        let w = DVector::from_vec(verdict.witness.unwrap());
        assert!((w.norm() - 1.0).abs() < 1e-12);
        // Witness orthogonal to M.
        assert!((m.basis().transpose() * &w).norm() < 1e-10);
    }

    #[test]
    fn non_null_subspace_is_a_precondition_error() {
        let q = RealQuadraticForm::from_diagonal(&[1.0, -1.0]);
        let m = Subspace::from_vector(DVector::from_vec(vec![1.0, 0.0]));
        assert!(matches!(
            is_maximal(&q, &m, &cfg()),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn greedy_reaches_invariant_dimension() {
        let q = RealQuadraticForm::from_diagonal(&[1.0, 1.0, -1.0, -1.0]);
        for seed in 0..20u64 {
            let out = greedy_maximal(&q, None, seed, &cfg()).unwrap();
            assert_eq!(out.subspace.dim(), 2, "seed {seed}");
            assert!(out.dim_trace.iter().all(|&d| d <= 2));
        }
    }

    #[test]
    fn greedy_on_zero_matrix_fills_space() {
        let q = RealQuadraticForm::from_diagonal(&[0.0, 0.0, 0.0]);
        let out = greedy_maximal(&q, None, 0, &cfg()).unwrap();
        assert_eq!(out.subspace.dim(), 3);
    }

    #[test]
    fn greedy_respects_seed_subspace() {
        let q = RealQuadraticForm::from_diagonal(&[1.0, -1.0, 1.0, -1.0]);
        let seed_sub = Subspace::from_vector(DVector::from_vec(vec![0.0, 0.0, 1.0, 1.0]));
        let out = greedy_maximal(&q, Some(&seed_sub), 3, &cfg()).unwrap();
        assert_eq!(out.subspace.dim(), 2);
        assert_eq!(out.dim_trace.first(), Some(&1));
    }

    #[test]
    fn asymmetric_matrix_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        assert!(RealQuadraticForm::new(m).is_err());
    }

    #[test]
    fn kernel_representation_of_maximal_subspaces() {
        // For a maximal M the admissible set W = {x : M^T B x = 0}
        // contains M with dim W = dim M + |p - q|; M is exactly the
        // kernel of its own constraint functionals iff the signature
        // is balanced.
        for (p, q, z, seed) in [(2usize, 2usize, 0usize, 1u64), (3, 2, 0, 2), (3, 3, 1, 3), (1, 4, 2, 4)] {
            let form = RealQuadraticForm::planted(p, q, z, seed);
            let out = greedy_maximal(&form, None, seed, &cfg()).unwrap();
            let m = out.subspace;
            assert_eq!(m.dim(), p.min(q) + z);
            let constraints = m.basis().transpose() * form.matrix();
            let w = nullspace(&constraints, 1e-10).unwrap();
            assert_eq!(w.ncols(), m.dim() + p.abs_diff(q));
            if p == q {
                let w_sub = Subspace::from_columns(w, 1e-10).unwrap();
                assert!(m.same_span(&w_sub, 1e-10, 1e-8).unwrap());
            }
        }
    }
}
