//! Block null sequences: vectors x_1, x_2, ... confined to disjoint
//! coordinate blocks of a frame, with every n-fold multilinear value
//! over the sequence vanishing.
//!
//! Block j (j >= 2) has width `k_seq(n, j)`; inside it, all derived
//! forms `A(x_1^{i_1}, ..., x_{j-1}^{i_{j-1}}, .^p)` with
//! `i_1 + ... + i_{j-1} = n - p` are nulled simultaneously on a
//! 2-dimensional subspace (the block width is exactly the composition
//! bound this needs), and a pencil root of P there becomes x_j.

use std::sync::Arc;

use nalgebra::{ComplexField, DVector};

use super::general::{densify, simultaneous_null};
use super::pencil::zero_on_pencil;
use crate::bounds::BoundTable;
use crate::config::ConstructionConfig;
use crate::error::{Error, Result};
use crate::forms::{form_scale, pullback, PartialApplicationForm, SymmetricForm};
use crate::multi_index::MultiIndex;
use crate::scalar::C64;
use crate::subspace::Subspace;

/// A constructed null sequence: the vectors, the half-open column
/// ranges of the frame each vector is confined to, and the largest
/// relative residual among all n-fold multilinear values over the
/// sequence.
#[derive(Debug, Clone)]
pub struct NullSequenceResult {
    pub vectors: Vec<DVector<C64>>,
    pub block_ranges: Vec<(usize, usize)>,
    pub max_relative_residual: f64,
}

/// Frame columns required for a length-m sequence of a degree-n form:
/// `2 + sum of k_seq(n, j) for j = 2..=m`.
pub fn required_frame_columns(degree: u32, m: usize) -> Result<u64> {
    let bounds = BoundTable::new();
    let mut need: u64 = 2;
    for j in 2..=m as u64 {
        need = need
            .checked_add(bounds.k_seq(degree, j)?)
            .ok_or(Error::Overflow("frame requirement"))?;
    }
    Ok(need)
}

/// Builds the sequence inside the given frame (independent columns in
/// the form's space; the identity frame is the usual choice).
pub fn null_sequence(
    form: &dyn SymmetricForm<C64>,
    frame: &Subspace<C64>,
    m: usize,
    cfg: &ConstructionConfig,
) -> Result<NullSequenceResult> {
    cfg.validate()?;
    let n = form.degree();
    if n < 2 {
        return Err(Error::InvalidArgument(
            "null sequences are defined for forms of degree >= 2".into(),
        ));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("sequence length must be >= 1".into()));
    }
    if frame.ambient_dim() != form.dim() {
        return Err(Error::InvalidArgument(
            "frame ambient dimension does not match the form".into(),
        ));
    }
    let need = required_frame_columns(n, m)?;
    if (frame.dim() as u64) < need {
        return Err(Error::BoundViolation {
            required: Some(need),
            actual: frame.dim(),
        });
    }

    let bounds = BoundTable::new();
    let dense = densify(form)?;
    let parent: Arc<dyn SymmetricForm<C64>> = dense.clone();

    let mut vectors: Vec<DVector<C64>> = Vec::with_capacity(m);
    let mut block_ranges = Vec::with_capacity(m);

    // x_1 from the pencil on the first two frame vectors.
    let x1 = zero_on_pencil(dense.as_ref(), &frame.column(0), &frame.column(1), cfg)?;
    vectors.push(x1);
    block_ranges.push((0, 2));

    let mut cursor = 2usize;
    for j in 2..=m {
        let width = bounds.k_seq(n, j as u64)? as usize;
        let block_cols = frame.basis().columns(cursor, width).into_owned();
        let block = Subspace::from_columns(block_cols, cfg.rank_tol)?
            .orthonormalize(cfg.rank_tol)?;
        block_ranges.push((cursor, cursor + width));
        cursor += width;

        // Derived forms of each degree p, highest degree first to match
        // the composition order of the block width.
        let mut restricted: Vec<Arc<dyn SymmetricForm<C64>>> = Vec::new();
        for pdeg in (1..n).rev() {
            for alpha in MultiIndex::all_of_degree(j - 1, n - pdeg) {
                let mut fixed = Vec::new();
                for (i, &e) in alpha.exponents().iter().enumerate() {
                    for _ in 0..e {
                        fixed.push(vectors[i].clone());
                    }
                }
                let part = PartialApplicationForm::new(parent.clone(), fixed)?;
                restricted.push(Arc::new(pullback(&part, &block)?));
            }
        }

        let h2_local = simultaneous_null(&restricted, 2, cfg)?;
        let h2 = block.compose(&h2_local)?;
        let xj = zero_on_pencil(dense.as_ref(), &h2.column(0), &h2.column(1), cfg)?;
        vectors.push(xj);
    }

    let max_relative_residual = certify_sequence(dense.as_ref(), &vectors, cfg)?;
    if max_relative_residual > cfg.tolerance {
        return Err(Error::Numerical(format!(
            "sequence certification failed (relative residual {max_relative_residual:.3e})"
        )));
    }

    Ok(NullSequenceResult {
        vectors,
        block_ranges,
        max_relative_residual,
    })
}

/// Max relative residual of `A(x_{i_1}, ..., x_{i_n})` over all
/// argument multisets from the sequence.
pub fn certify_sequence(
    form: &dyn SymmetricForm<C64>,
    vectors: &[DVector<C64>],
    cfg: &ConstructionConfig,
) -> Result<f64> {
    let n = form.degree();
    let scale = form_scale(form, 2, cfg.rng_seed)?;
    let mut worst = 0.0f64;
    for multiset in MultiIndex::all_of_degree(vectors.len(), n) {
        let mut args = Vec::with_capacity(n as usize);
        for (i, &e) in multiset.exponents().iter().enumerate() {
            for _ in 0..e {
                args.push(vectors[i].clone());
            }
        }
        let value = form.multilinear_eval(&args)?.modulus();
        let rel = if scale > 0.0 {
            value / scale
        } else if value == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        worst = worst.max(rel);
    }
    Ok(worst)
}
