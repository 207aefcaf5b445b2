//! JSON schemas for forms, subspaces, and real symmetric matrices.
//!
//! Scalars are `[re, im]` pairs over the complex field; the real field
//! writes plain numbers and accepts either shape (with a zero
//! imaginary part).

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::forms::{DenseSymmetricForm, PowerSumForm, SymmetricForm};
use crate::multi_index::MultiIndex;
use crate::realquad::RealQuadraticForm;
use crate::scalar::{FieldTag, Scalar, C64};
use crate::subspace::Subspace;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Plain(f64),
    Pair([f64; 2]),
}

impl ScalarJson {
    pub fn to_scalar<T: Scalar>(self) -> Result<T> {
        let (re, im) = match self {
            ScalarJson::Plain(re) => (re, 0.0),
            ScalarJson::Pair([re, im]) => (re, im),
        };
        T::from_re_im(re, im).ok_or_else(|| {
            Error::Parse("nonzero imaginary part in a real-field value".into())
        })
    }

    pub fn from_scalar<T: Scalar>(value: T) -> Self {
        let (re, im) = value.re_im();
        match T::FIELD {
            FieldTag::Real => ScalarJson::Plain(re),
            FieldTag::Complex => ScalarJson::Pair([re, im]),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub coeff: ScalarJson,
}

/// On-disk form: `repr` is "dense" (with `terms`) or "power_sum" (with
/// `lambdas` and `functionals`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormJson {
    pub degree: u32,
    pub dim: usize,
    pub field: FieldTag,
    pub repr: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<Vec<ScalarJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub functionals: Option<Vec<Vec<ScalarJson>>>,
}

/// A parsed form of either field.
#[derive(Clone)]
pub enum AnyForm {
    Real(Arc<dyn SymmetricForm<f64>>),
    Complex(Arc<dyn SymmetricForm<C64>>),
}

impl AnyForm {
    pub fn field(&self) -> FieldTag {
        match self {
            AnyForm::Real(_) => FieldTag::Real,
            AnyForm::Complex(_) => FieldTag::Complex,
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            AnyForm::Real(f) => f.degree(),
            AnyForm::Complex(f) => f.degree(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyForm::Real(f) => f.dim(),
            AnyForm::Complex(f) => f.dim(),
        }
    }

    pub fn expect_complex(&self) -> Result<&Arc<dyn SymmetricForm<C64>>> {
        match self {
            AnyForm::Complex(f) => Ok(f),
            AnyForm::Real(_) => Err(Error::InvalidArgument("complex field required".into())),
        }
    }
}

fn build_form<T: Scalar>(json: &FormJson) -> Result<Arc<dyn SymmetricForm<T>>> {
    match json.repr.as_str() {
        "dense" => {
            let terms = json
                .terms
                .as_ref()
                .ok_or_else(|| Error::Parse("dense form requires terms".into()))?;
            let coeffs = terms
                .iter()
                .map(|t| {
                    if t.exponents.len() != json.dim {
                        return Err(Error::Parse(format!(
                            "term has {} exponents, form dimension is {}",
                            t.exponents.len(),
                            json.dim
                        )));
                    }
                    Ok((MultiIndex::new(t.exponents.clone()), t.coeff.to_scalar::<T>()?))
                })
                .collect::<Result<Vec<_>>>()?;
            let form = DenseSymmetricForm::new(json.degree, json.dim, coeffs)
                .map_err(|e| Error::Parse(e.to_string()))?;
            Ok(Arc::new(form))
        }
        "power_sum" => {
            let lambdas = json
                .lambdas
                .as_ref()
                .ok_or_else(|| Error::Parse("power_sum form requires lambdas".into()))?;
            let functionals = json
                .functionals
                .as_ref()
                .ok_or_else(|| Error::Parse("power_sum form requires functionals".into()))?;
            let weights = lambdas
                .iter()
                .map(|l| l.to_scalar::<T>())
                .collect::<Result<Vec<_>>>()?;
            let phis = functionals
                .iter()
                .map(|f| {
                    let entries = f
                        .iter()
                        .map(|s| s.to_scalar::<T>())
                        .collect::<Result<Vec<_>>>()?;
                    Ok(DVector::from_vec(entries))
                })
                .collect::<Result<Vec<_>>>()?;
            let form = PowerSumForm::new(json.degree, json.dim, weights, phis)
                .map_err(|e| Error::Parse(e.to_string()))?;
            Ok(Arc::new(form))
        }
        other => Err(Error::Parse(format!("unknown repr {other:?}"))),
    }
}

pub fn parse_form(text: &str) -> Result<AnyForm> {
    let json: FormJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("form JSON: {e}")))?;
    match json.field {
        FieldTag::Real => Ok(AnyForm::Real(build_form::<f64>(&json)?)),
        FieldTag::Complex => Ok(AnyForm::Complex(build_form::<C64>(&json)?)),
    }
}

pub fn dense_form_to_json<T: Scalar>(form: &DenseSymmetricForm<T>) -> FormJson {
    FormJson {
        degree: form.degree(),
        dim: form.dim(),
        field: T::FIELD,
        repr: "dense".into(),
        terms: Some(
            form.coefficients()
                .iter()
                .map(|(m, c)| TermJson {
                    exponents: m.exponents().to_vec(),
                    coeff: ScalarJson::from_scalar(*c),
                })
                .collect(),
        ),
        lambdas: None,
        functionals: None,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub ambient_dim: usize,
    pub k: usize,
    pub field: FieldTag,
    /// k columns, each of length ambient_dim.
    pub basis_columns: Vec<Vec<ScalarJson>>,
}

#[derive(Clone)]
pub enum AnySubspace {
    Real(Subspace<f64>),
    Complex(Subspace<C64>),
}

impl AnySubspace {
    pub fn field(&self) -> FieldTag {
        match self {
            AnySubspace::Real(_) => FieldTag::Real,
            AnySubspace::Complex(_) => FieldTag::Complex,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            AnySubspace::Real(s) => s.ambient_dim(),
            AnySubspace::Complex(s) => s.ambient_dim(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnySubspace::Real(s) => s.dim(),
            AnySubspace::Complex(s) => s.dim(),
        }
    }

    /// A real subspace can be used under a complex form; the converse
    /// cannot.
    pub fn expect_complex(&self) -> Result<Subspace<C64>> {
        match self {
            AnySubspace::Complex(s) => Ok(s.clone()),
            AnySubspace::Real(s) => {
                let basis = DMatrix::from_fn(s.ambient_dim(), s.dim(), |i, j| {
                    C64::new(s.basis()[(i, j)], 0.0)
                });
                Subspace::from_columns(basis, 1e-12)
            }
        }
    }

    pub fn expect_real(&self) -> Result<&Subspace<f64>> {
        match self {
            AnySubspace::Real(s) => Ok(s),
            AnySubspace::Complex(_) => {
                Err(Error::InvalidArgument("real subspace required".into()))
            }
        }
    }
}

fn build_subspace<T: Scalar>(json: &SubspaceJson) -> Result<Subspace<T>> {
    if json.basis_columns.len() != json.k {
        return Err(Error::Parse(format!(
            "k = {} but {} basis columns given",
            json.k,
            json.basis_columns.len()
        )));
    }
    if json.k == 0 {
        return Ok(Subspace::empty(json.ambient_dim));
    }
    let mut basis = DMatrix::<T>::zeros(json.ambient_dim, json.k);
    for (j, col) in json.basis_columns.iter().enumerate() {
        if col.len() != json.ambient_dim {
            return Err(Error::Parse(format!(
                "column {j} has length {}, ambient dimension is {}",
                col.len(),
                json.ambient_dim
            )));
        }
        for (i, s) in col.iter().enumerate() {
            basis[(i, j)] = s.to_scalar::<T>()?;
        }
    }
    Subspace::from_columns(basis, 1e-10)
}

pub fn parse_subspace(text: &str) -> Result<AnySubspace> {
    let json: SubspaceJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("subspace JSON: {e}")))?;
    match json.field {
        FieldTag::Real => Ok(AnySubspace::Real(build_subspace::<f64>(&json)?)),
        FieldTag::Complex => Ok(AnySubspace::Complex(build_subspace::<C64>(&json)?)),
    }
}

pub fn subspace_to_json<T: Scalar>(subspace: &Subspace<T>) -> SubspaceJson {
    SubspaceJson {
        ambient_dim: subspace.ambient_dim(),
        k: subspace.dim(),
        field: T::FIELD,
        basis_columns: (0..subspace.dim())
            .map(|j| {
                subspace
                    .column(j)
                    .iter()
                    .map(|&c| ScalarJson::from_scalar(c))
                    .collect()
            })
            .collect(),
    }
}

/// Real symmetric matrix input for the quadratic-form commands.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub rows: Vec<Vec<f64>>,
}

pub fn parse_matrix(text: &str) -> Result<RealQuadraticForm> {
    let json: MatrixJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix JSON: {e}")))?;
    if json.rows.len() != json.dim || json.rows.iter().any(|r| r.len() != json.dim) {
        return Err(Error::Parse("matrix rows do not match dim".into()));
    }
    let m = DMatrix::from_fn(json.dim, json.dim, |i, j| json.rows[i][j]);
    RealQuadraticForm::new(m)
}

pub fn matrix_to_json(form: &RealQuadraticForm) -> MatrixJson {
    let m = form.matrix();
    MatrixJson {
        dim: m.nrows(),
        rows: (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_dense_complex_form() {
        let text = r#"{
            "degree": 2, "dim": 2, "field": "complex", "repr": "dense",
            "terms": [
                {"exponents": [2, 0], "coeff": [1.0, 0.0]},
                {"exponents": [0, 2], "coeff": [1.0, 0.0]}
            ]
        }"#;
        let form = parse_form(text).unwrap();
        assert_eq!(form.degree(), 2);
        assert_eq!(form.dim(), 2);
        assert_eq!(form.field(), FieldTag::Complex);
        let f = form.expect_complex().unwrap();
        let x = DVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(0.0, 1.0)]);
        assert!(nalgebra::ComplexField::modulus(f.evaluate(&x).unwrap()) < 1e-14);
    }

    #[test]
    fn real_form_accepts_plain_and_rejects_imaginary() {
        let plain = r#"{
            "degree": 1, "dim": 2, "field": "real", "repr": "dense",
            "terms": [{"exponents": [1, 0], "coeff": 2.5}]
        }"#;
        assert!(parse_form(plain).is_ok());
        let pair = r#"{
            "degree": 1, "dim": 2, "field": "real", "repr": "dense",
            "terms": [{"exponents": [1, 0], "coeff": [2.5, 0.0]}]
        }"#;
        assert!(parse_form(pair).is_ok());
        let bad = r#"{
            "degree": 1, "dim": 2, "field": "real", "repr": "dense",
            "terms": [{"exponents": [1, 0], "coeff": [2.5, 1.0]}]
        }"#;
        assert!(matches!(parse_form(bad), Err(Error::Parse(_))));
    }

    #[test]
    fn parse_power_sum_form() {
        let text = r#"{
            "degree": 3, "dim": 2, "field": "complex", "repr": "power_sum",
            "lambdas": [[1.0, 0.0], [0.0, 1.0]],
            "functionals": [[[1.0, 0.0], [1.0, 0.0]], [[0.0, 0.0], [1.0, -1.0]]]
        }"#;
        let form = parse_form(text).unwrap();
        assert_eq!(form.degree(), 3);
        assert!(form.expect_complex().is_ok());
    }

    #[test]
    fn subspace_roundtrip() {
        let s = Subspace::<C64>::leading_coordinates(3, 2);
        let json = subspace_to_json(&s);
        let text = serde_json::to_string(&json).unwrap();
        let parsed = parse_subspace(&text).unwrap();
        assert_eq!(parsed.dim(), 2);
        assert_eq!(parsed.ambient_dim(), 3);
        assert_eq!(parsed.field(), FieldTag::Complex);
    }

    #[test]
    fn empty_subspace_roundtrip() {
        let s = Subspace::<f64>::empty(4);
        let text = serde_json::to_string(&subspace_to_json(&s)).unwrap();
        let parsed = parse_subspace(&text).unwrap();
        assert_eq!(parsed.dim(), 0);
    }

    #[test]
    fn matrix_parsing_and_symmetry() {
        let good = r#"{"dim": 2, "rows": [[1.0, 0.5], [0.5, -1.0]]}"#;
        assert!(parse_matrix(good).is_ok());
        let bad = r#"{"dim": 2, "rows": [[1.0, 2.0], [0.0, -1.0]]}"#;
        assert!(parse_matrix(bad).is_err());
        let shape = r#"{"dim": 3, "rows": [[1.0, 0.0], [0.0, 1.0]]}"#;
        assert!(matches!(parse_matrix(shape), Err(Error::Parse(_))));
    }

    #[test]
    fn real_subspace_lifts_to_complex() {
        let s = AnySubspace::Real(Subspace::<f64>::leading_coordinates(3, 1));
        let lifted = s.expect_complex().unwrap();
        assert_eq!(lifted.dim(), 1);
        let c = AnySubspace::Complex(Subspace::<C64>::leading_coordinates(3, 1));
        assert!(c.expect_real().is_err());
    }
}
