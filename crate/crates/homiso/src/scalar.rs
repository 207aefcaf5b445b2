use nalgebra::{Complex, ComplexField};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

pub type C64 = Complex<f64>;

/// The scalar field a form is defined over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    Real,
    Complex,
}

impl std::fmt::Display for FieldTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldTag::Real => write!(f, "real"),
            FieldTag::Complex => write!(f, "complex"),
        }
    }
}

/// Scalar type of a form: `f64` or `Complex<f64>`.
///
/// `ComplexField<RealField = f64>` supplies the arithmetic and the
/// decompositions; this trait adds the field tag, (re, im) conversions
/// for the JSON schema, and a seeded standard-normal sample.
pub trait Scalar: ComplexField<RealField = f64> + Copy + 'static {
    const FIELD: FieldTag;

    /// Build from parts. Returns `None` over the reals when `im != 0`.
    fn from_re_im(re: f64, im: f64) -> Option<Self>;

    fn re_im(&self) -> (f64, f64);

    /// Standard normal: N(0,1) over the reals, unit-variance circular
    /// normal over the complexes.
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

impl Scalar for f64 {
    const FIELD: FieldTag = FieldTag::Real;

    fn from_re_im(re: f64, im: f64) -> Option<Self> {
        (im == 0.0).then_some(re)
    }

    fn re_im(&self) -> (f64, f64) {
        (*self, 0.0)
    }

    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
}

impl Scalar for C64 {
    const FIELD: FieldTag = FieldTag::Complex;

    fn from_re_im(re: f64, im: f64) -> Option<Self> {
        Some(Complex::new(re, im))
    }

    fn re_im(&self) -> (f64, f64) {
        (self.re, self.im)
    }

    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }
}
