//! Null (isotropic) subspaces of homogeneous polynomial forms.
//!
//! A degree-n homogeneous polynomial `P(x) = A(x, ..., x)` on K^d (K
//! real or complex) vanishes identically on surprisingly large
//! subspaces when K = C. This crate constructs such subspaces and
//! certifies the results numerically:
//!
//! - [`bounds`]: the composition counts `delta(n, j, k)` and recursive
//!   dimension bounds `f_i(k)` governing the constructions.
//! - [`forms`]: dense, power-sum, partially-applied, and pulled-back
//!   representations of forms with native symmetric multilinear
//!   evaluation, an independent polarization oracle, and residual
//!   certification of `P`-null subspaces.
//! - [`construct`]: the complex constructions — pencil roots, greedy
//!   quadratic extension, the recursive degree-n null-subspace builder,
//!   simultaneous vanishing, and block null sequences.
//! - [`realquad`]: real quadratic forms — signature, maximal isotropic
//!   subspaces, a maximality decision procedure, greedy extension, and
//!   the built-in example families.
//! - [`io`]: the JSON schemas used by the CLI and the FFI layer.

pub mod bounds;
pub mod config;
pub mod error;
pub mod multi_index;
pub mod scalar;
pub mod subspace;

pub mod forms;

pub mod construct;

pub mod realquad;

pub mod io;

pub mod random;

pub use config::ConstructionConfig;
pub use error::{Error, Result};
pub use scalar::{FieldTag, Scalar, C64};
pub use subspace::Subspace;
