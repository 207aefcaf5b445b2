//! Constructive algorithms over the complex field: pencil roots,
//! greedy quadratic extension, the recursive degree-n null-subspace
//! builder, simultaneous vanishing, and block null sequences.

pub mod general;
pub mod pencil;
pub mod quadratic;
pub mod roots;
pub mod sequence;

pub use general::{null_subspace, required_dimension, simultaneous_null};
pub use pencil::{pencil_coefficients, zero_on_pencil};
pub use quadratic::{extend_null_quadratic, gram_matrix, max_null_quadratic, Extension};
pub use roots::polynomial_roots;
pub use sequence::{certify_sequence, null_sequence, required_frame_columns, NullSequenceResult};
