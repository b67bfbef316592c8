//! Exact computation with rank-3 linear q-difference systems: q-middle
//! convolution, the W(E8) action on a cubic system, and scalar reduction.

pub mod e8;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod mconv;
pub mod poly;
pub mod qcalc;
pub mod roots;
pub mod scalar;
pub mod scalarred;
pub mod smith;

pub use num_rational::BigRational as Rational;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use poly::Polynomial;
pub use scalar::{ExactDiv, Field, Scalar};

pub type RatPoly = Polynomial<Rational>;
pub type RatMatrix = Matrix<Rational>;
pub type PolyMatrix = Matrix<RatPoly>;
