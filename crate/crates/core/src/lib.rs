//! Exact computations in the shuffle algebra of a symmetric quiver.
//!
//! The crate provides the shuffle product and bracket of a zeta kernel, the
//! perverse filtration `F^d` by direct and recursive criteria, BPS bases and
//! PBW checks, wheel conditions for tripled quivers, and counts of
//! absolutely indecomposable representations over small finite fields.
//!
//! Algorithms are generic over the coefficient field via [`Scalar`]; the
//! aliases below fix the exact rational instance.

pub mod catalog;
pub mod dimvec;
pub mod error;
pub mod filtration;
pub mod kac;
pub mod kernel;
pub mod linalg;
pub mod poly;
pub mod quiver;
pub mod scalar;
pub mod shuffle;
pub mod symmetric;
pub mod wheel;

pub use dimvec::DimVec;
pub use error::Error;
pub use kernel::{KernelMode, Torus, ZetaKernel};
pub use poly::{Degree, Monomial, Polynomial, Symbol, Var};
pub use quiver::Quiver;
pub use scalar::{Gf, Rational, Scalar};
pub use shuffle::{ShuffleAlgebra, ShuffleElement, SignTwist};

pub type QPolynomial = Polynomial<Rational>;
pub type QKernel = ZetaKernel<Rational>;
pub type QAlgebra = ShuffleAlgebra<Rational>;
pub type QElement = ShuffleElement<Rational>;
pub type QFiltration = filtration::Filtration<Rational>;
