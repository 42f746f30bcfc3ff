//! Exact construction and verification of Manin triples, Drinfeld doubles,
//! Lie bialgebras and classical r-matrices over the field `Q(i, sqrt2)`.

pub mod bialg;
pub mod dsl;
pub mod expr;
pub mod gln;
pub mod liealg;
pub mod manin;
pub mod matrix;
pub mod report;
pub mod scalar;
pub mod sparse;
pub mod verify;

pub use bialg::{Cocommutator, BialgError};
pub use gln::GlnError;
pub use liealg::{BilinearForm, LieAlgebra, LieError, StructureTensor};
pub use manin::{DoubleAlgebra, ManinError, ManinTriple};
pub use matrix::Matrix;
pub use report::{Violation, ViolationReport};
pub use scalar::{Rational, Scalar};
pub use sparse::{ThreeTensor, TwoTensor, Vector};
