//! Exact computations with finite-dimensional (quasi-)Hopf algebras over
//! prime fields: structure-constant algebras and their tensor powers,
//! bialgebra and quasi-Hopf axiom checks, pseudotwists, truncated
//! exponentials, and Hochschild and Sweedler cohomology.

pub mod algebra;
pub mod catalog;
pub mod cohomology;
pub mod error;
pub mod field;
pub mod hopf;
pub mod linalg;
pub mod quasihopf;
pub mod radical;
pub mod report;
pub mod tensor;
pub mod truncexp;

pub use algebra::Algebra;
pub use error::{Error, Result};
pub use field::{PrimeField, Scalar};
pub use hopf::HopfStructure;
pub use linalg::{Matrix, SparseMatrix, Subspace};
pub use quasihopf::QuasiData;
pub use report::AxiomReport;
pub use tensor::TensorElement;
pub use truncexp::{certify_nilpotent, NilWitness};
