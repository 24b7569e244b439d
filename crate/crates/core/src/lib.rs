//! Exact computations for λ-weighted Rota-Baxter Lie coalgebras.
//!
//! Scalars live in `Q` or a prime field `GF(p)`; every structure map is a
//! dense [`LinearMap`] between tensor products of finite-dimensional spaces.

pub mod coalgebra;
pub mod comodule;
pub mod cohomology;
pub mod error;
pub mod extension;
pub mod exec;
pub mod matrix;
pub mod oracle;
pub mod scalar;
pub mod solve;
pub mod tensor;
pub mod wells;

pub use coalgebra::{RBLieAlgebra, RBLieCoalgebra};
pub use comodule::RBComodule;
pub use error::{Error, Result};
pub use exec::Exec;
pub use matrix::Matrix;
pub use scalar::{FieldSpec, Scalar};
pub use tensor::{LinearMap, Signature, Space};
