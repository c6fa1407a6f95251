//! Exact computations with stems of root systems and hypercomplex structures
//! on reductive homogeneous spaces.

pub mod algebra;
pub mod chevalley;
pub mod classify;
pub mod error;
pub mod hcstruct;
pub mod linalg;
pub mod pairs;
pub mod par;
pub mod roots;
pub mod scalar;
pub mod selftest;
pub mod stem;

pub use algebra::Algebra;
pub use error::{Error, Result};
