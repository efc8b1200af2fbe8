//! Exact algebra for triviality and rigidity questions about deformations
//! of functions on weighted homogeneous hypersurfaces.

pub mod error;
pub mod eval;
pub mod field;
pub mod derlog;
pub mod groebner;
pub mod invariants;
mod linalg;
pub mod poly;
pub mod rigidity;
pub mod triviality;
pub mod weights;

pub use error::{Error, Result};
pub use field::VectorField;
pub use groebner::{GroebnerBasis, ModuleElement, MonomialOrdering};
pub use poly::{parse_poly, Poly, Rational, VarContext};
pub use weights::{Fil, WeightSystem};
