//! Exact computation of Arf and Brown invariants of quadratic and
//! Z/4-enhanced spaces over F2, Seifert-matrix link invariants, signatures
//! and characteristic vectors of integer unimodular forms, and Rochlin
//! invariants of homology spheres.

pub mod enhanced;
pub mod error;
pub mod f2;
pub mod lattice;
pub mod quad;
pub mod random;
pub mod rochlin;
pub mod seifert;

pub use enhanced::{BrownValue, EnhancedSpace, GaussSum};
pub use error::{Error, Result};
pub use f2::{F2Matrix, F2Vector};
pub use lattice::{CharVector, IntLattice, IntMatrix};
pub use quad::{ArfValue, QuadClass, QuadraticSpace, DEFAULT_ENUM_CAP};
pub use rochlin::{EvenPresentation, RelativeScenario, Residual, SurfaceInvariants};
pub use seifert::{LinkInvariants, SeifertData, SurfaceData};
