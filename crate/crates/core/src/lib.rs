//! Exact symbolic engine for Jacobi diagrams, Lie algebra weight systems and
//! universal formulas in Vogel's parameters.

pub mod adjoint;
pub mod algebra;
pub mod canon;
pub mod combo;
pub mod contract;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod family;
pub mod kontsevich;
pub mod linalg;
pub mod planar;
pub mod poly;
pub mod lambda;
pub mod rational;
pub mod registry;
pub mod relations;
pub mod universal;
pub mod verify;

pub use canon::{canonicalize, CanonicalKey, DiagramKey};
pub use combo::{Coeff, DiagramCombo};
pub use diagram::{disjoint_union, glue, JacobiDiagram, Kind};
pub use error::{DiagramError, EvalError};
pub use poly::{MPoly, QPoly};
pub use lambda::VogelPoint;
pub use rational::Q;
pub use registry::{registry, Family};
