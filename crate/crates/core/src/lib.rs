//! Exact affine Lagrangian relations over the Gaussian rationals, their
//! Gaussian and quantum readings, and a diagram language denoting them.

pub mod affine;
pub mod diagram;
pub mod error;
pub mod gaussian;
pub mod io;
pub mod lagrangian;
pub mod linalg;
pub mod numtheory;
pub mod scalar;

pub use affine::AffineRelation;
pub use diagram::{interpret, interpret_gaa, interpret_ordered, Calculus, Diagram, End, Node, NodeKind};
pub use error::{Error, Result};
pub use gaussian::{ExtendedGaussian, GaussMap, PhaseMatrix};
pub use io::RelationRecord;
pub use lagrangian::{ApForm, LagRel};
pub use linalg::Matrix;
pub use scalar::{circle_from_tan_half, CirclePoint, ExactField, Field, FloatComplex, GaussRat, Rational, C};
