//! Exact value functions on finite-dimensional algebras over valued fields.
//!
//! Values live in `ℚⁿ` with the right-to-left lexicographic order. Scalars
//! are Laurent series in several variables, possibly adjoined a square root.
//! On top of that sit gauges (value functions with semisimple graded
//! algebra), their graded rings, minimality checks and Dubrovin ring tests.

pub mod algebra;
pub mod coeff;
pub mod error;
pub mod ex51;
pub mod fdalg;
pub mod frac;
pub mod gauge;
pub mod graded;
pub mod ordered;
pub mod precision;
pub mod props;
pub mod quadratic;
pub mod rings;
pub mod sample;
pub mod scalar;
pub mod series;

pub use algebra::{Algebra, AlgebraKind, Element, Embedding};
pub use coeff::{Coeff, CoefficientField};
pub use error::{Error, Result};
pub use ex51::Example51;
pub use gauge::{BaseNorm, GaugeExpr, SurmultiplicativityReport};
pub use graded::{DefectLedger, GaugeVerification, GradedAlgebra, Verdict};
pub use ordered::{ConvexCut, ExtendedValue, Lattice, Value};
pub use precision::{Precision, PrecisionPolicy};
pub use quadratic::{BaseField, ExtensionCount, ExtensionKind, QuadraticExtension};
pub use rings::{MembershipOracle, MinimalityReport, Quotient, ScenarioConstants};
pub use scalar::{Scalar, ScalarField, ValuationHandle};
pub use series::Series;
