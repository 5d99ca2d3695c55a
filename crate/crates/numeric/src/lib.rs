//! Floating-point evaluation of Hodge correlators: single-valued
//! polylogarithms, closed forms in weights ≤ 2 and depth 1, Monte Carlo
//! Feynman tree integrals, and numerical checks of relations.

pub mod check;
pub mod closed;
pub mod error;
pub mod feynman;
pub mod polylog;
pub mod trees;
pub mod types;

pub use check::{check_named, check_relation_element, Method, NamedRelation, RelationReport, TermValue};
pub use closed::correlator_closed;
pub use error::{NumError, Result};
pub use feynman::{feynman_correlator, Estimate, Estimator, IntegrationConfig};
pub use num_complex::Complex64;
pub use polylog::{dilog_sv, li_n, multi_li, polylog_sv};
pub use trees::{enumerate_plane_trees, PlaneTree, Vertex};
pub use types::{parse_complex, ComplexVal};
