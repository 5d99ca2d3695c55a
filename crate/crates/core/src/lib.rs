//! Exact symbolic engine for the quasidihedral Lie coalgebra of a finite or
//! free abelian group: cyclic words, the circle-splitting coproduct, relation
//! generators and a weight-graded coideal verifier, plus truncated generating
//! functions in formal variables.

pub mod coideal;
pub mod coproduct;
pub mod error;
pub mod genfun;
pub mod group;
pub mod lincomb;
pub mod linalg;
pub mod quasishuffle;
pub mod rational;
pub mod relations;
pub mod scaling;
pub mod star;
pub mod word;

pub use coproduct::{cojacobi_defect, coproduct, coproduct_word};
pub use error::{Error, Result};
pub use group::{GroupElement, GroupSpec};
pub use lincomb::{LinComb, TripleWedge, WedgeComb};
pub use quasishuffle::{enumerate_quasishuffles, quasishuffle_count, Quasishuffle};
pub use rational::Q;
pub use star::{depth_decompose, star_to_word, DepthDecomposition, StarWord};
pub use word::{make_word, CyclicWord};
