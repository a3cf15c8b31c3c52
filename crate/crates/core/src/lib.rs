//! Exact symbolic analysis of planar d-webs (d = 3, 4, 5) given by rational
//! first integrals: web invariants (curvature, basic invariants, subweb
//! curvatures), the abelian-equation compatibility obstruction computed by
//! two independent engines, rank classification, and verification of
//! abelian relations.

pub mod error;
pub mod expr;
pub mod obstruct;
pub mod ratfield;
pub mod webcalc;

pub use error::{Error, Result};
pub use ratfield::{RatFunc, Var, VAR_T, VAR_X, VAR_Y};
