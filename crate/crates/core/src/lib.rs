//! Exact computation of automorphism signatures and descent obstructions for
//! algebraic curves over cyclotomic fields.

pub mod descent;
pub mod error;
pub mod exactnum;
pub mod linalg;
pub mod matgroup;
pub mod plane;
pub mod polyring;
pub mod ramify;
pub mod superell;
pub mod tables;

pub use error::{Error, Result};
pub use exactnum::{CyclotomicElement, GaloisElement};
pub use matgroup::{GroupDoc, ProjGroup};
pub use plane::{PlaneCurve, ProjMap};
pub use polyring::{SparsePoly, UniPoly};
pub use ramify::{OddVerdict, Signature};
pub use superell::{QGonalCurve, QGonalMap};
pub use descent::FamilyTriple;
