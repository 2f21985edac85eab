//! Exact computation and verification of Pieri and recurrence formulas for
//! type-A Macdonald polynomials.

// Formulas index several parallel sequences by the same subscript.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod linalg;
pub mod macdonald;
pub mod matinv;
pub mod pieri;
pub mod recurrence;
pub mod render;
pub mod verify;
pub mod ring;
pub mod symfun;
pub mod weights;

pub use error::{Error, Result};
pub use macdonald::PExpansion;
pub use matinv::{PairParams, BoxRange, InverseReport};
pub use pieri::PieriTerm;
pub use recurrence::{ClosedForm, RecurrenceTerm};
pub use ring::{Evaluation, FactoredProduct, Monomial, MultiPoly, QtRational, Var};
pub use symfun::SymPoly;
pub use verify::{VerificationReport, VerifyOptions};
pub use weights::{DominantWeight, Partition, Variant, WeightOffset};
