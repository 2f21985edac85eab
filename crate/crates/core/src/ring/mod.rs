//! Exact arithmetic: sparse polynomials over the integers in `q`, `t` and
//! the symbolic parameters `u0..u5`, reduced fractions of them, and factored
//! products of binomials.

mod cyclotomic;
mod factor;
mod factored;
mod fraction;
mod gcd;
mod monomial;
mod parse;
mod poly;
mod rational;

pub use factor::{display_factors, DisplayFactors};
pub use factored::{poch, poch_inv_q, poch_ratio, Evaluation, FactoredProduct};
pub use fraction::FactoredFraction;
pub use gcd::{content_in, gcd, lcm};
pub use monomial::{Exps, Monomial, Var, MAX_PARAM, NVARS};
pub use parse::parse_rational;
pub use poly::MultiPoly;
pub use rational::QtRational;
