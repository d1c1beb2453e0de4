//! F-pure thresholds, F-jumping numbers and generalized test ideals of
//! polynomials over prime fields.

pub mod basep;
pub mod cli;
pub mod constancy;
pub mod error;
pub mod froot;
pub mod groebner;
pub mod polyring;
pub mod testideal;

pub use basep::{ExponentPair, Rational, Window};
pub use error::{Error, Result};
pub use groebner::Ideal;
pub use polyring::{Monomial, Polynomial, Ring};
