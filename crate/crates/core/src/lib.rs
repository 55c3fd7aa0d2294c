//! Exact computer algebra for column-permutation-invariant ideals of
//! row-symmetric polynomials.
//!
//! The library provides sparse polynomials over the integers, rationals,
//! and prime fields in a matrix of variables `x[i,j]`, the row and column
//! group actions, the homomorphisms connecting the ambient rings, the
//! generator families, Groebner-basis and multigraded membership oracles
//! for equivariant ideals at finite truncation, and the valuation-based
//! non-membership pipeline.

pub mod actions;
pub mod error;
pub mod families;
pub mod monomial;
pub mod morphisms;
pub mod obstruction;
pub mod parse;
pub mod poly;
pub mod equivariant;
pub mod groebner;
pub mod linalg;
pub mod ring;

pub use error::{Error, Result};
pub use monomial::{Monomial, MonomialOrder, MultiDegree, VarKind, Variable};
pub use parse::parse_polynomial;
pub use poly::Polynomial;
pub use ring::{Coeff, CoefficientRing, Prime};
