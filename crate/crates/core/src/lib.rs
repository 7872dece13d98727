//! Exact computational homological algebra for multigraded complexes of free
//! modules over a polynomial ring.
//!
//! The crate is organised bottom-up:
//!
//! - [`poly`]: exact polynomials and holomorphic differential forms over ℚ.
//! - [`ideal`]: monomial ideals, decompositions, prime filtrations and
//!   multiplicities.
//! - [`supercomplex`]: complexes with superstructure and the sign calculus of
//!   form-valued endomorphisms.
//! - [`builders`]: Koszul and Taylor complexes, mapping cones, lifting of
//!   morphisms and the three-row reduction diagram.
//! - [`homology`]: strand-wise exact homology, localization at coordinate
//!   primes and cycles of complexes.
//! - [`residue`]: the coefficient-extraction functional of a monomial complete
//!   intersection and the factorization checks built on it.
//! - [`cli`] and [`suite`]: the command line front end and the verification
//!   suites it runs.

pub mod builders;
pub mod cli;
pub mod error;
pub mod homology;
pub mod ideal;
pub mod linalg;
pub mod poly;
pub mod residue;
pub mod serial;
pub mod suite;
pub mod supercomplex;

pub use error::{Error, Result};
pub use poly::{DifferentialForm, ExponentVector, Polynomial, Rational, Term};
