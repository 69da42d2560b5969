//! Exact combinatorics of graded Betti numbers for local rings.
//!
//! The crate provides, over exact rational arithmetic throughout:
//!
//! * monomials, polynomials and polynomial matrices ([`monomial`], [`poly`],
//!   [`matrix`]);
//! * Hilbert functions, Macaulay admissibility via lex segments, and
//!   lexicographic ideal construction ([`hilbert`]);
//! * Eliahou-Kervaire graded Betti tables of stable monomial ideals
//!   ([`resolution`]);
//! * degree matrices, zero/negative consecutive cancellations and exhaustive
//!   reachability of total Betti sequences ([`betti`], [`cancellation`]);
//! * codimension-two Artinian profiles, Hilbert-Burch matrices and the
//!   realization of cancellation diagrams by explicit ideals ([`codim2`]);
//! * verification of local invariants (Hilbert function, minimal generator
//!   count, membership) by truncated linear algebra ([`local`]);
//! * packaged corollary checks cross-validating closed forms against the
//!   cancellation engine ([`corollaries`]).

pub mod betti;
pub mod cancellation;
pub mod codim2;
pub mod corollaries;
pub mod error;
pub mod hilbert;
pub mod local;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod resolution;

pub use betti::{BettiTable, TableKind};
pub use cancellation::{Cancellation, CancellationClass, DegreeMatrix, Mode, SearchLimits};
pub use codim2::CodimTwoProfile;
pub use error::{Error, Result};
pub use hilbert::{HilbertFunction, MonomialIdeal, Tail};
pub use local::LocalIdeal;
pub use matrix::PolyMatrix;
pub use monomial::Monomial;
pub use poly::{Polynomial, Rational};
