//! Exact computer algebra for automorphisms of curves in positive
//! characteristic.
//!
//! The crate computes, entirely in exact arithmetic over finite fields and
//! dual numbers:
//!
//! * finite fields `F_{p^n}` with a deterministic canonical modulus
//!   ([`ffield`]), together with exact linear algebra ([`linalg`]);
//! * additive (linearized) polynomials, Moore determinants and root spaces
//!   ([`addpoly`]);
//! * numerical (Weierstrass) semigroups and the candidate jumps of the wild
//!   ramification filtration ([`semigroup`]);
//! * truncated Laurent series over `k` and `k[e]/(e^2)`, composition, the
//!   order function, and Hensel lifting of local automorphisms ([`pseries`]);
//! * the Artin-Schreier covers `W^p - W = sum t_i X^(p^i+1) + X^(p^s+1)`,
//!   their extraspecial automorphism groups, matrix representations and
//!   local actions at infinity ([`ascurve`]);
//! * tangent spaces of deformation functors of unitriangular matrix
//!   representations, and the Krull dimension of the p-cyclic family by two
//!   routes ([`deform`]).
//!
//! Scalars are runtime-parameterized (the characteristic and the modulus are
//! data, not types), so generic code is written against the [`scalar::Scalar`]
//! trait instead of nullary-constructor numeric traits. Concrete aliases for
//! the common instantiations live at the crate root.

pub mod addpoly;
pub mod ascurve;
pub mod deform;
pub mod error;
pub mod ffield;
pub mod linalg;
pub mod poly;
pub mod pseries;
pub mod scalar;
pub mod semigroup;

pub use error::{Error, Result};
pub use ffield::{FieldDesc, FieldElement};
pub use scalar::Scalar;

/// Matrix over an extension field, the default matrix type of the crate.
pub type MatrixOverField = linalg::Matrix<ffield::FieldElement>;
/// Matrix over the Artin coefficient ring `k` or `k[e]/(e^2)`.
pub type MatrixOverArtin = linalg::Matrix<pseries::ArtinScalar>;
/// Additive polynomial with coefficients in an extension field.
pub type AdditivePolynomial = addpoly::AdditivePoly<ffield::FieldElement>;
/// Additive polynomial over the Artin ring, used for dual-number root bases.
pub type AdditivePolynomialOverArtin = addpoly::AdditivePoly<pseries::ArtinScalar>;
/// Unitriangular representation over the base field.
pub type UnitriangularRep = deform::Rep<ffield::FieldElement>;
/// Unitriangular representation over the Artin ring (deformed representation).
pub type UnitriangularRepOverArtin = deform::Rep<pseries::ArtinScalar>;
