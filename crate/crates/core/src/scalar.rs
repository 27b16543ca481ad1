//! Scalar abstraction shared by the linear algebra and polynomial kernels.
//!
//! Field and ring elements in this crate carry their parameters (the
//! characteristic, the modulus, dual-number structure) at runtime, so there is
//! no nullary `zero()`: fresh constants are derived from an existing element
//! with [`Scalar::zero_like`] / [`Scalar::one_like`].

use std::fmt::Debug;

/// Element of a commutative ring of characteristic `p` with enough structure
/// for exact Gaussian elimination and Moore-determinant algebra.
///
/// Implemented by `FieldElement` (a field: every nonzero element is a unit)
/// and by `ArtinScalar` (the local rings `k` and `k[e]/(e^2)`).
pub trait Scalar: Clone + PartialEq + Debug {
    /// The zero of the ring this element lives in.
    fn zero_like(&self) -> Self;
    /// The one of the ring this element lives in.
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Units are exactly the invertible elements; over `k[e]` an element is a
    /// unit iff its reduction mod the maximal ideal is nonzero.
    fn is_unit(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for non-units.
    fn inv(&self) -> Option<Self>;
    /// `x -> x^(p^k)`, the k-th Frobenius power.
    fn frobenius(&self, k: u32) -> Self;
    /// The residue characteristic.
    fn characteristic(&self) -> u64;
    /// Embedding of `Z/p` into the ring.
    fn from_prime_int(&self, value: u64) -> Self;
}
