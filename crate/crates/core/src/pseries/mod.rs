//! Truncated Laurent series over Artin local coefficient rings, local
//! automorphisms `sigma(t)`, the order function `v(sigma(t) - t)`, Hensel
//! lifting, and compatible tuples.
//!
//! Coefficient rings are restricted to `k` and the dual numbers
//! `k[e]/(e^2)`: every tangent-space and Krull-dimension computation happens
//! at this level. Reduction modulo the maximal ideal sends `a + e b` to `a`.

mod hensel;
mod series;
mod tuple;

pub use hensel::{compose, hensel_solve, order_function, LocalAutomorphism, OrderValue, SeriesPoly};
pub use series::TruncatedSeries;
pub use tuple::{is_compatible, lift_automorphism, CompatibleTuple};

use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::ffield::{Field, FieldElement};
use crate::scalar::Scalar;

/// Descriptor of the coefficient ring: the residue field plus whether the
/// ring is `k` itself or `k[e]/(e^2)`.
#[derive(Clone, Debug)]
pub struct ArtinRing {
    field: Field,
    dual: bool,
}

impl PartialEq for ArtinRing {
    fn eq(&self, other: &Self) -> bool {
        self.dual == other.dual
            && (Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field)
    }
}

impl ArtinRing {
    /// The residue field `k` viewed as a coefficient ring.
    pub fn base(field: &Field) -> Self {
        ArtinRing {
            field: field.clone(),
            dual: false,
        }
    }

    /// The dual numbers `k[e]/(e^2)`.
    pub fn dual(field: &Field) -> Self {
        ArtinRing {
            field: field.clone(),
            dual: true,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    pub fn zero(&self) -> ArtinScalar {
        if self.dual {
            ArtinScalar::Dual(
                FieldElement::zero(&self.field),
                FieldElement::zero(&self.field),
            )
        } else {
            ArtinScalar::Base(FieldElement::zero(&self.field))
        }
    }

    pub fn one(&self) -> ArtinScalar {
        if self.dual {
            ArtinScalar::Dual(
                FieldElement::one(&self.field),
                FieldElement::zero(&self.field),
            )
        } else {
            ArtinScalar::Base(FieldElement::one(&self.field))
        }
    }

    /// Lift a residue-field element into this ring.
    pub fn from_field(&self, a: FieldElement) -> ArtinScalar {
        if self.dual {
            let zero = FieldElement::zero(a.field());
            ArtinScalar::Dual(a, zero)
        } else {
            ArtinScalar::Base(a)
        }
    }

    /// `e * b`, only defined over the dual numbers.
    pub fn eps_times(&self, b: FieldElement) -> ArtinScalar {
        assert!(self.dual, "epsilon lives in the dual numbers");
        ArtinScalar::Dual(FieldElement::zero(&self.field), b)
    }
}

/// Element of `k` or of `k[e]/(e^2)`; `Dual(a, b)` represents `a + e b`.
#[derive(Clone, PartialEq)]
pub enum ArtinScalar {
    Base(FieldElement),
    Dual(FieldElement, FieldElement),
}

impl fmt::Debug for ArtinScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArtinScalar::Base(a) => write!(f, "{:?}", a),
            ArtinScalar::Dual(a, b) => write!(f, "({:?} + e {:?})", a, b),
        }
    }
}

impl Serialize for ArtinScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ArtinScalar::Base(a) => a.serialize(s),
            ArtinScalar::Dual(a, b) => {
                let mut seq = s.serialize_seq(Some(2))?;
                seq.serialize_element(a)?;
                seq.serialize_element(b)?;
                seq.end()
            }
        }
    }
}

impl ArtinScalar {
    pub fn ring(&self) -> ArtinRing {
        match self {
            ArtinScalar::Base(a) => ArtinRing::base(a.field()),
            ArtinScalar::Dual(a, _) => ArtinRing::dual(a.field()),
        }
    }

    /// Reduction modulo the maximal ideal: `a + e b -> a`.
    pub fn reduce(&self) -> FieldElement {
        match self {
            ArtinScalar::Base(a) => a.clone(),
            ArtinScalar::Dual(a, _) => a.clone(),
        }
    }

    /// The coefficient of `e` (zero over the base ring).
    pub fn eps_part(&self) -> FieldElement {
        match self {
            ArtinScalar::Base(a) => FieldElement::zero(a.field()),
            ArtinScalar::Dual(_, b) => b.clone(),
        }
    }

    /// View this scalar in the dual numbers.
    pub fn promote(&self) -> ArtinScalar {
        match self {
            ArtinScalar::Base(a) => {
                let zero = FieldElement::zero(a.field());
                ArtinScalar::Dual(a.clone(), zero)
            }
            dual => dual.clone(),
        }
    }

    fn parts(&self, other: &Self) -> (FieldElement, FieldElement, FieldElement, FieldElement) {
        match (self, other) {
            (ArtinScalar::Base(a), ArtinScalar::Base(c)) => {
                let z = FieldElement::zero(a.field());
                (a.clone(), z.clone(), c.clone(), z)
            }
            (ArtinScalar::Dual(a, b), ArtinScalar::Dual(c, d)) => {
                (a.clone(), b.clone(), c.clone(), d.clone())
            }
            _ => panic!("mixed Artin rings: promote explicitly before mixing k and k[e]"),
        }
    }

    fn rebuild(&self, a: FieldElement, b: FieldElement) -> Self {
        match self {
            ArtinScalar::Base(_) => {
                debug_assert!(b.is_zero());
                ArtinScalar::Base(a)
            }
            ArtinScalar::Dual(..) => ArtinScalar::Dual(a, b),
        }
    }
}

impl Scalar for ArtinScalar {
    fn zero_like(&self) -> Self {
        self.ring().zero()
    }

    fn one_like(&self) -> Self {
        self.ring().one()
    }

    fn is_zero(&self) -> bool {
        match self {
            ArtinScalar::Base(a) => a.is_zero(),
            ArtinScalar::Dual(a, b) => a.is_zero() && b.is_zero(),
        }
    }

    fn is_unit(&self) -> bool {
        !self.reduce().is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        let (a, b, c, d) = self.parts(rhs);
        self.rebuild(a.add_ref(&c), b.add_ref(&d))
    }

    fn sub(&self, rhs: &Self) -> Self {
        let (a, b, c, d) = self.parts(rhs);
        self.rebuild(a.sub_ref(&c), b.sub_ref(&d))
    }

    fn mul(&self, rhs: &Self) -> Self {
        // (a + e b)(c + e d) = ac + e(ad + bc)
        let (a, b, c, d) = self.parts(rhs);
        self.rebuild(
            a.mul_ref(&c),
            a.mul_ref(&d).add_ref(&b.mul_ref(&c)),
        )
    }

    fn neg(&self) -> Self {
        match self {
            ArtinScalar::Base(a) => ArtinScalar::Base(a.neg_ref()),
            ArtinScalar::Dual(a, b) => ArtinScalar::Dual(a.neg_ref(), b.neg_ref()),
        }
    }

    fn inv(&self) -> Option<Self> {
        match self {
            ArtinScalar::Base(a) => a.inverse().map(ArtinScalar::Base),
            ArtinScalar::Dual(a, b) => {
                // (a + e b)^(-1) = a^(-1) - e a^(-2) b
                let ai = a.inverse()?;
                let eps = ai.mul_ref(&ai).mul_ref(b).neg_ref();
                Some(ArtinScalar::Dual(ai, eps))
            }
        }
    }

    fn frobenius(&self, k: u32) -> Self {
        if k == 0 {
            return self.clone();
        }
        match self {
            ArtinScalar::Base(a) => ArtinScalar::Base(a.frobenius_pow(k)),
            // (a + e b)^(p^k) = a^(p^k) for odd p: the cross terms carry a
            // factor p and e^2 = 0.
            ArtinScalar::Dual(a, b) => {
                ArtinScalar::Dual(a.frobenius_pow(k), FieldElement::zero(b.field()))
            }
        }
    }

    fn characteristic(&self) -> u64 {
        self.reduce().field().p()
    }

    fn from_prime_int(&self, value: u64) -> Self {
        self.ring().from_field(FieldElement::from_int(
            self.reduce().field(),
            value,
        ))
    }
}
