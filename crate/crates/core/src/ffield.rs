//! Exact arithmetic in `F_p` and `F_{p^n}`.
//!
//! A field is described by a [`FieldDesc`] holding the odd prime `p`, the
//! extension degree `n` and a monic irreducible modulus of degree `n` over
//! `F_p`. Elements are coefficient vectors in the power basis of the modulus
//! root. The modulus is canonical: the lexicographically smallest monic
//! irreducible polynomial of degree `n`, coefficients compared low-degree
//! first as integers `0..p-1`, so two constructions of the same `(p, n)` are
//! bit-identical.
//!
//! The paper-side field is algebraically closed; here every computation picks
//! a finite subfield large enough to contain all elements in play (e.g.
//! `F_{p^{4s}}` for the root space of `Y + Y^{p^{2s}}`). Mixed-field
//! arithmetic is a programming error and panics.

use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default bound on the field size `p^n`.
pub const DEFAULT_SIZE_BOUND: u64 = 1 << 24;

/// Description of a finite field `F_{p^n}`: characteristic, degree and the
/// canonical modulus (monic, length `n + 1`, low degree first).
#[derive(Debug, PartialEq, Eq)]
pub struct FieldDesc {
    p: u64,
    n: usize,
    modulus: Vec<u64>,
}

impl FieldDesc {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Number of elements `p^n`.
    pub fn order(&self) -> u64 {
        self.p.pow(self.n as u32)
    }

    /// Monic modulus, coefficients low degree first, length `n + 1`.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
}

impl Serialize for FieldDesc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FieldDesc", 3)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("modulus", &self.modulus)?;
        st.end()
    }
}

/// Shared handle to a field description.
pub type Field = Arc<FieldDesc>;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Construct the canonical `F_{p^n}` with the default size bound.
pub fn make_field(p: u64, n: usize) -> Result<Field> {
    make_field_bounded(p, n, DEFAULT_SIZE_BOUND)
}

/// Construct the canonical `F_{p^n}` with an explicit size bound on `p^n`.
pub fn make_field_bounded(p: u64, n: usize, bound: u64) -> Result<Field> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut order: u64 = 1;
    for _ in 0..n {
        order = order
            .checked_mul(p)
            .filter(|&o| o <= bound)
            .ok_or(Error::SizeBound { p, n, bound })?;
    }
    let modulus = canonical_modulus(p, n);
    Ok(Arc::new(FieldDesc { p, n, modulus }))
}

/// Lexicographically smallest monic irreducible polynomial of degree `n`
/// over `F_p`, coefficients compared low-degree-first.
fn canonical_modulus(p: u64, n: usize) -> Vec<u64> {
    if n == 1 {
        // X itself: F_p[X]/(X) = F_p.
        return vec![0, 1];
    }
    // Iterate candidates so that the constant coefficient varies slowest.
    let mut coeffs = vec![0u64; n + 1];
    coeffs[n] = 1;
    loop {
        if poly_is_irreducible(p, &coeffs) {
            return coeffs;
        }
        // Increment the (c_{n-1}, ..., c_1, c_0) odometer, c_0 most significant.
        let mut i = n - 1;
        loop {
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            if i == 0 {
                unreachable!("irreducible polynomials of every degree exist over F_p");
            }
            i -= 1;
        }
    }
}

/// Irreducibility over `F_p` by trial division against every monic divisor of
/// degree up to `n/2`. Field sizes are capped at `2^24`, so the candidate
/// count stays desk-scale.
fn poly_is_irreducible(p: u64, poly: &[u64]) -> bool {
    let n = poly.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if poly[0] == 0 {
        return false; // divisible by X
    }
    for d in 1..=(n / 2) {
        let mut div = vec![0u64; d + 1];
        div[d] = 1;
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut v = idx;
            for c in div.iter_mut().take(d) {
                *c = v % p;
                v /= p;
            }
            if poly_rem_is_zero(p, poly, &div) {
                return false;
            }
        }
    }
    true
}

/// True iff `divisor` (monic) divides `poly` over `F_p`.
fn poly_rem_is_zero(p: u64, poly: &[u64], divisor: &[u64]) -> bool {
    let d = divisor.len() - 1;
    let mut rem = poly.to_vec();
    while rem.len() > d {
        let lead = *rem.last().unwrap();
        let shift = rem.len() - 1 - d;
        if lead != 0 {
            for (i, &c) in divisor.iter().enumerate() {
                let idx = shift + i;
                let sub = (lead * c) % p;
                rem[idx] = (rem[idx] + p * p - sub) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

/// Element of `F_{p^n}`: coordinates in the power basis of the modulus root.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    coeffs: Vec<u64>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FF{:?}", self.coeffs)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.n == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

impl FieldElement {
    pub fn zero(field: &Field) -> Self {
        FieldElement {
            field: field.clone(),
            coeffs: vec![0; field.n],
        }
    }

    pub fn one(field: &Field) -> Self {
        Self::from_int(field, 1)
    }

    /// Image of an integer under `Z -> F_p -> F_{p^n}`.
    pub fn from_int(field: &Field, value: u64) -> Self {
        let mut coeffs = vec![0; field.n];
        coeffs[0] = value % field.p;
        FieldElement {
            field: field.clone(),
            coeffs,
        }
    }

    /// Element with the given power-basis coordinates (reduced mod p).
    pub fn from_coeffs(field: &Field, coeffs: &[u64]) -> Self {
        assert_eq!(coeffs.len(), field.n, "coefficient vector length mismatch");
        FieldElement {
            field: field.clone(),
            coeffs: coeffs.iter().map(|&c| c % field.p).collect(),
        }
    }

    /// The root of the modulus, i.e. the power-basis generator `X`.
    pub fn generator(field: &Field) -> Self {
        if field.n == 1 {
            return Self::zero(field);
        }
        let mut coeffs = vec![0; field.n];
        coeffs[1] = 1;
        FieldElement {
            field: field.clone(),
            coeffs,
        }
    }

    /// Enumeration: the element whose coordinates are the base-p digits of
    /// `index`, low digit = constant coordinate. `index < p^n`.
    pub fn from_index(field: &Field, index: u64) -> Self {
        let mut coeffs = vec![0; field.n];
        let mut v = index;
        for c in coeffs.iter_mut() {
            *c = v % field.p;
            v /= field.p;
        }
        FieldElement {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn to_index(&self) -> u64 {
        let mut idx = 0u64;
        for &c in self.coeffs.iter().rev() {
            idx = idx * self.field.p + c;
        }
        idx
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field
    }

    fn check_field(&self, other: &Self) {
        assert!(
            self.same_field(other),
            "operands live in different fields: F_{}^{} vs F_{}^{}",
            self.field.p,
            self.field.n,
            other.field.p,
            other.field.n
        );
    }

    pub fn add_ref(&self, rhs: &Self) -> Self {
        self.check_field(rhs);
        let p = self.field.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| (a + b) % p)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn sub_ref(&self, rhs: &Self) -> Self {
        self.check_field(rhs);
        let p = self.field.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| (a + p - b) % p)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn neg_ref(&self) -> Self {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().map(|a| (p - a) % p).collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn mul_ref(&self, rhs: &Self) -> Self {
        self.check_field(rhs);
        let p = self.field.p;
        let n = self.field.n;
        if n == 1 {
            return FieldElement {
                field: self.field.clone(),
                coeffs: vec![(self.coeffs[0] * rhs.coeffs[0]) % p],
            };
        }
        // Schoolbook product then reduction by the monic modulus.
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        let modulus = &self.field.modulus;
        for idx in (n..prod.len()).rev() {
            let lead = prod[idx];
            if lead == 0 {
                continue;
            }
            prod[idx] = 0;
            let shift = idx - n;
            for (k, &c) in modulus.iter().enumerate().take(n) {
                let t = (lead * c) % p;
                prod[shift + k] = (prod[shift + k] + p - t) % p;
            }
        }
        prod.truncate(n);
        FieldElement {
            field: self.field.clone(),
            coeffs: prod,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat: `a^(q-2)`. `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(self.pow(self.field.order() - 2))
    }

    /// `x^(p^k)`. Reduces the exponent modulo `q - 1` first, so any `k >= 0`
    /// is cheap.
    pub fn frobenius_pow(&self, k: u32) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let group = (self.field.order() - 1) as u128;
        let mut e: u128 = 1;
        let p = self.field.p as u128;
        for _ in 0..k {
            e = (e * p) % group;
        }
        if e == 0 {
            // p^k = 0 mod (q-1) can only happen for q-1 | p^k, impossible
            // since gcd(p, q-1) = 1; keep the fallback anyway.
            return Self::one(&self.field);
        }
        self.pow(e as u64)
    }

    /// Unique p-th root (Frobenius is bijective): `x^(p^(n-1))`.
    pub fn pth_root(&self) -> Self {
        self.frobenius_pow(self.field.n as u32 - 1)
    }
}

/// `x^(p^k)` as a free function, matching the operation tables.
pub fn frobenius(x: &FieldElement, k: u32) -> FieldElement {
    x.frobenius_pow(k)
}

impl Scalar for FieldElement {
    fn zero_like(&self) -> Self {
        FieldElement::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        FieldElement::one(&self.field)
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        !FieldElement::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self.add_ref(rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.sub_ref(rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.mul_ref(rhs)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }
    fn frobenius(&self, k: u32) -> Self {
        self.frobenius_pow(k)
    }
    fn characteristic(&self) -> u64 {
        self.field.p
    }
    fn from_prime_int(&self, value: u64) -> Self {
        FieldElement::from_int(&self.field, value)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl std::ops::$trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$inner(rhs)
            }
        }
        impl std::ops::$trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$inner(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, add_ref);
impl_binop!(Sub, sub, sub_ref);
impl_binop!(Mul, mul, mul_ref);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}
