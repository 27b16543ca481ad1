//! Truncated Laurent series over `k` or `k[e]/(e^2)`.
//!
//! A series stores coefficients for exponents `low .. low + len` and an
//! absolute precision: coefficients at exponents `>= prec` are unknown,
//! coefficients below `low` are zero. Precision is data and flows through
//! every operation; for regular operands (valuation >= 0) the result carries
//! the minimum of the operand precisions, and products with poles lose
//! exactly the pole depth.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ffield::FieldElement;
use crate::scalar::Scalar;

use super::{ArtinRing, ArtinScalar};

#[derive(Clone)]
pub struct TruncatedSeries {
    ring: ArtinRing,
    low: i64,
    coeffs: Vec<ArtinScalar>,
    prec: i64,
}

impl std::fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Series[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                write!(f, " {:?} t^{};", c, self.low + i as i64)?;
            }
        }
        write!(f, " O(t^{})]", self.prec)
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TruncatedSeries", 3)?;
        st.serialize_field("low", &self.low)?;
        st.serialize_field("precision", &self.prec)?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.end()
    }
}

impl TruncatedSeries {
    /// The zero series known to precision `prec`.
    pub fn zero(ring: &ArtinRing, prec: i64) -> Self {
        TruncatedSeries {
            ring: ring.clone(),
            low: prec,
            coeffs: Vec::new(),
            prec,
        }
    }

    /// `c * t^exp` known to precision `prec`.
    pub fn monomial(ring: &ArtinRing, c: ArtinScalar, exp: i64, prec: i64) -> Self {
        Self::from_coeffs(ring, exp, vec![c], prec)
    }

    /// The identity series `t`.
    pub fn identity(ring: &ArtinRing, prec: i64) -> Self {
        Self::monomial(ring, ring.one(), 1, prec)
    }

    pub fn constant(ring: &ArtinRing, c: ArtinScalar, prec: i64) -> Self {
        Self::monomial(ring, c, 0, prec)
    }

    /// Series with the given coefficients starting at exponent `low`.
    pub fn from_coeffs(ring: &ArtinRing, low: i64, coeffs: Vec<ArtinScalar>, prec: i64) -> Self {
        let mut s = TruncatedSeries {
            ring: ring.clone(),
            low,
            coeffs,
            prec,
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        // Drop coefficients at or beyond the precision.
        if self.low + self.coeffs.len() as i64 > self.prec {
            let keep = (self.prec - self.low).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        // Strip leading zeros.
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        // Strip trailing zeros (they are implied).
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.low = self.prec;
        }
    }

    pub fn ring(&self) -> &ArtinRing {
        &self.ring
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation: smallest exponent with a nonzero coefficient, `None` if the
    /// series is zero to its precision.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.low)
        }
    }

    /// Valuation with zero-to-precision collapsed to the precision itself;
    /// the right notion for precision bookkeeping in products.
    fn val_floor(&self) -> i64 {
        self.valuation().unwrap_or(self.prec)
    }

    /// Coefficient at `exp`; must be below the precision.
    pub fn coefficient(&self, exp: i64) -> ArtinScalar {
        assert!(exp < self.prec, "coefficient beyond known precision");
        if exp < self.low || exp >= self.low + self.coeffs.len() as i64 {
            self.ring.zero()
        } else {
            self.coeffs[(exp - self.low) as usize].clone()
        }
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            self.ring == other.ring,
            "series over different coefficient rings"
        );
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_ring(rhs);
        let prec = self.prec.min(rhs.prec);
        let low = self.val_floor().min(rhs.val_floor()).min(prec);
        let len = (prec - low).max(0) as usize;
        let coeffs = (0..len)
            .map(|i| {
                let e = low + i as i64;
                self.coefficient_or_zero(e).add(&rhs.coefficient_or_zero(e))
            })
            .collect();
        Self::from_coeffs(&self.ring, low, coeffs, prec)
    }

    fn coefficient_or_zero(&self, exp: i64) -> ArtinScalar {
        if exp >= self.prec || exp < self.low || exp >= self.low + self.coeffs.len() as i64 {
            self.ring.zero()
        } else {
            self.coeffs[(exp - self.low) as usize].clone()
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            ring: self.ring.clone(),
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_ring(rhs);
        let v1 = self.val_floor();
        let v2 = rhs.val_floor();
        let prec = (self.prec + v2).min(rhs.prec + v1);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(&self.ring, prec);
        }
        let low = v1 + v2;
        let len = (prec - low).max(0) as usize;
        let mut coeffs = vec![self.ring.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.low + i as i64;
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let e = ea + rhs.low + j as i64;
                if e >= prec {
                    break;
                }
                let idx = (e - low) as usize;
                coeffs[idx] = coeffs[idx].add(&a.mul(b));
            }
        }
        Self::from_coeffs(&self.ring, low, coeffs, prec)
    }

    pub fn scale(&self, c: &ArtinScalar) -> Self {
        TruncatedSeries {
            ring: self.ring.clone(),
            low: self.low,
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
            prec: self.prec,
        }
        .normalized()
    }

    fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        TruncatedSeries {
            ring: self.ring.clone(),
            low: self.low + k,
            coeffs: self.coeffs.clone(),
            prec: self.prec + k,
        }
    }

    /// Restrict the precision (never raises it).
    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        Self::from_coeffs(&self.ring, self.low, self.coeffs.clone(), prec)
    }

    /// Formal derivative d/dt.
    pub fn derivative(&self) -> Self {
        let coeffs: Vec<ArtinScalar> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let e = self.low + i as i64;
                let p = self.ring.field().p() as i64;
                let scalar = ((e % p) + p) % p;
                c.mul(&self.ring.from_field(FieldElement::from_int(
                    self.ring.field(),
                    scalar as u64,
                )))
            })
            .collect();
        Self::from_coeffs(&self.ring, self.low - 1, coeffs, self.prec - 1)
    }

    /// Inverse of a series whose reduction mod the maximal ideal is nonzero.
    ///
    /// Over `k` this is the usual Laurent inversion `t^-v * u^-1`. Over
    /// `k[e]` write the series as `e0 + e*e1`; as long as `e0 != 0` the
    /// inverse is `e0^-1 - e * e0^-2 * e1`, because `e` is nilpotent.
    pub fn invert(&self) -> Result<Self> {
        if self.ring.is_dual() {
            let e0 = self.reduce();
            let e1 = self.eps_part();
            let e0_inv = e0.invert()?;
            let correction = e0_inv.mul(&e0_inv).mul(&e1);
            return Ok(e0_inv.promote().sub(&correction.promote_as_eps()));
        }
        // Base ring: factor t^v * u with u(0) a unit.
        let v = self.valuation().ok_or(Error::NonUnitLeading)?;
        let lead = self.coefficient(v);
        let lead_inv = lead.inv().ok_or(Error::NonUnitLeading)?;
        if self.prec <= v {
            return Err(Error::PrecisionExhausted);
        }
        let rel = (self.prec - v) as usize;
        // u = self / (lead * t^v), with u(0) = 1; invert by the standard
        // recursion b_0 = 1, b_m = -sum_{i=1..m} u_i b_{m-i}.
        let u: Vec<ArtinScalar> = (0..rel)
            .map(|i| self.coefficient(v + i as i64).mul(&lead_inv))
            .collect();
        let mut b = vec![self.ring.zero(); rel];
        b[0] = self.ring.one();
        for m in 1..rel {
            let mut acc = self.ring.zero();
            for i in 1..=m {
                if !u[i].is_zero() {
                    acc = acc.add(&u[i].mul(&b[m - i]));
                }
            }
            b[m] = acc.neg();
        }
        let coeffs: Vec<ArtinScalar> = b.into_iter().map(|c| c.mul(&lead_inv)).collect();
        Ok(Self::from_coeffs(&self.ring, -v, coeffs, self.prec - 2 * v))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.invert()?))
    }

    /// Integer power; negative exponents go through `invert`.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.invert()?.pow(-e);
        }
        let mut acc: Option<Self> = None;
        let mut base = self.clone();
        let mut e = e as u64;
        if e == 0 {
            // Precision of t^0 = 1: exact within the working window.
            return Ok(Self::constant(&self.ring, self.ring.one(), self.prec));
        }
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc.unwrap())
    }

    /// Substitution `f(g)` for `g` of valuation 1 with unit leading
    /// coefficient. `f` may be Laurent; negative powers of `g` go through the
    /// inverse series.
    ///
    /// The result is valid modulo `t^min(prec_f, prec_g + v(f) - 1)`: the
    /// unknown tail of `f` enters at order `prec_f`, and the unknown tail of
    /// `g` enters through `f'(g)` at order `v(f) - 1 + prec_g`.
    pub fn subst(&self, g: &Self) -> Result<Self> {
        self.check_ring(g);
        match g.valuation() {
            Some(v) if v >= 1 => {}
            _ => return Err(Error::ValuationNotOne),
        }
        let bound = self.prec.min(g.prec + self.val_floor() - 1);
        if self.is_zero() {
            return Ok(Self::zero(&self.ring, bound));
        }
        let mut acc = Self::zero(&self.ring, bound);
        let top = self.low + self.coeffs.len() as i64 - 1;
        if top >= 0 {
            let mut gpow = Self::constant(&self.ring, self.ring.one(), bound);
            let mut e = 0i64;
            loop {
                let c = self.coefficient_or_zero(e);
                if !c.is_zero() {
                    acc = acc.add(&gpow.scale(&c));
                }
                if e == top {
                    break;
                }
                gpow = gpow.mul(g);
                e += 1;
            }
        }
        if self.low < 0 {
            let ginv = g.invert()?;
            let mut gpow = ginv.clone();
            for e in 1..=(-self.low) {
                let c = self.coefficient_or_zero(-e);
                if !c.is_zero() {
                    acc = acc.add(&gpow.scale(&c));
                }
                if e < -self.low {
                    gpow = gpow.mul(&ginv);
                }
            }
        }
        Ok(acc.truncate(bound))
    }

    /// Reduction mod the maximal ideal, as a series over the base ring.
    pub fn reduce(&self) -> Self {
        let ring = ArtinRing::base(self.ring.field());
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| ArtinScalar::Base(c.reduce()))
            .collect();
        Self::from_coeffs(&ring, self.low, coeffs, self.prec)
    }

    /// The coefficient of `e`, as a series over the base ring.
    pub fn eps_part(&self) -> Self {
        let ring = ArtinRing::base(self.ring.field());
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| ArtinScalar::Base(c.eps_part()))
            .collect();
        Self::from_coeffs(&ring, self.low, coeffs, self.prec)
    }

    /// View a base-ring series inside the dual numbers.
    pub fn promote(&self) -> Self {
        if self.ring.is_dual() {
            return self.clone();
        }
        let ring = ArtinRing::dual(self.ring.field());
        let coeffs = self.coeffs.iter().map(|c| c.promote()).collect();
        Self::from_coeffs(&ring, self.low, coeffs, self.prec)
    }

    /// Map a base-ring series `b` to `e * b` over the dual numbers.
    pub fn promote_as_eps(&self) -> Self {
        assert!(!self.ring.is_dual(), "already dual");
        let ring = ArtinRing::dual(self.ring.field());
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| ring.eps_times(c.reduce()))
            .collect();
        Self::from_coeffs(&ring, self.low, coeffs, self.prec)
    }

    /// Equality of all coefficients up to the smaller precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        if self.ring != other.ring {
            return false;
        }
        let prec = self.prec.min(other.prec);
        let lo = self.val_floor().min(other.val_floor()).min(prec);
        (lo..prec).all(|e| self.coefficient_or_zero(e) == other.coefficient_or_zero(e))
    }
}
