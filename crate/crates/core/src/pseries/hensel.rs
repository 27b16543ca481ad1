//! Hensel lifting and local automorphisms.
//!
//! [`hensel_solve`] implements the one-step lift over `k[e]/(e^2)`: if the
//! seed solves the equation modulo the maximal ideal and the derivative at
//! the seed is not a zero divisor, then `b = seed - f(seed)/f'(seed)` is the
//! unique root congruent to the seed. [`SeriesPoly::newton_root`] is the
//! full t-adic Newton iteration over the base ring, used to expand curve
//! functions in a chosen uniformizer.

use serde::Serialize;

use crate::error::{Error, Result};

use super::series::TruncatedSeries;
use super::ArtinRing;

/// Finite Laurent polynomial in `Y` with truncated-series coefficients:
/// `sum_{e=low..} coeff[e] Y^e`. The equations solved here are the cleared
/// forms of `F(Y) = rhs(t)`.
#[derive(Clone, Debug)]
pub struct SeriesPoly {
    low: i64,
    coeffs: Vec<TruncatedSeries>,
}

impl SeriesPoly {
    pub fn new(low: i64, coeffs: Vec<TruncatedSeries>) -> Self {
        assert!(!coeffs.is_empty());
        SeriesPoly { low, coeffs }
    }

    /// Ordinary polynomial in `Y` (lowest exponent 0).
    pub fn from_coeffs(coeffs: Vec<TruncatedSeries>) -> Self {
        Self::new(0, coeffs)
    }

    pub fn ring(&self) -> &ArtinRing {
        self.coeffs[0].ring()
    }

    pub fn eval(&self, y: &TruncatedSeries) -> Result<TruncatedSeries> {
        let mut acc: Option<TruncatedSeries> = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.low + i as i64;
            let term = c.mul(&y.pow(e)?);
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        // All coefficients zero to precision: the value is zero to the
        // weakest coefficient precision.
        Ok(acc.unwrap_or_else(|| {
            let prec = self
                .coeffs
                .iter()
                .map(|c| c.precision())
                .min()
                .expect("nonempty coefficient list");
            TruncatedSeries::zero(self.ring(), prec)
        }))
    }

    /// Formal derivative in `Y`.
    pub fn derivative(&self) -> Self {
        let ring = self.ring().clone();
        let p = ring.field().p() as i64;
        let coeffs: Vec<TruncatedSeries> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let e = self.low + i as i64;
                let scalar = ((e % p) + p) % p;
                c.scale(&ring.from_field(crate::ffield::FieldElement::from_int(
                    ring.field(),
                    scalar as u64,
                )))
            })
            .collect();
        SeriesPoly {
            low: self.low - 1,
            coeffs,
        }
    }

    /// Full Newton iteration over the base ring: starting from `seed`,
    /// iterate `y <- y - f(y)/f'(y)` until `f(y)` vanishes to precision.
    /// Converges whenever `v(f(seed)) > 2 v(f'(seed))`.
    pub fn newton_root(&self, seed: &TruncatedSeries) -> Result<TruncatedSeries> {
        assert!(!self.ring().is_dual(), "newton_root runs over the base ring");
        let mut y = seed.clone();
        for _ in 0..200 {
            let fy = self.eval(&y)?;
            if fy.is_zero() {
                return Ok(y);
            }
            let dy = self.derivative().eval(&y)?;
            let correction = fy.div(&dy)?;
            if correction.is_zero() {
                return Ok(y);
            }
            let next = y.sub(&correction);
            if next.agrees_with(&y) && self.eval(&next)?.is_zero() {
                return Ok(next);
            }
            y = next;
        }
        Err(Error::PrecisionExhausted)
    }
}

/// One Newton step over the dual numbers.
///
/// Preconditions checked: `f(seed)` vanishes modulo the maximal ideal, and
/// `e = f'(seed)` has nonzero reduction (hence is not a zero divisor in the
/// Laurent-series ring). Since `e^2 = 0` in the coefficient ring, the single
/// step is exact and the root is unique among lifts of the seed: perturbing
/// the seed inside the maximal ideal returns the identical root.
pub fn hensel_solve(f: &SeriesPoly, seed: &TruncatedSeries) -> Result<TruncatedSeries> {
    let seed = if f.ring().is_dual() && !seed.ring().is_dual() {
        seed.promote()
    } else {
        seed.clone()
    };
    let value = f.eval(&seed)?;
    if !value.reduce().is_zero() {
        return Err(Error::BadHenselSeed);
    }
    let deriv = f.derivative().eval(&seed)?;
    if deriv.reduce().is_zero() {
        return Err(Error::ZeroDivisorDerivative);
    }
    if value.is_zero() {
        return Ok(seed);
    }
    let correction = value.div(&deriv)?;
    Ok(seed.sub(&correction))
}

/// A local automorphism of `A[[t]]` fixing `A`, stored through its value on
/// the uniformizer: a series of valuation 1 whose leading coefficient
/// reduces to 1.
#[derive(Clone, Debug, Serialize)]
pub struct LocalAutomorphism {
    image: TruncatedSeries,
}

impl LocalAutomorphism {
    pub fn new(image: TruncatedSeries) -> Result<Self> {
        if image.valuation() != Some(1) {
            return Err(Error::ValuationNotOne);
        }
        let lead = image.coefficient(1);
        if lead.reduce() != crate::ffield::FieldElement::one(image.ring().field()) {
            return Err(Error::ValuationNotOne);
        }
        Ok(LocalAutomorphism { image })
    }

    pub fn identity(ring: &ArtinRing, prec: i64) -> Self {
        LocalAutomorphism {
            image: TruncatedSeries::identity(ring, prec),
        }
    }

    /// The series `sigma(t)`.
    pub fn image(&self) -> &TruncatedSeries {
        &self.image
    }

    /// Composition of images: `(self . rhs)(t) = self(rhs(t))` as series
    /// substitution. With the group tables in this crate, the lift of a
    /// product `g h` ("g acts first") is `lift(g)` composed with `lift(h)`.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        let image = self.image.subst(rhs.image())?;
        LocalAutomorphism::new(image)
    }

    pub fn reduce(&self) -> Self {
        LocalAutomorphism {
            image: self.image.reduce(),
        }
    }
}

/// Value of the order function `v(sigma(t) - t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OrderValue {
    Finite(i64),
    /// `sigma(t) = t` to the stored precision; at the precisions used here
    /// only the identity achieves this.
    Infinite,
}

/// The order function of the ramification filtration: `sigma` lies in the
/// i-th ramification group iff `order_function(sigma) >= i + 1`.
pub fn order_function(sigma: &LocalAutomorphism) -> OrderValue {
    let t = TruncatedSeries::identity(sigma.image().ring(), sigma.image().precision());
    match sigma.image().sub(&t).valuation() {
        Some(v) => OrderValue::Finite(v),
        None => OrderValue::Infinite,
    }
}

/// Composition of plain series, `f(g(t))`, both of valuation at least 1.
/// Exposed as the series-level operation backing
/// [`LocalAutomorphism::compose`].
pub fn compose(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<TruncatedSeries> {
    if f.valuation().is_some_and(|v| v < 1) {
        return Err(Error::ValuationNotOne);
    }
    f.subst(g)
}
