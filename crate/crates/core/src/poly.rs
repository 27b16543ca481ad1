//! Dense univariate and sparse bivariate polynomials over an extension
//! field, with the characteristic-p utilities the curve algebra needs:
//! binomial coefficients mod p by Lucas, shifts `f(X + y)`, and the Frobenius
//! operator `F(sum a_j X^j) = sum a_j^p X^(jp)`.

use std::collections::BTreeMap;

use crate::ffield::{Field, FieldElement};

/// Binomial coefficient mod p via Lucas' theorem. Exponents in this crate
/// reach `p^s`, so factorials are out of the question.
pub fn binom_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let nd = n % p;
        let kd = k % p;
        if kd > nd {
            return 0;
        }
        acc = (acc * small_binom(nd, kd)) % p;
        n /= p;
        k /= p;
    }
    acc
}

fn small_binom(n: u64, k: u64) -> u64 {
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Dense univariate polynomial, coefficients low degree first.
#[derive(Clone, PartialEq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl Poly {
    pub fn zero(field: &Field) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn from_coeffs(field: &Field, coeffs: Vec<FieldElement>) -> Self {
        let mut p = Poly {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    /// `c * X^d`.
    pub fn monomial(field: &Field, c: FieldElement, d: usize) -> Self {
        if c.is_zero() {
            return Self::zero(field);
        }
        let mut coeffs = vec![FieldElement::zero(field); d + 1];
        coeffs[d] = c;
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, d: usize) -> FieldElement {
        self.coeffs
            .get(d)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Self::from_coeffs(&self.field, coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Self::from_coeffs(&self.field, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(&self.field);
        }
        let mut coeffs =
            vec![FieldElement::zero(&self.field); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::from_coeffs(&self.field, coeffs)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::from_coeffs(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }

    /// `f(X + y)` by binomial expansion with Lucas-reduced coefficients.
    pub fn shift(&self, y: &FieldElement) -> Self {
        let p = self.field.p();
        let mut coeffs = vec![FieldElement::zero(&self.field); self.coeffs.len()];
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut ypow = FieldElement::one(&self.field);
            // k runs over the X-degree of each term c * binom(d,k) y^(d-k) X^k,
            // accumulating y powers from the top down.
            for k in (0..=d).rev() {
                let b = binom_mod_p(d as u64, k as u64, p);
                if b != 0 {
                    let t = c.mul_ref(&ypow).mul_ref(&FieldElement::from_int(&self.field, b));
                    coeffs[k] = coeffs[k].add_ref(&t);
                }
                if k > 0 {
                    ypow = ypow.mul_ref(y);
                }
            }
        }
        Self::from_coeffs(&self.field, coeffs)
    }

    /// Frobenius operator: coefficients to the p-th power, exponents times p.
    /// Coincides with `f^p` in characteristic p.
    pub fn frobenius_op(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs =
            vec![FieldElement::zero(&self.field); (self.coeffs.len() - 1) * self.field.p() as usize + 1];
        for (d, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[d * self.field.p() as usize] = c.frobenius_pow(1);
            }
        }
        Self::from_coeffs(&self.field, coeffs)
    }

    /// Truncation `f mod X^bound`.
    pub fn truncate_deg(&self, bound: usize) -> Self {
        let coeffs = self.coeffs.iter().take(bound).cloned().collect();
        Self::from_coeffs(&self.field, coeffs)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero(&self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(d, c)| c.mul_ref(&FieldElement::from_int(&self.field, d as u64)))
            .collect();
        Self::from_coeffs(&self.field, coeffs)
    }
}

/// Sparse bivariate polynomial in `(X, Y)` over a field, exponent pairs to
/// coefficients.
#[derive(Clone, PartialEq)]
pub struct BiPoly {
    field: Field,
    terms: BTreeMap<(usize, usize), FieldElement>,
}

impl std::fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BiPoly{{")?;
        for ((i, j), c) in &self.terms {
            write!(f, " {:?} X^{} Y^{};", c, i, j)?;
        }
        write!(f, "}}")
    }
}

impl BiPoly {
    pub fn zero(field: &Field) -> Self {
        BiPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, xdeg: usize, ydeg: usize, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((xdeg, ydeg))
            .or_insert_with(|| FieldElement::zero(&self.field));
        *entry = entry.add_ref(&c);
        if entry.is_zero() {
            self.terms.remove(&(xdeg, ydeg));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &FieldElement)> {
        self.terms.iter()
    }

    /// Substitute a field value for `Y`, leaving a univariate polynomial in `X`.
    pub fn eval_y(&self, y: &FieldElement) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for (&(i, j), c) in &self.terms {
            let v = c.mul_ref(&y.pow(j as u64));
            acc = acc.add(&Poly::monomial(&self.field, v, i));
        }
        acc
    }

    /// Substitute a field value for `X`, leaving a polynomial in `Y`.
    pub fn eval_x(&self, x: &FieldElement) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for (&(i, j), c) in &self.terms {
            let v = c.mul_ref(&x.pow(i as u64));
            acc = acc.add(&Poly::monomial(&self.field, v, j));
        }
        acc
    }
}
