//! Additive (linearized) polynomial algebra: `sum a_v Y^(p^v)`, Moore
//! determinants, the roots-to-polynomial correspondence, and root spaces
//! computed as kernels of F_p-linear maps.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ffield::{Field, FieldElement};
use crate::linalg::Matrix;
use crate::poly::{binom_mod_p, BiPoly, Poly};
use crate::scalar::Scalar;

/// A p-polynomial `sum_v a_v Y^(p^v)` with coefficients in a ring of
/// characteristic p. Evaluation is F_p-linear.
#[derive(Clone, PartialEq)]
pub struct AdditivePoly<K: Scalar> {
    /// Frobenius exponent -> coefficient; absent means zero, leading entry
    /// nonzero.
    coeffs: BTreeMap<u32, K>,
    /// Retained zero of the coefficient ring so empty polynomials still know
    /// where they live.
    zero: K,
}

impl<K: Scalar> std::fmt::Debug for AdditivePoly<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AdditivePoly{{")?;
        for (v, a) in &self.coeffs {
            write!(f, " {:?} Y^p^{};", a, v)?;
        }
        write!(f, "}}")
    }
}

impl<K: Scalar> AdditivePoly<K> {
    pub fn zero(sample: &K) -> Self {
        AdditivePoly {
            coeffs: BTreeMap::new(),
            zero: sample.zero_like(),
        }
    }

    pub fn from_terms(sample: &K, terms: impl IntoIterator<Item = (u32, K)>) -> Self {
        let mut poly = Self::zero(sample);
        for (v, a) in terms {
            poly.add_term(v, a);
        }
        poly
    }

    pub fn add_term(&mut self, v: u32, a: K) {
        if a.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&v) {
            Some(c) => {
                *c = c.add(&a);
                if c.is_zero() {
                    self.coeffs.remove(&v);
                }
            }
            None => {
                self.coeffs.insert(v, a);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, v: u32) -> K {
        self.coeffs.get(&v).cloned().unwrap_or_else(|| self.zero.clone())
    }

    /// Frobenius exponent of the leading term, i.e. `log_p deg`.
    pub fn top_exponent(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &K)> {
        self.coeffs.iter()
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = self.zero.clone();
        for (&v, a) in &self.coeffs {
            acc = acc.add(&a.mul(&x.frobenius(v)));
        }
        acc
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut poly = Self::zero(&self.zero);
        for (&v, a) in &self.coeffs {
            poly.add_term(v, a.mul(c));
        }
        poly
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut poly = self.clone();
        for (&v, a) in &rhs.coeffs {
            poly.add_term(v, a.clone());
        }
        poly
    }
}

/// F_p-linearly independent vectors spanning the root space of an additive
/// polynomial. Independence is certified by a nonzero Moore determinant.
#[derive(Clone, Debug)]
pub struct RootBasis {
    field: Field,
    vectors: Vec<FieldElement>,
}

impl RootBasis {
    /// Build a basis, verifying independence via the Moore determinant.
    pub fn new(field: &Field, vectors: Vec<FieldElement>) -> Result<Self> {
        if vectors.is_empty() || moore_det(&vectors).is_zero() {
            return Err(Error::DependentBasis);
        }
        Ok(RootBasis {
            field: field.clone(),
            vectors,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vectors(&self) -> &[FieldElement] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Every element of the F_p-span, `p^r` of them, the zero vector first.
    pub fn span(&self) -> Vec<FieldElement> {
        let p = self.field.p();
        let r = self.vectors.len() as u32;
        let count = p.pow(r);
        (0..count)
            .map(|idx| {
                let mut v = idx;
                let mut acc = FieldElement::zero(&self.field);
                for x in &self.vectors {
                    let digit = v % p;
                    v /= p;
                    if digit != 0 {
                        acc = acc.add_ref(&x.mul_ref(&FieldElement::from_int(&self.field, digit)));
                    }
                }
                acc
            })
            .collect()
    }

    /// Coordinates of `y` in this basis if `y` lies in the span.
    pub fn coordinates(&self, y: &FieldElement) -> Option<Vec<u64>> {
        let p = self.field.p();
        let r = self.vectors.len() as u32;
        for idx in 0..p.pow(r) {
            let mut v = idx;
            let mut digits = Vec::with_capacity(r as usize);
            let mut acc = FieldElement::zero(&self.field);
            for x in &self.vectors {
                let digit = v % p;
                v /= p;
                digits.push(digit);
                if digit != 0 {
                    acc = acc.add_ref(&x.mul_ref(&FieldElement::from_int(&self.field, digit)));
                }
            }
            if acc == *y {
                return Some(digits);
            }
        }
        None
    }
}

/// Moore determinant: det of the `r x r` matrix with entry `(i, j)` equal to
/// `xs[j]^(p^(i-1))`. Nonzero exactly when the arguments are F_p-linearly
/// independent.
pub fn moore_det<K: Scalar>(xs: &[K]) -> K {
    assert!(!xs.is_empty(), "Moore determinant of an empty list");
    let r = xs.len();
    let sample = xs[0].zero_like();
    let mut m = Matrix::zeros(r, r, &sample);
    for (j, x) in xs.iter().enumerate() {
        for i in 0..r {
            *m.at_mut(i, j) = x.frobenius(i as u32);
        }
    }
    m.det()
}

/// Monic additive polynomial of degree `p^r` whose root set is exactly the
/// F_p-span of the given independent elements:
/// the quotient of Moore determinants `D(x_1..x_r, Y) / D(x_1..x_r)`.
///
/// Generic over the coefficient ring so the same code runs over `k` and over
/// the dual numbers (where the denominator is still a unit whenever the
/// reductions of the `xs` are independent).
pub fn additive_from_roots_in<K: Scalar>(xs: &[K]) -> Result<AdditivePoly<K>> {
    let r = xs.len();
    assert!(r > 0);
    let sample = xs[0].zero_like();
    let delta = moore_det(xs);
    let delta_inv = delta.inv().ok_or(Error::DependentBasis)?;
    // Expand D(x_1..x_r, Y) along the Y column: the coefficient of Y^(p^(i-1))
    // is the signed minor obtained by deleting row i.
    let mut poly = AdditivePoly::zero(&sample);
    for i in 1..=(r + 1) {
        let rows: Vec<u32> = (1..=(r + 1)).filter(|&l| l != i).map(|l| l as u32 - 1).collect();
        let mut minor = Matrix::zeros(r, r, &sample);
        for (mi, &fr) in rows.iter().enumerate() {
            for (j, x) in xs.iter().enumerate() {
                *minor.at_mut(mi, j) = x.frobenius(fr);
            }
        }
        let mut c = minor.det().mul(&delta_inv);
        // Sign of the cofactor in column r+1, row i.
        if (i + r + 1) % 2 == 1 {
            c = c.neg();
        }
        poly.add_term(i as u32 - 1, c);
    }
    Ok(poly)
}

/// Monic additive polynomial with root set the span of `basis`.
pub fn additive_from_roots(basis: &RootBasis) -> Result<AdditivePoly<FieldElement>> {
    additive_from_roots_in(basis.vectors())
}

/// Basis of `{x in ambient : f(x) = 0}`, computed as the kernel of the
/// F_p-linear map `x -> f(x)` on the ambient field viewed as an F_p-vector
/// space. The basis may be smaller than `log_p deg f` when the ambient field
/// does not split `f`; it is empty when 0 is the only root.
pub fn root_space(f: &AdditivePoly<FieldElement>, ambient: &Field) -> Vec<FieldElement> {
    assert!(!f.is_zero(), "root space of the zero polynomial");
    let n = ambient.degree();
    let fp = crate::ffield::make_field(ambient.p(), 1).expect("prime field");
    let zero = FieldElement::zero(&fp);
    // Column j = coordinates of f(basis_j) over F_p.
    let mut m = Matrix::zeros(n, n, &zero);
    for j in 0..n {
        let mut coords = vec![0u64; n];
        coords[j] = 1;
        let basis_j = FieldElement::from_coeffs(ambient, &coords);
        let image = f.eval(&basis_j);
        for (i, &c) in image.coeffs().iter().enumerate() {
            *m.at_mut(i, j) = FieldElement::from_int(&fp, c);
        }
    }
    m.nullspace()
        .into_iter()
        .map(|v| {
            let coords: Vec<u64> = v.iter().map(|c| c.coeffs()[0]).collect();
            FieldElement::from_coeffs(ambient, &coords)
        })
        .collect()
}

/// As [`root_space`], but wrapped in a [`RootBasis`] when nonempty.
pub fn root_basis(f: &AdditivePoly<FieldElement>, ambient: &Field) -> Result<RootBasis> {
    let vectors = root_space(f, ambient);
    if vectors.is_empty() {
        return Err(Error::DependentBasis);
    }
    RootBasis::new(ambient, vectors)
}

/// `Delta(f)(X, Y) = f(X + Y) - f(X) - f(Y)` expanded with Lucas-reduced
/// binomials. Vanishes identically iff `f` is additive.
pub fn delta_bilinear(f: &Poly) -> BiPoly {
    let field = f.field().clone();
    let p = field.p();
    let mut out = BiPoly::zero(&field);
    for (d, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // f(X+Y) contributes binom(d,k) X^k Y^(d-k); subtracting f(X) and
        // f(Y) removes the k = d and k = 0 terms.
        for k in 1..d {
            let b = binom_mod_p(d as u64, k as u64, p);
            if b != 0 {
                out.add_term(k, d - k, c.mul_ref(&FieldElement::from_int(&field, b)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{make_field, FieldElement};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// `Y + Y^(p^(2s))`, the additive polynomial of the monomial curve.
    fn monomial_ad(field: &Field, s: u32) -> AdditivePoly<FieldElement> {
        let one = FieldElement::one(field);
        AdditivePoly::from_terms(&one, [(0, one.clone()), (2 * s, one.clone())])
    }

    #[test]
    fn moore_det_single_and_pair() {
        let f9 = make_field(3, 2).unwrap();
        let g = FieldElement::generator(&f9);
        assert_eq!(moore_det(&[g.clone()]), g);
        // D(1, y) = y^p - y
        let one = FieldElement::one(&f9);
        let d = moore_det(&[one, g.clone()]);
        assert_eq!(d, g.frobenius_pow(1).sub_ref(&g));
    }

    #[test]
    fn moore_det_detects_independence_all_triples_in_f9() {
        // Brute-force oracle: check F_3-independence by enumerating all
        // nontrivial F_3-combinations.
        let f9 = make_field(3, 2).unwrap();
        let elements: Vec<FieldElement> = (0..9).map(|i| FieldElement::from_index(&f9, i)).collect();
        let fp_dependent = |xs: &[FieldElement]| -> bool {
            let r = xs.len() as u32;
            for mask in 1..3u64.pow(r) {
                let mut v = mask;
                let mut acc = FieldElement::zero(&f9);
                for x in xs {
                    let d = v % 3;
                    v /= 3;
                    if d != 0 {
                        acc = acc.add_ref(&x.mul_ref(&FieldElement::from_int(&f9, d)));
                    }
                }
                if acc.is_zero() {
                    return true;
                }
            }
            false
        };
        for a in 0..9 {
            for b in 0..9 {
                for c in 0..9 {
                    let xs = vec![
                        elements[a].clone(),
                        elements[b].clone(),
                        elements[c].clone(),
                    ];
                    let det_nonzero = !moore_det(&xs).is_zero();
                    assert_eq!(det_nonzero, !fp_dependent(&xs), "triple ({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn moore_det_scaling_and_degeneracy() {
        let f9 = make_field(3, 2).unwrap();
        let g = FieldElement::generator(&f9);
        let one = FieldElement::one(&f9);
        let base = vec![one.clone(), g.clone()];
        let d = moore_det(&base);
        for c in 1..3u64 {
            let ce = FieldElement::from_int(&f9, c);
            let scaled = vec![one.mul_ref(&ce), g.clone()];
            assert_eq!(moore_det(&scaled), d.mul_ref(&ce));
        }
        // Adding an F_p-combination of the others to a dependent list keeps
        // the determinant zero.
        let dep = vec![g.clone(), g.clone()];
        assert!(moore_det(&dep).is_zero());
        let two = FieldElement::from_int(&f9, 2);
        let dep2 = vec![g.clone(), g.mul_ref(&two).add_ref(&g.clone())];
        assert!(moore_det(&dep2).is_zero());
    }

    #[test]
    fn additive_from_roots_of_prime_field() {
        // Basis {1} over F_3 gives Y^3 - Y.
        let f3 = make_field(3, 1).unwrap();
        let one = FieldElement::one(&f3);
        let basis = RootBasis::new(&f3, vec![one.clone()]).unwrap();
        let poly = additive_from_roots(&basis).unwrap();
        assert_eq!(poly.coeff(1), one);
        assert_eq!(poly.coeff(0), -one.clone());
        for i in 0..3 {
            assert!(poly.eval(&FieldElement::from_index(&f3, i)).is_zero());
        }
    }

    #[test]
    fn root_space_dimensions() {
        // Y^3 - Y over F_9: roots are the prime field, dimension 1.
        let f9 = make_field(3, 2).unwrap();
        let one = FieldElement::one(&f9);
        let frob_minus_id =
            AdditivePoly::from_terms(&one, [(1, one.clone()), (0, -one.clone())]);
        assert_eq!(root_space(&frob_minus_id, &f9).len(), 1);

        // Y + Y^9 over F_81: dimension 2s = 2, verified by brute force.
        let f81 = make_field(3, 4).unwrap();
        let ad = monomial_ad(&f81, 1);
        let basis = root_space(&ad, &f81);
        assert_eq!(basis.len(), 2);
        let brute: Vec<FieldElement> = (0..81)
            .map(|i| FieldElement::from_index(&f81, i))
            .filter(|x| ad.eval(x).is_zero())
            .collect();
        assert_eq!(brute.len(), 9);
        let rb = RootBasis::new(&f81, basis).unwrap();
        let mut span: Vec<u64> = rb.span().iter().map(|x| x.to_index()).collect();
        let mut brute_idx: Vec<u64> = brute.iter().map(|x| x.to_index()).collect();
        span.sort_unstable();
        brute_idx.sort_unstable();
        assert_eq!(span, brute_idx);

        // Ambient too small: over F_9 the same polynomial has fewer roots.
        let f9_dim = root_space(&monomial_ad(&f9, 1), &f9).len();
        assert!(f9_dim < 2);
    }

    #[test]
    fn from_roots_and_root_space_roundtrip() {
        // Split cases: the reconstruction has the same root set as the input.
        for (p, s) in [(3u64, 1u32), (5, 1)] {
            let ambient = make_field(p, 4 * s as usize).unwrap();
            let ad = monomial_ad(&ambient, s);
            let basis = root_basis(&ad, &ambient).unwrap();
            assert_eq!(basis.dim(), 2 * s as usize);
            let rebuilt = additive_from_roots(&basis).unwrap();
            // Monic of the same degree, vanishing on the span.
            assert_eq!(rebuilt.top_exponent(), Some(2 * s));
            assert_eq!(rebuilt.coeff(2 * s), FieldElement::one(&ambient));
            for y in basis.span() {
                assert!(rebuilt.eval(&y).is_zero());
            }
            // Nonzero away from the span.
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            let span: std::collections::HashSet<u64> =
                basis.span().iter().map(|x| x.to_index()).collect();
            let mut checked = 0;
            while checked < 20 {
                let idx = rng.gen_range(0..ambient.order());
                if span.contains(&idx) {
                    continue;
                }
                let x = FieldElement::from_index(&ambient, idx);
                assert!(!rebuilt.eval(&x).is_zero());
                checked += 1;
            }
        }
    }

    #[test]
    fn evaluation_is_fp_linear() {
        let f81 = make_field(3, 4).unwrap();
        let ad = monomial_ad(&f81, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let a = FieldElement::from_index(&f81, rng.gen_range(0..81));
            let b = FieldElement::from_index(&f81, rng.gen_range(0..81));
            let c = rng.gen_range(0..3u64);
            let ce = FieldElement::from_int(&f81, c);
            assert_eq!(
                ad.eval(&a.add_ref(&b)),
                ad.eval(&a).add_ref(&ad.eval(&b))
            );
            assert_eq!(ad.eval(&a.mul_ref(&ce)), ad.eval(&a).mul_ref(&ce));
        }
    }

    #[test]
    fn delta_bilinear_examples() {
        let f81 = make_field(3, 4).unwrap();
        let one = FieldElement::one(&f81);
        // f = X^4, p = 3: X^3 Y + X Y^3 survive (binom(4,2) = 0 mod 3).
        let x4 = Poly::monomial(&f81, one.clone(), 4);
        let d = delta_bilinear(&x4);
        let terms: Vec<((usize, usize), u64)> = d
            .terms()
            .map(|(&(i, j), c)| ((i, j), c.coeffs()[0]))
            .collect();
        assert_eq!(terms, vec![((1, 3), 1), ((3, 1), 1)]);

        // Linear f and p-power monomials are additive: Delta = 0.
        let linear = Poly::monomial(&f81, one.clone(), 1);
        assert!(delta_bilinear(&linear).is_zero());
        for i in 0..3 {
            let m = Poly::monomial(&f81, one.clone(), 3usize.pow(i));
            assert!(delta_bilinear(&m).is_zero(), "X^(p^{}) must be additive", i);
        }
    }
}
