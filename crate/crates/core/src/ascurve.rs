//! The p-cyclic covers `C_t : W^p - W = sum_{i<s} t_i X^(p^i+1) + X^(p^s+1)`
//! of the affine line: their additive polynomial, the shift polynomials
//! attached to roots, the extraspecial automorphism group at infinity, the
//! faithful unitriangular representation on `L(mP)`, and the local action on
//! the uniformizer at the unique branch point.
//!
//! Conventions fixed once and used everywhere:
//!
//! * Table products read left to right: `g * h` means "apply `g` first",
//!   i.e. the automorphism `sigma_h . sigma_g`. With matrices acting by
//!   `sigma(f_i) = sum_v rho(sigma)_{iv} f_v` on the ordered basis
//!   `{1, X, ..., X^(p^(s-1)), W}`, this makes `g -> rho(g)` a plain
//!   homomorphism: `rho(g * h) = rho(g) rho(h)`.
//! * The uniformizer `t` at the point over infinity is normalized so that
//!   `W = t^-m` exactly (`m = p^s + 1`); `X(t)` is then the Newton solution
//!   of the curve equation with leading term `t^-p`.
//! * `W` sits in the last row of the representation matrix. Matrices are
//!   always computed from the action itself rather than from a closed-form
//!   entry table; binomial-exponent conventions are too easy to transpose.

use std::sync::Arc;

use crate::addpoly::{root_space, AdditivePoly, RootBasis};
use crate::error::{Error, Result};
use crate::ffield::{make_field, Field, FieldElement};
use crate::linalg::Matrix;
use crate::poly::{binom_mod_p, Poly};
use crate::pseries::{
    ArtinRing, ArtinScalar, CompatibleTuple, LocalAutomorphism, SeriesPoly, TruncatedSeries,
};
use crate::scalar::Scalar;

/// Finite group given by its multiplication table. Products are
/// apply-left-first (see the module docs).
#[derive(Debug)]
pub struct GroupTable {
    order: usize,
    identity: usize,
    table: Vec<u32>,
    generators: Vec<usize>,
}

impl GroupTable {
    pub fn new(order: usize, identity: usize, table: Vec<u32>, generators: Vec<usize>) -> Self {
        assert_eq!(table.len(), order * order);
        let g = GroupTable {
            order,
            identity,
            table,
            generators,
        };
        g.verify();
        g
    }

    /// Identity and inverse laws in full; associativity on a sample.
    fn verify(&self) {
        for x in 0..self.order {
            assert_eq!(self.mul(self.identity, x), x);
            assert_eq!(self.mul(x, self.identity), x);
            assert!(
                (0..self.order).any(|y| self.mul(x, y) == self.identity),
                "element {} has no inverse",
                x
            );
        }
        let step = (self.order / 11).max(1);
        for a in (0..self.order).step_by(step) {
            for b in (0..self.order).step_by(step) {
                for c in (0..self.order).step_by(step) {
                    assert_eq!(
                        self.mul(self.mul(a, b), c),
                        self.mul(a, self.mul(b, c)),
                        "associativity fails at ({}, {}, {})",
                        a,
                        b,
                        c
                    );
                }
            }
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order + h] as usize
    }

    pub fn inverse(&self, g: usize) -> usize {
        (0..self.order)
            .find(|&h| self.mul(g, h) == self.identity)
            .expect("group element has an inverse")
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut acc = g;
        let mut k = 1;
        while acc != self.identity {
            acc = self.mul(acc, g);
            k += 1;
        }
        k
    }

    /// Elements commuting with everything.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&g| (0..self.order).all(|h| self.mul(g, h) == self.mul(h, g)))
            .collect()
    }

    pub fn commutator(&self, g: usize, h: usize) -> usize {
        let gi = self.inverse(g);
        let hi = self.inverse(h);
        self.mul(self.mul(gi, hi), self.mul(g, h))
    }

    /// Subgroup generated by all commutators.
    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let mut seeds: Vec<usize> = Vec::new();
        for g in 0..self.order {
            for h in 0..self.order {
                let c = self.commutator(g, h);
                if !seeds.contains(&c) {
                    seeds.push(c);
                }
            }
        }
        self.closure(&seeds)
    }

    pub fn closure(&self, seeds: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.order];
        in_set[self.identity] = true;
        let mut stack: Vec<usize> = vec![self.identity];
        for &s in seeds {
            if !in_set[s] {
                in_set[s] = true;
                stack.push(s);
            }
        }
        while let Some(x) = stack.pop() {
            for &s in seeds {
                let y = self.mul(x, s);
                if !in_set[y] {
                    in_set[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order).filter(|&g| in_set[g]).collect()
    }

    /// BFS spanning tree over the generators: for each non-identity element
    /// a pair `(parent, generator)` with `element = parent * generator`.
    pub fn spanning_tree(&self) -> Vec<Option<(usize, usize)>> {
        let mut tree: Vec<Option<(usize, usize)>> = vec![None; self.order];
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = std::collections::VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in &self.generators {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    tree[y] = Some((x, g));
                    queue.push_back(y);
                }
            }
        }
        assert!(
            seen.iter().all(|&b| b),
            "generators do not generate the group"
        );
        tree
    }
}

/// The curve `W^p - W = sum_{i=1}^{s-1} t_i X^(p^i+1) + X^(p^s+1)` over a
/// finite subfield of the algebraic closure.
#[derive(Clone, Debug)]
pub struct ASCurve {
    p: u64,
    s: u32,
    ambient: Field,
    t_coeffs: Vec<FieldElement>,
}

impl ASCurve {
    pub fn new(p: u64, s: u32, t_coeffs: Vec<FieldElement>, ambient: Field) -> Result<Self> {
        if ambient.p() != p {
            return Err(Error::InvalidInput(format!(
                "ambient characteristic {} does not match p = {}",
                ambient.p(),
                p
            )));
        }
        if s == 0 {
            return Err(Error::InvalidInput("s must be at least 1".into()));
        }
        if t_coeffs.len() != (s - 1) as usize {
            return Err(Error::InvalidInput(format!(
                "expected {} deformation coefficients t_1..t_{}, got {}",
                s - 1,
                s - 1,
                t_coeffs.len()
            )));
        }
        Ok(ASCurve {
            p,
            s,
            ambient,
            t_coeffs,
        })
    }

    /// The monomial member `W^p - W = X^(p^s+1)` over `F_{p^{4s}}`, the
    /// smallest guaranteed splitting field of its additive polynomial.
    pub fn monomial(p: u64, s: u32) -> Result<Self> {
        let ambient = make_field(p, 4 * s as usize)?;
        let t = vec![FieldElement::zero(&ambient); (s - 1) as usize];
        ASCurve::new(p, s, t, ambient)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn ambient(&self) -> &Field {
        &self.ambient
    }

    pub fn t_coeffs(&self) -> &[FieldElement] {
        &self.t_coeffs
    }

    pub fn is_monomial(&self) -> bool {
        self.t_coeffs.iter().all(|t| t.is_zero())
    }

    /// `m = p^s + 1`: the first pole number prime to p.
    pub fn m(&self) -> u64 {
        self.p.pow(self.s) + 1
    }

    /// `dim L(mP) = p^(s-1) + 2`.
    pub fn rep_dim(&self) -> usize {
        self.p.pow(self.s - 1) as usize + 2
    }

    /// The right-hand side `f(X)`.
    pub fn f_poly(&self) -> Poly {
        let mut f = Poly::monomial(
            &self.ambient,
            FieldElement::one(&self.ambient),
            self.p.pow(self.s) as usize + 1,
        );
        for (i, t) in self.t_coeffs.iter().enumerate() {
            let d = self.p.pow(i as u32 + 1) as usize + 1;
            f = f.add(&Poly::monomial(&self.ambient, t.clone(), d));
        }
        f
    }

    /// The additive polynomial `Ad_f(Y) = sum_i [t_i^(p^(s-i)) Y^(p^(s-i)) +
    /// t_i^(p^s) Y^(p^(s+i))]` with `t_s = 1`. Its roots parametrize the
    /// translations `X -> X + y` extending to automorphisms of the cover.
    /// The coefficients satisfy `a_{s+l} = a_{s-l}^(p^l)` by construction.
    pub fn ad_f(&self) -> AdditivePoly<FieldElement> {
        let one = FieldElement::one(&self.ambient);
        let mut ad = AdditivePoly::zero(&one);
        for i in 1..=self.s {
            let t_i = if i == self.s {
                one.clone()
            } else {
                self.t_coeffs[(i - 1) as usize].clone()
            };
            if t_i.is_zero() {
                continue;
            }
            ad.add_term(self.s - i, t_i.frobenius_pow(self.s - i));
            ad.add_term(self.s + i, t_i.frobenius_pow(self.s));
        }
        ad
    }

    /// The shift polynomial `P_f(X, y)`: the unique (up to `F_p`) polynomial
    /// of degree `p^(s-1)` with `P^p - P = f(X+y) - f(X)` exactly.
    ///
    /// Computed by the operator route: truncate
    /// `(Id + F + ... + F^(s+1)) Delta(f)(X, y)` below `X^(p^(s-1)+1)`,
    /// negate (the operator output `q` satisfies `q - q^p = Delta`), and fix
    /// the constant by solving `d^p - d = f(y)` in the ambient field.
    pub fn p_f(&self, y: &FieldElement) -> Result<Poly> {
        if !self.ad_f().eval(y).is_zero() {
            return Err(Error::InvalidInput(
                "y is not a root of the additive polynomial".into(),
            ));
        }
        let f = self.f_poly();
        let fy = f.eval(y);
        // Delta(f)(X, y) = f(X+y) - f(X) - f(y)
        let delta = f
            .shift(y)
            .sub(&f)
            .sub(&Poly::monomial(&self.ambient, fy.clone(), 0));
        let bound = self.p.pow(self.s - 1) as usize + 1;
        let mut q = Poly::zero(&self.ambient);
        let mut power = delta.clone();
        for _ in 0..=(self.s + 1) {
            q = q.add(&power.truncate_deg(bound));
            power = power.frobenius_op();
        }
        let q = q.truncate_deg(bound);
        let mut w = q.neg();
        // Constant fix: w^p - w = Delta, so (w + d)^p - (w + d) = f(X+y) -
        // f(X) needs d^p - d = f(y).
        let d = artin_schreier_constant(&self.ambient, &fy)?;
        w = w.add(&Poly::monomial(&self.ambient, d, 0));
        // Defining property, exact.
        let check = w.frobenius_op().sub(&w).sub(&f.shift(y).sub(&f));
        assert!(
            check.is_zero(),
            "shift polynomial does not satisfy its defining equation"
        );
        assert!(w.degree().unwrap_or(0) <= self.p.pow(self.s - 1) as usize);
        Ok(w)
    }

    /// The automorphism group `G_1(infinity)` with its multiplication table,
    /// of order `p^(2s+1)` when the ambient field splits `Ad_f`.
    pub fn automorphism_group(&self) -> Result<ASGroup> {
        ASGroup::build(self.clone())
    }
}

/// Solve `d^p - d = target` in the given field by F_p-linear algebra on the
/// power basis. Fails when the target has nonzero trace to `F_p`.
pub fn artin_schreier_constant(field: &Field, target: &FieldElement) -> Result<FieldElement> {
    let n = field.degree();
    let fp = make_field(field.p(), 1).expect("prime field");
    let zero = FieldElement::zero(&fp);
    let mut m = Matrix::zeros(n, n, &zero);
    for j in 0..n {
        let mut coords = vec![0u64; n];
        coords[j] = 1;
        let basis_j = FieldElement::from_coeffs(field, &coords);
        let image = basis_j.frobenius_pow(1).sub_ref(&basis_j);
        for (i, &c) in image.coeffs().iter().enumerate() {
            *m.at_mut(i, j) = FieldElement::from_int(&fp, c);
        }
    }
    let rhs: Vec<FieldElement> = target
        .coeffs()
        .iter()
        .map(|&c| FieldElement::from_int(&fp, c))
        .collect();
    let solution = m.solve(&rhs).ok_or(Error::ArtinSchreierObstruction)?;
    let coords: Vec<u64> = solution.iter().map(|c| c.coeffs()[0]).collect();
    Ok(FieldElement::from_coeffs(field, &coords))
}

/// One automorphism `X -> X + y`, `W -> W + w_shift(X)` of the cover, with
/// `w_shift = P_f(X, y) + c` and the central coordinate `c` in `F_p`.
#[derive(Clone, Debug)]
pub struct CurveAutomorphism {
    pub y: FieldElement,
    pub central_part: u64,
    pub w_shift: Poly,
}

/// The group `G_1(infinity)` of a curve, realized on labels `(y, c)` with
/// `y` in the root space of `Ad_f` and `c` in `F_p`:
/// `(y1,c1) * (y2,c2) = (y1+y2, c1+c2+beta(y1,y2))` where `beta` is the
/// constant of the shift-polynomial cocycle identity.
pub struct ASGroup {
    curve: ASCurve,
    basis: RootBasis,
    span: Vec<FieldElement>,
    shifts: Vec<Poly>,
    table: Arc<GroupTable>,
}

impl ASGroup {
    fn build(curve: ASCurve) -> Result<Self> {
        let p = curve.p;
        let two_s = 2 * curve.s as usize;
        let roots = root_space(&curve.ad_f(), &curve.ambient);
        if roots.len() != two_s {
            return Err(Error::AmbientTooSmall {
                suggested_degree: 4 * curve.s as usize,
            });
        }
        let basis = RootBasis::new(&curve.ambient, roots)?;
        let span = basis.span();
        let shifts: Vec<Poly> = span
            .iter()
            .map(|y| curve.p_f(y))
            .collect::<Result<Vec<_>>>()?;
        let span_count = span.len();
        let order = span_count * p as usize;

        // beta(y1, y2): the constant of w0(y2) + w0(y1)(X + y2) - w0(y1+y2).
        // Index arithmetic on the span is digit-wise addition mod p.
        let digit_add = |a: usize, b: usize| -> usize {
            let mut out = 0usize;
            let mut place = 1usize;
            let (mut a, mut b) = (a, b);
            for _ in 0..two_s {
                let da = a % p as usize;
                let db = b % p as usize;
                out += ((da + db) % p as usize) * place;
                place *= p as usize;
                a /= p as usize;
                b /= p as usize;
            }
            out
        };
        let mut beta = vec![0u64; span_count * span_count];
        for i1 in 0..span_count {
            for i2 in 0..span_count {
                let sum_idx = digit_add(i1, i2);
                let combo = shifts[i2]
                    .add(&shifts[i1].shift(&span[i2]))
                    .sub(&shifts[sum_idx]);
                assert!(
                    combo.degree().unwrap_or(0) == 0 || combo.is_zero(),
                    "shift cocycle defect is not constant"
                );
                let c = combo.coeff(0);
                assert!(
                    c.coeffs().iter().skip(1).all(|&d| d == 0),
                    "shift cocycle constant must lie in the prime field"
                );
                beta[i1 * span_count + i2] = c.coeffs()[0];
            }
        }

        let index = |y_idx: usize, c: u64| -> usize { y_idx * p as usize + c as usize };
        let mut table = vec![0u32; order * order];
        for y1 in 0..span_count {
            for c1 in 0..p {
                let g = index(y1, c1);
                for y2 in 0..span_count {
                    for c2 in 0..p {
                        let h = index(y2, c2);
                        let y12 = digit_add(y1, y2);
                        let c12 = (c1 + c2 + beta[y1 * span_count + y2]) % p;
                        table[g * order + h] = index(y12, c12) as u32;
                    }
                }
            }
        }
        // Generators: the basis translations (x_i, 0).
        let generators: Vec<usize> = (0..two_s)
            .map(|i| index((p as usize).pow(i as u32), 0))
            .collect();
        let table = Arc::new(GroupTable::new(order, 0, table, generators));
        Ok(ASGroup {
            curve,
            basis,
            span,
            shifts,
            table,
        })
    }

    pub fn curve(&self) -> &ASCurve {
        &self.curve
    }

    pub fn table(&self) -> &Arc<GroupTable> {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn root_basis(&self) -> &RootBasis {
        &self.basis
    }

    /// Index of the element with span coordinates `digits` and central part
    /// `c`.
    pub fn element_from_digits(&self, digits: &[u64], c: u64) -> usize {
        let p = self.curve.p;
        assert_eq!(digits.len(), self.basis.dim());
        let mut idx = 0usize;
        let mut place = 1usize;
        for &d in digits {
            idx += (d % p) as usize * place;
            place *= p as usize;
        }
        idx * p as usize + (c % p) as usize
    }

    pub fn element(&self, e: usize) -> CurveAutomorphism {
        let p = self.curve.p;
        let y_idx = e / p as usize;
        let c = (e % p as usize) as u64;
        let w_shift = self.shifts[y_idx].add(&Poly::monomial(
            &self.curve.ambient,
            FieldElement::from_int(&self.curve.ambient, c),
            0,
        ));
        CurveAutomorphism {
            y: self.span[y_idx].clone(),
            central_part: c,
            w_shift,
        }
    }

    /// Matrix of the element on the ordered basis `{1, X, ..., X^(p^(s-1)),
    /// W}`: lower unitriangular, rows giving images of basis functions.
    pub fn representation(&self, e: usize) -> Matrix<FieldElement> {
        let aut = self.element(e);
        let n = self.curve.rep_dim();
        let field = &self.curve.ambient;
        let p = self.curve.p;
        let zero = FieldElement::zero(field);
        let mut m = Matrix::identity(n, &zero);
        // Rows of X^j = (X + y)^j, j = 1..p^(s-1); column i holds the X^i
        // coefficient binom(j, i) y^(j-i).
        for j in 1..n - 1 {
            let mut ypow = FieldElement::one(field);
            for i in (0..j).rev() {
                ypow = ypow.mul_ref(&aut.y);
                let b = binom_mod_p(j as u64, i as u64, p);
                if b != 0 {
                    *m.at_mut(j, i) = ypow.mul_ref(&FieldElement::from_int(field, b));
                }
            }
        }
        // Row of W = W + w_shift(X).
        for i in 0..n - 1 {
            *m.at_mut(n - 1, i) = aut.w_shift.coeff(i);
        }
        m
    }

    /// The whole representation as a checked homomorphism.
    pub fn rep(&self) -> crate::deform::Rep<FieldElement> {
        let mats: Vec<Matrix<FieldElement>> =
            (0..self.order()).map(|e| self.representation(e)).collect();
        crate::deform::Rep::new(self.table.clone(), mats)
    }

    /// Expansion of `X` in the uniformizer with `W = t^-m`: the Newton
    /// solution of `f(X) = t^(-pm) - t^(-m)` with leading term `t^-p`.
    pub fn x_series(&self, prec: i64) -> TruncatedSeries {
        let curve = &self.curve;
        let ring = ArtinRing::base(&curve.ambient);
        let work = prec + 2 * curve.p.pow(curve.s + 1) as i64 + 2;
        let m = curve.m() as i64;
        let p = curve.p as i64;
        let f = curve.f_poly();
        // Constant coefficients of f as series, minus the target at Y^0.
        let mut coeffs: Vec<TruncatedSeries> = f
            .coeffs()
            .iter()
            .map(|c| TruncatedSeries::constant(&ring, ring.from_field(c.clone()), work))
            .collect();
        let target = TruncatedSeries::monomial(&ring, ring.one(), -p * m, work).add(
            &TruncatedSeries::monomial(&ring, ring.one(), -m, work).neg(),
        );
        coeffs[0] = coeffs[0].sub(&target);
        let poly = SeriesPoly::from_coeffs(coeffs);
        let seed = TruncatedSeries::monomial(&ring, ring.one(), -p, work);
        let x = poly
            .newton_root(&seed)
            .expect("curve equation has a Laurent solution with leading term t^-p");
        assert!(x.precision() >= prec, "x-series precision shortfall");
        x.truncate(prec)
    }

    /// The local automorphism `sigma(t)` of the element at the branch point:
    /// `sigma(t)^-m = t^-m + w_shift(X(t))`, resolved by an m-th root with
    /// leading coefficient one.
    pub fn local_action(&self, e: usize, prec: i64) -> Result<LocalAutomorphism> {
        let min_prec = 4 * self.curve.m() as i64;
        if prec < min_prec {
            return Err(Error::InvalidInput(format!(
                "precision {} too small; the local action needs at least {}",
                prec, min_prec
            )));
        }
        let x = self.x_series(prec);
        self.local_action_with_x(e, prec, &x)
    }

    fn local_action_with_x(
        &self,
        e: usize,
        prec: i64,
        x: &TruncatedSeries,
    ) -> Result<LocalAutomorphism> {
        let curve = &self.curve;
        let ring = ArtinRing::base(&curve.ambient);
        let m = curve.m() as i64;
        let aut = self.element(e);
        if aut.w_shift.is_zero() {
            return Ok(LocalAutomorphism::identity(&ring, prec));
        }
        // u = 1 + t^m * w_shift(X(t)); poles of the shift stay below m.
        let mut shift_series = TruncatedSeries::zero(&ring, x.precision());
        for (d, c) in aut.w_shift.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = x.pow(d as i64)?.scale(&ring.from_field(c.clone()));
            shift_series = shift_series.add(&term);
        }
        let u = TruncatedSeries::constant(&ring, ring.one(), prec + m)
            .add(&shift_series.shift(m));
        assert_eq!(u.valuation(), Some(0));
        // r = u^(1/m) with r(0) = 1, via Newton on Z^m - u (m is prime to p).
        let mut coeffs = vec![TruncatedSeries::zero(&ring, u.precision()); m as usize + 1];
        coeffs[0] = u.neg();
        coeffs[m as usize] = TruncatedSeries::constant(&ring, ring.one(), u.precision());
        let root_poly = SeriesPoly::from_coeffs(coeffs);
        let seed = TruncatedSeries::constant(&ring, ring.one(), u.precision());
        let r = root_poly.newton_root(&seed)?;
        let sigma = TruncatedSeries::identity(&ring, r.precision() + 1)
            .mul(&r.invert()?)
            .truncate(prec);
        let sigma = LocalAutomorphism::new(sigma)?;
        // The order function must land on a candidate jump of the
        // Weierstrass semigroup <p, p^s+1>, shifted by one.
        if e != self.table.identity() {
            let sem = crate::semigroup::pcyclic_semigroup(curve.p, curve.s);
            let report = crate::semigroup::jump_report(&sem, curve.p)
                .expect("p-cyclic semigroup has members prime to p");
            match crate::pseries::order_function(&sigma) {
                crate::pseries::OrderValue::Finite(v) => {
                    assert!(
                        report.candidate_jumps.iter().any(|&j| j as i64 + 1 == v),
                        "order {} not among candidate jumps + 1",
                        v
                    );
                }
                crate::pseries::OrderValue::Infinite => {
                    panic!("non-identity element acts trivially on the uniformizer")
                }
            }
        }
        Ok(sigma)
    }

    /// The undeformed tuple over the base ring `A = k`: the genuine action
    /// of the curve, for which every Hensel lift equals its seed exactly.
    pub fn base_tuple(&self, prec: i64) -> Result<CompatibleTuple> {
        let curve = &self.curve;
        let m = curve.m() as i64;
        let n = curve.rep_dim();
        let p = curve.p;
        let base = ArtinRing::base(&curve.ambient);
        let x = self.x_series(prec);
        let mut funcs: Vec<TruncatedSeries> = Vec::with_capacity(n);
        funcs.push(TruncatedSeries::constant(&base, base.one(), prec));
        for j in 1..=(n - 2) {
            funcs.push(x.pow(j as i64)?.truncate(prec));
        }
        funcs.push(TruncatedSeries::monomial(&base, base.one(), -m, prec));
        let mats: Vec<Matrix<ArtinScalar>> = (0..self.order())
            .map(|e| {
                let bm = self.representation(e);
                let mut mat = Matrix::zeros(n, n, &base.zero());
                for i in 0..n {
                    for j in 0..n {
                        *mat.at_mut(i, j) = base.from_field(bm.at(i, j).clone());
                    }
                }
                mat
            })
            .collect();
        let rep = crate::deform::Rep::new(self.table.clone(), mats);
        let seeds: Vec<TruncatedSeries> = (0..self.order())
            .map(|e| Ok(self.local_action_with_x(e, prec, &x)?.image().clone()))
            .collect::<Result<Vec<_>>>()?;
        let pole_orders: Vec<i64> = (0..n)
            .map(|i| {
                if i == 0 {
                    0
                } else if i < n - 1 {
                    (i as i64) * p as i64
                } else {
                    m
                }
            })
            .collect();
        CompatibleTuple::new(self.table.clone(), funcs, pole_orders, rep, seeds)
    }

    /// The compatible tuple over `k[e]` attached to a tangent direction of
    /// the Krull-dimension computation: direction `nu` in `1..=s` deforms
    /// the root basis by `y -> y + e*scale*y^(p^nu)`.
    ///
    /// Only the monomial curve carries this construction. The deformation
    /// lives in the basis functions and the matrix, not in the automorphism:
    /// `X` deforms to `X_e = X + e*scale*X^(p^nu)` (its transformation law
    /// under `X -> X + y` produces exactly the deformed translations
    /// `y + e*scale*y^(p^nu)`), the powers `X_e^j` fill the middle slots, and
    /// for `nu = s` the function `W` picks up `-e*(scale/2)*X^(2 p^s)`. The
    /// W-row of the representation gains `e*scale*y^(p^s)` in the `X^(p^nu)`
    /// column when `nu < s`, or `-e*(scale/2)*y^(2 p^s)` in the constant
    /// column when `nu = s`. The Hensel lift of every element then coincides
    /// with the special-fibre automorphism on the nose.
    pub fn tangent_tuple(
        &self,
        direction: usize,
        scale: &FieldElement,
        prec: i64,
    ) -> Result<CompatibleTuple> {
        let curve = &self.curve;
        let s = curve.s as usize;
        if direction == 0 || direction > s {
            return Err(Error::BadDirection {
                index: direction,
                s,
            });
        }
        if !curve.is_monomial() {
            return Err(Error::InvalidInput(
                "tangent tuples are built at the monomial curve".into(),
            ));
        }
        let p = curve.p;
        let m = curve.m() as i64;
        let n = curve.rep_dim();
        let field = &curve.ambient;
        let base = ArtinRing::base(field);
        let dual = ArtinRing::dual(field);
        let nu = direction as u32;
        let x_prec = prec + 2 * p.pow(curve.s + 1) as i64;
        let x = self.x_series(x_prec);

        // X_e = X + e*scale*X^(p^nu) and its powers.
        let x_eps = x.promote().add(
            &x.pow(p.pow(nu) as i64)?
                .scale(&base.from_field(scale.clone()))
                .promote_as_eps(),
        );
        let mut funcs: Vec<TruncatedSeries> = Vec::with_capacity(n);
        funcs.push(TruncatedSeries::constant(&dual, dual.one(), prec));
        for j in 1..=(n - 2) {
            funcs.push(x_eps.pow(j as i64)?.truncate(prec));
        }
        // W is undeformed for nu < s; for nu = s it gains
        // -e*(scale/2)*X^(2 p^s).
        let mut w_func = TruncatedSeries::monomial(&dual, dual.one(), -m, prec);
        let two = FieldElement::from_int(field, 2);
        let half = two.inverse().expect("p odd");
        if nu == curve.s {
            let w_def = x
                .pow(2 * p.pow(curve.s) as i64)?
                .scale(&base.from_field(scale.mul_ref(&half).neg_ref()))
                .truncate(prec);
            w_func = w_func.add(&w_def.promote_as_eps());
        }
        funcs.push(w_func);

        // Deformed representation rho + e*delta.
        let mut mats: Vec<Matrix<ArtinScalar>> = Vec::with_capacity(self.order());
        for e in 0..self.order() {
            let autom = self.element(e);
            let y = &autom.y;
            let a_of_y = scale.mul_ref(&y.frobenius_pow(nu));
            let base_mat = self.representation(e);
            let mut mat = Matrix::zeros(n, n, &dual.zero());
            for i in 0..n {
                for j in 0..n {
                    *mat.at_mut(i, j) = dual.from_field(base_mat.at(i, j).clone());
                }
            }
            // X^j rows: the translation deforms, so the epsilon part of
            // binom(j,i) (y + eA)^(j-i) is binom(j,i)(j-i) y^(j-i-1) A.
            for j in 1..n - 1 {
                for i in 0..j {
                    let k = (j - i) as u64;
                    let coeff = (binom_mod_p(j as u64, i as u64, p) * (k % p)) % p;
                    if coeff == 0 {
                        continue;
                    }
                    let eps = FieldElement::from_int(field, coeff)
                        .mul_ref(&y.pow(k - 1))
                        .mul_ref(&a_of_y);
                    let cur = mat.at(j, i).clone();
                    *mat.at_mut(j, i) = cur.add(&dual.eps_times(eps));
                }
            }
            // W row corrections.
            if nu < curve.s {
                let col = p.pow(nu) as usize;
                let eps = scale.mul_ref(&y.frobenius_pow(curve.s));
                let cur = mat.at(n - 1, col).clone();
                *mat.at_mut(n - 1, col) = cur.add(&dual.eps_times(eps));
            } else {
                let eps = scale
                    .mul_ref(&half)
                    .mul_ref(&y.pow(2 * p.pow(curve.s)))
                    .neg_ref();
                let cur = mat.at(n - 1, 0).clone();
                *mat.at_mut(n - 1, 0) = cur.add(&dual.eps_times(eps));
            }
            mats.push(mat);
        }
        let rep = crate::deform::Rep::new(self.table.clone(), mats);

        // Special-fibre seeds, sharing one X-expansion.
        let x_for_seeds = x.truncate(prec);
        let seeds: Vec<TruncatedSeries> = (0..self.order())
            .map(|e| {
                Ok(self
                    .local_action_with_x(e, prec, &x_for_seeds)?
                    .image()
                    .clone())
            })
            .collect::<Result<Vec<_>>>()?;
        let pole_orders: Vec<i64> = (0..n)
            .map(|i| {
                if i == 0 {
                    0
                } else if i < n - 1 {
                    (i as i64) * p as i64
                } else {
                    m
                }
            })
            .collect();
        CompatibleTuple::new(self.table.clone(), funcs, pole_orders, rep, seeds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::addpoly::moore_det;
    use crate::pseries::{order_function, OrderValue};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ad_f_of_monomial_curve() {
        for (p, s) in [(3u64, 1u32), (3, 2), (5, 1)] {
            let curve = ASCurve::monomial(p, s).unwrap();
            let ad = curve.ad_f();
            let one = FieldElement::one(curve.ambient());
            assert_eq!(ad.coeff(0), one);
            assert_eq!(ad.coeff(2 * s), one);
            for v in 1..2 * s {
                assert!(ad.coeff(v).is_zero(), "(p,s)=({p},{s}) coefficient {v}");
            }
        }
    }

    #[test]
    fn ad_f_symmetry_for_random_t() {
        // a_{s+l} = a_{s-l}^(p^l) over 100 random draws at (3,2).
        let ambient = make_field(3, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let t1 = FieldElement::from_index(&ambient, rng.gen_range(0..ambient.order()));
            let curve = ASCurve::new(3, 2, vec![t1], ambient.clone()).unwrap();
            let ad = curve.ad_f();
            for l in 1..=2u32 {
                assert_eq!(ad.coeff(2 + l), ad.coeff(2 - l).frobenius_pow(l));
            }
        }
    }

    #[test]
    fn ad_f_matches_operator_construction() {
        // Independent oracle: Delta(f) - (Id - F)(truncation) must equal
        // X^(p^s) * Ad_f(Y), coefficient by coefficient.
        for (p, s, t1) in [(3u64, 1u32, None), (3, 2, Some(5u64)), (5, 1, None)] {
            let curve = match t1 {
                None => ASCurve::monomial(p, s).unwrap(),
                Some(idx) => {
                    let ambient = make_field(p, 4 * s as usize).unwrap();
                    let t = FieldElement::from_index(&ambient, idx);
                    ASCurve::new(p, s, vec![t], ambient).unwrap()
                }
            };
            let field = curve.ambient().clone();
            let f = curve.f_poly();
            let delta = crate::addpoly::delta_bilinear(&f);
            let ad = curve.ad_f();
            // Check on every y in a small sample: R(X, y) := Delta(f)(X,y) -
            // (Id-F) P_op(X,y) equals X^(p^s) Ad_f(y).
            let bound = p.pow(s - 1) as usize + 1;
            for yi in 0..20u64 {
                let y = FieldElement::from_index(&field, yi % field.order());
                let dy = delta.eval_y(&y);
                let mut q = Poly::zero(&field);
                let mut power = dy.clone();
                for _ in 0..=(s + 1) {
                    q = q.add(&power.truncate_deg(bound));
                    power = power.frobenius_op();
                }
                let q = q.truncate_deg(bound);
                let r = dy.sub(&q.sub(&q.frobenius_op()));
                let expected =
                    Poly::monomial(&field, ad.eval(&y), p.pow(s) as usize);
                assert_eq!(r, expected, "(p,s)=({p},{s}) y index {yi}");
            }
        }
    }

    #[test]
    fn shift_polynomial_defining_property() {
        let curve = ASCurve::monomial(3, 1).unwrap();
        let group = curve.automorphism_group().unwrap();
        let f = curve.f_poly();
        for y in group.root_basis().span() {
            let w = curve.p_f(&y).unwrap();
            if y.is_zero() {
                assert!(w.is_zero());
                continue;
            }
            let lhs = w.frobenius_op().sub(&w);
            let rhs = f.shift(&y).sub(&f);
            assert_eq!(lhs, rhs);
            assert!(w.degree().unwrap() <= 1);
        }
    }

    #[test]
    fn shift_cocycle_identity_for_random_root_pairs() {
        // P_f(X, y1+y2) - P_f(X, y2) - P_f(X+y2, y1) is constant in X.
        let curve = ASCurve::monomial(3, 2).unwrap();
        let group = curve.automorphism_group().unwrap();
        let span = group.root_basis().span();
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..20 {
            let y1 = &span[rng.gen_range(0..span.len())];
            let y2 = &span[rng.gen_range(0..span.len())];
            let w12 = curve.p_f(&y1.add_ref(y2)).unwrap();
            let w2 = curve.p_f(y2).unwrap();
            let w1 = curve.p_f(y1).unwrap();
            let defect = w12.sub(&w2).sub(&w1.shift(y2));
            assert!(defect.is_zero() || defect.degree().unwrap() == 0);
        }
    }

    #[test]
    fn group_structure_at_3_1() {
        let curve = ASCurve::monomial(3, 1).unwrap();
        let group = curve.automorphism_group().unwrap();
        let table = group.table();
        assert_eq!(table.order(), 27);
        let center = table.center();
        assert_eq!(center.len(), 3);
        // The center is exactly the translations y = 0.
        for &z in &center {
            assert!(group.element(z).y.is_zero());
        }
        // Commutator subgroup equals the center: extraspecial.
        let derived = table.commutator_subgroup();
        assert_eq!(derived, center);
        // Quotient by the center is elementary abelian of order 9: every
        // commutator is central and every cube is central.
        for g in 0..27 {
            for h in 0..27 {
                assert!(center.contains(&table.commutator(g, h)));
            }
            let cube = table.mul(table.mul(g, g), g);
            assert!(center.contains(&cube));
        }
        // Nondegeneracy: the two basis translations do not commute.
        let gens = table.generators();
        assert_ne!(
            table.mul(gens[0], gens[1]),
            table.mul(gens[1], gens[0]),
            "commutator pairing must be nondegenerate"
        );
    }

    #[test]
    fn representation_is_faithful_homomorphism_at_3_1() {
        let curve = ASCurve::monomial(3, 1).unwrap();
        let group = curve.automorphism_group().unwrap();
        let rep = group.rep(); // Rep::new checks rho(g*h) = rho(g)rho(h) in full
        assert_eq!(rep.dim(), 3);
        let id = Matrix::identity(3, &FieldElement::zero(curve.ambient()));
        let mut trivial = 0;
        for e in 0..group.order() {
            if *rep.matrix(e) == id {
                trivial += 1;
            }
        }
        assert_eq!(trivial, 1, "only the identity maps to the identity matrix");
    }

    #[test]
    fn representation_row_of_x() {
        let curve = ASCurve::monomial(3, 1).unwrap();
        let group = curve.automorphism_group().unwrap();
        let gens = group.table().generators().to_vec();
        let g = gens[0];
        let y = group.element(g).y.clone();
        let m = group.representation(g);
        assert_eq!(*m.at(1, 0), y);
        assert_eq!(*m.at(1, 1), FieldElement::one(curve.ambient()));
        assert!(m.at(0, 1).is_zero());
    }

    #[test]
    fn homomorphism_sampled_at_3_2() {
        let curve = ASCurve::monomial(3, 2).unwrap();
        let group = curve.automorphism_group().unwrap();
        assert_eq!(group.order(), 243);
        assert_eq!(group.table().center().len(), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        for _ in 0..60 {
            let g = rng.gen_range(0..group.order());
            let h = rng.gen_range(0..group.order());
            let lhs = group.representation(group.table().mul(g, h));
            let rhs = group.representation(g).matmul(&group.representation(h));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn root_space_dimension_and_moore_nonvanishing() {
        for (p, s) in [(3u64, 1u32), (3, 2), (5, 1)] {
            let curve = ASCurve::monomial(p, s).unwrap();
            let group = curve.automorphism_group().unwrap();
            assert_eq!(group.root_basis().dim(), 2 * s as usize);
            assert!(!moore_det(group.root_basis().vectors()).is_zero());
        }
    }

    #[test]
    fn x_series_solves_curve_equation() {
        let curve = ASCurve::monomial(3, 1).unwrap();
        let group = curve.automorphism_group().unwrap();
        let x = group.x_series(12);
        let ring = x.ring().clone();
        // f(X(t)) = t^-12 - t^-4
        let x4 = x.pow(4).unwrap();
        let target = TruncatedSeries::monomial(&ring, ring.one(), -12, 12)
            .sub(&TruncatedSeries::monomial(&ring, ring.one(), -4, 12));
        assert!(x4.agrees_with(&target));
        assert_eq!(x.valuation(), Some(-3));
    }

    #[test]
    fn local_action_orders_at_3_1() {
        let curve = ASCurve::monomial(3, 1).unwrap();
        let group = curve.automorphism_group().unwrap();
        let prec = 18;
        // identity acts as t
        let id = group.local_action(group.table().identity(), prec).unwrap();
        assert_eq!(order_function(&id), OrderValue::Infinite);
        for e in 0..group.order() {
            if e == group.table().identity() {
                continue;
            }
            let aut = group.element(e);
            let sigma = group.local_action(e, prec).unwrap();
            let expected = if aut.y.is_zero() {
                // central translations jump at m = 4, order m + 1
                OrderValue::Finite(5)
            } else {
                OrderValue::Finite(2)
            };
            assert_eq!(order_function(&sigma), expected, "element {e}");
        }
    }

    #[test]
    fn local_action_translates_x_series() {
        // X(sigma(t)) = X(t) + y to precision.
        let curve = ASCurve::monomial(3, 1).unwrap();
        let group = curve.automorphism_group().unwrap();
        let prec = 18;
        let x = group.x_series(prec);
        for &g in group.table().generators() {
            let sigma = group.local_action(g, prec).unwrap();
            let lhs = x.subst(sigma.image()).unwrap();
            let y = group.element(g).y.clone();
            let rhs = x.add(&TruncatedSeries::constant(
                x.ring(),
                x.ring().from_field(y),
                x.precision(),
            ));
            assert!(lhs.agrees_with(&rhs));
        }
    }

    #[test]
    fn local_action_composes_like_the_table() {
        // series(g * h) = series(g) o series(h) ("g acts first").
        let curve = ASCurve::monomial(3, 1).unwrap();
        let group = curve.automorphism_group().unwrap();
        let prec = 18;
        let gens = group.table().generators().to_vec();
        for &g in &gens {
            for &h in &gens {
                let sg = group.local_action(g, prec).unwrap();
                let sh = group.local_action(h, prec).unwrap();
                let composed = sg.compose(&sh).unwrap();
                let product = group
                    .local_action(group.table().mul(g, h), prec)
                    .unwrap();
                assert!(composed.image().agrees_with(product.image()));
            }
        }
    }
}
