//! Acceptance suite: every release criterion runs here, one pass/fail line
//! each (`cargo test --test acceptance -- --nocapture` to see them). All
//! checks are exact; the stated wall-clock budgets are asserted too.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use defring::addpoly::{additive_from_roots, moore_det, root_basis, root_space, AdditivePoly, RootBasis};
use defring::ascurve::ASCurve;
use defring::deform::{
    character_rep_n2, coboundary_space, cocycle_coordinates, cocycle_space, krull_dim_pcyclic,
    krull_dim_pcyclic_oracle, ordinary_rep, ordinary_tangent_dim,
};
use defring::ffield::{make_field, FieldElement};
use defring::linalg::{in_span, Matrix};
use defring::pseries::{is_compatible, lift_automorphism, hensel_solve, order_function, OrderValue};
use defring::semigroup::{jump_report, pcyclic_semigroup, tail_semigroup, NumericalSemigroup};

fn criterion<F: FnOnce()>(number: u32, label: &str, budget: Duration, body: F) {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    match outcome {
        Ok(()) if elapsed <= budget => {
            println!("criterion {number:2} PASS ({elapsed:>10.2?})  {label}");
        }
        Ok(()) => {
            println!("criterion {number:2} FAIL ({elapsed:>10.2?})  {label}: exceeded budget {budget:?}");
            panic!("criterion {number} exceeded its time budget");
        }
        Err(e) => {
            println!("criterion {number:2} FAIL ({elapsed:>10.2?})  {label}");
            std::panic::resume_unwind(e);
        }
    }
}

#[test]
fn criterion_01_jump_sets() {
    criterion(1, "jump sets of <p, p^s+1> and the Hermitian semigroup", Duration::from_secs(1), || {
        for (p, s) in [(3u64, 1u32), (3, 2), (5, 1)] {
            let sem = pcyclic_semigroup(p, s);
            let report = jump_report(&sem, p).unwrap();
            let expected: Vec<u64> = (0..=p.pow(s - 1)).map(|k| 1 + k * p).collect();
            assert_eq!(report.candidate_jumps, expected, "(p,s)=({p},{s})");
        }
        // Hermitian at p = 3, h = 1: members {0, 3, 4, ...}.
        let hermitian = tail_semigroup(3);
        let report = jump_report(&hermitian, 3).unwrap();
        assert_eq!(report.m, 4);
        assert_eq!(report.candidate_jumps, vec![1, 4]);
    });
}

#[test]
fn criterion_02_additive_polynomial_of_the_family() {
    criterion(2, "Ad_f of the monomial curve and coefficient symmetry", Duration::from_secs(1), || {
        for (p, s) in [(3u64, 1u32), (3, 2), (5, 1)] {
            let curve = ASCurve::monomial(p, s).unwrap();
            let ad = curve.ad_f();
            let one = FieldElement::one(curve.ambient());
            // Y + Y^(p^2s), coefficient for coefficient.
            for v in 0..=2 * s {
                let expected = if v == 0 || v == 2 * s {
                    one.clone()
                } else {
                    FieldElement::zero(curve.ambient())
                };
                assert_eq!(ad.coeff(v), expected);
            }
        }
        // Symmetry a_{s+l} = a_{s-l}^(p^l) over 100 random draws at (3,2).
        let ambient = make_field(3, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let t1 = FieldElement::from_index(&ambient, rng.gen_range(0..ambient.order()));
            let curve = ASCurve::new(3, 2, vec![t1], ambient.clone()).unwrap();
            let ad = curve.ad_f();
            for l in 1..=2u32 {
                assert_eq!(ad.coeff(2 + l), ad.coeff(2 - l).frobenius_pow(l));
            }
        }
    });
}

#[test]
fn criterion_03_root_space_dimensions() {
    criterion(3, "dim root_space(Y + Y^(p^2s)) = 2s in F_{p^4s}", Duration::from_secs(5), || {
        for (p, s) in [(3u64, 1u32), (3, 2), (5, 1)] {
            let curve = ASCurve::monomial(p, s).unwrap();
            let dim = root_space(&curve.ad_f(), curve.ambient()).len();
            assert_eq!(dim, 2 * s as usize, "(p,s)=({p},{s})");
        }
        // Brute force at (3,1): all 81 elements.
        let curve = ASCurve::monomial(3, 1).unwrap();
        let ad = curve.ad_f();
        let roots = (0..81)
            .map(|i| FieldElement::from_index(curve.ambient(), i))
            .filter(|x| ad.eval(x).is_zero())
            .count();
        assert_eq!(roots, 9, "brute force root count must be p^(2s) = 9");
    });
}

#[test]
fn criterion_04_group_structure() {
    criterion(4, "G_1(inf) at (3,1) is extraspecial of order 27", Duration::from_secs(5), || {
        let curve = ASCurve::monomial(3, 1).unwrap();
        let group = curve.automorphism_group().unwrap();
        let table = group.table();
        assert_eq!(table.order(), 27);
        let center = table.center();
        assert_eq!(center.len(), 3);
        // Exhaustive: quotient by the center is elementary abelian of order
        // 9 (all commutators central, all cubes central), and the commutator
        // subgroup equals the center.
        for g in 0..27 {
            for h in 0..27 {
                assert!(center.contains(&table.commutator(g, h)));
            }
            let cube = table.mul(table.mul(g, g), g);
            assert!(center.contains(&cube));
        }
        assert_eq!(27 / center.len(), 9);
        assert_eq!(table.commutator_subgroup(), center);
    });
}

#[test]
fn criterion_05_faithful_representation() {
    criterion(5, "faithful 3x3 unitriangular representation, all 27x27 products", Duration::from_secs(10), || {
        let curve = ASCurve::monomial(3, 1).unwrap();
        let group = curve.automorphism_group().unwrap();
        assert_eq!(curve.rep_dim(), 3);
        let mats: Vec<Matrix<FieldElement>> =
            (0..27).map(|e| group.representation(e)).collect();
        let zero = FieldElement::zero(curve.ambient());
        let id = Matrix::identity(3, &zero);
        for (e, m) in mats.iter().enumerate() {
            // Lower unitriangular shape.
            for i in 0..3 {
                for j in 0..3 {
                    if i == j {
                        assert_eq!(*m.at(i, j), FieldElement::one(curve.ambient()));
                    } else if j > i {
                        assert!(m.at(i, j).is_zero());
                    }
                }
            }
            // Faithful: only the identity maps to the identity.
            assert_eq!(*m == id, e == group.table().identity());
        }
        for g in 0..27 {
            for h in 0..27 {
                assert_eq!(
                    mats[group.table().mul(g, h)],
                    mats[g].matmul(&mats[h]),
                    "homomorphism fails at ({g},{h})"
                );
            }
        }
    });
}

#[test]
fn criterion_06_krull_dimension() {
    criterion(6, "Krull dimension s by hyperplanes and by the dual-number oracle", Duration::from_secs(60), || {
        for (p, s) in [(3u64, 1u32), (3, 2), (5, 1), (7, 1)] {
            let cert = krull_dim_pcyclic(p, s).unwrap();
            let oracle = krull_dim_pcyclic_oracle(p, s).unwrap();
            assert_eq!(cert.dim, s as usize, "(p,s)=({p},{s}) hyperplane route");
            assert_eq!(oracle, s as usize, "(p,s)=({p},{s}) oracle route");
            assert_eq!(cert.dim, oracle);
        }
    });
}

#[test]
fn criterion_07_two_dimensional_hull() {
    criterion(7, "n = 2 tangent dimension log_p|G| with zero coboundaries", Duration::from_secs(5), || {
        for r in 1..=3u32 {
            let rep = character_rep_n2(3, r).unwrap();
            let report = cocycle_space(&rep);
            assert_eq!(report.dim_tangent, r as usize, "|G| = 3^{r}");
            assert_eq!(report.dim_coboundaries, 0);
        }
    });
}

#[test]
fn criterion_08_ordinary_tangent() {
    criterion(8, "ordinary n = 3 tangent dimension r - 1 via the constraint pipeline", Duration::from_secs(5), || {
        for (p, r, l) in [(3u64, 1u32, 1u64), (3, 2, 1), (5, 3, 2)] {
            let field = make_field(p, r as usize).unwrap();
            let lambda = FieldElement::from_int(&field, l);
            let report = ordinary_tangent_dim(p, r, &lambda).unwrap();
            assert_eq!(report.dim_tangent, r as usize - 1, "(p,r)=({p},{r})");
        }
    });
}

#[test]
fn criterion_09_hensel_machinery() {
    criterion(9, "Hensel lift along a tangent direction at (3,1)", Duration::from_secs(30), || {
        let curve = ASCurve::monomial(3, 1).unwrap();
        let group = curve.automorphism_group().unwrap();
        let scale = FieldElement::one(curve.ambient());
        let m = curve.m() as i64;
        let prec = 4 * m + 2;
        let tuple = group.tangent_tuple(1, &scale, prec).unwrap();
        let gens = group.table().generators().to_vec();
        for &g in &gens {
            // The last-row equation is solved with residual exactly zero to
            // precision, and the reduction mod epsilon recovers sigma(t).
            let lift = lift_automorphism(&tuple, g).unwrap();
            let residual = tuple.last_row_equation(g).eval(lift.image()).unwrap();
            assert!(residual.is_zero(), "nonzero residual at {g}");
            assert!(lift.image().reduce().agrees_with(tuple.seed(g)));
            assert!(lift.image().precision() >= prec - 1);
            // Uniqueness: perturbing the seed inside m_A gives the same root.
            let equation = tuple.last_row_equation(g);
            let seed = tuple.seed(g).promote();
            let dual = seed.ring().clone();
            let bump = defring::pseries::TruncatedSeries::monomial(
                &dual,
                dual.eps_times(FieldElement::from_int(curve.ambient(), 2)),
                2,
                seed.precision(),
            );
            let b1 = hensel_solve(&equation, &seed).unwrap();
            let b2 = hensel_solve(&equation, &seed.add(&bump)).unwrap();
            assert!(b1.agrees_with(&b2), "Hensel root must be unique");
        }
        // Group law over all pairs of generators.
        for &g in &gens {
            for &h in &gens {
                let lg = lift_automorphism(&tuple, g).unwrap();
                let lh = lift_automorphism(&tuple, h).unwrap();
                let composed = lg.compose(&lh).unwrap();
                let product = lift_automorphism(&tuple, group.table().mul(g, h)).unwrap();
                assert!(
                    composed.image().agrees_with(product.image()),
                    "group law fails at ({g},{h})"
                );
            }
        }
        // And the tuple is genuinely compatible.
        for &g in &gens {
            assert!(is_compatible(&tuple, g).unwrap());
        }
    });
}

#[test]
fn criterion_10_property_suites() {
    criterion(10, "Moore/brute-force, roundtrip, coboundary containment, jump primality", Duration::from_secs(60), || {
        // Moore-determinant independence vs brute force on F_9, all triples.
        let f9 = make_field(3, 2).unwrap();
        let elements: Vec<FieldElement> =
            (0..9).map(|i| FieldElement::from_index(&f9, i)).collect();
        let brute_dependent = |xs: &[FieldElement]| -> bool {
            for mask in 1..27u64 {
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
                    assert_eq!(!moore_det(&xs).is_zero(), !brute_dependent(&xs));
                }
            }
        }

        // additive_from_roots / root_space roundtrip for the split cases.
        for (p, s) in [(3u64, 1u32), (5, 1)] {
            let curve = ASCurve::monomial(p, s).unwrap();
            let basis = root_basis(&curve.ad_f(), curve.ambient()).unwrap();
            let rebuilt = additive_from_roots(&basis).unwrap();
            let again = root_space(&rebuilt, curve.ambient());
            let rb = RootBasis::new(curve.ambient(), again).unwrap();
            let mut lhs: Vec<u64> = basis.span().iter().map(|x| x.to_index()).collect();
            let mut rhs: Vec<u64> = rb.span().iter().map(|x| x.to_index()).collect();
            lhs.sort_unstable();
            rhs.sort_unstable();
            assert_eq!(lhs, rhs, "root set must be reproduced");
        }

        // Coboundaries inside cocycles on random ordinary-shape reps.
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..3 {
            let field = make_field(3, 2).unwrap();
            let idx = rng.gen_range(1..9);
            let lambda = {
                let l = FieldElement::from_index(&field, idx);
                if l.is_zero() {
                    FieldElement::one(&field)
                } else {
                    l
                }
            };
            let rep = ordinary_rep(3, 2, &lambda).unwrap();
            let report = cocycle_space(&rep);
            let gens = rep.table().generators().to_vec();
            let pairs: Vec<(usize, usize)> =
                vec![(1, 0), (2, 0), (2, 1)];
            let cocycle_vectors: Vec<Vec<FieldElement>> = report
                .basis
                .iter()
                .map(|cc| cocycle_coordinates(cc, &gens, &pairs))
                .collect();
            for cob in coboundary_space(&rep) {
                let v = cocycle_coordinates(&cob, &gens, &pairs);
                assert!(in_span(&cocycle_vectors, &v));
            }
        }

        // Every emitted jump set consists of integers prime to p.
        let cases: Vec<(NumericalSemigroup, u64)> = vec![
            (pcyclic_semigroup(3, 1), 3),
            (pcyclic_semigroup(3, 2), 3),
            (pcyclic_semigroup(5, 1), 5),
            (pcyclic_semigroup(7, 1), 7),
            (tail_semigroup(3), 3),
            (tail_semigroup(9), 3),
            (NumericalSemigroup::new(&[1]).unwrap(), 3),
        ];
        for (sem, p) in cases {
            let report = jump_report(&sem, p).unwrap();
            assert!(report.candidate_jumps.iter().all(|&j| j % p != 0));
        }

        // The additive polynomial evaluation stays F_p-linear under the
        // roundtrip data (sanity anchor for the suite).
        let curve = ASCurve::monomial(3, 1).unwrap();
        let ad: AdditivePoly<FieldElement> = curve.ad_f();
        let x = FieldElement::generator(curve.ambient());
        let y = FieldElement::from_index(curve.ambient(), 7);
        assert_eq!(
            ad.eval(&x.add_ref(&y)),
            ad.eval(&x).add_ref(&ad.eval(&y))
        );
    });
}

#[test]
fn summary_order_function_cross_check() {
    // Cross-module anchor used by several criteria: the order function of
    // every local action at (3,1) lands on a candidate jump + 1.
    let curve = ASCurve::monomial(3, 1).unwrap();
    let group = curve.automorphism_group().unwrap();
    let report = jump_report(&pcyclic_semigroup(3, 1), 3).unwrap();
    for e in 0..group.order() {
        let sigma = group.local_action(e, 18).unwrap();
        match order_function(&sigma) {
            OrderValue::Infinite => assert_eq!(e, group.table().identity()),
            OrderValue::Finite(v) => {
                assert!(report.candidate_jumps.iter().any(|&j| j as i64 + 1 == v));
            }
        }
    }
}
