//! `paper examples`: reruns every worked example end to end and prints one
//! pass/fail line per check. Deterministic for a fixed seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use defring::ascurve::ASCurve;
use defring::deform::{
    character_rep_n2, cocycle_space, krull_dim_pcyclic, krull_dim_pcyclic_oracle,
    ordinary_tangent_dim,
};
use defring::ffield::{make_field, FieldElement};
use defring::linalg::Matrix;
use defring::pseries::{is_compatible, lift_automorphism};
use defring::semigroup::{jump_report, pcyclic_semigroup, tail_semigroup};
use defring::Error;

use crate::Report;

struct Check {
    name: String,
    pass: bool,
    detail: String,
}

fn check(name: &str, expected: impl std::fmt::Debug, got: impl std::fmt::Debug, pass: bool) -> Check {
    Check {
        name: name.to_string(),
        pass,
        detail: format!("expected {:?}, got {:?}", expected, got),
    }
}

pub fn examples(seed: u64) -> Result<Report, Error> {
    let mut checks: Vec<Check> = Vec::new();

    // Hermitian/Fermat branch point (n - 1 = p^h, p = 3, h = 1): the p-part
    // jump candidates are {1, n}.
    {
        let report = jump_report(&tail_semigroup(3), 3)?;
        checks.push(check(
            "hermitian jump candidates (p=3, h=1)",
            vec![1u64, 4],
            report.candidate_jumps.clone(),
            report.candidate_jumps == vec![1, 4],
        ));
    }

    // The x^n + x^m + 1 family (m - 1 = p^h): pole numbers below m are
    // {0, m}, so the only p-part candidate is m itself.
    {
        let report = jump_report(&tail_semigroup(4), 3)?;
        checks.push(check(
            "x^n+x^m+1 jump candidates (p=3, m=4)",
            vec![4u64],
            report.candidate_jumps.clone(),
            report.candidate_jumps == vec![4],
        ));
    }

    // p-cyclic covers: candidates 1 + kp for k = 0..p^(s-1).
    for (p, s) in [(3u64, 1u32), (3, 2), (5, 1)] {
        let report = jump_report(&pcyclic_semigroup(p, s), p)?;
        let expected: Vec<u64> = (0..=p.pow(s - 1)).map(|k| 1 + k * p).collect();
        checks.push(check(
            &format!("p-cyclic jump candidates (p={p}, s={s})"),
            expected.clone(),
            report.candidate_jumps.clone(),
            report.candidate_jumps == expected,
        ));
    }

    // Ad_f of the monomial curve is Y + Y^(p^2s); coefficient symmetry holds
    // for random deformation coefficients.
    {
        let curve = ASCurve::monomial(3, 1)?;
        let ad = curve.ad_f();
        let one = FieldElement::one(curve.ambient());
        let ok = ad.coeff(0) == one && ad.coeff(2) == one && ad.coeff(1).is_zero();
        checks.push(check("Ad of W^3 - W = X^4 is Y + Y^9", "Y + Y^9", &ad, ok));

        let ambient = make_field(3, 8)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sym_ok = true;
        for _ in 0..100 {
            let t1 = FieldElement::from_index(&ambient, rng.gen_range(0..ambient.order()));
            let c = ASCurve::new(3, 2, vec![t1], ambient.clone())?;
            let ad = c.ad_f();
            for l in 1..=2u32 {
                sym_ok &= ad.coeff(2 + l) == ad.coeff(2 - l).frobenius_pow(l);
            }
        }
        checks.push(check(
            "coefficient symmetry a_{s+l} = a_{s-l}^(p^l), 100 draws at (3,2)",
            true,
            sym_ok,
            sym_ok,
        ));
    }

    // Root spaces have dimension 2s inside F_{p^{4s}}.
    for (p, s) in [(3u64, 1u32), (3, 2), (5, 1)] {
        let curve = ASCurve::monomial(p, s)?;
        let dim = defring::addpoly::root_space(&curve.ad_f(), curve.ambient()).len();
        checks.push(check(
            &format!("root space dimension 2s (p={p}, s={s})"),
            2 * s as usize,
            dim,
            dim == 2 * s as usize,
        ));
    }

    // The automorphism group at (3,1): extraspecial of order 27.
    {
        let curve = ASCurve::monomial(3, 1)?;
        let group = curve.automorphism_group()?;
        let center = group.table().center();
        let derived = group.table().commutator_subgroup();
        let ok = group.order() == 27 && center.len() == 3 && derived == center;
        checks.push(check(
            "G_1(inf) at (3,1): order 27, center = derived subgroup of order 3",
            (27, 3),
            (group.order(), center.len()),
            ok,
        ));

        // Faithfulness of the representation over all 27 elements.
        let zero = FieldElement::zero(curve.ambient());
        let id = Matrix::identity(3, &zero);
        let trivial = (0..27)
            .filter(|&e| group.representation(e) == id)
            .count();
        checks.push(check(
            "representation is faithful (only identity maps to identity)",
            1usize,
            trivial,
            trivial == 1,
        ));
    }

    // n = 2 hull: tangent dimension log_p |G|.
    for r in 1..=3u32 {
        let rep = character_rep_n2(3, r)?;
        let report = cocycle_space(&rep);
        checks.push(check(
            &format!("n=2 tangent dimension for |G| = 3^{r}"),
            r as usize,
            report.dim_tangent,
            report.dim_tangent == r as usize,
        ));
    }

    // Ordinary curves: tangent dimension r - 1.
    for (p, r, l) in [(3u64, 1u32, 1u64), (3, 2, 1), (5, 3, 2)] {
        let field = make_field(p, r as usize)?;
        let lambda = FieldElement::from_int(&field, l);
        let report = ordinary_tangent_dim(p, r, &lambda)?;
        checks.push(check(
            &format!("ordinary tangent dimension (p={p}, r={r})"),
            r as usize - 1,
            report.dim_tangent,
            report.dim_tangent == r as usize - 1,
        ));
    }

    // Krull dimension s, twice.
    for (p, s) in [(3u64, 1u32), (3, 2), (5, 1)] {
        let cert = krull_dim_pcyclic(p, s)?;
        let oracle = krull_dim_pcyclic_oracle(p, s)?;
        checks.push(check(
            &format!("Krull dimension and oracle (p={p}, s={s})"),
            (s as usize, s as usize),
            (cert.dim, oracle),
            cert.dim == s as usize && oracle == s as usize,
        ));
    }

    // Hensel lift along the (3,1) tangent direction.
    {
        let curve = ASCurve::monomial(3, 1)?;
        let group = curve.automorphism_group()?;
        let scale = FieldElement::one(curve.ambient());
        let prec = 4 * curve.m() as i64 + 2;
        let tuple = group.tangent_tuple(1, &scale, prec)?;
        let gens = group.table().generators().to_vec();
        let mut ok = true;
        for &g in &gens {
            let lift = lift_automorphism(&tuple, g)?;
            ok &= tuple.last_row_equation(g).eval(lift.image())?.is_zero();
            ok &= lift.image().reduce().agrees_with(tuple.seed(g));
            ok &= is_compatible(&tuple, g)?;
        }
        for &g in &gens {
            for &h in &gens {
                let composed = lift_automorphism(&tuple, g)?
                    .compose(&lift_automorphism(&tuple, h)?)?;
                let product = lift_automorphism(&tuple, group.table().mul(g, h))?;
                ok &= composed.image().agrees_with(product.image());
            }
        }
        checks.push(check(
            "Hensel lifts at (3,1): zero residual, compatibility, group law",
            true,
            ok,
            ok,
        ));
    }

    let failures = checks.iter().filter(|c| !c.pass).count();
    let mut lines: Vec<String> = checks
        .iter()
        .map(|c| {
            format!(
                "{} {}{}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                if c.pass {
                    String::new()
                } else {
                    format!(" ({})", c.detail)
                }
            )
        })
        .collect();
    lines.push(format!(
        "{} checks, {} failed",
        checks.len(),
        failures
    ));
    let json = json!({
        "checks": checks
            .iter()
            .map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
            .collect::<Vec<_>>(),
        "failures": failures,
    });
    Ok(Report {
        human: lines.join("\n"),
        json,
        failures,
    })
}
