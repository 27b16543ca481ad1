//! Command-line front end: every library computation behind a subcommand,
//! with aligned human output by default and stable JSON under `--json`.
//!
//! Exit codes: 0 on success, 1 on domain errors, 2 on usage errors.

mod paper;
mod repfile;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use defring::ascurve::{ASCurve, ASGroup};
use defring::deform::{krull_dim_pcyclic, krull_dim_pcyclic_oracle, ordinary_tangent_dim};
use defring::ffield::{make_field, FieldElement};
use defring::linalg::Matrix;
use defring::pseries::{is_compatible, lift_automorphism, order_function, OrderValue};
use defring::semigroup::{jump_report, NumericalSemigroup};
use defring::Error;

#[derive(Parser)]
#[command(name = "defring", version, about = "Exact computer algebra for curve automorphisms in characteristic p: semigroup jumps, additive polynomials, extraspecial automorphism groups, Hensel lifts, and deformation tangent spaces")]
struct Cli {
    /// Emit JSON instead of human-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Seed for the randomized consistency draws.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weierstrass semigroup computations.
    Semigroup {
        #[command(subcommand)]
        cmd: SemigroupCmd,
    },
    /// The Artin-Schreier covers W^p - W = sum t_i X^(p^i+1) + X^(p^s+1).
    As {
        #[command(subcommand)]
        cmd: AsCmd,
    },
    /// Tangent spaces of deformation functors.
    Tangent {
        #[command(subcommand)]
        cmd: TangentCmd,
    },
    /// Hensel lifting of local automorphisms.
    Hensel {
        #[command(subcommand)]
        cmd: HenselCmd,
    },
    /// Reproduce the worked examples as a labeled pass/fail report.
    Paper {
        #[command(subcommand)]
        cmd: PaperCmd,
    },
}

#[derive(Subcommand)]
enum SemigroupCmd {
    /// First pole number prime to p and the candidate ramification jumps.
    Jumps {
        /// Comma-separated generators, e.g. 3,4
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u64>,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    s: u32,
    /// Deformation coefficients t_1..t_{s-1} as element indices in the
    /// ambient field F_{p^{4s}} (power-basis digits base p). Defaults to the
    /// monomial curve.
    #[arg(long, value_delimiter = ',')]
    t: Option<Vec<u64>>,
}

impl CurveArgs {
    fn build(&self) -> Result<ASCurve, Error> {
        let ambient = make_field(self.p, 4 * self.s as usize)?;
        let t = match &self.t {
            None => vec![FieldElement::zero(&ambient); self.s as usize - 1],
            Some(idx) => idx
                .iter()
                .map(|&i| FieldElement::from_index(&ambient, i))
                .collect(),
        };
        ASCurve::new(self.p, self.s, t, ambient)
    }
}

#[derive(Args)]
struct ElementArgs {
    /// Root-space coordinates of the translation part, 2s comma-separated
    /// digits mod p. Defaults to the first basis vector.
    #[arg(long, value_delimiter = ',')]
    y: Option<Vec<u64>>,
    /// Central coordinate in F_p.
    #[arg(long, default_value_t = 0)]
    c: u64,
}

impl ElementArgs {
    fn resolve(&self, group: &ASGroup) -> Result<usize, Error> {
        let dim = group.root_basis().dim();
        let digits = match &self.y {
            None => {
                let mut d = vec![0u64; dim];
                d[0] = 1;
                d
            }
            Some(d) => {
                if d.len() != dim {
                    return Err(Error::InvalidInput(format!(
                        "--y needs exactly {} digits",
                        dim
                    )));
                }
                d.clone()
            }
        };
        Ok(group.element_from_digits(&digits, self.c))
    }
}

#[derive(Subcommand)]
enum AsCmd {
    /// The additive polynomial Ad_f.
    Adf(CurveArgs),
    /// The automorphism group at infinity.
    Group(CurveArgs),
    /// Representation matrix of one element on {1, X, ..., X^(p^(s-1)), W}.
    Rep {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        element: ElementArgs,
    },
    /// The local action sigma(t) at the branch point.
    Local {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        element: ElementArgs,
        /// Series precision; defaults to 4m + 2.
        #[arg(long)]
        precision: Option<i64>,
    },
}

#[derive(Subcommand)]
enum TangentCmd {
    /// Krull dimension of the p-cyclic deformation ring, with certificate.
    Pcyclic {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: u32,
        /// Also run the independent dual-number oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Cocycle/coboundary tangent report for a representation from a file.
    Rep {
        /// JSON file describing the group and matrices (see README).
        #[arg(long)]
        group: PathBuf,
        /// Expected matrix size, cross-checked against the file.
        #[arg(long)]
        n: usize,
    },
    /// Tangent dimension for the ordinary-curve shape (returns r - 1).
    Ordinary {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        /// lambda as an integer mod p (nonzero).
        #[arg(long)]
        lambda: u64,
    },
}

#[derive(Subcommand)]
enum HenselCmd {
    /// Lift every generator along a Krull tangent direction and check the
    /// group law.
    Lift {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: u32,
        /// Tangent direction index, 1..=s.
        #[arg(long)]
        direction: usize,
        /// Scale of the direction as an element index of F_{p^{4s}}.
        #[arg(long, default_value_t = 1)]
        scale: u64,
        /// Series precision; defaults to 4m + 2.
        #[arg(long)]
        precision: Option<i64>,
    },
}

#[derive(Subcommand)]
enum PaperCmd {
    /// Run all worked examples and print one pass/fail line each.
    Examples,
}

struct Report {
    human: String,
    json: serde_json::Value,
    /// Nonzero when the command ran but reported failures (paper examples).
    failures: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    match result {
        Ok(report) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, serde_json::to_string_pretty(&report.json).unwrap()) {
                    eprintln!("error: cannot write {}: {}", path.display(), e);
                    return ExitCode::from(1);
                }
            }
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).unwrap());
            } else {
                println!("{}", report.human.trim_end());
            }
            if report.failures > 0 {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Semigroup { cmd } => match cmd {
            SemigroupCmd::Jumps { gens, p } => semigroup_jumps(gens, *p),
        },
        Command::As { cmd } => match cmd {
            AsCmd::Adf(curve) => as_adf(curve),
            AsCmd::Group(curve) => as_group(curve),
            AsCmd::Rep { curve, element } => as_rep(curve, element),
            AsCmd::Local {
                curve,
                element,
                precision,
            } => as_local(curve, element, *precision),
        },
        Command::Tangent { cmd } => match cmd {
            TangentCmd::Pcyclic { p, s, oracle } => tangent_pcyclic(*p, *s, *oracle),
            TangentCmd::Rep { group, n } => repfile::tangent_rep(group, *n),
            TangentCmd::Ordinary { p, r, lambda } => tangent_ordinary(*p, *r, *lambda),
        },
        Command::Hensel { cmd } => match cmd {
            HenselCmd::Lift {
                p,
                s,
                direction,
                scale,
                precision,
            } => hensel_lift(*p, *s, *direction, *scale, *precision),
        },
        Command::Paper { cmd } => match cmd {
            PaperCmd::Examples => paper::examples(cli.seed),
        },
    }
}

fn semigroup_jumps(gens: &[u64], p: u64) -> Result<Report, Error> {
    let sem = NumericalSemigroup::new(gens)?;
    let report = jump_report(&sem, p)?;
    let human = format!(
        "semigroup <{}> at p = {}\n  m (first pole prime to p): {}\n  pole numbers <= m: {:?}\n  candidate jumps: {:?}",
        report
            .generators
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(", "),
        p,
        report.m,
        report.poles_below,
        report.candidate_jumps
    );
    Ok(Report {
        human,
        json: serde_json::to_value(&report).unwrap(),
        failures: 0,
    })
}

fn field_json(field: &defring::ffield::Field) -> serde_json::Value {
    serde_json::to_value(field.as_ref()).unwrap()
}

fn as_adf(curve_args: &CurveArgs) -> Result<Report, Error> {
    let curve = curve_args.build()?;
    let ad = curve.ad_f();
    let mut powers = Vec::new();
    let mut coeffs = Vec::new();
    let mut lines = vec![format!(
        "Ad_f over F_{{{}^{}}} for W^{}-W = f(X), s = {}",
        curve.p(),
        curve.ambient().degree(),
        curve.p(),
        curve.s()
    )];
    for (v, a) in ad.terms() {
        powers.push(*v);
        coeffs.push(serde_json::to_value(a).unwrap());
        lines.push(format!("  {} * Y^({}^{})", a, curve.p(), v));
    }
    Ok(Report {
        human: lines.join("\n"),
        json: json!({
            "field": field_json(curve.ambient()),
            "p_powers": powers,
            "coeffs": coeffs,
        }),
        failures: 0,
    })
}

fn as_group(curve_args: &CurveArgs) -> Result<Report, Error> {
    let curve = curve_args.build()?;
    let group = curve.automorphism_group()?;
    let center = group.table().center();
    let elements: Vec<serde_json::Value> = (0..group.order())
        .map(|e| {
            let aut = group.element(e);
            json!({"y": aut.y, "c": aut.central_part})
        })
        .collect();
    let human = format!(
        "automorphism group of the (p,s) = ({},{}) cover\n  order: {}\n  center order: {}\n  generators: translations by the {} root-basis elements",
        curve.p(),
        curve.s(),
        group.order(),
        center.len(),
        group.root_basis().dim()
    );
    Ok(Report {
        human,
        json: json!({
            "order": group.order(),
            "center_order": center.len(),
            "elements": elements,
        }),
        failures: 0,
    })
}

fn matrix_json(m: &Matrix<FieldElement>) -> serde_json::Value {
    let rows: Vec<Vec<&FieldElement>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.at(i, j)).collect())
        .collect();
    serde_json::to_value(rows).unwrap()
}

fn matrix_human(m: &Matrix<FieldElement>) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.at(i, j).to_string()).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(|s| s.len())
        .max()
        .unwrap_or(1);
    cells
        .iter()
        .map(|row| {
            let line: Vec<String> = row.iter().map(|c| format!("{:>width$}", c)).collect();
            format!("  [ {} ]", line.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn as_rep(curve_args: &CurveArgs, element: &ElementArgs) -> Result<Report, Error> {
    let curve = curve_args.build()?;
    let group = curve.automorphism_group()?;
    let e = element.resolve(&group)?;
    let aut = group.element(e);
    let m = group.representation(e);
    let human = format!(
        "representation of (y, c) = ({}, {}) on {{1, X, ..., X^({}^{}), W}}\n{}",
        aut.y,
        aut.central_part,
        curve.p(),
        curve.s() - 1,
        matrix_human(&m)
    );
    Ok(Report {
        human,
        json: json!({
            "element": {"y": aut.y, "c": aut.central_part},
            "matrix": matrix_json(&m),
        }),
        failures: 0,
    })
}

fn order_json(o: &OrderValue) -> serde_json::Value {
    match o {
        OrderValue::Finite(v) => json!(v),
        OrderValue::Infinite => json!("infinite"),
    }
}

fn as_local(
    curve_args: &CurveArgs,
    element: &ElementArgs,
    precision: Option<i64>,
) -> Result<Report, Error> {
    let curve = curve_args.build()?;
    let group = curve.automorphism_group()?;
    let e = element.resolve(&group)?;
    let prec = precision.unwrap_or(4 * curve.m() as i64 + 2);
    let sigma = group.local_action(e, prec)?;
    let order = order_function(&sigma);
    let aut = group.element(e);
    let human = format!(
        "local action of (y, c) = ({}, {})\n  order function v(sigma(t) - t): {}\n  sigma(t) = {:?}",
        aut.y,
        aut.central_part,
        match order {
            OrderValue::Finite(v) => v.to_string(),
            OrderValue::Infinite => "infinite (identity)".to_string(),
        },
        sigma.image()
    );
    Ok(Report {
        human,
        json: json!({
            "element": {"y": aut.y, "c": aut.central_part},
            "order": order_json(&order),
            "sigma": sigma.image(),
        }),
        failures: 0,
    })
}

fn tangent_pcyclic(p: u64, s: u32, oracle: bool) -> Result<Report, Error> {
    let mut cert = krull_dim_pcyclic(p, s)?;
    if oracle {
        cert.oracle_dim = Some(krull_dim_pcyclic_oracle(p, s)?);
    }
    let mut human = format!(
        "Krull dimension for (p, s) = ({}, {}): {}\n  constraint matrix: {} x {}",
        p,
        s,
        cert.dim,
        cert.constraint_matrix.len(),
        2 * s
    );
    if let Some(o) = cert.oracle_dim {
        human.push_str(&format!("\n  dual-number oracle: {}", o));
    }
    Ok(Report {
        human,
        json: serde_json::to_value(&cert).unwrap(),
        failures: 0,
    })
}

fn tangent_ordinary(p: u64, r: u32, lambda: u64) -> Result<Report, Error> {
    let field = make_field(p, r as usize)?;
    let lambda = FieldElement::from_int(&field, lambda);
    let report = ordinary_tangent_dim(p, r, &lambda)?;
    let human = format!(
        "ordinary tangent dimension for (p, r) = ({}, {}): {}\n  constrained space: {}\n  gauge directions: {}",
        p, r, report.dim_tangent, report.dim_constrained, report.dim_gauge
    );
    Ok(Report {
        human,
        json: serde_json::to_value(&report).unwrap(),
        failures: 0,
    })
}

fn hensel_lift(
    p: u64,
    s: u32,
    direction: usize,
    scale: u64,
    precision: Option<i64>,
) -> Result<Report, Error> {
    let curve = ASCurve::monomial(p, s)?;
    let group = curve.automorphism_group()?;
    let prec = precision.unwrap_or(4 * curve.m() as i64 + 2);
    let scale = FieldElement::from_index(curve.ambient(), scale);
    let tuple = group.tangent_tuple(direction, &scale, prec)?;
    let gens = group.table().generators().to_vec();
    let mut elements = Vec::new();
    let mut lines = vec![format!(
        "Hensel lifts along tangent direction {} at (p, s) = ({}, {}), precision {}",
        direction, p, s, prec
    )];
    for &g in &gens {
        let lift = lift_automorphism(&tuple, g)?;
        let residual = tuple.last_row_equation(g).eval(lift.image())?;
        let order = order_function(&lift);
        let aut = group.element(g);
        lines.push(format!(
            "  generator (y = {}): residual zero: {}, order {}",
            aut.y,
            residual.is_zero(),
            match order {
                OrderValue::Finite(v) => v.to_string(),
                OrderValue::Infinite => "infinite".into(),
            }
        ));
        elements.push(json!({
            "label": {"y": aut.y, "c": aut.central_part},
            "residual_zero": residual.is_zero(),
            "order": order_json(&order),
            "lift": lift.image(),
        }));
    }
    // Group law over all generator pairs.
    let mut group_law_ok = true;
    for &g in &gens {
        for &h in &gens {
            let lg = lift_automorphism(&tuple, g)?;
            let lh = lift_automorphism(&tuple, h)?;
            let composed = lg.compose(&lh)?;
            let product = lift_automorphism(&tuple, group.table().mul(g, h))?;
            group_law_ok &= composed.image().agrees_with(product.image());
        }
    }
    // Compatibility of the tuple on the generators.
    let mut compatible = true;
    for &g in &gens {
        compatible &= is_compatible(&tuple, g)?;
    }
    lines.push(format!("  group law on generator pairs: {}", group_law_ok));
    lines.push(format!("  tuple compatible on generators: {}", compatible));
    Ok(Report {
        human: lines.join("\n"),
        json: json!({
            "p": p,
            "s": s,
            "direction": direction,
            "precision": prec,
            "elements": elements,
            "group_law_ok": group_law_ok,
            "compatible": compatible,
        }),
        failures: usize::from(!(group_law_ok && compatible)),
    })
}
