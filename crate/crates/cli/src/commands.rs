//! One function per subcommand, each producing a [`Report`].

use lndkit_core::catalog::{self, CATALOG_NAMES};
use lndkit_core::flexgeo::{
    divisor_tangency, flexibility_check, jacobian_rank, plane_transitivity, tangent_space, transversality_locus,
    PointSampler, Tangency,
};
use lndkit_core::invariants::{
    appendix_span, derksen_truncated, determinant_by_factorization, flow_column_scalings, kernel_basis,
    ml_truncated, separates_points,
};
use lndkit_core::lnd::{exp_flow, flow_automorphism, weight_check, Equivariance, Nilpotency};
use lndkit_core::{rat, Algebra, Automorphism, Derivation, Point, Rational, SubspaceBasis, Verdict};
use serde_json::Value;

use crate::expr::parse_rational;
use crate::input::Workspace;
use crate::report::{Check, Report, Status};
use crate::{CatalogAction, Cli, CliError, Command, ExpectVerdict, PointArgs, Source};

pub fn execute(cli: &Cli, command: String) -> Result<Report, CliError> {
    let mut report = Report::new(command, cli.seed);
    let cap = cli.cap;
    let seed = cli.seed;
    match &cli.command {
        Command::CheckLnd { source, derivations } => {
            let ws = load(source, cap, &mut report)?;
            check_lnd(&ws, &ws.select(derivations)?, &mut report)?;
        }
        Command::Flow {
            source,
            derivation,
            f,
            t,
        } => {
            let ws = load(source, cap, &mut report)?;
            flow(&ws, derivation, f, t.as_deref(), &mut report)?;
        }
        Command::Kernel {
            source,
            derivation,
            degree,
        } => {
            let ws = load(source, cap, &mut report)?;
            let delta = ws.derivation(derivation)?;
            let basis = kernel_basis(delta, *degree)?;
            report.push(basis_check(&format!("kernel of {derivation}"), &basis));
        }
        Command::Ml {
            source,
            derivations,
            degree,
        } => {
            let ws = load(source, cap, &mut report)?;
            let ds = ws.select(derivations)?;
            let basis = ml_truncated(&ds, *degree)?;
            report.push(basis_check("ml_truncated", &basis).with_list("derivations", ds.iter().map(|d| d.name())));
        }
        Command::Derksen {
            source,
            derivations,
            degree,
        } => {
            let ws = load(source, cap, &mut report)?;
            let ds = ws.select(derivations)?;
            let basis = derksen_truncated(&ds, *degree)?;
            report.push(
                basis_check("derksen_truncated", &basis)
                    .with_list("derivations", ds.iter().map(|d| d.name()))
                    .with("full_slice", basis.is_full()),
            );
        }
        Command::Flex {
            source,
            derivations,
            enrich,
            points,
            expect,
        } => {
            let ws = load(source, cap, &mut report)?;
            let ds = ws.select(derivations)?;
            let autos = enrich
                .iter()
                .map(|spec| enrichment(&ws, spec))
                .collect::<Result<Vec<_>, _>>()?;
            for p in points_for(&ws, points, seed)? {
                let r = flexibility_check(&ds, &p, &autos)?;
                let status = match (expect, r.verdict) {
                    (None, _) => Status::Info,
                    (Some(ExpectVerdict::Flexible), v) => Status::from_bool(v == Verdict::Flexible),
                    (Some(ExpectVerdict::NotDetermined), v) => Status::from_bool(v == Verdict::NotDeterminedFlexible),
                };
                let vectors: serde_json::Map<String, Value> = r
                    .orbit_vectors
                    .iter()
                    .map(|(name, v)| (name.clone(), rationals(v)))
                    .collect();
                report.push(
                    Check::new(format!("flexibility at {p}"), status)
                        .with("tangent_dim", r.tangent_dim)
                        .with("orbit_span_dim", r.orbit_span_dim)
                        .with("orbit_vectors", vectors)
                        .with("verdict", r.verdict.to_string()),
                );
            }
        }
        Command::Tangency { source, derivation, g } => {
            let ws = load(source, cap, &mut report)?;
            let delta = ws.derivation(derivation)?;
            let g_el = ws.element("--g", g)?;
            let check = Check::new(format!("{derivation} tangent to {{{g_el} = 0}}"), Status::Pass);
            report.push(match divisor_tangency(delta, &g_el)? {
                Tangency::TangentAndInvariant => check.with("result", "tangent, g is invariant").with("delta(g)", "0"),
                Tangency::TangentOnly(dg) => check
                    .with("result", "tangent, delta(g) vanishes on the divisor")
                    .with("delta(g)", dg.to_string()),
                Tangency::NotTangent(dg) => Check {
                    status: Status::Fail,
                    ..check.with("result", "not tangent").with("delta(g)", dg.to_string())
                },
            });
        }
        Command::Transversality {
            source,
            derivations,
            claims,
        } => {
            let ws = load(source, cap, &mut report)?;
            let ds = match derivations.len() {
                0 if ws.derivations.len() >= 2 => ws.derivations[..2].to_vec(),
                2 => ws.select(derivations)?,
                _ => return Err(CliError::Usage("transversality needs exactly two derivations".into())),
            };
            transversality(&ws, (&ds[0], &ds[1]), claims, &mut report)?;
        }
        Command::Separate { source, pairs } => {
            let ws = load(source, cap, &mut report)?;
            let family = family(&ws)?;
            let pts: Vec<Point> = if ws.points.is_empty() {
                sample(&ws.algebra, 2 * pairs, None, seed)?
            } else {
                if ws.points.len() % 2 != 0 {
                    return Err(CliError::Input("separate needs an even number of points".into()));
                }
                ws.points.clone()
            };
            let pairs: Vec<(Point, Point)> = pts.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
            for ((p, q), s) in pairs.iter().zip(separates_points(family, &pairs)?) {
                let check = Check::new(format!("separate {p} and {q}"), Status::from_bool(s.separated_by.is_some()));
                report.push(match s.separated_by {
                    Some(name) => check.with("separated_by", name),
                    None => check.with("separated_by", Value::Null),
                });
            }
        }
        Command::Jacobian { source, points } => {
            let ws = load(source, cap, &mut report)?;
            let family = family(&ws)?;
            for p in points_for(&ws, points, seed)? {
                let tangent_dim = tangent_space(&ws.algebra, &p)?.len();
                let rank = jacobian_rank(family, &p)?;
                report.push(
                    Check::new(format!("jacobian rank at {p}"), Status::from_bool(rank == tangent_dim))
                        .with("rank", rank)
                        .with("tangent_dim", tangent_dim),
                );
            }
        }
        Command::MovePlane { src, dst } => move_plane(src, dst, seed, &mut report)?,
        Command::VerifyAppendix { n, ts } => verify_appendix(*n, ts.as_deref(), cap, &mut report)?,
        Command::VerifyQhp { m, j } => verify_qhp(*m, *j, cap, &mut report)?,
        Command::Catalog {
            action: CatalogAction::List,
        } => {
            report.push(Check::new("catalog", Status::Info).with_list("entries", CATALOG_NAMES));
        }
    }
    Ok(report.finish())
}

fn load(source: &Source, cap: u32, report: &mut Report) -> Result<Workspace, CliError> {
    let ws = match (&source.path, &source.entry) {
        (Some(path), None) => Workspace::from_file(path, cap)?,
        (None, Some(name)) => Workspace::from_entry(name, cap)?,
        _ => return Err(CliError::Usage("give an input file or --entry <name>".into())),
    };
    report.source = Some(ws.source.clone());
    report.warnings.extend(ws.warnings.iter().cloned());
    Ok(ws)
}

fn rationals(v: &[Rational]) -> Value {
    v.iter().map(|c| Value::String(c.to_string())).collect()
}

fn matrix(m: &[Vec<Rational>]) -> Value {
    m.iter().map(|row| rationals(row)).collect()
}

/// Basis elements ordered by degree, then by their printed form.
fn sorted_elements(basis: &SubspaceBasis) -> Vec<String> {
    let mut els: Vec<(u32, String)> = basis
        .elements()
        .iter()
        .map(|e| (e.degree().unwrap_or(0), e.to_string()))
        .collect();
    els.sort();
    els.into_iter().map(|(_, s)| s).collect()
}

fn basis_check(name: &str, basis: &SubspaceBasis) -> Check {
    Check::new(name, Status::Info)
        .with("degree", basis.degree())
        .with("dim", basis.dim())
        .with("ambient_dim", basis.ambient_dim())
        .with_list("basis", sorted_elements(basis))
}

fn family(ws: &Workspace) -> Result<&lndkit_core::GeneratorFamily, CliError> {
    ws.generators
        .as_ref()
        .ok_or_else(|| CliError::Usage("this command needs a generator family".into()))
}

fn sample(algebra: &Algebra, count: usize, nonzero: Option<&lndkit_core::AlgebraElement>, seed: u64) -> Result<Vec<Point>, CliError> {
    let mut s = PointSampler::new(algebra, seed);
    (0..count)
        .map(|_| {
            let p = match nonzero {
                None => s.next_point()?,
                Some(f) => s.next_point_where(|c| f.eval(c).map(|v| v != rat(0)).unwrap_or(false))?,
            };
            Ok(p)
        })
        .collect()
}

fn points_for(ws: &Workspace, args: &PointArgs, seed: u64) -> Result<Vec<Point>, CliError> {
    if !ws.points.is_empty() {
        return Ok(ws.points.clone());
    }
    let filter = args
        .nonzero
        .as_deref()
        .map(|text| ws.element("--nonzero", text))
        .transpose()?;
    sample(&ws.algebra, args.points, filter.as_ref(), seed)
}

fn enrichment(ws: &Workspace, spec: &str) -> Result<Automorphism, CliError> {
    let (name, t) = spec
        .rsplit_once(':')
        .ok_or_else(|| CliError::Usage(format!("--enrich expects name:t, got {spec:?}")))?;
    let t = parse_rational(t).ok_or_else(|| CliError::Usage(format!("bad flow time in --enrich {spec:?}")))?;
    Ok(flow_automorphism(ws.derivation(name)?, &t)?)
}

fn nilpotency_value(n: &Nilpotency) -> (Status, String) {
    let status = Status::from_bool(n.bound().is_some());
    (status, n.to_string())
}

fn lnd_checks(delta: &Derivation, report: &mut Report) {
    let certs = delta.certificates();
    let wd = certs.well_defined == Some(true);
    report.push(
        Check::new(format!("{} well defined", delta.name()), Status::from_bool(wd))
            .with("derivation", delta.to_string()),
    );
    let (status, text) = match &certs.nilpotency {
        Some(n) => nilpotency_value(n),
        None => (Status::Fail, "not certified".into()),
    };
    report.push(Check::new(format!("{} locally nilpotent", delta.name()), status).with("certificate", text));
}

fn equivariance_check(delta: &Derivation, grading: &lndkit_core::WeightGrading, report: &mut Report) -> Result<(), CliError> {
    let weights: Vec<String> = grading.weights().iter().map(|w| w.to_string()).collect();
    let name = format!(
        "{} equivariant for weights ({}) mod {}",
        delta.name(),
        weights.join(", "),
        grading.modulus()
    );
    report.push(match weight_check(delta, grading)? {
        Equivariance::Equivariant => Check::new(name, Status::Pass),
        Equivariance::NotEquivariant {
            variable,
            term,
            term_weight,
            expected,
        } => Check::new(name, Status::Fail)
            .with("variable", variable)
            .with("term", term)
            .with("term_weight", term_weight)
            .with("expected_weight", expected),
    });
    Ok(())
}

fn check_lnd(ws: &Workspace, ds: &[Derivation], report: &mut Report) -> Result<(), CliError> {
    for delta in ds {
        lnd_checks(delta, report);
        if let Some(g) = &ws.grading {
            equivariance_check(delta, g, report)?;
        }
    }
    if let Some(entry) = &ws.entry {
        for id in &entry.expected {
            if !ds.iter().any(|d| d.name() == id.derivation) {
                continue;
            }
            let got = entry
                .derivation(&id.derivation)
                .expect("identity names a catalog derivation")
                .apply(&id.element)?;
            report.push(
                Check::new(id.label.clone(), Status::from_bool(got == id.expected))
                    .with("computed", got.to_string())
                    .with("expected", id.expected.to_string()),
            );
        }
    }
    Ok(())
}

fn flow(ws: &Workspace, derivation: &str, f: &str, t: Option<&str>, report: &mut Report) -> Result<(), CliError> {
    let delta = ws.derivation(derivation)?;
    let f_el = ws.element("--f", f)?;
    let fl = exp_flow(delta, &f_el)?;
    let coeffs: serde_json::Map<String, Value> = fl
        .coefficients()
        .iter()
        .enumerate()
        .map(|(k, c)| (format!("t^{k}"), Value::String(c.to_string())))
        .collect();
    let mut check = Check::new(format!("exp(t*{derivation})({f_el})"), Status::Info)
        .with("flow", fl.to_string())
        .with("degree_in_t", fl.degree().map_or(Value::Null, Value::from))
        .with("coefficients", coeffs);
    if let Some(t) = t {
        let t = parse_rational(t).ok_or_else(|| CliError::Usage(format!("--t expects a rational, got {t:?}")))?;
        check = check.with("t", t.to_string()).with("value", fl.at(&t).to_string());
    }
    report.push(check);
    Ok(())
}

fn transversality(
    ws: &Workspace,
    ds: (&Derivation, &Derivation),
    claims: &[String],
    report: &mut Report,
) -> Result<(), CliError> {
    let claims = claims
        .iter()
        .map(|c| Ok((c.trim().to_string(), ws.element("--claims", c)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let r = transversality_locus(ds, &claims)?;
    report.push(
        Check::new(format!("degeneracy locus of {}, {}", ds.0.name(), ds.1.name()), Status::Info)
            .with_list("minors", &r.minors)
            .with("locus_empty", r.locus_empty),
    );
    for (name, ok) in &r.claims {
        report.push(Check::new(
            format!("{name} vanishes on the degeneracy locus"),
            Status::from_bool(*ok),
        ));
    }
    Ok(())
}

fn parse_points(algebra: &Algebra, text: &str, flag: &str) -> Result<Vec<Point>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(';')
        .map(|p| {
            let coords = p
                .split(',')
                .map(|c| parse_rational(c).ok_or_else(|| CliError::Usage(format!("{flag}: bad coordinate {c:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Point::new(algebra, coords)?)
        })
        .collect()
}

fn move_plane(src: &str, dst: &str, seed: u64, report: &mut Report) -> Result<(), CliError> {
    let plane = catalog::make_affine_space(2)?;
    report.source = Some(format!("entry:{}", plane.name));
    let src = parse_points(&plane.algebra, src, "--src")?;
    let dst = parse_points(&plane.algebra, dst, "--dst")?;
    let program = plane_transitivity(&src, &dst, seed)?;
    let steps: Vec<String> = program.steps.iter().map(|s| s.to_string()).collect();
    report.push(Check::new("flow program", Status::Info).with("steps", steps));
    let landed = program.replay(&src)?;
    let ok = landed.iter().zip(&dst).all(|(a, b)| a.coords() == b.coords());
    report.push(
        Check::new("replay reaches the targets", Status::from_bool(ok))
            .with_list("images", &landed)
            .with_list("targets", &dst),
    );
    Ok(())
}

fn factorial(k: u32) -> Rational {
    (1..=k).map(|i| rat(i as i64)).product()
}

fn verify_appendix(n: u32, ts: Option<&str>, cap: u32, report: &mut Report) -> Result<(), CliError> {
    let ws = Workspace::from_entry(&format!("dg:{n}"), cap)?;
    report.source = Some(ws.source.clone());
    report.warnings.extend(ws.warnings.iter().cloned());
    let b = n - 1;
    let ts: Vec<Rational> = match ts {
        None => (1..=n as i64).map(rat).collect(),
        Some(text) => text
            .split(',')
            .map(|t| parse_rational(t).ok_or_else(|| CliError::Usage(format!("--ts: bad value {t:?}"))))
            .collect::<Result<_, _>>()?,
    };

    check_lnd(&ws, &ws.derivations, report)?;

    let y = family(&ws)?.get("y").cloned().expect("dg family has y");
    let fl = exp_flow(ws.derivation("delta")?, &y)?;
    let coeffs: Vec<String> = fl.coefficients().iter().map(|c| c.to_string()).collect();
    report.push(
        Check::new("exp(t*delta)(y) has degree b+1 in t", Status::from_bool(fl.degree() == Some(b as usize + 1)))
            .with("flow", fl.to_string())
            .with("coefficients", coeffs)
            .with("degree_in_t", fl.degree().map_or(Value::Null, Value::from)),
    );

    let got = flow_column_scalings(n)?;
    let formula: Vec<Rational> = (1..=b + 1)
        .map(|k| rat(n as i64) * factorial(b) / (factorial(b + 1 - k) * factorial(k)))
        .collect();
    report.push(
        Check::new("t^k coefficient is c_k*x_(k-1), c_k = n*b!/((b+1-k)!*k!)", Status::from_bool(got == formula))
            .with("computed", rationals(&got))
            .with("formula", rationals(&formula)),
    );
    let nb = rat((n * b) as i64);
    let last = &got[b as usize];
    report.push(
        Check::new("printed coefficient variants", Status::Info)
            .with("c_2", got[1].to_string())
            .with("c_2 = n*b/2", got[1] == &nb / rat(2))
            .with("c_2 = b/2", got[1] == rat(b as i64) / rat(2))
            .with("c_(b+1)", last.to_string())
            .with("c_(b+1) = n*b!/(b+1)!", *last == rat(n as i64) * factorial(b) / factorial(b + 1))
            .with("c_(b+1) = n*b/(b+1)!", *last == nb / factorial(b + 1)),
    );

    let span = appendix_span(n, &ts)?;
    let factored = determinant_by_factorization(n, &ts)?;
    let p: Vec<String> = span.p.iter().map(|e| e.to_string()).collect();
    report.push(
        Check::new("p_t span x_0..x_b", Status::from_bool(span.spans()))
            .with("ts", rationals(&ts))
            .with("p_t", p)
            .with("matrix", matrix(&span.matrix))
            .with("determinant", span.determinant.to_string()),
    );
    report.push(
        Check::new("determinant matches the factored form", Status::from_bool(factored == span.determinant))
            .with("factored", factored.to_string()),
    );
    Ok(())
}

fn verify_qhp(m: u32, j: u32, cap: u32, report: &mut Report) -> Result<(), CliError> {
    let ws = Workspace::from_entry(&format!("ym:{m}:{j}"), cap)?;
    report.source = Some(ws.source.clone());
    check_lnd(&ws, &ws.derivations, report)?;
    let ds = &ws.derivations;
    transversality(&ws, (&ds[0], &ds[1]), &["x".into(), "y".into()], report)
}
