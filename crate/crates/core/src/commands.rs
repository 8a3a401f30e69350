//! The operations behind each CLI subcommand.
//!
//! Every command takes already-read text (plus paths named inside a `K`
//! spec) and returns a [`Report`] with the exit [`Status`]. Input problems
//! come back as `Err`; a well-formed input the command cannot handle gives
//! `Ok` with status [`Status::NotApplicable`] and a `reason` line.

use std::path::Path;

use num_bigint::BigUint;

use crate::alt_centro::{det_via_complementary, AlternatingExchange};
use crate::error::{Error, Result};
use crate::field::{Field, Fp, PrimeModulus, Rational};
use crate::format::{parse_graph, parse_matrix, AnyMatrix, KSpec};
use crate::lattice::{
    check_two_even_symmetric, count_matchings, matching_certificate_with, LatticeGraph, ScanOrder, SignConvention,
};
use crate::matrix::Matrix;
use crate::oracle::{det_cofactor, enumerate_matchings};
use crate::regions::{
    aztec_diamond, aztec_pillow, dual_graph, generalized_pillow, is_rotationally_symmetric, Band, Region, StepSequence,
};
use crate::report::{Report, Status};
use crate::structure::{
    classify_commutation, det_via_half, extract_bc, integral_certificate, sos_certificate, AntiInvolution,
    CommutationKind, SimpleFormK,
};
use crate::two_squares::{all_two_squares, decompose_two_squares, obstruction};

/// Exit status for an error: malformed input is 1, an input outside a
/// command's contract is 2.
pub fn status_for(e: &Error) -> Status {
    match e {
        Error::MinusOneIsSquare { .. }
        | Error::BlockRelation { .. }
        | Error::NeitherKind
        | Error::NotAlternating(_)
        | Error::GuardExceeded { .. }
        | Error::NotSumOfTwoSquares { .. }
        | Error::NotIntegral
        | Error::Disconnected
        | Error::NotSymmetric
        | Error::NoPerfectMatching { .. }
        | Error::OddFace(..) => Status::NotApplicable,
        _ => Status::InputError,
    }
}

/// Folds a not-applicable error into the report.
fn applicable<T>(r: Result<T>, report: &mut Report, status: &mut Status) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if status_for(&e) == Status::NotApplicable => {
            report.push("reason", e.to_string());
            *status = status.max(Status::NotApplicable);
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn coerce<F: Field>(m: &Matrix<Rational>, ctx: &F::Ctx) -> Result<Matrix<F>> {
    let data = m
        .entries()
        .iter()
        .map(|q| F::from_integer(q.numer(), ctx).try_div(&F::from_integer(q.denom(), ctx)))
        .collect::<Result<Vec<_>>>()?;
    Matrix::new(m.rows(), m.cols(), data, ctx.clone())
}

fn load_k<F: Field>(
    spec: &KSpec,
    ctx: &F::Ctx,
    field: &str,
    convert: impl Fn(AnyMatrix) -> Result<Matrix<F>>,
) -> Result<AntiInvolution<F>> {
    let load = |path: &Path| -> Result<Matrix<F>> {
        let m = parse_matrix(&read_file(path)?)?;
        let label = m.field_label();
        convert(m).map_err(|e| match e {
            Error::FieldMismatch { .. } => Error::FieldMismatch {
                matrix: field.to_string(),
                k: label,
            },
            e => e,
        })
    };
    match spec {
        KSpec::Alt(n) => Ok(AlternatingExchange::new(*n)?.anti_involution(ctx)),
        KSpec::Simple(path) => Ok(SimpleFormK::new(load(path)?)?.assemble()),
        KSpec::Full(path) => AntiInvolution::new(load(path)?),
    }
}

fn mismatch<T>() -> Result<T> {
    Err(Error::FieldMismatch {
        matrix: String::new(),
        k: String::new(),
    })
}

fn load_k_rational(spec: &KSpec) -> Result<AntiInvolution<Rational>> {
    load_k(spec, &(), "Q", |m| match m {
        AnyMatrix::Rational(m) => Ok(m),
        _ => mismatch(),
    })
}

fn load_k_prime(spec: &KSpec, p: PrimeModulus) -> Result<AntiInvolution<Fp>> {
    load_k(spec, &p, &format!("Fp:{p}"), |m| match m {
        AnyMatrix::Rational(m) => coerce(&m, &p),
        AnyMatrix::Prime(m) if *m.ctx() == p => Ok(m),
        _ => mismatch(),
    })
}

/// Wraps negative and fractional values in parentheses before squaring.
fn squared<F: Field>(v: &F) -> String {
    let s = v.to_string();
    if s.starts_with('-') || s.contains('/') {
        format!("({s})^2")
    } else {
        format!("{s}^2")
    }
}

fn field_certificate<F: Field>(det: &F, x: &F, y: &F, sign: i8) -> String {
    let sum = format!("{} + {}", squared(x), squared(y));
    if sign < 0 {
        format!("{det} = -({sum})")
    } else {
        format!("{det} = {sum}")
    }
}

/// `analyze <matrix> <K>`: classification, determinant and certificate.
pub fn analyze(matrix_text: &str, k: &KSpec, verify_oracle: bool) -> Result<(Report, Status)> {
    match parse_matrix(matrix_text)? {
        AnyMatrix::Rational(a) => {
            let kk = load_k_rational(k)?;
            analyze_in(&a, &kk, "Q", verify_oracle, |a, kk, kind| {
                if a.integer_entries().is_some() {
                    integral_certificate(a, kk, kind).map(|c| Some(c.to_string()))
                } else {
                    Ok(None)
                }
            })
        }
        AnyMatrix::Prime(a) => {
            let p = *a.ctx();
            let kk = load_k_prime(k, p)?;
            analyze_in(&a, &kk, &format!("Fp:{p}"), verify_oracle, |_, _, _| Ok(None))
        }
        other => Err(Error::parse(
            1,
            1,
            format!("analyze needs a matrix over Q or Fp:<p>, not {}", other.field_label()),
        )),
    }
}

type IntegralHook<F> = fn(&Matrix<F>, &AntiInvolution<F>, CommutationKind) -> Result<Option<String>>;

fn analyze_in<F: Field>(
    a: &Matrix<F>,
    k: &AntiInvolution<F>,
    field: &str,
    verify_oracle: bool,
    integral: IntegralHook<F>,
) -> Result<(Report, Status)> {
    let mut report = Report::new();
    let mut status = Status::Success;
    let n = a.order()?;
    report.push("field", field).push("order", n).push("k", k.half());
    let kind = classify_commutation(a, k)?;
    report.push("kind", kind.to_string());
    let det = a.det()?;
    report.push("det", det.to_string());
    if kind == CommutationKind::Neither {
        report.push("reason", Error::NeitherKind.to_string());
        status = Status::NotApplicable;
    } else if let Some(cert) = applicable(sos_certificate(a, k, kind), &mut report, &mut status)? {
        if cert.det != det {
            return Err(Error::Internal("certificate disagrees with elimination".into()));
        }
        report
            .push("x", cert.x.to_string())
            .push("y", cert.y.to_string())
            .push("sign", cert.sign as i64);
        let shown = match integral(a, k, kind)? {
            Some(s) => s,
            None => field_certificate(&cert.det, &cert.x, &cert.y, cert.sign),
        };
        report.push("certificate", shown);
    }
    if verify_oracle {
        if let Some(d) = applicable(det_cofactor(a), &mut report, &mut status)? {
            report.push("oracle_det", d.to_string());
            if d == det {
                report.push("oracle", "AGREE");
            } else {
                report.push("oracle", "DISAGREE");
                status = status.max(Status::Mismatch);
            }
        }
    }
    Ok((report, status))
}

/// `certify <matrix> <K>`: integral certificate for an integer matrix over
/// `Q`. With an alternating exchange `K` the complementary-subset formula
/// is evaluated as an independent cross-check.
pub fn certify(matrix_text: &str, k: &KSpec) -> Result<(Report, Status)> {
    let a = match parse_matrix(matrix_text)? {
        AnyMatrix::Rational(a) => a,
        other => {
            return Err(Error::parse(
                1,
                1,
                format!("certify needs an integer matrix over Q, not {}", other.field_label()),
            ))
        }
    };
    let kk = load_k_rational(k)?;
    let mut report = Report::new();
    let mut status = Status::Success;
    let kind = classify_commutation(&a, &kk)?;
    report.push("order", a.order()?).push("kind", kind.to_string());
    let Some(cert) = applicable(integral_certificate(&a, &kk, kind), &mut report, &mut status)? else {
        return Ok((report, status));
    };
    let det = a.det()?;
    report
        .push("det", det.to_string())
        .push("x", cert.x().to_string())
        .push("y", cert.y().to_string())
        .push("certificate", cert.to_string());
    if let KSpec::Alt(_) = k {
        let skew = matches!(kind, CommutationKind::PseudoSkewCentrosymmetric);
        if let Some(comp) = applicable(det_via_complementary(&a, skew), &mut report, &mut status)? {
            let form = SimpleFormK::from_anti_involution(&kk)?;
            let (b, c) = extract_bc(&a, &form, kind)?;
            let half = det_via_half(&b, &c, kind)?;
            report
                .push("complementary_x", comp.x.to_string())
                .push("complementary_y", comp.y.to_string());
            if comp.det == det && comp.z() == half.z() {
                report.push("complementary", "AGREE");
            } else {
                report.push("complementary", "DISAGREE");
                status = status.max(Status::Mismatch);
            }
        }
    }
    Ok((report, status))
}

/// Which region `region gen` builds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegionSpec {
    AztecDiamond(u32),
    AztecPillow(u32),
    Pillow {
        steps: StepSequence,
        band: Band,
        lower: Option<StepSequence>,
    },
}

pub fn region_gen(spec: &RegionSpec) -> Result<Region> {
    match spec {
        RegionSpec::AztecDiamond(n) => aztec_diamond(*n),
        RegionSpec::AztecPillow(n) => aztec_pillow(*n),
        RegionSpec::Pillow { steps, band, lower } => generalized_pillow(steps, *band, lower.as_ref()),
    }
}

/// The region as a report: a cell count and one `row` entry per line of the
/// region format.
pub fn region_report(r: &Region) -> Report {
    let rows: Vec<String> = r
        .to_string()
        .lines()
        .map(|l| l.trim_start_matches("row ").to_string())
        .collect();
    let mut report = Report::new();
    report.push("cells", r.len()).push("row", rows);
    report
}

/// `region check-sym <region>`.
pub fn region_check_sym(text: &str) -> Result<(Report, Status)> {
    let r: Region = text.parse()?;
    let g = dual_graph(&r);
    let (white, black) = g.color_counts();
    let mut report = Report::new();
    report
        .push("cells", r.len())
        .push("symmetric", is_rotationally_symmetric(&r))
        .push("white", white)
        .push("black", black);
    Ok((report, Status::Success))
}

fn count_with_oracle(g: &LatticeGraph, certificate: bool, verify_oracle: bool, report: &mut Report) -> Result<Status> {
    let mut status = Status::Success;
    let Some(count) = applicable(count_matchings(g), report, &mut status)? else {
        return Ok(status);
    };
    report.push("count", count.to_string());
    if certificate {
        let cert = matching_certificate_with(g, SignConvention::default(), ScanOrder::default());
        if let Some(cert) = applicable(cert, report, &mut status)? {
            if cert.count != count {
                return Err(Error::Internal(
                    "certificate count disagrees with the determinant".into(),
                ));
            }
            report
                .push("x", cert.certificate.x().to_string())
                .push("y", cert.certificate.y().to_string())
                .push("certificate", cert.certificate.to_string());
        } else {
            report.push(
                "requirement",
                "certificates need a region mapped to itself by 180-degree rotation about the origin",
            );
        }
    }
    if verify_oracle {
        if let Some(brute) = applicable(enumerate_matchings(g), report, &mut status)? {
            report.push("oracle_count", brute.to_string());
            if brute == count {
                report.push("oracle", "AGREE");
            } else {
                report.push("oracle", "DISAGREE");
                status = status.max(Status::Mismatch);
            }
        }
    }
    Ok(status)
}

/// `tile count <region> [--certificate] [--verify-oracle]`.
pub fn tile_count(text: &str, certificate: bool, verify_oracle: bool) -> Result<(Report, Status)> {
    let r: Region = text.parse()?;
    let mut report = Report::new();
    report.push("cells", r.len());
    let status = count_with_oracle(&dual_graph(&r), certificate, verify_oracle, &mut report)?;
    Ok((report, status))
}

/// `match count <graph> [--verify-oracle]`.
pub fn match_count(text: &str, verify_oracle: bool) -> Result<(Report, Status)> {
    let g = parse_graph(text)?;
    let mut report = Report::new();
    report
        .push("vertices", g.vertices().len())
        .push("edges", g.edges().len());
    let status = count_with_oracle(&g, false, verify_oracle, &mut report)?;
    Ok((report, status))
}

/// `match certify <graph>`: count, `det(B + iC) = x + iy` and the labeling.
pub fn match_certify(text: &str, convention: SignConvention, order: ScanOrder) -> Result<(Report, Status)> {
    let g = parse_graph(text)?;
    let mut report = Report::new();
    let mut status = Status::Success;
    report
        .push("vertices", g.vertices().len())
        .push("convention", convention.to_string());
    let Some(cert) = applicable(
        matching_certificate_with(&g, convention, order),
        &mut report,
        &mut status,
    )?
    else {
        return Ok((report, status));
    };
    let listing = |vs: &[_]| -> Vec<String> {
        vs.iter()
            .enumerate()
            .map(|(i, v): (usize, &crate::lattice::LatticeVertex)| format!("{} {v}", i + 1))
            .collect()
    };
    report
        .push("count", cert.count.to_string())
        .push("x", cert.x.to_string())
        .push("y", cert.y.to_string())
        .push("certificate", cert.certificate.to_string())
        .push("white", listing(cert.labeling.whites()))
        .push("black", listing(cert.labeling.blacks()));
    Ok((report, status))
}

/// `match check-sym <graph>`.
pub fn match_check_sym(text: &str) -> Result<(Report, Status)> {
    let g = parse_graph(text)?;
    let (white, black) = g.color_counts();
    let mut report = Report::new();
    let connected = g.is_connected();
    let symmetric = connected && check_two_even_symmetric(&g)?;
    report
        .push("vertices", g.vertices().len())
        .push("edges", g.edges().len())
        .push("connected", connected)
        .push("symmetric", symmetric)
        .push("white", white)
        .push("black", black);
    Ok((report, Status::Success))
}

/// `sos <n> [--all]`.
pub fn sos(n_text: &str, all: bool) -> Result<(Report, Status)> {
    let n: BigUint = n_text
        .trim()
        .parse()
        .map_err(|_| Error::parse(1, 1, format!("expected a nonnegative integer, found `{n_text}`")))?;
    let mut report = Report::new();
    report.push("n", n.to_string());
    if let Some((p, e)) = obstruction(&n) {
        report.push("feasible", false).push(
            "reason",
            format!("prime {p} = 3 (mod 4) divides {n} to the odd power {e}"),
        );
        return Ok((report, Status::NotApplicable));
    }
    let cert = decompose_two_squares(&n)?;
    report
        .push("feasible", true)
        .push("x", cert.x().to_string())
        .push("y", cert.y().to_string())
        .push("certificate", cert.to_string());
    if all {
        let reps: Vec<String> = all_two_squares(&n)?.iter().map(|r| r.to_string()).collect();
        report.push("representation", reps);
    }
    Ok((report, Status::Success))
}
