//! Command dispatch behind the `normform` binary.
//!
//! [`run`] maps an [`Invocation`] to an exit code and a [`Report`]: 0 for
//! `ok`, 1 for `mismatch` (an exact identity check failed), 2 for errors. The
//! JSON form of a report has sorted keys and carries every scalar as an exact
//! string, so identical invocations print identical bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::affine::{self, generalized_companion, jump_data, AffineRepresentative};
use crate::brute;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::format::{matrix_json, parse_matrix, parse_pair, poly_json, poly_list, scalar_json};
use crate::matrix::Matrix;
use crate::pairs::{self, InvariantTriple, PairPoint, QForm, Sl2Pair};
use crate::poly::Polynomial;
use crate::rnf::{self, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Family {
    #[default]
    Rational,
    Affine,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairsCommand {
    Invariants { path: PathBuf },
    Fiber { x: [String; 3] },
    Reduce { path: PathBuf },
    Hom { left: PathBuf, right: PathBuf },
    Split { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Rnf { path: PathBuf, verify: bool },
    Affine { path: PathBuf },
    NormalForm { path: PathBuf, family: Family },
    Verify { matrix: PathBuf, transform: PathBuf },
    Pairs(PairsCommand),
    Selftest,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Rnf { .. } => "rnf",
            Command::Affine { .. } => "affine",
            Command::NormalForm { .. } => "normal-form",
            Command::Verify { .. } => "verify",
            Command::Pairs(PairsCommand::Invariants { .. }) => "pairs invariants",
            Command::Pairs(PairsCommand::Fiber { .. }) => "pairs fiber",
            Command::Pairs(PairsCommand::Reduce { .. }) => "pairs reduce",
            Command::Pairs(PairsCommand::Hom { .. }) => "pairs hom",
            Command::Pairs(PairsCommand::Split { .. }) => "pairs split",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub command: Command,
    /// Must agree with the header of every input file when given.
    pub field: Option<Field>,
    pub format: OutputFormat,
}

impl Invocation {
    pub fn new(command: Command) -> Self {
        Invocation { command, field: None, format: OutputFormat::Text }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Mismatch,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Mismatch => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub payload: Value,
    /// Human-readable rendering; not part of the JSON form.
    #[serde(skip)]
    pub text: String,
}

impl Report {
    fn new(command: &str, status: Status, payload: Value, text: String) -> Self {
        Report { command: command.to_string(), status, payload, text }
    }

    fn error(command: &str, err: &Error) -> Self {
        Report::new(
            command,
            Status::Error,
            json!({ "error": err.name(), "message": err.to_string() }),
            format!("error: {} ({})\n", err, err.name()),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Text => self.text.clone(),
        }
    }
}

pub fn run(inv: &Invocation) -> (i32, Report) {
    let name = inv.command.name();
    let report = match dispatch(inv) {
        Ok((status, payload, text)) => Report::new(name, status, payload, text),
        Err(e) => Report::error(name, &e),
    };
    (report.status.exit_code(), report)
}

type Outcome = (Status, Value, String);

fn dispatch(inv: &Invocation) -> Result<Outcome> {
    let f = inv.field;
    match &inv.command {
        Command::Rnf { path, verify } => cmd_rnf(&load_matrix(path, f)?, *verify),
        Command::Affine { path } => cmd_affine(&load_matrix(path, f)?),
        Command::NormalForm { path, family } => cmd_normal_form(&load_matrix(path, f)?, *family),
        Command::Verify { matrix, transform } => {
            cmd_verify(&load_matrix(matrix, f)?, &load_matrix(transform, f)?)
        }
        Command::Pairs(p) => match p {
            PairsCommand::Invariants { path } => cmd_pair_invariants(&load_sl2(path, f)?),
            PairsCommand::Fiber { x } => cmd_fiber(x, f.unwrap_or(Field::rationals())),
            PairsCommand::Reduce { path } => cmd_reduce(&load_sl2(path, f)?),
            PairsCommand::Hom { left, right } => {
                cmd_hom(&load_point(left, f)?, &load_point(right, f)?)
            }
            PairsCommand::Split { path } => cmd_split(&load_point(path, f)?),
        },
        Command::Selftest => Ok(cmd_selftest()),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn check_field(found: Field, expected: Option<Field>) -> Result<()> {
    match expected {
        Some(f) if f != found => Err(Error::FieldMismatch(f.to_string(), found.to_string())),
        _ => Ok(()),
    }
}

fn load_matrix(path: &Path, field: Option<Field>) -> Result<Matrix> {
    let m = parse_matrix(&read(path)?)?;
    check_field(m.field(), field)?;
    Ok(m)
}

fn load_point(path: &Path, field: Option<Field>) -> Result<PairPoint> {
    let (a, b) = parse_pair(&read(path)?)?;
    check_field(a.field(), field)?;
    PairPoint::new(a, b)
}

fn load_sl2(path: &Path, field: Option<Field>) -> Result<Sl2Pair> {
    load_point(path, field)?.to_sl2()
}

fn indent(m: &Matrix) -> String {
    m.to_string().lines().map(|l| format!("  {l}\n")).collect()
}

fn cmd_rnf(a: &Matrix, verify: bool) -> Result<Outcome> {
    let res = rnf::rnf_transform(a)?;
    let factors: Vec<Value> = res.form.factors().iter().map(poly_json).collect();
    let mut payload = json!({
        "field": a.field().to_string(),
        "invariant_factors": factors,
        "partition": res.form.partition().parts(),
        "R": matrix_json(&res.r),
        "T": matrix_json(&res.t),
    });
    let mut text = String::new();
    writeln!(text, "field: {}", a.field()).ok();
    writeln!(text, "invariant factors (ascending coefficients):").ok();
    for p in res.form.factors() {
        writeln!(text, "  {}    {}", poly_list(p), p).ok();
    }
    writeln!(text, "partition: {}", res.form.partition()).ok();
    write!(text, "R:\n{}T:\n{}", indent(&res.r), indent(&res.t)).ok();
    let mut status = Status::Ok;
    if verify {
        let ok = res.verify(a);
        payload["verified"] = json!(ok);
        writeln!(text, "verify T^-1 A T = R: {}", if ok { "ok" } else { "MISMATCH" }).ok();
        if !ok {
            status = Status::Mismatch;
        }
    }
    Ok((status, payload, text))
}

fn affine_json(rep: &AffineRepresentative, m: &Matrix) -> Value {
    let jd = jump_data(rep.partition());
    json!({
        "partition": rep.partition().parts(),
        "jumps": jd.jumps,
        "q_degrees": jd.qs,
        "qs": rep.qs().iter().map(poly_json).collect::<Vec<_>>(),
        "matrix": matrix_json(m),
    })
}

fn cmd_affine(a: &Matrix) -> Result<Outcome> {
    let form = rnf::invariant_factors(a)?;
    let rep = affine::to_affine(&form)?;
    let m = rep.matrix();
    let mut text = format!("partition: {}\nQs (ascending coefficients):\n", rep.partition());
    for q in rep.qs() {
        writeln!(text, "  {}    {}", poly_list(q), q).ok();
    }
    write!(text, "affine representative:\n{}", indent(&m)).ok();
    Ok((Status::Ok, affine_json(&rep, &m), text))
}

fn cmd_normal_form(a: &Matrix, family: Family) -> Result<Outcome> {
    let form = rnf::invariant_factors(a)?;
    let (label, m) = match family {
        Family::Rational => ("rational", form.matrix()),
        Family::Affine => ("affine", affine::to_affine(&form)?.matrix()),
    };
    let payload = json!({
        "family": label,
        "partition": form.partition().parts(),
        "matrix": matrix_json(&m),
    });
    let text = format!("family: {label}\npartition: {}\n{}", form.partition(), indent(&m));
    Ok((Status::Ok, payload, text))
}

fn cmd_verify(a: &Matrix, t: &Matrix) -> Result<Outcome> {
    let expected = rnf::invariant_factors(a)?.matrix();
    let (ok, reason, conj) = match a.conjugate_by(t) {
        Err(Error::SingularMatrix) => (false, "T is singular", None),
        Err(Error::NonSquare(..)) | Err(Error::DimensionMismatch(_)) => {
            (false, "T has the wrong shape", None)
        }
        Err(e) => return Err(e),
        Ok(c) if c == expected => (true, "T^-1 A T equals R(A)", Some(c)),
        Ok(c) => (false, "T^-1 A T differs from R(A)", Some(c)),
    };
    let payload = json!({
        "consistent": ok,
        "reason": reason,
        "expected_R": matrix_json(&expected),
        "conjugated": conj.as_ref().map(matrix_json),
    });
    let mut text = format!("{}: {reason}\nR(A):\n{}", if ok { "ok" } else { "mismatch" }, indent(&expected));
    if let Some(c) = &conj {
        write!(text, "T^-1 A T:\n{}", indent(c)).ok();
    }
    Ok((if ok { Status::Ok } else { Status::Mismatch }, payload, text))
}

fn triple_json(y: &InvariantTriple) -> Value {
    json!([scalar_json(&y.x1), scalar_json(&y.x2), scalar_json(&y.x3)])
}

fn qform_json(q: &QForm) -> Value {
    json!({ "a11": scalar_json(&q.a11), "b11": scalar_json(&q.b11), "b21": scalar_json(&q.b21) })
}

fn cmd_pair_invariants(pair: &Sl2Pair) -> Result<Outcome> {
    let y = pairs::invariants(pair);
    let g = pairs::g_value(&y);
    let payload = json!({
        "invariants": triple_json(&y),
        "g": scalar_json(&g),
        "in_Y": !g.is_zero(),
    });
    let text = format!(
        "(det A, tr AB, det B) = ({}, {}, {})\ng = {g}{}\n",
        y.x1,
        y.x2,
        y.x3,
        if g.is_zero() { "" } else { "  (in Y)" }
    );
    Ok((Status::Ok, payload, text))
}

fn cmd_fiber(x: &[String; 3], field: Field) -> Result<Outcome> {
    let [x1, x2, x3] = x;
    let y = InvariantTriple::new(
        field.parse_scalar(x1)?,
        field.parse_scalar(x2)?,
        field.parse_scalar(x3)?,
    )?;
    let pts = pairs::q_points(&y)?;
    let payload = json!({
        "field": field.to_string(),
        "y": triple_json(&y),
        "count": pts.len(),
        "points": pts.iter().map(qform_json).collect::<Vec<_>>(),
    });
    let mut text = format!("fiber over ({}, {}, {}) in {field}: {} points\n", y.x1, y.x2, y.x3, pts.len());
    for p in &pts {
        writeln!(text, "  a11 = {}, b11 = {}, b21 = {}", p.a11, p.b11, p.b21).ok();
    }
    Ok((Status::Ok, payload, text))
}

fn cmd_reduce(pair: &Sl2Pair) -> Result<Outcome> {
    let (g, q) = pairs::reduce_to_q(pair)?;
    let payload = json!({
        "g": matrix_json(&g),
        "q": qform_json(&q),
        "invariants": triple_json(&pairs::invariants(pair)),
    });
    let text = format!(
        "Q point: a11 = {}, b11 = {}, b21 = {}\ng:\n{}",
        q.a11,
        q.b11,
        q.b21,
        indent(&g)
    );
    Ok((Status::Ok, payload, text))
}

fn cmd_hom(m: &PairPoint, m2: &PairPoint) -> Result<Outcome> {
    let basis = pairs::hom_space(m, m2)?;
    let payload = json!({
        "dimension": basis.len(),
        "basis": basis.iter().map(matrix_json).collect::<Vec<_>>(),
    });
    let mut text = format!("dim Hom = {}\n", basis.len());
    for (i, f) in basis.iter().enumerate() {
        write!(text, "basis[{i}]:\n{}", indent(f)).ok();
    }
    Ok((Status::Ok, payload, text))
}

fn cmd_split(m: &PairPoint) -> Result<Outcome> {
    let split = pairs::split_off_simple(m)?;
    let mut payload = json!({
        "t": [matrix_json(&split.t.m1), matrix_json(&split.t.m2)],
        "h": matrix_json(&split.h),
    });
    let mut text = format!(
        "t1:\n{}t2:\n{}h:\n{}",
        indent(&split.t.m1),
        indent(&split.t.m2),
        indent(&split.h)
    );
    if let Ok(t) = split.t.to_sl2() {
        let y = pairs::invariants(&t);
        payload["t_invariants"] = triple_json(&y);
        writeln!(text, "invariants of t: ({}, {}, {})", y.x1, y.x2, y.x3).ok();
    }
    Ok((Status::Ok, payload, text))
}

/// The 5x5 member of `C(2,1,2)` with free scalars `a..e`.
pub const DISPLAY_GENERALIZED_COMPANION: [&str; 5] = [
    "0 e 0 0 0",
    "1 d 0 0 0",
    "0 1 c 0 0",
    "0 0 1 0 b",
    "0 0 0 1 a",
];

/// The 12x12 point of `A(5,3,2,2)` with free scalars `a..e`.
pub const DISPLAY_AFFINE_5322: [&str; 12] = [
    "0 e 0 0 0 0 0 0 0 0 0 0",
    "1 d 0 0 0 0 0 0 0 0 0 0",
    "0 1 c 0 0 0 0 0 0 0 0 0",
    "0 0 1 0 b 0 0 0 0 0 0 0",
    "0 0 0 1 a 0 0 0 0 0 0 0",
    "0 0 0 0 0 c 0 0 0 0 0 0",
    "0 0 0 0 0 1 0 b 0 0 0 0",
    "0 0 0 0 0 0 1 a 0 0 0 0",
    "0 0 0 0 0 0 0 0 0 b 0 0",
    "0 0 0 0 0 0 0 0 1 a 0 0",
    "0 0 0 0 0 0 0 0 0 0 0 b",
    "0 0 0 0 0 0 0 0 0 0 1 a",
];

/// Substitutes `a..e` into a symbolic grid.
pub fn instantiate_display(field: Field, grid: &[&str], abcde: [i64; 5]) -> Matrix {
    let rows: Vec<Vec<_>> = grid
        .iter()
        .map(|line| {
            line.split_whitespace()
                .map(|tok| match tok {
                    "a" | "b" | "c" | "d" | "e" => {
                        field.from_i64(abcde[(tok.as_bytes()[0] - b'a') as usize])
                    }
                    num => field.from_i64(num.parse().expect("grid literal")),
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(field, rows).expect("rectangular grid")
}

/// `(X^2 - dX - e, X - c, X^2 - aX - b)`.
pub fn display_qs(field: Field, [a, b, c, d, e]: [i64; 5]) -> Vec<Polynomial> {
    vec![
        Polynomial::from_i64s(field, &[-e, -d, 1]),
        Polynomial::from_i64s(field, &[-c, 1]),
        Polynomial::from_i64s(field, &[-b, -a, 1]),
    ]
}

struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn check(name: &'static str, body: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match body() {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(e) => Check { name, passed: false, detail: format!("error: {e}") },
    }
}

fn selftest_checks() -> Vec<Check> {
    let q = Field::rationals();
    let abcde = [1, 2, 3, 4, 5];
    vec![
        check("generalized_companion_display", || {
            let m = generalized_companion(&display_qs(q, abcde))?;
            let ok = m == instantiate_display(q, &DISPLAY_GENERALIZED_COMPANION, abcde);
            Ok((ok, "C(q) for q = (2,1,2) with (a..e) = (1..5)".into()))
        }),
        check("affine_display_5322", || {
            let p = Partition::new(vec![5, 3, 2, 2])?;
            let m = affine::affine_point(&p, &display_qs(q, abcde))?;
            let ok = m == instantiate_display(q, &DISPLAY_AFFINE_5322, abcde);
            Ok((ok, "A(p) for p = (5,3,2,2) with (a..e) = (1..5)".into()))
        }),
        check("bijection_fixed_partitions", || {
            let mut count = 0;
            for field in [q, Field::prime(5)?] {
                for n in 1..=6 {
                    for p in Partition::all(n) {
                        let qs: Vec<Polynomial> = jump_data(&p)
                            .qs
                            .iter()
                            .enumerate()
                            .map(|(j, &d)| {
                                let mut c: Vec<i64> =
                                    (0..d).map(|i| (i as i64 + 2 * j as i64) % 3 - 1).collect();
                                c.push(1);
                                Polynomial::from_i64s(field, &c)
                            })
                            .collect();
                        let rep = AffineRepresentative::new(p.clone(), qs)?;
                        let form = rep.to_rnf();
                        let ok = affine::to_affine(&form)? == rep
                            && rnf::invariant_factors(&rep.matrix())? == form
                            && rep.dimension() == p.largest();
                        if !ok {
                            return Ok((false, format!("failed at {p} over {field}")));
                        }
                        count += 1;
                    }
                }
            }
            Ok((true, format!("{count} representatives over Q and GF(5)")))
        }),
        check("rnf_transform_identity", || {
            let f = Field::prime(7)?;
            let a = Matrix::from_i64s(f, 4, 4, &[2, 1, 0, 3, 0, 2, 0, 1, 5, 0, 2, 6, 0, 0, 0, 2])?;
            let res = rnf::rnf_transform(&a)?;
            Ok((res.verify(&a), format!("partition {}", res.form.partition())))
        }),
        check("gf7_fiber_at_613", || {
            let f = Field::prime(7)?;
            let y = InvariantTriple::new(f.from_i64(6), f.from_i64(1), f.from_i64(3))?;
            let pts = pairs::q_points(&y)?;
            let group = brute::general_linear_group(f, 2)?;
            let first = pts[0].pair();
            let conj = pts.iter().all(|p| {
                let pp = p.pair();
                brute::simultaneously_similar(&group, (first.a(), first.b()), (pp.a(), pp.b()))
            });
            let maps = pts.iter().all(|p| pairs::invariants(&p.pair()) == y);
            Ok((pts.len() == 4 && conj && maps, format!("{} points, mutually conjugate: {conj}", pts.len())))
        }),
        check("gf7_fiber_census", || {
            let f = Field::prime(7)?;
            let elems = f.elements().expect("finite");
            let mut fibers = 0;
            for x1 in &elems {
                for x2 in &elems {
                    for x3 in &elems {
                        let y = InvariantTriple::new(x1.clone(), x2.clone(), x3.clone())?;
                        if !y.in_y() || (-x1).sqrt().is_none() || (-x3).sqrt().is_none() {
                            continue;
                        }
                        if pairs::q_points(&y)?.len() != 4 {
                            return Ok((false, format!("fiber size wrong at {x1},{x2},{x3}")));
                        }
                        fibers += 1;
                    }
                }
            }
            Ok((true, format!("{fibers} fibers of size 4")))
        }),
        check("gf2_fiber", || {
            let f = Field::prime(2)?;
            let y = InvariantTriple::new(f.one(), f.one(), f.one())?;
            let pts = pairs::q_points(&y)?;
            Ok((pts.len() == 1, format!("{} point", pts.len())))
        }),
        check("split_off_gf11", || {
            let f = Field::prime(11)?;
            let s = pairs::simple_pair(f, 4)?;
            let t = QForm::new(f.from_i64(3), f.from_i64(5), f.from_i64(2))?.pair();
            let g0 = Matrix::from_i64s(f, 4, 4, &[1, 2, 0, 1, 0, 1, 3, 0, 4, 0, 1, 1, 0, 5, 0, 1])?;
            let m = s.direct_sum(&t.to_point())?.conjugate_by(&g0)?;
            let split = pairs::split_off_simple(&m)?;
            let same = pairs::invariants(&split.t.to_sl2()?) == pairs::invariants(&t);
            Ok((same, "invariants of the split-off pair".into()))
        }),
    ]
}

pub fn selftest() -> Report {
    let checks = selftest_checks();
    let all = checks.iter().all(|c| c.passed);
    let mut text = String::new();
    for c in &checks {
        writeln!(text, "[{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail).ok();
    }
    let payload = json!({
        "checks": checks
            .iter()
            .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
            .collect::<Vec<_>>(),
    });
    Report::new("selftest", if all { Status::Ok } else { Status::Mismatch }, payload, text)
}

fn cmd_selftest() -> Outcome {
    let r = selftest();
    (r.status, r.payload, r.text)
}
