//! The four isomorphisms between exceptional W-algebras and the end-to-end
//! checks behind each: central charges, characters against the golden
//! tables, the Virasoro reconstruction and the OPE solve.

use std::path::Path;
use std::time::Instant;

use crate::charengine::CharSpec;
use crate::error::Result;
use crate::golden::{self, GoldenSpec};
use crate::grading::{self, Orbit};
use crate::opecalc::{build_system, solve_constraints, verify_ope_table, OpeCase, OpeCaseId, SolveStatus};
use crate::qseries::{ratio, QSeries};
use crate::report::{Output, Report};
use crate::rootdata::Label;
use crate::virmod::ses_report;

/// Default order for the end-to-end checks: the reference tables run
/// through q^25.
pub const VERIFY_ORDER: i64 = 26;

#[derive(Clone, Debug)]
pub struct Isomorphism {
    pub id: u8,
    pub left: CharSpec,
    pub right: CharSpec,
    /// Expected central charge as `(numerator, denominator)`; `None` when
    /// both sides need only agree.
    pub c: Option<(i64, i64)>,
    /// Summands expected from the Virasoro reconstruction; `None` when the
    /// isomorphism is only checked on characters.
    pub summands: Option<Vec<i64>>,
    pub ope: Option<OpeCaseId>,
}

impl Isomorphism {
    /// The three proven isomorphisms followed by the conjectural fourth.
    pub fn all() -> Vec<Isomorphism> {
        vec![
            Isomorphism {
                id: 1,
                left: CharSpec::principal(Label::B3, 8, 7),
                right: CharSpec::near_boundary(Label::E7, 16),
                c: Some((-135, 8)),
                summands: Some(vec![0, 4, 6]),
                ope: Some(OpeCaseId::B3C135),
            },
            Isomorphism {
                id: 2,
                left: CharSpec::boundary(Label::G2, Orbit::Principal, 17),
                right: CharSpec::boundary(Label::E7, Orbit::Subregular, 17),
                c: Some((-1420, 17)),
                summands: Some(vec![0, 6]),
                ope: Some(OpeCaseId::G2C1420),
            },
            Isomorphism {
                id: 3,
                left: CharSpec::principal(Label::G2, 9, 7),
                right: CharSpec::near_boundary(Label::E8, 27),
                c: Some((-590, 9)),
                summands: Some(vec![0, 6]),
                ope: Some(OpeCaseId::G2C590),
            },
            Isomorphism {
                id: 4,
                left: CharSpec::principal(Label::F4, 14, 13),
                right: CharSpec::near_boundary(Label::E8, 28),
                c: None,
                summands: None,
                ope: None,
            },
        ]
    }

    pub fn label(&self) -> String {
        format!("({})", self.id)
    }
}

/// Character collapses onto Virasoro minimal models.
pub fn collapses() -> Vec<(CharSpec, CharSpec)> {
    vec![
        (CharSpec::near_boundary(Label::E8, 25), CharSpec::boundary(Label::A1, Orbit::Principal, 5)),
        (CharSpec::near_boundary(Label::E8, 26), CharSpec::boundary(Label::A1, Orbit::Principal, 13)),
    ]
}

pub fn spec_central_charge(spec: &CharSpec) -> Result<num_rational::BigRational> {
    let (p, u) = spec.level()?;
    grading::central_charge(spec.algebra, spec.orbit, p, u)
}

fn golden_for(spec: &CharSpec, dir: Option<&Path>) -> Result<Option<golden::GoldenTable>> {
    for name in golden::table_names() {
        let t = golden::embedded(name)?;
        if t.spec == GoldenSpec::Character(spec.clone()) {
            return golden::load(name, dir).map(Some);
        }
    }
    Ok(None)
}

/// Checks one character against its golden table, if there is one.
fn check_golden(report: &mut Report, spec: &CharSpec, series: &QSeries, dir: Option<&Path>) -> Result<()> {
    if let Some(t) = golden_for(spec, dir)? {
        let order = series.order().min(t.series.order());
        let cmp = series.truncate(order).compare(&t.series.truncate(order));
        report.verdict(format!("{spec} matches golden table {}", t.name), cmp.is_equal(), cmp.to_string());
    }
    Ok(())
}

pub struct VerifyOptions<'a> {
    pub order: i64,
    pub skip_ope: bool,
    pub golden_dir: Option<&'a Path>,
}

pub fn verify_isomorphism(iso: &Isomorphism, opts: &VerifyOptions, report: &mut Report) -> Result<()> {
    let tag = iso.label();
    let cl = spec_central_charge(&iso.left)?;
    let cr = spec_central_charge(&iso.right)?;
    let expected_ok = iso.c.is_none_or(|(n, d)| cl == ratio(n, d));
    report.outputs.push(Output::CentralCharge { label: iso.left.to_string(), value: cl.to_string() });
    report.outputs.push(Output::CentralCharge { label: iso.right.to_string(), value: cr.to_string() });
    report.verdict(format!("{tag} central charge"), cl == cr && expected_ok, format!("{cl} vs {cr}"));

    let left = iso.left.compute(opts.order)?;
    let right = iso.right.compute(opts.order)?;
    check_golden(report, &iso.left, &left, opts.golden_dir)?;
    check_golden(report, &iso.right, &right, opts.golden_dir)?;
    let cmp = left.compare(&right);
    report.outputs.push(Output::Comparison {
        left: iso.left.to_string(),
        right: iso.right.to_string(),
        result: cmp.clone(),
    });
    report.verdict(format!("{tag} characters"), cmp.is_equal(), cmp.to_string());

    match &iso.summands {
        None => report.verdict(format!("{tag} scope"), true, "character-level only"),
        Some(expected) => {
            // reconstruct the E-type side from Virasoro modules
            let weights = iso.right.grading()?.generator_weights();
            let ses = ses_report(&right, &weights, opts.order)?;
            let ok = ses.summands == *expected;
            report.verdict(
                format!("{tag} Virasoro reconstruction"),
                ok,
                format!("summands {:?}, agreement through q^{}", ses.summands, ses.agreement_through),
            );
            report.outputs.push(Output::Ses { label: iso.right.to_string(), report: ses });
        }
    }

    if let (Some(id), false) = (iso.ope, opts.skip_ope) {
        let (good, verified) = solve_case(id, report)?;
        let dim = OpeCase::get(id).primaries.len();
        report.verdict(
            format!("{tag} OPE solve"),
            good && verified.is_some(),
            format!("{}: family dimension {dim} expected, unique, residuals zero", id.name()),
        );
    }
    Ok(())
}

/// Solves and verifies one OPE case, appending the output. The solve is
/// good when it is unique up to one rescaling per primary and leaves no
/// residual; verification runs only on a good solve.
pub fn solve_case(id: OpeCaseId, report: &mut Report) -> Result<(bool, Option<crate::opecalc::VerifyReport>)> {
    let case = OpeCase::get(id);
    let (ansatz, system) = build_system(&case)?;
    let solved = solve_constraints(&system)?;
    let dim = case.primaries.len();
    let good = solved.status == SolveStatus::Unique && solved.family_dimension == dim && solved.residual_zero;
    let verify = if good {
        let table = ansatz.rational_table(&solved)?;
        verify_ope_table(&table, case.bound).ok()
    } else {
        None
    };
    report.outputs.push(Output::Solve { case: id.name().into(), report: Box::new(solved), verify: verify.clone() });
    Ok((good, verify))
}

pub fn verify_all(opts: &VerifyOptions, command: Vec<String>) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new(command);
    report.input("order", opts.order).input("skip_ope", opts.skip_ope);
    if let Some(d) = opts.golden_dir {
        report.input("golden_dir", d.display());
    }
    for iso in Isomorphism::all() {
        verify_isomorphism(&iso, opts, &mut report)?;
    }
    for (a, b) in collapses() {
        let cmp = a.compute(opts.order)?.compare(&b.compute(opts.order)?);
        report.verdict(format!("{a} collapses to {b}"), cmp.is_equal(), cmp.to_string());
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
