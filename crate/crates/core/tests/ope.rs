use std::sync::OnceLock;

use exw::opecalc::{
    build_ansatz, build_system, jacobi_constraints, solve_constraints, verify_ope_table, Ansatz, ConstraintSystem,
    Field, ModeEngine, OpeCase, OpeCaseId, SolveReport, SolveStatus,
};
use exw::qseries::rat;
use exw::Error;

struct Solved {
    ansatz: Ansatz,
    system: ConstraintSystem,
    report: SolveReport,
}

fn case_two() -> &'static Solved {
    static CELL: OnceLock<Solved> = OnceLock::new();
    CELL.get_or_init(|| {
        let (ansatz, system) = build_system(&OpeCase::get(OpeCaseId::G2C1420)).unwrap();
        let report = solve_constraints(&system).unwrap();
        Solved { ansatz, system, report }
    })
}

#[test]
fn ansatz_sizes() {
    let a = build_ansatz(&OpeCase::get(OpeCaseId::G2C590));
    assert_eq!((a.bracket_unknowns, a.null_unknowns), (75, 0));
    let b = build_ansatz(&OpeCase::get(OpeCaseId::B3C135));
    assert_eq!((b.bracket_unknowns, b.null_unknowns), (200, 14));
    assert_eq!(b.normalizations.len(), 2);
}

#[test]
fn case_two_is_rigid_and_verifies() {
    let s = case_two();
    let r = &s.report;
    assert_eq!(r.unknowns, 75);
    assert_eq!(r.status, SolveStatus::Unique);
    assert_eq!(r.family_dimension, 1);
    assert!(r.residual_zero);
    assert_eq!(r.normalized, vec!["W6_(11)W6[1]".to_string()]);
    assert!(r.values.iter().all(|v| v.coeff.is_some()));
    // the primary normalization fixes W6_(9)W6 on L to 2Δ/c · 11!
    let w = r.values.iter().find(|v| v.name == "W6_(9)W6[L-2 1]").unwrap();
    assert_eq!(w.coeff, Some(rat(-407151360) / rat(71)));
    let table = s.ansatz.rational_table(r).unwrap();
    let v = verify_ope_table(&table, 11).unwrap();
    assert_eq!(v.triples, 8);
}

#[test]
fn perturbed_table_is_rejected() {
    let s = case_two();
    let mut bad = s.report.clone();
    let k = bad.values.iter().position(|v| v.name == "W6_(9)W6[L-2 1]").unwrap();
    let c = bad.values[k].coeff.clone().unwrap();
    bad.values[k].coeff = Some(c + rat(1));
    let table = s.ansatz.rational_table(&bad).unwrap();
    match verify_ope_table(&table, 11) {
        Err(Error::NonzeroResidual(msg)) => assert!(msg.contains("Jacobi") || msg.contains("skew"), "{msg}"),
        other => panic!("expected a residual, got {other:?}"),
    }
}

#[test]
fn equation_order_does_not_matter() {
    let s = case_two();
    let mut shuffled = s.system.clone();
    let n = shuffled.equations.len();
    // a fixed permutation: stride through the list by a step coprime to n
    let step = (2..n).find(|k| num_integer::gcd(*k, n) == 1 && *k > n / 3).unwrap();
    shuffled.equations = (0..n).map(|i| s.system.equations[(i * step) % n].clone()).collect();
    shuffled.equations.reverse();
    assert_eq!(solve_constraints(&shuffled).unwrap(), s.report);
}

#[test]
fn unknowns_block_verification() {
    let a = build_ansatz(&OpeCase::get(OpeCaseId::G2C1420));
    assert!(matches!(verify_ope_table(&a.table, 11), Err(Error::Precondition(_))));
}

#[test]
fn virasoro_triples_hold_identically_on_the_ansatz() {
    for id in [OpeCaseId::G2C1420, OpeCaseId::B3C135] {
        let a = build_ansatz(&OpeCase::get(id));
        let e = ModeEngine::new(&a.table);
        for f in a.table.fields() {
            for triple in [(Field::L, Field::L, Field::L), (Field::L, Field::L, f)] {
                assert!(jacobi_constraints(&e, triple, 12).unwrap().is_empty(), "{id:?} {triple:?}");
            }
        }
    }
}

#[test]
fn f4_is_declared_but_unsupported() {
    assert!(!OpeCaseId::SOLVABLE.contains(&OpeCaseId::F4));
    let case = OpeCase::get(OpeCaseId::F4);
    assert_eq!(case.primaries, vec![6, 8, 12]);
    assert!(matches!(build_system(&case), Err(Error::Unsupported(_))));
}
