//! Builds the OPE ansatz of a registered case, imposes Jacobi identities and
//! skew-symmetry, solves, and re-verifies the result over the rationals.
//!
//!     cargo run --release --example ope_solve -- b3-c135-8

use std::time::Instant;

use num_traits::Zero;

use exw::opecalc::{build_system, solve_constraints, verify_ope_table, OpeCase, OpeCaseId};

fn main() -> exw::Result<()> {
    let id: OpeCaseId = std::env::args().nth(1).as_deref().unwrap_or("g2-c1420-17").parse()?;
    let case = OpeCase::get(id);
    let start = Instant::now();
    let (ansatz, system) = build_system(&case)?;
    println!(
        "{}: c = {}, {} unknowns, {} equations",
        id.name(),
        case.c,
        system.variables.len(),
        system.equations.len()
    );

    let r = solve_constraints(&system)?;
    println!("family dimension {}, {:?}, normalized {:?}", r.family_dimension, r.status, r.normalized);
    for s in &r.surds {
        println!("adjoined sqrt({}) for primary {}", s.radicand, s.primary);
    }
    for v in r.values.iter().filter(|v| v.coeff.as_ref().is_some_and(|c| !c.is_zero())).take(12) {
        println!("  {} = {v}", v.name);
    }

    let table = ansatz.rational_table(&r)?;
    let check = verify_ope_table(&table, case.bound)?;
    println!("verified {} identities over {} triples in {:.1?}", check.identities, check.triples, start.elapsed());
    Ok(())
}
