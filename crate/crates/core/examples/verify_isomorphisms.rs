//! Every end-to-end check, as the `verify-isomorphisms` command runs it.
//! Pass `--ope` to include the OPE solves.

use exw::isomorphism::{verify_all, VerifyOptions, VERIFY_ORDER};

fn main() -> exw::Result<()> {
    let with_ope = std::env::args().any(|a| a == "--ope");
    let opts = VerifyOptions { order: VERIFY_ORDER, skip_ope: !with_ope, golden_dir: None };
    let report = verify_all(&opts, std::env::args().collect())?;
    print!("{}", report.to_text());
    println!("{} checks, all passed: {}", report.verdicts.len(), report.all_passed());
    Ok(())
}
