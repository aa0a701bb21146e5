//! Character-level checks of the isomorphisms and the two minimal-model
//! collapses, plus a comparison that is expected to fail.

use exw::charengine::CharSpec;
use exw::isomorphism::{collapses, Isomorphism, VERIFY_ORDER};

fn main() -> exw::Result<()> {
    for iso in Isomorphism::all() {
        let cmp = iso.left.compute(VERIFY_ORDER)?.compare(&iso.right.compute(VERIFY_ORDER)?);
        println!("{} {} ~ {}: {cmp}", iso.label(), iso.left, iso.right);
    }
    for (a, b) in collapses() {
        println!("{a} ~ {b}: {}", a.compute(VERIFY_ORDER)?.compare(&b.compute(VERIFY_ORDER)?));
    }

    // The universal algebra is bigger than its simple quotient from weight 12 on.
    let universal: CharSpec = "universal G2 principal".parse()?;
    let simple: CharSpec = "boundary G2 principal u=17".parse()?;
    println!("{universal} vs {simple}: {}", universal.compute(14)?.compare(&simple.compute(14)?));
    Ok(())
}
