//! The four families of characters, each normalized to start at 1.
//!
//!     cargo run --example characters -- 14

use exw::charengine::CharSpec;
use exw::grading::Orbit;
use exw::rootdata::Label;

fn main() -> exw::Result<()> {
    let order: i64 = std::env::args().nth(1).map_or(Ok(14), |s| s.parse()).expect("order must be an integer");
    let specs = [
        CharSpec::universal(Label::G2, Orbit::Principal),
        CharSpec::boundary(Label::G2, Orbit::Principal, 17),
        CharSpec::boundary(Label::E7, Orbit::Subregular, 17),
        CharSpec::near_boundary(Label::E8, 27),
        CharSpec::principal(Label::G2, 9, 7),
        // specs also parse from text
        "principal B3 principal p=8 u=7".parse()?,
    ];
    for spec in specs {
        println!("{spec}\n    {}", spec.compute(order)?);
    }
    Ok(())
}
