//! Central charges on both sides of each isomorphism.

use exw::grading::{central_charge, Orbit};
use exw::isomorphism::{spec_central_charge, Isomorphism};
use exw::rootdata::Label;

fn main() -> exw::Result<()> {
    for iso in Isomorphism::all() {
        let l = spec_central_charge(&iso.left)?;
        let r = spec_central_charge(&iso.right)?;
        println!("{}  {l:>10}  {}\n    {r:>10}  {}", iso.label(), iso.left, iso.right);
    }
    // at k + h∨ = p/u directly
    println!("W(E8, E8(a1)) at 31/27: c = {}", central_charge(Label::E8, Orbit::Subregular, 31, 27)?);
    Ok(())
}
